//! Batch experiment runner: construct a family per grid point, compute the
//! requested probability, and emit schema-stable CSV plus a fitted log-log
//! slope.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::constructions::{generic_set, polya_multiset, rich_circle_modulus, sum_of_squares_points};
use crate::error::{Error, Result};
use crate::scaling::{exponent_fit, FitResult};
use crate::vecset::{LatticeVector, VectorSet};
use crate::walkdist::{prob_at, ratio_to_f64, rho, Engine};

/// Which construction the grid parameter feeds.
///
/// - `sphere`: grid values are squared radii N, points from `sum_of_squares_points(N, d)`.
/// - `rich_circle`: grid values are k, squared radius is the k-th rich-circle modulus (d = 2).
/// - `generic`: grid values are set sizes n for seeded generic sets.
/// - `polya_multiset`: grid values are multiplicities m for the repeated-basis multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Sphere,
    RichCircle,
    Generic,
    PolyaMultiset,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sphere => "sphere",
            Family::RichCircle => "rich_circle",
            Family::Generic => "generic",
            Family::PolyaMultiset => "polya_multiset",
        }
    }
}

/// What to measure per grid point: the concentration probability, or the
/// probability at a fixed target point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Named(String),
    Point(Vec<i64>),
}

impl TargetSpec {
    pub fn rho() -> Self {
        TargetSpec::Named("rho".into())
    }

    fn validate(&self) -> Result<()> {
        match self {
            TargetSpec::Named(s) if s == "rho" => Ok(()),
            TargetSpec::Named(s) => Err(Error::precondition(format!(
                "unknown target {s:?} (expected \"rho\" or a coordinate list)"
            ))),
            TargetSpec::Point(_) => Ok(()),
        }
    }

    fn label(&self) -> String {
        match self {
            TargetSpec::Named(s) => s.clone(),
            TargetSpec::Point(coords) => coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

fn default_norm_bound() -> i64 {
    1000
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub family: Family,
    pub d: usize,
    pub grid: Vec<u64>,
    pub engine: Engine,
    pub target: TargetSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_norm_bound")]
    pub norm_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub family: &'static str,
    pub d: usize,
    pub n: usize,
    pub target: String,
    pub engine: &'static str,
    /// Exact probability; None when a guard or precondition tripped.
    #[serde(skip)]
    pub prob: Option<Ratio<BigInt>>,
    pub prob_float: Option<f64>,
    pub wall_ms: u128,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub fit: Option<FitResult>,
    pub csv: String,
}

fn build_family(cfg: &ScanConfig, index: usize, value: u64, caps: &Caps) -> Result<VectorSet> {
    match cfg.family {
        Family::Sphere => sum_of_squares_points(value, cfg.d, caps),
        Family::RichCircle => {
            if cfg.d != 2 {
                return Err(Error::precondition("rich_circle family lives in d = 2"));
            }
            let k = u32::try_from(value)
                .map_err(|_| Error::precondition("k is out of range"))?;
            let modulus = rich_circle_modulus(k, caps)?;
            let n = modulus.to_u64().ok_or_else(|| {
                Error::guard("rich_circle scan", u128::MAX, u64::MAX as u128, "modulus")
            })?;
            sum_of_squares_points(n, 2, caps)
        }
        Family::Generic => generic_set(
            value as usize,
            cfg.d,
            cfg.seed.wrapping_add(index as u64),
            cfg.norm_bound,
        ),
        Family::PolyaMultiset => polya_multiset(cfg.d, value as usize),
    }
}

fn measure(cfg: &ScanConfig, set: &VectorSet, caps: &Caps) -> Result<Ratio<BigInt>> {
    match &cfg.target {
        TargetSpec::Named(_) => rho(set, cfg.engine, caps).map(|(_, value)| value),
        TargetSpec::Point(coords) => {
            prob_at(set, &LatticeVector::new(coords.clone()), cfg.engine, caps)
        }
    }
}

/// Runs the scan over the grid. Rows always appear in grid order regardless
/// of how the work was scheduled; guard failures are recorded per row.
///
/// Wall times are measured and returned on every row, but the CSV writes a
/// fixed 0 unless `timings_in_csv` is set, keeping the file byte-identical
/// across reruns of the same config and seed.
pub fn run_scan(cfg: &ScanConfig, caps: &Caps, timings_in_csv: bool) -> Result<ScanOutput> {
    cfg.target.validate()?;
    if cfg.grid.is_empty() {
        return Err(Error::precondition("empty grid"));
    }
    let target_label = cfg.target.label();
    let rows: Vec<ScanRow> = cfg
        .grid
        .par_iter()
        .enumerate()
        .map(|(index, &value)| {
            let started = Instant::now();
            let outcome = build_family(cfg, index, value, caps)
                .and_then(|set| measure(cfg, &set, caps).map(|p| (set.len(), p)));
            let wall_ms = started.elapsed().as_millis();
            match outcome {
                Ok((n, prob)) => ScanRow {
                    family: cfg.family.name(),
                    d: cfg.d,
                    n,
                    target: target_label.clone(),
                    engine: cfg.engine.name(),
                    prob_float: Some(ratio_to_f64(&prob)),
                    prob: Some(prob),
                    wall_ms,
                    error: None,
                },
                Err(err) => ScanRow {
                    family: cfg.family.name(),
                    d: cfg.d,
                    n: 0,
                    target: target_label.clone(),
                    engine: cfg.engine.name(),
                    prob: None,
                    prob_float: None,
                    wall_ms,
                    error: Some(err.to_string()),
                },
            }
        })
        .collect();

    let fit_points: Vec<(u64, f64)> = rows
        .iter()
        .filter_map(|r| match (&r.prob, r.prob_float) {
            (Some(p), Some(f)) if !p.is_zero() && r.n >= 1 => Some((r.n as u64, f)),
            _ => None,
        })
        .collect();
    let distinct_n: std::collections::HashSet<u64> =
        fit_points.iter().map(|&(n, _)| n).collect();
    let fit = if distinct_n.len() >= 2 {
        exponent_fit(&fit_points).ok()
    } else {
        None
    };

    let csv = render_csv(&rows, timings_in_csv);
    Ok(ScanOutput { rows, fit, csv })
}

/// Schema: family,d,n,target,engine,prob_num,prob_den,prob_float,wall_ms.
/// UTF-8, LF line endings, header always present.
fn render_csv(rows: &[ScanRow], timings: bool) -> String {
    let mut out = String::new();
    out.push_str("family,d,n,target,engine,prob_num,prob_den,prob_float,wall_ms\n");
    for row in rows {
        let (num, den, float) = match (&row.prob, row.prob_float) {
            (Some(p), Some(f)) => (p.numer().to_string(), p.denom().to_string(), f.to_string()),
            _ => (String::new(), String::new(), String::new()),
        };
        let wall = if timings { row.wall_ms } else { 0 };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.family, row.d, row.n, row.target, row.engine, num, den, float, wall
        )
        .expect("writing to a String cannot fail");
    }
    out
}
