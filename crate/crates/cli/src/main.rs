//! `walklab` command line: construct vector families, compute distributions
//! and concentration probabilities, run scans, and drive the progression /
//! incidence machinery. Results print as compact JSON on stdout (incidence
//! reports default to aligned text); exit code 0 on success, 2 on
//! precondition errors, 3 on resource-guard aborts.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::json;

use walklab::caps::Caps;
use walklab::constructions::{
    generic_set, polya_multiset, rich_circle_modulus, sum_of_squares_points,
};
use walklab::error::{Error, Result};
use walklab::gaplab::{
    circle_intersection_count, conjugate_extension, cover_fraction, enumerate, is_proper,
    norm_class_report, project, r2_count, Gap,
};
use walklab::incidence::{
    conjecture1_report, conjecture2_check, default_richness_threshold, fiber_coplanarity_check,
};
use walklab::scaling::{bound_exponent, exponent_fit, f_table};
use walklab::scan::{run_scan, ScanConfig};
use walklab::vecset::LatticeVector;
use walklab::walkdist::{
    exact_distribution, exact_prob_fourier, mc_estimate, polya_return_prob, prob_at, ratio_to_f64,
    rho, Engine,
};
use walklab::VectorSet;

#[derive(Parser)]
#[command(name = "walklab", version, about = "Exact laboratory for signed vector-sum walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: CapsArgs,
}

/// Resource-cap overrides. The profile comes from `--cap-profile` or the
/// WALKLAB_CAP_PROFILE environment variable; individual caps override it.
#[derive(Args, Debug, Default)]
struct CapsArgs {
    #[arg(long, global = true, env = "WALKLAB_CAP_PROFILE")]
    cap_profile: Option<String>,
    #[arg(long, global = true)]
    cap_naive_patterns: Option<u64>,
    #[arg(long, global = true)]
    cap_mitm_half_entries: Option<u64>,
    #[arg(long, global = true)]
    cap_convolution_pairs: Option<u64>,
    #[arg(long, global = true)]
    cap_dp_states: Option<u64>,
    #[arg(long, global = true)]
    cap_slab_cells: Option<u64>,
    #[arg(long, global = true)]
    cap_fourier_products: Option<u64>,
    #[arg(long, global = true)]
    cap_polya_terms: Option<u64>,
    #[arg(long, global = true)]
    cap_sos_nodes: Option<u64>,
    #[arg(long, global = true)]
    cap_modulus_bits: Option<u64>,
    #[arg(long, global = true)]
    cap_enum_nominal: Option<u64>,
    #[arg(long, global = true)]
    cap_sumset_pairs: Option<u64>,
    #[arg(long, global = true)]
    cap_richness_tuples: Option<u64>,
    #[arg(long, global = true)]
    cap_incidence_pairs: Option<u64>,
}

impl CapsArgs {
    fn build(&self) -> Result<Caps> {
        let mut caps = match self.cap_profile.as_deref() {
            None => Caps::default(),
            Some(name) => Caps::profile(name).ok_or_else(|| {
                Error::precondition(format!(
                    "unknown cap profile {name:?} (expected small|default|big)"
                ))
            })?,
        };
        if let Some(v) = self.cap_naive_patterns {
            caps.naive_patterns = v;
        }
        if let Some(v) = self.cap_mitm_half_entries {
            caps.mitm_half_entries = v;
        }
        if let Some(v) = self.cap_convolution_pairs {
            caps.convolution_pairs = v;
        }
        if let Some(v) = self.cap_dp_states {
            caps.dp_states = v;
        }
        if let Some(v) = self.cap_slab_cells {
            caps.slab_cells = v;
        }
        if let Some(v) = self.cap_fourier_products {
            caps.fourier_products = v;
        }
        if let Some(v) = self.cap_polya_terms {
            caps.polya_terms = v;
        }
        if let Some(v) = self.cap_sos_nodes {
            caps.sos_nodes = v;
        }
        if let Some(v) = self.cap_modulus_bits {
            caps.modulus_bits = v;
        }
        if let Some(v) = self.cap_enum_nominal {
            caps.enum_nominal = v;
        }
        if let Some(v) = self.cap_sumset_pairs {
            caps.sumset_pairs = v;
        }
        if let Some(v) = self.cap_richness_tuples {
            caps.richness_tuples = v;
        }
        if let Some(v) = self.cap_incidence_pairs {
            caps.incidence_pairs = v;
        }
        Ok(caps)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a vector family and emit it as VectorSet JSON.
    Construct(ConstructArgs),
    /// Exact P(S = x) for a stored set.
    Prob(ProbArgs),
    /// Concentration probability sup_x P(S = x) with its argmax.
    Rho(RhoArgs),
    /// Monte Carlo estimate of P(S = x).
    Mc(McArgs),
    /// Exact grid-walk return probability.
    Polya(PolyaArgs),
    /// Run a scan config: per-grid-point probabilities, CSV, manifest.
    Scan(ScanArgs),
    /// Generalized arithmetic progression operations.
    #[command(subcommand)]
    Gap(GapCmd),
    /// Incidence-geometry reports in Z^3.
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Fit a log-log slope to scan CSV rows.
    Fit(FitArgs),
    /// Exact exponent bounds d/2 + d/(d-2) and f(r) tables.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// sphere | rich-circle | generic | polya-multiset
    #[arg(long)]
    family: String,
    #[arg(long)]
    dim: Option<usize>,
    /// Squared norm N (sphere family).
    #[arg(long)]
    norm2: Option<u64>,
    /// Index into the rich-circle modulus sequence.
    #[arg(long)]
    k: Option<u32>,
    /// Set size (generic family).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    norm_bound: i64,
    /// Per-basis-vector multiplicity (polya-multiset family).
    #[arg(long)]
    mult: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbArgs {
    #[arg(long)]
    set: PathBuf,
    /// Target point, e.g. "0,0".
    #[arg(long)]
    target: String,
    /// naive | mitm | sparse_dp | fourier
    #[arg(long, default_value = "mitm")]
    engine: String,
}

#[derive(Args)]
struct RhoArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long, default_value = "mitm")]
    engine: String,
    /// Also export the full distribution as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    target: String,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PolyaArgs {
    #[arg(long)]
    dim: u32,
    #[arg(long)]
    steps: u64,
}

#[derive(Args)]
struct ScanArgs {
    /// Scan config JSON file.
    #[arg(long)]
    config: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (default: <out>.manifest.jsonl, appended).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Record real wall times in the CSV (breaks byte-determinism).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum GapCmd {
    /// Enumerate the element set.
    Enumerate {
        #[arg(long)]
        gap: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Injectivity of the coefficient map.
    Proper {
        #[arg(long)]
        gap: PathBuf,
    },
    /// Keep a subset of generators (1-based indices, e.g. "1,2").
    Project {
        #[arg(long)]
        gap: PathBuf,
        #[arg(long)]
        keep: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordered representations of m as a product of two elements.
    R2 {
        #[arg(long)]
        gap: PathBuf,
        /// Gaussian integer "re,im".
        #[arg(long)]
        m: String,
        /// Count over the conjugate extension instead of Q itself.
        #[arg(long)]
        conjugate_extension: bool,
    },
    /// Intersection with a circle of squared radius r2.
    Circle {
        #[arg(long)]
        gap: PathBuf,
        #[arg(long, default_value = "0,0")]
        center: String,
        #[arg(long)]
        r2: i128,
        /// Histogram over all squared distances instead of one circle.
        #[arg(long)]
        classes: bool,
    },
    /// Fraction of a vector set covered by the progression.
    Cover {
        #[arg(long)]
        gap: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
}

#[derive(Subcommand)]
enum IncidenceCmd {
    /// Plane richness and pair/triple sumset growth for a sphere set.
    Conj1 {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        threshold: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Per-sphere point counts and violations of an n-point hypothesis.
    Conj2 {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        centers: PathBuf,
        #[arg(long)]
        r2: i128,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Coplanarity of the fiber {u in V : w - u in V}.
    Fiber {
        #[arg(long)]
        set: PathBuf,
        /// Prescribed sum, e.g. "1,2,3".
        #[arg(long)]
        w: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct FitArgs {
    /// Scan CSV produced by `walklab scan`.
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    dim: Option<u64>,
    /// Inclusive f(r) range "lo:hi".
    #[arg(long)]
    f_range: Option<String>,
}

fn io_err(path: &Path, err: impl std::fmt::Display) -> Error {
    Error::precondition(format!("{}: {err}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_err(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn parse_coords(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Error::precondition(format!("bad coordinate {c:?}")))
        })
        .collect()
}

fn parse_point(text: &str) -> Result<LatticeVector> {
    Ok(LatticeVector::new(parse_coords(text)?))
}

fn rational_json(r: &Ratio<BigInt>) -> serde_json::Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "float": ratio_to_f64(r),
    })
}

fn emit(value: &serde_json::Value) {
    println!("{value}");
}

fn construct(args: &ConstructArgs, caps: &Caps) -> Result<VectorSet> {
    let need = |opt: Option<u64>, name: &str| {
        opt.ok_or_else(|| Error::precondition(format!("--{name} is required for this family")))
    };
    match args.family.as_str() {
        "sphere" => {
            let n = need(args.norm2, "norm2")?;
            let d = args.dim.unwrap_or(2);
            sum_of_squares_points(n, d, caps)
        }
        "rich-circle" | "rich_circle" => {
            let k = args
                .k
                .ok_or_else(|| Error::precondition("--k is required for rich-circle"))?;
            let modulus = rich_circle_modulus(k, caps)?;
            let n = u64::try_from(&modulus).map_err(|_| {
                Error::guard("rich_circle construct", u128::MAX, u64::MAX as u128, "modulus")
            })?;
            sum_of_squares_points(n, 2, caps)
        }
        "generic" => {
            let n = args
                .n
                .ok_or_else(|| Error::precondition("--n is required for generic"))?;
            let d = args.dim.unwrap_or(2);
            generic_set(n, d, args.seed, args.norm_bound)
        }
        "polya-multiset" | "polya_multiset" => {
            let d = args.dim.unwrap_or(2);
            let m = args
                .mult
                .ok_or_else(|| Error::precondition("--mult is required for polya-multiset"))?;
            polya_multiset(d, m)
        }
        other => Err(Error::precondition(format!(
            "unknown family {other:?} (expected sphere|rich-circle|generic|polya-multiset)"
        ))),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let caps = cli.caps.build()?;
    match &cli.command {
        Command::Construct(args) => {
            let set = construct(args, &caps)?;
            let text = serde_json::to_string(&set).expect("vector sets serialize");
            match &args.out {
                Some(path) => write_text(path, &(text + "\n"))?,
                None => println!("{text}"),
            }
        }
        Command::Prob(args) => {
            let set: VectorSet = read_json(&args.set)?;
            let x = parse_point(&args.target)?;
            if args.engine == "fourier" {
                let f = exact_prob_fourier(&set, &x, &caps)?;
                emit(&json!({
                    "float": f.value,
                    "error_bound": f.error_bound,
                    "grid_side": f.grid_side,
                    "engine": "fourier",
                }));
            } else {
                let engine = Engine::from_str(&args.engine)?;
                let p = prob_at(&set, &x, engine, &caps)?;
                let mut value = rational_json(&p);
                value["engine"] = json!(engine.name());
                emit(&value);
            }
        }
        Command::Rho(args) => {
            let set: VectorSet = read_json(&args.set)?;
            let engine = Engine::from_str(&args.engine)?;
            let (x_star, value) = if let Some(out) = &args.out {
                // materialize the table once for both the CSV and the argmax
                let dist = exact_distribution(&set, engine, &caps)?;
                let mut buf = Vec::new();
                dist.write_csv(&mut buf).map_err(|e| io_err(out, e))?;
                fs::write(out, buf).map_err(|e| io_err(out, e))?;
                let (x, count) = dist.argmax().expect("nonempty distribution");
                (
                    x,
                    walklab::walkdist::count_over_power_of_two(&count, set.len()),
                )
            } else {
                rho(&set, engine, &caps)?
            };
            let mut value_json = rational_json(&value);
            value_json["x_star"] = json!(x_star.coords());
            value_json["engine"] = json!(engine.name());
            emit(&value_json);
        }
        Command::Mc(args) => {
            let set: VectorSet = read_json(&args.set)?;
            let x = parse_point(&args.target)?;
            let est = mc_estimate(&set, &x, args.samples, args.seed, &caps)?;
            emit(&serde_json::to_value(est).expect("estimate serializes"));
        }
        Command::Polya(args) => {
            let p = polya_return_prob(args.dim, args.steps, &caps)?;
            emit(&rational_json(&p));
        }
        Command::Scan(args) => {
            let config: ScanConfig = read_json(&args.config)?;
            let output = run_scan(&config, &caps, args.timings)?;
            write_text(&args.out, &output.csv)?;
            let manifest_path = args
                .manifest
                .clone()
                .unwrap_or_else(|| args.out.with_extension("manifest.jsonl"));
            let entry = json!({
                "config": config,
                "version": env!("CARGO_PKG_VERSION"),
                "csv": args.out.display().to_string(),
                "fitted_slope": output.fit.map(|f| f.slope),
                "slope_stderr": output.fit.map(|f| f.stderr),
                "rows": output.rows,
            });
            let mut file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&manifest_path)
                .map_err(|e| io_err(&manifest_path, e))?;
            writeln!(file, "{entry}").map_err(|e| io_err(&manifest_path, e))?;
            emit(&json!({
                "rows": output.rows.len(),
                "errors": output.rows.iter().filter(|r| r.error.is_some()).count(),
                "fitted_slope": output.fit.map(|f| f.slope),
                "slope_stderr": output.fit.map(|f| f.stderr),
                "csv": args.out.display().to_string(),
                "manifest": manifest_path.display().to_string(),
            }));
        }
        Command::Gap(cmd) => run_gap(cmd, &caps)?,
        Command::Incidence(cmd) => run_incidence(cmd, &caps)?,
        Command::Fit(args) => {
            let text = fs::read_to_string(&args.csv).map_err(|e| io_err(&args.csv, e))?;
            let mut points = Vec::new();
            for line in text.lines().skip(1) {
                let cells: Vec<&str> = line.split(',').collect();
                if cells.len() < 9 || cells[7].is_empty() {
                    continue;
                }
                let n: u64 = cells[2]
                    .parse()
                    .map_err(|_| Error::precondition("bad n cell in CSV"))?;
                let p: f64 = cells[7]
                    .parse()
                    .map_err(|_| Error::precondition("bad prob_float cell in CSV"))?;
                if n >= 1 && p > 0.0 {
                    points.push((n, p));
                }
            }
            let fit = exponent_fit(&points)?;
            emit(&serde_json::to_value(fit).expect("fit serializes"));
        }
        Command::Bounds(args) => {
            if args.dim.is_none() && args.f_range.is_none() {
                return Err(Error::precondition("pass --dim and/or --f-range"));
            }
            let mut out = serde_json::Map::new();
            if let Some(d) = args.dim {
                let b = bound_exponent(d)?;
                out.insert(
                    "bound_exponent".into(),
                    json!({
                        "d": d,
                        "num": b.numer().to_string(),
                        "den": b.denom().to_string(),
                        "float": *b.numer() as f64 / *b.denom() as f64,
                    }),
                );
            }
            if let Some(range) = &args.f_range {
                let (lo, hi) = range
                    .split_once(':')
                    .ok_or_else(|| Error::precondition("f-range looks like \"lo:hi\""))?;
                let lo: u64 = lo
                    .parse()
                    .map_err(|_| Error::precondition("bad f-range lower bound"))?;
                let hi: u64 = hi
                    .parse()
                    .map_err(|_| Error::precondition("bad f-range upper bound"))?;
                let rows: Vec<serde_json::Value> = f_table(lo, hi)?
                    .into_iter()
                    .map(|(r, f)| {
                        json!({
                            "r": r,
                            "num": f.numer().to_string(),
                            "den": f.denom().to_string(),
                            "float": *f.numer() as f64 / *f.denom() as f64,
                        })
                    })
                    .collect();
                out.insert("f_table".into(), json!(rows));
            }
            emit(&serde_json::Value::Object(out));
        }
    }
    Ok(())
}

fn run_gap(cmd: &GapCmd, caps: &Caps) -> Result<()> {
    match cmd {
        GapCmd::Enumerate { gap, out } => {
            let q: Gap = read_json(gap)?;
            let points = enumerate(&q, caps)?;
            let value = json!({
                "actual": points.len(),
                "nominal": q.nominal_size().to_string(),
                "points": points.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
            });
            match out {
                Some(path) => write_text(path, &(value.to_string() + "\n"))?,
                None => emit(&value),
            }
        }
        GapCmd::Proper { gap } => {
            let q: Gap = read_json(gap)?;
            let proper = is_proper(&q, caps)?;
            let actual = enumerate(&q, caps)?.len();
            emit(&json!({
                "proper": proper,
                "actual": actual,
                "nominal": q.nominal_size().to_string(),
            }));
        }
        GapCmd::Project { gap, keep, out } => {
            let q: Gap = read_json(gap)?;
            let keep: Vec<usize> = keep
                .split(',')
                .map(|i| -> Result<usize> {
                    let one_based: usize = i
                        .trim()
                        .parse()
                        .map_err(|_| Error::precondition(format!("bad index {i:?}")))?;
                    if one_based == 0 {
                        return Err(Error::precondition("generator indices are 1-based"));
                    }
                    Ok(one_based - 1)
                })
                .collect::<Result<_>>()?;
            let projected = project(&q, &keep)?;
            let text = serde_json::to_string(&projected).expect("progressions serialize");
            match out {
                Some(path) => write_text(path, &(text + "\n"))?,
                None => println!("{text}"),
            }
        }
        GapCmd::R2 {
            gap,
            m,
            conjugate_extension: use_extension,
        } => {
            let q: Gap = read_json(gap)?;
            let m = parse_point(m)?;
            let base = if *use_extension { conjugate_extension(&q)? } else { q };
            let elements = enumerate(&base, caps)?;
            let count = r2_count(&m, &elements)?;
            emit(&json!({
                "r2": count,
                "m": m.coords(),
                "elements": elements.len(),
                "conjugate_extension": use_extension,
            }));
        }
        GapCmd::Circle {
            gap,
            center,
            r2,
            classes,
        } => {
            let q: Gap = read_json(gap)?;
            let center = parse_point(center)?;
            if *classes {
                let report = norm_class_report(&q, &center, caps)?;
                emit(&serde_json::to_value(report).expect("report serializes"));
            } else {
                let (count, points) = circle_intersection_count(&q, &center, *r2, caps)?;
                emit(&json!({
                    "count": count,
                    "points": points.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
                }));
            }
        }
        GapCmd::Cover { gap, set } => {
            let q: Gap = read_json(gap)?;
            let v: VectorSet = read_json(set)?;
            let fraction = cover_fraction(&v, &q, caps)?;
            emit(&json!({
                "num": fraction.numer().to_string(),
                "den": fraction.denom().to_string(),
                "float": *fraction.numer() as f64 / *fraction.denom() as f64,
            }));
        }
    }
    Ok(())
}

fn run_incidence(cmd: &IncidenceCmd, caps: &Caps) -> Result<()> {
    match cmd {
        IncidenceCmd::Conj1 {
            set,
            threshold,
            json: as_json,
        } => {
            let v: VectorSet = read_json(set)?;
            let threshold = threshold.unwrap_or_else(|| default_richness_threshold(v.len()));
            let report = conjecture1_report(&v, threshold, caps)?;
            if *as_json {
                emit(&serde_json::to_value(&report).expect("report serializes"));
            } else {
                println!("{report}");
            }
        }
        IncidenceCmd::Conj2 {
            points,
            centers,
            r2,
            n,
            json: as_json,
        } => {
            let p: VectorSet = read_json(points)?;
            let c: VectorSet = read_json(centers)?;
            let report = conjecture2_check(p.vectors(), c.vectors(), *r2, *n, caps)?;
            if *as_json {
                emit(&serde_json::to_value(&report).expect("report serializes"));
            } else {
                println!("points             {:>12}", report.p);
                println!("required per sphere{:>12}", report.n);
                println!("violating spheres  {:>12}", report.violations.len());
                for (center, count) in report.violations.iter().take(10) {
                    println!("  {center}: {count}");
                }
                match report.log_ratio {
                    Some(r) => println!("log p / log n      {r:>12.4}"),
                    None => println!("log p / log n           undefined"),
                }
                println!("n^(5/2)            {:>12.1}", report.n_pow_5_2);
            }
        }
        IncidenceCmd::Fiber {
            set,
            w,
            json: as_json,
        } => {
            let v: VectorSet = read_json(set)?;
            let w = parse_point(w)?;
            let result = fiber_coplanarity_check(&v, &w)?;
            if *as_json {
                emit(&serde_json::to_value(&result).expect("result serializes"));
            } else {
                println!("fiber size         {:>12}", result.fiber.len());
                println!("coplanar           {:>12}", result.coplanar);
                if let Some(plane) = &result.witness {
                    println!("witness            {plane}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Precondition(_) => ExitCode::from(2),
                Error::ResourceGuard { .. } => ExitCode::from(3),
            }
        }
    }
}
