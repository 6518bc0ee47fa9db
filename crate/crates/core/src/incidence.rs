//! Computational explorer for sphere-point incidence questions in Z^3:
//! plane richness, pair/triple sumset growth, per-sphere incidence counts,
//! and the coplanarity of fixed-sum fibers.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gaplab::sumset;
use crate::linalg;
use crate::vecset::{
    max_hyperplane_richness, Hyperplane, HyperplaneMode, LatticeVector, VectorSet,
};

/// Snapshot of the quantities the sumset-growth conjecture talks about,
/// for one concrete set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub n: usize,
    pub plane_richness: usize,
    pub pair_size: usize,
    pub triple_size: usize,
    pub pair_exponent: f64,
    pub triple_exponent: f64,
    pub hypothesis_ok: bool,
    pub richness_threshold: usize,
}

impl fmt::Display for IncidenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n                  {:>12}", self.n)?;
        writeln!(
            f,
            "plane richness     {:>12}   (threshold {}, hypothesis {})",
            self.plane_richness,
            self.richness_threshold,
            if self.hypothesis_ok { "ok" } else { "violated" }
        )?;
        writeln!(
            f,
            "|V+V|              {:>12}   exponent {:.4}",
            self.pair_size, self.pair_exponent
        )?;
        write!(
            f,
            "|V+V+V|            {:>12}   exponent {:.4}",
            self.triple_size, self.triple_exponent
        )
    }
}

/// Default plane-richness threshold: ceil(log2 n)^2.
pub fn default_richness_threshold(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let log2 = (usize::BITS - (n - 1).leading_zeros()) as usize;
    log2 * log2
}

fn require_sphere_set(set: &VectorSet) -> Result<()> {
    if set.dim() != 3 {
        return Err(Error::precondition(format!(
            "expected a 3-dimensional set, got dimension {}",
            set.dim()
        )));
    }
    if set.is_empty() {
        return Err(Error::precondition("empty set"));
    }
    let norm = set.vectors()[0].norm2();
    if set.iter().any(|v| v.norm2() != norm) {
        return Err(Error::precondition(
            "mixed norms: all vectors must lie on one sphere about the origin",
        ));
    }
    if set.scale2().is_none() {
        return Err(Error::precondition(
            "the common squared norm must be declared (scale2)",
        ));
    }
    Ok(())
}

/// Plane richness, exact |V+V| and |V+V+V|, and their log-ratio exponents
/// for a set of distinct points on one origin-centered sphere in Z^3.
pub fn conjecture1_report(
    set: &VectorSet,
    richness_threshold: usize,
    caps: &Caps,
) -> Result<IncidenceReport> {
    require_sphere_set(set)?;
    let distinct: Vec<LatticeVector> = {
        let mut d: Vec<LatticeVector> = set.iter().cloned().collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let n = distinct.len();
    let distinct_set = VectorSet::new(3, distinct.clone(), set.scale2())?;
    let (plane_richness, _) =
        max_hyperplane_richness(&distinct_set, HyperplaneMode::Affine, caps)?;
    let pair = sumset(&distinct, &distinct, caps)?;
    let triple = sumset(&pair, &distinct, caps)?;
    let exponent = |size: usize| {
        if n <= 1 || size == 0 {
            0.0
        } else {
            (size as f64).ln() / (n as f64).ln()
        }
    };
    Ok(IncidenceReport {
        n,
        plane_richness,
        pair_size: pair.len(),
        triple_size: triple.len(),
        pair_exponent: exponent(pair.len()),
        triple_exponent: exponent(triple.len()),
        hypothesis_ok: plane_richness <= richness_threshold,
        richness_threshold,
    })
}

/// Per-center counts of points at squared distance `r2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereIncidences {
    pub per_center: Vec<(LatticeVector, u64)>,
    pub total: u64,
}

pub fn sphere_point_incidences(
    points: &[LatticeVector],
    centers: &[LatticeVector],
    r2: i128,
    caps: &Caps,
) -> Result<SphereIncidences> {
    if r2 < 0 {
        return Err(Error::precondition("squared radius must be nonnegative"));
    }
    if let (Some(p), Some(c)) = (points.first(), centers.first()) {
        if p.dim() != c.dim() {
            return Err(Error::precondition("point and center dimensions differ"));
        }
    }
    let pairs = (points.len() as u128) * (centers.len() as u128);
    if pairs > caps.incidence_pairs as u128 {
        return Err(Error::guard(
            "sphere_point_incidences",
            pairs,
            caps.incidence_pairs as u128,
            "point-center pairs",
        ));
    }
    let mut per_center = Vec::with_capacity(centers.len());
    let mut total = 0u64;
    for c in centers {
        let count = points.iter().filter(|p| p.dist2(c) == r2).count() as u64;
        total += count;
        per_center.push((c.clone(), count));
    }
    Ok(SphereIncidences { per_center, total })
}

/// Sphere-family report: which spheres fall short of n points, and how the
/// point count p compares to n^(5/2). Reports only; asserts nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereFamilyReport {
    pub p: usize,
    pub n: u64,
    pub violations: Vec<(LatticeVector, u64)>,
    /// log p / log n when both are meaningful.
    pub log_ratio: Option<f64>,
    pub n_pow_5_2: f64,
}

pub fn conjecture2_check(
    points: &[LatticeVector],
    centers: &[LatticeVector],
    r2: i128,
    n: u64,
    caps: &Caps,
) -> Result<SphereFamilyReport> {
    let incidences = sphere_point_incidences(points, centers, r2, caps)?;
    let violations: Vec<(LatticeVector, u64)> = incidences
        .per_center
        .into_iter()
        .filter(|(_, count)| *count < n)
        .collect();
    let p = {
        let mut d: Vec<&LatticeVector> = points.iter().collect();
        d.sort_unstable();
        d.dedup();
        d.len()
    };
    let log_ratio = if p > 0 && n > 1 {
        Some((p as f64).ln() / (n as f64).ln())
    } else {
        None
    };
    Ok(SphereFamilyReport {
        p,
        n,
        violations,
        log_ratio,
        n_pow_5_2: (n as f64).powf(2.5),
    })
}

/// Result of the fixed-sum fiber coplanarity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCoplanarity {
    pub fiber: Vec<LatticeVector>,
    pub coplanar: bool,
    pub witness: Option<Hyperplane>,
}

/// For V on one origin-centered sphere and a target sum w, the fiber
/// F = {u in V : w - u in V} collects the endpoints of all vector pairs
/// summing to w. For nonzero w those endpoints satisfy 2 w.u = |w|^2, a
/// genuine plane; the test works from an exact rank computation on
/// coordinate differences rather than assuming that.
pub fn fiber_coplanarity_check(set: &VectorSet, w: &LatticeVector) -> Result<FiberCoplanarity> {
    require_sphere_set(set)?;
    if w.dim() != 3 {
        return Err(Error::precondition("target sum must be 3-dimensional"));
    }
    let points: HashSet<&LatticeVector> = set.iter().collect();
    let mut fiber: Vec<LatticeVector> = set
        .iter()
        .filter(|u| points.contains(&u.sub(w).neg()))
        .cloned()
        .collect();
    fiber.sort_unstable();
    fiber.dedup();

    if fiber.len() <= 3 {
        let witness = if fiber.len() == 3 {
            plane_through(&fiber).ok()
        } else {
            None
        };
        return Ok(FiberCoplanarity {
            fiber,
            coplanar: true,
            witness,
        });
    }

    let base = &fiber[0];
    let diffs: Vec<Vec<i128>> = fiber[1..].iter().map(|p| p.sub(base).to_i128()).collect();
    let coplanar = linalg::rank(&diffs)? <= 2;
    let witness = if coplanar {
        plane_through(&fiber).ok()
    } else {
        None
    };
    Ok(FiberCoplanarity {
        fiber,
        coplanar,
        witness,
    })
}

/// A plane through all the given coplanar points.
fn plane_through(points: &[LatticeVector]) -> Result<Hyperplane> {
    let base = &points[0];
    let diffs: Vec<Vec<i128>> = points[1..].iter().map(|p| p.sub(base).to_i128()).collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for i in linalg::independent_rows(&diffs)? {
        basis.push(diffs[i].clone());
    }
    for axis in 0..3 {
        if basis.len() == 2 {
            break;
        }
        let mut e = vec![0i128; 3];
        e[axis] = 1;
        basis.push(e);
        if linalg::rank(&basis)? < basis.len() {
            basis.pop();
        }
    }
    let mut normal = linalg::generalized_cross(&basis, 3)?;
    let mut offset = linalg::checked_dot(&normal, &base.to_i128())?;
    linalg::reduce_hyperplane(&mut normal, &mut offset)
        .ok_or_else(|| Error::precondition("degenerate plane"))?;
    let fits = normal.iter().all(|&x| i64::try_from(x).is_ok()) && i64::try_from(offset).is_ok();
    if !fits {
        return Err(Error::precondition("plane coordinates exceed supported range"));
    }
    Ok(Hyperplane {
        normal: normal.into_iter().map(|x| x as i64).collect(),
        offset: offset as i64,
    })
}

/// Sort-merge sumset oracle, independent of the hash-based implementation.
pub fn sumset_sort_merge_oracle(a: &[LatticeVector], b: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    let mut b = b.to_vec();
    b.sort_unstable();
    b.dedup();
    let mut sums: Vec<LatticeVector> = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            sums.push(x.add(y));
        }
    }
    sums.sort_unstable();
    sums.dedup();
    sums
}
