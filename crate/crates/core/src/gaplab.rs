//! Generalized arithmetic progressions: enumeration, properness, projection,
//! sumsets, multiplicative representation counting over Z[i], conjugate
//! extension, and circle-intersection counting.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::vecset::{LatticeVector, VectorSet, COORD_LIMIT};

/// Ambient group of a progression: Z^d, or Z[i] stored as integer pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Lattice(usize),
    Gaussian,
}

impl Ambient {
    pub fn dim(self) -> usize {
        match self {
            Ambient::Lattice(d) => d,
            Ambient::Gaussian => 2,
        }
    }
}

impl Serialize for Ambient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ambient::Lattice(d) => s.serialize_u64(*d as u64),
            Ambient::Gaussian => s.serialize_str("gaussian"),
        }
    }
}

impl<'de> Deserialize<'de> for Ambient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Dim(u64),
            Tag(String),
        }
        match Repr::deserialize(d)? {
            Repr::Dim(n) if n >= 1 => Ok(Ambient::Lattice(n as usize)),
            Repr::Dim(_) => Err(D::Error::custom("ambient dimension must be at least 1")),
            Repr::Tag(s) if s == "gaussian" => Ok(Ambient::Gaussian),
            Repr::Tag(s) => Err(D::Error::custom(format!("unknown ambient tag {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GapRepr {
    ambient: Ambient,
    base: LatticeVector,
    generators: Vec<LatticeVector>,
    dims: Vec<u64>,
    symmetric: bool,
}

/// A generalized arithmetic progression.
///
/// Box form (`symmetric = false`): base + sum x_i a_i with 0 <= x_i <= N_i.
/// Symmetric form: sum n_i a_i with -N_i <= n_i <= N_i and zero base.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GapRepr", into = "GapRepr")]
pub struct Gap {
    ambient: Ambient,
    base: LatticeVector,
    generators: Vec<LatticeVector>,
    dims: Vec<u64>,
    symmetric: bool,
}

impl TryFrom<GapRepr> for Gap {
    type Error = Error;
    fn try_from(r: GapRepr) -> Result<Self> {
        Gap::new(r.ambient, r.base, r.generators, r.dims, r.symmetric)
    }
}

impl From<Gap> for GapRepr {
    fn from(g: Gap) -> Self {
        GapRepr {
            ambient: g.ambient,
            base: g.base,
            generators: g.generators,
            dims: g.dims,
            symmetric: g.symmetric,
        }
    }
}

impl fmt::Debug for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Gap(ambient={:?}, rank={}, dims={:?}, symmetric={})",
            self.ambient,
            self.rank(),
            self.dims,
            self.symmetric
        )
    }
}

impl Gap {
    pub fn new(
        ambient: Ambient,
        base: LatticeVector,
        generators: Vec<LatticeVector>,
        dims: Vec<u64>,
        symmetric: bool,
    ) -> Result<Self> {
        let d = ambient.dim();
        if generators.len() != dims.len() {
            return Err(Error::precondition(format!(
                "{} generators but {} dimensions",
                generators.len(),
                dims.len()
            )));
        }
        if base.dim() != d {
            return Err(Error::precondition("base dimension does not match ambient"));
        }
        for g in generators.iter().chain(std::iter::once(&base)) {
            if g.dim() != d {
                return Err(Error::precondition(
                    "generator dimension does not match ambient",
                ));
            }
            if g.coords().iter().any(|&c| c.abs() > COORD_LIMIT) {
                return Err(Error::precondition(format!(
                    "coordinate magnitude exceeds {COORD_LIMIT}"
                )));
            }
        }
        if symmetric && !base.is_zero() {
            return Err(Error::precondition(
                "symmetric progressions must have zero base",
            ));
        }
        Ok(Gap {
            ambient,
            base,
            generators,
            dims,
            symmetric,
        })
    }

    /// Symmetric progression around the origin in Z^2 / Z[i].
    pub fn symmetric(
        ambient: Ambient,
        generators: Vec<LatticeVector>,
        dims: Vec<u64>,
    ) -> Result<Self> {
        let base = LatticeVector::zero(ambient.dim());
        Gap::new(ambient, base, generators, dims, true)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn base(&self) -> &LatticeVector {
        &self.base
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn is_symmetric_form(&self) -> bool {
        self.symmetric
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Product of the coefficient ranges: an upper bound for the actual size.
    pub fn nominal_size(&self) -> BigUint {
        let mut p = BigUint::one();
        for &n in &self.dims {
            p *= BigUint::from(if self.symmetric { 2 * n + 1 } else { n + 1 });
        }
        p
    }

    fn coefficient_ranges(&self) -> (Vec<i64>, Vec<i64>) {
        let lows = self
            .dims
            .iter()
            .map(|&n| if self.symmetric { -(n as i64) } else { 0 })
            .collect();
        let highs = self.dims.iter().map(|&n| n as i64).collect();
        (lows, highs)
    }
}

fn nominal_guard(q: &Gap, op: &str, caps: &Caps) -> Result<u128> {
    let mut nominal: u128 = 1;
    for &n in q.dims() {
        let range = if q.symmetric { 2 * n as u128 + 1 } else { n as u128 + 1 };
        nominal = nominal.saturating_mul(range);
    }
    if nominal > caps.enum_nominal as u128 {
        return Err(Error::guard(
            op,
            nominal,
            caps.enum_nominal as u128,
            "coefficient tuples",
        ));
    }
    Ok(nominal)
}

fn overflow() -> Error {
    Error::precondition("progression element exceeds the supported coordinate range")
}

fn walk_coefficient_points(
    q: &Gap,
    mut emit: impl FnMut(&[i64], LatticeVector) -> Result<()>,
) -> Result<()> {
    let d = q.ambient.dim();
    let r = q.rank();
    let (lows, highs) = q.coefficient_ranges();
    let gens: Vec<Vec<i128>> = q.generators.iter().map(|g| g.to_i128()).collect();

    let mut coeffs = lows.clone();
    let mut elem: Vec<i128> = q.base.to_i128();
    for i in 0..r {
        for c in 0..d {
            let term = gens[i][c].checked_mul(lows[i] as i128).ok_or_else(overflow)?;
            elem[c] = elem[c].checked_add(term).ok_or_else(overflow)?;
        }
    }

    loop {
        let point: Vec<i64> = elem
            .iter()
            .map(|&c| i64::try_from(c).map_err(|_| overflow()))
            .collect::<Result<_>>()?;
        emit(&coeffs, LatticeVector::new(point))?;

        let mut axis = 0;
        loop {
            if axis == r {
                return Ok(());
            }
            if coeffs[axis] < highs[axis] {
                coeffs[axis] += 1;
                for c in 0..d {
                    elem[c] = elem[c].checked_add(gens[axis][c]).ok_or_else(overflow)?;
                }
                break;
            }
            let span = (highs[axis] - lows[axis]) as i128;
            for c in 0..d {
                let back = gens[axis][c].checked_mul(span).ok_or_else(overflow)?;
                elem[c] = elem[c].checked_sub(back).ok_or_else(overflow)?;
            }
            coeffs[axis] = lows[axis];
            axis += 1;
        }
    }
}

/// Exact element set, deduplicated and sorted.
pub fn enumerate(q: &Gap, caps: &Caps) -> Result<Vec<LatticeVector>> {
    nominal_guard(q, "enumerate", caps)?;
    let mut seen: HashSet<LatticeVector> = HashSet::new();
    walk_coefficient_points(q, |_, p| {
        seen.insert(p);
        Ok(())
    })?;
    let mut out: Vec<LatticeVector> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Every coefficient tuple with its image point, in odometer order.
/// Intended for desk-scale verification; memory is proportional to the
/// nominal size.
pub fn coefficient_points(q: &Gap, caps: &Caps) -> Result<Vec<(Vec<i64>, LatticeVector)>> {
    nominal_guard(q, "coefficient_points", caps)?;
    let mut out = Vec::new();
    walk_coefficient_points(q, |coeffs, p| {
        out.push((coeffs.to_vec(), p));
        Ok(())
    })?;
    Ok(out)
}

/// True iff the coefficient map is injective, i.e. actual size equals
/// nominal size.
pub fn is_proper(q: &Gap, caps: &Caps) -> Result<bool> {
    let nominal = nominal_guard(q, "is_proper", caps)?;
    let actual = enumerate(q, caps)?.len();
    Ok(actual as u128 == nominal)
}

/// Sub-progression over the kept generator indices (0-based).
///
/// Box progressions keep their base; symmetric ones stay centered at zero.
pub fn project(q: &Gap, keep: &[usize]) -> Result<Gap> {
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&i| i >= q.rank()) {
        return Err(Error::precondition(format!(
            "generator index {bad} out of range for rank {}",
            q.rank()
        )));
    }
    Gap::new(
        q.ambient,
        q.base.clone(),
        keep.iter().map(|&i| q.generators[i].clone()).collect(),
        keep.iter().map(|&i| q.dims[i]).collect(),
        q.symmetric,
    )
}

fn dedup_sorted(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = points.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// Exact sumset {a + b : a in A, b in B}, sorted. Inputs are treated as
/// sets.
pub fn sumset(a: &[LatticeVector], b: &[LatticeVector], caps: &Caps) -> Result<Vec<LatticeVector>> {
    let a = dedup_sorted(a);
    let b = dedup_sorted(b);
    let pairs = (a.len() as u128) * (b.len() as u128);
    if pairs > caps.sumset_pairs as u128 {
        return Err(Error::guard(
            "sumset",
            pairs,
            caps.sumset_pairs as u128,
            "point pairs",
        ));
    }
    let mut out: HashSet<LatticeVector> = HashSet::new();
    for x in &a {
        for y in &b {
            out.insert(x.add(y));
        }
    }
    let mut out: Vec<LatticeVector> = out.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn gaussian(v: &LatticeVector) -> Result<(i128, i128)> {
    if v.dim() != 2 {
        return Err(Error::precondition(format!(
            "expected a Gaussian integer (dimension 2), got dimension {}",
            v.dim()
        )));
    }
    Ok((v.coords()[0] as i128, v.coords()[1] as i128))
}

fn gaussian_mul(a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128)> {
    let re = a.0.checked_mul(b.0)?.checked_sub(a.1.checked_mul(b.1)?)?;
    let im = a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?;
    Some((re, im))
}

/// m / x in Z[i] when the division is exact.
fn gaussian_div_exact(m: (i128, i128), x: (i128, i128)) -> Option<(i128, i128)> {
    let norm = x.0.checked_mul(x.0)?.checked_add(x.1.checked_mul(x.1)?)?;
    if norm == 0 {
        return None;
    }
    // m * conj(x) / |x|^2
    let re = m.0.checked_mul(x.0)?.checked_add(m.1.checked_mul(x.1)?)?;
    let im = m.1.checked_mul(x.0)?.checked_sub(m.0.checked_mul(x.1)?)?;
    if re % norm != 0 || im % norm != 0 {
        return None;
    }
    Some((re / norm, im / norm))
}

/// Number of ordered pairs (x, y) in X^2 with x*y = m under Gaussian-integer
/// multiplication. X is treated as a set.
pub fn r2_count(m: &LatticeVector, xs: &[LatticeVector]) -> Result<u64> {
    let m = gaussian(m)?;
    let mut set: HashSet<(i64, i64)> = HashSet::with_capacity(xs.len());
    for v in xs {
        let (re, im) = gaussian(v)?;
        set.insert((re as i64, im as i64));
    }
    let mut count = 0u64;
    for &(re, im) in &set {
        let x = (re as i128, im as i128);
        if x == (0, 0) {
            if m == (0, 0) {
                count += set.len() as u64;
            }
            continue;
        }
        if let Some(q) = gaussian_div_exact(m, x) {
            let fits = i64::try_from(q.0).ok().zip(i64::try_from(q.1).ok());
            if let Some(q64) = fits {
                if set.contains(&q64) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Double-loop oracle for `r2_count`; intentionally naive.
pub fn r2_count_oracle(m: &LatticeVector, xs: &[LatticeVector]) -> Result<u64> {
    let m = gaussian(m)?;
    let mut set: Vec<(i128, i128)> = Vec::new();
    for v in xs {
        set.push(gaussian(v)?);
    }
    set.sort_unstable();
    set.dedup();
    let mut count = 0u64;
    for &x in &set {
        for &y in &set {
            if gaussian_mul(x, y) == Some(m) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn conj(v: &LatticeVector) -> LatticeVector {
    LatticeVector::new(vec![v.coords()[0], -v.coords()[1]])
}

/// The rank 2r+2 progression P spanned by a_0..a_r and their conjugates,
/// with coefficient ranges {0,1} on a_0, conj(a_0) and |x_i|, |y_i| <= N_i
/// elsewhere. Contains every element of Q and every conjugate of one.
///
/// The signed ranges are realized as a box progression with a shifted base.
pub fn conjugate_extension(q: &Gap) -> Result<Gap> {
    if q.ambient.dim() != 2 {
        return Err(Error::precondition(
            "conjugate extension requires a progression over Z^2 / Z[i]",
        ));
    }
    let r = q.rank();
    let mut generators = Vec::with_capacity(2 * r + 2);
    let mut dims = Vec::with_capacity(2 * r + 2);
    generators.push(q.base.clone());
    dims.push(1);
    generators.extend(q.generators.iter().cloned());
    dims.extend(q.dims.iter().map(|&n| 2 * n));
    generators.push(conj(&q.base));
    dims.push(1);
    generators.extend(q.generators.iter().map(conj));
    dims.extend(q.dims.iter().map(|&n| 2 * n));

    // base shift turning [0, 2N_i] box coefficients into [-N_i, N_i]
    let mut base = vec![0i128; 2];
    for (g, &n) in q.generators.iter().zip(q.dims.iter()) {
        let gc = g.to_i128();
        let cc = conj(g).to_i128();
        for c in 0..2 {
            let shift = (gc[c] + cc[c]).checked_mul(n as i128).ok_or_else(overflow)?;
            base[c] = base[c].checked_sub(shift).ok_or_else(overflow)?;
        }
    }
    let base: Vec<i64> = base
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| overflow()))
        .collect::<Result<_>>()?;

    Gap::new(
        Ambient::Gaussian,
        LatticeVector::new(base),
        generators,
        dims,
        false,
    )
}

/// Exact count (and the points) of enumerated elements at squared distance
/// `r2` from `center`.
pub fn circle_intersection_count(
    q: &Gap,
    center: &LatticeVector,
    r2: i128,
    caps: &Caps,
) -> Result<(u64, Vec<LatticeVector>)> {
    if r2 < 0 {
        return Err(Error::precondition("squared radius must be nonnegative"));
    }
    if center.dim() != q.ambient.dim() {
        return Err(Error::precondition("center dimension does not match ambient"));
    }
    let points: Vec<LatticeVector> = enumerate(q, caps)?
        .into_iter()
        .filter(|p| p.dist2(center) == r2)
        .collect();
    Ok((points.len() as u64, points))
}

/// Histogram of squared distances from `center` over the element set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormClassReport {
    pub classes: BTreeMap<u64, usize>,
    pub max_class_size: usize,
}

pub fn norm_class_report(q: &Gap, center: &LatticeVector, caps: &Caps) -> Result<NormClassReport> {
    if center.dim() != q.ambient.dim() {
        return Err(Error::precondition("center dimension does not match ambient"));
    }
    let mut classes: BTreeMap<u64, usize> = BTreeMap::new();
    for p in enumerate(q, caps)? {
        let d2 = u64::try_from(p.dist2(center))
            .map_err(|_| Error::precondition("squared distance exceeds u64"))?;
        *classes.entry(d2).or_insert(0) += 1;
    }
    let max_class_size = classes.values().copied().max().unwrap_or(0);
    Ok(NormClassReport {
        classes,
        max_class_size,
    })
}

/// Fraction of the multiset V (with multiplicity) lying in the element set
/// of Q. The empty multiset is vacuously fully covered.
pub fn cover_fraction(v: &VectorSet, q: &Gap, caps: &Caps) -> Result<Ratio<i64>> {
    if v.dim() != q.ambient.dim() {
        return Err(Error::precondition(format!(
            "set dimension {} does not match progression ambient {}",
            v.dim(),
            q.ambient.dim()
        )));
    }
    if v.is_empty() {
        return Ok(Ratio::one());
    }
    let elements: HashSet<LatticeVector> = enumerate(q, caps)?.into_iter().collect();
    let inside = v.iter().filter(|p| elements.contains(p)).count();
    Ok(Ratio::new(inside as i64, v.len() as i64))
}

/// One sampled multiplicative representation count with its scale-free
/// exponent log(r2) * log log N / log N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct R2Sample {
    pub m: LatticeVector,
    pub r2: u64,
    pub exponent: f64,
}

/// Empirical exponent report for representation counts over a progression:
/// how large r2(m; Q) gets relative to N^(1/log log N) across sampled
/// products m of element pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct R2ExponentReport {
    pub max_dim: u64,
    pub samples: Vec<R2Sample>,
    pub max_exponent: f64,
}

pub fn r2_exponent_report(q: &Gap, max_products: usize, caps: &Caps) -> Result<R2ExponentReport> {
    let max_dim = q.dims().iter().copied().max().unwrap_or(0);
    if max_dim < 3 {
        return Err(Error::precondition(
            "exponent report needs a maximum dimension of at least 3 (log log N > 0)",
        ));
    }
    let elements = enumerate(q, caps)?;
    let log_n = (max_dim as f64).ln();
    let scale = log_n.ln() / log_n;

    let total_pairs = elements.len() * elements.len();
    let stride = total_pairs.div_ceil(max_products.max(1)).max(1);
    let mut products: Vec<LatticeVector> = Vec::new();
    let mut flat = 0usize;
    while flat < total_pairs {
        let x = gaussian(&elements[flat / elements.len()])?;
        let y = gaussian(&elements[flat % elements.len()])?;
        if let Some((re, im)) = gaussian_mul(x, y) {
            if let (Ok(re), Ok(im)) = (i64::try_from(re), i64::try_from(im)) {
                products.push(LatticeVector::new(vec![re, im]));
            }
        }
        flat += stride;
    }
    products.sort_unstable();
    products.dedup();

    let mut samples = Vec::with_capacity(products.len());
    let mut max_exponent = 0f64;
    for m in products {
        let r2 = r2_count(&m, &elements)?;
        let exponent = if r2 <= 1 { 0.0 } else { (r2 as f64).ln() * scale };
        max_exponent = max_exponent.max(exponent);
        samples.push(R2Sample { m, r2, exponent });
    }
    Ok(R2ExponentReport {
        max_dim,
        samples,
        max_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from(coords)
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn gap_1d(gens: &[i64], dims: &[u64], symmetric: bool) -> Gap {
        let base = LatticeVector::zero(1);
        Gap::new(
            Ambient::Lattice(1),
            base,
            gens.iter().map(|&g| lv(&[g])).collect(),
            dims.to_vec(),
            symmetric,
        )
        .unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let q = Gap::new(
            Ambient::Lattice(2),
            LatticeVector::zero(2),
            vec![lv(&[1, 0])],
            vec![3],
            false,
        )
        .unwrap();
        assert_eq!(enumerate(&q, &caps()).unwrap().len(), 4);

        let q = Gap::symmetric(Ambient::Lattice(2), vec![lv(&[1, 0])], vec![3]).unwrap();
        assert_eq!(enumerate(&q, &caps()).unwrap().len(), 7);

        let q = gap_1d(&[1, 2], &[2, 1], false);
        assert_eq!(q.nominal_size(), BigUint::from(6u64));
        let pts = enumerate(&q, &caps()).unwrap();
        assert_eq!(pts.len(), 5); // 0,1,2,3,4 with 2 hit twice
    }

    #[test]
    fn proper_examples() {
        assert!(is_proper(&gap_1d(&[1, 3], &[1, 1], false), &caps()).unwrap());
        assert!(!is_proper(&gap_1d(&[1, 2], &[2, 1], false), &caps()).unwrap());
        assert!(is_proper(&gap_1d(&[], &[], false), &caps()).unwrap());
    }

    #[test]
    fn project_examples() {
        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[5, 7])],
            vec![2, 2, 1],
        )
        .unwrap();
        let all = project(&q, &[0, 1, 2]).unwrap();
        assert_eq!(enumerate(&all, &caps()).unwrap(), enumerate(&q, &caps()).unwrap());

        // leading pair and tail sub-progressions partition the generators
        let head = project(&q, &[0, 1]).unwrap();
        assert_eq!(head.rank(), 2);
        assert_eq!(head.dims(), &[2, 2]);
        let tail = project(&q, &[2]).unwrap();
        assert_eq!(tail.generators(), &[lv(&[5, 7])]);
        // the split covers the whole set: Q = head + tail pointwise
        let full = sumset(
            &enumerate(&head, &caps()).unwrap(),
            &enumerate(&tail, &caps()).unwrap(),
            &caps(),
        )
        .unwrap();
        assert_eq!(full, enumerate(&q, &caps()).unwrap());

        assert!(project(&q, &[3]).is_err());
    }

    #[test]
    fn projection_image_matches_coefficient_brute_force() {
        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[9, 11])],
            vec![2, 2, 1],
        )
        .unwrap();
        assert!(is_proper(&q, &caps()).unwrap());
        let keep = [0usize, 2];
        let projected = enumerate(&project(&q, &keep).unwrap(), &caps()).unwrap();
        let mut brute: Vec<LatticeVector> = coefficient_points(&q, &caps())
            .unwrap()
            .into_iter()
            .map(|(coeffs, _)| {
                let mut p = LatticeVector::zero(2);
                for &i in &keep {
                    p = p.add(&q.generators()[i].scale(coeffs[i]));
                }
                p
            })
            .collect();
        brute.sort_unstable();
        brute.dedup();
        assert_eq!(projected, brute);
    }

    #[test]
    fn projection_of_proper_symmetric_gap_is_no_larger() {
        // three seeded rank-3 instances, every index subset
        for (a, b, c) in [
            ([1i64, 0], [0i64, 1], [7i64, 9]),
            ([2, 1], [1, -1], [11, 5]),
            ([1, 2], [3, 1], [-9, 14]),
        ] {
            let q = Gap::symmetric(
                Ambient::Lattice(2),
                vec![lv(&a), lv(&b), lv(&c)],
                vec![2, 1, 1],
            )
            .unwrap();
            if !is_proper(&q, &caps()).unwrap() {
                continue;
            }
            let full = enumerate(&q, &caps()).unwrap().len();
            for keep in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]] {
                let sub = enumerate(&project(&q, &keep).unwrap(), &caps()).unwrap().len();
                assert!(sub <= full, "projection {keep:?} grew: {sub} > {full}");
            }
        }
    }

    #[test]
    fn sumset_examples() {
        let a = [lv(&[0]), lv(&[1])];
        let s = sumset(&a, &a, &caps()).unwrap();
        assert_eq!(s, vec![lv(&[0]), lv(&[1]), lv(&[2])]);
        assert!(s.len() <= a.len() * a.len());
    }

    #[test]
    fn r2_examples() {
        let xs = [lv(&[1, 0]), lv(&[2, 0]), lv(&[4, 0])];
        assert_eq!(r2_count(&lv(&[4, 0]), &xs).unwrap(), 3);
        assert_eq!(r2_count_oracle(&lv(&[4, 0]), &xs).unwrap(), 3);

        let xs = [lv(&[0, 1]), lv(&[0, -1])];
        assert_eq!(r2_count(&lv(&[1, 0]), &xs).unwrap(), 2);

        let xs = [lv(&[3, 0]), lv(&[5, 0])];
        assert_eq!(r2_count(&lv(&[7, 0]), &xs).unwrap(), 0);
    }

    #[test]
    fn conjugate_extension_contains_q_and_conjugates() {
        let q = Gap::new(
            Ambient::Gaussian,
            lv(&[2, 1]),
            vec![lv(&[1, 1]), lv(&[3, -2])],
            vec![2, 3],
            false,
        )
        .unwrap();
        let p = conjugate_extension(&q).unwrap();
        assert_eq!(p.rank(), 2 * q.rank() + 2);
        let p_elems: HashSet<LatticeVector> =
            enumerate(&p, &caps()).unwrap().into_iter().collect();
        for e in enumerate(&q, &caps()).unwrap() {
            assert!(p_elems.contains(&e));
            assert!(p_elems.contains(&conj(&e)));
        }
    }

    #[test]
    fn circle_examples() {
        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1])],
            vec![5, 5],
        )
        .unwrap();
        let origin = LatticeVector::zero(2);
        assert_eq!(circle_intersection_count(&q, &origin, 25, &caps()).unwrap().0, 12);
        assert_eq!(circle_intersection_count(&q, &origin, 1, &caps()).unwrap().0, 4);
        assert_eq!(circle_intersection_count(&q, &origin, 0, &caps()).unwrap().0, 1);
        let far = lv(&[100, 100]);
        assert_eq!(circle_intersection_count(&q, &far, 0, &caps()).unwrap().0, 0);
        assert!(circle_intersection_count(&q, &origin, -1, &caps()).is_err());
    }

    #[test]
    fn norm_class_examples() {
        // rank-1 progression with distinct norms: classes of size <= 2
        let q = Gap::symmetric(Ambient::Lattice(2), vec![lv(&[2, 3])], vec![6]).unwrap();
        let report = norm_class_report(&q, &LatticeVector::zero(2), &caps()).unwrap();
        assert!(report.classes.values().all(|&c| c <= 2));
        assert_eq!(report.max_class_size, 2);

        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1])],
            vec![3, 3],
        )
        .unwrap();
        let report = norm_class_report(&q, &LatticeVector::zero(2), &caps()).unwrap();
        let total: usize = report.classes.values().sum();
        assert_eq!(total, 49);
        for (&d2, &count) in &report.classes {
            if d2 != 0 {
                assert_eq!(count % 2, 0, "class {d2} should pair up");
            }
        }
        assert!(report.max_class_size <= total);
    }

    #[test]
    fn cover_fraction_examples() {
        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1])],
            vec![2, 2],
        )
        .unwrap();
        let inside = VectorSet::from_coords(2, &[&[1, 1], &[2, 0]], None).unwrap();
        assert_eq!(cover_fraction(&inside, &q, &caps()).unwrap(), Ratio::one());
        let outside = VectorSet::from_coords(2, &[&[9, 9], &[8, 8]], None).unwrap();
        assert_eq!(
            cover_fraction(&outside, &q, &caps()).unwrap(),
            Ratio::new(0, 1)
        );
        let half = VectorSet::from_coords(2, &[&[1, 1], &[8, 8]], None).unwrap();
        assert_eq!(cover_fraction(&half, &q, &caps()).unwrap(), Ratio::new(1, 2));
        let wrong_dim = VectorSet::from_coords(3, &[&[1, 1, 0]], None).unwrap();
        assert!(cover_fraction(&wrong_dim, &q, &caps()).is_err());
    }

    #[test]
    fn gap_json_round_trip() {
        let q = Gap::symmetric(
            Ambient::Lattice(2),
            vec![lv(&[1, 0]), lv(&[0, 1])],
            vec![2, 3],
        )
        .unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.contains("\"ambient\":2"));
        let back: Gap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);

        let text = r#"{
            "ambient": "gaussian",
            "base": [0, 0],
            "generators": [[1, 2]],
            "dims": [4],
            "symmetric": true
        }"#;
        let g: Gap = serde_json::from_str(text).unwrap();
        assert_eq!(g.ambient(), Ambient::Gaussian);
        assert!(g.is_symmetric_form());

        // symmetric with nonzero base must be rejected
        let bad = r#"{"ambient": 1, "base": [1], "generators": [[1]], "dims": [2], "symmetric": true}"#;
        assert!(serde_json::from_str::<Gap>(bad).is_err());
    }
}
