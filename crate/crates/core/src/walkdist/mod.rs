//! Distribution of the signed sum S = eta_1 v_1 + ... + eta_n v_n over
//! uniform independent signs eta_i = +-1: exact engines, the torus
//! quadrature engine, Monte Carlo estimation, the concentration probability
//! rho, and the grid-walk return-probability baseline.

mod engines;

use std::collections::HashMap;
use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::vecset::{LatticeVector, VectorSet};

/// Which exact engine computes a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Naive,
    Mitm,
    SparseDp,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Naive => "naive",
            Engine::Mitm => "mitm",
            Engine::SparseDp => "sparse_dp",
        }
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Engine::Naive),
            "mitm" => Ok(Engine::Mitm),
            "sparse_dp" | "sparse-dp" => Ok(Engine::SparseDp),
            other => Err(Error::precondition(format!(
                "invalid engine {other:?} (expected naive|mitm|sparse_dp)"
            ))),
        }
    }
}

/// Exact law of the signed sum: big-integer pattern counts per reachable
/// point, totalling 2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSumDistribution {
    n: usize,
    dim: usize,
    table: HashMap<LatticeVector, BigUint>,
}

impl SignedSumDistribution {
    fn from_counts<C: Into<BigUint>>(
        n: usize,
        dim: usize,
        counts: impl IntoIterator<Item = (LatticeVector, C)>,
    ) -> Self {
        SignedSumDistribution {
            n,
            dim,
            table: counts.into_iter().map(|(p, c)| (p, c.into())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &HashMap<LatticeVector, BigUint> {
        &self.table
    }

    pub fn total(&self) -> BigUint {
        BigUint::one() << self.n
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    pub fn count_at(&self, x: &LatticeVector) -> BigUint {
        self.table.get(x).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn prob_at(&self, x: &LatticeVector) -> Ratio<BigInt> {
        count_over_power_of_two(&self.count_at(x), self.n)
    }

    /// Maximal count and its point, ties broken by lexicographically
    /// smallest point. None only for an empty table (impossible for any
    /// engine output, which always carries at least the n=0 origin entry).
    pub fn argmax(&self) -> Option<(LatticeVector, BigUint)> {
        self.table
            .iter()
            .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then_with(|| pb.cmp(pa)))
            .map(|(p, c)| (p.clone(), c.clone()))
    }

    /// Entries sorted lexicographically by point.
    pub fn iter_sorted(&self) -> Vec<(LatticeVector, BigUint)> {
        let mut rows: Vec<_> = self
            .table
            .iter()
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        rows.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        rows
    }

    /// CSV export: `x0,..,x{d-1},count,log2_prob,prob` with rows sorted
    /// lexicographically by point and probabilities as exact num/den
    /// strings.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for c in 0..self.dim {
            write!(out, "x{c},")?;
        }
        writeln!(out, "count,log2_prob,prob")?;
        for (p, count) in self.iter_sorted() {
            for c in p.coords() {
                write!(out, "{c},")?;
            }
            let log2 = log2_biguint(&count) - self.n as f64;
            let prob = count_over_power_of_two(&count, self.n);
            writeln!(out, "{count},{log2},{}/{}", prob.numer(), prob.denom())?;
        }
        Ok(())
    }
}

/// count / 2^n as an exact reduced rational.
pub fn count_over_power_of_two(count: &BigUint, n: usize) -> Ratio<BigInt> {
    Ratio::new(BigInt::from(count.clone()), BigInt::one() << n)
}

/// log2 of a positive big integer with f64 accuracy; -inf for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(53);
    let top = (x >> shift).to_f64().expect("<= 53 bits");
    top.log2() + shift as f64
}

/// f64 value of a big rational, robust to numerator/denominator far outside
/// the f64 range.
pub fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let sign = if r.numer().sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let ns = num.bits().saturating_sub(64);
    let ds = den.bits().saturating_sub(64);
    let n = (num >> ns).to_f64().expect("<= 64 bits");
    let d = (den >> ds).to_f64().expect("<= 64 bits");
    sign * (n / d) * 2f64.powi(ns as i32 - ds as i32)
}

/// Exact distribution of the signed sum by the chosen engine.
pub fn exact_distribution(
    set: &VectorSet,
    engine: Engine,
    caps: &Caps,
) -> Result<SignedSumDistribution> {
    let (n, dim) = (set.len(), set.dim());
    Ok(match engine {
        Engine::Naive => {
            SignedSumDistribution::from_counts(n, dim, engines::naive_table(set, caps)?)
        }
        Engine::Mitm => {
            SignedSumDistribution::from_counts(n, dim, engines::mitm_table(set, caps)?)
        }
        Engine::SparseDp => {
            SignedSumDistribution::from_counts(n, dim, engines::dp_table(set, caps)?)
        }
    })
}

fn check_target_dim(set: &VectorSet, x: &LatticeVector) -> Result<()> {
    if x.dim() != set.dim() {
        return Err(Error::precondition(format!(
            "target {x} has dimension {} but the set is {}-dimensional",
            x.dim(),
            set.dim()
        )));
    }
    Ok(())
}

/// P(S = x) as an exact rational (0 if unreachable).
pub fn prob_at(
    set: &VectorSet,
    x: &LatticeVector,
    engine: Engine,
    caps: &Caps,
) -> Result<Ratio<BigInt>> {
    check_target_dim(set, x)?;
    let count: BigUint = match engine {
        Engine::Naive => engines::naive_count_at(set, x, caps)?.into(),
        Engine::Mitm => engines::mitm_count_at(set, x, caps)?.into(),
        Engine::SparseDp => engines::dp_table(set, caps)?
            .remove(x)
            .unwrap_or_else(BigUint::zero),
    };
    Ok(count_over_power_of_two(&count, set.len()))
}

/// Concentration probability rho = sup_x P(S = x) with its argmax, ties
/// broken by lexicographically smallest point.
///
/// The meet-in-the-middle engine falls back to a memory-bounded windowed
/// sweep of the convolution in d <= 2 when the full table would exceed the
/// pair-product cap.
pub fn rho(
    set: &VectorSet,
    engine: Engine,
    caps: &Caps,
) -> Result<(LatticeVector, Ratio<BigInt>)> {
    if engine == Engine::Mitm {
        let n = set.len();
        // |A| * |B| <= 2^n in the worst case
        let worst_pairs = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if worst_pairs > caps.convolution_pairs as u128 && set.dim() <= 2 {
            let (point, count) = engines::mitm_argmax_windowed(set, caps)?;
            let value = count_over_power_of_two(&BigUint::from(count), n);
            return Ok((point, value));
        }
    }
    let dist = exact_distribution(set, engine, caps)?;
    let (point, count) = dist.argmax().expect("distribution is never empty");
    Ok((point, count_over_power_of_two(&count, set.len())))
}

/// Torus quadrature result: an exact identity evaluated in floating point,
/// with a rigorous accumulation bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FourierProb {
    pub value: f64,
    pub error_bound: f64,
    pub grid_side: u64,
}

#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// P(S = x) by the finite torus analogue of the characteristic-function
/// identity: with M > 2 * sum_j ||v_j||_inf the uniform grid [0,M)^d is
/// alias-free, so
///
///   P(S = x) = M^-d * sum_k cos(2 pi (x.k)/M) * prod_j cos(2 pi (v_j.k)/M)
///
/// holds exactly; only the floating-point evaluation is approximate, and the
/// returned bound covers that accumulation error for any worker count.
pub fn exact_prob_fourier(
    set: &VectorSet,
    x: &LatticeVector,
    caps: &Caps,
) -> Result<FourierProb> {
    check_target_dim(set, x)?;
    let d = set.dim();
    let n = set.len();
    let inf_sum: i64 = set
        .iter()
        .map(|v| v.coords().iter().map(|c| c.abs()).max().unwrap_or(0))
        .sum();
    let m = (2 * inf_sum + 1) as u64;

    if x.coords().iter().any(|&c| c.abs() > inf_sum) {
        // unreachable target: exactly zero, no quadrature needed
        return Ok(FourierProb {
            value: 0.0,
            error_bound: 0.0,
            grid_side: m,
        });
    }

    let grid_points = (m as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let products = grid_points.saturating_mul(n.max(1) as u128);
    if products > caps.fourier_products as u128 || m > (1 << 26) {
        return Err(Error::guard(
            format!("exact_prob_fourier (alias-free grid side M = {m})"),
            products,
            caps.fourier_products as u128,
            "grid-point * vector products",
        ));
    }

    // cos(2 pi r / M) table, mirrored so symmetric residues agree bitwise
    let mut cos_table = vec![0f64; m as usize];
    for r in 0..=(m / 2) {
        let c = (2.0 * std::f64::consts::PI * r as f64 / m as f64).cos();
        cos_table[r as usize] = c;
        if r != 0 {
            cos_table[(m - r) as usize] = c;
        }
    }

    let vmod: Vec<Vec<u64>> = set
        .iter()
        .map(|v| v.coords().iter().map(|&c| c.rem_euclid(m as i64) as u64).collect())
        .collect();
    let xmod: Vec<u64> = x
        .coords()
        .iter()
        .map(|&c| c.rem_euclid(m as i64) as u64)
        .collect();

    // fixed chunking of the outermost axis keeps the reduction order
    // independent of the worker count
    let inner_points: u128 = (m as u128).pow(d.saturating_sub(1) as u32);
    let rows_per_chunk: u64 = ((65_536 / inner_points.max(1)) as u64).clamp(1, m);
    let chunks: Vec<u64> = (0..m).step_by(rows_per_chunk as usize).collect();

    let partials: Vec<(f64, f64)> = chunks
        .par_iter()
        .map(|&row0| {
            let row1 = (row0 + rows_per_chunk).min(m);
            let mut res: Vec<u64> = vmod
                .iter()
                .map(|vm| ((vm[d - 1] as u128 * row0 as u128) % m as u128) as u64)
                .collect();
            let mut resx: u64 = ((xmod[d - 1] as u128 * row0 as u128) % m as u128) as u64;
            let mut k = vec![0u64; d];
            k[d - 1] = row0;
            let count = inner_points * (row1 - row0) as u128;
            let mut sum = Kahan::default();
            let mut abs = Kahan::default();
            for _ in 0..count {
                let mut term = 1.0f64;
                for &r in &res {
                    term *= cos_table[r as usize];
                }
                let weighted = cos_table[resx as usize] * term;
                sum.add(weighted);
                abs.add(weighted.abs());
                // odometer tick; adding the axis residue also accounts for
                // the wraparound since -(M-1) = 1 (mod M)
                let mut axis = 0;
                loop {
                    for (r, vm) in res.iter_mut().zip(&vmod) {
                        *r += vm[axis];
                        if *r >= m {
                            *r -= m;
                        }
                    }
                    resx += xmod[axis];
                    if resx >= m {
                        resx -= m;
                    }
                    k[axis] += 1;
                    if axis == d - 1 || k[axis] < m {
                        break;
                    }
                    k[axis] = 0;
                    axis += 1;
                }
            }
            (sum.sum, abs.sum)
        })
        .collect();

    let mut sum = Kahan::default();
    let mut abs = Kahan::default();
    for (s, a) in partials {
        sum.add(s);
        abs.add(a);
    }
    let scale = (m as f64).powi(d as i32);
    let eps = f64::EPSILON;
    let bound = eps * (3.0 * n as f64 + 8.0) * (abs.sum / scale) + 1e-300;
    Ok(FourierProb {
        value: sum.sum / scale,
        error_bound: bound,
        grid_side: m,
    })
}

/// Monte Carlo estimate of P(S = x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based random word: sample streams depend only on (seed, index),
/// so any parallel split of the sample range reproduces the same estimate.
fn stream_word(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Unbiased frequency estimate of P(S = x) from `samples` seeded draws.
pub fn mc_estimate(
    set: &VectorSet,
    x: &LatticeVector,
    samples: u64,
    seed: u64,
    caps: &Caps,
) -> Result<MCEstimate> {
    let _ = caps;
    check_target_dim(set, x)?;
    if samples == 0 {
        return Err(Error::precondition("samples must be at least 1"));
    }
    let n = set.len();
    let words_per_sample = n.div_ceil(64).max(1) as u64;
    let doubled: Vec<LatticeVector> = set.iter().map(|v| v.scale(2)).collect();
    let base = set.vector_sum().neg();

    const CHUNK: u64 = 1 << 16;
    let chunk_ids: Vec<u64> = (0..samples.div_ceil(CHUNK)).collect();
    let hits: u64 = chunk_ids
        .par_iter()
        .map(|&chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(samples);
            let mut hits = 0u64;
            for i in lo..hi {
                let mut sum = base.clone();
                for w in 0..words_per_sample {
                    let bits = stream_word(seed, i * words_per_sample + w);
                    let hi_bit = (n as u64 - w * 64).min(64);
                    for b in 0..hi_bit {
                        if bits >> b & 1 == 1 {
                            sum = sum.add(&doubled[(w * 64 + b) as usize]);
                        }
                    }
                }
                hits += u64::from(&sum == x);
            }
            hits
        })
        .sum();

    let p_hat = hits as f64 / samples as f64;
    let stderr = (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
    Ok(MCEstimate {
        p_hat,
        stderr,
        samples,
        seed,
    })
}

fn factorials(n: u64) -> Vec<BigUint> {
    let mut f = Vec::with_capacity(n as usize + 1);
    f.push(BigUint::one());
    for i in 1..=n {
        let prev = f.last().expect("nonempty").clone();
        f.push(prev * i);
    }
    f
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exact return probability at step n of the grid walk whose steps are
/// uniform over the 2d signed basis vectors, via the multinomial identity
///
///   P(S_n = 0) = (2d)^-n * sum_{k_1+..+k_d = n, k_i even}
///                  n!/(k_1!..k_d!) * prod_i C(k_i, k_i/2).
pub fn polya_return_prob(d: u32, n: u64, caps: &Caps) -> Result<Ratio<BigInt>> {
    if d == 0 {
        return Err(Error::precondition("dimension must be at least 1"));
    }
    if n % 2 == 1 {
        return Ok(Ratio::zero());
    }
    let terms = binomial_u128((n / 2 + d as u64 - 1) as u128, (d as u64 - 1) as u128);
    if terms > caps.polya_terms as u128 {
        return Err(Error::guard(
            "polya_return_prob",
            terms,
            caps.polya_terms as u128,
            "multinomial terms",
        ));
    }
    let fact = factorials(n);
    let mut numerator = BigUint::zero();
    // walk all compositions of n into d even parts
    let mut parts = vec![0u64; d as usize];
    fn recurse(
        axis: usize,
        remaining: u64,
        parts: &mut Vec<u64>,
        fact: &[BigUint],
        acc: &mut BigUint,
    ) {
        if axis + 1 == parts.len() {
            parts[axis] = remaining;
            let mut term = fact[fact.len() - 1].clone();
            for &k in parts.iter() {
                term /= &fact[k as usize];
                // C(k, k/2)
                term *= &fact[k as usize];
                term /= &fact[(k / 2) as usize];
                term /= &fact[(k / 2) as usize];
            }
            *acc += term;
            return;
        }
        let mut k = 0;
        while k <= remaining {
            parts[axis] = k;
            recurse(axis + 1, remaining - k, parts, fact, acc);
            k += 2;
        }
    }
    recurse(0, n, &mut parts, &fact, &mut numerator);
    let denom = BigUint::from(2u64 * d as u64).pow(n as u32);
    Ok(Ratio::new(BigInt::from(numerator), BigInt::from(denom)))
}

/// Parity class of reachable sums: every key x of the table satisfies
/// x = sum(v_i) coordinatewise mod 2.
pub fn parity_compatible(set: &VectorSet, x: &LatticeVector) -> bool {
    let sigma = set.vector_sum();
    x.coords()
        .iter()
        .zip(sigma.coords())
        .all(|(&a, &b)| (a - b).is_multiple_of(&2))
}
