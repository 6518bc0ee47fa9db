//! Exact engines for the signed-sum distribution.
//!
//! All engines count, for each reachable point x, the number of sign
//! patterns with sum x; the full table always adds up to 2^n. Counts are
//! kept in machine words where the guards make that safe and widened to big
//! integers at the public boundary.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::vecset::{LatticeVector, VectorSet};

/// Gray-code enumeration of all 2^n sign patterns, updating the running sum
/// by one vector flip per step.
pub(super) fn naive_table(set: &VectorSet, caps: &Caps) -> Result<HashMap<LatticeVector, u64>> {
    let n = set.len();
    guard_patterns("naive", n, caps.naive_patterns)?;
    let mut table: HashMap<LatticeVector, u64> = HashMap::new();
    let doubled: Vec<LatticeVector> = set.iter().map(|v| v.scale(2)).collect();
    // start with every sign at -1
    let mut sum = set.vector_sum().neg();
    let total: u64 = 1 << n;
    *table.entry(sum.clone()).or_insert(0) += 1;
    for i in 1..total {
        let flip = i.trailing_zeros() as usize;
        let now_plus = (i ^ (i >> 1)) >> flip & 1 == 1;
        sum = if now_plus {
            sum.add(&doubled[flip])
        } else {
            sum.sub(&doubled[flip])
        };
        *table.entry(sum.clone()).or_insert(0) += 1;
    }
    Ok(table)
}

/// Point query without any table: walk the Gray code and count matches.
pub(super) fn naive_count_at(set: &VectorSet, x: &LatticeVector, caps: &Caps) -> Result<u64> {
    let n = set.len();
    guard_patterns("naive", n, caps.naive_patterns)?;
    let doubled: Vec<LatticeVector> = set.iter().map(|v| v.scale(2)).collect();
    let mut sum = set.vector_sum().neg();
    let total: u64 = 1 << n;
    let mut hits = u64::from(&sum == x);
    for i in 1..total {
        let flip = i.trailing_zeros() as usize;
        let now_plus = (i ^ (i >> 1)) >> flip & 1 == 1;
        sum = if now_plus {
            sum.add(&doubled[flip])
        } else {
            sum.sub(&doubled[flip])
        };
        hits += u64::from(&sum == x);
    }
    Ok(hits)
}

fn guard_patterns(op: &str, n: usize, cap: u64) -> Result<()> {
    let estimate = (n as u32)
        .try_into()
        .ok()
        .and_then(|n: u32| 1u128.checked_shl(n))
        .unwrap_or(u128::MAX);
    if n >= 64 || estimate > cap as u128 {
        return Err(Error::guard(op, estimate, cap as u128, "sign patterns"));
    }
    Ok(())
}

fn subset(set: &VectorSet, range: std::ops::Range<usize>) -> VectorSet {
    VectorSet::new(
        set.dim(),
        set.vectors()[range].to_vec(),
        set.scale2(),
    )
    .expect("subset of a valid set is valid")
}

/// The two meet-in-the-middle half tables, over the first ceil(n/2) and the
/// remaining floor(n/2) vectors.
pub(super) fn mitm_halves(
    set: &VectorSet,
    caps: &Caps,
) -> Result<(HashMap<LatticeVector, u64>, HashMap<LatticeVector, u64>)> {
    let n = set.len();
    let left = n.div_ceil(2);
    guard_patterns("mitm half tables", left, caps.mitm_half_entries)?;
    let half_caps = Caps {
        naive_patterns: caps.mitm_half_entries,
        ..caps.clone()
    };
    let a = naive_table(&subset(set, 0..left), &half_caps)?;
    let b = naive_table(&subset(set, left..n), &half_caps)?;
    Ok((a, b))
}

/// Full table by convolving the two halves.
pub(super) fn mitm_table(set: &VectorSet, caps: &Caps) -> Result<HashMap<LatticeVector, u128>> {
    let (a, b) = mitm_halves(set, caps)?;
    let pairs = (a.len() as u128) * (b.len() as u128);
    if pairs > caps.convolution_pairs as u128 {
        return Err(Error::guard(
            "mitm full table",
            pairs,
            caps.convolution_pairs as u128,
            "half-table pair products",
        ));
    }
    let mut table: HashMap<LatticeVector, u128> = HashMap::with_capacity(a.len().max(b.len()));
    for (pa, ca) in &a {
        for (pb, cb) in &b {
            *table.entry(pa.add(pb)).or_insert(0) += (*ca as u128) * (*cb as u128);
        }
    }
    Ok(table)
}

/// Point query: streams the smaller half table against the larger one.
pub(super) fn mitm_count_at(set: &VectorSet, x: &LatticeVector, caps: &Caps) -> Result<u128> {
    let (a, b) = mitm_halves(set, caps)?;
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    let mut count: u128 = 0;
    for (p, c) in small {
        if let Some(cl) = large.get(&x.sub(p)) {
            count += (*c as u128) * (*cl as u128);
        }
    }
    Ok(count)
}

/// Product over coordinates of the reachable-sum range, as a state-count
/// upper bound for the dynamic program.
fn box_states(set: &VectorSet) -> u128 {
    let mut product: u128 = 1;
    for c in 0..set.dim() {
        let spread: u128 = set
            .iter()
            .map(|v| v.coords()[c].unsigned_abs() as u128)
            .sum();
        product = product.saturating_mul(2 * spread + 1);
    }
    product
}

/// Folds vectors one at a time over a hash-keyed table. Counts are generic
/// so the same fold serves u128 (n <= 119) and BigUint (larger n).
fn dp_fold<C>(set: &VectorSet, caps: &Caps) -> Result<HashMap<LatticeVector, C>>
where
    C: Clone + Zero + std::ops::AddAssign<C> + From<u64>,
{
    let n = set.len();
    let estimate = if n < 64 {
        (1u128 << n).min(box_states(set))
    } else {
        box_states(set)
    };
    if estimate > caps.dp_states as u128 {
        return Err(Error::guard(
            "sparse_dp",
            estimate,
            caps.dp_states as u128,
            "states",
        ));
    }
    let mut table: HashMap<LatticeVector, C> = HashMap::new();
    table.insert(LatticeVector::zero(set.dim()), C::from(1u64));
    for v in set.iter() {
        let mut next: HashMap<LatticeVector, C> = HashMap::with_capacity(table.len() * 2);
        for (p, c) in &table {
            for q in [p.add(v), p.sub(v)] {
                match next.get_mut(&q) {
                    Some(slot) => *slot += c.clone(),
                    None => {
                        next.insert(q, c.clone());
                    }
                }
            }
        }
        if next.len() as u128 > caps.dp_states as u128 {
            return Err(Error::guard(
                "sparse_dp",
                next.len() as u128,
                caps.dp_states as u128,
                "states",
            ));
        }
        table = next;
    }
    Ok(table)
}

pub(super) fn dp_table(set: &VectorSet, caps: &Caps) -> Result<HashMap<LatticeVector, BigUint>> {
    if set.len() <= 119 {
        let t = dp_fold::<u128>(set, caps)?;
        Ok(t.into_iter().map(|(p, c)| (p, BigUint::from(c))).collect())
    } else {
        dp_fold::<BigUint>(set, caps)
    }
}

/// Argmax over the full meet-in-the-middle convolution without materializing
/// it: the output plane is swept in windows of dense columns (d <= 2), so
/// memory stays bounded by `caps.slab_cells` while every pair product is
/// still enumerated exactly.
pub(super) fn mitm_argmax_windowed(
    set: &VectorSet,
    caps: &Caps,
) -> Result<(LatticeVector, u128)> {
    let d = set.dim();
    assert!(d <= 2, "windowed argmax only supports d <= 2");
    let (a, b) = mitm_halves(set, caps)?;
    let mut a: Vec<(Vec<i64>, u64)> = a
        .into_iter()
        .map(|(p, c)| (p.coords().to_vec(), c))
        .collect();
    a.sort_unstable();
    let mut b: Vec<(Vec<i64>, u64)> = b
        .into_iter()
        .map(|(p, c)| (p.coords().to_vec(), c))
        .collect();
    b.sort_unstable();

    let spread = |c: usize| -> i64 {
        set.iter().map(|v| v.coords()[c].abs()).sum()
    };
    let x_spread = spread(0);
    let (y_spread, height) = if d == 2 {
        let s = spread(1);
        (s, (2 * s + 1) as usize)
    } else {
        (0, 1usize)
    };
    let width = ((caps.slab_cells as usize) / height).max(1);

    let mut counts: Vec<u64> = vec![0; width * height];
    let mut epochs: Vec<u32> = vec![0; width * height];
    let mut epoch: u32 = 0;

    let mut best_count: u64 = 0;
    let mut best_point: Option<Vec<i64>> = None;

    let mut x0 = -x_spread;
    while x0 <= x_spread {
        let x1 = (x0 + width as i64 - 1).min(x_spread); // inclusive window
        epoch += 1;
        for (pa, ca) in &a {
            let ax = pa[0];
            // b rows with ax + bx in [x0, x1]
            let lo = b.partition_point(|(pb, _)| pb[0] < x0 - ax);
            let hi = b.partition_point(|(pb, _)| pb[0] <= x1 - ax);
            for (pb, cb) in &b[lo..hi] {
                let sx = ax + pb[0];
                let (sy, row) = if d == 2 {
                    let sy = pa[1] + pb[1];
                    (sy, (sy + y_spread) as usize)
                } else {
                    (0, 0)
                };
                let idx = ((sx - x0) as usize) * height + row;
                if epochs[idx] != epoch {
                    epochs[idx] = epoch;
                    counts[idx] = 0;
                }
                counts[idx] += ca * cb;
                let c = counts[idx];
                if c > best_count {
                    best_count = c;
                    best_point = Some(if d == 2 { vec![sx, sy] } else { vec![sx] });
                } else if c == best_count {
                    let cand = if d == 2 { vec![sx, sy] } else { vec![sx] };
                    if best_point.as_ref().is_none_or(|bp| cand < *bp) {
                        best_point = Some(cand);
                    }
                }
            }
        }
        x0 = x1 + 1;
    }

    let point = best_point.ok_or_else(|| Error::precondition("empty distribution"))?;
    Ok((LatticeVector::new(point), best_count as u128))
}
