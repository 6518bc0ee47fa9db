//! Generators for the extremal and baseline vector families: lattice points
//! on spheres, rich-circle moduli, seeded generic sets, and repeated-basis
//! multisets.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::vecset::{LatticeVector, VectorSet};

/// All integer vectors of squared norm N in dimension d, each exactly once,
/// in lexicographic order, with `scale2 = N`.
///
/// Recursive coordinate search pruned by the square root of the remaining
/// norm budget.
pub fn sum_of_squares_points(n: u64, d: usize, caps: &Caps) -> Result<VectorSet> {
    if n == 0 {
        return Err(Error::precondition("target squared norm must be positive"));
    }
    if d < 2 {
        return Err(Error::precondition("dimension must be at least 2"));
    }
    let root = n.sqrt();
    let nodes = (2 * root + 1)
        .checked_pow(d as u32 - 1)
        .unwrap_or(u64::MAX);
    if nodes > caps.sos_nodes {
        return Err(Error::guard(
            "sum_of_squares_points",
            nodes as u128,
            caps.sos_nodes as u128,
            "search nodes",
        ));
    }

    let mut out: Vec<LatticeVector> = Vec::new();
    let mut coords = vec![0i64; d];
    fn search(
        axis: usize,
        remaining: u64,
        coords: &mut Vec<i64>,
        out: &mut Vec<LatticeVector>,
    ) {
        if axis + 1 == coords.len() {
            let r = remaining.sqrt();
            if r * r == remaining {
                if r == 0 {
                    coords[axis] = 0;
                    out.push(LatticeVector::new(coords.clone()));
                } else {
                    coords[axis] = -(r as i64);
                    out.push(LatticeVector::new(coords.clone()));
                    coords[axis] = r as i64;
                    out.push(LatticeVector::new(coords.clone()));
                }
            }
            return;
        }
        let bound = remaining.sqrt() as i64;
        for c in -bound..=bound {
            coords[axis] = c;
            search(axis + 1, remaining - (c * c) as u64, coords, out);
        }
    }
    search(0, n, &mut coords, &mut out);
    // the one non-lexicographic artifact of the search is the +-r ordering
    // in the last axis
    out.sort_unstable();
    VectorSet::new(d, out, Some(n as i64))
}

/// Number of representations of n as an ordered sum of two squares,
/// by direct double loop. Independent of `sum_of_squares_points`.
pub fn two_squares_count_oracle(n: u64) -> u64 {
    let root = n.sqrt() as i64;
    let mut count = 0;
    for x in -root..=root {
        let rest = n as i64 - x * x;
        if rest < 0 {
            continue;
        }
        let y = (rest as u64).sqrt() as i64;
        if y * y == rest {
            count += if y == 0 { 1 } else { 2 };
        }
    }
    count
}

/// Divisor sum sigma(n) by trial division.
pub fn divisor_sum(n: u64) -> u64 {
    let mut sum = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            sum += d;
            if d != n / d {
                sum += n / d;
            }
        }
        d += 1;
    }
    sum
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Product of the first k primes congruent to 1 mod 4. Squarefree by
/// construction, so the circle of squared radius N carries 4 * 2^k lattice
/// points; callers cross-check that by enumeration rather than assuming it.
pub fn rich_circle_modulus(k: u32, caps: &Caps) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::precondition("k must be at least 1"));
    }
    let mut product = BigUint::one();
    let mut found = 0;
    let mut candidate: u64 = 5;
    while found < k {
        if candidate % 4 == 1 && is_prime(candidate) {
            product *= candidate;
            found += 1;
            if product.bits() > caps.modulus_bits {
                return Err(Error::guard(
                    "rich_circle_modulus",
                    product.bits() as u128,
                    caps.modulus_bits as u128,
                    "modulus bits",
                ));
            }
        }
        candidate += 4;
    }
    Ok(product)
}

/// n distinct seeded random integer vectors with coordinates in
/// [-norm_bound, norm_bound].
pub fn generic_set(n: usize, d: usize, seed: u64, norm_bound: i64) -> Result<VectorSet> {
    if d == 0 {
        return Err(Error::precondition("dimension must be at least 1"));
    }
    if norm_bound < 0 {
        return Err(Error::precondition("norm bound must be nonnegative"));
    }
    let candidates = (2u128 * norm_bound as u128 + 1)
        .checked_pow(d as u32)
        .unwrap_or(u128::MAX);
    if (n as u128) > candidates {
        return Err(Error::precondition(format!(
            "cannot draw {n} distinct vectors from {candidates} lattice points"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<LatticeVector> = HashSet::with_capacity(n);
    let mut out: Vec<LatticeVector> = Vec::with_capacity(n);
    // rejection sampling; the distinctness precondition guarantees progress,
    // and candidates >= n keeps the expected retry count modest at desk scale
    while out.len() < n {
        let v = LatticeVector::new(
            (0..d)
                .map(|_| rng.gen_range(-norm_bound..=norm_bound))
                .collect::<Vec<i64>>(),
        );
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    VectorSet::new(d, out, None)
}

/// Each standard basis vector of Z^d repeated m times: n = d*m, one length
/// class, multiplicity exactly m.
pub fn polya_multiset(d: usize, m: usize) -> Result<VectorSet> {
    if d == 0 || m == 0 {
        return Err(Error::precondition("dimension and multiplicity must be at least 1"));
    }
    let mut vectors = Vec::with_capacity(d * m);
    for axis in 0..d {
        let mut coords = vec![0i64; d];
        coords[axis] = 1;
        let v = LatticeVector::new(coords);
        for _ in 0..m {
            vectors.push(v.clone());
        }
    }
    VectorSet::new(d, vectors, Some(1))
}
