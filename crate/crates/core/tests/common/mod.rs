//! Shared seeded instance generators for the integration suites.

#![allow(dead_code)]

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use walklab::caps::Caps;
use walklab::gaplab::{is_proper, Ambient, Gap};
use walklab::vecset::{LatticeVector, VectorSet};

/// Randomized engine-equivalence instances: d in 1..=4, n <= 20,
/// coordinates <= 10^3, sized so the torus quadrature grid stays affordable
/// in every dimension. Duplicates are allowed, so multiplicities occur.
pub fn engine_equivalence_instances(count: usize) -> Vec<VectorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FF_EE00);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let d = 1 + i % 4;
        let (max_n, bound) = match d {
            1 => (20, 1000i64),
            2 => (16, 100),
            3 => (12, 10),
            _ => (10, 4),
        };
        let n = rng.gen_range(1..=max_n);
        let vectors: Vec<LatticeVector> = (0..n)
            .map(|_| {
                LatticeVector::new(
                    (0..d)
                        .map(|_| rng.gen_range(-bound..=bound))
                        .collect::<Vec<i64>>(),
                )
            })
            .collect();
        out.push(VectorSet::new(d, vectors, None).expect("valid instance"));
    }
    out
}

/// Seeded origin-symmetric sets W plus -W with n = 2m <= 20.
pub fn symmetric_instances(count: usize) -> Vec<VectorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_5EED);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let d = 1 + i % 3;
        let m = rng.gen_range(1..=10);
        let mut vectors = Vec::with_capacity(2 * m);
        for _ in 0..m {
            let v = LatticeVector::new(
                (0..d)
                    .map(|_| rng.gen_range(-50i64..=50))
                    .collect::<Vec<i64>>(),
            );
            vectors.push(v.neg());
            vectors.push(v);
        }
        out.push(VectorSet::new(d, vectors, None).expect("valid instance"));
    }
    out
}

/// Deterministic proper symmetric progression in Z^2 of the given rank:
/// small near generators plus one spread-out generator, resampled until the
/// enumeration-based properness check passes.
pub fn seeded_proper_symmetric_gap(seed: u64, rank: usize) -> Gap {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut generators = Vec::with_capacity(rank);
        let mut dims = Vec::with_capacity(rank);
        for i in 0..rank {
            let spread = if i + 1 == rank { 60 } else { 9 };
            let g = loop {
                let g = [
                    rng.gen_range(-spread..=spread),
                    rng.gen_range(-spread..=spread),
                ];
                if g != [0, 0] {
                    break g;
                }
            };
            generators.push(LatticeVector::new(g.to_vec()));
            dims.push(rng.gen_range(1..=4u64));
        }
        let q = Gap::symmetric(Ambient::Lattice(2), generators, dims).unwrap();
        if q.nominal_size() <= BigUint::from(800u64) && is_proper(&q, &caps).unwrap() {
            return q;
        }
    }
}
