//! Exact-arithmetic laboratory for random walks with distinct step
//! directions.
//!
//! The crate computes the law of the signed sum S = eta_1 v_1 + ... +
//! eta_n v_n of an integer vector multiset exactly (several engines plus a
//! torus quadrature identity and Monte Carlo), profiles vector sets
//! (length classes, hyperplane richness), generates the extremal families
//! (lattice points on spheres, rich circles, generic sets, repeated-basis
//! multisets), provides generalized-arithmetic-progression machinery
//! (enumeration, properness, projections, sumsets, representation counts,
//! conjugate extension), and explores sphere-point incidence questions in
//! Z^3. Everything is deterministic: exact results are bit-identical across
//! reruns and worker counts, floating-point engines carry explicit error
//! bounds.
//!
//! Module map:
//! - [`vecset`]: lattice vectors, vector multisets, typicality profiles,
//!   hyperplane richness.
//! - [`walkdist`]: signed-sum distributions, rho, torus quadrature, Monte
//!   Carlo, grid-walk baseline.
//! - [`constructions`]: sphere/rich-circle/generic/multiset families.
//! - [`gaplab`]: generalized arithmetic progressions.
//! - [`incidence`]: plane richness vs sumset growth reports in Z^3.
//! - [`scaling`]: log-log exponent fits and the exact bound calculator.
//! - [`scan`]: batch experiment runner with CSV output.

pub mod caps;
pub mod constructions;
pub mod error;
pub mod gaplab;
pub mod incidence;
mod linalg;
pub mod scaling;
pub mod scan;
pub mod vecset;
pub mod walkdist;

pub use caps::Caps;
pub use error::{Error, Result};
pub use vecset::{LatticeVector, VectorSet};
