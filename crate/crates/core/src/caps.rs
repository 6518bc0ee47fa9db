//! Resource caps for every enumeration-style engine in the crate.
//!
//! All exact engines are guarded: an operation whose estimated cost exceeds
//! the relevant cap fails with [`crate::Error::ResourceGuard`] instead of
//! silently grinding or exhausting memory. Defaults are sized for desk-scale
//! experiments; the CLI can select a profile via `WALKLAB_CAP_PROFILE`
//! (`small` | `default` | `big`) and override individual fields.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Max number of sign patterns the naive engine will enumerate (2^n).
    pub naive_patterns: u64,
    /// Max entries per half-table in the meet-in-the-middle engine (2^(n/2)).
    pub mitm_half_entries: u64,
    /// Max half-table pair products evaluated when meet-in-the-middle
    /// materializes a full distribution.
    pub convolution_pairs: u64,
    /// Max live states in the sparse dynamic-programming engine.
    pub dp_states: u64,
    /// Max dense cells held at once by the windowed meet-in-the-middle
    /// argmax scan (d <= 2).
    pub slab_cells: u64,
    /// Max grid-point * vector products in the torus quadrature engine.
    pub fourier_products: u64,
    /// Max terms in the grid-walk return-probability multinomial sum.
    pub polya_terms: u64,
    /// Max nodes explored by the sum-of-squares coordinate search.
    pub sos_nodes: u64,
    /// Max bit length of a rich-circle modulus.
    pub modulus_bits: u64,
    /// Max nominal size of an enumerated progression.
    pub enum_nominal: u64,
    /// Max |A|*|B| pairs in a sumset computation.
    pub sumset_pairs: u64,
    /// Max point-tuple evaluations in hyperplane-richness enumeration.
    pub richness_tuples: u64,
    /// Max |P|*|centers| pairs in sphere-point incidence counting.
    pub incidence_pairs: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            naive_patterns: 1 << 24,
            mitm_half_entries: 1 << 22,
            convolution_pairs: 100_000_000,
            dp_states: 100_000_000,
            slab_cells: 1 << 24,
            fourier_products: 1_000_000_000,
            polya_terms: 10_000_000,
            sos_nodes: 100_000_000,
            modulus_bits: 256,
            enum_nominal: 10_000_000,
            sumset_pairs: 100_000_000,
            richness_tuples: 1_000_000_000,
            incidence_pairs: 100_000_000,
        }
    }
}

impl Caps {
    /// Conservative profile for constrained machines.
    pub fn small() -> Self {
        Caps {
            naive_patterns: 1 << 20,
            mitm_half_entries: 1 << 18,
            convolution_pairs: 10_000_000,
            dp_states: 10_000_000,
            slab_cells: 1 << 22,
            fourier_products: 100_000_000,
            polya_terms: 1_000_000,
            sos_nodes: 10_000_000,
            modulus_bits: 128,
            enum_nominal: 1_000_000,
            sumset_pairs: 10_000_000,
            richness_tuples: 100_000_000,
            incidence_pairs: 10_000_000,
        }
    }

    /// Roomy profile for long unattended runs.
    pub fn big() -> Self {
        Caps {
            naive_patterns: 1 << 28,
            mitm_half_entries: 1 << 24,
            convolution_pairs: 2_000_000_000,
            dp_states: 500_000_000,
            slab_cells: 1 << 27,
            fourier_products: 20_000_000_000,
            polya_terms: 100_000_000,
            sos_nodes: 1_000_000_000,
            modulus_bits: 1024,
            enum_nominal: 100_000_000,
            sumset_pairs: 1_000_000_000,
            richness_tuples: 10_000_000_000,
            incidence_pairs: 1_000_000_000,
        }
    }

    /// Look up a profile by name.
    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "small" => Some(Self::small()),
            "default" | "desk" => Some(Self::default()),
            "big" => Some(Self::big()),
            _ => None,
        }
    }
}
