//! Frobenius angle ranks and exotic Tate classes of abelian varieties over
//! finite fields.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod poly;
pub mod relations;
pub mod report;
pub mod spectrum;
pub mod tate;
pub mod weil;

pub use error::{Error, Result};

/// Numerical and search parameters shared by every stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Starting precision P; angles are certified to width `2^-(P/2)`.
    pub precision_bits: u32,
    /// Precision escalation stops here.
    pub max_precision_bits: u32,
    /// Largest relation denominator D accepted as certified. `None` means
    /// `max(60, 4g²)`.
    pub denom_bound: Option<u64>,
    /// Coefficient bound B for relation search.
    pub height_bound: i64,
    /// Base extensions up to `F_{q^m_max}` are checked for simplicity.
    pub m_max: u32,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: 128,
            max_precision_bits: 16384,
            denom_bound: None,
            height_bound: 1 << 20,
            m_max: 12,
            threads: None,
        }
    }
}

impl Config {
    pub fn denom_bound_for(&self, g: usize) -> u64 {
        self.denom_bound
            .unwrap_or_else(|| 60u64.max(4 * (g as u64) * (g as u64)))
    }
}
