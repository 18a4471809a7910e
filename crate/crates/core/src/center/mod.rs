//! Poisson centers: the monoid engine for skew-symmetric brackets, the
//! linear-algebra oracle for arbitrary brackets, and series utilities.

pub mod monoid;
pub mod oracle;
pub mod series;

use serde::Serialize;

use crate::poly::MultiPoly;

pub use monoid::{
    center_generators_skew, classify_skew3, find_beta, gorenstein_skew, gorenstein_via_support_indicator, hilbert_skew,
    skew_monoid, MonoidData, SkewClass, SkewSeries,
};
pub use oracle::{center_oracle, is_central, Caps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Monoid,
    Oracle,
    #[serde(rename = "c_loz")]
    CLoz,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Monoid => "monoid",
            Engine::Oracle => "oracle",
            Engine::CLoz => "c_loz",
        })
    }
}

/// Degreewise description of a subalgebra (the center or C_loz).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub engine: Engine,
    /// Algebra generators found up to `max_degree`; not claimed minimal.
    pub generators: Vec<MultiPoly>,
    /// `hilbert[d]` is the dimension in degree `d`.
    pub hilbert: Vec<u64>,
    /// Degreewise bases; empty for the monoid engine.
    pub basis: Vec<Vec<MultiPoly>>,
    pub max_degree: u32,
    /// Dimensions are those of the associated graded of the total-degree
    /// filtration (inhomogeneous brackets).
    pub filtered: bool,
}
