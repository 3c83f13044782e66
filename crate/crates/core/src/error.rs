use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {series}{rank}: {reason}")]
    InvalidRootSystem {
        series: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid root of unity {n}/{m}: {reason}")]
    InvalidRoot {
        n: i64,
        m: i64,
        reason: &'static str,
    },
    /// The standing assumption `q^{d_i} != q^{-d_i}` fails.
    #[error("q^{d} squares to 1 (node {node}); q_i^2 != 1 is required for every simple root")]
    Inadmissible { node: usize, d: i64 },
    #[error("element is not real (not fixed by complex conjugation)")]
    NotReal,
    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not of the singlet form sum_i p_i m/(2 n d_i) Lambda_i")]
    MalformedSinglet(String),
    #[error("sample {n}/{m} lies outside the open interval (0, {bound})")]
    SampleOutOfRange { n: i64, m: i64, bound: String },
    #[error("module report is truncated at height {0}")]
    Truncated(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An exact check that a theorem guarantees came out false.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
