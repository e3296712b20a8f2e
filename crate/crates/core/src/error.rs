use crate::homology::Coeff;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a simple polytope: vertex {vertex} lies in {count} facets, expected {expected}")]
    NotSimple {
        vertex: String,
        count: usize,
        expected: usize,
    },
    #[error("inconsistent face lattice: {0}")]
    InconsistentLattice(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("brute-force enumeration is limited to k <= 6 (got k = {0})")]
    TooLarge(u32),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("vertex mismatch: {0}")]
    VertexMismatch(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("not a subspace pattern: {0}")]
    NotASubspacePattern(String),
    #[error("cover model validation failed: {0}")]
    ValidationFailed(String),
    #[error("spectral pages require field coefficients (Q or Z2), got {0}")]
    NonFieldCoefficients(Coeff),
    #[error("the real moment-angle formula needs an explicit small-cover assumption")]
    SmallCoverNotAssumed,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
