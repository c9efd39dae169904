use thiserror::Error;

/// Errors raised by the exact pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd undefined: both arguments are zero")]
    GcdUndefined,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots to count")]
    ConstantPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a Fano Hilbert polynomial: {0}")]
    NotFano(String),
    #[error("product not uniformly polarized: indices {0} and {1} differ")]
    IndexMismatch(u32, u32),
    #[error("section not Fano with this polarization (index 1)")]
    SectionNotFano,
    #[error("empty indeterminate zone not allowed (tolerance must be positive)")]
    EmptyZone,
    #[error("root iteration did not converge after {sweeps} sweeps (best residual radius {best_radius})")]
    NoConvergence { sweeps: usize, best_radius: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog row {row}: {msg}")]
    CatalogRow { row: usize, msg: String },
    #[error("entry not classifiable: {0}")]
    NotClassifiable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
