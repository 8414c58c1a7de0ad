use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |m - m^H| = {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("point lies on (or within {tol:.1e} of) the spectrum: min distance {dist:.3e}")]
    SpectrumCollision { dist: f64, tol: f64 },

    #[error("pseudo-hyperbolic distance degenerates: |1 - conj(z) w| = {denom:.3e}")]
    DegeneratePair { denom: f64 },

    #[error("evaluation point hits a Blaschke factor pole: |1 - conj(nu) z| = {denom:.3e}")]
    PoleHit { denom: f64 },

    #[error("Blaschke zero with |nu| = {modulus} is not inside the open disk")]
    BoundaryZero { modulus: f64 },

    #[error("beta = {beta} is within {tol:.1e} of 1 - r^2 = {critical}; use the closed form")]
    DegenerateBeta { beta: f64, critical: f64, tol: f64 },

    #[error("characteristic-equation scan found {found} eigenvalue candidates, expected {expected}")]
    NoRootFound { found: usize, expected: usize },

    #[error("root scan grid too coarse: {details}")]
    GridTooCoarse { details: String },

    #[error("root-count hypothesis violated: {details}")]
    HypothesisViolated { details: String },

    #[error("spectrum point with |lambda| = {modulus} is not unimodular")]
    NotUnimodular { modulus: f64 },

    #[error("zeta with |zeta| = {modulus} is not unimodular")]
    NotUnimodularZeta { modulus: f64 },

    #[error("argument outside the operation's domain: {details}")]
    OutOfDomain { details: String },

    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("invalid spectrum: {details}")]
    InvalidSpectrum { details: String },
}

pub type Result<T> = std::result::Result<T, Error>;
