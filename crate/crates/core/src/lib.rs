//! Optimal spectral bounds on resolvent norms and condition numbers of
//! finite contractions, together with the extremal matrices attaining them.
//!
//! The library has five layers:
//!
//! * [`linalg`]: dense complex matrices with spectral norm, Hermitian
//!   eigendecomposition, general eigenvalues, resolvent, determinant.
//! * [`geometry`]: Euclidean and pseudo-hyperbolic disk metrics, spectra
//!   with multiplicities, Blaschke products, the Stolz-type function `s`.
//! * [`model`]: model operators in the Malmquist-Walsh basis, with
//!   resolvent entries in closed form, the model matrix, the extremal
//!   triangular contraction, and block-diagonal witnesses.
//! * [`extremal`]: the extremal analytic Toeplitz matrix `X_{r,beta}`, its
//!   norm computed by a Hermitian eigensolver oracle and independently by
//!   an implicit characteristic equation with exact real-root counting.
//! * [`bounds`]: the resolvent-norm and condition-number bounds themselves,
//!   sharpness certificates, and a randomized no-counterexample audit.

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod linalg;
pub mod model;

pub use error::{Error, Result};
pub use linalg::CMat;
