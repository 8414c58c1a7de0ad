//! Model operators in the Malmquist-Walsh basis: resolvent entries in
//! closed form, recovery of the model matrix itself, the extremal
//! triangular contraction with a single repeated eigenvalue, and the
//! block models used for boundary spectra.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::BlaschkeProduct;
use crate::linalg::{self, CMat};

/// Separation required between the evaluation point and the zeros.
pub const ZERO_SEPARATION_TOL: f64 = 1e-12;
/// Two probe recoveries of the model matrix must agree to this.
const PROBE_AGREEMENT_TOL: f64 = 1e-9;

/// Resolvent of a model operator, tagged with the point and the product
/// it came from.
#[derive(Debug, Clone)]
pub struct ModelResolvent {
    matrix: CMat,
    zeta: Complex64,
    blaschke: BlaschkeProduct,
}

impl ModelResolvent {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.blaschke
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }
}

/// Resolvent of the model operator at `zeta`, entry by entry.
///
/// The classical closed form carries a global 1/B(zeta) prefactor whose
/// Moebius factors largely cancel against the per-entry products. The
/// cancelled expression used here keeps only the surviving factors:
///
/// * diagonal: 1/(zeta - nu_i)
/// * below diagonal: sqrt(1-|nu_i|^2) sqrt(1-|nu_j|^2)
///   * prod_{k=j..i} 1/(zeta - nu_k) * prod_{k=j+1..i-1} (1 - conj(nu_k) zeta)
///
/// This form stays finite everywhere off the zeros; the uncancelled one
/// has spurious poles at the reflected points 1/conj(nu_k).
#[allow(clippy::needless_range_loop)]
pub fn model_resolvent(b: &BlaschkeProduct, zeta: Complex64) -> Result<ModelResolvent> {
    let nu = b.zeros();
    let n = nu.len();
    let sep = nu.iter().map(|v| (zeta - v).norm()).fold(f64::INFINITY, f64::min);
    if sep < ZERO_SEPARATION_TOL {
        return Err(Error::SpectrumCollision { dist: sep, tol: ZERO_SEPARATION_TOL });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = one / (zeta - nu[i]);
        for j in 0..i {
            let pref = (1.0 - nu[i].norm_sqr()).sqrt() * (1.0 - nu[j].norm_sqr()).sqrt();
            let mut val = Complex64::new(pref, 0.0);
            for k in j..=i {
                val /= zeta - nu[k];
            }
            for k in (j + 1)..i {
                val *= one - nu[k].conj() * zeta;
            }
            m[(i, j)] = val;
        }
    }
    Ok(ModelResolvent { matrix: m, zeta, blaschke: b.clone() })
}

/// The model matrix itself, recovered from its resolvent.
///
/// Probes the resolvent at a point outside the closed disk (which can
/// never collide with a zero) and inverts: M = zeta0 I - R(zeta0)^{-1}.
/// A second probe point cross-checks the recovery; the strictly upper
/// triangle, zero in exact arithmetic, is cleared of roundoff.
pub fn model_matrix(b: &BlaschkeProduct) -> Result<CMat> {
    let m2 = recover_from_probe(b, Complex64::new(2.0, 0.0))?;
    let m3 = recover_from_probe(b, Complex64::new(3.0, 0.0))?;
    let diff = m2.max_abs_diff(&m3);
    assert!(
        diff <= PROBE_AGREEMENT_TOL,
        "model matrix recovery disagrees between probe points by {diff:e}"
    );
    let n = m2.rows();
    let mut out = m2;
    for i in 0..n {
        for j in (i + 1)..n {
            out[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(out)
}

fn recover_from_probe(b: &BlaschkeProduct, zeta0: Complex64) -> Result<CMat> {
    let r = model_resolvent(b, zeta0)?;
    let rinv = linalg::inverse(r.matrix())?;
    let n = rinv.rows();
    Ok(CMat::from_fn(n, n, |i, j| {
        let id = if i == j { zeta0 } else { Complex64::new(0.0, 0.0) };
        id - rinv[(i, j)]
    }))
}

/// The extremal contraction with minimal polynomial (z - lambda)^n.
///
/// Lower-triangular Toeplitz: lambda on the diagonal and
/// (-lambda)^{k-1} (1 - lambda^2) on the k-th subdiagonal.
pub fn extremal_t_star(lambda: f64, n: usize) -> Result<CMat> {
    if !lambda.is_finite() || lambda.abs() >= 1.0 {
        return Err(Error::OutOfDomain {
            details: format!("repeated eigenvalue must lie in (-1,1), got {lambda}"),
        });
    }
    if n == 0 {
        return Err(Error::OutOfDomain { details: "matrix size must be at least 1".into() });
    }
    let gap = 1.0 - lambda * lambda;
    Ok(CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(lambda, 0.0)
        } else if i > j {
            Complex64::new((-lambda).powi((i - j) as i32 - 1) * gap, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Block-diagonal model resolvent diag(A1, A2) at `zeta` for the spectrum
/// pair {rho1 with multiplicity n1} and {-1 with multiplicity n2}.
///
/// A1 is the interior model resolvent for the repeated zero rho1; A2 is
/// the boundary limit, the diagonal block (1/(zeta+1)) I.
pub fn block_model_resolvent(
    n1: usize,
    rho1: f64,
    n2: usize,
    zeta: Complex64,
) -> Result<CMat> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::OutOfDomain { details: "block sizes must be at least 1".into() });
    }
    if !(0.0..1.0).contains(&rho1) {
        return Err(Error::OutOfDomain {
            details: format!("interior eigenvalue must lie in [0,1), got {rho1}"),
        });
    }
    let boundary_sep = (zeta + Complex64::new(1.0, 0.0)).norm();
    if boundary_sep < ZERO_SEPARATION_TOL {
        return Err(Error::SpectrumCollision { dist: boundary_sep, tol: ZERO_SEPARATION_TOL });
    }
    let b = BlaschkeProduct::repeated(Complex64::new(rho1, 0.0), n1)?;
    let a1 = model_resolvent(&b, zeta)?;
    let n = n1 + n2;
    let mut out = CMat::zeros(n, n);
    for i in 0..n1 {
        for j in 0..n1 {
            out[(i, j)] = a1.matrix()[(i, j)];
        }
    }
    let boundary = Complex64::new(1.0, 0.0) / (zeta + Complex64::new(1.0, 0.0));
    for i in n1..n {
        out[(i, i)] = boundary;
    }
    Ok(out)
}
