//! Dense complex linear algebra substrate.
//!
//! Everything is built on [`CMat`], a row-major dense complex matrix. The
//! module provides the handful of kernels the rest of the library needs:
//! spectral norm, Hermitian eigendecomposition, general eigenvalues,
//! resolvent and determinant. All routines are pure functions; matrices are
//! immutable values.

mod hermitian;
mod lu;
mod schur;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use hermitian::{hermitian_eigen, hermitian_eigenvalues};
pub use lu::{determinant, inverse, solve};
pub use schur::eigenvalues;

/// Dense complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from complex entries.
    pub fn from_diag(d: &[Complex64]) -> Self {
        let mut m = CMat::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw row-major data.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Matrix product.
    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }

    /// Entrywise sum.
    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| s * self[(i, j)])
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise absolute difference against another matrix.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Trace (sum of diagonal entries); requires a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Error if any entry is NaN or infinite.
    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Error unless the matrix is square.
    pub fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Max entrywise deviation from the adjoint.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Largest singular value.
///
/// Computed as the square root of the top eigenvalue of the Gram matrix
/// (the smaller of A^H A and A A^H), which is Hermitian positive
/// semidefinite.
pub fn spectral_norm(m: &CMat) -> Result<f64> {
    m.check_finite()?;
    if m.rows == 0 || m.cols == 0 {
        return Ok(0.0);
    }
    let gram = if m.rows >= m.cols {
        m.adjoint().mul(m)
    } else {
        m.mul(&m.adjoint())
    };
    let eig = hermitian_eigenvalues(&gram)?;
    let top = eig.iter().cloned().fold(0.0, f64::max);
    Ok(top.max(0.0).sqrt())
}

/// Resolvent (zeta I - m)^{-1}.
///
/// Errors with [`Error::SpectrumCollision`] when `zeta` is within 1e-12 of
/// an eigenvalue of `m`; below that separation the residual contract is not
/// achievable in double precision.
pub fn resolvent(m: &CMat, zeta: Complex64) -> Result<CMat> {
    m.check_square()?;
    m.check_finite()?;
    const TOL: f64 = 1e-12;
    let spec = eigenvalues(m)?;
    let dist = spec
        .iter()
        .map(|l| (zeta - l).norm())
        .fold(f64::INFINITY, f64::min);
    if dist < TOL {
        return Err(Error::SpectrumCollision { dist, tol: TOL });
    }
    let shifted = CMat::from_fn(m.rows, m.cols, |i, j| {
        let v = -m[(i, j)];
        if i == j {
            v + zeta
        } else {
            v
        }
    });
    inverse(&shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_cmat(n: usize, rng: &mut StdRng) -> CMat {
        CMat::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    /// Random unitary from the QR factorization of a random matrix
    /// (Gram-Schmidt with phase fixing).
    fn random_unitary(n: usize, rng: &mut StdRng) -> CMat {
        let a = random_cmat(n, rng);
        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut v: Vec<Complex64> = (0..n).map(|i| a[(i, j)]).collect();
            for u in &q {
                let proj: Complex64 = u.iter().zip(&v).map(|(ui, vi)| ui.conj() * vi).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            q.push(v);
        }
        CMat::from_fn(n, n, |i, j| q[j][i])
    }

    #[test]
    fn spectral_norm_identity_is_one() {
        assert!((spectral_norm(&CMat::identity(3)).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectral_norm_symmetric_2x2() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(0.5, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(1.0, 0.0);
        let expected = (1.0 + 2.0_f64.sqrt()) / 2.0;
        assert!((spectral_norm(&m).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_diagonal() {
        let m = CMat::from_diag(&[c(0.3, 0.0), c(-0.7, 0.0)]);
        assert!((spectral_norm(&m).unwrap() - 0.7).abs() < 1e-14);
    }

    #[test]
    fn spectral_norm_rejects_nan() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(spectral_norm(&m), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn spectral_norm_unitary_invariance() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..10 {
            let n = rng.gen_range(2..7);
            let m = random_cmat(n, &mut rng);
            let u = random_unitary(n, &mut rng);
            let v = random_unitary(n, &mut rng);
            let a = spectral_norm(&m).unwrap();
            let b = spectral_norm(&u.mul(&m).mul(&v)).unwrap();
            assert!((a - b).abs() <= 1e-10 * a.max(1.0), "norm changed: {a} vs {b}");
        }
    }

    #[test]
    fn spectral_norm_matches_hermitian_dilation() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..10 {
            let n = rng.gen_range(2..6);
            let m = random_cmat(n, &mut rng);
            let dil = CMat::from_fn(2 * n, 2 * n, |i, j| {
                if i < n && j >= n {
                    m[(i, j - n)]
                } else if i >= n && j < n {
                    m[(j, i - n)].conj()
                } else {
                    c(0.0, 0.0)
                }
            });
            let eig = hermitian_eigenvalues(&dil).unwrap();
            let top = eig.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let nrm = spectral_norm(&m).unwrap();
            assert!((nrm - top).abs() <= 1e-10 * nrm.max(1.0));
        }
    }

    #[test]
    fn resolvent_of_zero_matrix() {
        let m = CMat::zeros(3, 3);
        let r = resolvent(&m, c(2.0, 0.0)).unwrap();
        let expected = CMat::identity(3).scale(c(0.5, 0.0));
        assert!(r.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn resolvent_of_scalar() {
        let m = CMat::from_diag(&[c(0.5, 0.0)]);
        let r = resolvent(&m, c(1.0, 0.0)).unwrap();
        assert!((r[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn resolvent_of_jordan_block() {
        let mut m = CMat::zeros(2, 2);
        m[(1, 0)] = c(1.0, 0.0);
        let r = resolvent(&m, c(1.0, 0.0)).unwrap();
        let mut expected = CMat::identity(2);
        expected[(1, 0)] = c(1.0, 0.0);
        assert!(r.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn resolvent_rejects_spectrum_point() {
        let m = CMat::from_diag(&[c(0.5, 0.0), c(-0.25, 0.0)]);
        assert!(matches!(
            resolvent(&m, c(0.5, 0.0)),
            Err(Error::SpectrumCollision { .. })
        ));
    }

    #[test]
    fn resolvent_residual_contract() {
        let mut rng = StdRng::seed_from_u64(3);
        let mut done = 0;
        while done < 100 {
            let n = rng.gen_range(2..8);
            let m = random_cmat(n, &mut rng);
            let zeta = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let spec = eigenvalues(&m).unwrap();
            if spec.iter().any(|l| (zeta - l).norm() < 0.1) {
                continue;
            }
            let r = resolvent(&m, zeta).unwrap();
            let shifted = CMat::identity(n).scale(zeta).sub(&m);
            let residual = shifted.mul(&r).sub(&CMat::identity(n));
            let rnorm = spectral_norm(&r).unwrap();
            assert!(
                spectral_norm(&residual).unwrap() <= 1e-10 * rnorm.max(1.0),
                "residual too large at n={n}, zeta={zeta}"
            );
            done += 1;
        }
    }
}
