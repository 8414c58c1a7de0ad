//! General complex eigenvalues: Householder reduction to upper Hessenberg
//! form followed by the explicit single-shift QR iteration with Wilkinson
//! shifts (complex arithmetic needs no double-shift machinery).

use num_complex::Complex64;

use super::CMat;
use crate::error::{Error, Result};

const MAX_ITERS_PER_EIGENVALUE: usize = 60;

/// Multiset of eigenvalues of a square matrix (no ordering guarantee).
pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>> {
    m.check_square()?;
    m.check_finite()?;
    let n = m.rows();
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }
    let mut h = m.clone();
    hessenberg(&mut h);
    qr_eigenvalues(h)
}

/// In-place reduction to upper Hessenberg form by Householder reflections.
#[allow(clippy::needless_range_loop)]
fn hessenberg(h: &mut CMat) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..(n - 2) {
        let xnorm = ((k + 1)..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;
        u[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            u[i] = h[(i, k)];
        }
        let unorm = ((k + 1)..n).map(|i| u[i].norm_sqr()).sum::<f64>().sqrt();
        if unorm == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            u[i] /= unorm;
        }
        // Rows k+1..n: H <- (I - 2 u u^H) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += u[i].conj() * h[(i, j)];
            }
            dot *= 2.0;
            for i in (k + 1)..n {
                let sub = dot * u[i];
                h[(i, j)] -= sub;
            }
        }
        // Columns k+1..n: H <- H (I - 2 u u^H)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += h[(i, j)] * u[j];
            }
            dot *= 2.0;
            for j in (k + 1)..n {
                let sub = dot * u[j].conj();
                h[(i, j)] -= sub;
            }
        }
        // Column k is now alpha e1 below the diagonal (clean up roundoff).
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to its (1,1) entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b * c).sqrt();
    let mu1 = (tr + disc) * 0.5;
    let mu2 = (tr - disc) * 0.5;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

fn qr_eigenvalues(mut h: CMat) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;

    loop {
        // Zero out negligible subdiagonal entries.
        let mut lo = hi;
        while lo > 0 {
            let off = h[(lo, lo - 1)].norm();
            let scale = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if off <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig.push(h[(hi, hi)]);
            if hi == 0 {
                return Ok(eig);
            }
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        if iter > MAX_ITERS_PER_EIGENVALUE {
            return Err(Error::NoConvergence { iterations: iter });
        }
        let sigma = if iter.is_multiple_of(15) {
            // Exceptional shift to break rare symmetric stalls.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for i in lo..=hi {
            h[(i, i)] -= sigma;
        }

        // QR by complex Givens rotations, then RQ, restricted to lo..=hi.
        let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let a = h[(i, i)];
            let b = h[(i + 1, i)];
            let (c, s) = if b.norm() == 0.0 {
                (1.0, Complex64::new(0.0, 0.0))
            } else if a.norm() == 0.0 {
                (0.0, Complex64::new(1.0, 0.0))
            } else {
                let t = b / a;
                let c = 1.0 / (1.0 + t.norm_sqr()).sqrt();
                (c, c * t.conj())
            };
            // Rows i, i+1: [[c, s], [-conj(s), c]]
            for j in lo..n {
                let top = h[(i, j)];
                let bot = h[(i + 1, j)];
                h[(i, j)] = c * top + s * bot;
                h[(i + 1, j)] = -s.conj() * top + c * bot;
            }
            rotations.push((c, s));
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let i = lo + idx;
            // Columns i, i+1: multiply by the adjoint rotation on the right.
            let top_row = (i + 2).min(hi) + 1;
            for row in 0..top_row {
                let left = h[(row, i)];
                let right = h[(row, i + 1)];
                h[(row, i)] = c * left + s.conj() * right;
                h[(row, i + 1)] = -s * left + c * right;
            }
        }

        for i in lo..=hi {
            h[(i, i)] += sigma;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_key(z: &Complex64) -> (i64, i64) {
        ((z.re * 1e9) as i64, (z.im * 1e9) as i64)
    }

    #[test]
    fn triangular_matrix_keeps_diagonal() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = c(0.2, 0.0);
        m[(1, 1)] = c(0.0, 0.5);
        m[(0, 1)] = c(0.7, -0.1);
        let mut eig = eigenvalues(&m).unwrap();
        eig.sort_by_key(sort_key);
        assert!((eig[0] - c(0.0, 0.5)).norm() < 1e-12);
        assert!((eig[1] - c(0.2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn companion_matrix_of_z2_minus_1() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        let mut eig = eigenvalues(&m).unwrap();
        eig.sort_by_key(sort_key);
        assert!((eig[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((eig[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eigenvalue_product_matches_determinant() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..10);
            let m = CMat::from_fn(n, n, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let eig = eigenvalues(&m).unwrap();
            let prod: Complex64 = eig.iter().product();
            let det = determinant(&m).unwrap();
            assert!(
                (prod - det).norm() <= 1e-8 * det.norm().max(1.0),
                "product {prod} vs det {det} at n={n}"
            );
        }
    }

    #[test]
    fn sign_conjugation_preserves_spectrum() {
        let mut rng = StdRng::seed_from_u64(10);
        for _ in 0..10 {
            let n = rng.gen_range(2..8);
            let m = CMat::from_fn(n, n, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let signs: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let conj = CMat::from_fn(n, n, |i, j| m[(i, j)] * signs[i] * signs[j]);
            let mut a = eigenvalues(&m).unwrap();
            let mut b = eigenvalues(&conj).unwrap();
            a.sort_by_key(sort_key);
            b.sort_by_key(sort_key);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-8, "spectra differ: {x} vs {y}");
            }
        }
    }

    #[test]
    fn repeated_eigenvalue_jordan_type() {
        // T* with lambda = 0.3, n = 3 has spectrum {0.3, 0.3, 0.3}.
        let lam = 0.3;
        let m = CMat::from_fn(3, 3, |i, j| {
            if i == j {
                c(lam, 0.0)
            } else if i > j {
                let k = i - j;
                c((-lam).powi(k as i32 - 1) * (1.0 - lam * lam), 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let eig = eigenvalues(&m).unwrap();
        for z in eig {
            assert!(
                (z - c(lam, 0.0)).norm() < 1e-5,
                "defective eigenvalue recovered poorly: {z}"
            );
        }
    }
}
