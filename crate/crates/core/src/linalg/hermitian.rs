//! Hermitian eigendecomposition.
//!
//! Householder reduction of a complex Hermitian matrix to real symmetric
//! tridiagonal form (with a diagonal phase fix to make the subdiagonal real
//! nonnegative), followed by the implicit QL iteration with shifts.

use num_complex::Complex64;

use super::CMat;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const MAX_QL_SWEEPS: usize = 50;

/// Eigenvalues (all real, sorted descending by magnitude) and an orthonormal
/// set of eigenvectors stored as matrix columns, in matching order.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let (d, v) = decompose(m, true)?;
    Ok((d, v.expect("eigenvectors requested")))
}

/// Eigenvalues only, sorted descending by magnitude.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    let (d, _) = decompose(m, false)?;
    Ok(d)
}

fn decompose(m: &CMat, want_vectors: bool) -> Result<(Vec<f64>, Option<CMat>)> {
    m.check_square()?;
    m.check_finite()?;
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tol: HERMITIAN_TOL,
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok((vec![], want_vectors.then(|| CMat::zeros(0, 0))));
    }

    // Symmetrize roundoff before reducing.
    let mut b = CMat::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = want_vectors.then(|| CMat::identity(n));

    tridiagonalize(&mut b, v.as_mut());

    let mut d: Vec<f64> = (0..n).map(|i| b[(i, i)].re).collect();
    let mut e: Vec<f64> = vec![0.0; n];

    // Phase-normalize the complex subdiagonal to real nonnegative entries,
    // folding the diagonal phase matrix into the eigenvector accumulator.
    let mut phase = Complex64::new(1.0, 0.0);
    for i in 0..n.saturating_sub(1) {
        let sub = b[(i + 1, i)];
        let mag = sub.norm();
        e[i] = mag;
        let next_phase = if mag > 0.0 { phase * (sub / mag) } else { phase };
        if let Some(v) = v.as_mut() {
            if next_phase != Complex64::new(1.0, 0.0) {
                for row in 0..n {
                    v[(row, i + 1)] *= next_phase;
                }
            }
        }
        phase = next_phase;
    }

    ql_implicit(&mut d, &mut e, v.as_mut())?;

    // Sort descending by magnitude, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].abs().partial_cmp(&d[a].abs()).unwrap());
    let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let sorted_v = v.map(|v| CMat::from_fn(n, n, |i, j| v[(i, order[j])]));
    Ok((sorted_d, sorted_v))
}

/// In-place Householder reduction to tridiagonal form; the accumulated
/// unitary is multiplied into `v` from the right when present.
#[allow(clippy::needless_range_loop)]
fn tridiagonalize(b: &mut CMat, mut v: Option<&mut CMat>) {
    let n = b.rows();
    if n < 3 {
        return;
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut p = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..(n - 2) {
        let xnorm = ((k + 1)..n).map(|i| b[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = b[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;

        // Householder vector u spanning indices k+1..n.
        u[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            u[i] = b[(i, k)];
        }
        let unorm = ((k + 1)..n).map(|i| u[i].norm_sqr()).sum::<f64>().sqrt();
        if unorm == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            u[i] /= unorm;
        }

        // Column k (and its mirror row) map to alpha e1 by construction.
        b[(k + 1, k)] = alpha;
        b[(k, k + 1)] = alpha.conj();
        for i in (k + 2)..n {
            b[(i, k)] = Complex64::new(0.0, 0.0);
            b[(k, i)] = Complex64::new(0.0, 0.0);
        }

        // Rank-2 update of the trailing block: B <- B - u w^H - w u^H with
        // w = 2 (p - K u), p = B u, K = u^H p (real for Hermitian B).
        for i in (k + 1)..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                s += b[(i, j)] * u[j];
            }
            p[i] = s;
        }
        let kk: f64 = ((k + 1)..n).map(|i| (u[i].conj() * p[i]).re).sum();
        for i in (k + 1)..n {
            p[i] = (p[i] - kk * u[i]) * 2.0;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let upd = u[i] * p[j].conj() + p[i] * u[j].conj();
                b[(i, j)] -= upd;
            }
        }

        if let Some(v) = v.as_deref_mut() {
            // V <- V (I - 2 u u^H)
            for row in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for j in (k + 1)..n {
                    dot += v[(row, j)] * u[j];
                }
                dot *= 2.0;
                for j in (k + 1)..n {
                    let sub = dot * u[j].conj();
                    v[(row, j)] -= sub;
                }
            }
        }
    }
}

/// Implicit QL iteration with shifts on a real symmetric tridiagonal matrix,
/// accumulating the (real) rotations into the complex eigenvector matrix.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut v: Option<&mut CMat>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let denom = g + if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(v) = v.as_deref_mut() {
                    let nrows = v.rows();
                    for row in 0..nrows {
                        f = v[(row, i + 1)].re;
                        let fi = v[(row, i + 1)].im;
                        let wr = v[(row, i)].re;
                        let wi = v[(row, i)].im;
                        v[(row, i + 1)] = Complex64::new(s * wr + c * f, s * wi + c * fi);
                        v[(row, i)] = Complex64::new(c * wr - s * f, c * wi - s * fi);
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_2x2_hand_checked() {
        // [[0, 0.5], [0.5, 0.75]] has characteristic polynomial
        // x^2 - 0.75 x - 0.25 with roots 1 and -0.25.
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(0.5, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.75, 0.0);
        let (d, _) = hermitian_eigen(&m).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-13);
        assert!((d[1] + 0.25).abs() < 1e-13);
    }

    #[test]
    fn eigen_zero_matrix() {
        let (d, _) = hermitian_eigen(&CMat::zeros(4, 4)).unwrap();
        assert!(d.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn eigen_1x1() {
        let m = CMat::from_diag(&[c(2.0, 0.0)]);
        let (d, v) = hermitian_eigen(&m).unwrap();
        assert_eq!(d, vec![2.0]);
        assert!((v[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigen(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    fn random_hermitian(n: usize, rng: &mut StdRng) -> CMat {
        let a = CMat::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        CMat::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5)
    }

    #[test]
    fn reconstruction_residual_per_pair() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..15 {
            let n = rng.gen_range(1..12);
            let m = random_hermitian(n, &mut rng);
            let (d, v) = hermitian_eigen(&m).unwrap();
            let scale = d.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
            for j in 0..n {
                let mut worst = 0.0_f64;
                for i in 0..n {
                    let mut mv = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        mv += m[(i, k)] * v[(k, j)];
                    }
                    worst = worst.max((mv - d[j] * v[(i, j)]).norm());
                }
                assert!(worst <= 1e-10 * scale, "residual {worst} at n={n}, j={j}");
            }
        }
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..10 {
            let n = rng.gen_range(2..10);
            let m = random_hermitian(n, &mut rng);
            let (_, v) = hermitian_eigen(&m).unwrap();
            let gram = v.adjoint().mul(&v);
            assert!(gram.max_abs_diff(&CMat::identity(n)) < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_sorted_by_magnitude() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let n = rng.gen_range(2..10);
            let m = random_hermitian(n, &mut rng);
            let d = hermitian_eigenvalues(&m).unwrap();
            for w in d.windows(2) {
                assert!(w[0].abs() >= w[1].abs() - 1e-15);
            }
        }
    }

    #[test]
    fn eigenvalues_match_trace_and_det() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..10 {
            let n = rng.gen_range(2..9);
            let m = random_hermitian(n, &mut rng);
            let d = hermitian_eigenvalues(&m).unwrap();
            let tr: f64 = d.iter().sum();
            assert!((tr - m.trace().re).abs() < 1e-10 * tr.abs().max(1.0));
            let det_eig: f64 = d.iter().product();
            let det = super::super::determinant(&m).unwrap();
            assert!((det_eig - det.re).abs() < 1e-8 * det.norm().max(1.0));
        }
    }
}
