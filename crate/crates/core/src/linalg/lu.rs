//! LU factorization with partial pivoting, and the determinant / solve /
//! inverse operations built on it.

use num_complex::Complex64;

use super::CMat;
use crate::error::Result;

/// Packed LU factorization: L (unit lower) and U share `lu`, `perm` is the
/// row permutation, `sign` the permutation parity.
struct Lu {
    lu: CMat,
    perm: Vec<usize>,
    sign: f64,
}

fn factor(m: &CMat) -> Result<Lu> {
    m.check_square()?;
    m.check_finite()?;
    let n = m.rows();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = lu[(k, k)].norm();
        for i in (k + 1)..n {
            let mag = lu[(i, k)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        if pivot.norm() == 0.0 {
            continue; // singular; determinant will be 0, solve will divide by 0
        }
        for i in (k + 1)..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in (k + 1)..n {
                let sub = factor * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

/// Determinant via pivoted elimination.
pub fn determinant(m: &CMat) -> Result<Complex64> {
    let f = factor(m)?;
    let n = m.rows();
    let mut det = Complex64::new(f.sign, 0.0);
    for k in 0..n {
        det *= f.lu[(k, k)];
    }
    Ok(det)
}

/// Solve m x = b for each column of b.
#[allow(clippy::needless_range_loop)]
pub fn solve(m: &CMat, b: &CMat) -> Result<CMat> {
    let f = factor(m)?;
    let n = m.rows();
    assert_eq!(b.rows(), n, "right-hand side has {} rows, expected {n}", b.rows());
    let mut x = CMat::zeros(n, b.cols());
    for col in 0..b.cols() {
        // forward substitution on permuted b
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = b[(f.perm[i], col)];
            for j in 0..i {
                s -= f.lu[(i, j)] * y[j];
            }
            y[i] = s;
        }
        // back substitution
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= f.lu[(i, j)] * x[(j, col)];
            }
            x[(i, col)] = s / f.lu[(i, i)];
        }
    }
    Ok(x)
}

/// Matrix inverse.
pub fn inverse(m: &CMat) -> Result<CMat> {
    solve(m, &CMat::identity(m.rows()))
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
    fn determinant_identity() {
        assert!((determinant(&CMat::identity(4)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn determinant_swap() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        assert!((determinant(&m).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn determinant_tridiagonal_chebyshev() {
        // tridiagonal(diag 2, off 1) of size 3 has determinant U_3(1) = 4
        let m = CMat::from_fn(3, 3, |i, j| {
            if i == j {
                c(2.0, 0.0)
            } else if i.abs_diff(j) == 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!((determinant(&m).unwrap() - c(4.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..20 {
            let n = rng.gen_range(1..9);
            let m = CMat::from_fn(n, n, |i, j| {
                let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if i == j {
                    v + c(3.0, 0.0)
                } else {
                    v
                }
            });
            let inv = inverse(&m).unwrap();
            let residual = m.mul(&inv).max_abs_diff(&CMat::identity(n));
            assert!(residual < 1e-12, "residual {residual} at n={n}");
        }
    }
}
