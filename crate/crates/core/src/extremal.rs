//! The extremal triangular Toeplitz family and its spectral norm.
//!
//! The matrix is lower-triangular Toeplitz with a geometric profile: the
//! diagonal carries r^{n-1} and the k-th subdiagonal carries
//! beta * r^{n-1-k}. Its norm can be read off a Hermitian eigensolver
//! applied to the column-reversed (Hankel) companion, or assembled from
//! the roots of an implicit characteristic equation with one
//! trigonometric and two hyperbolic branches. Both routes are exposed;
//! they are independent and must agree.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Width of the exact-degeneracy window around beta = 1 - r^2.
pub const DEGENERATE_BETA_TOL: f64 = 1e-12;
/// Width of the near-degenerate band where the characteristic-equation
/// route hands over to the eigensolver oracle.
pub const ORACLE_FALLBACK_BAND: f64 = 1e-3;
/// Two scanned roots closer than this indicate conflicting brackets.
const DUPLICATE_ROOT_TOL: f64 = 1e-10;

/// Parameters (n, r, beta) of the extremal matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalParams {
    pub n: usize,
    pub r: f64,
    pub beta: f64,
}

impl ExtremalParams {
    /// Validates n >= 1, r in (0,1], beta in [0,2].
    pub fn new(n: usize, r: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfDomain { details: "matrix size must be at least 1".into() });
        }
        if !r.is_finite() || r <= 0.0 || r > 1.0 {
            return Err(Error::OutOfDomain {
                details: format!("radius must lie in (0,1], got {r}"),
            });
        }
        if !beta.is_finite() || !(0.0..=2.0).contains(&beta) {
            return Err(Error::OutOfDomain {
                details: format!("subdiagonal weight must lie in [0,2], got {beta}"),
            });
        }
        Ok(ExtremalParams { n, r, beta })
    }
}

/// Predicted and found roots of the characteristic equation, with the
/// eigenvalue-square candidates they assemble into.
#[derive(Debug, Clone, Serialize)]
pub struct RootCensus {
    /// Predicted number of trigonometric solutions in [-pi, pi).
    pub predicted_count: usize,
    /// Trigonometric roots found, mirrored into [-pi, pi).
    pub found_trig: Vec<f64>,
    /// Roots of the growing hyperbolic branch, theta > 0.
    pub found_cosh_plus: Vec<f64>,
    /// Roots of the sign-flipped hyperbolic branch, theta > 0.
    pub found_cosh_minus: Vec<f64>,
    /// All n eigenvalue squares, ascending.
    pub lambda_squares: Vec<f64>,
}

/// Which route produced a norm value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XnormMethod {
    ClosedForm,
    CharEq,
    Oracle,
}

/// Result of the characteristic-equation route with diagnostics.
#[derive(Debug, Clone)]
pub struct CharEqOutcome {
    pub norm: f64,
    /// Root census backing the value; absent when the near-degenerate
    /// band forced an oracle fallback.
    pub census: Option<RootCensus>,
    pub used_oracle_fallback: bool,
}

/// The lower-triangular Toeplitz matrix itself.
pub fn build_x(p: &ExtremalParams) -> CMat {
    let (n, r, beta) = (p.n, p.r, p.beta);
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(r.powi(n as i32 - 1), 0.0)
        } else if i > j {
            Complex64::new(beta * r.powi(n as i32 - (i - j + 1) as i32), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Column reversal m -> m J. For the triangular family this produces a
/// real symmetric Hankel matrix with the same spectral norm.
pub fn hankel_flip(m: &CMat) -> Result<CMat> {
    m.check_square()?;
    let n = m.rows();
    Ok(CMat::from_fn(n, n, |i, j| m[(i, n - 1 - j)]))
}

/// Norm via the Hermitian eigensolver on the flipped matrix.
pub fn xnorm_oracle(p: &ExtremalParams) -> Result<f64> {
    let xt = hankel_flip(&build_x(p))?;
    let ev = linalg::hermitian_eigenvalues(&xt)?;
    Ok(ev[0].abs())
}

/// Closed-form norm values, where one exists.
///
/// Size 1 gives 1; beta = 0 leaves a scalar multiple of the identity;
/// beta = 1 - r^2 pins the norm at exactly 1; r = 1 with beta in {1, 2}
/// has explicit trigonometric values.
pub fn closed_form_xnorm(p: &ExtremalParams) -> Option<f64> {
    use std::f64::consts::PI;
    if p.n == 1 {
        return Some(1.0);
    }
    if p.beta == 0.0 {
        return Some(p.r.powi(p.n as i32 - 1));
    }
    if (p.beta - (1.0 - p.r * p.r)).abs() < DEGENERATE_BETA_TOL {
        return Some(1.0);
    }
    if p.r == 1.0 {
        let n = p.n as f64;
        if p.beta == 1.0 {
            return Some(0.5 / (PI / (4.0 * n + 2.0)).sin());
        }
        if p.beta == 2.0 {
            return Some(1.0 / (PI / (4.0 * n)).tan());
        }
    }
    None
}

/// Large-n limit of the norm at fixed (r, beta).
pub fn xnorm_limit(r: f64, beta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) || r == 0.0 {
        return Err(Error::OutOfDomain { details: format!("radius must lie in (0,1), got {r}") });
    }
    if !(1.0 - r * r..=2.0).contains(&beta) {
        return Err(Error::OutOfDomain {
            details: format!("weight {beta} outside [1-r^2, 2] = [{}, 2]", 1.0 - r * r),
        });
    }
    Ok(beta / (1.0 - r * r))
}

/// Size-independent upper bound beta_max / (1 - r^2).
pub fn xnorm_upper_bound(p: &ExtremalParams, beta_max: f64) -> Result<f64> {
    if p.r >= 1.0 {
        return Err(Error::OutOfDomain { details: "bound requires r < 1".into() });
    }
    let floor = 1.0 - p.r * p.r;
    if !(floor..=2.0).contains(&beta_max) || p.beta > beta_max || p.beta < floor {
        return Err(Error::OutOfDomain {
            details: format!(
                "need 1-r^2 <= beta <= beta_max <= 2, got beta={}, beta_max={beta_max}",
                p.beta
            ),
        });
    }
    Ok(beta_max / (1.0 - p.r * p.r))
}

fn hypothesis_check(p: &ExtremalParams) -> Result<()> {
    if p.beta <= 0.0 {
        return Err(Error::HypothesisViolated {
            details: "root counting requires beta in (0,2]".into(),
        });
    }
    if p.beta - 1.0 + p.r * p.r == 0.0 {
        return Err(Error::HypothesisViolated {
            details: "root counting requires beta - 1 + r^2 != 0".into(),
        });
    }
    Ok(())
}

/// Predicted number of trigonometric roots in [-pi, pi).
///
/// A uniform two-indicator formula covers every parameter case: with
/// den = beta - 1 + r^2,
///
///   count = 2 ((n - 2) + [A >= -1/n] + [A' <= 1/n]),
///   A  = (1+r)(r+1-beta)/den,  A' = (1-r)(r+beta-1)/den,
///
/// and r = 1 always yields 2n. Threshold ties resolve to the larger
/// count (the indicators are non-strict).
pub fn count_trig_roots(p: &ExtremalParams) -> Result<usize> {
    hypothesis_check(p)?;
    let (nf, r, beta) = (p.n as f64, p.r, p.beta);
    if r == 1.0 {
        return Ok(2 * p.n);
    }
    let den = beta - 1.0 + r * r;
    let a = (1.0 + r) * (r + 1.0 - beta) / den;
    let ap = (1.0 - r) * (r + beta - 1.0) / den;
    let mut count = p.n as isize - 2;
    if a >= -1.0 / nf {
        count += 1;
    }
    if ap <= 1.0 / nf {
        count += 1;
    }
    if beta > 1.0 + r {
        // Both indicators can fail here; the two thresholds they encode
        // must be ordered for the three count bands to be consistent.
        let t1 = den / ((1.0 - r) * (r + beta - 1.0));
        let t2 = den / ((1.0 + r) * (beta - 1.0 - r));
        assert!(
            t1 <= t2 * (1.0 + 1e-12),
            "trig root-count thresholds out of order: {t1} > {t2}"
        );
    }
    Ok((2 * count.max(0)) as usize)
}

fn sign_of(v: f64) -> i32 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if sign_of(fm) == sign_of(flo) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign-change bracketing over a sorted grid, with bisection refinement.
/// Grid points where the function is not finite (poles) are skipped.
fn scan_roots<F: Fn(f64) -> f64>(f: &F, ts: &[f64]) -> Vec<f64> {
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t, f(t)))
        .filter(|(_, v)| v.is_finite())
        .collect();
    let mut out = Vec::new();
    for w in pts.windows(2) {
        if sign_of(w[0].1) * sign_of(w[1].1) == -1 {
            out.push(bisect(f, w[0].0, w[1].0, w[0].1));
        }
    }
    out
}

fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![a];
    }
    let step = (b - a) / (m - 1) as f64;
    (0..m).map(|k| a + step * k as f64).collect()
}

fn logspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    linspace(a, b, m).into_iter().map(|e| 10f64.powf(e)).collect()
}

/// Left side of the trigonometric characteristic equation,
/// cot(n t) + c1 / sin t + c2 cot t.
fn trig_g(theta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let den = r * r + beta - 1.0;
    let nf = n as f64;
    (nf * theta).cos() / (nf * theta).sin()
        + ((2.0 - beta) * r / den) / theta.sin()
        + ((r * r - (beta - 1.0)) / den) * theta.cos() / theta.sin()
}

/// Eigenvalue square attached to a trigonometric root.
fn lam2_trig(theta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let b = beta - 1.0;
    let s = (0.5 * theta).sin();
    let c = (0.5 * theta).cos();
    let num = (r - b) * (r - b) + 4.0 * r * b * s * s;
    let den = (1.0 - r) * (1.0 - r) + 4.0 * r * c * c;
    r.powi(2 * (n as i32 - 1)) * num / den
}

/// sinh((n+1)t)/sinh(nt), switched to an exponential form once the
/// arguments are large enough to overflow the direct ratio.
fn sinh_ratio(theta: f64, n: usize) -> f64 {
    let nf = n as f64;
    if nf * theta > 20.0 {
        theta.exp() * (1.0 - (-2.0 * (nf + 1.0) * theta).exp())
            / (1.0 - (-2.0 * nf * theta).exp())
    } else {
        ((nf + 1.0) * theta).sinh() / (nf * theta).sinh()
    }
}

/// Growing hyperbolic branch equation.
fn cosh_plus_f(theta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let den = r * r + beta - 1.0;
    sinh_ratio(theta, n) + ((2.0 - beta) * r + 2.0 * (1.0 - beta) * theta.cosh()) / den
}

/// Eigenvalue square attached to a growing-branch root.
fn lam2_cosh_plus(theta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let b = beta - 1.0;
    let c = theta.cosh();
    r.powi(2 * (n as i32 - 1)) * (b * b + r * r - 2.0 * r * b * c)
        / (1.0 + r * r + 2.0 * r * c)
}

// The sign-flipped hyperbolic branch suffers catastrophic cancellation in
// its raw form near theta = ln(1/r), where its dominant root migrates for
// large n. It is therefore parametrized by the offset
// delta = theta - ln(1/r) and evaluated through expm1 differences:
//
//   e1 = expm1(delta)              = r e^theta - 1
//   em = r^2 expm1(-delta)         = r e^{-theta} - r^2... scaled so that
//   1 + r^2 - 2 r cosh(theta)      = -(e1 + em)   exactly,
//   E  = e^{-2 n theta},
//   dS = (e1 - E em') / (r (1-E))  with em' = expm1(2 ln r - delta),
//
// giving the residual G(delta) = dS - (beta-1)(e1+em)/(r (r^2+beta-1)).

fn minus_g(delta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let theta = (1.0 / r).ln() + delta;
    let e1 = delta.exp_m1();
    let em = r * r * (-delta).exp_m1();
    // The sinh ratio reads (e1 - e2 exp(-2n theta)) / (r (1 - exp(-2n theta)))
    // with e2 = expm1(2 ln r - delta). Split as e1/r plus a correction whose
    // factors are each exact: near delta = 0 the correction is negligible
    // against e1, and near theta = 0 the expm1 quotient absorbs the
    // vanishing denominator.
    let big_e = (-2.0 * n as f64 * theta).exp();
    let correction = big_e * delta.exp() * (-2.0 * theta).exp_m1()
        / (-2.0 * n as f64 * theta).exp_m1();
    let ds = (e1 + correction) / r;
    ds - (beta - 1.0) * (e1 + em) / (r * (r * r + beta - 1.0))
}

/// Eigenvalue square attached to a sign-flipped-branch root, evaluated
/// directly in the delta offset to preserve the cancelled denominator.
fn lam2_minus(delta: f64, n: usize, r: f64, beta: f64) -> f64 {
    let b = beta - 1.0;
    let e1 = delta.exp_m1();
    let em = r * r * (-delta).exp_m1();
    let dp = -(e1 + em);
    let two_r_cosh = (e1 + em) + 1.0 + r * r;
    let np = b * b + r * r + b * two_r_cosh;
    r.powi(2 * (n as i32 - 1)) * np / dp
}

/// Grid in the delta offset covering (-ln(1/r), theta_max - ln(1/r)],
/// with logarithmic ladders on both sides of delta = 0 where the
/// dominant root concentrates.
fn minus_grid(r: f64, theta_max: f64) -> Vec<f64> {
    let theta_p = (1.0 / r).ln();
    let d_lo = -theta_p;
    let d_hi = theta_max - theta_p;
    let mut pts: Vec<f64> = linspace(d_lo, d_hi, 2001)[1..].to_vec();
    if theta_p > 0.0 {
        let hi_n = theta_p * (1.0 - 1e-14);
        for v in logspace(-22.0, hi_n.max(1e-21).log10(), 80) {
            pts.push(-v);
        }
    }
    if d_hi > 0.0 {
        pts.extend(logspace(-22.0, d_hi.log10(), 80));
    }
    pts.push(0.0);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    pts.retain(|&g| g > d_lo && g <= d_hi);
    pts
}

fn trig_branch_grid(k: usize, n: usize, per_branch: usize) -> Vec<f64> {
    let a = k as f64 * std::f64::consts::PI / n as f64;
    let b = (k + 1) as f64 * std::f64::consts::PI / n as f64;
    let w = b - a;
    let mut ts: Vec<f64> = logspace(-13.0, -2.0, 25).iter().map(|v| a + w * v).collect();
    ts.extend(linspace(0.01, 0.99, per_branch).iter().map(|v| a + w * v));
    ts.extend(logspace(-2.0, -13.0, 25).iter().map(|v| b - w * v));
    ts
}

fn scan_trig_core(n: usize, r: f64, beta: f64, per_branch: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    for k in 0..n {
        let ts = trig_branch_grid(k, n, per_branch);
        roots.extend(scan_roots(&|t| trig_g(t, n, r, beta), &ts));
    }
    roots
}

/// All trigonometric roots in (0, pi), bracketed on `grid` probe points
/// spread across the n pole-to-pole branches and refined by bisection.
pub fn scan_trig_roots(p: &ExtremalParams, grid: usize) -> Result<Vec<f64>> {
    hypothesis_check(p)?;
    if grid < 8 * p.n {
        return Err(Error::GridTooCoarse {
            details: format!("need at least {} probe points, got {grid}", 8 * p.n),
        });
    }
    let per_branch = grid.div_ceil(p.n);
    let mut roots = scan_trig_core(p.n, p.r, p.beta, per_branch);
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in roots.windows(2) {
        if w[1] - w[0] < DUPLICATE_ROOT_TOL {
            return Err(Error::GridTooCoarse {
                details: format!("adjacent brackets both converged near theta = {}", w[0]),
            });
        }
    }
    Ok(roots)
}

fn plus_grid(theta_max: f64, refine: u32) -> Vec<f64> {
    let mut g = logspace(-14.0, -1.0, 50 << refine);
    g.extend(linspace(0.1, theta_max, 1500 << refine));
    g
}

fn theta_cap(r: f64) -> f64 {
    5f64.max((4.0 / r).ln())
}

/// Roots of the two hyperbolic branch equations, as theta > 0 values.
pub fn solve_cosh_branches(p: &ExtremalParams) -> Result<(Vec<f64>, Vec<f64>)> {
    hypothesis_check(p)?;
    let (n, r, beta) = (p.n, p.r, p.beta);
    let theta_max = theta_cap(r);
    let plus = scan_roots(&|t| cosh_plus_f(t, n, r, beta), &plus_grid(theta_max, 0));
    let theta_p = (1.0 / r).ln();
    let minus: Vec<f64> = scan_roots(&|d| minus_g(d, n, r, beta), &minus_grid(r, theta_max))
        .into_iter()
        .map(|d| theta_p + d)
        .collect();
    Ok((plus, minus))
}

struct BranchPass {
    trig: Vec<f64>,
    plus: Vec<f64>,
    minus_delta: Vec<f64>,
}

fn census_pass(n: usize, r: f64, beta: f64, refine: u32) -> BranchPass {
    let theta_max = theta_cap(r);
    BranchPass {
        trig: scan_trig_core(n, r, beta, 64 * 4usize.pow(refine)),
        plus: scan_roots(&|t| cosh_plus_f(t, n, r, beta), &plus_grid(theta_max, refine)),
        minus_delta: scan_roots(&|d| minus_g(d, n, r, beta), &minus_grid(r, theta_max)),
    }
}

/// Full root census: trig and hyperbolic roots plus the eigenvalue
/// squares they parametrize, retried on denser grids until all n
/// eigenvalues are accounted for.
///
/// Size 1 is the scalar matrix (eigenvalue square 1); beta = 0 leaves a
/// multiple of the identity. Both bypass the scan. A vanishing leading
/// recurrence coefficient would contribute the extra candidate
/// r^{2n-2}(1-beta), but that degeneracy occurs only at beta = 0 or
/// beta = 1 - r^2, which never reach the scan.
pub fn root_census(p: &ExtremalParams) -> Result<RootCensus> {
    let (n, r, beta) = (p.n, p.r, p.beta);
    if n == 1 {
        return Ok(RootCensus {
            predicted_count: 0,
            found_trig: Vec::new(),
            found_cosh_plus: Vec::new(),
            found_cosh_minus: Vec::new(),
            lambda_squares: vec![1.0],
        });
    }
    if beta == 0.0 {
        return Ok(RootCensus {
            predicted_count: 0,
            found_trig: Vec::new(),
            found_cosh_plus: Vec::new(),
            found_cosh_minus: Vec::new(),
            lambda_squares: vec![r.powi(2 * (n as i32 - 1)); n],
        });
    }
    hypothesis_check(p)?;
    let predicted = count_trig_roots(p)?;
    let theta_p = (1.0 / r).ln();
    let mut last_found = 0;
    for refine in 0..=2 {
        let pass = census_pass(n, r, beta, refine);
        let mut lam2: Vec<f64> = pass.trig.iter().map(|&t| lam2_trig(t, n, r, beta)).collect();
        lam2.extend(pass.plus.iter().map(|&t| lam2_cosh_plus(t, n, r, beta)));
        lam2.extend(pass.minus_delta.iter().map(|&d| lam2_minus(d, n, r, beta)));
        last_found = lam2.len();
        if lam2.len() == n {
            lam2.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut mirrored: Vec<f64> = pass.trig.iter().map(|&t| -t).collect();
            mirrored.extend(pass.trig.iter().copied());
            mirrored.sort_by(|a, b| a.partial_cmp(b).unwrap());
            return Ok(RootCensus {
                predicted_count: predicted,
                found_trig: mirrored,
                found_cosh_plus: pass.plus,
                found_cosh_minus: pass.minus_delta.iter().map(|&d| theta_p + d).collect(),
                lambda_squares: lam2,
            });
        }
    }
    Err(Error::NoRootFound { found: last_found, expected: n })
}

/// Norm via the characteristic equation, with fallback diagnostics.
pub fn xnorm_char_eq_detailed(p: &ExtremalParams) -> Result<CharEqOutcome> {
    if p.beta == 0.0 {
        // Outside the counting lemma's hypothesis; the matrix is scalar
        // anyway, so the eigensolver answers directly.
        return Ok(CharEqOutcome {
            norm: xnorm_oracle(p)?,
            census: None,
            used_oracle_fallback: true,
        });
    }
    let critical = 1.0 - p.r * p.r;
    let gap = (p.beta - critical).abs();
    if gap < DEGENERATE_BETA_TOL {
        return Err(Error::DegenerateBeta { beta: p.beta, critical, tol: DEGENERATE_BETA_TOL });
    }
    if p.n > 1 && gap < ORACLE_FALLBACK_BAND {
        return Ok(CharEqOutcome {
            norm: xnorm_oracle(p)?,
            census: None,
            used_oracle_fallback: true,
        });
    }
    let census = root_census(p)?;
    let top = census.lambda_squares.last().copied().unwrap_or(0.0).max(0.0);
    Ok(CharEqOutcome { norm: top.sqrt(), census: Some(census), used_oracle_fallback: false })
}

/// Norm via the characteristic equation.
pub fn xnorm_char_eq(p: &ExtremalParams) -> Result<f64> {
    Ok(xnorm_char_eq_detailed(p)?.norm)
}

/// Norm by the cheapest reliable route: closed form, then the
/// characteristic equation, then the eigensolver oracle.
pub fn xnorm_auto(p: &ExtremalParams) -> Result<(f64, XnormMethod)> {
    if let Some(v) = closed_form_xnorm(p) {
        return Ok((v, XnormMethod::ClosedForm));
    }
    match xnorm_char_eq_detailed(p) {
        Ok(outcome) => {
            let method =
                if outcome.used_oracle_fallback { XnormMethod::Oracle } else { XnormMethod::CharEq };
            Ok((outcome.norm, method))
        }
        Err(_) => Ok((xnorm_oracle(p)?, XnormMethod::Oracle)),
    }
}

/// Determinant of the shifted squared Hankel matrix by three routes:
/// direct elimination, the explicit column formulas, and the Chebyshev
/// recurrence with tracked scaling. Returns the worst pairwise relative
/// discrepancy over the given shift and `count` random shifts.
///
/// Random shifts are drawn uniformly from (0, lambda_max] and redrawn
/// when they land within 1e-3 * max(1, lambda_max^2) of an eigenvalue
/// square, where all three determinants vanish and relative comparison
/// is meaningless.
pub fn appendix_det_identity(
    p: &ExtremalParams,
    lambda_max: f64,
    count: usize,
    seed: u64,
) -> Result<f64> {
    if !lambda_max.is_finite() || lambda_max <= 0.0 {
        return Err(Error::OutOfDomain {
            details: format!("shift scale must be positive, got {lambda_max}"),
        });
    }
    let xt = hankel_flip(&build_x(p))?;
    let eig2: Vec<f64> =
        linalg::hermitian_eigenvalues(&xt)?.iter().map(|v| v * v).collect();
    let guard = 1e-3 * 1f64.max(lambda_max * lambda_max);
    let squared = xt.mul(&xt);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut evaluate = |lam: f64| -> Result<()> {
        let lam2 = lam * lam;
        let d_direct = shifted_det_direct(&squared, lam2)?;
        let d_columns = shifted_det_columns(p, lam2)?;
        let d_cheb = shifted_det_chebyshev(p, lam2);
        let scale = d_direct.abs().max(d_columns.abs()).max(d_cheb.abs());
        if scale > 0.0 {
            let spread = (d_direct - d_columns)
                .abs()
                .max((d_direct - d_cheb).abs())
                .max((d_columns - d_cheb).abs());
            worst = worst.max(spread / scale);
        }
        Ok(())
    };
    if eig2.iter().all(|w| (lambda_max * lambda_max - w).abs() >= guard) {
        evaluate(lambda_max)?;
    }
    let mut produced = 0;
    while produced < count {
        let lam = rng.gen_range(0.0..lambda_max);
        let lam2 = lam * lam;
        if eig2.iter().any(|w| (lam2 - w).abs() < guard) {
            continue;
        }
        evaluate(lam)?;
        produced += 1;
    }
    Ok(worst)
}

fn shifted_det_direct(squared: &CMat, lam2: f64) -> Result<f64> {
    let n = squared.rows();
    let shifted = CMat::from_fn(n, n, |i, j| {
        squared[(i, j)] - if i == j { Complex64::new(lam2, 0.0) } else { Complex64::new(0.0, 0.0) }
    });
    Ok(linalg::determinant(&shifted)?.re)
}

/// Entries of the shifted squared matrix written out as geometric sums;
/// 1-based (i, j):
///   beta^2 r^{i+j-2} sum_{t=0}^{n-1-max(i,j)} r^{2t}
///   + [i=j] (r^{2n-2} - lambda^2) + [i != j] beta r^{2n-2-|i-j|}.
fn shifted_det_columns(p: &ExtremalParams, lam2: f64) -> Result<f64> {
    let (n, r, beta) = (p.n, p.r, p.beta);
    let m = CMat::from_fn(n, n, |i0, j0| {
        let (i, j) = (i0 + 1, j0 + 1);
        let top = n - i.max(j);
        let mut geo = 0.0;
        for t in 0..top {
            geo += r.powi(2 * t as i32);
        }
        let mut v = beta * beta * r.powi((i + j) as i32 - 2) * geo;
        if i == j {
            v += r.powi(2 * n as i32 - 2) - lam2;
        } else {
            v += beta * r.powi(2 * n as i32 - 2 - (i as i32 - j as i32).unsigned_abs() as i32);
        }
        Complex64::new(v, 0.0)
    });
    Ok(linalg::determinant(&m)?.re)
}

/// Chebyshev-recurrence determinant: with
///   mu = lambda^2 + r^{2n-2}(beta-1),
///   gamma = -lambda^2 (r + 1/r) + r^{2n-2}(r + (beta-1)^2/r),
///   y = -r lambda^2 + r^{2n-1},
/// the recurrence V_0 = 1, V_1 = gamma, V_k = gamma V_{k-1} - mu^2 V_{k-2}
/// gives r^n det = V_n + (y - gamma) V_{n-1}, where the difference
/// y - gamma collapses to (lambda^2 - r^{2n-2}(beta-1)^2)/r.
fn shifted_det_chebyshev(p: &ExtremalParams, lam2: f64) -> f64 {
    let (n, r, beta) = (p.n, p.r, p.beta);
    let b = beta - 1.0;
    let q = r.powi(2 * n as i32 - 2);
    let y = -r * lam2 + r.powi(2 * n as i32 - 1);
    if n == 1 {
        return y / r;
    }
    let mu = lam2 + q * b;
    let gamma = -lam2 * (r + 1.0 / r) + q * (r + b * b / r);
    let y_minus_gamma = (lam2 - q * b * b) / r;
    let mut v_prev = 1.0;
    let mut v = gamma;
    for _ in 2..=n {
        let next = gamma * v - mu * mu * v_prev;
        v_prev = v;
        v = next;
    }
    (v + y_minus_gamma * v_prev) / r.powi(n as i32)
}
