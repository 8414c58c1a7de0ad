//! Resolvent-norm bounds driven by spectral data, their sharpness
//! certificates, and a randomized no-counterexample audit.
//!
//! Every bound has the shape value = xnorm / (d1 * r^deg) for suitable
//! ingredients; reports carry all of them so a value can be reconstructed
//! and cross-checked.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{self, ExtremalParams, XnormMethod};
use crate::geometry::{self, BlaschkeProduct, Metric, Spectrum};
use crate::linalg::{self, CMat};
use crate::model;

/// Multiplicative grace applied when classifying audit violations,
/// covering the eigensolver's own rounding on both sides.
pub const AUDIT_GRACE: f64 = 1e-9;

/// Which estimate produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Theorem1,
    Theorem3,
    Prop2,
    Theorem4,
    Prop5,
}

/// A bound value together with the ingredients it was assembled from.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub zeta: Complex64,
    /// Pseudo-hyperbolic distance from zeta to the spectrum.
    pub r: f64,
    /// Stolz value at zeta (for the closed-form estimate, the relaxed
    /// weight (1-r^2)/(1-r|zeta|) it implicitly uses).
    pub beta: f64,
    /// min over the spectrum of |1 - conj(lambda) zeta|.
    pub d1: f64,
    /// Total multiplicity of the spectrum.
    pub deg: usize,
    /// Norm of the extremal matrix entering the bound (1 when the bound
    /// needs none).
    pub xnorm: f64,
    pub bound_value: f64,
    pub method: BoundMethod,
    pub xnorm_method: XnormMethod,
}

fn collision_check(zeta: Complex64, sigma: &Spectrum) -> Result<()> {
    let dist = sigma
        .points()
        .iter()
        .map(|p| (zeta - p.lambda).norm())
        .fold(f64::INFINITY, f64::min);
    if dist < geometry::COLLISION_TOL {
        return Err(Error::SpectrumCollision { dist, tol: geometry::COLLISION_TOL });
    }
    Ok(())
}

/// Resolvent bound from the pseudo-hyperbolic distance r, the Stolz
/// value beta, and the extremal norm: xnorm / (d1 * r^deg).
pub fn bound_theorem1(sigma: &Spectrum, zeta: Complex64) -> Result<BoundReport> {
    if zeta.norm() > 1.0 + geometry::COLLISION_TOL {
        return Err(Error::OutOfDomain {
            details: format!("bound needs |zeta| <= 1, got {}", zeta.norm()),
        });
    }
    collision_check(zeta, sigma)?;
    let r = geometry::dist_to_spectrum(zeta, sigma, Metric::PseudoHyperbolic)?.min(1.0);
    let beta = geometry::stolz_s(zeta, sigma)?.clamp(0.0, 2.0);
    let d1 = geometry::d1_sigmabar_zeta(zeta, sigma);
    let deg = sigma.degree();
    let (xnorm, xnorm_method) = extremal::xnorm_auto(&ExtremalParams::new(deg, r, beta)?)?;
    Ok(BoundReport {
        zeta,
        r,
        beta,
        d1,
        deg,
        xnorm,
        bound_value: xnorm / (d1 * r.powi(deg as i32)),
        method: BoundMethod::Theorem1,
        xnorm_method,
    })
}

/// Closed-form relaxation 1 / (d1 * r^deg * (1 - r |zeta|)), valid
/// strictly inside the disk. Always at least the report of
/// [`bound_theorem1`] on the same inputs.
pub fn bound_theorem3(sigma: &Spectrum, zeta: Complex64) -> Result<BoundReport> {
    if zeta.norm() >= 1.0 {
        return Err(Error::OutOfDomain {
            details: format!("closed-form bound needs |zeta| < 1, got {}", zeta.norm()),
        });
    }
    collision_check(zeta, sigma)?;
    let r = geometry::dist_to_spectrum(zeta, sigma, Metric::PseudoHyperbolic)?.min(1.0);
    let d1 = geometry::d1_sigmabar_zeta(zeta, sigma);
    let deg = sigma.degree();
    let cap = 1.0 / (1.0 - r * zeta.norm());
    Ok(BoundReport {
        zeta,
        r,
        beta: (1.0 - r * r) * cap,
        d1,
        deg,
        xnorm: cap,
        bound_value: cap / (d1 * r.powi(deg as i32)),
        method: BoundMethod::Theorem3,
        xnorm_method: XnormMethod::ClosedForm,
    })
}

/// For unimodular spectra the resolvent is bounded by the reciprocal
/// Euclidean distance, anywhere off the spectrum.
pub fn bound_prop2(sigma: &Spectrum, zeta: Complex64) -> Result<BoundReport> {
    const UNIMODULAR_TOL: f64 = 1e-10;
    if !sigma.is_unimodular(UNIMODULAR_TOL) {
        let worst = sigma
            .points()
            .iter()
            .map(|p| p.lambda.norm())
            .fold(1.0f64, |acc, m| if (m - 1.0).abs() > (acc - 1.0).abs() { m } else { acc });
        return Err(Error::NotUnimodular { modulus: worst });
    }
    collision_check(zeta, sigma)?;
    let dist = geometry::dist_to_spectrum(zeta, sigma, Metric::Euclidean)?;
    let r = geometry::dist_to_spectrum(zeta, sigma, Metric::PseudoHyperbolic)?;
    // For unimodular lambda, |1 - conj(lambda) zeta| = |zeta - lambda|,
    // so d1 doubles as the Euclidean distance and 1/d1 is the bound.
    let d1 = geometry::d1_sigmabar_zeta(zeta, sigma);
    Ok(BoundReport {
        zeta,
        r,
        beta: 0.0,
        d1,
        deg: sigma.degree(),
        xnorm: 1.0,
        bound_value: 1.0 / dist,
        method: BoundMethod::Prop2,
        xnorm_method: XnormMethod::ClosedForm,
    })
}

/// The extremal resolvent supremum at radius r, with its witness.
#[derive(Debug, Clone)]
pub struct SupResolvent {
    pub value: f64,
    /// Model matrix attaining the supremum.
    pub witness: CMat,
    /// Repeated eigenvalue of the witness.
    pub lambda_max: f64,
    /// Weight of the extremal matrix whose norm enters the value.
    pub beta_max: f64,
    /// Relative gap of the witness certificate.
    pub certificate_gap: f64,
}

/// Supremum of d(1, conj(sigma) |zeta|) ||R(|zeta|, T)|| over contractions
/// with spectrum at pseudo-hyperbolic distance r from zeta:
/// value = ||X_{r, beta_max}|| / r^n with beta_max = (1-r^2)/(1-r|zeta|).
///
/// The witness is the model matrix with the single repeated eigenvalue
/// (|zeta|-r)/(1-r|zeta|); the certificate evaluates its resolvent norm
/// and compares against the value.
pub fn sup_resolvent_r(zeta: Complex64, r: f64, n: usize) -> Result<SupResolvent> {
    if zeta.norm() >= 1.0 {
        return Err(Error::OutOfDomain {
            details: format!("supremum needs |zeta| < 1, got {}", zeta.norm()),
        });
    }
    if !(0.0..1.0).contains(&r) || r == 0.0 {
        return Err(Error::OutOfDomain { details: format!("radius must lie in (0,1), got {r}") });
    }
    if n == 0 {
        return Err(Error::OutOfDomain { details: "degree must be at least 1".into() });
    }
    let zmod = zeta.norm();
    let beta_max = (1.0 - r * r) / (1.0 - r * zmod);
    let lambda_max = (zmod - r) / (1.0 - r * zmod);
    let (xnorm, _) = extremal::xnorm_auto(&ExtremalParams::new(n, r, beta_max)?)?;
    let value = xnorm / r.powi(n as i32);
    if !value.is_finite() {
        return Err(Error::OutOfDomain {
            details: format!("supremum overflows double precision at r={r}, n={n}"),
        });
    }
    let b = BlaschkeProduct::repeated(Complex64::new(lambda_max, 0.0), n)?;
    let witness = model::model_matrix(&b)?;
    let resolvent = linalg::resolvent(&witness, Complex64::new(zmod, 0.0))?;
    let d1 = (1.0 - lambda_max * zmod).abs();
    let attained = d1 * linalg::spectral_norm(&resolvent)?;
    let certificate_gap = (attained - value).abs() / value;
    assert!(
        certificate_gap < 1e-8,
        "witness certificate off by {certificate_gap:e} at r={r}, n={n}"
    );
    Ok(SupResolvent { value, witness, lambda_max, beta_max, certificate_gap })
}

/// Upper bound for the boundary condition-number constant, with its
/// degree-only cap.
#[derive(Debug, Clone, Serialize)]
pub struct DsBound {
    /// max(1, ||X_{1, s}||) for the Stolz value s of the inner spectrum.
    pub value: f64,
    /// cot(pi / (4 n1)), the worst case over all inner spectra.
    pub cap: f64,
    /// The Stolz value used.
    pub stolz: f64,
}

/// Bound on d(zeta, sigma) ||R(zeta, T)|| at a unimodular point for
/// spectra split off a polynomial factor of degree n1 inside the disk.
pub fn ds_constant_bound(n1: usize, sigma1: &Spectrum, zeta: Complex64) -> Result<DsBound> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnimodularZeta { modulus: zeta.norm() });
    }
    if n1 == 0 {
        return Err(Error::OutOfDomain { details: "degree must be at least 1".into() });
    }
    if sigma1.points().iter().any(|p| p.lambda.norm() >= 1.0) {
        return Err(Error::InvalidSpectrum {
            details: "inner spectrum must lie strictly inside the disk".into(),
        });
    }
    collision_check(zeta, sigma1)?;
    let stolz = geometry::stolz_s(zeta, sigma1)?.clamp(0.0, 2.0);
    let (xnorm, _) = extremal::xnorm_auto(&ExtremalParams::new(n1, 1.0, stolz)?)?;
    let cap = 1.0 / (std::f64::consts::PI / (4.0 * n1 as f64)).tan();
    Ok(DsBound { value: xnorm.max(1.0), cap, stolz })
}

/// The supremum of the boundary constant with its block witness.
#[derive(Debug, Clone)]
pub struct DsSup {
    /// ||X_{1, 1+rho1}|| of size n1.
    pub value: f64,
    /// Block-diagonal resolvent at 1 attaining the supremum.
    pub witness: CMat,
    /// Relative gap of the witness certificate.
    pub certificate_gap: f64,
}

/// Supremum of d(1, sigma) ||R(1, T)|| over the family with an
/// n1-fold eigenvalue at rho1 and an n2-fold eigenvalue at -1:
/// equals ||X_{1, 1+rho1}||, attained by the block model.
pub fn ds_constant_sup(n1: usize, n2: usize, rho1: f64) -> Result<DsSup> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::OutOfDomain { details: "block sizes must be at least 1".into() });
    }
    if !(0.0..1.0).contains(&rho1) {
        return Err(Error::OutOfDomain {
            details: format!("interior eigenvalue must lie in [0,1), got {rho1}"),
        });
    }
    let (value, _) = extremal::xnorm_auto(&ExtremalParams::new(n1, 1.0, 1.0 + rho1)?)?;
    // The inner block always dominates the boundary block's (1-rho1)/2.
    assert!(value >= (1.0 - rho1) / 2.0);
    let witness = model::block_model_resolvent(n1, rho1, n2, Complex64::new(1.0, 0.0))?;
    let d_sigma = 1.0 - rho1;
    let attained = d_sigma * linalg::spectral_norm(&witness)?;
    let certificate_gap = (attained - value).abs() / value;
    assert!(
        certificate_gap < 1e-8,
        "block witness certificate off by {certificate_gap:e} at n1={n1}, rho1={rho1}"
    );
    Ok(DsSup { value, witness, certificate_gap })
}

/// Sharpness check: the resolvent norm of the extremal contraction with
/// an n-fold eigenvalue at lambda must attain its bound at real zeta.
/// Returns the relative gap |bound - actual| / bound.
pub fn certify_sharpness_theorem1(lambda: f64, n: usize, zeta: f64) -> Result<f64> {
    if lambda.abs() >= 1.0 || zeta.abs() > 1.0 {
        return Err(Error::OutOfDomain {
            details: format!("need lambda in (-1,1) and zeta in [-1,1], got ({lambda}, {zeta})"),
        });
    }
    let sigma = Spectrum::repeated(Complex64::new(lambda, 0.0), n)?;
    let report = bound_theorem1(&sigma, Complex64::new(zeta, 0.0))?;
    let t_star = model::extremal_t_star(lambda, n)?;
    let resolvent = linalg::resolvent(&t_star, Complex64::new(zeta, 0.0))?;
    let actual = linalg::spectral_norm(&resolvent)?;
    Ok((report.bound_value - actual).abs() / report.bound_value)
}

/// Outcome of the randomized no-counterexample audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Trials where the measured resolvent norm exceeded a bound.
    pub violations: usize,
    /// Largest actual/bound ratio seen per estimate.
    pub theorem1_max_ratio: f64,
    pub theorem3_max_ratio: f64,
    /// Trials with actual/bound above 0.9 for the sharp estimate.
    pub theorem1_tight_count: usize,
    /// Trials where the unimodular-spectrum estimate applied.
    pub prop2_applicable: usize,
    pub prop2_max_ratio: f64,
}

struct TrialOutcome {
    violated: bool,
    ratio1: f64,
    ratio3: f64,
    prop2_ratio: Option<f64>,
}

fn sample_normal(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let m = (-2.0 * u1.ln()).sqrt();
    let a = std::f64::consts::TAU * u2;
    (m * a.cos(), m * a.sin())
}

fn audit_trial(n: usize, seed: u64, trial: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial + 1);
    let g = CMat::from_fn(n, n, |_, _| {
        let (re, im) = sample_normal(&mut rng);
        Complex64::new(re, im)
    });
    let scale = linalg::spectral_norm(&g)? * (1.0 + AUDIT_GRACE);
    let t = g.scale(Complex64::new(1.0 / scale, 0.0));
    let eig = linalg::eigenvalues(&t)?;
    let sigma = Spectrum::from_eigenvalues(&eig)?;
    let zeta = sample_zeta(&mut rng, &sigma)?;
    let resolvent = linalg::resolvent(&t, zeta)?;
    let actual = linalg::spectral_norm(&resolvent)?;
    let b1 = bound_theorem1(&sigma, zeta)?;
    let b3 = bound_theorem3(&sigma, zeta)?;
    let ratio1 = actual / b1.bound_value;
    let ratio3 = actual / b3.bound_value;
    let mut violated =
        ratio1 > 1.0 + AUDIT_GRACE || ratio3 > 1.0 + AUDIT_GRACE || b3.bound_value < b1.bound_value * (1.0 - 1e-12);
    let prop2_ratio = if sigma.is_unimodular(1e-10) {
        let b2 = bound_prop2(&sigma, zeta)?;
        let ratio = actual / b2.bound_value;
        violated = violated || ratio > 1.0 + AUDIT_GRACE;
        Some(ratio)
    } else {
        None
    };
    Ok(TrialOutcome { violated, ratio1, ratio3, prop2_ratio })
}

fn sample_zeta(rng: &mut ChaCha8Rng, sigma: &Spectrum) -> Result<Complex64> {
    for _ in 0..10_000 {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        let zeta = Complex64::from_polar(u.sqrt(), std::f64::consts::TAU * v);
        let sep = sigma
            .points()
            .iter()
            .map(|p| (zeta - p.lambda).norm())
            .fold(f64::INFINITY, f64::min);
        if sep < 1e-6 {
            continue;
        }
        if geometry::dist_to_spectrum(zeta, sigma, Metric::PseudoHyperbolic)? >= 0.05 {
            return Ok(zeta);
        }
    }
    Err(Error::NoConvergence { iterations: 10_000 })
}

/// Samples random complex Gaussian contractions and verifies every
/// applicable bound against the measured resolvent norm. Trials use
/// independent, stream-indexed generators, so the summary is identical
/// for a given seed regardless of thread count.
pub fn random_contraction_audit(n: usize, trials: usize, seed: u64) -> Result<AuditSummary> {
    Ok(random_contraction_audit_detailed(n, trials, seed)?.0)
}

/// Like [`random_contraction_audit`], additionally returning the
/// per-trial actual/bound ratios for the sharp estimate, in trial order.
pub fn random_contraction_audit_detailed(
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<(AuditSummary, Vec<f64>)> {
    if n == 0 || n > 16 {
        return Err(Error::OutOfDomain {
            details: format!("audit supports sizes 1..=16, got {n}"),
        });
    }
    if trials == 0 {
        return Err(Error::OutOfDomain { details: "need at least one trial".into() });
    }
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| audit_trial(n, seed, t))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = AuditSummary {
        n,
        trials,
        seed,
        violations: 0,
        theorem1_max_ratio: 0.0,
        theorem3_max_ratio: 0.0,
        theorem1_tight_count: 0,
        prop2_applicable: 0,
        prop2_max_ratio: 0.0,
    };
    for o in &outcomes {
        if o.violated {
            summary.violations += 1;
        }
        summary.theorem1_max_ratio = summary.theorem1_max_ratio.max(o.ratio1);
        summary.theorem3_max_ratio = summary.theorem3_max_ratio.max(o.ratio3);
        if o.ratio1 > 0.9 {
            summary.theorem1_tight_count += 1;
        }
        if let Some(p2) = o.prop2_ratio {
            summary.prop2_applicable += 1;
            summary.prop2_max_ratio = summary.prop2_max_ratio.max(p2);
        }
    }
    let ratios = outcomes.iter().map(|o| o.ratio1).collect();
    Ok((summary, ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(lambda: Complex64, mult: usize) -> Spectrum {
        Spectrum::repeated(lambda, mult).unwrap()
    }

    #[test]
    fn theorem1_single_point_telescopes() {
        let sigma = single(c(0.3, 0.0), 1);
        let report = bound_theorem1(&sigma, c(0.8, 0.0)).unwrap();
        assert!((report.bound_value - 1.0 / 0.5).abs() < 1e-12);
        assert_eq!(report.deg, 1);
        let rebuilt = report.xnorm / (report.d1 * report.r.powi(report.deg as i32));
        assert!((rebuilt - report.bound_value).abs() < 1e-12 * report.bound_value);
    }

    #[test]
    fn theorem1_recovers_reciprocal_power() {
        for &(r, n) in &[(0.3, 4usize), (0.5, 6), (0.8, 3)] {
            let sigma = single(c(-r, 0.0), n);
            let report = bound_theorem1(&sigma, c(0.0, 0.0)).unwrap();
            let expected = r.powi(-(n as i32));
            assert!(
                (report.bound_value - expected).abs() < 1e-12 * expected,
                "r={r}, n={n}"
            );
            assert_eq!(report.xnorm_method, XnormMethod::ClosedForm);
        }
    }

    #[test]
    fn theorem1_rejects_outside_disk_and_collisions() {
        let sigma = single(c(0.3, 0.0), 2);
        assert!(matches!(
            bound_theorem1(&sigma, c(1.5, 0.0)),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            bound_theorem1(&sigma, c(0.3, 0.0)),
            Err(Error::SpectrumCollision { .. })
        ));
    }

    #[test]
    fn theorem3_example_value() {
        let sigma = single(c(0.9, 0.0), 1);
        let report = bound_theorem3(&sigma, c(0.5, 0.0)).unwrap();
        let p = 0.4 / 0.55;
        let expected = 1.0 / (0.55 * p * (1.0 - 0.5 * p));
        assert!((report.bound_value - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn theorem3_dominates_theorem1() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let lam = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)) * 0.7;
            let mult = rng.gen_range(1..4);
            let sigma = single(lam, mult);
            let zeta = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)) * 0.8;
            if (zeta - lam).norm() < 0.05 {
                continue;
            }
            let b1 = bound_theorem1(&sigma, zeta).unwrap();
            let b3 = bound_theorem3(&sigma, zeta).unwrap();
            assert!(b3.bound_value >= b1.bound_value * (1.0 - 1e-12));
        }
    }

    #[test]
    fn prop2_examples() {
        let sigma = Spectrum::new(vec![(c(1.0, 0.0), 1), (c(-1.0, 0.0), 1)]).unwrap();
        let report = bound_prop2(&sigma, c(0.0, 0.0)).unwrap();
        assert!((report.bound_value - 1.0).abs() < 1e-15);

        let one = single(c(1.0, 0.0), 1);
        let shifted = bound_prop2(&one, c(1.25, 0.0)).unwrap();
        assert!((shifted.bound_value - 4.0).abs() < 1e-12);

        assert!(matches!(
            bound_prop2(&single(c(0.5, 0.0), 1), c(0.0, 0.0)),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn prop2_equality_for_unimodular_diagonal() {
        let diag = CMat::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)]);
        let sigma = Spectrum::new(vec![
            (c(1.0, 0.0), 1),
            (c(-1.0, 0.0), 1),
            (c(0.0, 1.0), 1),
        ])
        .unwrap();
        let zeta = c(2.0, 0.0);
        let actual = linalg::spectral_norm(&linalg::resolvent(&diag, zeta).unwrap()).unwrap();
        let report = bound_prop2(&sigma, zeta).unwrap();
        assert!((actual - report.bound_value).abs() < 1e-10);
        assert!((report.bound_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theorem1_rotation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let sigma = Spectrum::new(vec![
                (c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6)), 1),
                (c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6)), 2),
            ])
            .unwrap();
            let zeta = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.7..0.7));
            if zeta.norm() < 1e-3 {
                continue;
            }
            let sep = sigma
                .points()
                .iter()
                .map(|p| (zeta - p.lambda).norm())
                .fold(f64::INFINITY, f64::min);
            if sep < 0.05 {
                continue;
            }
            let direct = bound_theorem1(&sigma, zeta).unwrap().bound_value;
            let rot = zeta / zeta.norm();
            let rotated = sigma.rotate(rot.conj());
            let reduced =
                bound_theorem1(&rotated, c(zeta.norm(), 0.0)).unwrap().bound_value;
            assert!(
                (direct - reduced).abs() <= 1e-10 * direct,
                "direct {direct} vs reduced {reduced}"
            );
        }
    }

    #[test]
    fn sup_resolvent_at_origin_is_reciprocal_power() {
        for &(r, n) in &[(0.3, 3usize), (0.5, 5), (0.7, 2)] {
            let sup = sup_resolvent_r(c(0.0, 0.0), r, n).unwrap();
            let expected = r.powi(-(n as i32));
            assert!((sup.value - expected).abs() <= 1e-10 * expected);
            assert!((sup.lambda_max + r).abs() < 1e-15);
            assert!(sup.certificate_gap < 1e-8);
        }
    }

    #[test]
    fn sup_resolvent_example_mid_disk() {
        let sup = sup_resolvent_r(c(0.5, 0.0), 0.5, 4).unwrap();
        assert!((sup.beta_max - 1.0).abs() < 1e-15);
        let xnorm = extremal::xnorm_oracle(&ExtremalParams::new(4, 0.5, 1.0).unwrap()).unwrap();
        assert!((sup.value - xnorm * 16.0).abs() < 1e-8 * sup.value);
    }

    #[test]
    fn ds_bound_values() {
        for n1 in 1..=5usize {
            let sigma1 = single(c(0.0, 0.0), n1);
            let out = ds_constant_bound(n1, &sigma1, c(1.0, 0.0)).unwrap();
            let expected = 0.5 / (std::f64::consts::PI / (4.0 * n1 as f64 + 2.0)).sin();
            assert!((out.value - expected.max(1.0)).abs() < 1e-9);
            assert!(out.cap >= out.value - 1e-12);
            assert!((out.stolz - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            ds_constant_bound(2, &single(c(0.3, 0.0), 2), c(0.5, 0.0)),
            Err(Error::NotUnimodularZeta { .. })
        ));
    }

    #[test]
    fn ds_sup_certificates() {
        let out = ds_constant_sup(1, 1, 0.0).unwrap();
        assert!((out.value - 1.0).abs() < 1e-10);
        assert!(out.certificate_gap < 1e-8);

        let out2 = ds_constant_sup(2, 3, 0.5).unwrap();
        let xnorm = extremal::xnorm_oracle(&ExtremalParams::new(2, 1.0, 1.5).unwrap()).unwrap();
        assert!((out2.value - xnorm).abs() < 1e-9 * xnorm);
        assert!(out2.certificate_gap < 1e-8);
    }

    #[test]
    fn sharpness_certificates() {
        assert!(certify_sharpness_theorem1(0.3, 4, 0.0).unwrap() < 1e-8);
        assert!(certify_sharpness_theorem1(-0.5, 3, 0.9).unwrap() < 1e-8);
        let gap = certify_sharpness_theorem1(0.0, 2, 1.0).unwrap();
        assert!(gap < 1e-8);
        // The 2x2 shift at zeta = 1 attains the golden ratio.
        let shift = model::extremal_t_star(0.0, 2).unwrap();
        let actual =
            linalg::spectral_norm(&linalg::resolvent(&shift, c(1.0, 0.0)).unwrap()).unwrap();
        assert!((actual - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn audit_small_run_is_clean_and_deterministic() {
        let a = random_contraction_audit(4, 200, 42).unwrap();
        assert_eq!(a.violations, 0);
        assert!(a.theorem1_max_ratio <= 1.0 + AUDIT_GRACE);
        let b = random_contraction_audit(4, 200, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn audit_rejects_oversize() {
        assert!(matches!(
            random_contraction_audit(17, 10, 1),
            Err(Error::OutOfDomain { .. })
        ));
    }
}
