//! Geometry of the unit disk: Euclidean and pseudo-hyperbolic metrics,
//! spectra with multiplicities, Blaschke products, and the Stolz-type
//! function `s` that calibrates how far a spectrum leans on the boundary.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance below which a point counts as lying on the spectrum.
pub const COLLISION_TOL: f64 = 1e-12;
/// Tie band for "achieves the minimal pseudo-hyperbolic distance".
pub const STOLZ_TIE_TOL: f64 = 1e-10;

/// One spectrum point with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub lambda: Complex64,
    pub multiplicity: usize,
}

/// Finite multiset of eigenvalues in the closed unit disk.
///
/// Distinct points are kept pairwise separated; repeats are absorbed into
/// multiplicities. The total multiplicity is the degree driving every
/// exponent in the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    points: Vec<SpectrumPoint>,
}

/// Serialization shape for one spectrum point: `{re, im, mult}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumPointJson {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl Spectrum {
    /// Build from (eigenvalue, multiplicity) pairs.
    ///
    /// Points closer than 1e-12 to each other are merged (multiplicities
    /// add). Eigenvalues must lie in the closed disk up to 1e-12 slack.
    pub fn new(points: Vec<(Complex64, usize)>) -> Result<Self> {
        let mut merged: Vec<SpectrumPoint> = Vec::new();
        for (lambda, mult) in points {
            if !lambda.re.is_finite() || !lambda.im.is_finite() {
                return Err(Error::InvalidSpectrum {
                    details: "non-finite eigenvalue".into(),
                });
            }
            if mult == 0 {
                return Err(Error::InvalidSpectrum {
                    details: "zero multiplicity".into(),
                });
            }
            if lambda.norm() > 1.0 + COLLISION_TOL {
                return Err(Error::InvalidSpectrum {
                    details: format!("eigenvalue with |lambda| = {} outside closed disk", lambda.norm()),
                });
            }
            match merged.iter_mut().find(|p| (p.lambda - lambda).norm() <= COLLISION_TOL) {
                Some(p) => p.multiplicity += mult,
                None => merged.push(SpectrumPoint { lambda, multiplicity: mult }),
            }
        }
        if merged.is_empty() {
            return Err(Error::InvalidSpectrum {
                details: "spectrum must contain at least one point".into(),
            });
        }
        Ok(Spectrum { points: merged })
    }

    /// Single point with multiplicity.
    pub fn repeated(lambda: Complex64, multiplicity: usize) -> Result<Self> {
        Spectrum::new(vec![(lambda, multiplicity)])
    }

    /// Collect eigenvalues of a matrix into a spectrum (values within 1e-12
    /// of each other merge into one point with multiplicity).
    pub fn from_eigenvalues(eig: &[Complex64]) -> Result<Self> {
        Spectrum::new(eig.iter().map(|&l| (l, 1)).collect())
    }

    pub fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    /// Total multiplicity (the degree |m|).
    pub fn degree(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// Conjugated spectrum followed by rotation: `{conj(rot) * lambda}`.
    pub fn rotate(&self, rot: Complex64) -> Spectrum {
        Spectrum {
            points: self
                .points
                .iter()
                .map(|p| SpectrumPoint {
                    lambda: p.lambda * rot,
                    multiplicity: p.multiplicity,
                })
                .collect(),
        }
    }

    /// True when every point is unimodular within the tolerance.
    pub fn is_unimodular(&self, tol: f64) -> bool {
        self.points.iter().all(|p| (p.lambda.norm() - 1.0).abs() <= tol)
    }

    /// Parse from the JSON array-of-`{re, im, mult}` format.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<SpectrumPointJson> =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpectrum {
                details: format!("JSON parse failure: {e}"),
            })?;
        Spectrum::new(
            raw.into_iter()
                .map(|p| (Complex64::new(p.re, p.im), p.mult))
                .collect(),
        )
    }

    /// Serialize to the JSON array-of-`{re, im, mult}` format.
    pub fn to_json(&self) -> String {
        let raw: Vec<SpectrumPointJson> = self
            .points
            .iter()
            .map(|p| SpectrumPointJson {
                re: p.lambda.re,
                im: p.lambda.im,
                mult: p.multiplicity,
            })
            .collect();
        serde_json::to_string(&raw).expect("serialization cannot fail")
    }
}

/// Finite Blaschke product, identified with its zeros in the open disk.
///
/// Boundary zeros are rejected; bounds that need them go through limiting
/// formulas instead of Blaschke factors.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidSpectrum {
                details: "Blaschke product must have degree >= 1".into(),
            });
        }
        for z in &zeros {
            if z.norm() >= 1.0 {
                return Err(Error::BoundaryZero { modulus: z.norm() });
            }
        }
        Ok(BlaschkeProduct { zeros })
    }

    /// The product `b_lambda^n` with one repeated zero.
    pub fn repeated(lambda: Complex64, n: usize) -> Result<Self> {
        BlaschkeProduct::new(vec![lambda; n])
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }
}

/// Metric selector for [`dist_to_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    PseudoHyperbolic,
}

/// Euclidean distance |z - w|.
pub fn euclid_dist(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm()
}

/// Pseudo-hyperbolic distance |(z - w) / (1 - conj(z) w)|.
pub fn pseudo_hyp_dist(z: Complex64, w: Complex64) -> Result<f64> {
    let denom = Complex64::new(1.0, 0.0) - z.conj() * w;
    if denom.norm() < 1e-14 {
        return Err(Error::DegeneratePair { denom: denom.norm() });
    }
    Ok(((z - w) / denom).norm())
}

/// Distance from `zeta` to the nearest spectrum point in the chosen metric.
pub fn dist_to_spectrum(zeta: Complex64, sigma: &Spectrum, metric: Metric) -> Result<f64> {
    let euclid_min = sigma
        .points()
        .iter()
        .map(|p| euclid_dist(zeta, p.lambda))
        .fold(f64::INFINITY, f64::min);
    if euclid_min < COLLISION_TOL {
        return Err(Error::SpectrumCollision {
            dist: euclid_min,
            tol: COLLISION_TOL,
        });
    }
    match metric {
        Metric::Euclidean => Ok(euclid_min),
        Metric::PseudoHyperbolic => {
            let mut best = f64::INFINITY;
            for p in sigma.points() {
                best = best.min(pseudo_hyp_dist(zeta, p.lambda)?);
            }
            Ok(best)
        }
    }
}

/// The Stolz-type function `s(zeta, sigma)`.
///
/// Maximum of `(1 - |lambda|^2) / |1 - conj(lambda) zeta|` over the spectrum
/// points that achieve the minimal pseudo-hyperbolic distance to `zeta`
/// (within a 1e-10 tie band). Values lie in [0, 2] for spectra in the closed
/// disk.
pub fn stolz_s(zeta: Complex64, sigma: &Spectrum) -> Result<f64> {
    if zeta.norm() > 1.0 + COLLISION_TOL {
        return Err(Error::OutOfDomain {
            details: format!("stolz_s needs |zeta| <= 1, got {}", zeta.norm()),
        });
    }
    let p_min = dist_to_spectrum(zeta, sigma, Metric::PseudoHyperbolic)?;
    let mut s = 0.0_f64;
    for p in sigma.points() {
        if pseudo_hyp_dist(zeta, p.lambda)? <= p_min + STOLZ_TIE_TOL {
            let denom = (Complex64::new(1.0, 0.0) - p.lambda.conj() * zeta).norm();
            s = s.max((1.0 - p.lambda.norm_sqr()) / denom);
        }
    }
    Ok(s.max(0.0))
}

/// Evaluate the Blaschke product at a point.
pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Result<Complex64> {
    let mut out = Complex64::new(1.0, 0.0);
    for nu in b.zeros() {
        let denom = Complex64::new(1.0, 0.0) - nu.conj() * z;
        if denom.norm() < 1e-14 {
            return Err(Error::PoleHit { denom: denom.norm() });
        }
        out *= (z - nu) / denom;
    }
    Ok(out)
}

/// `d(1, conj(sigma) zeta) = min over lambda of |1 - conj(lambda) zeta|`.
pub fn d1_sigmabar_zeta(zeta: Complex64, sigma: &Spectrum) -> f64 {
    sigma
        .points()
        .iter()
        .map(|p| (Complex64::new(1.0, 0.0) - p.lambda.conj() * zeta).norm())
        .fold(f64::INFINITY, f64::min)
}
