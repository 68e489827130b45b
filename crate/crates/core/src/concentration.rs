//! Verification of the Gaussian blow-up inequality.
//!
//! For `U^n` i.i.d. Gaussian with variance `N` and any set `A` with
//! `Pr(U^n ∈ A) ≥ 2^(−n·aₙ)`, enlarging `A` by Euclidean distance
//! `√n(√(2N·aₙ·ln2) + r)` captures probability at least `1 − 2^(−n·r²/2N)`.
//!
//! Half-spaces admit an exact check: the blow-up of a half-space is the same
//! half-space shifted by the blow-up distance, so both probabilities are
//! one-dimensional Gaussian CDF evaluations. Other sets are checked by
//! seeded Monte Carlo with a three-standard-error guard band and an explicit
//! inconclusive verdict, so that sampling noise can never report a false
//! violation of what is a proven inequality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gaussian_cdf, gaussian_cdf_inv, LN_2};

/// Dimension, per-coordinate noise variance, base-probability exponent and
/// the free radius parameter of the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationParams {
    pub n: u32,
    pub noise_var: f64,
    pub a_n: f64,
    pub r: f64,
}

impl ConcentrationParams {
    pub fn new(n: u32, noise_var: f64, a_n: f64, r: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension n must be at least 1".to_string()));
        }
        if !(noise_var > 0.0) || !noise_var.is_finite() {
            return Err(Error::Domain(format!("noise_var must be positive and finite, got {noise_var}")));
        }
        if !(a_n >= 0.0) || !a_n.is_finite() {
            return Err(Error::Domain(format!("a_n must be nonnegative and finite, got {a_n}")));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("r must be positive and finite, got {r}")));
        }
        Ok(ConcentrationParams { n, noise_var, a_n, r })
    }

    /// `2^(−n·aₙ)`, the minimum base probability the hypothesis demands.
    /// Errors once the exponent would underflow to a meaningless zero.
    pub fn required_base_prob(&self) -> Result<f64> {
        let na = f64::from(self.n) * self.a_n;
        if na > 1000.0 {
            return Err(Error::Domain(format!(
                "n*a_n = {na} makes 2^(-n*a_n) underflow; reduce n or a_n"
            )));
        }
        Ok((-na).exp2())
    }

    /// Blow-up distance `√n(√(2N·aₙ·ln2) + r)`.
    pub fn blowup_radius(&self) -> f64 {
        f64::from(self.n).sqrt() * ((2.0 * self.noise_var * self.a_n * LN_2).sqrt() + self.r)
    }

    /// Probability floor `1 − 2^(−n·r²/2N)` guaranteed for the blown-up set.
    pub fn floor(&self) -> f64 {
        1.0 - (-(f64::from(self.n) * self.r * self.r) / (2.0 * self.noise_var)).exp2()
    }
}

/// A measurable subset of n-dimensional space with a closed-form Euclidean
/// distance-to-set function (membership in the blown-up set is then just a
/// distance comparison, with no nested sampling).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SetDescriptor {
    /// `{ω : ω[axis] ≤ threshold}`
    Halfspace { axis: usize, threshold: f64 },
    /// Closed Euclidean ball.
    Ball { center: Vec<f64>, radius: f64 },
    UnionOfBalls { balls: Vec<(Vec<f64>, f64)> },
}

impl SetDescriptor {
    /// Euclidean distance from `point` to the set (0 inside).
    pub fn distance(&self, point: &[f64]) -> f64 {
        match self {
            SetDescriptor::Halfspace { axis, threshold } => (point[*axis] - threshold).max(0.0),
            SetDescriptor::Ball { center, radius } => ball_distance(point, center, *radius),
            SetDescriptor::UnionOfBalls { balls } => balls
                .iter()
                .map(|(c, rad)| ball_distance(point, c, *rad))
                .fold(f64::INFINITY, f64::min),
        }
    }

    fn validate(&self, n: u32) -> Result<()> {
        let n = n as usize;
        match self {
            SetDescriptor::Halfspace { axis, threshold } => {
                if *axis >= n {
                    return Err(Error::Domain(format!("halfspace axis {axis} out of range for dimension {n}")));
                }
                if threshold.is_nan() {
                    return Err(Error::Domain("halfspace threshold must not be NaN".to_string()));
                }
            }
            SetDescriptor::Ball { center, radius } => {
                if center.len() != n {
                    return Err(Error::Domain(format!(
                        "ball center has dimension {}, expected {n}",
                        center.len()
                    )));
                }
                if !(*radius >= 0.0) {
                    return Err(Error::Domain(format!("ball radius must be nonnegative, got {radius}")));
                }
            }
            SetDescriptor::UnionOfBalls { balls } => {
                if balls.is_empty() {
                    return Err(Error::Domain("union of balls must be nonempty".to_string()));
                }
                for (c, rad) in balls {
                    SetDescriptor::Ball { center: c.clone(), radius: *rad }.validate(n as u32)?;
                }
            }
        }
        Ok(())
    }
}

fn ball_distance(point: &[f64], center: &[f64], radius: f64) -> f64 {
    let dist2: f64 = point.iter().zip(center).map(|(p, c)| (p - c) * (p - c)).sum();
    (dist2.sqrt() - radius).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Exact,
    MonteCarlo,
}

/// Outcome of a check. The exact path is binary; the Monte Carlo path adds
/// `Inconclusive` for estimates within the guard band of the floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Result of one blow-up check: the base and blown-up probabilities (exact
/// or estimated), the theoretical floor, and the verdict. Monte Carlo
/// results carry their standard error, seed and sample count so the
/// estimate is reproducible bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationCheck {
    pub params: ConcentrationParams,
    pub set: SetDescriptor,
    pub base_prob: f64,
    pub blowup_prob: f64,
    pub stderr: Option<f64>,
    pub floor: f64,
    pub verdict: Verdict,
    pub method: CheckMethod,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

impl ConcentrationCheck {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Exact check on the canonical half-space instance.
///
/// Constructs `A = {ω : ω₁ ≤ τ}` with `τ = √N·Φ⁻¹(2^(−n·aₙ))`, so the base
/// probability is exactly `2^(−n·aₙ)`; the blow-up by distance `d` is the
/// half-space shifted by `d`, giving `blowup_prob = Φ(τ/√N + d/√N)` exactly.
/// Holds for every valid parameter point.
pub fn halfspace_check(params: &ConcentrationParams) -> Result<ConcentrationCheck> {
    let base = params.required_base_prob()?;
    let sigma = params.noise_var.sqrt();
    let (threshold, blowup_prob) = if base >= 1.0 {
        // aₙ = 0: the set is everything
        (f64::INFINITY, 1.0)
    } else {
        let z0 = gaussian_cdf_inv(base)?;
        let shift = params.blowup_radius() / sigma;
        (sigma * z0, gaussian_cdf(z0 + shift))
    };
    let floor = params.floor();
    let verdict = if blowup_prob >= floor { Verdict::Pass } else { Verdict::Fail };
    Ok(ConcentrationCheck {
        params: *params,
        set: SetDescriptor::Halfspace { axis: 0, threshold },
        base_prob: base,
        blowup_prob,
        stderr: None,
        floor,
        verdict,
        method: CheckMethod::Exact,
        seed: None,
        samples: None,
    })
}

/// Seeded Monte Carlo check for an arbitrary descriptor.
///
/// Draws i.i.d. centered Gaussian vectors with per-coordinate variance
/// `noise_var` and estimates both the base probability (membership) and the
/// blow-up probability (distance within the blow-up radius) from the same
/// sample. Errors out if the estimated base probability falls short of
/// `2^(−n·aₙ)` by more than three standard errors (computed under the
/// hypothesized base probability): the inequality's hypothesis fails, so no
/// claim is made. Otherwise returns a pass/fail/inconclusive verdict with a
/// three-standard-error guard band around the floor.
pub fn monte_carlo_check(
    params: &ConcentrationParams,
    set: &SetDescriptor,
    samples: u64,
    seed: u64,
) -> Result<ConcentrationCheck> {
    if samples < 1000 {
        return Err(Error::Domain(format!("need at least 1000 samples, got {samples}")));
    }
    set.validate(params.n)?;
    let required = params.required_base_prob()?;
    let radius = params.blowup_radius();
    let sigma = params.noise_var.sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut point = vec![0.0f64; params.n as usize];
    let mut in_set = 0u64;
    let mut in_blowup = 0u64;
    for _ in 0..samples {
        for x in point.iter_mut() {
            let z: f64 = normal.sample(&mut rng);
            *x = sigma * z;
        }
        let d = set.distance(&point);
        if d == 0.0 {
            in_set += 1;
        }
        if d <= radius {
            in_blowup += 1;
        }
    }
    let m = samples as f64;
    let base_est = in_set as f64 / m;
    let base_stderr = (required * (1.0 - required) / m).sqrt();
    if base_est < required - 3.0 * base_stderr {
        return Err(Error::BaseProbabilityTooSmall {
            estimated: base_est,
            required,
            stderr: base_stderr,
        });
    }
    let blow_est = in_blowup as f64 / m;
    let stderr = (blow_est * (1.0 - blow_est) / m).sqrt();
    let floor = params.floor();
    let verdict = if blow_est >= floor + 3.0 * stderr {
        Verdict::Pass
    } else if blow_est < floor - 3.0 * stderr {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    Ok(ConcentrationCheck {
        params: *params,
        set: set.clone(),
        base_prob: base_est,
        blowup_prob: blow_est,
        stderr: Some(stderr),
        floor,
        verdict,
        method: CheckMethod::MonteCarlo,
        seed: Some(seed),
        samples: Some(samples),
    })
}
