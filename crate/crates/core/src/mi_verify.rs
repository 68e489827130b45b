//! Numerical verification of the mutual-information inequality
//! `I(X;I) − I(Y;I) ≤ a + √(2a ln2)·log2 e` with `a = H(I|X)`, for the
//! smallest faithful instance: one channel use, binary antipodal input, and
//! a one-bit threshold quantizer at the relay.
//!
//! With `X` uniform on `{−√P, +√P}`, `Z = X + W₁`, `Y = X + W₂`
//! (`W₁, W₂ ~ N(0, N)` independent) and `I = 1{Z > threshold}`, every term
//! is computable: the discrete side (`a`, `I(X;I)`) exactly through the
//! Gaussian CDF, and `I(Y;I)` to quadrature accuracy through the mixture
//! densities of `Y`.

use serde::{Deserialize, Serialize};

use crate::bounds::excess_rate;
use crate::error::{Error, Result};
use crate::numerics::{binary_entropy, gaussian_cdf, integrate, SolverConfig};

/// One-bit sign quantizer relay on the symmetric channel (`N₁ = N₂ = N`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizerRelay {
    pub power: f64,
    pub noise_var: f64,
    pub threshold: f64,
}

impl QuantizerRelay {
    pub fn new(power: f64, noise_var: f64, threshold: f64) -> Result<Self> {
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::Domain(format!("power must be positive and finite, got {power}")));
        }
        if !(noise_var > 0.0) || !noise_var.is_finite() {
            return Err(Error::Domain(format!("noise_var must be positive and finite, got {noise_var}")));
        }
        if !threshold.is_finite() {
            return Err(Error::Domain(format!("threshold must be finite, got {threshold}")));
        }
        Ok(QuantizerRelay { power, noise_var, threshold })
    }

    /// P(I=1 | X = +√P) and P(I=1 | X = −√P).
    fn flip_probs(&self) -> (f64, f64) {
        let sp = self.power.sqrt();
        let sigma = self.noise_var.sqrt();
        // Q((t ∓ √P)/σ) = Φ((±√P − t)/σ)
        let p_plus = gaussian_cdf((sp - self.threshold) / sigma);
        let p_minus = gaussian_cdf((-sp - self.threshold) / sigma);
        (p_plus, p_minus)
    }

    /// Mixture density of `Y` with weight `w_plus` on the `+√P` component.
    fn mixture_density(&self, w_plus: f64) -> impl Fn(f64) -> f64 + '_ {
        let sp = self.power.sqrt();
        let var = self.noise_var;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * var).sqrt();
        move |y: f64| {
            let up = (-(y - sp) * (y - sp) / (2.0 * var)).exp();
            let dn = (-(y + sp) * (y + sp) / (2.0 * var)).exp();
            norm * (w_plus * up + (1.0 - w_plus) * dn)
        }
    }

    fn integration_limit(&self) -> f64 {
        // tails beyond √P + 8σ carry < 1e-10 of the relevant mass
        self.power.sqrt() + 8.0 * self.noise_var.sqrt()
    }
}

/// Mutual-information and entropy terms of the inequality at one channel
/// point; `holds` means `lhs ≤ rhs + 1e-6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MIReport {
    /// I(X;I), bits
    pub i_xi: f64,
    /// I(Y;I), bits
    pub i_yi: f64,
    /// a = H(I|X), bits
    pub a: f64,
    /// I(X;I) − I(Y;I)
    pub lhs: f64,
    /// a + √(2a ln2)·log2 e
    pub rhs: f64,
    pub holds: bool,
}

const HOLDS_TOL: f64 = 1e-6;
/// Branches of `I` whose probability underflows carry no information.
const NEGLIGIBLE_MASS: f64 = 1e-300;

fn quad_cfg() -> SolverConfig {
    SolverConfig { abs_tolerance: 1e-12, max_iterations: 200 }
}

/// Evaluates every term of the inequality for one quantizer relay.
///
/// The discrete side is exact: with `p± = P(I=1|X=±√P)`,
/// `a = (H_b(p₊) + H_b(p₋))/2` and `I(X;I) = H_b((p₊+p₋)/2) − a`.
/// `I(Y;I)` is computed in the cancellation-free form
/// `Σᵢ P(I=i) ∫ f(y|i) log2(f(y|i)/f(y)) dy` (a mixture of two Gaussians per
/// conditional, since `Y ⊥ I` given `X`); the entropy-difference form
/// `h(Y) − h(Y|I)` is exposed separately and agrees to quadrature accuracy.
pub fn evaluate_quantizer_relay(q: &QuantizerRelay) -> Result<MIReport> {
    let (p_plus, p_minus) = q.flip_probs();
    let a = 0.5 * (binary_entropy(p_plus)? + binary_entropy(p_minus)?);
    let q1 = 0.5 * (p_plus + p_minus);
    let i_xi = binary_entropy(q1)? - a;

    let cfg = quad_cfg();
    let limit = q.integration_limit();
    let f_y = q.mixture_density(0.5);
    let mut i_yi = 0.0;
    for (p_i, w_plus) in conditional_weights(p_plus, q1) {
        if p_i < NEGLIGIBLE_MASS {
            continue;
        }
        let f_cond = q.mixture_density(w_plus);
        let kl = integrate(
            |y| {
                let c = f_cond(y);
                if c <= 0.0 {
                    0.0
                } else {
                    c * (c / f_y(y)).log2()
                }
            },
            -limit,
            limit,
            &cfg,
        )?;
        i_yi += p_i * kl;
    }

    let lhs = i_xi - i_yi;
    let rhs = excess_rate(a);
    Ok(MIReport { i_xi, i_yi, a, lhs, rhs, holds: lhs <= rhs + HOLDS_TOL })
}

/// `(P(I=i), P(X=+√P | I=i))` for i = 1, 0.
fn conditional_weights(p_plus: f64, q1: f64) -> [(f64, f64); 2] {
    let w1 = if q1 > 0.0 { 0.5 * p_plus / q1 } else { 0.0 };
    let q0 = 1.0 - q1;
    let w0 = if q0 > 0.0 { 0.5 * (1.0 - p_plus) / q0 } else { 0.0 };
    [(q1, w1), (q0, w0)]
}

/// Differential entropy h(Y) of the output mixture, in bits, by quadrature.
pub fn output_entropy(q: &QuantizerRelay) -> Result<f64> {
    let f_y = q.mixture_density(0.5);
    entropy_of(&f_y, q.integration_limit())
}

/// Conditional differential entropy h(Y|I) in bits, by quadrature over the
/// per-symbol conditional mixtures.
pub fn conditional_output_entropy(q: &QuantizerRelay) -> Result<f64> {
    let (p_plus, p_minus) = q.flip_probs();
    let q1 = 0.5 * (p_plus + p_minus);
    let limit = q.integration_limit();
    let mut h = 0.0;
    for (p_i, w_plus) in conditional_weights(p_plus, q1) {
        if p_i < NEGLIGIBLE_MASS {
            continue;
        }
        h += p_i * entropy_of(&q.mixture_density(w_plus), limit)?;
    }
    Ok(h)
}

fn entropy_of(density: &impl Fn(f64) -> f64, limit: f64) -> Result<f64> {
    integrate(
        |y| {
            let p = density(y);
            if p <= 0.0 {
                0.0
            } else {
                -p * p.log2()
            }
        },
        -limit,
        limit,
        &quad_cfg(),
    )
}

/// Batch driver: one report per (SNR, threshold-coefficient) cell.
///
/// Each cell uses `P = snr`, `N = 1` and quantizer threshold
/// `coeff · √P`, so thresholds stay comparable across SNRs. Errors from a
/// cell are annotated with its grid coordinates.
pub fn sweep_quantizer_grid(snr_grid: &[f64], threshold_coeffs: &[f64]) -> Result<Vec<MIReport>> {
    if snr_grid.is_empty() || threshold_coeffs.is_empty() {
        return Err(Error::Domain("sweep grids must be nonempty".to_string()));
    }
    let mut out = Vec::with_capacity(snr_grid.len() * threshold_coeffs.len());
    for &snr in snr_grid {
        for &coeff in threshold_coeffs {
            let cell = (|| {
                let q = QuantizerRelay::new(snr, 1.0, coeff * snr.sqrt())?;
                evaluate_quantizer_relay(&q)
            })()
            .map_err(|e| Error::Domain(format!("at snr={snr}, threshold_coeff={coeff}: {e}")))?;
            out.push(cell);
        }
    }
    Ok(out)
}
