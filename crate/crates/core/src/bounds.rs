//! Capacity upper bounds for the Gaussian primitive relay channel.
//!
//! Three bounds are evaluated, all in bits/channel-use and all depending on
//! the channel only through `snr1 = P/N1` (source→relay), `snr2 = P/N2`
//! (source→destination) and the relay link rate `r0`:
//!
//! * [`cutset_bound`] — the classical cut-set bound,
//!   `min( ½log2(1+snr1+snr2), ½log2(1+snr2) + r0 )`.
//! * [`theorem1_bound`] — a tighter bound in which an auxiliary rate
//!   `a ∈ [0, r0]` trades the relay link against an excess term
//!   `a + √(2a ln2)·log2 e`; the bound is the max over `a` of the min of the
//!   `a`-dependent constraints.
//! * [`prop5_bound`] — a further sharpening for `snr1 ≥ snr2` that adds a
//!   scaled variant of the excess constraint.
//!
//! The existential form "there exists some a" is evaluated as a max-min:
//! the relay-link constraint is strictly decreasing in `a` while the excess
//! constraints are strictly increasing, so the inner maximum sits at their
//! unique crossing, clipped to `[0, r0]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{bisect, ExtReal, SolverConfig, LN_2, LOG2_E};

/// Channel description: the two SNRs (extended reals) and the relay link
/// rate in bits/channel-use. Either SNR may be infinite; `r0` is always
/// finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub snr1: ExtReal,
    pub snr2: ExtReal,
    pub r0: f64,
}

impl ChannelParams {
    pub fn new(snr1: ExtReal, snr2: ExtReal, r0: f64) -> Result<Self> {
        if !r0.is_finite() || r0 < 0.0 {
            return Err(Error::Domain(format!("r0 must be finite and nonnegative, got {r0}")));
        }
        Ok(ChannelParams { snr1, snr2, r0 })
    }

    /// Convenience constructor for finite SNRs.
    pub fn finite(snr1: f64, snr2: f64, r0: f64) -> Result<Self> {
        Self::new(ExtReal::finite(snr1)?, ExtReal::finite(snr2)?, r0)
    }
}

/// Which constraint's right-hand side attained the bound value.
///
/// `MultipleAccess` covers both the plain cut-set multiple-access cut and its
/// `- a` refinement in the tighter bounds; the `*Slack` variants are the
/// increasing excess-rate constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActiveConstraint {
    /// ½log2(1 + snr1 + snr2)
    Broadcast,
    /// ½log2(1 + snr2) + r0 − a
    MultipleAccess,
    /// ½log2(1 + max(snr1, snr2)) + a + √(2a ln2)·log2 e
    BestLinkSlack,
    /// ½log2(1 + snr1) + a + √(2a ln2)·log2 e
    RelayLinkSlack,
    /// ½log2(1 + snr1) + ρa + √(ρ(2ρa ln2 + 1 − ρ))·log2 e, ρ = snr2/snr1
    RelayLinkSlackScaled,
}

impl ActiveConstraint {
    pub fn as_str(self) -> &'static str {
        match self {
            ActiveConstraint::Broadcast => "broadcast",
            ActiveConstraint::MultipleAccess => "multiple_access",
            ActiveConstraint::BestLinkSlack => "best_link_slack",
            ActiveConstraint::RelayLinkSlack => "relay_link_slack",
            ActiveConstraint::RelayLinkSlackScaled => "relay_link_slack_scaled",
        }
    }
}

/// A bound value plus diagnostics: the constraint that attained it and the
/// optimizing auxiliary rate `a* ∈ [0, r0]` (0 for cut-set results).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: ExtReal,
    pub active_constraint: ActiveConstraint,
    pub a_star: f64,
}

/// ½log2(1 + x) on extended reals, computed through `ln_1p` for accuracy at
/// small SNR.
pub fn half_log2_1p(x: ExtReal) -> ExtReal {
    match x {
        ExtReal::Finite(v) => ExtReal::Finite(0.5 * v.ln_1p() * LOG2_E),
        ExtReal::Infinity => ExtReal::Infinity,
    }
}

/// The excess-rate term `a + √(2a ln2)·log2 e`.
pub fn excess_rate(a: f64) -> f64 {
    a + (2.0 * a * LN_2).sqrt() * LOG2_E
}

/// The scaled excess-rate term `ρa + √(ρ(2ρa ln2 + 1 − ρ))·log2 e`.
pub fn scaled_excess_rate(a: f64, rho: f64) -> f64 {
    rho * a + (rho * (rho * 2.0 * a * LN_2 + 1.0 - rho)).sqrt() * LOG2_E
}

/// Constraint right-hand sides for a finite-SNR channel.
///
/// `c2_at` is strictly decreasing in `a`; `c3_at`, `c4_at` and `c5_at` are
/// strictly increasing (for `rho` in (0, 1)); `c5_at` is only meaningful in
/// the `snr1 ≥ snr2` regime.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintSet {
    snr1: f64,
    snr2: f64,
    r0: f64,
    rho: f64,
}

impl ConstraintSet {
    /// Requires both SNRs finite. `rho` is `snr2/snr1` (taken as 1 for the
    /// symmetric channel, including the degenerate 0/0 case).
    pub fn new(params: &ChannelParams) -> Result<Self> {
        match (params.snr1, params.snr2) {
            (ExtReal::Finite(s1), ExtReal::Finite(s2)) => {
                let rho = if s1 == s2 { 1.0 } else { s2 / s1 };
                Ok(ConstraintSet { snr1: s1, snr2: s2, r0: params.r0, rho })
            }
            _ => Err(Error::Domain(
                "constraint set requires finite SNRs; infinite points go through the limit paths"
                    .to_string(),
            )),
        }
    }

    fn half_log2_1p(x: f64) -> f64 {
        0.5 * x.ln_1p() * LOG2_E
    }

    /// Broadcast cut: ½log2(1 + snr1 + snr2).
    pub fn c1(&self) -> f64 {
        Self::half_log2_1p(self.snr1 + self.snr2)
    }

    /// Relay-link (multiple-access) constraint at auxiliary rate `a`.
    pub fn c2_at(&self, a: f64) -> f64 {
        Self::half_log2_1p(self.snr2) + self.r0 - a
    }

    /// Best-link excess constraint at `a`.
    pub fn c3_at(&self, a: f64) -> f64 {
        Self::half_log2_1p(self.snr1.max(self.snr2)) + excess_rate(a)
    }

    /// Relay-link excess constraint at `a` (the `snr1 ≥ snr2` regime, where
    /// it coincides with `c3_at`).
    pub fn c4_at(&self, a: f64) -> f64 {
        Self::half_log2_1p(self.snr1) + excess_rate(a)
    }

    /// Scaled excess constraint at `a`.
    pub fn c5_at(&self, a: f64) -> f64 {
        Self::half_log2_1p(self.snr1) + scaled_excess_rate(a, self.rho)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Matching tolerance when attributing the attained value to a constraint.
const ACTIVE_MATCH_TOL: f64 = 1e-9;

fn pick_active(value: ExtReal, candidates: &[(ActiveConstraint, ExtReal)]) -> ActiveConstraint {
    for (c, rhs) in candidates {
        match (value, *rhs) {
            (ExtReal::Infinity, ExtReal::Infinity) => return *c,
            (ExtReal::Finite(v), ExtReal::Finite(r)) if (v - r).abs() <= ACTIVE_MATCH_TOL => {
                return *c
            }
            _ => {}
        }
    }
    // value is always the min of the candidates, so one of them matched;
    // fall back defensively to the first.
    candidates[0].0
}

/// The cut-set bound: `min( ½log2(1+snr1+snr2), ½log2(1+snr2) + r0 )`.
///
/// The multiple-access term is reported as active on ties.
pub fn cutset_bound(params: &ChannelParams) -> BoundResult {
    let broadcast = half_log2_1p(params.snr1.add(params.snr2));
    let multiple_access = half_log2_1p(params.snr2).add_finite(params.r0);
    let (value, active) = if multiple_access <= broadcast {
        (multiple_access, ActiveConstraint::MultipleAccess)
    } else {
        (broadcast, ActiveConstraint::Broadcast)
    };
    BoundResult { value, active_constraint: active, a_star: 0.0 }
}

/// Solves `k = 2a + √(2a ln2)·log2 e` for the unique `a ≥ 0`.
///
/// Substituting `t = √(2a ln2)` turns the equation into the quadratic
/// `t² + t = k ln2`, giving the closed form `a = t²/(2 ln2)` with
/// `t = (−1 + √(1 + 4k ln2))/2`.
pub fn solve_astar(k: f64) -> Result<f64> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::Domain(format!("solve_astar requires finite k >= 0, got {k}")));
    }
    let t = 0.5 * ((1.0 + 4.0 * k * LN_2).sqrt() - 1.0);
    Ok(t * t / (2.0 * LN_2))
}

/// The tighter bound: `min(C1, max over a in [0, r0] of min(C2(a), C3(a)))`.
///
/// The inner maximum is computed analytically. With `K = C2(0) − C3(0)`: if
/// `K ≤ 0` the decreasing constraint already binds at `a = 0`; otherwise the
/// crossing solves `K = 2a + √(2a ln2)·log2 e`, i.e. `a* = solve_astar(K)`
/// (which is at most `K/2 ≤ r0/2`, so the clip to `[0, r0]` is a guard only).
pub fn theorem1_bound(params: &ChannelParams) -> BoundResult {
    match (params.snr1, params.snr2) {
        // C1 and C2 are both infinite: the bound itself is infinite; gaps at
        // this limit point are computed by the gap module's limit formulas.
        (_, ExtReal::Infinity) => BoundResult {
            value: ExtReal::Infinity,
            active_constraint: ActiveConstraint::Broadcast,
            a_star: 0.0,
        },
        // Infinite relay-side SNR: the excess constraint is vacuous and the
        // decreasing constraint is maximized at a = 0.
        (ExtReal::Infinity, ExtReal::Finite(s2)) => {
            let value = ExtReal::Finite(0.5 * s2.ln_1p() * LOG2_E + params.r0);
            BoundResult {
                value,
                active_constraint: ActiveConstraint::MultipleAccess,
                a_star: 0.0,
            }
        }
        (ExtReal::Finite(_), ExtReal::Finite(_)) => {
            let cs = ConstraintSet::new(params).expect("finite params");
            let k = cs.c2_at(0.0) - cs.c3_at(0.0);
            let a_star = if k <= 0.0 {
                0.0
            } else {
                solve_astar(k).expect("k > 0 finite").min(params.r0)
            };
            let inner = cs.c2_at(a_star).min(cs.c3_at(a_star));
            let c1 = cs.c1();
            let value = c1.min(inner);
            let active = pick_active(
                ExtReal::Finite(value),
                &[
                    (ActiveConstraint::Broadcast, ExtReal::Finite(c1)),
                    (ActiveConstraint::MultipleAccess, ExtReal::Finite(cs.c2_at(a_star))),
                    (ActiveConstraint::BestLinkSlack, ExtReal::Finite(cs.c3_at(a_star))),
                ],
            );
            BoundResult { value: ExtReal::Finite(value), active_constraint: active, a_star }
        }
    }
}

/// The sharpened bound for the `snr1 ≥ snr2` regime:
/// `min(C1, max over a in [0, r0] of min(C2(a), C4(a), C5(a)))`.
///
/// The inner maximum is found by bisecting the crossing of the decreasing
/// `C2` with the increasing `min(C4, C5)`, clipped to `[0, r0]`. For the
/// symmetric channel `C5 ≡ C4` and the evaluation reduces exactly to
/// [`theorem1_bound`]. `rho` is only consulted for validation; with both SNRs
/// infinite the bound value is the infinity marker regardless (the ratio
/// matters for gaps, which the gap module computes through limit formulas).
pub fn prop5_bound(params: &ChannelParams, rho: Option<f64>) -> Result<BoundResult> {
    if params.snr1 < params.snr2 {
        return Err(Error::Domain(format!(
            "prop5_bound requires snr1 >= snr2 (relay noise no larger than destination noise), got snr1={}, snr2={}",
            params.snr1, params.snr2
        )));
    }
    if let Some(r) = rho {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Domain(format!("rho must lie in (0, 1], got {r}")));
        }
    }
    match (params.snr1, params.snr2) {
        (ExtReal::Infinity, ExtReal::Infinity) => Ok(BoundResult {
            value: ExtReal::Infinity,
            active_constraint: ActiveConstraint::Broadcast,
            a_star: 0.0,
        }),
        (ExtReal::Infinity, ExtReal::Finite(_)) => Err(Error::Domain(
            "prop5_bound requires both SNRs finite or both infinite".to_string(),
        )),
        (ExtReal::Finite(_), ExtReal::Infinity) => unreachable!("snr1 >= snr2 checked above"),
        (ExtReal::Finite(s1), ExtReal::Finite(s2)) => {
            if s1 == s2 {
                // C5 coincides with C4; reuse the closed-form path so the two
                // bounds agree exactly, relabeling the excess constraint.
                let r = theorem1_bound(params);
                let active = match r.active_constraint {
                    ActiveConstraint::BestLinkSlack => ActiveConstraint::RelayLinkSlack,
                    other => other,
                };
                return Ok(BoundResult { active_constraint: active, ..r });
            }
            let cs = ConstraintSet::new(params).expect("finite params");
            let min45 = |a: f64| cs.c4_at(a).min(cs.c5_at(a));
            let h = |a: f64| cs.c2_at(a) - min45(a);
            let cfg = SolverConfig::default();
            let a_star = if params.r0 == 0.0 || h(0.0) <= 0.0 {
                0.0
            } else if h(params.r0) >= 0.0 {
                params.r0
            } else {
                bisect(h, 0.0, params.r0, &cfg)?
            };
            let inner = cs.c2_at(a_star).min(min45(a_star));
            let c1 = cs.c1();
            let value = c1.min(inner);
            let active = pick_active(
                ExtReal::Finite(value),
                &[
                    (ActiveConstraint::Broadcast, ExtReal::Finite(c1)),
                    (ActiveConstraint::MultipleAccess, ExtReal::Finite(cs.c2_at(a_star))),
                    (ActiveConstraint::RelayLinkSlack, ExtReal::Finite(cs.c4_at(a_star))),
                    (ActiveConstraint::RelayLinkSlackScaled, ExtReal::Finite(cs.c5_at(a_star))),
                ],
            );
            Ok(BoundResult { value: ExtReal::Finite(value), active_constraint: active, a_star })
        }
    }
}
