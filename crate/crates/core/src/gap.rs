//! Gap analysis: how much the tighter bounds improve on the cut-set bound.
//!
//! For finite SNRs the gap is a plain difference of bound values. At the
//! infinite-SNR limit points both bounds are infinite, so gaps are evaluated
//! through limit formulas for the *differences* between constraints — never
//! by subtracting two infinities. Anchoring every constraint at the
//! multiple-access term `C2(0)` leaves only finite quantities:
//!
//! ```text
//! δ      = lim (C1    − C2(0)) = ½log2(1 + 1/ρ) − r0
//! D2(a)  =     (C2(a) − C2(0)) = −a
//! D4(a)  = lim (C4(a) − C2(0)) = ½log2(1/ρ) − r0 + a + √(2a ln2)·log2 e
//! D5(a)  = lim (C5(a) − C2(0)) = ½log2(1/ρ) − r0 + ρa + √(ρ(2ρa ln2+1−ρ))·log2 e
//! ```
//!
//! with `ρ = snr2/snr1 ∈ (0, 1]` the SNR ratio along the limit direction.
//! The gap is then `min(δ, 0) − min(δ, max-min of the D's)`. For the
//! symmetric direction (`ρ = 1`) the inner optimizer has the closed form
//! `solve_astar(r0)`, and the supremum of the gap over all channels is
//! attained there at `r0 = 0.5`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    cutset_bound, excess_rate, prop5_bound, scaled_excess_rate, solve_astar, theorem1_bound,
    ChannelParams,
};
use crate::error::{Error, Result};
use crate::numerics::{bisect, ExtReal, SolverConfig, LN_2};

/// Which improved bound the gap is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVariant {
    Theorem1,
    Prop5,
}

impl GapVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            GapVariant::Theorem1 => "theorem1",
            GapVariant::Prop5 => "prop5",
        }
    }
}

/// Pointwise gap between the cut-set bound and an improved bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub params: ChannelParams,
    pub cutset: ExtReal,
    pub improved: ExtReal,
    pub gap: f64,
    pub variant: GapVariant,
}

/// Gap at a channel point.
///
/// `rho` is only consulted when both SNRs are infinite: it fixes the SNR
/// ratio `snr2/snr1` along the limit direction, which is indeterminate at
/// `(∞, ∞)`. The theorem1 variant defaults to the symmetric direction
/// (`ρ = 1`, where its supremum lives); the prop5 variant requires it.
pub fn gap(params: &ChannelParams, variant: GapVariant, rho: Option<f64>) -> Result<GapReport> {
    let cut = cutset_bound(params);
    let improved = match variant {
        GapVariant::Theorem1 => theorem1_bound(params),
        GapVariant::Prop5 => prop5_bound(params, rho)?,
    };
    let gap = match (cut.value, improved.value) {
        (ExtReal::Finite(c), ExtReal::Finite(i)) => c - i,
        (ExtReal::Infinity, ExtReal::Infinity) => match (params.snr1, params.snr2) {
            (ExtReal::Infinity, ExtReal::Infinity) => {
                let rho = match (variant, rho) {
                    (GapVariant::Theorem1, r) => r.unwrap_or(1.0),
                    (GapVariant::Prop5, Some(r)) => r,
                    (GapVariant::Prop5, None) => {
                        return Err(Error::IndeterminateLimit(
                            "gap at (inf, inf) under the prop5 variant needs the SNR ratio rho = snr2/snr1"
                                .to_string(),
                        ))
                    }
                };
                if !(rho > 0.0 && rho <= 1.0) {
                    return Err(Error::Domain(format!("rho must lie in (0, 1], got {rho}")));
                }
                limit_gap_both_infinite(params.r0, rho, variant)?
            }
            // snr2 infinite with snr1 finite: the broadcast cut binds in both
            // bounds along the limit, so they coincide.
            _ => 0.0,
        },
        // cut-set infinite requires snr2 = ∞, which makes the improved bound
        // infinite too (and conversely improved ≤ cut-set).
        _ => unreachable!("bound values cannot mix finite and infinite here"),
    };
    Ok(GapReport { params: *params, cutset: cut.value, improved: improved.value, gap, variant })
}

/// Gap along the `(∞, ∞)` limit direction with SNR ratio `rho`, anchored at
/// the multiple-access constraint as described in the module docs.
fn limit_gap_both_infinite(r0: f64, rho: f64, variant: GapVariant) -> Result<f64> {
    let delta = 0.5 * (1.0 + 1.0 / rho).log2() - r0;
    let c = 0.5 * (1.0 / rho).log2() - r0;
    let inner = if r0 == 0.0 {
        0f64.min(c)
    } else if c >= 0.0 {
        // the decreasing constraint binds for every a; its max is at a = 0
        0.0
    } else {
        match variant {
            // For the symmetric direction the scaled constraint coincides
            // with the plain one, so prop5 shares theorem1's closed form:
            // the crossing of −a with c + excess(a) solves
            // −c = 2a + √(2a ln2)·log2 e.
            GapVariant::Theorem1 => -solve_astar(-c)?,
            GapVariant::Prop5 if rho == 1.0 => -solve_astar(-c)?,
            GapVariant::Prop5 => {
                let d45 = |a: f64| c + excess_rate(a).min(scaled_excess_rate(a, rho));
                let h = |a: f64| -a - d45(a);
                if h(r0) >= 0.0 {
                    d45(r0)
                } else {
                    let a = bisect(h, 0.0, r0, &SolverConfig::default())?;
                    (-a).min(d45(a))
                }
            }
        }
    };
    Ok(delta.min(0.0) - delta.min(inner))
}

/// Grid over which [`max_gap_search`] probes the gap: a finite log-spaced
/// SNR grid, an `r0` grid, and optionally the symbolic `(∞, ∞)` point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub snr_values: Vec<f64>,
    pub r0_values: Vec<f64>,
    pub include_limit_point: bool,
}

impl GridSpec {
    /// Log-spaced SNRs between `snr_min` and `snr_max`, and `r0` from 0 to
    /// `r0_max` in `r0_points` uniform steps plus a 1e-3 refinement around
    /// 0.5 (where the supremum sits).
    pub fn new(snr_min: f64, snr_max: f64, snr_points: usize, r0_max: f64, r0_points: usize) -> Result<Self> {
        if !(snr_min > 0.0 && snr_max >= snr_min) || snr_points < 1 {
            return Err(Error::Domain("SNR grid must be positive with at least one point".to_string()));
        }
        if !(r0_max >= 0.0 && r0_max.is_finite()) || r0_points < 1 {
            return Err(Error::Domain("r0 grid must be nonnegative with at least one point".to_string()));
        }
        let snr_values = if snr_points == 1 {
            vec![snr_min]
        } else {
            let (l0, l1) = (snr_min.log10(), snr_max.log10());
            (0..snr_points)
                .map(|i| 10f64.powf(l0 + (l1 - l0) * i as f64 / (snr_points - 1) as f64))
                .collect()
        };
        // Build r0 values in integer thousandths so that the coarse grid, the
        // refinement and the point 0.5 itself dedup exactly.
        let mut thousandths = BTreeSet::new();
        let top = (r0_max * 1000.0).round() as u64;
        for i in 0..r0_points {
            let t = if r0_points == 1 {
                0
            } else {
                (top as f64 * i as f64 / (r0_points - 1) as f64).round() as u64
            };
            thousandths.insert(t);
        }
        for t in 400..=600u64 {
            if t <= top {
                thousandths.insert(t);
            }
        }
        let r0_values = thousandths.into_iter().map(|t| t as f64 / 1000.0).collect();
        Ok(GridSpec { snr_values, r0_values, include_limit_point: true })
    }
}

impl Default for GridSpec {
    /// 17 SNR points every half decade from 1e-2 to 1e6, `r0` over [0, 1]
    /// with step 0.02 refined to 1e-3 near 0.5, plus the limit point.
    fn default() -> Self {
        GridSpec::new(1e-2, 1e6, 17, 1.0, 51).expect("valid default grid")
    }
}

/// The largest gap found over a [`GridSpec`] and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapSupremum {
    pub value: f64,
    pub argmax: ChannelParams,
}

/// Maximizes the gap over the grid plus (when enabled) the `(∞, ∞)` limit
/// point. For the prop5 variant, finite pairs are restricted to its
/// `snr1 ≥ snr2` regime and the limit point uses the symmetric ratio.
///
/// Probed points are independent and merged by a commutative max, so the
/// scan order does not affect the result.
pub fn max_gap_search(variant: GapVariant, grid: &GridSpec) -> Result<GapSupremum> {
    let mut best: Option<GapSupremum> = None;
    let mut consider = |value: f64, params: ChannelParams| {
        if best.map_or(true, |b| value > b.value) {
            best = Some(GapSupremum { value, argmax: params });
        }
    };
    for &r0 in &grid.r0_values {
        if grid.include_limit_point {
            let params = ChannelParams::new(ExtReal::Infinity, ExtReal::Infinity, r0)?;
            let rho = match variant {
                GapVariant::Theorem1 => None,
                GapVariant::Prop5 => Some(1.0),
            };
            consider(gap(&params, variant, rho)?.gap, params);
        }
        for &s1 in &grid.snr_values {
            for &s2 in &grid.snr_values {
                if variant == GapVariant::Prop5 && s1 < s2 {
                    continue;
                }
                let params = ChannelParams::finite(s1, s2, r0)?;
                consider(gap(&params, variant, None)?.gap, params);
            }
        }
    }
    best.ok_or_else(|| Error::Domain("empty search grid".to_string()))
}

/// Closed-form optimizer of the sharpened-bound crossing equation
///
/// ```text
/// ΔC = (u+1)a + √(u(2ua ln2 + 1 − u))·log2 e,
/// ΔC = ½log2(1+x1+x2) − ½log2(1+x1),  u = x2/x1,
/// ```
///
/// obtained by substituting `b = 2a ln2` and solving the resulting quadratic
/// (taking the root on the branch where the pre-squaring sign condition
/// holds):
///
/// ```text
/// a = [ (u+1)L + 2u² − √( ((u+1)L + 2u²)² − (u+1)²(L² + 4u(u−1)) ) ] / (2(u+1)² ln2),
/// L = ln(1 + x2/(1+x1)).
/// ```
///
/// At `x1 = x2 → ∞` this tends to `(ln2 + 1 − √(2 ln2 + 1))/(4 ln2) ≈ 0.0535`,
/// the largest possible gap. For strongly asymmetric channels the crossing
/// sits at a negative auxiliary rate (the scaled constraint never binds for
/// `a ≥ 0`); the root is returned as-is so it can be checked against the
/// bisection oracle everywhere.
pub fn gap_astar_closed_form(x1: ExtReal, x2: ExtReal) -> Result<f64> {
    match (x1, x2) {
        (ExtReal::Infinity, ExtReal::Infinity) => {
            Ok((LN_2 + 1.0 - (2.0 * LN_2 + 1.0).sqrt()) / (4.0 * LN_2))
        }
        (ExtReal::Finite(x1), ExtReal::Finite(x2)) => {
            if !(x2 > 0.0) || x2 > x1 {
                return Err(Error::Domain(format!(
                    "gap_astar_closed_form requires x1 >= x2 > 0, got x1={x1}, x2={x2}"
                )));
            }
            let u = x2 / x1;
            let l = (x2 / (1.0 + x1)).ln_1p();
            let lead = (u + 1.0) * l + 2.0 * u * u;
            let disc = lead * lead - (u + 1.0) * (u + 1.0) * (l * l + 4.0 * u * (u - 1.0));
            Ok((lead - disc.sqrt()) / (2.0 * (u + 1.0) * (u + 1.0) * LN_2))
        }
        _ => Err(Error::Domain(
            "gap_astar_closed_form requires both SNRs finite or both infinite".to_string(),
        )),
    }
}

/// Lower bound on the pre-constant of topology-independent cut-set
/// approximations for Gaussian relay networks: no approximation with gap
/// `c·N` over all `N`-node networks can have `c` below the four-antenna
/// relay-channel gap divided by 4. Scales linearly in the node count.
pub fn network_gap_lower_bound(num_nodes: u64) -> Result<f64> {
    if num_nodes == 0 {
        return Err(Error::Domain("num_nodes must be at least 1".to_string()));
    }
    let params = ChannelParams::new(ExtReal::Infinity, ExtReal::Infinity, 0.5)?;
    let g = gap(&params, GapVariant::Theorem1, None)?.gap;
    Ok(g / 4.0 * num_nodes as f64)
}
