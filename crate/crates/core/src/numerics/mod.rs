//! Shared numerical kernels: extended-real arithmetic, the standard normal
//! CDF and its inverse, bisection, binary entropy and adaptive quadrature.
//!
//! All rates and entropies in this crate are in bits; logarithms are base 2
//! and the constant `log e` appearing in the bound formulas is `log2(e)`.

mod erf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use erf::{erf, erfc};

/// `log2(e)`, the nats-to-bits conversion factor.
pub const LOG2_E: f64 = std::f64::consts::LOG2_E;
/// `ln 2`, the bits-to-nats conversion factor.
pub const LN_2: f64 = std::f64::consts::LN_2;

/// A nonnegative real extended with a symbolic positive infinity.
///
/// SNRs and bound values live here so that limit points like infinite SNR are
/// represented exactly instead of through a large finite surrogate. Finite
/// payloads are guaranteed nonnegative and non-NaN by construction, infinity
/// compares greater than every finite value, and no operation on this type
/// can silently produce `inf - inf`: subtraction is only available through
/// [`ExtReal::checked_sub`], which errors on that case.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Wraps a finite nonnegative value. Rejects NaN, negatives and
    /// non-symbolic infinities.
    pub fn finite(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::Domain(format!(
                "expected a finite value, got {value}; use ExtReal::Infinity for the limit point"
            )));
        }
        if value < 0.0 {
            return Err(Error::Domain(format!("expected a nonnegative value, got {value}")));
        }
        Ok(ExtReal::Finite(value))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// The finite payload, if any.
    pub fn to_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinity => None,
        }
    }

    /// Collapses to `f64`, mapping the infinity marker to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::Infinity => f64::INFINITY,
        }
    }

    /// Extended-real addition: anything plus infinity is infinity.
    pub fn add(self, other: ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }

    /// Adds a finite offset (used for the `+ r0` terms of the bounds).
    pub fn add_finite(self, offset: f64) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v + offset),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    /// `self - other`, defined unless both are infinite.
    pub fn checked_sub(self, other: ExtReal) -> Result<f64> {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => Err(Error::IndeterminateLimit(
                "inf - inf; evaluate the difference through its limit formula".to_string(),
            )),
            (ExtReal::Infinity, ExtReal::Finite(_)) => Ok(f64::INFINITY),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Ok(a - b),
            (ExtReal::Finite(a), ExtReal::Infinity) => Ok(a - f64::INFINITY),
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    /// Parses either a nonnegative real or (case-insensitively) `inf` /
    /// `infinity`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(ExtReal::Infinity);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse {s:?} as a nonnegative real or \"inf\"")))?;
        ExtReal::finite(v)
    }
}

// Serialized as a JSON number when finite and as the string "inf" otherwise
// (JSON has no infinity literal).
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => serializer.serialize_f64(*v),
            ExtReal::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => ExtReal::finite(v).map_err(DeError::custom),
            Raw::Str(s) => s.parse().map_err(DeError::custom),
        }
    }
}

/// Tolerance and iteration budget for the iterative solvers.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolverConfig {
    pub abs_tolerance: f64,
    pub max_iterations: u32,
}

impl SolverConfig {
    pub fn new(abs_tolerance: f64, max_iterations: u32) -> Result<Self> {
        if !(abs_tolerance > 0.0) {
            return Err(Error::Domain(format!("abs_tolerance must be positive, got {abs_tolerance}")));
        }
        if max_iterations == 0 {
            return Err(Error::Domain("max_iterations must be at least 1".to_string()));
        }
        Ok(SolverConfig { abs_tolerance, max_iterations })
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { abs_tolerance: 1e-12, max_iterations: 200 }
    }
}

/// Standard normal CDF Φ(x), accurate in both tails.
///
/// Evaluated as `erfc(-x/√2)/2`, which keeps full relative accuracy for very
/// negative `x` where `1 - erf` would cancel. Saturates to 0/1 where the
/// result is not representable.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density φ(x).
pub fn gaussian_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Inverse standard normal CDF.
///
/// Rational initial guess (Acklam's approximation) polished by Newton steps
/// against [`gaussian_cdf`]; the tail branch remains accurate down to
/// probabilities near the smallest normal double.
pub fn gaussian_cdf_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("gaussian_cdf_inv requires 0 < p < 1, got {p}")));
    }
    let mut x = acklam_initial(p);
    // Newton on Φ(x) - p. Two to three steps reach full double accuracy from
    // the ~1e-9 relative accuracy of the initial guess.
    for _ in 0..4 {
        let err = gaussian_cdf(x) - p;
        let d = gaussian_pdf(x);
        if d <= 0.0 {
            break;
        }
        let step = err / d;
        x -= step;
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            break;
        }
    }
    Ok(x)
}

fn acklam_initial(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_690e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Root of a continuous function with a sign change on `[lo, hi]`.
///
/// Returns the bracket midpoint once the bracket width is at most
/// `cfg.abs_tolerance`. All equations solved in this crate are monotone on
/// their search interval, so bisection's robustness is preferred over faster
/// but bracket-escaping methods.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("bisect requires lo < hi, got [{lo}, {hi}]")));
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f_lo;
    for _ in 0..cfg.max_iterations {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= cfg.abs_tolerance {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iterations })
}

/// Binary entropy H_b(p) in bits, with the convention 0·log 0 = 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("binary_entropy requires p in [0, 1], got {p}")));
    }
    let term = |q: f64| if q == 0.0 { 0.0 } else { -q * q.log2() };
    Ok(term(p) + term(1.0 - p))
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]`.
///
/// Subdivides until the Richardson error estimate of every panel is within
/// its share of `cfg.abs_tolerance`; errors out instead of returning a result
/// whose estimated error exceeds the target.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &SolverConfig) -> Result<f64> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("integrate requires finite lo < hi, got [{lo}, {hi}]")));
    }
    const MAX_DEPTH: u32 = 52;
    struct Budget {
        evals: u64,
        max_evals: u64,
        // largest local error of a panel that ran out of depth or budget
        worst_rejected: f64,
    }
    let mut budget = Budget { evals: 0, max_evals: 4_000_000, worst_rejected: 0.0 };

    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }

    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        budget: &mut Budget,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        budget.evals += 2;
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let err = (left + right - whole) / 15.0;
        if err.abs() <= tol || (m - a) < 1e-14 * (1.0 + m.abs()) {
            return left + right + err;
        }
        if depth >= MAX_DEPTH || budget.evals > budget.max_evals {
            budget.worst_rejected = budget.worst_rejected.max(err.abs());
            return left + right + err;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, budget)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, budget)
    }

    let fa = f(lo);
    let fb = f(hi);
    let m = 0.5 * (lo + hi);
    let fm = f(m);
    budget.evals += 3;
    let whole = simpson(fa, fm, fb, hi - lo);
    let value = recurse(&f, lo, hi, fa, fm, fb, whole, cfg.abs_tolerance, 0, &mut budget);
    if budget.worst_rejected > 0.0 {
        return Err(Error::QuadratureNonConvergence {
            error_estimate: budget.worst_rejected,
            target: cfg.abs_tolerance,
        });
    }
    if !value.is_finite() {
        return Err(Error::Domain("integrand produced a non-finite value".to_string()));
    }
    Ok(value)
}
