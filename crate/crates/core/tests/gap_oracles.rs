//! Gap-module cross-checks: the closed-form crossing optimizer against an
//! independent bisection of its defining equation, grid-oracle agreement for
//! pointwise gaps, and the supremum search.

use relay_bounds::{
    gap, gap_astar_closed_form, max_gap_search, ChannelParams, ExtReal, GapVariant, GridSpec,
};

const LN2: f64 = std::f64::consts::LN_2;
const LOG2E: f64 = std::f64::consts::LOG2_E;
const HEADLINE: f64 = 0.053_518_089_494_596_834;

/// Bisection oracle for the crossing equation
/// `ΔC = (u+1)a + √(u(2ua ln2 + 1 − u))·log2 e` with
/// `ΔC = ½log2(1+x1+x2) − ½log2(1+x1)`, written out independently of the
/// closed form. The root can be negative; the bracket starts where the
/// square root's argument vanishes.
fn crossing_bisect_oracle(x1: f64, x2: f64) -> f64 {
    let u = x2 / x1;
    let dc = 0.5 * (1.0 + x1 + x2).log2() - 0.5 * (1.0 + x1).log2();
    let g = |a: f64| {
        (u + 1.0) * a + (u * (u * 2.0 * a * LN2 + 1.0 - u)).max(0.0).sqrt() * LOG2E - dc
    };
    let mut lo = if u < 1.0 { -(1.0 - u) / (2.0 * u * LN2) } else { 0.0 };
    let mut hi = dc / (u + 1.0) + 1.0;
    assert!(g(lo) < 0.0 && g(hi) > 0.0, "bad bracket at ({x1},{x2})");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn closed_form_matches_bisection_on_log_grid() {
    let xs: Vec<f64> = (0..20)
        .map(|i| 10f64.powf(-2.0 + 6.0 * i as f64 / 19.0))
        .collect();
    for &x1 in &xs {
        for &x2 in &xs {
            if x2 > x1 {
                continue;
            }
            let closed = gap_astar_closed_form(
                ExtReal::finite(x1).unwrap(),
                ExtReal::finite(x2).unwrap(),
            )
            .unwrap();
            let root = crossing_bisect_oracle(x1, x2);
            assert!(
                (closed - root).abs() < 1e-9,
                "({x1},{x2}): closed {closed} vs bisect {root}"
            );
        }
    }
}

#[test]
fn closed_form_limit_agrees_with_large_snr() {
    let limit = gap_astar_closed_form(ExtReal::Infinity, ExtReal::Infinity).unwrap();
    assert!((limit - (LN2 + 1.0 - (2.0 * LN2 + 1.0).sqrt()) / (4.0 * LN2)).abs() < 1e-16);
    assert!((limit - 0.0535).abs() < 1e-4);
    let near = gap_astar_closed_form(
        ExtReal::finite(1e9).unwrap(),
        ExtReal::finite(1e9).unwrap(),
    )
    .unwrap();
    assert!((near - limit).abs() < 1e-9);
}

/// Pointwise-gap oracle: cut-set minus a dense-grid max-min, formulas inline.
fn gap_grid_oracle(s1: f64, s2: f64, r0: f64, variant: GapVariant) -> f64 {
    let c1 = 0.5 * (1.0 + s1 + s2).log2();
    let ma0 = 0.5 * (1.0 + s2).log2() + r0;
    let cut = c1.min(ma0);
    let link = match variant {
        GapVariant::Theorem1 => 0.5 * (1.0 + s1.max(s2)).log2(),
        GapVariant::Prop5 => 0.5 * (1.0 + s1).log2(),
    };
    let rho = if s1 == s2 { 1.0 } else { s2 / s1 };
    let points = 1_000_000;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=points {
        let a = r0 * i as f64 / points as f64;
        let mut m = (ma0 - a).min(link + a + (2.0 * a * LN2).sqrt() * LOG2E);
        if variant == GapVariant::Prop5 {
            m = m.min(link + rho * a + (rho * (rho * 2.0 * a * LN2 + 1.0 - rho)).sqrt() * LOG2E);
        }
        best = best.max(m);
    }
    cut - c1.min(best)
}

#[test]
fn pointwise_gap_matches_grid_oracle() {
    for (s1, s2, r0, variant) in [
        (100.0, 100.0, 0.5, GapVariant::Theorem1),
        (1.0, 1.0, 0.25, GapVariant::Theorem1),
        (9.0, 4.0, 0.4, GapVariant::Theorem1),
        (9.0, 4.0, 0.4, GapVariant::Prop5),
        (1000.0, 900.0, 0.5, GapVariant::Prop5),
    ] {
        let p = ChannelParams::finite(s1, s2, r0).unwrap();
        let got = gap(&p, variant, None).unwrap().gap;
        let want = gap_grid_oracle(s1, s2, r0, variant);
        assert!(
            (got - want).abs() < 1e-6,
            "({s1},{s2},{r0},{variant:?}): gap {got} vs oracle {want}"
        );
    }
}

#[test]
fn gap_nonnegative_and_positive_when_expected() {
    for s in [0.01, 0.1, 1.0, 10.0, 100.0, 1e4] {
        for r0 in [0.0, 0.1, 0.3, 0.5, 1.0, 2.0] {
            let p = ChannelParams::finite(s, s, r0).unwrap();
            let g = gap(&p, GapVariant::Theorem1, None).unwrap().gap;
            assert!(g >= -1e-9, "gap negative at ({s},{s},{r0})");
            // symmetric channel: multiple-access cut active means
            // r0 <= ½log2((1+2s)/(1+s)), and the improvement is then strict
            let ma_margin = 0.5 * ((1.0 + 2.0 * s) / (1.0 + s)).log2() - r0;
            if r0 > 1e-3 && ma_margin >= 0.0 {
                assert!(g > 0.0, "expected strict gap at ({s},{s},{r0})");
            }
        }
    }
}

#[test]
fn symmetric_ray_gap_nondecreasing_toward_limit() {
    let mut prev = -1.0;
    for i in 0..=24 {
        let s = 10f64.powf(-2.0 + 0.333 * f64::from(i));
        let p = ChannelParams::finite(s, s, 0.5).unwrap();
        let g = gap(&p, GapVariant::Theorem1, None).unwrap().gap;
        assert!(g >= prev - 1e-12, "gap decreased along symmetric ray at snr={s}");
        prev = g;
    }
    assert!(prev <= HEADLINE + 1e-9);
    let lim = ChannelParams::new(ExtReal::Infinity, ExtReal::Infinity, 0.5).unwrap();
    assert!(gap(&lim, GapVariant::Theorem1, None).unwrap().gap >= prev);
}

#[test]
fn max_gap_search_finds_limit_argmax_for_both_variants() {
    let grid = GridSpec::default();
    for variant in [GapVariant::Theorem1, GapVariant::Prop5] {
        let sup = max_gap_search(variant, &grid).unwrap();
        assert!((sup.value - HEADLINE).abs() < 5e-4, "{variant:?}: {}", sup.value);
        assert!(sup.argmax.snr1.is_infinite() && sup.argmax.snr2.is_infinite());
        assert_eq!(sup.argmax.r0, 0.5, "{variant:?}");
    }
}

#[test]
fn finite_grid_never_beats_limit_point() {
    let mut grid = GridSpec::default();
    grid.include_limit_point = false;
    let finite_sup = max_gap_search(GapVariant::Theorem1, &grid).unwrap();
    assert!(finite_sup.value <= HEADLINE + 1e-9);
    assert!(finite_sup.argmax.snr1.is_finite());
}
