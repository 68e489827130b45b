//! Blow-up inequality verification: the exact half-space check over the full
//! parameter grid, Monte Carlo agreement with the exact values, binomial
//! convergence of the estimates, and scaling equivariance.

use relay_bounds::{
    halfspace_check, monte_carlo_check, ConcentrationParams, SetDescriptor, Verdict,
};

const NS: [u32; 4] = [1, 10, 100, 1000];
const NOISE_VARS: [f64; 4] = [0.25, 1.0, 4.0, 16.0];
const A_NS: [f64; 5] = [0.0, 0.05, 0.1, 0.5, 1.0];
const RS: [f64; 4] = [0.1, 0.3, 1.0, 3.0];

#[test]
fn halfspace_exact_holds_on_full_grid() {
    let mut cells = 0usize;
    for n in NS {
        for nv in NOISE_VARS {
            for a in A_NS {
                for r in RS {
                    if f64::from(n) * a > 1000.0 {
                        continue; // underflow guard cell
                    }
                    let p = ConcentrationParams::new(n, nv, a, r).unwrap();
                    let c = halfspace_check(&p).unwrap();
                    assert!(
                        c.holds(),
                        "half-space check failed at n={n}, noise_var={nv}, a_n={a}, r={r}: \
                         blowup={} floor={}",
                        c.blowup_prob,
                        c.floor
                    );
                    cells += 1;
                }
            }
        }
    }
    assert_eq!(cells, 4 * 4 * 5 * 4);
}

#[test]
fn monte_carlo_agrees_with_exact_halfspace() {
    for (n, nv, a, r, seed) in [
        (100u32, 1.0, 0.1, 0.3, 11u64),
        (10, 4.0, 0.05, 0.5, 12),
        (1, 1.0, 0.5, 1.0, 13),
    ] {
        let params = ConcentrationParams::new(n, nv, a, r).unwrap();
        let exact = halfspace_check(&params).unwrap();
        let mc = monte_carlo_check(&params, &exact.set, 100_000, seed).unwrap();
        let stderr = mc.stderr.unwrap();
        assert!(
            (mc.blowup_prob - exact.blowup_prob).abs() <= 3.0 * stderr.max(1e-9),
            "n={n}: mc={} exact={} stderr={stderr}",
            mc.blowup_prob,
            exact.blowup_prob
        );
        assert_ne!(mc.verdict, Verdict::Fail);
        assert_eq!(mc.seed, Some(seed));
    }
}

#[test]
fn monte_carlo_stderr_shrinks_at_binomial_rate() {
    let params = ConcentrationParams::new(20, 1.0, 0.2, 0.2).unwrap();
    let exact = halfspace_check(&params).unwrap();
    let mut prev_stderr = f64::INFINITY;
    for (samples, seed) in [(4_000u64, 21u64), (16_000, 22), (64_000, 23)] {
        let mc = monte_carlo_check(&params, &exact.set, samples, seed).unwrap();
        let stderr = mc.stderr.unwrap();
        assert!((mc.blowup_prob - exact.blowup_prob).abs() <= 3.0 * stderr);
        // quadrupling the sample count halves the standard error
        assert!(stderr <= 0.65 * prev_stderr);
        prev_stderr = stderr;
    }
}

#[test]
fn scaling_equivariance_exact_halfspace() {
    // noise_var = 4 against the unit-variance check with r halved; powers of
    // two keep every floating-point step exact, so the probabilities agree
    // bit for bit
    for n in [1u32, 10, 100] {
        for a in [0.0, 0.1, 0.5] {
            for r in [0.25, 1.0, 3.0] {
                let scaled = ConcentrationParams::new(n, 4.0, a, r).unwrap();
                let unit = ConcentrationParams::new(n, 1.0, a, r / 2.0).unwrap();
                let cs = halfspace_check(&scaled).unwrap();
                let cu = halfspace_check(&unit).unwrap();
                assert_eq!(cs.base_prob, cu.base_prob);
                assert_eq!(cs.blowup_prob, cu.blowup_prob);
                assert_eq!(cs.floor, cu.floor);
            }
        }
    }
}

#[test]
fn scaling_equivariance_monte_carlo_ball() {
    // same seed, variance 4 vs variance 1 with the ball and r shrunk by 2:
    // the sampled standard normals are identical and every comparison is a
    // power-of-two rescaling, so the counts match exactly
    let n = 8u32;
    let scaled_params = ConcentrationParams::new(n, 4.0, 0.1, 0.6).unwrap();
    let unit_params = ConcentrationParams::new(n, 1.0, 0.1, 0.3).unwrap();
    let center = vec![0.5f64; n as usize];
    let scaled_set = SetDescriptor::Ball { center: center.clone(), radius: 6.0 };
    let unit_set = SetDescriptor::Ball {
        center: center.iter().map(|c| c / 2.0).collect(),
        radius: 3.0,
    };
    let cs = monte_carlo_check(&scaled_params, &scaled_set, 20_000, 99).unwrap();
    let cu = monte_carlo_check(&unit_params, &unit_set, 20_000, 99).unwrap();
    assert_eq!(cs.base_prob, cu.base_prob);
    assert_eq!(cs.blowup_prob, cu.blowup_prob);
    assert_eq!(cs.floor, cu.floor);
}

#[test]
fn ball_with_matched_base_probability_holds() {
    // radius of the centered ball whose Gaussian mass in dimension 20 is
    // 2^-3 = 2^(-n a_n), i.e. the square root of the chi-square quantile;
    // frozen from a series-evaluation oracle
    let radius = 3.613_207_968_924_988_7;
    let params = ConcentrationParams::new(20, 1.0, 0.15, 0.3).unwrap();
    let set = SetDescriptor::Ball { center: vec![0.0; 20], radius };
    let mc = monte_carlo_check(&params, &set, 50_000, 5).unwrap();
    assert!((mc.base_prob - 0.125).abs() < 3.0 * (0.125f64 * 0.875 / 50_000.0).sqrt());
    assert_eq!(mc.verdict, Verdict::Pass);
}

#[test]
fn large_r_saturates_floor_and_blowup() {
    let params = ConcentrationParams::new(10, 1.0, 0.1, 5.0).unwrap();
    let exact = halfspace_check(&params).unwrap();
    assert!(exact.floor > 1.0 - 1e-12);
    assert!(exact.blowup_prob >= exact.floor);
    assert!(exact.holds());

    let set = SetDescriptor::Ball { center: vec![0.0; 10], radius: 4.0 };
    let mc = monte_carlo_check(&params, &set, 10_000, 3).unwrap();
    assert_eq!(mc.verdict, Verdict::Pass);
    assert_eq!(mc.blowup_prob, 1.0);
}
