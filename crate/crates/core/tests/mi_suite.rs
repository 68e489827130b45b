//! Mutual-information inequality suite: the full default sweep grid, data
//! processing sanity, entropy caps, and a Monte Carlo cross-check of the
//! quadrature entropy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use relay_bounds::mi_verify::{conditional_output_entropy, output_entropy};
use relay_bounds::{evaluate_quantizer_relay, sweep_quantizer_grid, QuantizerRelay};

const SNR_GRID: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
const THRESHOLD_COEFFS: [f64; 3] = [0.0, 0.5, -0.5];

#[test]
fn inequality_holds_with_positive_slack_on_default_grid() {
    let reports = sweep_quantizer_grid(&SNR_GRID, &THRESHOLD_COEFFS).unwrap();
    assert_eq!(reports.len(), SNR_GRID.len() * THRESHOLD_COEFFS.len());
    for (i, r) in reports.iter().enumerate() {
        assert!(r.holds, "cell {i}: lhs={} rhs={}", r.lhs, r.rhs);
        assert!(r.rhs - r.lhs > 0.0, "cell {i}: slack not positive");
        println!(
            "cell {i}: a={:.6} lhs={:.6e} rhs={:.6e} slack={:.6e}",
            r.a,
            r.lhs,
            r.rhs,
            r.rhs - r.lhs
        );
    }
}

#[test]
fn data_processing_direction_on_grid() {
    for r in sweep_quantizer_grid(&SNR_GRID, &THRESHOLD_COEFFS).unwrap() {
        // the quantizer output is conditionally independent of the direct
        // observation given the input, so I(Y;I) cannot exceed I(X;I)
        assert!(r.i_yi <= r.i_xi + 1e-6, "i_yi={} > i_xi={}", r.i_yi, r.i_xi);
        assert!((0.0..=1.0 + 1e-9).contains(&r.a));
        assert!((0.0..=1.0 + 1e-9).contains(&r.i_xi));
        assert!(r.i_yi >= -1e-9);
    }
}

#[test]
fn entropy_caps_on_grid() {
    for &snr in &SNR_GRID {
        for &coeff in &THRESHOLD_COEFFS {
            let q = QuantizerRelay::new(snr, 1.0, coeff * snr.sqrt()).unwrap();
            let h_y = output_entropy(&q).unwrap();
            let h_y_given = conditional_output_entropy(&q).unwrap();
            let cap = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * (snr + 1.0)).log2();
            assert!(h_y_given <= h_y + 1e-9, "snr={snr} coeff={coeff}");
            assert!(h_y <= cap + 1e-6, "snr={snr} coeff={coeff}: h={h_y} cap={cap}");
        }
    }
}

#[test]
fn reference_cell_reproduces_quantizer_entropy() {
    let reports = sweep_quantizer_grid(&[1.0], &[0.0]).unwrap();
    // a = H_b(Q(1)) at unit SNR with a zero threshold
    assert!((reports[0].a - 0.6313).abs() < 1e-3);
    assert!((reports[0].a - 0.631_082_767_405_542).abs() < 1e-9);
}

#[test]
fn quadrature_entropy_matches_monte_carlo() {
    let q = QuantizerRelay::new(1.0, 1.0, 0.0).unwrap();
    let h_quad = output_entropy(&q).unwrap();

    // 10^7-sample plug-in estimate of E[-log2 f_Y(Y)] with a fixed seed
    let mut rng = ChaCha8Rng::seed_from_u64(314159);
    let normal = StandardNormal;
    let samples = 10_000_000u64;
    let sp = q.power.sqrt();
    let norm = 1.0 / (2.0 * std::f64::consts::PI * q.noise_var).sqrt();
    let density = |y: f64| {
        let up = (-(y - sp) * (y - sp) / (2.0 * q.noise_var)).exp();
        let dn = (-(y + sp) * (y + sp) / (2.0 * q.noise_var)).exp();
        0.5 * norm * (up + dn)
    };
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        let x = if rng.gen_bool(0.5) { sp } else { -sp };
        let w: f64 = normal.sample(&mut rng);
        let y = x + q.noise_var.sqrt() * w;
        let v = -density(y).log2();
        sum += v;
        sum_sq += v * v;
    }
    let m = samples as f64;
    let mean = sum / m;
    let stderr = ((sum_sq / m - mean * mean) / m).sqrt();
    assert!(
        (h_quad - mean).abs() <= 3.0 * stderr,
        "quadrature {h_quad} vs MC {mean} ± {stderr}"
    );
}
