use cib::bounds::{tb_phase, Expansion, ScenarioParams};
use cib::dynamics::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|e| 10f64.powf(e))
}

/// A pure state with random width, mean and shear.
fn state() -> impl Strategy<Value = GaussianState> {
    (log_range(1e-2, 1e2), -10.0f64..10.0, -10.0f64..10.0, 0.0f64..3.0, -3.0f64..3.0).prop_map(
        |(sigma, x, p, tau, phase)| {
            let s = GaussianState::minimum_uncertainty(sigma).unwrap();
            // free flight for a dimensionless time τ = t / (2 m σ²) with m = 1
            let mut s = evolve_constant_force(&s, 0.0, 1.0, tau * 2.0 * sigma * sigma).unwrap();
            s.mean_x = x;
            s.mean_p = p;
            s.phase = phase;
            s
        },
    )
}

proptest! {
    #[test]
    fn determinant_invariant(s in state(), f in -5.0f64..5.0, m in log_range(0.1, 10.0), tau in 0.0f64..3.0) {
        let t = tau * 2.0 * m * s.cov.xx;
        let e = evolve_constant_force(&s, f, m, t).unwrap();
        prop_assert!(rel(e.cov.det(), s.cov.det()) <= 1e-12, "{} vs {}", e.cov.det(), s.cov.det());
    }

    #[test]
    fn heisenberg_after_chains(s in state(), steps in prop::collection::vec((-5.0f64..5.0, 0.0f64..0.5, log_range(0.1, 10.0), 0.0f64..1.0), 1..8)) {
        let mut cur = s;
        for (f, kappa, m, t) in steps {
            cur = evolve_quadratic(&cur, f, kappa, m, t).unwrap();
            prop_assert!(cur.cov.satisfies_heisenberg());
            prop_assert!(cur.validate().is_ok());
        }
    }

    #[test]
    fn overlap_bounded_and_unit_only_for_identical(a in state(), b in state()) {
        let ab = overlap(&a, &b).unwrap().norm();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((overlap(&a, &a).unwrap().norm() - 1.0).abs() <= 1e-12);
        let differs = (a.mean_x - b.mean_x).abs() > 1e-3 || (a.mean_p - b.mean_p).abs() > 1e-3;
        if differs {
            prop_assert!(ab < 1.0 - 1e-12);
        }
    }

    #[test]
    fn overlap_is_hermitian(a in state(), b in state()) {
        let ab = overlap(&a, &b).unwrap();
        let ba = overlap(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() <= 1e-9 * ab.norm().max(1e-300) + 1e-300);
    }

    #[test]
    fn position_only_crossing_matches_closed_form(
        m_a in log_range(1e4, 1e10),
        m_b in log_range(1e-2, 1e2),
        d in log_range(1.0, 1e8),
        ratio in log_range(1e2, 1e5),
        sigma0 in log_range(0.1, 10.0),
        eps in 1e-4f64..0.5,
    ) {
        let p = ScenarioParams::gravity(m_a, m_b, d, ratio * d);
        let numeric = position_distinguishability_time(&p, sigma0, eps).unwrap();
        let closed = position_distinguishability_closed_form(&p, sigma0, eps).unwrap();
        prop_assert!(rel(numeric, closed) <= 1e-6, "{} vs {}", numeric, closed);
    }

    #[test]
    fn phase_overlap_matches_two_state_inner_product(
        m_a in log_range(1.0, 1e8),
        m_b in log_range(1e-2, 1e2),
        d in log_range(1.0, 1e8),
        ratio in log_range(1e2, 1e6),
        frac in 0.0f64..4.0,
    ) {
        let p = ScenarioParams::gravity(m_a, m_b, d, ratio * d);
        let t = frac * tb_phase(&p, Expansion::Exact).unwrap();
        let b = phase_evolution(&p, t).unwrap();
        let z = (Complex64::from_polar(1.0, b.delta_phi) + 1.0) / 2.0;
        prop_assert!((b.overlap_magnitude - z.norm()).abs() <= 1e-12);
    }

    #[test]
    fn displacement_overlap_non_increasing(m_a in log_range(1e6, 1e10), ratio in log_range(1e2, 1e4)) {
        let d = 1e6;
        let p = ScenarioParams::gravity(m_a, 1.0, d, ratio * d);
        let cfg = OracleConfig::default();
        let t = orthogonalization_time_with(&p, &cfg).unwrap();
        let series = displacement_series(&p, &cfg, 2.0 * t, 64).unwrap();
        for w in series.windows(2) {
            prop_assert!(w[1].overlap_magnitude <= w[0].overlap_magnitude);
        }
    }
}

#[test]
fn closed_form_propagation_is_step_independent() {
    let p = ScenarioParams::gravity(1e8, 1.0, 1e6, 1e9);
    let cfg = OracleConfig::default();
    let t = orthogonalization_time_with(&p, &cfg).unwrap();
    let coarse = displacement_series(&p, &cfg, t, 10).unwrap();
    let fine = displacement_series(&p, &cfg, t, 20).unwrap();
    for (i, c) in coarse.iter().enumerate() {
        assert_eq!(c, &fine[2 * i]);
    }
}

#[test]
fn tidal_term_is_a_small_correction() {
    let p = ScenarioParams::gravity(1e8, 1.0, 1e6, 1e9);
    let plain = orthogonalization_time_with(&p, &OracleConfig::default()).unwrap();
    let tidal = orthogonalization_time_with(&p, &OracleConfig { tidal: true, ..OracleConfig::default() }).unwrap();
    assert!(rel(tidal, plain) < 1e-3, "{plain} vs {tidal}");
}
