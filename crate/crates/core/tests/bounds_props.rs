use cib::bounds::*;
use cib::causal::backreaction_free;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_range(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|e| 10f64.powf(e))
}

const ETA_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

proptest! {
    #[test]
    fn identity_web(m_a in log_range(1e2, 1e15), d in log_range(1e-3, 1e30), m_b in log_range(1e-3, 1e3)) {
        for eta in ETA_GRID {
            let r = r_for_eta(eta, m_a, d).unwrap();
            let tb = tb_eta(eta, m_a, d).unwrap();
            let p = ScenarioParams::gravity(m_a, m_b, d, r).with_override();
            prop_assert!(rel(tb, tb_displacement(&p).unwrap()) <= 1e-12);
            prop_assert!(rel(tb, eta * 2.0 * r) <= 1e-12);
            prop_assert!(rel(ta_lower_bound(eta, m_a, d).unwrap(), 2.0 * r - tb) <= 1e-12);
        }
    }

    #[test]
    fn backreaction_radius(m_a in log_range(1e2, 1e15), d in log_range(1e-3, 1e20), x in log_range(1e-3, 1e3)) {
        let r_max = r_max_displacement(m_a, d).unwrap();
        let p = ScenarioParams::gravity(m_a, 1.0, d, x * r_max).with_override();
        let tb = tb_displacement(&p).unwrap();
        prop_assert_eq!(backreaction_free(tb, p.r), p.r < r_max);
    }

    #[test]
    fn backreaction_radius_at_boundary(m_a in log_range(1e2, 1e15), d in log_range(1e-3, 1e20), m_b in log_range(1e-3, 1e3)) {
        let r_max = r_max_displacement(m_a, d).unwrap();
        let below = f64::from_bits(r_max.to_bits() - 1);
        let above = f64::from_bits(r_max.to_bits() + 1);
        for (r, free) in [(below, true), (r_max, false), (above, false)] {
            let p = ScenarioParams::gravity(m_a, m_b, d, r).with_override();
            prop_assert_eq!(backreaction_free(tb_displacement(&p).unwrap(), r), free);
        }
    }

    #[test]
    fn homogeneity(m_a in log_range(1e2, 1e12), d in log_range(1e-3, 1e12), m_b in log_range(1e-3, 1e3), lambda in 0.5f64..8.0) {
        let r = 1e3 * d;
        let p = ScenarioParams::gravity(m_a, m_b, d, r);
        // linear in m_A and in d
        prop_assert!(rel(ta_min_round_trip(lambda * m_a, d).unwrap(), lambda * ta_min_round_trip(m_a, d).unwrap()) <= 1e-14);
        prop_assert!(rel(ta_min_round_trip(m_a, lambda * d).unwrap(), lambda * ta_min_round_trip(m_a, d).unwrap()) <= 1e-14);
        prop_assert!(rel(r_max_displacement(lambda * m_a, d).unwrap(), lambda * r_max_displacement(m_a, d).unwrap()) <= 1e-14);
        prop_assert!(rel(r_max_phase(m_a, lambda * m_b, d).unwrap(), lambda * r_max_phase(m_a, m_b, d).unwrap()) <= 1e-14);
        // T_B ∝ R^{3/2} m_A^{-1/2}
        let tb = tb_displacement(&p).unwrap();
        let tb_r = tb_displacement(&p.with_r(lambda * r)).unwrap();
        prop_assert!(rel(tb_r, lambda.powf(1.5) * tb) <= 1e-13);
        let tb_m = tb_displacement(&ScenarioParams { m_a: lambda * m_a, ..p }).unwrap();
        prop_assert!(rel(tb_m, tb / lambda.sqrt()) <= 1e-13);
        // leading-order phase time ∝ R² / (m_A m_B d)
        let tp = tb_phase(&p, Expansion::LeadingOrder).unwrap();
        let tp_r = tb_phase(&p.with_r(lambda * r), Expansion::LeadingOrder).unwrap();
        prop_assert!(rel(tp_r, lambda * lambda * tp) <= 1e-13);
        let tp_mb = tb_phase(&ScenarioParams { m_b: lambda * m_b, ..p }, Expansion::LeadingOrder).unwrap();
        prop_assert!(rel(tp_mb, tp / lambda) <= 1e-13);
        // differential force ∝ d / R³ at leading order
        let f = differential_force(&p, Expansion::LeadingOrder).unwrap();
        let f_r = differential_force(&p.with_r(lambda * r), Expansion::LeadingOrder).unwrap();
        prop_assert!(rel(f_r, f / lambda.powi(3)) <= 1e-13);
        // causal bounds linear in R
        prop_assert_eq!(round_trip_ta_tb_bound(r).unwrap(), 2.0 * one_way_ta_tb_bound(r).unwrap());
    }

    #[test]
    fn exact_and_leading_order_relations(m_a in log_range(1.0, 1e12), d in log_range(1e-3, 1e12), ratio in log_range(1e2, 1e8)) {
        let p = ScenarioParams::gravity(m_a, 1.0, d, ratio * d);
        let exact = tb_phase(&p, Expansion::Exact).unwrap();
        let approx = tb_phase(&p, Expansion::LeadingOrder).unwrap();
        prop_assert!(rel(exact / approx, (p.r + p.d) / p.r) <= 1e-12);
        let fe = differential_force(&p, Expansion::Exact).unwrap();
        let fa = differential_force(&p, Expansion::LeadingOrder).unwrap();
        // the leading-order force is a single 1/R³ term; the exact difference tends to twice it
        prop_assert!(fe / fa > 1.0 && fe / fa < 2.0 + 1e-12);
    }

    #[test]
    fn factor_of_eight(m_a in log_range(1e-3, 1e20), d in log_range(1e-3, 1e35)) {
        let rt = ta_min_round_trip(m_a, d).unwrap();
        let ow = ta_min_one_way(m_a, d).unwrap();
        prop_assert_eq!(rt / ow, 8.0);
    }
}

#[test]
fn optimum_beats_dense_grid() {
    let opt = optimize_eta();
    let n = 2_000_000;
    let grid_max = (1..n).map(|i| eta_objective(i as f64 / n as f64)).fold(f64::MIN, f64::max);
    assert!(opt.coefficient >= grid_max - 1e-15);
    assert!((opt.coefficient - grid_max).abs() <= 1e-9);
}

#[test]
fn force_and_phase_ratios_converge_monotonically() {
    let mut prev_force: Option<f64> = None;
    let mut prev_phase: Option<f64> = None;
    for ratio in [1e2, 1e3, 1e4, 1e6] {
        let p = ScenarioParams::gravity(1e6, 1.0, 1e6, ratio * 1e6);
        let fr = differential_force(&p, Expansion::Exact).unwrap() / differential_force(&p, Expansion::LeadingOrder).unwrap();
        let pr = phase_difference(&p, 1.0, Expansion::Exact).unwrap() / phase_difference(&p, 1.0, Expansion::LeadingOrder).unwrap();
        // exact/leading = (2 + d/R) / (1 + d/R)², phase: 1 / (1 + d/R)
        let u = 1.0 / ratio;
        assert!(rel(fr, (2.0 + u) / ((1.0 + u) * (1.0 + u))) < 1e-13);
        assert!(rel(pr, 1.0 / (1.0 + u)) < 1e-13);
        if let (Some(f0), Some(p0)) = (prev_force, prev_phase) {
            assert!((fr - 2.0).abs() < (f0 - 2.0).abs());
            assert!((pr - 1.0).abs() < (p0 - 1.0).abs());
        }
        prev_force = Some(fr);
        prev_phase = Some(pr);
    }
}

#[test]
fn coulomb_displacement_matches_gravity_with_equal_coupling() {
    let grav = ScenarioParams::gravity(1e6, 1.0, 1e3, 1e6);
    let coul = grav
        .with_coupling(Coupling::Coulomb { q_a: 1e3, q_b: 1e3 })
        .with_delta_x_min(1.0);
    assert_eq!(grav.coupling_strength(), coul.coupling_strength());
    assert_eq!(tb_displacement(&grav).unwrap(), tb_displacement(&coul).unwrap());
    assert_eq!(tb_phase(&grav, Expansion::Exact).unwrap(), tb_phase(&coul, Expansion::Exact).unwrap());
    assert!(tb_displacement(&coul.with_coupling(Coupling::Coulomb { q_a: 1.0, q_b: 1.0 })).is_ok());
    let mut missing = coul;
    missing.delta_x_min = None;
    assert!(matches!(tb_displacement(&missing), Err(cib::Error::MissingConfinement)));
}
