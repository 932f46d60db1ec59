use proptest::prelude::*;

use logconcave::discrete::{solve_pq, AsymLaplaceD};
use logconcave::extremal::{certify_majorant_c, certify_majorant_d, majorant_c};
use logconcave::logconcave::{gen_logconcave_c, gen_logconcave_d, is_logconcave_c, is_logconcave_d};
use logconcave::orders::{certify_order, crossing_pattern, empirical_order_check, lagrange_interpolant};
use logconcave::{AsymLaplaceC, ContinuousGenConfig, DiscreteGenConfig, DiscretePMF, GridDensity, Law, OrderClass, Sign, Verdict};

fn config_c() -> impl Strategy<Value = ContinuousGenConfig> {
    (3usize..40, 0.25f64..4.0, 0.5f64..12.0).prop_map(|(knot_count, half, slope_scale)| ContinuousGenConfig {
        knot_count,
        domain: (-half, half),
        slope_scale,
    })
}

fn config_d() -> impl Strategy<Value = DiscreteGenConfig> {
    (1usize..50, 0.02f64..2.0).prop_map(|(support_len, concavity_scale)| DiscreteGenConfig { support_len, concavity_scale })
}

fn density() -> impl Strategy<Value = GridDensity> {
    (any::<u64>(), config_c()).prop_map(|(seed, cfg)| gen_logconcave_c(seed, &cfg).unwrap())
}

fn pmf() -> impl Strategy<Value = DiscretePMF> {
    (any::<u64>(), config_d()).prop_map(|(seed, cfg)| gen_logconcave_d(seed, &cfg).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_densities_are_logconcave(f in density()) {
        prop_assert!(is_logconcave_c(&f));
        prop_assert!((f.total_mass() - 1.0).abs() < 1e-12);
        let (lo, hi) = f.support();
        prop_assert!(lo < hi);
    }

    #[test]
    fn generated_pmfs_are_logconcave(g in pmf()) {
        prop_assert!(is_logconcave_d(&g));
        let mass: f64 = g.weights().iter().sum();
        prop_assert!((mass - 1.0).abs() < 1e-12);
        prop_assert!(g.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn density_csv_round_trip(f in density()) {
        let mut buf = Vec::new();
        f.to_csv(&mut buf).unwrap();
        let back = GridDensity::from_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.knots(), f.knots());
        for (a, b) in back.logvals().iter().zip(f.logvals()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn pmf_csv_round_trip(g in pmf()) {
        let mut buf = Vec::new();
        g.to_csv(&mut buf).unwrap();
        let back = DiscretePMF::from_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.offset(), g.offset());
        for (a, b) in back.weights().iter().zip(g.weights()) {
            prop_assert!((a - b).abs() <= 1e-15 * b.max(1.0));
        }
    }

    #[test]
    fn variance_at_a_point(f in density(), u in 0.0f64..=1.0) {
        let (lo, hi) = f.support();
        let t = lo + (hi - lo) * u;
        let ft = f.pdf(t);
        prop_assume!(ft > 0.0);
        let m = f.moments(2.0);
        prop_assert!(2.0 * m.var <= 1.0 / (ft * ft) + (m.mean - t).powi(2) + 1e-9);
    }

    #[test]
    fn translate_gives_one_certified_crossing(f in density(), frac in 0.05f64..1.0) {
        let g = f.shifted(frac * f.variance().sqrt());
        let pattern = crossing_pattern(&f, &g, None);
        prop_assert_eq!(pattern.count(), 1);
        prop_assert_eq!(pattern.final_sign(), Sign::Positive);
        let cert = certify_order(&f, &g, 1, 1e-8);
        prop_assert_eq!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn majorant_matches_value_and_mean(f in density(), u in 0.02f64..0.98) {
        let (lo, hi) = f.support();
        let t = lo + (hi - lo) * u;
        let m = majorant_c(&f, t).unwrap();
        prop_assert!((m.pdf(t) - f.pdf(t)).abs() <= 1e-12 * f.pdf(t));
        prop_assert!((m.mean() - f.mean()).abs() <= 1e-9 * (1.0 + f.variance().sqrt()));
        prop_assert!(m.lambda1 >= 0.0 && m.lambda2 >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn majorant_c_has_two_crossings_and_is_sound(f in density(), u in 0.05f64..0.95) {
        let (lo, hi) = f.support();
        let t = lo + (hi - lo) * u;
        let (m, cert) = certify_majorant_c(&f, t, 1e-8).unwrap();
        prop_assert!(cert.crossings.count() <= 2);
        prop_assert_eq!(cert.verdict, Verdict::Certified);
        let report = empirical_order_check(&f, &m, OrderClass::Convex).unwrap();
        prop_assert!(report.consistent(1e-8), "bank violation {:?}", report);
        prop_assert!(m.variance() >= f.variance() - 1e-9);
    }

    #[test]
    fn majorant_d_is_sound(g in pmf(), pick in any::<prop::sample::Index>()) {
        let peak = g.max_density();
        let support: Vec<i64> = g.support().filter(|&n| g.pmf(n) >= 1e-3 * peak).collect();
        let n = *pick.get(&support);
        let (m, cert) = certify_majorant_d(&g, n, 1e-8).unwrap();
        prop_assert!(m.mode == n);
        prop_assert!(cert.crossings.count() <= 2);
        prop_assert_eq!(cert.verdict, Verdict::Certified);
        prop_assert!(m.variance() >= g.variance() - 1e-9);
    }

    #[test]
    fn interpolation_error_has_node_product_sign(nodes in prop::collection::btree_set(-400i32..400, 1..6)) {
        // f = e^x has every derivative positive, so f - P carries the sign of Π (x - x_k).
        let nodes: Vec<f64> = nodes.into_iter().map(|k| k as f64 / 100.0).collect();
        let p = lagrange_interpolant(f64::exp, &nodes).unwrap();
        let (a, b) = (nodes[0] - 1.0, nodes[nodes.len() - 1] + 1.0);
        for i in 0..=10_000 {
            let x = a + (b - a) * i as f64 / 10_000.0;
            let prod: f64 = nodes.iter().map(|&n| x - n).product();
            let err = x.exp() - p.eval(x);
            let scale = 1e-9 * x.exp().max(1.0);
            if prod.abs() > 1e-6 && err.abs() > scale {
                prop_assert_eq!(err > 0.0, prod > 0.0, "x = {}", x);
            }
        }
    }

    #[test]
    fn solve_pq_inverts(g0 in 0.02f64..1.0, frac in -0.999f64..0.999) {
        let mu = frac * (1.0 / g0 - 1.0);
        let d = solve_pq(g0, mu).unwrap();
        let (mean, _) = d.mean_var();
        prop_assert!((d.normalizer() - g0).abs() <= 1e-12);
        prop_assert!((mean - mu).abs() <= 1e-10 * mu.abs().max(1.0));
    }

    #[test]
    fn asymmetric_laplace_attains_equality_at_mode(l1 in 0.0f64..3.0, l2 in 0.05f64..3.0, mode in -2.0f64..2.0) {
        let d = AsymLaplaceC::new(l1, l2, mode).unwrap();
        let (m, v) = d.mean_var();
        let f = d.pdf(mode);
        prop_assert!((1.0 / (f * f) + (m - mode).powi(2) - 2.0 * v).abs() <= 1e-9 * (1.0 + v));
    }

    #[test]
    fn discrete_laplace_attains_equality_at_mode(p in 0.0f64..0.95, q in 0.0f64..0.95) {
        let d = AsymLaplaceD::new(p, q, 0).unwrap();
        let (m, v) = d.mean_var();
        let g = d.pmf(0);
        prop_assert!((1.0 / (g * g) - 1.0 + m * m - 2.0 * v).abs() <= 1e-9 * (1.0 + v));
    }
}
