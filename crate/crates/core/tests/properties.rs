use proptest::prelude::*;

use hypineq::functionals::{
    ckn_explicit, delta_admissible, gn3_ratio, gn_ratio, hardy_interpolation, hardy_ratio,
    tm_denominated_ratio, tm_functional, uncertainty_check, CknParams, Denominator,
};
use hypineq::geometry::{ball_to_geodesic, geodesic_to_ball};
use hypineq::profile::test_family;
use hypineq::special::{critical_map, truncated_exp};
use hypineq::{CriticalDirection, ModelParams, ProfileSpec, RadialProfile};

fn random_profile() -> impl Strategy<Value = RadialProfile> {
    (any::<u64>(), 2usize..12, 0.3f64..4.0).prop_map(|(seed, segments, radius)| {
        test_family(ProfileSpec::Random { seed, segments, radius }).unwrap()
    })
}

fn dim() -> impl Strategy<Value = ModelParams> {
    (2usize..=4).prop_map(|n| ModelParams::new(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interpolation_slack_is_nonnegative(f in random_profile(), p in dim(), s in 0.0f64..1.0, b in 0.0f64..0.99) {
        let n = p.nf();
        let r = hardy_interpolation(&f, n + 2.0 * n * s, b * n, &p).unwrap();
        prop_assert!(r.get_detail("holder_slack").unwrap() >= -1e-12);
    }

    #[test]
    fn ckn_holder_slack_is_nonnegative(f in random_profile(), d in 0.65f64..1.0) {
        let p = ModelParams::new(2).unwrap();
        let ck = CknParams::new(2.0, 4.0, 0.0, -0.1, d, 2).unwrap();
        let r = ckn_explicit(&f, &ck, 1.0, &p).unwrap();
        prop_assert!(r.get_detail("holder_slack").unwrap() >= -1e-12);
    }

    #[test]
    fn uncertainty_holder_slack_is_nonnegative(f in random_profile(), q in 2.0f64..6.0, b in 0.0f64..1.9) {
        let p = ModelParams::new(2).unwrap();
        let r = uncertainty_check(&f, q, b, 1.0, &p).unwrap();
        prop_assert!(r.get_detail("holder_slack").unwrap() >= -1e-12);
    }

    #[test]
    fn ratios_are_scale_invariant(f in random_profile(), c in prop::sample::select(vec![1e-3, 1.0, 1e3])) {
        let p = ModelParams::new(2).unwrap();
        let g = f.scale(c);
        let h0 = hardy_ratio(&f, 5.0, 0.5, &p, Denominator::GradientOnly).unwrap().ratio;
        let h1 = hardy_ratio(&g, 5.0, 0.5, &p, Denominator::GradientOnly).unwrap().ratio;
        prop_assert!((h0 - h1).abs() <= 1e-10 * h0);
        let g0 = gn_ratio(&f, 5.0, 1.0, 0.0, 0.8, &p).unwrap().ratio;
        let g1 = gn_ratio(&g, 5.0, 1.0, 0.0, 0.8, &p).unwrap().ratio;
        prop_assert!((g0 - g1).abs() <= 1e-10 * g0);
        let t0 = gn3_ratio(&f, 5.0, 0.5, &p).unwrap().ratio;
        let t1 = gn3_ratio(&g, 5.0, 0.5, &p).unwrap().ratio;
        prop_assert!((t0 - t1).abs() <= 1e-10 * t0);
    }

    #[test]
    fn sobolev_denominator_is_smaller(f in random_profile(), q in 2.0f64..20.0) {
        let p = ModelParams::new(2).unwrap();
        let a = hardy_ratio(&f, q, 0.0, &p, Denominator::GradientOnly).unwrap().ratio;
        let b = hardy_ratio(&f, q, 0.0, &p, Denominator::FullSobolev).unwrap().ratio;
        prop_assert!(b <= a);
    }

    #[test]
    fn tm_is_monotone_in_alpha(f in random_profile(), a in 0.0f64..8.0, da in 0.0f64..4.0) {
        let p = ModelParams::new(2).unwrap();
        let lo = tm_functional(&f, a, 0.5, &p).unwrap();
        let hi = tm_functional(&f, a + da, 0.5, &p).unwrap();
        prop_assert!(hi >= lo * (1.0 - 1e-12));
    }

    #[test]
    fn denominated_lhs_is_dominated(f in random_profile(), a in 0.0f64..12.0) {
        let p = ModelParams::new(2).unwrap();
        let r = tm_denominated_ratio(&f, a, 0.5, &p).unwrap();
        let g = f.scale(1.0 / r.get_detail("gradient_normalization").unwrap());
        prop_assert!(r.lhs <= tm_functional(&g, a, 0.5, &p).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn gn3_is_dominated_by_undamped(f in random_profile(), q in 2.0f64..30.0) {
        let p = ModelParams::new(2).unwrap();
        let r = gn3_ratio(&f, q, 0.0, &p).unwrap();
        prop_assert!(r.lhs <= r.get_detail("undamped_lhs").unwrap());
    }
}

proptest! {
    #[test]
    fn truncated_exp_recursion(n in 2usize..8, t in 0.0f64..50.0) {
        // Φ_n(t) = Φ_{n+1}(t) + t^{n-1}/(n-1)!
        let mut head = 1.0;
        for k in 1..n {
            head *= t / k as f64;
        }
        let lhs = truncated_exp(n, t).unwrap();
        let rhs = truncated_exp(n + 1, t).unwrap() + head;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300));
    }

    #[test]
    fn truncated_exp_is_convex(n in 2usize..6, s in 0.0f64..20.0, t in 0.0f64..20.0, l in 0.0f64..1.0) {
        let mid = truncated_exp(n, l * s + (1.0 - l) * t).unwrap();
        let chord = l * truncated_exp(n, s).unwrap() + (1.0 - l) * truncated_exp(n, t).unwrap();
        prop_assert!(mid <= chord * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn ball_and_distance_invert(x in 0.0f64..0.999) {
        let g = ball_to_geodesic(x, 3).unwrap();
        prop_assert!((geodesic_to_ball(g.rho) - x).abs() <= 1e-14);
    }

    #[test]
    fn critical_map_round_trip(c in 1e-3f64..1e3, n in 2usize..8) {
        let a = critical_map(c, n, CriticalDirection::ConstantToAlpha).unwrap();
        let back = critical_map(a, n, CriticalDirection::AlphaToConstant).unwrap();
        prop_assert!((back - c).abs() <= 1e-12 * c);
    }

    #[test]
    fn delta_set_matches_definition(b1 in 0.0f64..1.99, b2 in -5.0f64..5.0, d in 0.001f64..1.0) {
        let adm = delta_admissible(b1, b2, 2).unwrap();
        let x = b1 - b2 * (1.0 - d);
        let direct = 0.0 <= x && x < 2.0 * d;
        // borderline cases differ only by rounding of the endpoint
        let margin = (x.abs()).min((x - 2.0 * d).abs());
        prop_assume!(margin > 1e-12);
        prop_assert_eq!(adm.contains(d), direct);
    }

    #[test]
    fn profile_text_round_trip(seed in any::<u64>(), m in 2usize..20, r in 0.1f64..10.0) {
        let f = test_family(ProfileSpec::Random { seed, segments: m, radius: r }).unwrap();
        let (g, n) = RadialProfile::from_text(&f.to_text(3)).unwrap();
        prop_assert_eq!(n, 3);
        prop_assert_eq!(g, f);
    }
}
