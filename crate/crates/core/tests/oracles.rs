//! Library values against independent evaluations done here: composite
//! Simpson rules on fine uniform grids, power series and exact sums.

use std::f64::consts::{E, PI};

use hypineq::functionals::{self, hardy_ratio, tm_functional, CknParams, Denominator};
use hypineq::geometry::{alpha_beta, sharp_constant_b};
use hypineq::profile::{moser_normalization, moser_profile, test_family, MOSER_DEFAULT_MESH};
use hypineq::quadrature::{dirichlet_norm, weighted_lq_norm};
use hypineq::sharp::{certified_constant_from_tm, moser_blowup_diagnostic};
use hypineq::special::{critical_map, equivalence_series, stirling_ratio, truncated_exp};
use hypineq::{CriticalDirection, ModelParams, NormSpec, ProfileSpec, SeriesVerdict};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Composite Simpson on `[a, b]` with `m` (even) intervals.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

fn omega(n: usize) -> f64 {
    match n {
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => unreachable!(),
    }
}

#[test]
fn tent_closed_forms_n2() {
    let p = ModelParams::new(2).unwrap();
    let t = test_family(ProfileSpec::Tent { radius: 1.0 }).unwrap();
    let l2 = weighted_lq_norm(&t, NormSpec::new(2.0, 0.0).unwrap(), &p).unwrap();
    assert!(rel(l2 * l2, 2.0 * PI * (2.0 * 1f64.cosh() - 3.0)) < 1e-12);
    let d = dirichlet_norm(&t, &p).unwrap();
    assert!(rel(d * d, 2.0 * PI * (1f64.cosh() - 1.0)) < 1e-12);
}

#[test]
fn weighted_norms_against_simpson() {
    // the weights keep the integrands smooth: β = 0 in n = 3, and ρ^{-1}sinh ρ in n = 2
    let cases = [(3usize, 5.0, 0.0, 2.0), (2, 3.0, 1.0, 1.5), (3, 7.5, 0.0, 0.7)];
    for &(n, q, beta, r) in &cases {
        let p = ModelParams::new(n).unwrap();
        let t = test_family(ProfileSpec::Tent { radius: r }).unwrap();
        let lib = weighted_lq_norm(&t, NormSpec::new(q, beta).unwrap(), &p).unwrap();
        let g = |x: f64| {
            let w = if x == 0.0 { if n as f64 - 1.0 - beta == 0.0 { 1.0 } else { 0.0 } } else {
                x.powf(-beta) * x.sinh().powi(n as i32 - 1)
            };
            (1.0 - x / r).powf(q) * w
        };
        let oracle = (omega(n) * simpson(g, 0.0, r, 20_000)).powf(1.0 / q);
        assert!(rel(lib, oracle) < 1e-10, "n={n} q={q} β={beta}: {lib} vs {oracle}");
    }
}

#[test]
fn hardy_ratio_against_simpson() {
    let p = ModelParams::new(3).unwrap();
    let t = test_family(ProfileSpec::Plateau { inner: 0.5, radius: 1.5 }).unwrap();
    let q = 4.0;
    let f = |x: f64| if x <= 0.5 { 1.0 } else { (1.5 - x) / 1.0 };
    let num = omega(3)
        * (simpson(|x| f(x).powf(q) * x.sinh().powi(2), 0.0, 0.5, 4000)
            + simpson(|x| f(x).powf(q) * x.sinh().powi(2), 0.5, 1.5, 8000));
    let den = omega(3) * simpson(|x| x.sinh().powi(2), 0.5, 1.5, 8000);
    let oracle = num.powf(1.0 / q) / (q.powf(2.0 / 3.0) * den.powf(1.0 / 3.0));
    let lib = hardy_ratio(&t, q, 0.0, &p, Denominator::GradientOnly).unwrap();
    assert!(rel(lib.ratio, oracle) < 1e-10, "{} vs {oracle}", lib.ratio);
}

#[test]
fn tm_functional_against_series_oracle() {
    // Φ_2(t) = e^t - 1 and the tent's integrand is smooth, so Simpson is accurate
    let p = ModelParams::new(2).unwrap();
    let t = test_family(ProfileSpec::Tent { radius: 1.0 }).unwrap();
    let (alpha, beta) = (3.0, 0.0);
    let g = |x: f64| ((alpha * (1.0 - x).powi(2)).exp_m1()) * x.sinh();
    let oracle = 2.0 * PI * simpson(g, 0.0, 1.0, 20_000);
    let lib = tm_functional(&t, alpha, beta, &p).unwrap();
    assert!(rel(lib, oracle) < 1e-10);
}

#[test]
fn truncated_exp_against_taylor_tail() {
    for n in 2..6 {
        for &t in &[1e-3, 0.5, 2.0, 7.0, 30.0] {
            // Σ_{k ≥ n-1} t^k/k!
            let mut term = 1.0;
            for k in 1..n {
                term *= t / k as f64;
            }
            let mut k = n - 1;
            let mut sum = 0.0;
            for _ in 0..400 {
                sum += term;
                k += 1;
                term *= t / k as f64;
            }
            let lib = truncated_exp(n, t).unwrap();
            assert!(rel(lib, sum) < 1e-13, "n={n} t={t}: {lib} vs {sum}");
        }
    }
}

/// `∫_{e^{-j}}^1 ρ^{-2} sinh ρ dρ = j + Σ_{k≥1} (1 - e^{-2kj}) / (2k (2k+1)!)`.
fn moser_integral_n2(j: f64) -> f64 {
    let mut s = j;
    let mut fact = 1.0; // (2k+1)!
    for k in 1..30 {
        let kf = k as f64;
        fact *= 2.0 * kf * (2.0 * kf + 1.0);
        s += (1.0 - (-2.0 * kf * j).exp()) / (2.0 * kf * fact);
    }
    s
}

#[test]
fn moser_normalization_against_series() {
    for &beta1 in &[0.0, 1.0] {
        for &j in &[2.0, 5.0, 10.0, 20.0] {
            let lib = moser_normalization(j, beta1, 2).unwrap();
            let oracle = (j.powf(-2.0 / (2.0 - beta1)) * moser_integral_n2(j)).powf(-0.5);
            assert!(rel(lib, oracle) < 1e-12, "j={j} β₁={beta1}");
        }
    }
}

#[test]
fn moser_profiles_have_unit_energy() {
    for n in [2usize, 3] {
        let p = ModelParams::new(n).unwrap();
        for &beta1 in &[0.0, 1.0] {
            for &j in &[2.0, 5.0, 10.0, 20.0] {
                let (f, _) = moser_profile(j, beta1, &p, MOSER_DEFAULT_MESH).unwrap();
                let d = dirichlet_norm(&f, &p).unwrap().powi(n as i32);
                assert!((d - 1.0).abs() < 1e-6, "n={n} β₁={beta1} j={j}: {d}");
            }
        }
    }
}

#[test]
fn moser_decay_is_order_one_over_j() {
    for &(n, beta2) in &[(2usize, 0.0), (2, 1.0), (3, 0.0)] {
        let p = ModelParams::new(n).unwrap();
        let d = moser_blowup_diagnostic(&[5.0, 10.0, 20.0, 40.0], 1.0, beta2, beta2, 0.0, &p, 256).unwrap();
        let jd: Vec<f64> = d.rows.iter().map(|r| r.j * r.decay).collect();
        let max = jd.iter().cloned().fold(f64::MIN, f64::max);
        let min = jd.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 2.0, "n={n} β₂={beta2}: {jd:?}");
    }
}

#[test]
fn sharp_constants_arithmetic() {
    let p = ModelParams::new(2).unwrap();
    assert!(rel(alpha_beta(&p, 0.0).unwrap(), 12.566370614359172) < 1e-15);
    assert!(rel(sharp_constant_b(&p, 0.0).unwrap(), 1.0 / (8.0 * PI * E).sqrt()) < 1e-14);
    let p3 = ModelParams::new(3).unwrap();
    let a = alpha_beta(&p3, 1.0).unwrap();
    assert!(rel(a, 3.0 * (4.0 * PI).sqrt() * (2.0 / 3.0)) < 1e-14);
}

#[test]
fn series_threshold_brackets() {
    for n in [2usize, 3, 4] {
        for &c in &[0.1, 1.0, 10.0] {
            let a_star = critical_map(c, n, CriticalDirection::ConstantToAlpha).unwrap();
            let below = equivalence_series(0.9 * a_star, c, n, 1.0, 100_000).unwrap();
            let above = equivalence_series(1.1 * a_star, c, n, 1.0, 100_000).unwrap();
            assert_eq!(below.verdict, SeriesVerdict::Converged, "n={n} C={c}");
            assert_eq!(above.verdict, SeriesVerdict::Diverging, "n={n} C={c}");
            let back = critical_map(a_star, n, CriticalDirection::AlphaToConstant).unwrap();
            assert!(rel(back, c) < 1e-12);
        }
    }
}

#[test]
fn series_sum_against_direct_sum() {
    // n = 2, x = α n' C^{n'} = 0.2: Σ_{k≥1} (0.2 k)^k / k!
    let (alpha, c) = (0.1, 1.0);
    let mut oracle = 0.0;
    let mut fact = 1.0;
    for k in 1..120 {
        fact *= k as f64;
        oracle += (0.2 * k as f64).powi(k) / fact;
    }
    let d = equivalence_series(alpha, c, 2, 1.0, 10_000).unwrap();
    assert!(rel(d.partial_sum, oracle) < 1e-11, "{} vs {oracle} {:?}", d.partial_sum, d);
}

#[test]
fn stirling_collapse() {
    for n in [2usize, 3] {
        assert!((stirling_ratio(200.0, n).unwrap() - 1.0).abs() < 0.05);
        assert!((stirling_ratio(2000.0, n).unwrap() - 1.0).abs() < 0.01);
    }
}

#[test]
fn certified_constant_against_exact_factorial() {
    // n = 2, q = 100: Γ(q/2 + 2) = 51!
    let p = ModelParams::new(2).unwrap();
    let alpha = 4.0 * PI - 0.1;
    let ln_fact: f64 = (2..=51).map(|k| (k as f64).ln()).sum();
    let oracle = (ln_fact / 100.0).exp() / alpha.sqrt();
    let lib = certified_constant_from_tm(alpha, 1.0, 100.0, 0.0, &p).unwrap();
    assert!(rel(lib, oracle) < 1e-12);
}

#[test]
fn certified_constant_normalized_limit() {
    let p = ModelParams::new(2).unwrap();
    let alpha = 4.0 * PI - 0.1;
    let at = |q: f64| certified_constant_from_tm(alpha, 1.0, q, 0.0, &p).unwrap() / q.sqrt();
    assert!(rel(at(1e3), at(1e4)) < 0.02);
    let target = critical_map(alpha, 2, CriticalDirection::AlphaToConstant).unwrap();
    assert!(rel(at(1e4), target) < 0.05);
}

#[test]
fn gn_t_form_matches_gn_ratio() {
    let p = ModelParams::new(2).unwrap();
    let f = test_family(ProfileSpec::Random { seed: 42, segments: 9, radius: 2.5 }).unwrap();
    for &q in &[3.0, 8.0, 40.0, 300.0] {
        let t = functionals::t_from_q(q, 2).unwrap();
        let a = functionals::gn_t_form(&f, t, 1.0, 0.0, 0.8, &p).unwrap();
        let b = functionals::gn_ratio(&f, q, 1.0, 0.0, 0.8, &p).unwrap();
        let c = a.get_detail("implied_constant").unwrap();
        assert!(rel(c, b.ratio) < 1e-12, "q={q}: {c} vs {}", b.ratio);
    }
}

#[test]
fn ckn_at_unit_delta_is_the_hardy_ratio() {
    let p = ModelParams::new(3).unwrap();
    let f = test_family(ProfileSpec::Random { seed: 7, segments: 12, radius: 3.0 }).unwrap();
    let ck = CknParams::new(3.0, 5.0, 0.0, -0.3, 1.0, 3).unwrap();
    let r = functionals::ckn_explicit(&f, &ck, 1.0, &p).unwrap();
    let h = hardy_ratio(&f, 5.0, 1.5, &p, Denominator::GradientOnly).unwrap();
    assert!(rel(r.ratio, h.ratio) < 1e-12);
}
