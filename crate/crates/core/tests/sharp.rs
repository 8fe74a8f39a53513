use hypineq::functionals::hardy_ratio;
use hypineq::profile::moser_profile;
use hypineq::sharp::{
    constant_sweep, estimate_sup_ratio, moser_blowup_diagnostic, BlowupVerdict, INJECTED_MOSER_J,
};
use hypineq::special::{critical_map, CriticalDirection};
use hypineq::{Denominator, ModelParams, Objective, OptimizerConfig};

fn quick() -> OptimizerConfig {
    OptimizerConfig { knot_count: 12, multistarts: 3, max_iters: 400, seed: 17, ..Default::default() }
}

fn hardy(q: f64) -> Objective {
    Objective::Hardy { q, beta: 0.0, denominator: Denominator::GradientOnly }
}

#[test]
fn estimate_is_deterministic() {
    let p = ModelParams::new(2).unwrap();
    let a = estimate_sup_ratio(&hardy(6.0), &quick(), &p).unwrap();
    let b = estimate_sup_ratio(&hardy(6.0), &quick(), &p).unwrap();
    assert_eq!(a, b);
}

#[test]
fn more_starts_never_lower_the_estimate() {
    let p = ModelParams::new(2).unwrap();
    let one = estimate_sup_ratio(&hardy(6.0), &quick(), &p).unwrap();
    let cfg = OptimizerConfig { multistarts: 6, ..quick() };
    let two = estimate_sup_ratio(&hardy(6.0), &cfg, &p).unwrap();
    assert!(two.constant >= one.constant * (1.0 - 1e-12));
}

#[test]
fn estimate_dominates_every_injected_moser_profile() {
    let p = ModelParams::new(2).unwrap();
    let est = estimate_sup_ratio(&hardy(8.0), &quick(), &p).unwrap();
    for &j in &INJECTED_MOSER_J {
        let (f, _) = moser_profile(j, 0.0, &p, 64).unwrap();
        let r = hardy_ratio(&f, 8.0, 0.0, &p, Denominator::GradientOnly).unwrap();
        assert!(est.constant >= r.ratio * (1.0 - 1e-12), "j={j}");
    }
    let again = hardy_ratio(&est.witness, 8.0, 0.0, &p, Denominator::GradientOnly).unwrap();
    assert!((again.ratio - est.constant).abs() <= 1e-10 * est.constant);
}

#[test]
fn gn_objectives_are_supported() {
    let p = ModelParams::new(2).unwrap();
    let gn = Objective::Gn { q: 6.0, beta1: 1.0, beta2: 0.0, delta: 0.8 };
    assert!(estimate_sup_ratio(&gn, &quick(), &p).unwrap().constant > 0.0);
    let gn3 = Objective::Gn3 { q: 6.0, beta: 0.5 };
    assert!(estimate_sup_ratio(&gn3, &quick(), &p).unwrap().constant > 0.0);
}

#[test]
fn small_sweep_is_sorted_positive_and_consistent() {
    let p = ModelParams::new(2).unwrap();
    let s = constant_sweep(&[10.0, 20.0], &hardy(2.0), &quick(), &p).unwrap();
    assert_eq!(s.entries.len(), 2);
    assert!(s.entries.iter().all(|e| e.estimate > 0.0 && e.estimate.is_finite()));
    let last = s.entries[1].estimate;
    assert!((s.trend_gap - (last - s.target_b).abs() / s.target_b).abs() < 1e-15);
    let implied = critical_map(last, 2, CriticalDirection::ConstantToAlpha).unwrap();
    assert!(implied <= 1.5 * 4.0 * std::f64::consts::PI);
    let t = s.to_table();
    assert_eq!(t.columns, ["q", "estimate", "target_B", "gap"]);
}

#[test]
fn moser_grows_at_critical_exponent() {
    let p = ModelParams::new(2).unwrap();
    let d = moser_blowup_diagnostic(&[5.0, 10.0, 20.0], 4.0 * std::f64::consts::PI, 0.0, 0.0, 0.0, &p, 256)
        .unwrap();
    assert_eq!(d.verdict, BlowupVerdict::Growth);
    let r: Vec<f64> = d.rows.iter().map(|r| r.tm_ratio).collect();
    assert!(r[2] > 2.0 * r[0], "{r:?}");
}
