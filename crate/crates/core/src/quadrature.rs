//! Radial integrals over `H^n` and the weighted norms built on them.
//!
//! Every integral is reduced to `ω ∫_0^R g(ρ) dρ` with a possibly singular
//! factor `ρ^{-β}` at the origin. The interval is split at profile knots, the
//! first panel is graded geometrically (ratio 1/2) towards 0, and a fixed
//! 16-point Gauss–Legendre rule is applied per panel. For a genuine
//! singularity `ρ^{-p}`, `p > 0`, the panel touching the origin is mapped by
//! `ρ = h u^{1/(1-p)}`, which makes its integrand bounded. All panels are then
//! halved until two successive totals agree to the requested tolerance.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geometry::ModelParams;
use crate::profile::RadialProfile;
use crate::special::Neumaier;

/// Gauss–Legendre points per panel.
pub const GL_ORDER: usize = 16;
/// Relative agreement required between successive refinements.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Refinement stops with [`Error::NonConvergence`] beyond this many panels.
pub const MAX_PANELS: usize = 1 << 20;

/// Innermost graded panel is never pushed below this radius.
const GRADING_FLOOR: f64 = 1e-280;
/// Grading depth once the origin panel is handled by substitution.
const SINGULAR_GRADING_DEPTH: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub panels: usize,
}

/// `(nodes, weights)` on `[-1, 1]`, by Newton iteration on `P_16`.
fn gauss_legendre() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let m = GL_ORDER;
        let mut x = [0.0; GL_ORDER];
        let mut w = [0.0; GL_ORDER];
        for i in 0..m.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=m {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = -z;
            x[m - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
            w[m - 1 - i] = w[i];
        }
        (x, w)
    })
}

fn panel_sum<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64) -> f64 {
    let (x, w) = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    for i in 0..GL_ORDER {
        s += w[i] * g(mid + half * x[i]);
    }
    s * half
}

/// `∫_0^h g` for `g ~ ρ^{-p}`, `0 < p < 1`, after `ρ = h u^γ` with `γ = 1/(1-p)`,
/// which cancels the singularity.
fn origin_panel_sum<G: Fn(f64) -> f64>(g: &G, h: f64, p: f64) -> f64 {
    let gamma = 1.0 / (1.0 - p);
    panel_sum(&|u: f64| g(h * u.powf(gamma)) * h * gamma * u.powf(gamma - 1.0), 0.0, 1.0)
}

fn total<G: Fn(f64) -> f64>(g: &G, edges: &[f64], origin_power: f64) -> f64 {
    let mut acc = Neumaier::default();
    for e in edges.windows(2) {
        if e[0] == 0.0 && origin_power > 0.0 {
            acc.add(origin_panel_sum(g, e[1], origin_power));
        } else {
            acc.add(panel_sum(g, e[0], e[1]));
        }
    }
    acc.value()
}

fn halve(edges: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * edges.len() - 1);
    for e in edges.windows(2) {
        out.push(e[0]);
        out.push(0.5 * (e[0] + e[1]));
    }
    out.push(*edges.last().unwrap());
    out
}

fn refine_until_converged<G: Fn(f64) -> f64>(
    g: G,
    mut edges: Vec<f64>,
    tol: f64,
    origin_power: f64,
) -> Result<QuadResult> {
    let mut coarse = total(&g, &edges, origin_power);
    loop {
        let panels = 2 * (edges.len() - 1);
        if panels > MAX_PANELS {
            return Err(Error::NonConvergence {
                estimate: coarse,
                error: f64::INFINITY,
                panels: edges.len() - 1,
            });
        }
        edges = halve(&edges);
        let fine = total(&g, &edges, origin_power);
        let diff = (fine - coarse).abs();
        if !fine.is_finite() {
            return Err(Error::NonConvergence {
                estimate: fine,
                error: f64::INFINITY,
                panels,
            });
        }
        if diff <= tol * fine.abs() || diff == 0.0 {
            return Ok(QuadResult {
                value: fine,
                abs_error_estimate: diff,
                panels,
            });
        }
        if panels * 2 > MAX_PANELS {
            return Err(Error::NonConvergence {
                estimate: fine,
                error: diff,
                panels,
            });
        }
        coarse = fine;
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("quadrature tolerance {tol} must be > 0")));
    }
    Ok(())
}

/// Integrates a smooth-between-breaks function over `[breaks[0], breaks[last]]`.
pub fn integrate_on_breaks<G: Fn(f64) -> f64>(g: G, breaks: &[f64], tol: f64) -> Result<QuadResult> {
    check_tol(tol)?;
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("integration breaks must be strictly increasing"));
    }
    refine_until_converged(g, breaks.to_vec(), tol, 0.0)
}

/// `∫_0^R g(ρ) dρ` for `g ~ ρ^{-p}` near the origin, `p = singularity_power < 1`.
pub fn radial_integral<G: Fn(f64) -> f64>(
    g: G,
    support: f64,
    singularity_power: f64,
    tol: f64,
) -> Result<QuadResult> {
    radial_integral_with_breaks(g, support, singularity_power, tol, &[])
}

/// As [`radial_integral`], with panels additionally split at `breaks`.
pub fn radial_integral_with_breaks<G: Fn(f64) -> f64>(
    g: G,
    support: f64,
    singularity_power: f64,
    tol: f64,
    breaks: &[f64],
) -> Result<QuadResult> {
    check_tol(tol)?;
    if !(support > 0.0) || !support.is_finite() {
        return Err(Error::domain(format!("support radius {support} must be finite and > 0")));
    }
    if !(singularity_power < 1.0) {
        return Err(Error::domain(format!(
            "integrand ~ ρ^(-{singularity_power}) is not integrable at the origin"
        )));
    }
    let mut interior: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&b| b > 0.0 && b < support)
        .collect();
    interior.sort_by(f64::total_cmp);
    interior.dedup();
    let first = interior.first().copied().unwrap_or(support);

    let decay = (1.0 - singularity_power).max(0.05);
    let mut depth = ((1.0 / tol).log2() / decay).ceil() as usize + 2;
    if singularity_power > 0.0 {
        // the origin panel is integrated exactly in its singular part
        depth = depth.min(SINGULAR_GRADING_DEPTH);
    }
    let max_depth = (first / GRADING_FLOOR).log2().floor().max(0.0) as usize;
    depth = depth.min(max_depth);

    let mut edges = Vec::with_capacity(depth + interior.len() + 2);
    edges.push(0.0);
    for k in (1..=depth).rev() {
        edges.push(first * 0.5f64.powi(k as i32));
    }
    edges.extend(interior);
    edges.push(support);
    refine_until_converged(g, edges, tol, singularity_power)
}

/// `ρ^{-β} sinh^{n-1}ρ`, written to stay finite for tiny `ρ`.
#[inline]
pub(crate) fn radial_weight(rho: f64, n: usize, beta: f64) -> f64 {
    let shape = if rho < 1e-4 {
        1.0 + rho * rho / 6.0
    } else {
        rho.sinh() / rho
    };
    rho.powf(n as f64 - 1.0 - beta) * shape.powi(n as i32 - 1)
}

/// Singularity power of `h(ρ) ρ^{-β} sinh^{n-1}ρ` at 0 when `h ~ ρ^order`.
fn effective_power(n: usize, beta: f64, order: f64) -> f64 {
    beta - (n as f64 - 1.0) - order
}

/// `ω ∫_0^R h(v, s, ρ) ρ^{-β} sinh^{n-1}ρ dρ` where `(v, s)` is the profile
/// value and slope at `ρ` and `h ~ ρ^vanishing_order` at the origin.
pub fn profile_integral<H: Fn(f64, f64, f64) -> f64>(
    f: &RadialProfile,
    params: &ModelParams,
    beta: f64,
    vanishing_order: f64,
    tol: f64,
    h: H,
) -> Result<QuadResult> {
    let n = params.n();
    let p = effective_power(n, beta, vanishing_order);
    let knots = f.knots();
    let g = |rho: f64| {
        let (v, s) = f.evaluate_with_derivative(rho);
        h(v, s, rho) * radial_weight(rho, n, beta)
    };
    let r = radial_integral_with_breaks(g, f.support(), p, tol, &knots[1..knots.len() - 1])?;
    Ok(QuadResult {
        value: params.omega() * r.value,
        abs_error_estimate: params.omega() * r.abs_error_estimate,
        panels: r.panels,
    })
}

/// Exponent/weight pair of the norm `‖f/ρ^{β/q}‖_{L^q}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    pub q: f64,
    pub beta: f64,
}

impl NormSpec {
    pub fn new(q: f64, beta: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::domain(format!("Lebesgue exponent q = {q} must satisfy 1 ≤ q < ∞")));
        }
        if !beta.is_finite() {
            return Err(Error::domain(format!("weight power β = {beta} must be finite")));
        }
        Ok(Self { q, beta })
    }
}

/// Order of vanishing of `|f|^q` at the origin (0, `q`, or effectively ∞).
fn lq_vanishing_order(f: &RadialProfile, q: f64) -> f64 {
    let (v0, s0) = f.evaluate_with_derivative(0.0);
    if v0 != 0.0 {
        0.0
    } else if s0 != 0.0 {
        q
    } else {
        f64::INFINITY
    }
}

/// `(M, ω ∫ (|f|/M)^q ρ^{-β} dV)` with `M = max|f|`, so large `q` cannot overflow.
pub(crate) fn lq_scaled(
    f: &RadialProfile,
    q: f64,
    beta: f64,
    params: &ModelParams,
) -> Result<(f64, QuadResult)> {
    let m = f.max_abs();
    if m == 0.0 {
        return Ok((0.0, QuadResult { value: 0.0, abs_error_estimate: 0.0, panels: 0 }));
    }
    let order = lq_vanishing_order(f, q).min(1e6);
    if effective_power(params.n(), beta, order) >= 1.0 {
        return Err(Error::domain(format!(
            "∫|f|^{q} ρ^(-{beta}) dV diverges at the origin (need β < n when f(0) ≠ 0)"
        )));
    }
    let inv = 1.0 / m;
    let r = profile_integral(f, params, beta, order, DEFAULT_TOL, |v, _, _| (v.abs() * inv).powf(q))?;
    Ok((m, r))
}

/// `ω ∫ |f|^q ρ^{-β} sinh^{n-1}ρ dρ`, the `q`-th power of the weighted norm.
pub fn weighted_lq_integral(f: &RadialProfile, spec: NormSpec, params: &ModelParams) -> Result<QuadResult> {
    let (m, r) = lq_scaled(f, spec.q, spec.beta, params)?;
    let mq = m.powf(spec.q);
    Ok(QuadResult {
        value: mq * r.value,
        abs_error_estimate: mq * r.abs_error_estimate,
        panels: r.panels,
    })
}

/// Norm together with the absolute error estimate propagated to the norm.
pub(crate) fn weighted_lq_norm_with_error(
    f: &RadialProfile,
    spec: NormSpec,
    params: &ModelParams,
) -> Result<(f64, f64)> {
    let (m, r) = lq_scaled(f, spec.q, spec.beta, params)?;
    if m == 0.0 || r.value == 0.0 {
        return Ok((0.0, 0.0));
    }
    let norm = m * r.value.powf(1.0 / spec.q);
    Ok((norm, norm * r.abs_error_estimate / (spec.q * r.value)))
}

/// `‖f/ρ^{β/q}‖_{L^q(H^n)}`.
pub fn weighted_lq_norm(f: &RadialProfile, spec: NormSpec, params: &ModelParams) -> Result<f64> {
    weighted_lq_norm_with_error(f, spec, params).map(|(v, _)| v)
}

/// `ω ∫ |f'(ρ)|^n sinh^{n-1}ρ dρ`.
pub fn dirichlet_integral(f: &RadialProfile, params: &ModelParams) -> Result<QuadResult> {
    let n = params.n() as i32;
    profile_integral(f, params, 0.0, 0.0, DEFAULT_TOL, |_, s, _| s.abs().powi(n))
}

pub(crate) fn dirichlet_norm_with_error(f: &RadialProfile, params: &ModelParams) -> Result<(f64, f64)> {
    let r = dirichlet_integral(f, params)?;
    if r.value == 0.0 {
        return Ok((0.0, 0.0));
    }
    let nf = params.nf();
    let norm = r.value.powf(1.0 / nf);
    Ok((norm, norm * r.abs_error_estimate / (nf * r.value)))
}

/// `‖∇_g f‖_{L^n(H^n)}`; for radial `f`, `|∇_g f| = |f'(ρ)|`.
pub fn dirichlet_norm(f: &RadialProfile, params: &ModelParams) -> Result<f64> {
    dirichlet_norm_with_error(f, params).map(|(v, _)| v)
}

/// `(‖∇_g f‖_n^n + ‖f‖_n^n)^{1/n}`.
pub fn sobolev_norm(f: &RadialProfile, params: &ModelParams) -> Result<f64> {
    let nf = params.nf();
    let grad = dirichlet_integral(f, params)?.value;
    let mass = weighted_lq_integral(f, NormSpec::new(nf, 0.0)?, params)?.value;
    Ok((grad + mass).powf(1.0 / nf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{test_family, ProfileSpec};
    use std::f64::consts::PI;

    fn cosh1() -> f64 {
        1f64.cosh()
    }

    #[test]
    fn rule_integrates_polynomials() {
        let (x, w) = gauss_legendre();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 30 is exact for 16 points
        let s: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn closed_forms() {
        let r = radial_integral(|x: f64| x.sinh(), 1.0, -1.0, 1e-10).unwrap();
        assert!((r.value - (cosh1() - 1.0)).abs() < 1e-10 * (cosh1() - 1.0));
        let r = radial_integral(|x: f64| x.powf(-0.5), 1.0, 0.5, 1e-8).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8 * 2.0);
        let r = radial_integral(|_| 0.0, 1.0, 0.0, 1e-8).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn strong_singularity() {
        // ∫_0^1 ρ^{-0.95} dρ = 20
        let r = radial_integral(|x: f64| x.powf(-0.95), 1.0, 0.95, 1e-8).unwrap();
        assert!((r.value - 20.0).abs() < 1e-6, "{}", r.value);
        // ∫_0^1 ρ^{-0.99} cosh ρ dρ, at the default tolerance
        let r = radial_integral(|x: f64| x.powf(-0.99) * x.cosh(), 1.0, 0.99, DEFAULT_TOL).unwrap();
        let series: f64 = (0..20)
            .map(|k| {
                let fact: f64 = (1..=2 * k).map(|i| i as f64).product();
                1.0 / (fact * (2.0 * k as f64 + 0.01))
            })
            .sum();
        assert!((r.value / series - 1.0).abs() < 1e-11, "{} vs {series}", r.value);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(radial_integral(|x: f64| 1.0 / x, 1.0, 1.0, 1e-8).is_err());
        assert!(radial_integral(|x: f64| x, 0.0, 0.0, 1e-8).is_err());
        assert!(radial_integral(|x: f64| x, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn cap_reports_best_estimate() {
        // discontinuous integrand never agrees to 1e-300
        let err = integrate_on_breaks(|x: f64| if x < 0.3 { 1.0 } else { 0.0 }, &[0.0, 1.0], 1e-300)
            .unwrap_err();
        match err {
            Error::NonConvergence { estimate, .. } => assert!((estimate - 0.3).abs() < 1e-3),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn tent_norms() {
        let p = ModelParams::new(2).unwrap();
        let tent = test_family(ProfileSpec::Tent { radius: 1.0 }).unwrap();
        let l2 = weighted_lq_norm(&tent, NormSpec::new(2.0, 0.0).unwrap(), &p).unwrap();
        assert!((l2 - (2.0 * PI * (2.0 * cosh1() - 3.0)).sqrt()).abs() < 1e-12);
        assert!((l2 - 0.7358).abs() < 1e-4);
        let d = dirichlet_norm(&tent, &p).unwrap();
        assert!((d - (2.0 * PI * (cosh1() - 1.0)).sqrt()).abs() < 1e-12);
        assert!((d - 1.8473).abs() < 1e-4);
        let s = sobolev_norm(&tent, &p).unwrap();
        assert!((s - 1.9884).abs() < 1e-4);
        assert!(s >= d);
    }

    #[test]
    fn zero_profile_norms() {
        let p = ModelParams::new(3).unwrap();
        let z = test_family(ProfileSpec::Tent { radius: 1.0 }).unwrap().scale(0.0);
        assert_eq!(weighted_lq_norm(&z, NormSpec::new(3.0, 1.0).unwrap(), &p).unwrap(), 0.0);
        assert_eq!(dirichlet_norm(&z, &p).unwrap(), 0.0);
        assert_eq!(sobolev_norm(&z, &p).unwrap(), 0.0);
    }

    #[test]
    fn divergent_weight_is_rejected() {
        let p = ModelParams::new(2).unwrap();
        let tent = test_family(ProfileSpec::Tent { radius: 1.0 }).unwrap();
        assert!(weighted_lq_norm(&tent, NormSpec::new(2.0, 2.0).unwrap(), &p).is_err());
        // vanishing at the origin makes β = 2 integrable
        let bump = RadialProfile::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        assert!(weighted_lq_norm(&bump, NormSpec::new(2.0, 2.0).unwrap(), &p).is_ok());
        assert!(NormSpec::new(0.5, 0.0).is_err());
    }

    #[test]
    fn plateau_norms_increase_towards_sup() {
        let p = ModelParams::new(2).unwrap();
        let f = test_family(ProfileSpec::Plateau { inner: 1.0, radius: 2.0 }).unwrap();
        let norms: Vec<f64> = [2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&q| weighted_lq_norm(&f, NormSpec::new(q, 0.0).unwrap(), &p).unwrap())
            .collect();
        // the hyperbolic volume of the support exceeds one, so the trend is downward to 1
        assert!(norms.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()), "{norms:?}");
    }
}
