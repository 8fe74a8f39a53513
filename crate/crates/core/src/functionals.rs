//! Both sides of the Hardy, Trudinger–Moser and Caffarelli–Kohn–Nirenberg
//! inequalities on `H^n`, evaluated on radial profiles.
//!
//! Every operation returns an [`InequalityReport`]. For bounds of the form
//! `lhs ≤ C·rhs` with an unknown constant, `ratio = lhs/rhs` is the constant
//! that the given profile certifies from below. Where a constant is supplied
//! (`ckn_explicit`, `uncertainty_check`) the report instead says whether the
//! inequality holds for that profile.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::geometry::ModelParams;
use crate::profile::RadialProfile;
use crate::quadrature::{
    self, dirichlet_norm_with_error, lq_scaled, profile_integral, sobolev_norm,
    weighted_lq_norm_with_error, NormSpec, QuadResult, DEFAULT_TOL,
};
use crate::report::json_number;
use crate::special::truncated_exp_unchecked;

/// Which side an inequality bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `lhs ≤ rhs`: a ratio above one is a violation.
    Upper,
    /// `lhs ≥ rhs`: a ratio below one is a violation.
    Lower,
}

impl Bound {
    pub fn as_str(&self) -> &'static str {
        match self {
            Bound::Upper => "lhs<=rhs",
            Bound::Lower => "lhs>=rhs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub kind: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs/rhs`, with `0/0 → 0` flagged as degenerate.
    pub ratio: f64,
    pub degenerate: bool,
    pub bound: Bound,
    /// Echo of every input, in a stable order.
    pub params: Vec<(String, f64)>,
    /// Intermediate quantities (Hölder steps, slacks, normalizations).
    pub details: Vec<(String, f64)>,
    /// Worst absolute error estimate among the constituent quadratures.
    pub quad_error: f64,
}

impl InequalityReport {
    fn new(kind: &str, lhs: f64, rhs: f64, bound: Bound) -> Self {
        let (ratio, degenerate) = if rhs > 0.0 {
            (lhs / rhs, false)
        } else if lhs == 0.0 {
            (0.0, true)
        } else {
            (f64::INFINITY, true)
        };
        Self {
            kind: kind.to_string(),
            lhs,
            rhs,
            ratio,
            degenerate,
            bound,
            params: Vec::new(),
            details: Vec::new(),
            quad_error: 0.0,
        }
    }

    fn param(mut self, name: &str, value: f64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    fn detail(mut self, name: &str, value: f64) -> Self {
        self.details.push((name.to_string(), value));
        self
    }

    fn with_profile(self, f: &RadialProfile) -> Self {
        self.param("profile_knots", f.knots().len() as f64)
            .param("profile_support", f.support())
            .param("profile_max", f.max_abs())
    }

    fn with_error(mut self, err: f64) -> Self {
        self.quad_error = self.quad_error.max(err);
        self
    }

    pub fn get_param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn get_detail(&self, name: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// The ratio oriented so that values above one mean the inequality fails.
    pub fn violation_ratio(&self) -> f64 {
        match self.bound {
            Bound::Upper => self.ratio,
            Bound::Lower => {
                if self.lhs > 0.0 {
                    self.rhs / self.lhs
                } else if self.rhs == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), Value::String(self.kind.clone()));
        obj.insert("lhs".into(), json_number(self.lhs));
        obj.insert("rhs".into(), json_number(self.rhs));
        obj.insert("ratio".into(), json_number(self.ratio));
        obj.insert("degenerate".into(), Value::Bool(self.degenerate));
        obj.insert("bound".into(), Value::String(self.bound.as_str().into()));
        let pairs = |v: &[(String, f64)]| {
            Value::Object(v.iter().map(|(k, x)| (k.clone(), json_number(*x))).collect())
        };
        obj.insert("params".into(), pairs(&self.params));
        obj.insert("details".into(), pairs(&self.details));
        obj.insert("quad_error".into(), json_number(self.quad_error));
        Value::Object(obj)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    /// `q^{1-1/n} ‖∇_g f‖_n`.
    GradientOnly,
    /// `q^{1-1/n} ‖f‖_{W^{1,n}}`.
    FullSobolev,
}

impl Denominator {
    pub fn as_str(&self) -> &'static str {
        match self {
            Denominator::GradientOnly => "gradient",
            Denominator::FullSobolev => "sobolev",
        }
    }
}

fn check_q(q: f64, params: &ModelParams) -> Result<()> {
    if !(q >= params.nf()) || !q.is_finite() {
        return Err(Error::domain(format!(
            "exponent q = {q} must satisfy n ≤ q < ∞ (n = {})",
            params.n()
        )));
    }
    Ok(())
}

fn check_beta(name: &str, beta: f64, params: &ModelParams) -> Result<()> {
    if !(beta >= 0.0 && beta < params.nf()) {
        return Err(Error::domain(format!(
            "{name} = {beta} must satisfy 0 ≤ {name} < n (n = {})",
            params.n()
        )));
    }
    Ok(())
}

fn check_nonzero(f: &RadialProfile) -> Result<()> {
    if f.is_zero() {
        return Err(Error::domain("the profile is identically zero"));
    }
    Ok(())
}

fn norm(f: &RadialProfile, q: f64, beta: f64, params: &ModelParams) -> Result<(f64, f64)> {
    weighted_lq_norm_with_error(f, NormSpec::new(q, beta)?, params)
}

/// `‖f/ρ^{β/q}‖_q ≤ C q^{1-1/n} ‖∇_g f‖_n` (or the full Sobolev norm).
pub fn hardy_ratio(
    f: &RadialProfile,
    q: f64,
    beta: f64,
    params: &ModelParams,
    denominator: Denominator,
) -> Result<InequalityReport> {
    check_q(q, params)?;
    check_beta("β", beta, params)?;
    check_nonzero(f)?;
    let (lhs, e1) = norm(f, q, beta, params)?;
    let (den, e2) = match denominator {
        Denominator::GradientOnly => dirichlet_norm_with_error(f, params)?,
        Denominator::FullSobolev => (sobolev_norm(f, params)?, 0.0),
    };
    let scale = q.powf(1.0 - 1.0 / params.nf());
    Ok(InequalityReport::new("hardy", lhs, scale * den, Bound::Upper)
        .param("n", params.nf())
        .param("q", q)
        .param("beta", beta)
        .param("sobolev_denominator", (denominator == Denominator::FullSobolev) as u8 as f64)
        .with_profile(f)
        .with_error(e1)
        .with_error(scale * e2))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("Trudinger–Moser exponent α = {alpha} must be finite and ≥ 0")));
    }
    Ok(())
}

/// `ω ∫ Φ_n(α|f|^{n'}) ρ^{-β} [(1+|f|)^{-n'}] sinh^{n-1}ρ dρ`.
fn tm_integral(
    f: &RadialProfile,
    alpha: f64,
    beta: f64,
    params: &ModelParams,
    denominated: bool,
) -> Result<QuadResult> {
    let n = params.n();
    let np = params.n_prime();
    let v0 = f.evaluate(0.0);
    // Φ_n(t) ~ t^{n-1} and t ~ |f|^{n'}, so a profile vanishing linearly gives ρ^n
    let order = if v0 != 0.0 { 0.0 } else { params.nf() };
    let r = profile_integral(f, params, beta, order, DEFAULT_TOL, |v, _, _| {
        let a = v.abs();
        let phi = truncated_exp_unchecked(n, alpha * a.powf(np));
        if denominated {
            phi / (1.0 + a).powf(np)
        } else {
            phi
        }
    });
    match r {
        Ok(r) if r.value.is_finite() => Ok(r),
        Ok(r) => Err(Error::BlowUp(format!(
            "Trudinger–Moser integral is not finite ({}) at α = {alpha}",
            r.value
        ))),
        Err(Error::NonConvergence { estimate, .. }) if !estimate.is_finite() => Err(Error::BlowUp(
            format!("Trudinger–Moser integrand overflowed at α = {alpha}"),
        )),
        Err(e) => Err(e),
    }
}

/// `∫_{H^n} Φ_n(α|f|^{n'}) ρ^{-β} dV_g` for the profile as given.
pub fn tm_functional(f: &RadialProfile, alpha: f64, beta: f64, params: &ModelParams) -> Result<f64> {
    check_alpha(alpha)?;
    check_beta("β", beta, params)?;
    Ok(tm_integral(f, alpha, beta, params, false)?.value)
}

/// Divides by the Dirichlet norm; `None` for the zero profile.
fn gradient_normalized(f: &RadialProfile, params: &ModelParams) -> Result<Option<(RadialProfile, f64)>> {
    if f.is_zero() {
        return Ok(None);
    }
    let (g, _) = dirichlet_norm_with_error(f, params)?;
    Ok(Some((f.scale(1.0 / g), g)))
}

/// Admissible set for the two-weight parameter `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaAdmissible {
    /// Equal weights force `δ = 0`.
    Fixed(f64),
    Interval {
        min: f64,
        min_inclusive: bool,
        max: f64,
        max_inclusive: bool,
    },
}

impl DeltaAdmissible {
    pub fn contains(&self, delta: f64) -> bool {
        match *self {
            DeltaAdmissible::Fixed(d) => delta == d,
            DeltaAdmissible::Interval {
                min,
                min_inclusive,
                max,
                max_inclusive,
            } => {
                let above = if min_inclusive { delta >= min } else { delta > min };
                let below = if max_inclusive { delta <= max } else { delta < max };
                above && below
            }
        }
    }
}

/// Values of `δ` allowed by `0 ≤ β₁ - β₂(1-δ) < nδ ≤ n` (β₁ ≠ β₂), or `δ = 0` (β₁ = β₂).
pub fn delta_admissible(beta1: f64, beta2: f64, n: usize) -> Result<DeltaAdmissible> {
    let nf = n as f64;
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    if !(beta1 >= 0.0 && beta1 < nf) {
        return Err(Error::domain(format!("β₁ = {beta1} must satisfy 0 ≤ β₁ < n (n = {n})")));
    }
    if !beta2.is_finite() {
        return Err(Error::domain(format!("β₂ = {beta2} must be finite")));
    }
    if beta1 == beta2 {
        return Ok(DeltaAdmissible::Fixed(0.0));
    }
    // δ ∈ (0, 1]
    let (mut min, mut min_inc, mut max, mut max_inc) = (0.0, false, 1.0, true);
    let raise = |v: f64, inc: bool, min: &mut f64, min_inc: &mut bool| {
        if v > *min || (v == *min && !inc) {
            *min = v;
            *min_inc = inc;
        }
    };
    let lower = |v: f64, inc: bool, max: &mut f64, max_inc: &mut bool| {
        if v < *max || (v == *max && !inc) {
            *max = v;
            *max_inc = inc;
        }
    };
    // 0 ≤ β₁ - β₂ + β₂δ
    if beta2 > 0.0 {
        raise((beta2 - beta1) / beta2, true, &mut min, &mut min_inc);
    } else if beta2 < 0.0 {
        lower((beta2 - beta1) / beta2, true, &mut max, &mut max_inc);
    }
    // β₁ - β₂ + β₂δ < nδ
    if nf - beta2 > 0.0 {
        raise((beta1 - beta2) / (nf - beta2), false, &mut min, &mut min_inc);
    } else if nf - beta2 < 0.0 {
        lower((beta1 - beta2) / (nf - beta2), false, &mut max, &mut max_inc);
    }
    let empty = min > max || (min == max && !(min_inc && max_inc));
    if empty {
        return Err(Error::domain(format!(
            "no δ ∈ (0,1] satisfies 0 ≤ β₁ − β₂(1−δ) < nδ ≤ n for β₁ = {beta1}, β₂ = {beta2}, n = {n}"
        )));
    }
    Ok(DeltaAdmissible::Interval {
        min,
        min_inclusive: min_inc,
        max,
        max_inclusive: max_inc,
    })
}

fn check_delta(beta1: f64, beta2: f64, delta: f64, n: usize) -> Result<()> {
    let adm = delta_admissible(beta1, beta2, n)?;
    if !adm.contains(delta) {
        let what = match adm {
            DeltaAdmissible::Fixed(_) => "δ = 0 is required when β₁ = β₂".to_string(),
            DeltaAdmissible::Interval { min, max, .. } => format!(
                "0 ≤ β₁ − β₂(1−δ) < nδ ≤ n requires δ in [{min}, {max}] (endpoint openness per the strict inequality)"
            ),
        };
        return Err(Error::domain(format!("δ = {delta} is not admissible: {what}")));
    }
    Ok(())
}

/// Two-weight Trudinger–Moser ratio
/// `∫Φ_n(α|f|^{n'})ρ^{-β₁}dV / (∫|f|^n ρ^{-β₂}dV)^{1-δ}`, evaluated at `f/‖∇_g f‖_n`.
pub fn tm_weighted_ratio(
    f: &RadialProfile,
    alpha: f64,
    beta1: f64,
    beta2: f64,
    delta: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    check_alpha(alpha)?;
    check_beta("β₁", beta1, params)?;
    check_delta(beta1, beta2, delta, params.n())?;
    let base = |r: InequalityReport, norm: f64| {
        r.param("n", params.nf())
            .param("alpha", alpha)
            .param("beta1", beta1)
            .param("beta2", beta2)
            .param("delta", delta)
            .with_profile(f)
            .detail("gradient_normalization", norm)
    };
    let Some((g, gnorm)) = gradient_normalized(f, params)? else {
        return Ok(base(InequalityReport::new("tm_weighted", 0.0, 0.0, Bound::Upper), 0.0));
    };
    let lhs = tm_integral(&g, alpha, beta1, params, false)?;
    let mass = quadrature::weighted_lq_integral(&g, NormSpec::new(params.nf(), beta2)?, params)?;
    let rhs = mass.value.powf(1.0 - delta);
    Ok(base(InequalityReport::new("tm_weighted", lhs.value, rhs, Bound::Upper), gnorm)
        .detail("weighted_mass", mass.value)
        .with_error(lhs.abs_error_estimate)
        .with_error(mass.abs_error_estimate))
}

/// Denominated Trudinger–Moser ratio
/// `∫Φ_n(α|f|^{n'})/((1+|f|)^{n'}ρ^β) dV / ∫|f|^n ρ^{-β} dV`, evaluated at `f/‖∇_g f‖_n`.
pub fn tm_denominated_ratio(
    f: &RadialProfile,
    alpha: f64,
    beta: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    check_alpha(alpha)?;
    check_beta("β", beta, params)?;
    let base = |r: InequalityReport, norm: f64| {
        r.param("n", params.nf())
            .param("alpha", alpha)
            .param("beta", beta)
            .with_profile(f)
            .detail("gradient_normalization", norm)
    };
    let Some((g, gnorm)) = gradient_normalized(f, params)? else {
        return Ok(base(InequalityReport::new("tm_denominated", 0.0, 0.0, Bound::Upper), 0.0));
    };
    let lhs = tm_integral(&g, alpha, beta, params, true)?;
    let mass = quadrature::weighted_lq_integral(&g, NormSpec::new(params.nf(), beta)?, params)?;
    Ok(base(InequalityReport::new("tm_denominated", lhs.value, mass.value, Bound::Upper), gnorm)
        .with_error(lhs.abs_error_estimate)
        .with_error(mass.abs_error_estimate))
}

/// Parameters of the explicit weighted interpolation inequality
/// `‖ρ^c f‖_{p₃} ≤ Ĉ₃ ‖∇_g f‖_n^δ ‖ρ^b f‖_{p₂}^{1-δ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CknParams {
    pub p2: f64,
    pub p3: f64,
    pub b: f64,
    pub c: f64,
    pub delta: f64,
    pub n: usize,
}

impl CknParams {
    pub fn new(p2: f64, p3: f64, b: f64, c: f64, delta: f64, n: usize) -> Result<Self> {
        let nf = n as f64;
        if n < 2 {
            return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
        }
        if !(p2 > 1.0) || !p2.is_finite() {
            return Err(Error::domain(format!("hypothesis 1 < p₂ < ∞ violated: p₂ = {p2}")));
        }
        if !(p3 > 0.0) || !p3.is_finite() {
            return Err(Error::domain(format!("hypothesis 0 < p₃ < ∞ violated: p₃ = {p3}")));
        }
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::domain("hypothesis b, c ∈ ℝ violated: non-finite weight power"));
        }
        if !(delta > 0.0 && delta <= 1.0 && delta > (p3 - p2) / p3) {
            return Err(Error::domain(format!(
                "hypothesis δ ∈ (0,1] ∩ ((p₃−p₂)/p₃, 1] violated: δ = {delta}, (p₃−p₂)/p₃ = {}",
                (p3 - p2) / p3
            )));
        }
        let gap = b * (1.0 - delta) - c;
        let cap = nf * (1.0 / p3 - (1.0 - delta) / p2);
        if !(gap >= 0.0 && gap < cap) {
            return Err(Error::domain(format!(
                "hypothesis 0 ≤ b(1−δ)−c < n(1/p₃ − (1−δ)/p₂) violated: b(1−δ)−c = {gap}, bound = {cap}"
            )));
        }
        let s = delta * p2 * p3 / (p2 - (1.0 - delta) * p3);
        if !(nf <= s) {
            return Err(Error::domain(format!(
                "hypothesis n ≤ δp₂p₃/(p₂−(1−δ)p₃) violated: n = {n}, δp₂p₃/(p₂−(1−δ)p₃) = {s}"
            )));
        }
        Ok(Self { p2, p3, b, c, delta, n })
    }

    /// Exponent `s = δp₂p₃/(p₂-(1-δ)p₃)` of the intermediate Hardy norm.
    pub fn hardy_exponent(&self) -> f64 {
        self.delta * self.p2 * self.p3 / (self.p2 - (1.0 - self.delta) * self.p3)
    }

    /// Weight power `s·(b(1-δ)-c)/δ` of the intermediate Hardy norm.
    pub fn hardy_beta(&self) -> f64 {
        self.hardy_exponent() * (self.b * (1.0 - self.delta) - self.c) / self.delta
    }

    /// `Ĉ₃ = C₂^δ s^{δ-δ/n}`.
    pub fn explicit_constant(&self, c2: f64) -> f64 {
        let d = self.delta;
        c2.powf(d) * self.hardy_exponent().powf(d - d / self.n as f64)
    }
}

/// Explicit weighted interpolation inequality with `Ĉ₃` built from `c2_hat`.
///
/// `details` carries the Hölder factorization
/// `‖ρ^c f‖_{p₃} ≤ ‖f/ρ^{γ}‖_s^δ ‖ρ^b f‖_{p₂}^{1-δ}` and its relative slack, and the
/// Hardy ratio at `(q, β) = (s, sγ)` that `c2_hat` has to dominate.
pub fn ckn_explicit(
    f: &RadialProfile,
    p: &CknParams,
    c2_hat: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    if p.n != params.n() {
        return Err(Error::domain(format!(
            "CKN parameters are for n = {} but the model has n = {}",
            p.n,
            params.n()
        )));
    }
    if !(c2_hat > 0.0) || !c2_hat.is_finite() {
        return Err(Error::domain(format!("Hardy constant C₂ = {c2_hat} must be finite and > 0")));
    }
    let d = p.delta;
    let s = p.hardy_exponent();
    let hb = p.hardy_beta();
    let c3 = p.explicit_constant(c2_hat);

    let (lhs, e1) = norm(f, p.p3, -p.c * p.p3, params)?;
    let (grad, e2) = dirichlet_norm_with_error(f, params)?;
    let (wb, e3) = norm(f, p.p2, -p.b * p.p2, params)?;
    let (mid, e4) = norm(f, s, hb, params)?;
    let rhs = c3 * grad.powf(d) * wb.powf(1.0 - d);
    let holder = mid.powf(d) * wb.powf(1.0 - d);
    let slack = if holder > 0.0 { (holder - lhs) / holder } else { 0.0 };
    let hardy = if grad > 0.0 { mid / (s.powf(1.0 - 1.0 / params.nf()) * grad) } else { 0.0 };

    Ok(InequalityReport::new("ckn", lhs, rhs, Bound::Upper)
        .param("n", params.nf())
        .param("p2", p.p2)
        .param("p3", p.p3)
        .param("b", p.b)
        .param("c", p.c)
        .param("delta", d)
        .param("c2_hat", c2_hat)
        .with_profile(f)
        .detail("c3_hat", c3)
        .detail("hardy_q", s)
        .detail("hardy_beta", hb)
        .detail("hardy_ratio", hardy)
        .detail("holder_bound", holder)
        .detail("holder_slack", slack)
        .with_error(e1)
        .with_error(e2)
        .with_error(e3)
        .with_error(e4))
}

/// Interpolation of the `L^q(ρ^{-β}dV)` norm between the neighbouring
/// exponents `a = n'k` and `b = n'(k+1)`, `k = ⌊q/n'⌋`:
/// `‖f‖_q ≤ ‖f‖_a^θ ‖f‖_b^{1-θ}` with `θ = k(n'(k+1) - q)/q`.
pub fn hardy_interpolation(
    f: &RadialProfile,
    q: f64,
    beta: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    check_q(q, params)?;
    check_beta("β", beta, params)?;
    let np = params.n_prime();
    // guard against q/n' landing a hair below an integer
    let k = (q / np + 1e-12).floor();
    let (a, b) = (np * k, np * (k + 1.0));
    let theta = (k * (b - q) / q).clamp(0.0, 1.0);
    let (lhs, e1) = norm(f, q, beta, params)?;
    let (na, e2) = norm(f, a, beta, params)?;
    let (nb, e3) = norm(f, b, beta, params)?;
    let rhs = na.powf(theta) * nb.powf(1.0 - theta);
    let slack = if rhs > 0.0 { (rhs - lhs) / rhs } else { 0.0 };
    Ok(InequalityReport::new("hardy_interpolation", lhs, rhs, Bound::Upper)
        .param("n", params.nf())
        .param("q", q)
        .param("beta", beta)
        .with_profile(f)
        .detail("k", k)
        .detail("theta", theta)
        .detail("holder_slack", slack)
        .with_error(e1)
        .with_error(e2)
        .with_error(e3))
}

/// `‖f/ρ^{β₁/q}‖_q ≤ C₃ q^{1-1/n} ‖∇_g f‖_n^{1-n(1-δ)/q} ‖f/ρ^{β₂/n}‖_n^{n(1-δ)/q}`.
pub fn gn_ratio(
    f: &RadialProfile,
    q: f64,
    beta1: f64,
    beta2: f64,
    delta: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    check_q(q, params)?;
    check_beta("β₁", beta1, params)?;
    check_delta(beta1, beta2, delta, params.n())?;
    check_nonzero(f)?;
    let nf = params.nf();
    let (lhs, e1) = norm(f, q, beta1, params)?;
    let (grad, e2) = dirichlet_norm_with_error(f, params)?;
    let (mass, e3) = norm(f, nf, beta2, params)?;
    let a = 1.0 - nf * (1.0 - delta) / q;
    let rhs = q.powf(1.0 - 1.0 / nf) * grad.powf(a) * mass.powf(1.0 - a);
    let mut r = InequalityReport::new("gn", lhs, rhs, Bound::Upper)
        .param("n", nf)
        .param("q", q)
        .param("beta1", beta1)
        .param("beta2", beta2)
        .param("delta", delta)
        .with_profile(f)
        .detail("gradient_exponent", a)
        .with_error(e1)
        .with_error(e2)
        .with_error(e3);
    if q > nf {
        r = r.detail("t", t_from_q(q, params.n())?);
    }
    Ok(r)
}

/// `t = nq/(q-n)`, the variable with `1 - n/q = n/t`.
pub fn t_from_q(q: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    if !(q > nf) || !q.is_finite() {
        return Err(Error::domain(format!("change of variables needs q > n, got q = {q}")));
    }
    Ok(nf * q / (q - nf))
}

/// Inverse of [`t_from_q`].
pub fn q_from_t(t: f64, n: usize) -> Result<f64> {
    t_from_q(t, n)
}

/// The two-weight interpolation inequality raised to the power `q = tn/(t-n)`:
/// `∫|f|^q ρ^{-β₁} ≤ C₃^q q^{q(n-1)/n} (∫|∇f|^n)^{t/(t-n)-(1-δ)} (∫|f|^n ρ^{-β₂})^{1-δ}`.
///
/// `details.implied_constant = ratio^{1/q}` is directly comparable with
/// [`gn_ratio`] at the same `q`.
pub fn gn_t_form(
    f: &RadialProfile,
    t: f64,
    beta1: f64,
    beta2: f64,
    delta: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    let q = q_from_t(t, params.n())?;
    check_beta("β₁", beta1, params)?;
    check_delta(beta1, beta2, delta, params.n())?;
    check_nonzero(f)?;
    let nf = params.nf();
    let (m, lq) = lq_scaled(f, q, beta1, params)?;
    let grad = quadrature::dirichlet_integral(f, params)?;
    let mass = quadrature::weighted_lq_integral(f, NormSpec::new(nf, beta2)?, params)?;
    let ln_lhs = q * m.ln() + lq.value.ln();
    let ln_rhs = q * (nf - 1.0) / nf * q.ln()
        + (t / (t - nf) - (1.0 - delta)) * grad.value.ln()
        + (1.0 - delta) * mass.value.ln();
    let mut r = InequalityReport::new("gn_t", ln_lhs.exp(), ln_rhs.exp(), Bound::Upper)
        .param("n", nf)
        .param("t", t)
        .param("beta1", beta1)
        .param("beta2", beta2)
        .param("delta", delta)
        .with_profile(f)
        .detail("q", q)
        .detail("implied_constant", ((ln_lhs - ln_rhs) / q).exp())
        .with_error(grad.abs_error_estimate)
        .with_error(mass.abs_error_estimate);
    // keep the ratio exact even if the sides overflow individually
    r.ratio = (ln_lhs - ln_rhs).exp();
    r.degenerate = false;
    Ok(r)
}

/// `‖f/(ρ^{β/q}(1+|f|)^{n'/q})‖_q ≤ C₅ q^{1-1/n} ‖∇_g f‖_n^{1-n/q} ‖f/ρ^{β/n}‖_n^{n/q}`,
/// evaluated at `f/‖∇_g f‖_n` (the left side is not homogeneous in `f`).
pub fn gn3_ratio(f: &RadialProfile, q: f64, beta: f64, params: &ModelParams) -> Result<InequalityReport> {
    check_q(q, params)?;
    check_beta("β", beta, params)?;
    check_nonzero(f)?;
    let Some((g, gnorm)) = gradient_normalized(f, params)? else {
        unreachable!("non-zero profile");
    };
    let nf = params.nf();
    let np = params.n_prime();
    let m = g.max_abs();
    let inv = 1.0 / m;
    let order = if g.evaluate(0.0) != 0.0 { 0.0 } else { q };
    let damped = profile_integral(&g, params, beta, order, DEFAULT_TOL, |v, _, _| {
        let a = v.abs();
        (a * inv).powf(q) / (1.0 + a).powf(np)
    })?;
    let lhs = m * damped.value.powf(1.0 / q);
    let (plain, e1) = norm(&g, q, beta, params)?;
    let (mass, e2) = norm(&g, nf, beta, params)?;
    // ‖∇g‖ = 1 after normalization
    let rhs = q.powf(1.0 - 1.0 / nf) * mass.powf(nf / q);
    Ok(InequalityReport::new("gn3", lhs, rhs, Bound::Upper)
        .param("n", nf)
        .param("q", q)
        .param("beta", beta)
        .with_profile(f)
        .detail("gradient_normalization", gnorm)
        .detail("undamped_lhs", plain)
        .with_error(lhs * damped.abs_error_estimate / (q * damped.value))
        .with_error(e1)
        .with_error(e2))
}

/// `‖∇_g f‖_n (∫ρ^{q'}|f|^{q'})^{1/q'} ≥ C₂^{-1} q^{1/n-1} ∫ρ^{(q-β)/q}|f|^2 dV`.
///
/// `details` carries the Hölder step
/// `∫ρ^{(q-β)/q}|f|^2 ≤ ‖f/ρ^{β/q}‖_q ‖ρf‖_{q'}` and the Hardy ratio that `c2_hat`
/// has to dominate.
pub fn uncertainty_check(
    f: &RadialProfile,
    q: f64,
    beta: f64,
    c2_hat: f64,
    params: &ModelParams,
) -> Result<InequalityReport> {
    check_q(q, params)?;
    check_beta("β", beta, params)?;
    if !(c2_hat > 0.0) || !c2_hat.is_finite() {
        return Err(Error::domain(format!("Hardy constant C₂ = {c2_hat} must be finite and > 0")));
    }
    let nf = params.nf();
    let qp = q / (q - 1.0);
    let (grad, e1) = dirichlet_norm_with_error(f, params)?;
    let (moment, e2) = norm(f, qp, -qp, params)?;
    let mixed = quadrature::weighted_lq_integral(f, NormSpec::new(2.0, -(q - beta) / q)?, params)?;
    let (hardy_lhs, e3) = norm(f, q, beta, params)?;
    let lhs = grad * moment;
    let rhs = mixed.value / (c2_hat * q.powf(1.0 - 1.0 / nf));
    let holder = hardy_lhs * moment;
    let slack = if holder > 0.0 { (holder - mixed.value) / holder } else { 0.0 };
    let hardy = if grad > 0.0 { hardy_lhs / (q.powf(1.0 - 1.0 / nf) * grad) } else { 0.0 };
    Ok(InequalityReport::new("uncertainty", lhs, rhs, Bound::Lower)
        .param("n", nf)
        .param("q", q)
        .param("beta", beta)
        .param("c2_hat", c2_hat)
        .with_profile(f)
        .detail("q_conjugate", qp)
        .detail("hardy_lhs", hardy_lhs)
        .detail("hardy_ratio", hardy)
        .detail("holder_lhs", mixed.value)
        .detail("holder_bound", holder)
        .detail("holder_slack", slack)
        .with_error(e1)
        .with_error(e2)
        .with_error(e3)
        .with_error(mixed.abs_error_estimate))
}
