//! Empirical best constants: multistart simplex search over radial profiles,
//! `q`-sweeps towards the asymptotic constant `B`, the Hardy constant implied
//! by a Trudinger–Moser bound, and the Moser blow-up table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::functionals::{self, Denominator, InequalityReport};
use crate::geometry::{alpha_beta, sharp_constant_b, ModelParams};
use crate::profile::{moser_profile, RadialProfile};
use crate::quadrature::{self, NormSpec};
use crate::report::{json_number, Table};
use crate::special::log_gamma;

/// Moser indices always tried as candidates (and as the warm start).
pub const INJECTED_MOSER_J: [f64; 6] = [1.0, 2.0, 5.0, 10.0, 20.0, 40.0];
const INJECTED_MOSER_MESH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveFamily {
    Hardy,
    Gn,
    Gn3,
}

impl ObjectiveFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectiveFamily::Hardy => "hardy",
            ObjectiveFamily::Gn => "gn",
            ObjectiveFamily::Gn3 => "gn3",
        }
    }
}

/// A scale-invariant ratio to be maximized over profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    Hardy { q: f64, beta: f64, denominator: Denominator },
    Gn { q: f64, beta1: f64, beta2: f64, delta: f64 },
    Gn3 { q: f64, beta: f64 },
}

impl Objective {
    pub fn family(&self) -> ObjectiveFamily {
        match self {
            Objective::Hardy { .. } => ObjectiveFamily::Hardy,
            Objective::Gn { .. } => ObjectiveFamily::Gn,
            Objective::Gn3 { .. } => ObjectiveFamily::Gn3,
        }
    }

    pub fn q(&self) -> f64 {
        match *self {
            Objective::Hardy { q, .. } | Objective::Gn { q, .. } | Objective::Gn3 { q, .. } => q,
        }
    }

    /// Weight power of the left-hand side, which fixes the asymptotic target.
    pub fn beta(&self) -> f64 {
        match *self {
            Objective::Hardy { beta, .. } | Objective::Gn3 { beta, .. } => beta,
            Objective::Gn { beta1, .. } => beta1,
        }
    }

    pub fn with_q(&self, q: f64) -> Self {
        let mut o = *self;
        match &mut o {
            Objective::Hardy { q: x, .. } | Objective::Gn { q: x, .. } | Objective::Gn3 { q: x, .. } => *x = q,
        }
        o
    }

    pub fn evaluate(&self, f: &RadialProfile, params: &ModelParams) -> Result<InequalityReport> {
        match *self {
            Objective::Hardy { q, beta, denominator } => functionals::hardy_ratio(f, q, beta, params, denominator),
            Objective::Gn { q, beta1, beta2, delta } => functionals::gn_ratio(f, q, beta1, beta2, delta, params),
            Objective::Gn3 { q, beta } => functionals::gn3_ratio(f, q, beta, params),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid size including the origin and the support radius.
    pub knot_count: usize,
    pub support_radius: f64,
    pub multistarts: usize,
    /// Simplex iterations per start, shared across restarts.
    pub max_iters: usize,
    /// Relative spread of simplex values at which a run stops.
    pub simplex_tol: f64,
    pub seed: u64,
    /// Interior knots are geometric on `[R e^{-span}, R]`.
    pub grading_span: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            knot_count: 32,
            support_radius: 5.0,
            multistarts: 8,
            max_iters: 3000,
            simplex_tol: 1e-10,
            seed: 0,
            grading_span: 30.0,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.knot_count < 4 {
            return Err(Error::domain(format!("knot_count = {} must be ≥ 4", self.knot_count)));
        }
        if !(self.support_radius > 0.0) || !self.support_radius.is_finite() {
            return Err(Error::domain(format!("support_radius = {} must be > 0", self.support_radius)));
        }
        if self.multistarts < 1 {
            return Err(Error::domain("multistarts must be ≥ 1"));
        }
        if self.max_iters < 1 {
            return Err(Error::domain("max_iters must be ≥ 1"));
        }
        if !(self.simplex_tol > 0.0) {
            return Err(Error::domain(format!("simplex_tol = {} must be > 0", self.simplex_tol)));
        }
        if !(self.grading_span > 0.0) || !self.grading_span.is_finite() {
            return Err(Error::domain(format!("grading_span = {} must be > 0", self.grading_span)));
        }
        Ok(())
    }

    /// `0` followed by a geometric grid ending at the support radius.
    pub fn knot_grid(&self) -> Vec<f64> {
        let m = self.knot_count;
        let r = self.support_radius;
        let mut k = vec![0.0];
        k.extend((1..m).map(|i| r * (-self.grading_span * (m - 1 - i) as f64 / (m - 2) as f64).exp()));
        k
    }
}

/// Best profile found by [`estimate_sup_ratio`].
#[derive(Debug, Clone, PartialEq)]
pub struct SupEstimate {
    /// Exact ratio of `witness`, a lower bound for the supremum.
    pub constant: f64,
    /// Normalized to unit Dirichlet norm.
    pub witness: RadialProfile,
    /// `moser:j=<j>` or `start:<k>`.
    pub profile_id: String,
    pub iterations: usize,
}

struct Candidate {
    id: String,
    profile: RadialProfile,
    ratio: f64,
    iterations: usize,
}

fn score(objective: &Objective, f: &RadialProfile, params: &ModelParams) -> f64 {
    match objective.evaluate(f, params) {
        Ok(r) if r.ratio.is_finite() && !r.degenerate => r.ratio,
        _ => f64::NEG_INFINITY,
    }
}

fn profile_on(knots: &[f64], free: &[f64]) -> Option<RadialProfile> {
    let mut values: Vec<f64> = free.iter().map(|v| v.abs()).collect();
    values.push(0.0);
    if values.iter().all(|&v| v == 0.0) {
        return None;
    }
    RadialProfile::new(knots.to_vec(), values).ok()
}

/// Random truncated-logarithm start `min(J, ln(R'/ρ))_+` with multiplicative noise.
fn random_start(knots: &[f64], cfg: &OptimizerConfig, start: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(start as u64);
    let r = cfg.support_radius * rng.random_range(0.3..1.0);
    let depth = rng.random_range(1.0..cfg.grading_span.max(1.5));
    let free = &knots[..knots.len() - 1];
    let mut v: Vec<f64> = free
        .iter()
        .map(|&k| {
            let base = if k == 0.0 { depth } else { (r / k).ln().clamp(0.0, depth) };
            base * (1.0 + 0.2 * (rng.random::<f64>() - 0.5))
        })
        .collect();
    if v.iter().all(|&x| x == 0.0) {
        v[0] = 1.0;
    }
    v
}

/// Maximizes the objective's ratio over profiles with values on a fixed grid.
///
/// Candidates are the injected Moser profiles (evaluated as they are), a
/// simplex run started from the best of them resampled onto the grid, and
/// `multistarts - 1` runs from seeded random starts. The result does not
/// depend on thread scheduling.
pub fn estimate_sup_ratio(
    objective: &Objective,
    cfg: &OptimizerConfig,
    params: &ModelParams,
) -> Result<SupEstimate> {
    cfg.validate()?;
    // surface parameter errors before any search
    let probe = RadialProfile::new(vec![0.0, 1.0], vec![1.0, 0.0])?;
    objective.evaluate(&probe, params)?;

    let beta_moser = objective.beta().clamp(0.0, params.nf() - 1e-9);
    let mut candidates: Vec<Candidate> = INJECTED_MOSER_J
        .par_iter()
        .map(|&j| {
            let (f, _) = moser_profile(j, beta_moser, params, INJECTED_MOSER_MESH)?;
            let ratio = score(objective, &f, params);
            Ok(Candidate { id: format!("moser:j={j}"), profile: f, ratio, iterations: 0 })
        })
        .collect::<Result<_>>()?;

    let knots = cfg.knot_grid();
    let warm = candidates
        .iter()
        .fold(None::<&Candidate>, |b, c| match b {
            Some(b) if b.ratio >= c.ratio => Some(b),
            _ => Some(c),
        })
        .map(|c| knots[..knots.len() - 1].iter().map(|&k| c.profile.evaluate(k)).collect::<Vec<_>>());

    let runs: Vec<Candidate> = (0..cfg.multistarts)
        .into_par_iter()
        .filter_map(|s| {
            let x0 = match (&warm, s) {
                (Some(w), 0) if w.iter().any(|&v| v != 0.0) => w.clone(),
                _ => random_start(&knots, cfg, s),
            };
            let f = |x: &[f64]| match profile_on(&knots, x) {
                Some(p) => -score(objective, &p, params),
                None => f64::INFINITY,
            };
            let out = nelder_mead_restarts(&f, &x0, cfg.max_iters, cfg.simplex_tol);
            let profile = profile_on(&knots, &out.x)?;
            Some(Candidate {
                id: format!("start:{s}"),
                ratio: score(objective, &profile, params),
                profile,
                iterations: out.iterations,
            })
        })
        .collect();
    candidates.extend(runs);

    let mut best: Option<&Candidate> = None;
    for c in &candidates {
        if c.ratio.is_finite() && c.ratio > 0.0 && best.is_none_or(|b| c.ratio > b.ratio) {
            best = Some(c);
        }
    }
    let Some(best) = best else {
        return Err(Error::Degenerate(
            "every optimizer start produced a zero or non-finite ratio".into(),
        ));
    };
    let norm = quadrature::dirichlet_norm(&best.profile, params)?;
    let witness = best.profile.scale(1.0 / norm);
    let constant = objective.evaluate(&witness, params)?.ratio;
    Ok(SupEstimate {
        constant,
        witness,
        profile_id: best.id.clone(),
        iterations: best.iterations,
    })
}

struct SimplexOutcome {
    x: Vec<f64>,
    fx: f64,
    iterations: usize,
}

/// Nelder–Mead with dimension-adapted coefficients, minimizing `f`.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], max_iters: usize, tol: f64) -> SimplexOutcome {
    let d = x0.len();
    let df = d as f64;
    let (reflect, expand, contract, shrink) = (1.0, 1.0 + 2.0 / df, 0.75 - 0.5 / df, 1.0 - 1.0 / df);
    let scale = x0.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-3);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += if x[i] != 0.0 { 0.1 * x[i] } else { 0.05 * scale };
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut it = 0;
    while it < max_iters {
        it += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[d].1);
        if lo.is_finite() && (hi - lo).abs() <= tol * lo.abs().max(1e-300) {
            break;
        }
        let mut c = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (ci, xi) in c.iter_mut().zip(x) {
                *ci += xi / df;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            c.iter().zip(&simplex[d].0).map(|(ci, wi)| ci + t * (ci - wi)).collect()
        };
        let xr = along(reflect);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(reflect * expand);
            let fe = f(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
            continue;
        }
        // outside contraction must beat the reflection, inside the worst point
        let (t, bar) = if fr < simplex[d].1 { (reflect * contract, fr) } else { (-contract, simplex[d].1) };
        let xc = along(t);
        let fc = f(&xc);
        if fc <= bar && fc.is_finite() {
            simplex[d] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, fx) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + shrink * (*xi - bi);
            }
            *fx = f(x);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    SimplexOutcome { x, fx, iterations: it }
}

/// Restarts the simplex around its own optimum until it stops improving.
fn nelder_mead_restarts<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], max_iters: usize, tol: f64) -> SimplexOutcome {
    let mut out = nelder_mead(f, x0, max_iters, tol);
    let mut used = out.iterations;
    while used < max_iters {
        let next = nelder_mead(f, &out.x, max_iters - used, tol);
        used += next.iterations;
        let improved = next.fx < out.fx - tol * out.fx.abs();
        if next.fx <= out.fx {
            out.x = next.x;
            out.fx = next.fx;
        }
        if !improved {
            break;
        }
    }
    out.iterations = used;
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub q: f64,
    pub estimate: f64,
    pub profile_id: String,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub family: ObjectiveFamily,
    pub entries: Vec<SweepEntry>,
    /// `B = (α_β n' e)^{-1/n'}` for the objective's weight.
    pub target_b: f64,
    /// `|estimate − B|/B` at the largest `q`.
    pub trend_gap: f64,
    pub witnesses: Vec<RadialProfile>,
}

impl SweepResult {
    /// Columns `q, estimate, target_B, gap`.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["q", "estimate", "target_B", "gap"])
            .meta("family", self.family.as_str())
            .meta("target_B", crate::report::format_number(self.target_b))
            .meta("trend_gap", crate::report::format_number(self.trend_gap));
        for e in &self.entries {
            t.push(vec![e.q, e.estimate, self.target_b, (e.estimate - self.target_b).abs() / self.target_b]);
        }
        t
    }

    pub fn to_json(&self) -> Value {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("q".into(), json_number(e.q));
                m.insert("estimate".into(), json_number(e.estimate));
                m.insert("profile_id".into(), Value::String(e.profile_id.clone()));
                m.insert("iterations".into(), Value::from(e.iterations));
                Value::Object(m)
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("family".into(), Value::String(self.family.as_str().into()));
        obj.insert("target_B".into(), json_number(self.target_b));
        obj.insert("trend_gap".into(), json_number(self.trend_gap));
        obj.insert("entries".into(), Value::Array(entries));
        Value::Object(obj)
    }
}

/// [`estimate_sup_ratio`] at each `q` of an ascending grid.
pub fn constant_sweep(
    q_grid: &[f64],
    objective: &Objective,
    cfg: &OptimizerConfig,
    params: &ModelParams,
) -> Result<SweepResult> {
    if q_grid.is_empty() {
        return Err(Error::domain("q grid is empty"));
    }
    if q_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("q grid must be strictly ascending"));
    }
    if let Some(&q) = q_grid.iter().find(|&&q| !(q >= params.nf())) {
        return Err(Error::domain(format!("every q must satisfy q ≥ n, got q = {q}")));
    }
    let target_b = sharp_constant_b(params, objective.beta())?;
    let mut entries = Vec::with_capacity(q_grid.len());
    let mut witnesses = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let est = estimate_sup_ratio(&objective.with_q(q), cfg, params)?;
        entries.push(SweepEntry {
            q,
            estimate: est.constant,
            profile_id: est.profile_id,
            iterations: est.iterations,
        });
        witnesses.push(est.witness);
    }
    let last = entries.last().map(|e| e.estimate).unwrap_or(f64::NAN);
    Ok(SweepResult {
        family: objective.family(),
        entries,
        target_b,
        trend_gap: (last - target_b).abs() / target_b,
        witnesses,
    })
}

/// Hardy constant extracted from a Trudinger–Moser bound
/// `∫Φ_n(α|f|^{n'})ρ^{-β} ≤ C_ε` at `α = α_β − ε`:
/// `(C_ε Γ(q/n'+2))^{1/q} α^{-1/n'}`, evaluated in log space.
pub fn certified_constant_from_tm(
    alpha: f64,
    c_eps: f64,
    q: f64,
    beta: f64,
    params: &ModelParams,
) -> Result<f64> {
    let a_crit = alpha_beta(params, beta)?;
    if !(alpha > 0.0 && alpha < a_crit) {
        return Err(Error::domain(format!(
            "α = {alpha} must satisfy 0 < α < α_β = {a_crit}"
        )));
    }
    if !(c_eps > 0.0) || !c_eps.is_finite() {
        return Err(Error::domain(format!("C_ε = {c_eps} must be finite and > 0")));
    }
    if !(q >= params.nf()) || !q.is_finite() {
        return Err(Error::domain(format!("q = {q} must satisfy n ≤ q < ∞")));
    }
    let np = params.n_prime();
    let ln = (c_eps.ln() + log_gamma(q / np + 2.0)?) / q - alpha.ln() / np;
    Ok(ln.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupVerdict {
    /// The ratio grows at least like `j^{1/2}` across the grid (`α ≥ α_{β₁}`).
    Growth,
    /// The ratio varies by at most a factor 2 (`α < α_{β₁}`).
    Bounded,
    Inconclusive,
}

impl BlowupVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlowupVerdict::Growth => "Growth",
            BlowupVerdict::Bounded => "Bounded",
            BlowupVerdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Minimal log-log slope of the ratio in `j` for a Growth verdict.
pub const GROWTH_SLOPE: f64 = 0.5;
/// Maximal spread `max/min` of the ratio for a Bounded verdict.
pub const BOUNDED_SPREAD: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoserRow {
    pub j: f64,
    pub d_j: f64,
    /// `∫|∇_g f_j|^n dV_g`, one up to discretization.
    pub gradient_integral: f64,
    /// `∫|f_j|^n ρ^{-β₂} dV_g`.
    pub decay: f64,
    pub tm_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoserDiagnostic {
    pub rows: Vec<MoserRow>,
    pub alpha: f64,
    pub alpha_critical: f64,
    pub verdict: BlowupVerdict,
}

impl MoserDiagnostic {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["j", "d_j", "gradient_integral", "decay", "j_decay", "tm_ratio"])
            .meta("alpha", crate::report::format_number(self.alpha))
            .meta("alpha_critical", crate::report::format_number(self.alpha_critical))
            .meta("verdict", self.verdict.as_str());
        for r in &self.rows {
            t.push(vec![r.j, r.d_j, r.gradient_integral, r.decay, r.j * r.decay, r.tm_ratio]);
        }
        t
    }
}

/// Evaluates the Moser sequence on `j_grid`: normalization, `L^n` decay and
/// the two-weight Trudinger–Moser ratio, with a growth verdict.
pub fn moser_blowup_diagnostic(
    j_grid: &[f64],
    alpha: f64,
    beta1: f64,
    beta2: f64,
    delta: f64,
    params: &ModelParams,
    mesh: usize,
) -> Result<MoserDiagnostic> {
    if j_grid.is_empty() {
        return Err(Error::domain("j grid is empty"));
    }
    if j_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("j grid must be strictly ascending"));
    }
    let alpha_critical = alpha_beta(params, beta1)?;
    functionals::delta_admissible(beta1, beta2, params.n())?;
    let nf = params.nf();
    let rows: Vec<MoserRow> = j_grid
        .par_iter()
        .map(|&j| {
            let (f, mp) = moser_profile(j, beta1, params, mesh)?;
            let grad = quadrature::dirichlet_integral(&f, params)?.value;
            let decay = quadrature::weighted_lq_integral(&f, NormSpec::new(nf, beta2)?, params)?.value;
            let tm = functionals::tm_weighted_ratio(&f, alpha, beta1, beta2, delta, params)?;
            Ok(MoserRow { j, d_j: mp.d_j, gradient_integral: grad, decay, tm_ratio: tm.ratio })
        })
        .collect::<Result<_>>()?;

    let ratios: Vec<f64> = rows.iter().map(|r| r.tm_ratio).collect();
    let verdict = if rows.len() < 2 {
        BlowupVerdict::Inconclusive
    } else if alpha >= alpha_critical * (1.0 - 1e-12) {
        let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
        let (first, last) = (&rows[0], &rows[rows.len() - 1]);
        let slope = (last.tm_ratio / first.tm_ratio).ln() / (last.j / first.j).ln();
        if increasing && slope >= GROWTH_SLOPE {
            BlowupVerdict::Growth
        } else {
            BlowupVerdict::Inconclusive
        }
    } else {
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        if min > 0.0 && max / min <= BOUNDED_SPREAD {
            BlowupVerdict::Bounded
        } else {
            BlowupVerdict::Inconclusive
        }
    };
    Ok(MoserDiagnostic { rows, alpha, alpha_critical, verdict })
}
