//! Truncated exponential, log-gamma, Stirling asymptotics and the series that
//! links a Hardy constant to a Trudinger–Moser exponent.

use std::f64::consts::E;

use crate::error::{Error, Result};

/// Relative tail tolerance for a [`SeriesVerdict::Converged`] verdict.
pub const SERIES_TAIL_TOL: f64 = 1e-12;

/// Consecutive term ratios above one needed for [`SeriesVerdict::Diverging`].
pub const DIVERGENCE_RUN: usize = 10;

/// `Φ_n(t) = e^t - Σ_{k=0}^{n-2} t^k/k!`, the tail of the exponential series
/// starting at `k = n-1`.
///
/// Below `t = n-1` the tail is summed directly, which avoids cancelling the
/// Taylor head against `e^t`; above it the head is subtracted with Neumaier
/// compensation.
pub fn truncated_exp(n: usize, t: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("truncated exponential needs n ≥ 2, got {n}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("truncated exponential argument t = {t} must be ≥ 0")));
    }
    Ok(truncated_exp_unchecked(n, t))
}

pub(crate) fn truncated_exp_unchecked(n: usize, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let first = n - 1;
    if t < first as f64 {
        // t^{n-1}/(n-1)!
        let mut term = 1.0;
        for k in 1..=first {
            term *= t / k as f64;
        }
        let mut sum = 0.0;
        let mut k = first;
        while term > 1e-17 * sum || sum == 0.0 {
            sum += term;
            k += 1;
            term *= t / k as f64;
            if term == 0.0 {
                break;
            }
        }
        sum
    } else {
        let et = t.exp();
        if !et.is_finite() {
            return f64::INFINITY;
        }
        let mut acc = Neumaier::new(et);
        let mut term = 1.0;
        for k in 0..first {
            acc.add(-term);
            term *= t / (k + 1) as f64;
        }
        acc.value()
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn new(start: f64) -> Self {
        Self { sum: start, comp: 0.0 }
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// `Γ(q/n' + 2)^{1/q} / (q/(e n'))^{1/n'}`, evaluated in log space.
pub fn stirling_ratio(q: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    if !(q >= n as f64) {
        return Err(Error::domain(format!("Stirling ratio needs q ≥ n, got q = {q}")));
    }
    let n_prime = n as f64 / (n as f64 - 1.0);
    let lg = log_gamma(q / n_prime + 2.0)?;
    Ok((lg / q - (q / (E * n_prime)).ln() / n_prime).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVerdict {
    Converged,
    Diverging,
    Inconclusive,
}

impl SeriesVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesVerdict::Converged => "converged",
            SeriesVerdict::Diverging => "diverging",
            SeriesVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDiagnosis {
    pub partial_sum: f64,
    pub last_term: f64,
    pub term_ratio_estimate: f64,
    pub verdict: SeriesVerdict,
    pub terms_used: usize,
}

/// Partial sums of `prefactor · Σ_{k ≥ n-1} (α n' k C^{n'})^k / k!`.
///
/// This is the bound a Hardy-type constant `C` places on a Trudinger–Moser
/// integral. `prefactor` carries whatever weighted mass the particular
/// inequality attaches outside the sum (1 for the plain Hardy case,
/// `(∫|f|^n ρ^{-β₂})^{1-δ}` for the two-weight case). The term ratio tends to
/// `α n' C^{n'} e` from below, so the series converges iff `α < 1/(n' e C^{n'})`.
pub fn equivalence_series(
    alpha: f64,
    c: f64,
    n: usize,
    prefactor: f64,
    max_terms: usize,
) -> Result<SeriesDiagnosis> {
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    if !(alpha >= 0.0) {
        return Err(Error::domain(format!("series exponent α = {alpha} must be ≥ 0")));
    }
    if !(c > 0.0) {
        return Err(Error::domain(format!("Hardy constant C = {c} must be > 0")));
    }
    if !(prefactor > 0.0) {
        return Err(Error::domain(format!("series prefactor {prefactor} must be > 0")));
    }
    if max_terms < n {
        return Err(Error::domain(format!(
            "max_terms = {max_terms} must be at least n = {n}"
        )));
    }
    if alpha == 0.0 {
        return Ok(SeriesDiagnosis {
            partial_sum: 0.0,
            last_term: 0.0,
            term_ratio_estimate: 0.0,
            verdict: SeriesVerdict::Converged,
            terms_used: 0,
        });
    }

    let n_prime = n as f64 / (n as f64 - 1.0);
    let x = alpha * n_prime * c.powf(n_prime);
    // sup of the term ratios; they increase towards this limit
    let ratio_limit = x * E;
    let ln_pref = prefactor.ln();
    let ln_term = |k: usize| -> f64 {
        let kf = k as f64;
        kf * (x * kf).ln() - statrs::function::gamma::ln_gamma(kf + 1.0) + ln_pref
    };

    let mut sum = Neumaier::default();
    let mut prev_ln = ln_term(n - 1);
    let mut last = prev_ln.exp();
    sum.add(last);
    let mut ratio = 0.0;
    let mut run_above_one = 0;
    let mut used = 1;
    let mut verdict = SeriesVerdict::Inconclusive;

    for k in n..(n - 1 + max_terms) {
        let cur_ln = ln_term(k);
        ratio = (cur_ln - prev_ln).exp();
        last = cur_ln.exp();
        sum.add(last);
        used += 1;
        prev_ln = cur_ln;

        if ratio > 1.0 {
            run_above_one += 1;
            if run_above_one >= DIVERGENCE_RUN {
                verdict = SeriesVerdict::Diverging;
                break;
            }
        } else {
            run_above_one = 0;
        }

        if ratio_limit < 1.0 && ratio < 1.0 {
            // geometric bound on the remaining tail
            let tail = last * ratio_limit / (1.0 - ratio_limit);
            if tail < SERIES_TAIL_TOL * sum.value() {
                verdict = SeriesVerdict::Converged;
                break;
            }
        }
    }

    Ok(SeriesDiagnosis {
        partial_sum: sum.value(),
        last_term: last,
        term_ratio_estimate: ratio,
        verdict,
        terms_used: used,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalDirection {
    ConstantToAlpha,
    AlphaToConstant,
}

/// The threshold relation `α* = 1/(n' e C^{n'})` and its inverse.
pub fn critical_map(value: f64, n: usize, direction: CriticalDirection) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::domain(format!("critical map argument {value} must be finite and > 0")));
    }
    let n_prime = n as f64 / (n as f64 - 1.0);
    Ok(match direction {
        CriticalDirection::ConstantToAlpha => 1.0 / (n_prime * E * value.powf(n_prime)),
        CriticalDirection::AlphaToConstant => (value * n_prime * E).powf(-1.0 / n_prime),
    })
}
