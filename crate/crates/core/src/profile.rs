//! Compactly supported, piecewise-linear radial profiles on `H^n`.
//!
//! A profile is stored in the geodesic variable `ρ`. It is linear between
//! consecutive knots and identically zero beyond the last knot, whose value is
//! pinned to zero, so every profile is a `W_0^{1,n}` function with a piecewise
//! constant `|∇_g f| = |f'(ρ)|`.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::ModelParams;
use crate::quadrature;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl RadialProfile {
    /// Validates knots `0 = ρ_0 < ρ_1 < … < ρ_m` and values with `v_m = 0`.
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::domain("a radial profile needs at least two knots"));
        }
        if knots.len() != values.len() {
            return Err(Error::domain(format!(
                "knot count {} does not match value count {}",
                knots.len(),
                values.len()
            )));
        }
        if knots[0] != 0.0 {
            return Err(Error::domain(format!("first knot must be 0, got {}", knots[0])));
        }
        if let Some(w) = knots.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::domain(format!(
                "knots must be finite and strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("profile value {v} is not finite")));
        }
        if *values.last().unwrap() != 0.0 {
            return Err(Error::domain("last profile value must be 0 (compact support)"));
        }
        Ok(Self { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Support radius `ρ_m`.
    pub fn support(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_slope(&self) -> f64 {
        (0..self.knots.len() - 1).fold(0.0, |m, i| m.max(self.segment_slope(i).abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub(crate) fn segment_slope(&self, i: usize) -> f64 {
        (self.values[i + 1] - self.values[i]) / (self.knots[i + 1] - self.knots[i])
    }

    /// Index of the segment containing `rho` under left-continuity, i.e. the
    /// segment `(ρ_i, ρ_{i+1}]` (the first segment also owns `ρ = 0`).
    fn segment_of(&self, rho: f64) -> Option<usize> {
        if rho > self.support() {
            return None;
        }
        let upper = self.knots.partition_point(|&k| k < rho);
        Some(upper.saturating_sub(1).min(self.knots.len() - 2))
    }

    pub fn evaluate(&self, rho: f64) -> f64 {
        self.evaluate_with_derivative(rho).0
    }

    /// Value and one-sided slope at `rho`; both vanish beyond the support.
    pub fn evaluate_with_derivative(&self, rho: f64) -> (f64, f64) {
        match self.segment_of(rho) {
            None => (0.0, 0.0),
            Some(i) => {
                let s = self.segment_slope(i);
                (self.values[i] + s * (rho - self.knots[i]), s)
            }
        }
    }

    pub fn scale(&self, c: f64) -> RadialProfile {
        RadialProfile {
            knots: self.knots.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Serializes to the two-column `knot value` text format.
    pub fn to_text(&self, n: usize) -> String {
        let mut out = format!("# radial-profile n={n}\n");
        for (k, v) in self.knots.iter().zip(&self.values) {
            // `{}` on f64 prints the shortest representation that round-trips
            writeln!(out, "{k} {v}").unwrap();
        }
        out
    }

    /// Parses the text format, returning the profile and the declared dimension.
    pub fn from_text(text: &str) -> Result<(RadialProfile, usize)> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::domain("empty profile file"))?;
        let n = header
            .trim()
            .strip_prefix("# radial-profile n=")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::domain(format!("bad profile header: {header:?}")))?;
        let mut knots = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64> {
                s.and_then(|s| f64::from_str(s).ok()).ok_or_else(|| {
                    Error::domain(format!("bad profile line {}: {line:?}", lineno + 2))
                })
            };
            knots.push(parse(cols.next())?);
            values.push(parse(cols.next())?);
            if cols.next().is_some() {
                return Err(Error::domain(format!(
                    "profile line {} has more than two columns",
                    lineno + 2
                )));
            }
        }
        Ok((RadialProfile::new(knots, values)?, n))
    }
}

/// Inline descriptions of the verification corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSpec {
    /// `1 - ρ/R` on `[0, R]`.
    Tent { radius: f64 },
    /// `1` on `[0, r]`, linear down to `0` at `R`.
    Plateau { inner: f64, radius: f64 },
    /// `m` uniform segments on `[0, R]` with seeded values in `[0, 1)`.
    Random { seed: u64, segments: usize, radius: f64 },
}

pub fn test_family(spec: ProfileSpec) -> Result<RadialProfile> {
    match spec {
        ProfileSpec::Tent { radius } => {
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::domain(format!("tent radius R = {radius} must be > 0")));
            }
            RadialProfile::new(vec![0.0, radius], vec![1.0, 0.0])
        }
        ProfileSpec::Plateau { inner, radius } => {
            if !(inner > 0.0 && inner < radius) || !radius.is_finite() {
                return Err(Error::domain(format!(
                    "plateau needs 0 < r < R, got r = {inner}, R = {radius}"
                )));
            }
            RadialProfile::new(vec![0.0, inner, radius], vec![1.0, 1.0, 0.0])
        }
        ProfileSpec::Random {
            seed,
            segments,
            radius,
        } => {
            if segments < 2 {
                return Err(Error::domain(format!("random profile needs m ≥ 2, got {segments}")));
            }
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::domain(format!("random profile radius R = {radius} must be > 0")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let knots = (0..=segments)
                .map(|i| radius * i as f64 / segments as f64)
                .collect();
            let mut values: Vec<f64> = (0..segments).map(|_| rng.random::<f64>()).collect();
            values.push(0.0);
            RadialProfile::new(knots, values)
        }
    }
}

/// Normalization data of one member of the Moser sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoserParams {
    pub j: f64,
    pub beta1: f64,
    pub n: usize,
    pub d_j: f64,
}

impl MoserParams {
    /// Plateau height `ω^{-1/n} D_j j^{(n-β₁-1)/(n-β₁)}`.
    pub fn amplitude(&self, omega: f64) -> f64 {
        let n = self.n as f64;
        omega.powf(-1.0 / n) * self.d_j * self.j.powf((n - self.beta1 - 1.0) / (n - self.beta1))
    }

    /// Exact (un-interpolated) value of `f_j` at `rho`.
    pub fn exact_value(&self, omega: f64, rho: f64) -> f64 {
        let a = self.amplitude(omega);
        if rho > 1.0 {
            0.0
        } else if rho >= (-self.j).exp() {
            a * (-rho.ln()) / self.j
        } else {
            a
        }
    }
}

/// Default knot density of [`moser_profile`], knots per unit of `-ln ρ`.
pub const MOSER_DEFAULT_MESH: usize = 1024;

/// `D_j = (j^{-n/(n-β₁)} ∫_{e^{-j}}^1 ρ^{-n} sinh^{n-1}ρ dρ)^{-1/n}`.
///
/// The integral is taken in `u = ln ρ`, where the integrand
/// `e^{(1-n)u} sinh^{n-1}(e^u)` is smooth and tends to one as `u → -∞`.
pub fn moser_normalization(j: f64, beta1: f64, n: usize) -> Result<f64> {
    check_moser_args(j, beta1, n)?;
    let nf = n as f64;
    let integrand = |u: f64| ((1.0 - nf) * u).exp() * u.exp().sinh().powi(n as i32 - 1);
    let panels = (j.ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=panels).map(|i| -j + j * i as f64 / panels as f64).collect();
    let integral = quadrature::integrate_on_breaks(integrand, &breaks, quadrature::DEFAULT_TOL)?;
    Ok((j.powf(-nf / (nf - beta1)) * integral.value).powf(-1.0 / nf))
}

fn check_moser_args(j: f64, beta1: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    if !(beta1 >= 0.0 && beta1 < n as f64) {
        return Err(Error::domain(format!(
            "Moser weight β₁ = {beta1} must satisfy 0 ≤ β₁ < n = {n}"
        )));
    }
    if !(j > 0.0) || !j.is_finite() {
        return Err(Error::domain(format!("Moser index j = {j} must be > 0")));
    }
    Ok(())
}

/// The Moser sequence member `f_j`, sampled on a mesh graded uniformly in
/// `ln ρ` over `[e^{-j}, 1]` with `mesh` knots per unit of `-ln ρ`.
///
/// Knot values are exact values of `f_j`; the profile is constant on
/// `[0, e^{-j}]` and vanishes for `ρ ≥ 1`.
pub fn moser_profile(
    j: f64,
    beta1: f64,
    params: &ModelParams,
    mesh: usize,
) -> Result<(RadialProfile, MoserParams)> {
    let n = params.n();
    check_moser_args(j, beta1, n)?;
    if mesh < 16 {
        return Err(Error::domain(format!("Moser mesh density {mesh} must be ≥ 16")));
    }
    let d_j = moser_normalization(j, beta1, n)?;
    let mp = MoserParams { j, beta1, n, d_j };
    let amp = mp.amplitude(params.omega());

    let segments = ((mesh as f64 * j).ceil() as usize).max(1);
    let mut knots = Vec::with_capacity(segments + 2);
    let mut values = Vec::with_capacity(segments + 2);
    knots.push(0.0);
    values.push(amp);
    for i in 0..=segments {
        // s = -ln ρ runs from j down to 0
        let s = j * (segments - i) as f64 / segments as f64;
        knots.push((-s).exp());
        values.push(if i == segments { 0.0 } else { amp * s / j });
    }
    Ok((RadialProfile::new(knots, values)?, mp))
}
