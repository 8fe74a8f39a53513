//! Poincaré ball model of `H^n` and the constants attached to it.
//!
//! The basepoint is the ball origin, so every radial quantity is a function of
//! the Euclidean norm `|x|` or, equivalently, of the geodesic distance
//! `ρ = ln((1+|x|)/(1-|x|))`.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

/// Ambient-space record consumed by every functional: dimension `n`, the
/// conjugate exponent `n' = n/(n-1)` and the area `ω_{n-1}` of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    n_prime: f64,
    omega: f64,
}

impl ModelParams {
    pub fn new(n: usize) -> Result<Self> {
        let omega = sphere_area(n)?;
        Ok(Self {
            n,
            n_prime: n as f64 / (n as f64 - 1.0),
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n` as a float, for exponent arithmetic.
    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    pub fn n_prime(&self) -> f64 {
        self.n_prime
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// `Γ(n/2)` for integer `n ≥ 1`, by the exact half-integer recurrence.
fn gamma_half_integer(n: usize) -> f64 {
    let (mut value, mut x) = if n % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let target = n as f64 / 2.0;
    while x < target {
        value *= x;
        x += 1.0;
    }
    value
}

/// Surface area of the unit sphere `S^{n-1} ⊂ R^n`, `2π^{n/2}/Γ(n/2)`.
pub fn sphere_area(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("dimension n = {n} must satisfy n ≥ 2")));
    }
    Ok(2.0 * PI.powf(n as f64 / 2.0) / gamma_half_integer(n))
}

fn check_beta(params: &ModelParams, beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta < params.nf()) {
        return Err(Error::domain(format!(
            "weight power β = {beta} must satisfy 0 ≤ β < n = {}",
            params.n
        )));
    }
    Ok(())
}

/// Critical Trudinger–Moser exponent `α_β = n ω^{1/(n-1)} (1 - β/n)`.
pub fn alpha_beta(params: &ModelParams, beta: f64) -> Result<f64> {
    check_beta(params, beta)?;
    let n = params.nf();
    Ok(n * params.omega.powf(1.0 / (n - 1.0)) * (1.0 - beta / n))
}

/// Asymptotically sharp Hardy constant `B = (α_β n' e)^{-1/n'}`.
pub fn sharp_constant_b(params: &ModelParams, beta: f64) -> Result<f64> {
    let alpha = alpha_beta(params, beta)?;
    Ok((alpha * params.n_prime * E).powf(-1.0 / params.n_prime))
}

/// Geodesic data at a point of Euclidean norm `x_norm` in the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicPoint {
    /// Hyperbolic distance to the origin.
    pub rho: f64,
    /// Density of `dV_g` with respect to Lebesgue measure, `2^n/(1-|x|^2)^n`.
    pub volume_factor: f64,
    /// Factor relating `∇_g` to the Euclidean gradient, `((1-|x|^2)/2)^2`.
    pub gradient_factor: f64,
}

pub fn ball_to_geodesic(x_norm: f64, n: usize) -> Result<GeodesicPoint> {
    if !(0.0..1.0).contains(&x_norm) {
        return Err(Error::domain(format!(
            "ball coordinate |x| = {x_norm} must lie in [0, 1)"
        )));
    }
    let one_minus_sq = 1.0 - x_norm * x_norm;
    Ok(GeodesicPoint {
        // ln((1+x)/(1-x)) = 2 artanh(x), better conditioned near 0
        rho: 2.0 * x_norm.atanh(),
        volume_factor: (2.0 / one_minus_sq).powi(n as i32),
        gradient_factor: (one_minus_sq / 2.0).powi(2),
    })
}

/// Inverse of the distance map: `|x| = tanh(ρ/2)`.
pub fn geodesic_to_ball(rho: f64) -> f64 {
    (rho / 2.0).tanh()
}

/// Polar-coordinate density `sinh^{n-1}(ρ)`.
pub fn polar_weight(rho: f64, n: usize) -> f64 {
    rho.sinh().powi(n as i32 - 1)
}
