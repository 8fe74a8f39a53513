//! Numerical laboratory for sharp functional inequalities on hyperbolic space.
//!
//! The crate evaluates both sides of the Hardy, weighted Trudinger–Moser and
//! Caffarelli–Kohn–Nirenberg inequalities on `H^n` for radial, compactly
//! supported, piecewise-linear profiles; it estimates the best constants by
//! derivative-free maximisation and tracks the Moser sequence that certifies
//! sharpness of the critical exponent `α_β`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`geometry`] | Poincaré ball quantities, `ω_{n-1}`, `α_β`, asymptotic constant `B` |
//! | [`special`] | `Φ_n`, log-gamma, Stirling ratio, equivalence series diagnostics |
//! | [`profile`] | piecewise-linear radial profiles and the Moser sequence |
//! | [`quadrature`] | graded Gauss–Legendre radial integrals and weighted norms |
//! | [`functionals`] | both sides of every inequality as an [`InequalityReport`] |
//! | [`sharp`] | constant estimation, sweeps, certified constants, blow-up tables |
//! | [`report`] | deterministic JSON / CSV / plot-data formatting |
//!
//! All computations are radial: a function on `H^n` is described by its
//! profile in the geodesic distance `ρ` from the ball origin, and integrals
//! reduce to `ω_{n-1} ∫ g(ρ) sinh^{n-1}ρ dρ`.

pub mod error;
pub mod functionals;
pub mod geometry;
pub mod profile;
pub mod quadrature;
pub mod report;
pub mod sharp;
pub mod special;

pub use error::{Error, Result};
pub use functionals::{Bound, CknParams, DeltaAdmissible, Denominator, InequalityReport};
pub use geometry::ModelParams;
pub use profile::{MoserParams, ProfileSpec, RadialProfile};
pub use quadrature::{NormSpec, QuadResult};
pub use sharp::{Objective, ObjectiveFamily, OptimizerConfig, SweepResult};
pub use special::{CriticalDirection, SeriesDiagnosis, SeriesVerdict};
