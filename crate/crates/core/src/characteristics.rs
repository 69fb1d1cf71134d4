//! Method of characteristics for linear first-order equations
//!
//! ```text
//! ∂C/∂t + α(k,t) ∂C/∂k = β(k,t) C,      C(k,0) = F(k)
//! ```
//!
//! Every grid point is traced backward along `dk/ds = α(k,s)` to its foot
//! `k0` at `s = 0`, while the exponent `∫ β ds` is accumulated in the same RK4
//! state. The tangent `∂k(s)/∂k` and `∂/∂k ∫ β ds` ride along too, so the
//! solver returns `∂C/∂k` exactly at every point without differencing across
//! the grid.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{InitialProfile, MomentumGrid, SpectralState};
use crate::numerics::rk4_step;

/// Coefficients of the equation frozen at one instant.
pub trait CoefficientSlice: Send + Sync {
    fn alpha(&self, k: f64) -> f64;
    fn beta(&self, k: f64) -> Complex64;

    fn alpha_dk(&self, k: f64) -> f64 {
        let h = 1e-6 * k.abs().max(1.0);
        (self.alpha(k + h) - self.alpha(k - h)) / (2.0 * h)
    }

    fn beta_dk(&self, k: f64) -> Complex64 {
        let h = 1e-6 * k.abs().max(1.0);
        (self.beta(k + h) - self.beta(k - h)) / (2.0 * h)
    }
}

/// A linear transport equation `∂C/∂t + α ∂C/∂k = β C`.
pub trait LinearPde: Sync {
    type Slice<'a>: CoefficientSlice
    where
        Self: 'a;

    fn at(&self, t: f64) -> Self::Slice<'_>;
}

/// `α = a0 + a1·k`, `β = b0 + b1·k + b2·k²`. Every equation in this crate
/// has this shape once time is frozen.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadraticCoefficients {
    pub alpha: [f64; 2],
    pub beta: [Complex64; 3],
}

impl CoefficientSlice for QuadraticCoefficients {
    #[inline]
    fn alpha(&self, k: f64) -> f64 {
        self.alpha[0] + self.alpha[1] * k
    }

    #[inline]
    fn beta(&self, k: f64) -> Complex64 {
        self.beta[0] + (self.beta[1] + self.beta[2] * k) * k
    }

    #[inline]
    fn alpha_dk(&self, _k: f64) -> f64 {
        self.alpha[1]
    }

    #[inline]
    fn beta_dk(&self, k: f64) -> Complex64 {
        self.beta[1] + self.beta[2] * (2.0 * k)
    }
}

/// Equation given by a pair of closures. Derivatives in `k` fall back to
/// central differences.
pub struct ClosurePde<A, B> {
    alpha: A,
    beta: B,
}

impl<A, B> ClosurePde<A, B>
where
    A: Fn(f64, f64) -> f64 + Sync,
    B: Fn(f64, f64) -> Complex64 + Sync,
{
    pub fn new(alpha: A, beta: B) -> Self {
        Self { alpha, beta }
    }
}

pub struct ClosureSlice<'a, A, B> {
    pde: &'a ClosurePde<A, B>,
    t: f64,
}

impl<A, B> CoefficientSlice for ClosureSlice<'_, A, B>
where
    A: Fn(f64, f64) -> f64 + Sync,
    B: Fn(f64, f64) -> Complex64 + Sync,
{
    fn alpha(&self, k: f64) -> f64 {
        (self.pde.alpha)(k, self.t)
    }

    fn beta(&self, k: f64) -> Complex64 {
        (self.pde.beta)(k, self.t)
    }
}

impl<A, B> LinearPde for ClosurePde<A, B>
where
    A: Fn(f64, f64) -> f64 + Sync,
    B: Fn(f64, f64) -> Complex64 + Sync,
{
    type Slice<'a>
        = ClosureSlice<'a, A, B>
    where
        Self: 'a;

    fn at(&self, t: f64) -> Self::Slice<'_> {
        ClosureSlice { pde: self, t }
    }
}

/// An equation together with its initial profile.
pub struct AdvectionProblem<'a, P: ?Sized, F: ?Sized> {
    pub pde: &'a P,
    pub initial: &'a F,
}

impl<'a, P: ?Sized, F: ?Sized> AdvectionProblem<'a, P, F> {
    pub fn new(pde: &'a P, initial: &'a F) -> Self {
        Self { pde, initial }
    }
}

pub const DEFAULT_EXPONENT_CAP: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineOptions {
    /// RK4 steps from `t` back to `0`; `None` picks `ceil(200·t·max(ω, 1))`.
    pub steps: Option<usize>,
    /// Drive frequency used by the default step rule.
    pub omega: f64,
    /// Largest admissible real part of the accumulated exponent.
    pub exponent_cap: f64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            steps: None,
            omega: 1.0,
            exponent_cap: DEFAULT_EXPONENT_CAP,
        }
    }
}

impl EngineOptions {
    pub fn for_frequency(omega: f64) -> Self {
        Self {
            omega,
            ..Self::default()
        }
    }

    pub fn with_steps(self, steps: usize) -> Self {
        Self {
            steps: Some(steps),
            ..self
        }
    }

    pub fn resolve_steps(&self, t: f64) -> usize {
        self.steps
            .unwrap_or_else(|| default_steps(t, self.omega))
            .max(1)
    }
}

pub fn default_steps(t: f64, omega: f64) -> usize {
    (200.0 * t.abs() * omega.abs().max(1.0)).ceil().max(1.0) as usize
}

fn check_trace_args(t: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidParameter {
            name: "steps",
            reason: "need at least one step".into(),
        });
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("must be non-negative and finite, got {t}"),
        });
    }
    Ok(())
}

fn integrate_scalar<A>(alpha: &A, k: f64, from: f64, to: f64, steps: usize) -> Result<f64>
where
    A: Fn(f64, f64) -> f64,
{
    let h = (to - from) / steps as f64;
    let rhs = |s: f64, y: &[f64; 1]| [alpha(y[0], s)];
    let mut y = [k];
    for i in 0..steps {
        let s = from + i as f64 * h;
        y = rk4_step(&rhs, s, &y, h);
        if !y[0].is_finite() {
            return Err(Error::NonFiniteCoefficient { k, t: s });
        }
    }
    Ok(y[0])
}

/// Foot point at `s = 0` of the characteristic through `(k, t)`.
pub fn trace_characteristic_backward<A>(alpha: A, k: f64, t: f64, steps: usize) -> Result<f64>
where
    A: Fn(f64, f64) -> f64,
{
    check_trace_args(t, steps)?;
    integrate_scalar(&alpha, k, t, 0.0, steps)
}

/// Position at time `t` of the characteristic leaving `k0` at `s = 0`.
pub fn trace_characteristic_forward<A>(alpha: A, k0: f64, t: f64, steps: usize) -> Result<f64>
where
    A: Fn(f64, f64) -> f64,
{
    check_trace_args(t, steps)?;
    integrate_scalar(&alpha, k0, 0.0, t, steps)
}

/// Everything the backward trace of one grid point produces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracedPoint {
    /// Foot point at `s = 0`.
    pub foot: f64,
    /// `∫₀ᵗ β(k(s), s) ds` along the characteristic.
    pub exponent: Complex64,
    /// `∂ foot / ∂k`.
    pub foot_dk: f64,
    /// `∂ exponent / ∂k`.
    pub exponent_dk: Complex64,
}

/// Traces every grid point back to `s = 0` with the given number of steps.
pub fn trace_grid<P>(pde: &P, grid: &MomentumGrid, t: f64, steps: usize) -> Result<Vec<TracedPoint>>
where
    P: LinearPde + ?Sized,
{
    check_trace_args(t, steps)?;
    let h = -t / steps as f64;
    // slices at the 2·steps + 1 half-step instants t, t + h/2, ..., 0
    let slices: Vec<P::Slice<'_>> = (0..=2 * steps)
        .map(|j| {
            let s = if j == 2 * steps { 0.0 } else { t + 0.5 * h * j as f64 };
            pde.at(s)
        })
        .collect();

    grid.to_vec()
        .into_par_iter()
        .map(|k| {
            // y = [k, Re E, Im E, J, Re E_k, Im E_k]
            let mut y = [k, 0.0, 0.0, 1.0, 0.0, 0.0];
            for step in 0..steps {
                let s = t + step as f64 * h;
                let rhs = |s_eval: f64, y: &[f64; 6]| {
                    let offset = ((s_eval - s) / (0.5 * h)).round() as usize;
                    let slice = &slices[2 * step + offset];
                    let b = slice.beta(y[0]);
                    let bk = slice.beta_dk(y[0]) * y[3];
                    [
                        slice.alpha(y[0]),
                        b.re,
                        b.im,
                        slice.alpha_dk(y[0]) * y[3],
                        bk.re,
                        bk.im,
                    ]
                };
                y = rk4_step(&rhs, s, &y, h);
                if !y.iter().all(|v| v.is_finite()) {
                    return Err(Error::NonFiniteCoefficient { k, t: s });
                }
            }
            // integrated from t down to 0, so flip the sign of the exponent
            Ok(TracedPoint {
                foot: y[0],
                exponent: -Complex64::new(y[1], y[2]),
                foot_dk: y[3],
                exponent_dk: -Complex64::new(y[4], y[5]),
            })
        })
        .collect()
}

/// `C(k,t) = F(k0) · exp(∫₀ᵗ β ds)` on every grid point, with `∂C/∂k`.
pub fn evolve_linear_pde<P, F>(
    problem: &AdvectionProblem<'_, P, F>,
    grid: &MomentumGrid,
    t: f64,
    options: &EngineOptions,
) -> Result<SpectralState>
where
    P: LinearPde + ?Sized,
    F: InitialProfile + ?Sized,
{
    let steps = options.resolve_steps(t);
    let traced = trace_grid(problem.pde, grid, t, steps)?;
    let mut values = Vec::with_capacity(traced.len());
    let mut slope = Vec::with_capacity(traced.len());
    for (i, p) in traced.iter().enumerate() {
        if p.exponent.re > options.exponent_cap {
            return Err(Error::ExponentOverflow {
                k: grid.point(i),
                value: p.exponent.re,
                cap: options.exponent_cap,
            });
        }
        let growth = p.exponent.exp();
        let f = problem.initial.amplitude(p.foot);
        let df = problem.initial.slope(p.foot);
        values.push(f * growth);
        slope.push(growth * (df * p.foot_dk + f * p.exponent_dk));
    }
    SpectralState::new(*grid, values, t)?.with_slope(slope)
}
