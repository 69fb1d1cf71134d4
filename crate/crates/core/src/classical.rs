//! Classical motion under the force `-A cos(ωt)`: closed-form trajectories,
//! the characteristic values `C1`, `C2`, the three energy-like constants of
//! motion built from them, and an RK4 reference integrator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PhysicalParams;
use crate::numerics::{one_minus_cos, rk4_step};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalState {
    pub x: f64,
    pub v: f64,
    pub t: f64,
}

impl ClassicalState {
    pub fn new(x: f64, v: f64, t: f64) -> Self {
        Self { x, v, t }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantKind {
    K1,
    K2,
    K3,
}

impl ConstantKind {
    pub const ALL: [ConstantKind; 3] = [ConstantKind::K1, ConstantKind::K2, ConstantKind::K3];
}

/// `v(t) = v0 - (A/mω) sin ωt`, `x(t) = x0 + v0 t + (A/mω²)(cos ωt - 1)`.
pub fn exact_trajectory(params: &PhysicalParams, x0: f64, v0: f64, t: f64) -> Result<ClassicalState> {
    params.require_drive()?;
    let PhysicalParams {
        m,
        amplitude: a,
        omega: w,
        ..
    } = *params;
    let v = v0 - a / (m * w) * (w * t).sin();
    let x = x0 + v0 * t - a / (m * w * w) * one_minus_cos(w * t);
    Ok(ClassicalState { x, v, t })
}

/// Fixed-step RK4 integration of `ẋ = v`, `v̇ = -(A/m) cos ωt` from `0` to `t`.
/// The step is shrunk so that an integer number of steps lands on `t`.
pub fn rk4_trajectory(params: &PhysicalParams, x0: f64, v0: f64, t: f64, dt: f64) -> Result<ClassicalState> {
    Ok(*rk4_path(params, x0, v0, t, dt)?.last().expect("path is never empty"))
}

/// Every RK4 step from `0` to `t_end`, starting with the initial state.
pub fn rk4_path(params: &PhysicalParams, x0: f64, v0: f64, t_end: f64, dt: f64) -> Result<Vec<ClassicalState>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("must be positive, got {dt}"),
        });
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("must be non-negative, got {t_end}"),
        });
    }
    let steps = (t_end / dt).ceil() as usize;
    let mut path = Vec::with_capacity(steps + 1);
    path.push(ClassicalState::new(x0, v0, 0.0));
    if steps == 0 {
        return Ok(path);
    }
    let h = t_end / steps as f64;
    let accel = params.amplitude / params.m;
    let w = params.omega;
    let rhs = |s: f64, y: &[f64; 2]| [y[1], -accel * (w * s).cos()];
    let mut y = [x0, v0];
    for i in 0..steps {
        let s = i as f64 * h;
        y = rk4_step(&rhs, s, &y, h);
        let t = if i + 1 == steps { t_end } else { s + h };
        path.push(ClassicalState::new(y[0], y[1], t));
    }
    Ok(path)
}

/// `C1 = v + (A/mω) sin ωt`,
/// `C2 = t·C1 + (A/mω²)(cos ωt - 1) - x`.
pub fn characteristic_values(params: &PhysicalParams, state: &ClassicalState) -> Result<(f64, f64)> {
    params.require_drive()?;
    let PhysicalParams {
        m,
        amplitude: a,
        omega: w,
        ..
    } = *params;
    let t = state.t;
    let c1 = state.v + a / (m * w) * (w * t).sin();
    let c2 = t * c1 - a / (m * w * w) * one_minus_cos(w * t) - state.x;
    Ok((c1, c2))
}

/// Constants of motion from their generating functions of `(C1, C2)`:
/// `K1 = (m/2)C1²`, `K2 = (m/2)C1² - A·C2`, `K3 = (mω/2)·C1·C2`.
pub fn constant_of_motion(kind: ConstantKind, params: &PhysicalParams, state: &ClassicalState) -> Result<f64> {
    let (c1, c2) = characteristic_values(params, state)?;
    let m = params.m;
    Ok(match kind {
        ConstantKind::K1 => 0.5 * m * c1 * c1,
        ConstantKind::K2 => 0.5 * m * c1 * c1 - params.amplitude * c2,
        ConstantKind::K3 => 0.5 * m * params.omega * c1 * c2,
    })
}

/// `ω → 0` limits of the characteristic values:
/// `C1 → v + At/m`, `C2 → t(v + At/m) - At²/2m - x`.
pub fn characteristic_limits_static(params: &PhysicalParams, state: &ClassicalState) -> (f64, f64) {
    let (m, a, t) = (params.m, params.amplitude, state.t);
    let c1 = state.v + a * t / m;
    (c1, t * c1 - a * t * t / (2.0 * m) - state.x)
}

/// `ω → 0` limits of the constants implied by their generating functions.
/// For `K1` this is `(m/2)(v + At/m)²`.
pub fn constant_limit_static(kind: ConstantKind, params: &PhysicalParams, state: &ClassicalState) -> f64 {
    let (m, a) = (params.m, params.amplitude);
    match kind {
        ConstantKind::K1 => {
            let u = state.v + a * state.t / m;
            0.5 * m * u * u
        }
        ConstantKind::K2 => 0.5 * m * state.v * state.v + a * state.x,
        ConstantKind::K3 => 0.0,
    }
}

/// Audit forms of the expanded constants as they are commonly printed.
pub mod printed {
    use super::*;

    /// `K1 = mv²/2 + (vA/ω) sin ωt + (A/2mω²) sin² ωt`, with the third
    /// coefficient linear in `A`.
    pub fn k1(params: &PhysicalParams, state: &ClassicalState) -> f64 {
        let PhysicalParams {
            m,
            amplitude: a,
            omega: w,
            ..
        } = *params;
        let s = (w * state.t).sin();
        0.5 * m * state.v * state.v + state.v * a / w * s + a / (2.0 * m * w * w) * s * s
    }

    /// Same expansion with the `A²` coefficient the generating function gives.
    pub fn k1_expanded(params: &PhysicalParams, state: &ClassicalState) -> f64 {
        let PhysicalParams {
            m,
            amplitude: a,
            omega: w,
            ..
        } = *params;
        let s = (w * state.t).sin();
        0.5 * m * state.v * state.v + state.v * a / w * s + a * a / (2.0 * m * w * w) * s * s
    }

    /// `ω → 0` limit of `K1` printed with a minus sign, `(m/2)(v - At/m)²`.
    pub fn k1_static_limit(params: &PhysicalParams, state: &ClassicalState) -> f64 {
        let u = state.v - params.amplitude * state.t / params.m;
        0.5 * params.m * u * u
    }
}
