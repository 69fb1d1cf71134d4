//! Velocity quantization with the constants of motion `K1`, `K2`, `K3`.
//!
//! With `v̂ → ħk/m`, `x → i∂/∂k` and `xv → (x v̂ + v̂ x)/2`, each `K̂ᵢ` turns
//! the Schrödinger equation into a linear transport equation for the
//! momentum coefficients:
//!
//! ```text
//! S1:  ∂C/∂t                                      = -(i/ħ) S1(k,t) C
//! S2:  ∂C/∂t - (A/ħ) ∂C/∂k                        = -(i/ħ) B(k,t)  C
//! S3:  ∂C/∂t + (ω/2)(k + (A/ħω) sin ωt) ∂C/∂k     = (-ω/4 - (i/ħ) f3(k,t)) C
//! ```
//!
//! The `-ω/4` amplitude term comes from the symmetrized `xv` product and
//! exactly offsets the dilation of the S3 flow, so the evolution is unitary.
//!
//! `Derived` evaluations solve these equations with the characteristics
//! engine. `PaperPrinted` evaluations reproduce the closed forms as they are
//! usually printed, for auditing: a linear-in-`A` third coefficient in `S1`
//! and `B`, `A²/ω²` without `1/m` in `B`, a `t²/2` term in `φ1`, a `+ω/4`
//! amplitude, and `g(t) = (A/5ħω)(2 cos ωt + A sin ωt)` without decay.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristics::{
    evolve_linear_pde, trace_characteristic_backward, AdvectionProblem, EngineOptions, LinearPde,
    QuadraticCoefficients,
};
use crate::error::{Error, Result};
use crate::model::{InitialProfile, MomentumGrid, PhysicalParams, SpectralState};
use crate::numerics::{integrate, one_minus_cos, spectral_derivative, SixthOrderDerivative};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemeId {
    S1,
    S2,
    S3,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::S1, SchemeId::S2, SchemeId::S3];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaVariant {
    PaperPrinted,
    Derived,
}

/// Coefficients `[c0, c1, c2]` of the diagonal symbol `c0 + c1 k + c2 k²`.
pub fn symbol_coefficients(scheme: SchemeId, params: &PhysicalParams, t: f64, variant: FormulaVariant) -> [f64; 3] {
    let PhysicalParams {
        m,
        amplitude: a,
        omega: w,
        hbar,
    } = *params;
    let (s, c1m) = ((w * t).sin(), one_minus_cos(w * t));
    let printed = variant == FormulaVariant::PaperPrinted;
    // third term of K1: A²/2mω² sin² ωt, printed with a single power of A
    let a_sq = if printed { a } else { a * a };
    let k1 = [a_sq / (2.0 * m * w * w) * s * s, a * hbar / (m * w) * s, hbar * hbar / (2.0 * m)];
    match scheme {
        SchemeId::S1 => k1,
        SchemeId::S2 => {
            let restoring = if printed {
                a * a / (w * w) * c1m
            } else {
                a * a / (m * w * w) * c1m
            };
            [
                k1[0] - a * a * t / (m * w) * s + restoring,
                k1[1] - a * hbar * t / m,
                k1[2],
            ]
        }
        SchemeId::S3 => [
            a * a * t / (2.0 * m * w) * s * s - a * a / (2.0 * m * w * w) * s * c1m,
            a * hbar * t / m * s - a * hbar / (2.0 * m * w) * c1m,
            w * t * hbar * hbar / (2.0 * m),
        ],
    }
}

/// Real diagonal symbol `S1(k,t)`, `B(k,t)` or `f3(k,t)`.
pub fn diagonal_symbol(scheme: SchemeId, params: &PhysicalParams, k: f64, t: f64, variant: FormulaVariant) -> Result<f64> {
    params.require_drive()?;
    let c = symbol_coefficients(scheme, params, t, variant);
    Ok(c[0] + (c[1] + c[2] * k) * k)
}

/// Coefficient equation of one constant-of-motion scheme.
#[derive(Clone, Copy, Debug)]
pub struct SchemePde {
    pub scheme: SchemeId,
    pub params: PhysicalParams,
    pub variant: FormulaVariant,
}

impl SchemePde {
    pub fn derived(scheme: SchemeId, params: PhysicalParams) -> Self {
        Self {
            scheme,
            params,
            variant: FormulaVariant::Derived,
        }
    }

    /// Real part of the constant amplitude term of `β`.
    pub fn amplitude_rate(&self) -> f64 {
        match (self.scheme, self.variant) {
            (SchemeId::S3, FormulaVariant::Derived) => -0.25 * self.params.omega,
            (SchemeId::S3, FormulaVariant::PaperPrinted) => 0.25 * self.params.omega,
            _ => 0.0,
        }
    }
}

impl LinearPde for SchemePde {
    type Slice<'a> = QuadraticCoefficients;

    fn at(&self, t: f64) -> QuadraticCoefficients {
        let p = &self.params;
        let c = symbol_coefficients(self.scheme, p, t, self.variant);
        let alpha = match self.scheme {
            SchemeId::S1 => [0.0, 0.0],
            SchemeId::S2 => [-p.amplitude / p.hbar, 0.0],
            SchemeId::S3 => [p.amplitude / (2.0 * p.hbar) * (p.omega * t).sin(), 0.5 * p.omega],
        };
        let mi = Complex64::new(0.0, -1.0 / p.hbar);
        QuadraticCoefficients {
            alpha,
            beta: [
                mi * c[0] + self.amplitude_rate(),
                mi * c[1],
                mi * c[2],
            ],
        }
    }
}

/// Backward characteristic map of the S3 flow: `k0 = scale·k + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme3CharMap {
    pub scale: f64,
    pub shift: f64,
}

impl Scheme3CharMap {
    pub fn foot(&self, k: f64) -> f64 {
        self.scale * k + self.shift
    }
}

/// `g(t) = (A/5ħω)(2 cos ωt + A sin ωt)` as printed.
pub fn printed_g(params: &PhysicalParams, t: f64) -> f64 {
    let PhysicalParams {
        amplitude: a,
        omega: w,
        hbar,
        ..
    } = *params;
    a / (5.0 * hbar * w) * (2.0 * (w * t).cos() + a * (w * t).sin())
}

/// The S3 foot map. `Derived` integrates `dk/ds = (ω/2)k + (A/2ħ) sin ωs`
/// backward from `(0, t)` to get the shift; `PaperPrinted` uses
/// `g(t) - g(0)` with the printed `g`.
pub fn scheme3_char_map(params: &PhysicalParams, t: f64, variant: FormulaVariant, steps: usize) -> Result<Scheme3CharMap> {
    params.require_drive()?;
    let scale = (-0.5 * params.omega * t).exp();
    let shift = match variant {
        FormulaVariant::PaperPrinted => printed_g(params, t) - printed_g(params, 0.0),
        FormulaVariant::Derived => {
            let (w, drive) = (params.omega, params.amplitude / (2.0 * params.hbar));
            trace_characteristic_backward(|k, s| 0.5 * w * k + drive * (w * s).sin(), 0.0, t, steps)?
        }
    };
    Ok(Scheme3CharMap { scale, shift })
}

/// Solution of one scheme at time `t` from the initial profile.
pub fn evolve_scheme<F>(
    scheme: SchemeId,
    profile: &F,
    grid: &MomentumGrid,
    params: &PhysicalParams,
    t: f64,
    variant: FormulaVariant,
    options: &EngineOptions,
) -> Result<SpectralState>
where
    F: InitialProfile + ?Sized,
{
    params.validate()?;
    params.require_drive()?;
    match variant {
        FormulaVariant::Derived => {
            let pde = SchemePde::derived(scheme, *params);
            evolve_linear_pde(&AdvectionProblem::new(&pde, profile), grid, t, options)
        }
        FormulaVariant::PaperPrinted => printed_solution(scheme, profile, grid, params, t, options),
    }
}

/// `φ1(k,t)` as printed, with `t²/2` and a single power of `A`.
pub fn printed_phi1(params: &PhysicalParams, k: f64, t: f64) -> f64 {
    let PhysicalParams {
        m,
        amplitude: a,
        omega: w,
        hbar,
    } = *params;
    hbar * k * k * t / (2.0 * m) + k * a / (m * w * w) * one_minus_cos(w * t)
        + a / (2.0 * m * w * w) * (0.5 * t * t - (2.0 * w * t).sin() / (4.0 * w))
}

/// `(1/ħ)∫₀ᵗ S1(k,s) ds` by quadrature of the derived symbol.
pub fn phi1_by_quadrature(params: &PhysicalParams, k: f64, t: f64) -> Result<f64> {
    let panel = 0.25 * PI / params.omega.abs();
    let integral = integrate(
        |s| {
            let c = symbol_coefficients(SchemeId::S1, params, s, FormulaVariant::Derived);
            c[0] + (c[1] + c[2] * k) * k
        },
        0.0,
        t,
        panel,
        1e-12,
    )?;
    Ok(integral / params.hbar)
}

fn printed_phase(scheme: SchemeId, params: &PhysicalParams, k: f64, t: f64) -> Result<f64> {
    let panel = 0.25 * PI / params.omega.abs();
    let printed = FormulaVariant::PaperPrinted;
    let hbar = params.hbar;
    match scheme {
        SchemeId::S1 => Ok(printed_phi1(params, k, t)),
        SchemeId::S2 => {
            let a = params.amplitude;
            let integral = integrate(
                |s| {
                    let c = symbol_coefficients(SchemeId::S2, params, s, printed);
                    let kk = k + a * t / hbar - a * s / hbar;
                    c[0] + (c[1] + c[2] * kk) * kk
                },
                0.0,
                t,
                panel,
                1e-10,
            )?;
            Ok(integral / hbar)
        }
        SchemeId::S3 => {
            let w = params.omega;
            let gt = printed_g(params, t);
            let integral = integrate(
                |s| {
                    let c = symbol_coefficients(SchemeId::S3, params, s, printed);
                    let kk = (0.5 * w * s).exp() * (k - (-0.5 * w * t).exp() + gt - printed_g(params, s));
                    c[0] + (c[1] + c[2] * kk) * kk
                },
                0.0,
                t,
                panel,
                1e-10,
            )?;
            Ok(integral / hbar)
        }
    }
}

fn printed_solution<F>(
    scheme: SchemeId,
    profile: &F,
    grid: &MomentumGrid,
    params: &PhysicalParams,
    t: f64,
    options: &EngineOptions,
) -> Result<SpectralState>
where
    F: InitialProfile + ?Sized,
{
    let growth = match scheme {
        SchemeId::S3 => 0.25 * params.omega * t,
        _ => 0.0,
    };
    if growth > options.exponent_cap {
        return Err(Error::ExponentOverflow {
            k: f64::NAN,
            value: growth,
            cap: options.exponent_cap,
        });
    }
    let map = scheme3_char_map(params, t, FormulaVariant::PaperPrinted, 1)?;
    let mut values = Vec::with_capacity(grid.len());
    for k in grid.points() {
        let foot = match scheme {
            SchemeId::S1 => k,
            SchemeId::S2 => k + params.amplitude * t / params.hbar,
            SchemeId::S3 => map.foot(k),
        };
        let phase = printed_phase(scheme, params, k, t)?;
        values.push(profile.amplitude(foot) * Complex64::new(growth, -phase).exp());
    }
    SpectralState::new(*grid, values, t)
}

/// How `∂/∂k` is discretized when applying a generator to sampled data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KDerivative {
    Spectral,
    SixthOrder,
}

pub fn k_derivative(values: &[Complex64], spacing: f64, method: KDerivative) -> Result<Vec<Complex64>> {
    match method {
        KDerivative::Spectral => Ok(spectral_derivative(values, spacing)),
        KDerivative::SixthOrder => {
            if values.len() < SixthOrderDerivative::MIN_POINTS {
                return Err(Error::GridTooCoarse(format!(
                    "sixth-order stencil needs {} points, got {}",
                    SixthOrderDerivative::MIN_POINTS,
                    values.len()
                )));
            }
            let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
            SixthOrderDerivative::new(spacing).apply(values, &mut out);
            Ok(out)
        }
    }
}

/// Applies `K̂3` in the momentum representation:
/// `f3 C - (iħω/4) C - i(ħωk/2 + (A/2) sin ωt) ∂C/∂k`.
pub fn apply_k3(params: &PhysicalParams, state: &SpectralState, method: KDerivative) -> Result<Vec<Complex64>> {
    params.require_drive()?;
    let t = state.t;
    let dk = k_derivative(&state.values, state.grid.spacing(), method)?;
    let c = symbol_coefficients(SchemeId::S3, params, t, FormulaVariant::Derived);
    let PhysicalParams {
        amplitude: a,
        omega: w,
        hbar,
        ..
    } = *params;
    let drive = 0.5 * a * (w * t).sin();
    Ok(state
        .grid
        .points()
        .zip(state.values.iter().zip(&dk))
        .map(|(k, (v, d))| {
            let f3 = c[0] + (c[1] + c[2] * k) * k;
            v * Complex64::new(f3, -0.25 * hbar * w) - Complex64::new(0.0, 0.5 * hbar * w * k + drive) * d
        })
        .collect())
}

/// Outcome of [`weyl_generator_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylCheck {
    pub t: f64,
    /// `max |K̂3 C - iħ ∂C/∂t|` over interior points.
    pub residual: f64,
    /// `max |C|` over the same points, for scale.
    pub peak: f64,
}

const TIME_STEP: f64 = 1e-3;

/// Compares the symmetrized-ordering generator applied to the S3 state at
/// `t` with `iħ` times a fourth-order finite-difference time derivative of
/// the S3 evolution. Points in the outer eighth of the grid on each side are
/// excluded.
pub fn weyl_generator_check<F>(
    params: &PhysicalParams,
    profile: &F,
    grid: &MomentumGrid,
    t: f64,
    method: KDerivative,
    options: &EngineOptions,
) -> Result<WeylCheck>
where
    F: InitialProfile + ?Sized,
{
    if grid.len() < 16 {
        return Err(Error::GridTooCoarse(format!("need at least 16 points, got {}", grid.len())));
    }
    let evolve = |tt: f64| evolve_scheme(SchemeId::S3, profile, grid, params, tt, FormulaVariant::Derived, options);
    let h = TIME_STEP;
    let state = evolve(t)?;
    let dt: Vec<Complex64> = if t >= 2.0 * h {
        let (m2, m1, p1, p2) = (evolve(t - 2.0 * h)?, evolve(t - h)?, evolve(t + h)?, evolve(t + 2.0 * h)?);
        (0..grid.len())
            .map(|i| (m2.values[i] - 8.0 * m1.values[i] + 8.0 * p1.values[i] - p2.values[i]) / (12.0 * h))
            .collect()
    } else {
        let s: Vec<SpectralState> = (1..=4).map(|j| evolve(t + j as f64 * h)).collect::<Result<_>>()?;
        (0..grid.len())
            .map(|i| {
                (-25.0 * state.values[i] + 48.0 * s[0].values[i] - 36.0 * s[1].values[i] + 16.0 * s[2].values[i]
                    - 3.0 * s[3].values[i])
                    / (12.0 * h)
            })
            .collect()
    };
    let generated = apply_k3(params, &state, method)?;
    let ihbar = Complex64::new(0.0, params.hbar);
    let margin = grid.len() / 8;
    let mut check = WeylCheck {
        t,
        residual: 0.0,
        peak: 0.0,
    };
    for i in margin..grid.len() - margin {
        check.residual = check.residual.max((generated[i] - ihbar * dt[i]).norm());
        check.peak = check.peak.max(state.values[i].norm());
    }
    Ok(check)
}

/// Robertson bound `ħ/2m` implied by `[x, v̂] = iħ/m`.
pub fn uncertainty_bound(params: &PhysicalParams) -> f64 {
    params.hbar / (2.0 * params.m)
}

/// The bound `ħ/m` as printed.
pub fn printed_uncertainty_bound(params: &PhysicalParams) -> f64 {
    params.hbar / params.m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_grid, gaussian_profile, GaussianPacket};

    fn unit() -> PhysicalParams {
        PhysicalParams::default()
    }

    #[test]
    fn symbols_at_time_zero() {
        let p = PhysicalParams::new(1.3, 0.8, 1.7, 0.9).unwrap();
        let k = 0.6;
        let kinetic = p.hbar * p.hbar * k * k / (2.0 * p.m);
        for v in [FormulaVariant::Derived, FormulaVariant::PaperPrinted] {
            assert!((diagonal_symbol(SchemeId::S1, &p, k, 0.0, v).unwrap() - kinetic).abs() < 1e-15);
            assert!((diagonal_symbol(SchemeId::S2, &p, k, 0.0, v).unwrap() - kinetic).abs() < 1e-15);
            assert_eq!(diagonal_symbol(SchemeId::S3, &p, k, 0.0, v).unwrap(), 0.0);
        }
        assert!(diagonal_symbol(SchemeId::S1, &p.with_omega(0.0), k, 1.0, FormulaVariant::Derived).is_err());
    }

    #[test]
    fn symbols_are_quantized_constants() {
        // with v = ħk/m and x = 0 the symbols equal the classical constants
        use crate::classical::{constant_of_motion, ClassicalState, ConstantKind};
        let p = PhysicalParams::new(1.3, 0.8, 1.7, 0.9).unwrap();
        let (k, t) = (0.45, 1.3);
        let s = ClassicalState::new(0.0, p.hbar * k / p.m, t);
        let pairs = [
            (SchemeId::S1, ConstantKind::K1),
            (SchemeId::S2, ConstantKind::K2),
            (SchemeId::S3, ConstantKind::K3),
        ];
        for (scheme, kind) in pairs {
            let sym = diagonal_symbol(scheme, &p, k, t, FormulaVariant::Derived).unwrap();
            let classical = constant_of_motion(kind, &p, &s).unwrap();
            assert!((sym - classical).abs() < 1e-13, "{scheme:?}: {sym} vs {classical}");
        }
    }

    #[test]
    fn char_map_identity_and_homogeneous() {
        let m0 = scheme3_char_map(&unit(), 0.0, FormulaVariant::Derived, 1).unwrap();
        assert_eq!((m0.scale, m0.shift), (1.0, 0.0));
        let free = unit().with_amplitude(0.0);
        let m = scheme3_char_map(&free, 2.0, FormulaVariant::Derived, 400).unwrap();
        assert_eq!(m.shift, 0.0);
        assert!((m.scale - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn char_map_shift_against_closed_form() {
        // closed form of -(A/2ħ)∫₀ᵗ e^{-ωs/2} sin ωs ds
        let shift_exact = |p: &PhysicalParams, t: f64| {
            let w = p.omega;
            p.amplitude / (5.0 * p.hbar * w) * ((-0.5 * w * t).exp() * (2.0 * (w * t).cos() + (w * t).sin()) - 2.0)
        };
        let t = PI;
        let steps = (t / 1e-5).round() as usize;
        let m = scheme3_char_map(&unit(), t, FormulaVariant::Derived, steps).unwrap();
        assert!((m.shift - shift_exact(&unit(), t)).abs() < 1e-12, "{}", m.shift);
        let printed = scheme3_char_map(&unit(), t, FormulaVariant::PaperPrinted, 1).unwrap();
        assert!((printed.shift - m.shift).abs() > 0.1);
    }

    #[test]
    fn s1_keeps_modulus() {
        let packet = GaussianPacket::new(0.4, 1.0, 0.2).unwrap();
        let grid = build_grid(-10.0, 10.0, 401).unwrap();
        let s = evolve_scheme(SchemeId::S1, &packet, &grid, &unit(), 2.3, FormulaVariant::Derived, &EngineOptions::default()).unwrap();
        for (k, c) in grid.points().zip(&s.values) {
            assert!((c.norm() - packet.amplitude(k).norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn s1_phase_against_quadrature() {
        let p = PhysicalParams::new(1.2, 0.7, 1.4, 1.1).unwrap();
        let packet = GaussianPacket::default();
        let grid = build_grid(-5.0, 5.0, 21).unwrap();
        let t = 2.0;
        let s = evolve_scheme(SchemeId::S1, &packet, &grid, &p, t, FormulaVariant::Derived, &EngineOptions::default()).unwrap();
        for (k, c) in grid.points().zip(&s.values) {
            let phi = phi1_by_quadrature(&p, k, t).unwrap();
            let expected = packet.amplitude(k) * Complex64::from_polar(1.0, -phi);
            assert!((c - expected).norm() < 1e-9);
        }
    }

    #[test]
    fn s2_peak_drifts_linearly() {
        let packet = GaussianPacket::new(1.0, 0.5, 0.0).unwrap();
        let grid = build_grid(-10.0, 10.0, 2001).unwrap();
        let t = 3.0;
        let s = evolve_scheme(SchemeId::S2, &packet, &grid, &unit(), t, FormulaVariant::Derived, &EngineOptions::default()).unwrap();
        let d = s.density();
        let i = (0..d.len()).max_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap();
        assert!((grid.point(i) - (1.0 - t)).abs() <= grid.spacing());
    }

    #[test]
    fn s3_norm_conserved_over_period() {
        let packet = GaussianPacket::default();
        let grid = build_grid(-260.0, 260.0, 4001).unwrap();
        for &t in &[0.5, PI, 2.0 * PI] {
            let s = evolve_scheme(SchemeId::S3, &packet, &grid, &unit(), t, FormulaVariant::Derived, &EngineOptions::default()).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-6, "t={t}: {}", s.norm());
        }
    }

    #[test]
    fn printed_s3_grows() {
        let packet = GaussianPacket::default();
        let grid = build_grid(-60.0, 60.0, 2001).unwrap();
        let t = 2.0;
        let s = evolve_scheme(SchemeId::S3, &packet, &grid, &unit(), t, FormulaVariant::PaperPrinted, &EngineOptions::default()).unwrap();
        assert!((s.norm() - (unit().omega * t).exp()).abs() < 1e-6);
    }

    #[test]
    fn weyl_residual_at_start() {
        let packet = GaussianPacket::default();
        let grid = build_grid(-24.0, 24.0, 2048).unwrap();
        let check = weyl_generator_check(&unit(), &packet, &grid, 0.0, KDerivative::Spectral, &EngineOptions::default()).unwrap();
        assert!(check.residual < 1e-6, "{check:?}");
    }

    #[test]
    fn weyl_residual_converges_with_sixth_order_stencil() {
        let packet = GaussianPacket::default();
        let residual = |n: usize| {
            let grid = build_grid(-24.0, 24.0, n).unwrap();
            weyl_generator_check(&unit(), &packet, &grid, 0.5, KDerivative::SixthOrder, &EngineOptions::default())
                .unwrap()
                .residual
        };
        let (coarse, fine) = (residual(128), residual(256));
        assert!(coarse / fine > 32.0, "{coarse} {fine}");
    }

    #[test]
    fn advection_vanishes_at_origin_without_drive() {
        let p = unit().with_amplitude(0.0);
        let grid = build_grid(-1.0, 1.0, 21).unwrap();
        let flat = SpectralState::new(grid, vec![Complex64::new(1.0, 0.0); 21], 0.3).unwrap();
        let out = apply_k3(&p, &flat, KDerivative::SixthOrder).unwrap();
        let f3 = diagonal_symbol(SchemeId::S3, &p, 0.0, 0.3, FormulaVariant::Derived).unwrap();
        assert!((out[10] - Complex64::new(f3, -0.25)).norm() < 1e-12);
    }

    #[test]
    fn uncertainty_bounds() {
        assert_eq!(uncertainty_bound(&unit()), 0.5);
        assert_eq!(uncertainty_bound(&PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap()), 0.25);
        assert_eq!(printed_uncertainty_bound(&unit()), 1.0);
    }

    #[test]
    fn gaussian_profile_is_smooth_test_state() {
        let grid = build_grid(-8.0, 8.0, 64).unwrap();
        assert!(gaussian_profile(&GaussianPacket::default(), &grid).is_ok());
    }
}
