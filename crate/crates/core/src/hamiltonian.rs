//! Hamiltonian quantization: `H = p²/2m + x A cos ωt` in the momentum basis.
//!
//! With `x → i∂/∂k` the coefficients obey
//! `∂C/∂t - (A/ħ) cos ωt ∂C/∂k = -(iħk²/2m) C`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristics::{evolve_linear_pde, AdvectionProblem, EngineOptions, LinearPde, QuadraticCoefficients};
use crate::error::Result;
use crate::model::{InitialProfile, MomentumGrid, PhysicalParams, SpectralState};
use crate::numerics::integrate;

/// `H = p²/2m + x A cos ωt`.
pub fn hamiltonian_value(params: &PhysicalParams, x: f64, p: f64, t: f64) -> f64 {
    p * p / (2.0 * params.m) + x * params.amplitude * (params.omega * t).cos()
}

/// Coefficient equation of the Hamiltonian scheme.
#[derive(Clone, Copy, Debug)]
pub struct HamiltonianPde {
    pub params: PhysicalParams,
}

impl LinearPde for HamiltonianPde {
    type Slice<'a> = QuadraticCoefficients;

    fn at(&self, t: f64) -> QuadraticCoefficients {
        let p = &self.params;
        QuadraticCoefficients {
            alpha: [-(p.amplitude / p.hbar) * (p.omega * t).cos(), 0.0],
            beta: [
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -p.hbar / (2.0 * p.m)),
            ],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianVariant {
    /// `F(k + (A/ħω) sin ωt) · e^{-iħk²t/2m}`, phase taken at the endpoint `k`.
    PaperEq13,
    /// Full characteristics solution including the phase accumulated along the
    /// drifting wavenumber.
    ExactCharacteristics,
}

/// Wavenumber shift of the Hamiltonian density, `(A/ħω) sin ωt`.
pub fn drift_shift(params: &PhysicalParams, t: f64) -> f64 {
    params.amplitude / (params.hbar * params.omega) * (params.omega * t).sin()
}

pub fn evolve_hamiltonian<F>(
    profile: &F,
    grid: &MomentumGrid,
    params: &PhysicalParams,
    t: f64,
    variant: HamiltonianVariant,
    options: &EngineOptions,
) -> Result<SpectralState>
where
    F: InitialProfile + ?Sized,
{
    params.validate()?;
    params.require_drive()?;
    match variant {
        HamiltonianVariant::ExactCharacteristics => {
            let pde = HamiltonianPde { params: *params };
            evolve_linear_pde(&AdvectionProblem::new(&pde, profile), grid, t, options)
        }
        HamiltonianVariant::PaperEq13 => {
            let shift = drift_shift(params, t);
            let rate = params.hbar * t / (2.0 * params.m);
            let mut values = Vec::with_capacity(grid.len());
            let mut slope = Vec::with_capacity(grid.len());
            for k in grid.points() {
                let phase = Complex64::from_polar(1.0, -rate * k * k);
                let f = profile.amplitude(k + shift);
                values.push(f * phase);
                slope.push(phase * (profile.slope(k + shift) + f * Complex64::new(0.0, -2.0 * rate * k)));
            }
            SpectralState::new(*grid, values, t)?.with_slope(slope)
        }
    }
}

/// `|F(k + (A/ħω) sin ωt)|²` on the grid.
pub fn transported_density<F>(profile: &F, grid: &MomentumGrid, params: &PhysicalParams, t: f64) -> Vec<f64>
where
    F: InitialProfile + ?Sized,
{
    let shift = drift_shift(params, t);
    grid.points().map(|k| profile.amplitude(k + shift).norm_sqr()).collect()
}

/// A pure function of time added to the Hamiltonian.
pub struct GaugeFunction {
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GaugeFunction")
    }
}

impl GaugeFunction {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: Box::new(f) }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// `∫₀ᵗ f(s) ds`.
    pub fn integral(&self, t: f64) -> Result<f64> {
        integrate(&self.f, 0.0, t, 0.5 * PI, 1e-13)
    }
}

/// Multiplies the state by `exp(-(i/ħ)∫₀ᵗ f(s) ds)`.
pub fn apply_gauge(state: &SpectralState, gauge: &GaugeFunction, hbar: f64, t: f64) -> Result<SpectralState> {
    let phase = -gauge.integral(t)? / hbar;
    Ok(state.scaled(Complex64::from_polar(1.0, phase)))
}

/// Unit complex number `u` maximising `|⟨reference, u·candidate⟩|`, i.e.
/// the phase of `⟨candidate, reference⟩`.
pub fn best_global_phase(reference: &[Complex64], candidate: &[Complex64]) -> Complex64 {
    let overlap: Complex64 = reference.iter().zip(candidate).map(|(r, c)| c.conj() * r).sum();
    if overlap.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        overlap / overlap.norm()
    }
}

/// `max_k |reference - u·candidate|` after optimal global phase alignment.
pub fn aligned_max_difference(reference: &[Complex64], candidate: &[Complex64]) -> f64 {
    let u = best_global_phase(reference, candidate);
    reference
        .iter()
        .zip(candidate)
        .map(|(r, c)| (r - u * c).norm())
        .fold(0.0, f64::max)
}

/// Comparison of the endpoint-phase closed form with the full solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseAudit {
    pub t: f64,
    /// Largest `|C_exact - C_printed|` before any alignment.
    pub max_difference: f64,
    /// Largest `|arg(C_exact / C_printed)|` where the density is significant.
    pub max_phase_difference: f64,
    /// Largest residual phase after removing the best global phase.
    pub residual_after_alignment: f64,
    /// Largest density mismatch between the two.
    pub density_mismatch: f64,
}

impl PhaseAudit {
    /// Whether the two solutions differ only by a global phase.
    pub fn is_global_phase(&self, tolerance: f64) -> bool {
        self.residual_after_alignment <= tolerance
    }
}

pub fn phase_audit<F>(
    profile: &F,
    grid: &MomentumGrid,
    params: &PhysicalParams,
    t: f64,
    options: &EngineOptions,
) -> Result<PhaseAudit>
where
    F: InitialProfile + ?Sized,
{
    let exact = evolve_hamiltonian(profile, grid, params, t, HamiltonianVariant::ExactCharacteristics, options)?;
    let printed = evolve_hamiltonian(profile, grid, params, t, HamiltonianVariant::PaperEq13, options)?;
    let peak = exact.values.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let significant: Vec<usize> = (0..grid.len()).filter(|&i| exact.values[i].norm() > 1e-3 * peak).collect();
    let u = best_global_phase(&exact.values, &printed.values);
    let mut audit = PhaseAudit {
        t,
        max_difference: 0.0,
        max_phase_difference: 0.0,
        residual_after_alignment: 0.0,
        density_mismatch: 0.0,
    };
    for (e, p) in exact.values.iter().zip(&printed.values) {
        audit.max_difference = audit.max_difference.max((e - p).norm());
        audit.density_mismatch = audit.density_mismatch.max((e.norm_sqr() - p.norm_sqr()).abs());
    }
    for &i in &significant {
        let (e, p) = (exact.values[i], printed.values[i]);
        audit.max_phase_difference = audit.max_phase_difference.max((e * p.conj()).arg().abs());
        audit.residual_after_alignment = audit.residual_after_alignment.max((e * (u * p).conj()).arg().abs());
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_grid, gaussian_profile, GaussianPacket};

    fn grid() -> MomentumGrid {
        build_grid(-12.0, 12.0, 1024).unwrap()
    }

    #[test]
    fn hamiltonian_limits() {
        let p = PhysicalParams::default().with_amplitude(0.0);
        assert_eq!(hamiltonian_value(&p, 2.0, 3.0, 0.7), 4.5);
        let q = PhysicalParams::default();
        assert!((hamiltonian_value(&q, 2.0, 3.0, PI / 2.0) - 4.5).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_static_limit_is_second_order() {
        let (x, p, t) = (0.7, 1.1, 2.0);
        let errs: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&w| {
                let params = PhysicalParams::default().with_omega(w);
                (hamiltonian_value(&params, x, p, t) - (p * p / 2.0 + x)).abs()
            })
            .collect();
        assert!(errs[0] / errs[1] > 9.0 && errs[1] / errs[2] > 9.0);
    }

    #[test]
    fn free_particle_both_variants() {
        let params = PhysicalParams::default().with_amplitude(0.0);
        let packet = GaussianPacket::new(0.5, 1.0, 0.3).unwrap();
        let t = 1.7;
        for variant in [HamiltonianVariant::PaperEq13, HamiltonianVariant::ExactCharacteristics] {
            let s = evolve_hamiltonian(&packet, &grid(), &params, t, variant, &EngineOptions::default()).unwrap();
            for (k, c) in grid().points().zip(&s.values) {
                let expected = packet.amplitude(k) * Complex64::from_polar(1.0, -k * k * t / 2.0);
                assert!((c - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn full_period_restores_density() {
        let params = PhysicalParams::default();
        let packet = GaussianPacket::default();
        let initial = gaussian_profile(&packet, &grid()).unwrap().density();
        for variant in [HamiltonianVariant::PaperEq13, HamiltonianVariant::ExactCharacteristics] {
            let s = evolve_hamiltonian(&packet, &grid(), &params, 2.0 * PI, variant, &EngineOptions::default()).unwrap();
            let dev = s.density().iter().zip(&initial).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(dev < 1e-10, "{variant:?}: {dev}");
        }
    }

    #[test]
    fn omega_zero_rejected() {
        let params = PhysicalParams::default().with_omega(0.0);
        let r = evolve_hamiltonian(
            &GaussianPacket::default(),
            &grid(),
            &params,
            1.0,
            HamiltonianVariant::PaperEq13,
            &EngineOptions::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn gauge_examples() {
        let state = gaussian_profile(&GaussianPacket::new(0.2, 0.9, 1.0).unwrap(), &grid()).unwrap();
        let zero = apply_gauge(&state, &GaugeFunction::new(|_| 0.0), 1.0, 2.0).unwrap();
        assert_eq!(zero.values, state.values);

        let e0 = 1.5;
        let constant = apply_gauge(&state, &GaugeFunction::new(move |_| e0), 1.0, 2.0).unwrap();
        let u = Complex64::from_polar(1.0, -e0 * 2.0);
        for (a, b) in constant.values.iter().zip(&state.values) {
            assert!((a - b * u).norm() < 1e-13);
        }

        let wavy = apply_gauge(&state, &GaugeFunction::new(|s| (3.0 * s).sin()), 1.0, 2.0).unwrap();
        assert!((wavy.norm() - state.norm()).abs() < 1e-14);
    }

    #[test]
    fn gauge_integral_matches_closed_form() {
        let g = GaugeFunction::new(|s| (3.0 * s).sin());
        let t = 5.0;
        assert!((g.integral(t).unwrap() - (1.0 - (3.0 * t).cos()) / 3.0).abs() < 1e-13);
    }

    #[test]
    fn printed_phase_is_not_a_global_phase() {
        let packet = GaussianPacket::new(0.3, 1.0, 0.0).unwrap();
        let audit = phase_audit(&packet, &grid(), &PhysicalParams::default(), PI, &EngineOptions::default()).unwrap();
        assert!(audit.density_mismatch < 1e-10);
        assert!(!audit.is_global_phase(1e-3), "{audit:?}");
    }
}
