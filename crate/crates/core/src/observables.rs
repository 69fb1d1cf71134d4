//! Moments and distances of momentum-space states.
//!
//! Position enters as `x → i∂/∂k`: `⟨x⟩ = Re ∫ C* i∂C/∂k dk / N` and
//! `⟨x²⟩ = ∫ |∂C/∂k|² dk / N`. The derivative comes from the state's exact
//! slope when the solver provided one, otherwise from Fourier differentiation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::exact_trajectory;
use crate::error::{Error, Result};
use crate::model::{PhysicalParams, SpectralState};
use crate::numerics::{spectral_derivative, trapezoid};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub mean_x: f64,
    pub mean_v: f64,
    pub sigma_x: f64,
    pub sigma_v: f64,
    pub norm: f64,
}

impl MomentSet {
    pub fn uncertainty_product(&self) -> f64 {
        self.sigma_x * self.sigma_v
    }
}

pub fn moments(state: &SpectralState, params: &PhysicalParams) -> Result<MomentSet> {
    let dk = state.grid.spacing();
    let density = state.density();
    let norm = trapezoid(&density, dk);
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let slope = match &state.slope {
        Some(s) => s.clone(),
        None => spectral_derivative(&state.values, dk),
    };
    let ks = state.grid.to_vec();
    let weighted = |f: &dyn Fn(usize) -> f64| -> f64 {
        let samples: Vec<f64> = (0..ks.len()).map(f).collect();
        trapezoid(&samples, dk) / norm
    };
    let mean_k = weighted(&|i| ks[i] * density[i]);
    let mean_k2 = weighted(&|i| ks[i] * ks[i] * density[i]);
    let i = Complex64::new(0.0, 1.0);
    let mean_x = weighted(&|j| (state.values[j].conj() * i * slope[j]).re);
    let mean_x2 = weighted(&|j| slope[j].norm_sqr());
    let vel = params.hbar / params.m;
    Ok(MomentSet {
        mean_x,
        mean_v: vel * mean_k,
        sigma_x: (mean_x2 - mean_x * mean_x).max(0.0).sqrt(),
        sigma_v: vel * (mean_k2 - mean_k * mean_k).max(0.0).sqrt(),
        norm,
    })
}

/// L¹ distance between the normalized densities of two states on the same
/// grid, in `[0, 2]`.
pub fn density_distance(a: &SpectralState, b: &SpectralState) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch("density_distance needs states on the same grid".into()));
    }
    let (da, db) = (a.density(), b.density());
    let dk = a.grid.spacing();
    let (na, nb) = (trapezoid(&da, dk), trapezoid(&db, dk));
    if !(na > 0.0 && nb > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let diff: Vec<f64> = da.iter().zip(&db).map(|(x, y)| (x / na - y / nb).abs()).collect();
    Ok(trapezoid(&diff, dk))
}

/// `max_i |⟨v⟩(tᵢ) - v_classical(tᵢ)|` over a time series of states, with the
/// classical velocity from the closed-form trajectory through `(x0, v0)`.
pub fn ehrenfest_residual(
    states: &[SpectralState],
    times: &[f64],
    params: &PhysicalParams,
    x0: f64,
    v0: f64,
) -> Result<f64> {
    if states.len() != times.len() {
        return Err(Error::MeshMismatch(format!(
            "{} states for {} sample times",
            states.len(),
            times.len()
        )));
    }
    let mut worst = 0.0f64;
    for (state, &t) in states.iter().zip(times) {
        if (state.t - t).abs() > 1e-12 * t.abs().max(1.0) {
            return Err(Error::MeshMismatch(format!("state at t = {} sampled as t = {t}", state.t)));
        }
        let mean_v = moments(state, params)?.mean_v;
        let classical = exact_trajectory(params, x0, v0, t)?.v;
        worst = worst.max((mean_v - classical).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_grid, gaussian_profile, GaussianPacket};

    #[test]
    fn gaussian_moments() {
        let packet = GaussianPacket::new(1.5, 0.8, -0.7).unwrap();
        let grid = build_grid(-14.0, 16.0, 1024).unwrap();
        let state = gaussian_profile(&packet, &grid).unwrap();
        let params = PhysicalParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let mo = moments(&state, &params).unwrap();
        assert!((mo.mean_v - 0.75).abs() < 1e-12);
        assert!((mo.mean_x + 0.7).abs() < 1e-12);
        assert!((mo.sigma_x - 0.5 / 0.8).abs() < 1e-12);
        assert!((mo.uncertainty_product() - 0.25).abs() < 1e-8);

        // same numbers through the Fourier derivative
        let mut bare = state.clone();
        bare.slope = None;
        let mo2 = moments(&bare, &params).unwrap();
        assert!((mo2.mean_x - mo.mean_x).abs() < 1e-10 && (mo2.sigma_x - mo.sigma_x).abs() < 1e-10);
    }

    #[test]
    fn zero_state_rejected() {
        let grid = build_grid(-1.0, 1.0, 8).unwrap();
        let s = SpectralState::new(grid, vec![Complex64::new(0.0, 0.0); 8], 0.0).unwrap();
        assert!(matches!(moments(&s, &PhysicalParams::default()), Err(Error::ZeroNorm)));
    }

    #[test]
    fn distance_identity_and_disjoint() {
        let grid = build_grid(-10.0, 10.0, 401).unwrap();
        let a = gaussian_profile(&GaussianPacket::new(-5.0, 0.3, 0.0).unwrap(), &grid).unwrap();
        let b = gaussian_profile(&GaussianPacket::new(5.0, 0.3, 0.0).unwrap(), &grid).unwrap();
        assert_eq!(density_distance(&a, &a).unwrap(), 0.0);
        assert!((density_distance(&a, &b).unwrap() - 2.0).abs() < 1e-12);
        let other = gaussian_profile(&GaussianPacket::default(), &build_grid(-9.0, 9.0, 401).unwrap()).unwrap();
        assert!(density_distance(&a, &other).is_err());
    }

    #[test]
    fn ehrenfest_rejects_mismatched_mesh() {
        let grid = build_grid(-10.0, 10.0, 101).unwrap();
        let s = gaussian_profile(&GaussianPacket::default(), &grid).unwrap();
        let p = PhysicalParams::default();
        assert!(ehrenfest_residual(&[s.clone()], &[0.0, 1.0], &p, 0.0, 0.0).is_err());
        assert!(ehrenfest_residual(&[s.clone()], &[1.0], &p, 0.0, 0.0).is_err());
        assert!(ehrenfest_residual(&[s], &[0.0], &p, 0.0, 0.0).unwrap() < 1e-14);
    }
}
