//! Physical parameters, momentum grids, initial wave packets and norms.
//!
//! Coefficient functions `C(k, t)` live on a uniform, endpoint-inclusive
//! wavenumber grid. Integrals over `k` use the trapezoidal rule.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::trapezoid;

/// Mass, drive amplitude, drive frequency and reduced Planck constant of the
/// driven particle `m ẍ = -A cos(ωt)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicalParams {
    pub m: f64,
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            m: 1.0,
            amplitude: 1.0,
            omega: 1.0,
            hbar: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(m: f64, amplitude: f64, omega: f64, hbar: f64) -> Result<Self> {
        let params = Self {
            m,
            amplitude,
            omega,
            hbar,
        };
        params.validate()?;
        Ok(params)
    }

    /// Checks `m > 0`, `ħ > 0` and finiteness. `ω = 0` passes here; closed forms
    /// that divide by `ω` call [`PhysicalParams::require_drive`].
    pub fn validate(&self) -> Result<()> {
        let finite = [self.m, self.amplitude, self.omega, self.hbar]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter {
                name: "params",
                reason: "all parameters must be finite".into(),
            });
        }
        if self.m <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: format!("mass must be positive, got {}", self.m),
            });
        }
        if self.hbar <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "hbar",
                reason: format!("hbar must be positive, got {}", self.hbar),
            });
        }
        Ok(())
    }

    pub fn require_drive(&self) -> Result<()> {
        if self.omega == 0.0 {
            Err(Error::ZeroFrequency)
        } else {
            Ok(())
        }
    }

    pub fn with_amplitude(self, amplitude: f64) -> Self {
        Self { amplitude, ..self }
    }

    pub fn with_omega(self, omega: f64) -> Self {
        Self { omega, ..self }
    }

    /// Drive period `2π/ω`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }
}

/// Uniform wavenumber grid with both endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumGrid {
    k_min: f64,
    k_max: f64,
    n: usize,
    spacing: f64,
}

impl MomentumGrid {
    pub fn new(k_min: f64, k_max: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        if !(k_min.is_finite() && k_max.is_finite()) {
            return Err(Error::InvalidGrid("grid bounds must be finite".into()));
        }
        if k_min >= k_max {
            return Err(Error::InvalidGrid(format!(
                "k_min ({k_min}) must be below k_max ({k_max})"
            )));
        }
        Ok(Self {
            k_min,
            k_max,
            n,
            spacing: (k_max - k_min) / (n - 1) as f64,
        })
    }

    pub fn k_min(&self) -> f64 {
        self.k_min
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.k_min + i as f64 * self.spacing
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }
}

/// Shorthand for [`MomentumGrid::new`].
pub fn build_grid(k_min: f64, k_max: f64, n: usize) -> Result<MomentumGrid> {
    MomentumGrid::new(k_min, k_max, n)
}

/// An initial coefficient profile `F(k)` that can be evaluated anywhere, not
/// just on grid points. Characteristic feet land between grid points.
pub trait InitialProfile: Sync {
    fn amplitude(&self, k: f64) -> Complex64;

    /// `dF/dk`.
    fn slope(&self, k: f64) -> Complex64;
}

/// Minimum-uncertainty Gaussian packet centred at wavenumber `k0` and
/// position `x0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaussianPacket {
    pub k0: f64,
    pub sigma_k: f64,
    pub x0: f64,
}

impl Default for GaussianPacket {
    fn default() -> Self {
        Self {
            k0: 0.0,
            sigma_k: 1.0,
            x0: 0.0,
        }
    }
}

impl GaussianPacket {
    pub fn new(k0: f64, sigma_k: f64, x0: f64) -> Result<Self> {
        let packet = Self { k0, sigma_k, x0 };
        packet.validate()?;
        Ok(packet)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_k > 0.0 && self.sigma_k.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "sigma_k",
                reason: format!("must be positive and finite, got {}", self.sigma_k),
            });
        }
        if !(self.k0.is_finite() && self.x0.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "packet",
                reason: "k0 and x0 must be finite".into(),
            });
        }
        Ok(())
    }

    /// Position spread of the packet at `t = 0`, `1/(2σ_k)`.
    pub fn sigma_x(&self) -> f64 {
        0.5 / self.sigma_k
    }

    /// Position-space wave function `ψ0(x) = ∫ F(k) e^{ikx} dk / √(2π)`.
    pub fn position_amplitude(&self, x: f64) -> Complex64 {
        let s2 = self.sigma_k * self.sigma_k;
        let d = x - self.x0;
        let norm = (2.0 * s2 / PI).powf(0.25);
        Complex64::from_polar(norm * (-s2 * d * d).exp(), self.k0 * d)
    }
}

impl InitialProfile for GaussianPacket {
    fn amplitude(&self, k: f64) -> Complex64 {
        let s2 = self.sigma_k * self.sigma_k;
        let d = k - self.k0;
        let modulus = (2.0 * PI * s2).powf(-0.25) * (-d * d / (4.0 * s2)).exp();
        Complex64::from_polar(modulus, -k * self.x0)
    }

    fn slope(&self, k: f64) -> Complex64 {
        let d = k - self.k0;
        let log_slope = Complex64::new(-d / (2.0 * self.sigma_k * self.sigma_k), -self.x0);
        self.amplitude(k) * log_slope
    }
}

/// Samples of `C(k, t)` on a grid at one instant.
///
/// `slope`, when present, holds `∂C/∂k` at the same points. Solvers that track
/// it exactly fill it in; otherwise observables differentiate spectrally.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralState {
    pub grid: MomentumGrid,
    pub values: Vec<Complex64>,
    pub t: f64,
    pub slope: Option<Vec<Complex64>>,
}

impl SpectralState {
    pub fn new(grid: MomentumGrid, values: Vec<Complex64>, t: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Validation("state contains non-finite values".into()));
        }
        Ok(Self {
            grid,
            values,
            t,
            slope: None,
        })
    }

    pub fn with_slope(mut self, slope: Vec<Complex64>) -> Result<Self> {
        if slope.len() != self.grid.len() {
            return Err(Error::GridMismatch("slope length differs from grid".into()));
        }
        self.slope = Some(slope);
        Ok(self)
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Trapezoidal `∫ |C(k,t)|² dk`.
    pub fn norm(&self) -> f64 {
        trapezoid(&self.density(), self.grid.spacing())
    }

    /// Multiplies values (and slope) by a constant.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|c| c * factor).collect(),
            t: self.t,
            slope: self
                .slope
                .as_ref()
                .map(|s| s.iter().map(|c| c * factor).collect()),
        }
    }
}

/// Trapezoidal norm of a state.
pub fn norm(state: &SpectralState) -> f64 {
    state.norm()
}

/// Samples `F(k) = (2πσ_k²)^{-1/4} exp(-(k-k0)²/(4σ_k²)) e^{-ikx0}` and its
/// derivative on `grid`.
pub fn gaussian_profile(packet: &GaussianPacket, grid: &MomentumGrid) -> Result<SpectralState> {
    packet.validate()?;
    sample_profile(packet, grid, 0.0)
}

pub fn sample_profile<P: InitialProfile + ?Sized>(
    profile: &P,
    grid: &MomentumGrid,
    t: f64,
) -> Result<SpectralState> {
    let values = grid.points().map(|k| profile.amplitude(k)).collect();
    let slope = grid.points().map(|k| profile.slope(k)).collect();
    SpectralState::new(*grid, values, t)?.with_slope(slope)
}
