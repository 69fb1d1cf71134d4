use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristics::{CoefficientSlice, LinearPde};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianPde;
use crate::model::{sample_profile, InitialProfile, MomentumGrid, PhysicalParams, SpectralState};
use crate::numerics::SixthOrderDerivative;
use crate::schemes::{SchemeId, SchemePde};

/// Which coefficient equation to integrate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MolEquation {
    Hamiltonian,
    Scheme(SchemeId),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MolOptions {
    /// Largest probability tolerated in the outer eight points on each side.
    pub leak_threshold: f64,
    /// RK4 stability limit on `dt · (max|α| ρ(D) + max|β|)`.
    pub stability_limit: f64,
}

impl Default for MolOptions {
    fn default() -> Self {
        Self {
            leak_threshold: 1e-12,
            stability_limit: 2.8,
        }
    }
}

/// Spectral radius of the sixth-order centred stencil times the spacing.
const STENCIL_RADIUS: f64 = 1.5862;

const EDGE_POINTS: usize = 8;

fn edge_mass(values: &[Complex64], spacing: f64) -> f64 {
    let n = values.len();
    let band = EDGE_POINTS.min(n / 2);
    values[..band]
        .iter()
        .chain(&values[n - band..])
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        * spacing
}

struct Rhs<'a, P: LinearPde + ?Sized> {
    pde: &'a P,
    ks: Vec<f64>,
    deriv: SixthOrderDerivative,
    scratch: Vec<Complex64>,
    spacing: f64,
}

impl<P: LinearPde + ?Sized> Rhs<'_, P> {
    /// Writes `-α ∂C/∂k + β C` into `out`; returns the stability number
    /// for step `dt`. Inflow boundary points are held fixed.
    fn eval(&mut self, t: f64, values: &[Complex64], out: &mut [Complex64], dt: f64) -> Result<f64> {
        let slice = self.pde.at(t);
        self.deriv.apply(values, &mut self.scratch);
        let (mut amax, mut bmax) = (0.0f64, 0.0f64);
        for i in 0..values.len() {
            let k = self.ks[i];
            let a = slice.alpha(k);
            let b = slice.beta(k);
            if !(a.is_finite() && b.re.is_finite() && b.im.is_finite()) {
                return Err(Error::NonFiniteCoefficient { k, t });
            }
            amax = amax.max(a.abs());
            bmax = bmax.max(b.norm());
            out[i] = -a * self.scratch[i] + b * values[i];
        }
        let n = values.len();
        if slice.alpha(self.ks[0]) > 0.0 {
            out[0] = Complex64::new(0.0, 0.0);
        }
        if slice.alpha(self.ks[n - 1]) < 0.0 {
            out[n - 1] = Complex64::new(0.0, 0.0);
        }
        Ok(dt * (amax * STENCIL_RADIUS / self.spacing + bmax))
    }
}

/// RK4 in time with a sixth-order finite-difference `∂/∂k` on the state's
/// grid. The step is shrunk so an integer number of steps lands on `t`.
pub fn mol_evolve_pde<P>(initial: &SpectralState, pde: &P, t: f64, dt: f64, options: &MolOptions) -> Result<SpectralState>
where
    P: LinearPde + ?Sized,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("must be positive, got {dt}"),
        });
    }
    let grid = initial.grid;
    if grid.len() < 2 * EDGE_POINTS {
        return Err(Error::GridTooCoarse(format!("need at least {} points", 2 * EDGE_POINTS)));
    }
    let steps = (t / dt).ceil() as usize;
    let mut values = initial.values.clone();
    if steps == 0 {
        return SpectralState::new(grid, values, initial.t);
    }
    let h = t / steps as f64;
    let n = grid.len();
    let mut rhs = Rhs {
        pde,
        ks: grid.to_vec(),
        deriv: SixthOrderDerivative::new(grid.spacing()),
        scratch: vec![Complex64::new(0.0, 0.0); n],
        spacing: grid.spacing(),
    };
    let zero = Complex64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4) = (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
    let mut stage = vec![zero; n];
    let t0 = initial.t;
    for step in 0..steps {
        let s = t0 + step as f64 * h;
        let number = rhs.eval(s, &values, &mut k1, h)?;
        if number > options.stability_limit {
            return Err(Error::Unstable {
                number,
                limit: options.stability_limit,
            });
        }
        for i in 0..n {
            stage[i] = values[i] + 0.5 * h * k1[i];
        }
        rhs.eval(s + 0.5 * h, &stage, &mut k2, h)?;
        for i in 0..n {
            stage[i] = values[i] + 0.5 * h * k2[i];
        }
        rhs.eval(s + 0.5 * h, &stage, &mut k3, h)?;
        for i in 0..n {
            stage[i] = values[i] + h * k3[i];
        }
        rhs.eval(s + h, &stage, &mut k4, h)?;
        for i in 0..n {
            values[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let leaked = edge_mass(&values, grid.spacing());
        if leaked > options.leak_threshold {
            return Err(Error::BoundaryLeakage {
                mass: leaked,
                threshold: options.leak_threshold,
                t: s + h,
            });
        }
    }
    SpectralState::new(grid, values, t0 + t)
}

/// Method-of-lines solution of one of the coefficient equations from the
/// sampled initial profile.
pub fn mol_evolve<F>(
    profile: &F,
    grid: &MomentumGrid,
    params: &PhysicalParams,
    equation: MolEquation,
    t: f64,
    dt: f64,
    options: &MolOptions,
) -> Result<SpectralState>
where
    F: InitialProfile + ?Sized,
{
    params.validate()?;
    params.require_drive()?;
    let initial = sample_profile(profile, grid, 0.0)?;
    match equation {
        MolEquation::Hamiltonian => mol_evolve_pde(&initial, &HamiltonianPde { params: *params }, t, dt, options),
        MolEquation::Scheme(s) => mol_evolve_pde(&initial, &SchemePde::derived(s, *params), t, dt, options),
    }
}
