//! Quadrature, differentiation stencils and a fixed-step RK4 kernel.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Trapezoidal rule on uniformly spaced samples.
pub fn trapezoid(samples: &[f64], spacing: f64) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = samples[1..n - 1].iter().sum();
            spacing * (interior + 0.5 * (samples[0] + samples[n - 1]))
        }
    }
}

/// One classical Runge-Kutta step for an autonomous-in-form system
/// `dy/ds = f(s, y)` with a fixed-size state.
#[inline]
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let axpy = |y: &[f64; N], k: &[f64; N], c: f64| {
        let mut out = *y;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += c * ki;
        }
        out
    };
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(s + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(s + h, &axpy(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates `f` over `[a, b]` with double-exponential quadrature, splitting
/// the interval into panels no longer than `max_panel` so oscillatory
/// integrands stay inside the rule's evaluation budget.
pub fn integrate<F>(f: F, a: f64, b: f64, max_panel: f64, tolerance: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let panels = ((b - a).abs() / max_panel).ceil().max(1.0) as usize;
    let width = (b - a) / panels as f64;
    let per_panel = tolerance / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == panels { b } else { lo + width };
        let out = quadrature::integrate(&f, lo, hi, per_panel);
        let scale = out.integral.abs().max(1.0);
        if !(out.integral.is_finite() && out.error_estimate <= 1e3 * per_panel * scale) {
            return Err(Error::Quadrature {
                a: lo,
                b: hi,
                estimate: out.error_estimate,
            });
        }
        total += out.integral;
    }
    Ok(total)
}

/// Angular wavenumbers of an `n`-point DFT on a periodic cell of length
/// `period`, in FFT output order.
pub fn fft_wavenumbers(n: usize, period: f64) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let j = if j < n.div_ceil(2) { j as f64 } else { j as f64 - n as f64 };
            2.0 * PI * j / period
        })
        .collect()
}

/// Derivative of uniformly sampled data by Fourier differentiation, treating
/// the samples as one period of length `n · spacing`. Accurate when the data
/// decays at both ends and is resolved by the sampling.
pub fn spectral_derivative(values: &[Complex64], spacing: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf = values.to_vec();
    forward.process(&mut buf);
    let waves = fft_wavenumbers(n, n as f64 * spacing);
    let scale = 1.0 / n as f64;
    for (j, (c, w)) in buf.iter_mut().zip(&waves).enumerate() {
        // Nyquist mode has no well-defined derivative for even n.
        if n % 2 == 0 && j == n / 2 {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= Complex64::new(0.0, *w * scale);
        }
    }
    inverse.process(&mut buf);
    buf
}

/// Finite-difference weights for the first derivative at `x0` from samples at
/// `nodes` (Fornberg's recursion).
pub fn fornberg_weights(x0: f64, nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let order = 1;
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Sixth-order first-derivative operator on a uniform grid: centred seven-point
/// stencil in the interior, one-sided seven-point closures at the three
/// outermost points on each side.
#[derive(Clone, Debug)]
pub struct SixthOrderDerivative {
    inv_spacing: f64,
    boundary: [[f64; 7]; 3],
}

const CENTRED6: [f64; 7] = [
    -1.0 / 60.0,
    3.0 / 20.0,
    -3.0 / 4.0,
    0.0,
    3.0 / 4.0,
    -3.0 / 20.0,
    1.0 / 60.0,
];

impl SixthOrderDerivative {
    pub fn new(spacing: f64) -> Self {
        let nodes: Vec<f64> = (0..7).map(|i| i as f64).collect();
        let mut boundary = [[0.0; 7]; 3];
        for (row, weights) in boundary.iter_mut().enumerate() {
            let w = fornberg_weights(row as f64, &nodes);
            weights.copy_from_slice(&w);
        }
        Self {
            inv_spacing: 1.0 / spacing,
            boundary,
        }
    }

    /// Smallest grid this operator applies to.
    pub const MIN_POINTS: usize = 7;

    pub fn apply(&self, values: &[Complex64], out: &mut [Complex64]) {
        let n = values.len();
        debug_assert!(n >= Self::MIN_POINTS && out.len() == n);
        let h = self.inv_spacing;
        for (row, weights) in self.boundary.iter().enumerate() {
            let mut left = Complex64::new(0.0, 0.0);
            let mut right = Complex64::new(0.0, 0.0);
            for (j, w) in weights.iter().enumerate() {
                left += values[j] * *w;
                // mirrored stencil: derivative flips sign
                right -= values[n - 1 - j] * *w;
            }
            out[row] = left * h;
            out[n - 1 - row] = right * h;
        }
        for i in 3..n - 3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, w) in CENTRED6.iter().enumerate() {
                if *w != 0.0 {
                    acc += values[i + j - 3] * *w;
                }
            }
            out[i] = acc * h;
        }
    }
}

pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n).map(|i| start + i as f64 * step).collect()
        }
    }
}

/// `1 - cos(x)` without cancellation for small `x`.
#[inline]
pub fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_exact_for_linear() {
        let xs = linspace(0.0, 2.0, 5);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((trapezoid(&ys, 0.5) - 8.0).abs() < 1e-14);
    }

    #[test]
    fn fornberg_reproduces_centred_stencil() {
        let nodes: Vec<f64> = (-3..=3).map(|i| i as f64).collect();
        let w = fornberg_weights(0.0, &nodes);
        for (a, b) in w.iter().zip(CENTRED6.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sixth_order_exact_on_polynomials() {
        let n = 20;
        let h = 0.1;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let vals: Vec<Complex64> = xs.iter().map(|x| Complex64::new(x.powi(6) - 2.0 * x.powi(3), 0.0)).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        SixthOrderDerivative::new(h).apply(&vals, &mut out);
        for (x, d) in xs.iter().zip(&out) {
            let exact = 6.0 * x.powi(5) - 6.0 * x * x;
            assert!((d.re - exact).abs() < 1e-9, "x={x}: {} vs {}", d.re, exact);
        }
    }

    #[test]
    fn spectral_derivative_of_gaussian() {
        let n = 256;
        let h = 0.1;
        let xs: Vec<f64> = (0..n).map(|i| -12.8 + i as f64 * h).collect();
        let vals: Vec<Complex64> = xs.iter().map(|x| Complex64::new((-x * x).exp(), 0.0)).collect();
        let d = spectral_derivative(&vals, h);
        for (x, di) in xs.iter().zip(&d) {
            assert!((di.re + 2.0 * x * (-x * x).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn rk4_integrates_exponential() {
        let f = |_s: f64, y: &[f64; 1]| [y[0]];
        let mut y = [1.0];
        let h = 0.01;
        for i in 0..100 {
            y = rk4_step(&f, i as f64 * h, &y, h);
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn integrate_splits_panels() {
        let v = integrate(|s| (10.0 * s).sin().powi(2), 0.0, 20.0, 0.5, 1e-12).unwrap();
        let exact = 10.0 - (400.0f64).sin() / 40.0;
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn one_minus_cos_small_argument() {
        let x = 1e-6;
        assert!((one_minus_cos(x) / (x * x / 2.0) - 1.0).abs() < 1e-10);
    }
}
