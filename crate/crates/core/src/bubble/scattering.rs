use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::resonance::objective;
use super::system::assemble_system;
use super::{BubbleConfiguration, MaterialParams};
use crate::geometry::distance;
use crate::layerpot::{evaluate_field, green};
use crate::spectral::solve_linear;
use crate::{c, Error, Point, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    I,
    II,
    III,
}

/// Regime I below 0.1·√δ, Regime III above 10·√δ.
pub fn regime_of(omega: f64, delta: f64) -> Regime {
    let s = delta.sqrt();
    if omega < 0.1 * s {
        Regime::I
    } else if omega > 10.0 * s {
        Regime::III
    } else {
        Regime::II
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringCoefficient {
    pub g: C64,
    pub regime: Regime,
    pub omega_m: f64,
    pub damping_gamma: f64,
}

/// Leading-order monopole coefficient of a three-dimensional bubble.
pub fn scattering_coefficient_3d(
    omega: f64,
    materials: &MaterialParams,
    cap: f64,
    vol: f64,
) -> Result<ScatteringCoefficient> {
    materials.validate()?;
    for (name, value) in [("omega", omega), ("cap", cap), ("vol", vol)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::argument(name, format!("must be positive, got {value}")));
        }
    }
    let (delta, tau, v) = (materials.delta(), materials.tau(), materials.v());
    let omega_m = (cap * delta / (tau * tau * v * v * vol)).sqrt();
    let damping_gamma = (tau + 1.0) * v * cap * omega / (8.0 * PI)
        - (tau - 1.0) * cap * cap * delta / (8.0 * PI * tau * tau * v * vol * omega);
    let regime = regime_of(omega, delta);
    let ratio = omega_m / omega;
    let g = match regime {
        Regime::I => c(-cap / (ratio * ratio), 0.0),
        Regime::II => c(cap, 0.0) / c(1.0 - ratio * ratio, damping_gamma),
        Regime::III => c(cap, 0.0),
    };
    Ok(ScatteringCoefficient { g, regime, omega_m, damping_gamma })
}

/// u^in(x) = amplitude·e^{ik d·x}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub direction: Point,
    pub amplitude: C64,
}

impl PlaneWave {
    pub fn new(direction: Point) -> Result<Self> {
        let norm = direction[0].hypot(direction[1]);
        if !((norm - 1.0).abs() < 1e-12) {
            return Err(Error::argument("direction", format!("must be a unit vector, |d| = {norm}")));
        }
        Ok(PlaneWave { direction, amplitude: c(1.0, 0.0) })
    }

    pub fn along_x() -> Self {
        PlaneWave { direction: [1.0, 0.0], amplitude: c(1.0, 0.0) }
    }

    pub fn value(&self, k: C64, x: Point) -> C64 {
        self.amplitude * (c(0.0, 1.0) * k * (self.direction[0] * x[0] + self.direction[1] * x[1])).exp()
    }

    pub fn normal_derivative(&self, k: C64, x: Point, nu: Point) -> C64 {
        c(0.0, 1.0) * k * (self.direction[0] * nu[0] + self.direction[1] * nu[1]) * self.value(k, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScatteringOptions {
    /// Solve even when ω is numerically a characteristic value.
    pub allow_near_resonance: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BubbleDensities {
    pub interior: Vec<C64>,
    pub exterior: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringSolution {
    pub omega: C64,
    pub k: C64,
    pub k_b: C64,
    pub densities: Vec<BubbleDensities>,
    /// Normalized minimum-modulus eigenvalue of the system at ω.
    pub resonance_distance: f64,
}

const NEAR_RESONANCE: f64 = 1e-8;

/// Densities (ψ_b, ψ) per bubble for plane-wave incidence, from the system with
/// right-hand side (u^in, δ ∂u^in/∂ν) per bubble.
pub fn solve_scattering(
    config: &BubbleConfiguration,
    omega: C64,
    wave: &PlaneWave,
    options: &ScatteringOptions,
) -> Result<ScatteringSolution> {
    let m = &config.materials;
    let (k, k_b) = (m.k(omega), m.k_b(omega));
    let resonance_distance = objective(config, omega)?.norm();
    if resonance_distance < NEAR_RESONANCE && !options.allow_near_resonance {
        return Err(Error::NearResonance { omega, distance: resonance_distance });
    }
    let system = assemble_system(omega, config)?;
    let mut rhs = vec![c(0.0, 0.0); system.dimension()];
    for (p, b) in config.boundaries.iter().enumerate() {
        let (top, bottom) = (system.offsets[2 * p], system.offsets[2 * p + 1]);
        for j in 0..b.len() {
            rhs[top + j] = wave.value(k, b.nodes[j]);
            rhs[bottom + j] = wave.normal_derivative(k, b.nodes[j], b.normals[j]) * m.delta();
        }
    }
    let x = solve_linear(&system.matrix, &rhs)?;
    let densities = config
        .boundaries
        .iter()
        .enumerate()
        .map(|(p, b)| {
            let (top, bottom) = (system.offsets[2 * p], system.offsets[2 * p + 1]);
            BubbleDensities { interior: x[top..top + b.len()].to_vec(), exterior: x[bottom..bottom + b.len()].to_vec() }
        })
        .collect();
    Ok(ScatteringSolution { omega, k, k_b, densities, resonance_distance })
}

/// Far-field pattern u_∞(x̂) with u^s(r x̂) ≈ u_∞(x̂)·e^{ikr}/√r.
pub fn far_field_pattern(config: &BubbleConfiguration, solution: &ScatteringSolution, direction: Point) -> C64 {
    let k = solution.k;
    let prefactor = c(0.0, -0.25) * (c(2.0 / PI, 0.0) / k).sqrt() * c(0.0, -PI / 4.0).exp();
    let mut sum = c(0.0, 0.0);
    for (b, d) in config.boundaries.iter().zip(&solution.densities) {
        for j in 0..b.len() {
            let y = b.nodes[j];
            let phase = (c(0.0, -1.0) * k * (direction[0] * y[0] + direction[1] * y[1])).exp();
            sum += phase * d.exterior[j] * b.measure(j);
        }
    }
    prefactor * sum
}

/// g = u^s(x)/(u^in(y₀)·G(x, y₀, k)) for incidence along +x.
pub fn extract_monopole(config: &BubbleConfiguration, omega: C64, far_point: Point) -> Result<C64> {
    extract_monopole_with(config, omega, &PlaneWave::along_x(), far_point)
}

pub fn extract_monopole_with(
    config: &BubbleConfiguration,
    omega: C64,
    wave: &PlaneWave,
    far_point: Point,
) -> Result<C64> {
    if config.bubble_count() != 1 {
        return Err(Error::argument("config", "monopole extraction needs exactly one bubble"));
    }
    let boundary = &config.boundaries[0];
    let y0 = config.centers[0];
    let required = 50.0 * boundary.diameter();
    let dist = distance(far_point, y0);
    if !(dist > required) {
        return Err(Error::Proximity { point: far_point, distance: dist, required });
    }
    let solution = solve_scattering(config, omega, wave, &ScatteringOptions::default())?;
    let us = evaluate_field(boundary, &solution.densities[0].exterior, solution.k, &[far_point])?[0];
    Ok(us / (wave.value(solution.k, y0) * green(solution.k, dist)))
}
