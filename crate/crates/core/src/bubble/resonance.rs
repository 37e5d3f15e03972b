use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::system::assemble_system;
use super::{BubbleConfiguration, MaterialParams};
use crate::exec;
use crate::geometry::{area, equilibrium_density, DensityCase};
use crate::special::{eta, ExpansionConstants};
use crate::spectral::{eigenvalues, max_norm, min_singular_pairs, stencil, try_muller, RootResult};
use crate::{c, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    CharacteristicValue,
    Formula2d,
    Formula3d,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceResult {
    pub omega: C64,
    pub method: Method,
    pub residual: f64,
    pub iterations: usize,
    /// Set when the root lies outside quadrant IV and that was explicitly allowed.
    pub outside_quadrant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Accept guesses and roots outside quadrant IV.
    pub allow_any_quadrant: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { tol: 1e-10, max_iter: 100, allow_any_quadrant: false }
    }
}

fn in_quadrant_iv(z: C64) -> bool {
    z.re > 0.0 && z.im <= 0.0
}

fn finish(root: RootResult, method: Method, options: &SearchOptions) -> Result<ResonanceResult> {
    let outside = !in_quadrant_iv(root.root);
    if outside && !options.allow_any_quadrant {
        return Err(Error::Branch { root: root.root });
    }
    Ok(ResonanceResult {
        omega: root.root,
        method,
        residual: root.residual,
        iterations: root.iterations,
        outside_quadrant: outside,
    })
}

/// Minimum-modulus eigenvalue of A(ω) (or A₂(ω)) divided by max |a_ij|.
pub fn objective(config: &BubbleConfiguration, omega: C64) -> Result<C64> {
    let system = assemble_system(omega, config)?;
    let scale = max_norm(&system.matrix);
    Ok(eigenvalues(&system.matrix)?.min_modulus / scale)
}

/// Muller search on the normalized minimum-modulus eigenvalue.
pub fn characteristic_value(
    config: &BubbleConfiguration,
    guess: C64,
    options: &SearchOptions,
) -> Result<ResonanceResult> {
    if !in_quadrant_iv(guess) && !options.allow_any_quadrant {
        return Err(Error::GuessDomain { guess });
    }
    let root = try_muller(|w| objective(config, w), stencil(guess), options.tol, options.max_iter)?;
    finish(root, Method::CharacteristicValue, options)
}

/// |objective| on a rectangular ω grid, row-major in (Im, Re).
pub fn grid_scan(
    config: &BubbleConfiguration,
    re: (f64, f64, usize),
    im: (f64, f64, usize),
) -> Result<Vec<(C64, f64)>> {
    let axis = |(lo, hi, n): (f64, f64, usize)| -> Vec<f64> {
        if n <= 1 {
            vec![lo]
        } else {
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        }
    };
    let points: Vec<C64> = axis(im)
        .into_iter()
        .flat_map(|y| axis(re).into_iter().map(move |x| c(x, y)))
        .collect();
    exec::map(&points, |&w| objective(config, w).map(|f| (w, f.norm())))
        .into_iter()
        .collect()
}

/// Scan a rectangle, then refine from the grid point with the smallest objective.
pub fn characteristic_value_from_scan(
    config: &BubbleConfiguration,
    re: (f64, f64, usize),
    im: (f64, f64, usize),
    options: &SearchOptions,
) -> Result<ResonanceResult> {
    let scan = grid_scan(config, re, im)?;
    let best = scan
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::argument("grid", "empty scan rectangle"))?;
    characteristic_value(config, best.0, options)
}

/// ω₀,₀ and ω₀,₁ for a three-dimensional bubble with capacity `cap` and volume `vol`.
pub fn resonance_formula_3d(cap: f64, vol: f64, tau: f64, v: f64, delta: f64) -> Result<(C64, C64)> {
    for (name, value) in [("cap", cap), ("vol", vol), ("tau", tau), ("v", v)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::argument(name, format!("must be positive, got {value}")));
        }
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::argument("delta", format!("must be non-negative, got {delta}")));
    }
    let re = (cap / (tau * tau * v * v * vol)).sqrt() * delta.sqrt();
    let im = -cap * cap / (8.0 * PI * tau * tau * v * vol) * delta;
    Ok((c(re, im), c(-re, im)))
}

/// The two-dimensional transcendental resonance equation
/// ω² ln ω + B ω² − a(ω)·δ/(4·Vol·b₁) = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Formula2d {
    pub delta: f64,
    pub v: f64,
    pub v_b: f64,
    pub volume: f64,
    pub gamma0: f64,
    pub pairing: f64,
    pub case: DensityCase,
}

impl Formula2d {
    pub fn from_config(config: &BubbleConfiguration) -> Result<Self> {
        if config.bubble_count() != 1 {
            return Err(Error::argument("config", "the resonance formula needs exactly one bubble"));
        }
        let boundary = &config.boundaries[0];
        let density = equilibrium_density(boundary)?;
        Ok(Self::with_geometry(&config.materials, area(boundary), density.gamma0, density.pairing, density.case))
    }

    pub fn with_geometry(m: &MaterialParams, volume: f64, gamma0: f64, pairing: f64, case: DensityCase) -> Self {
        Formula2d { delta: m.delta(), v: m.v(), v_b: m.v_b(), volume, gamma0, pairing, case }
    }

    /// Unit disk: γ₀ = 0, (ψ₀, χ) = √(2π), Vol = π.
    pub fn unit_disk(m: &MaterialParams) -> Self {
        Self::with_geometry(m, PI, 0.0, (2.0 * PI).sqrt(), DensityCase::I)
    }

    pub fn coefficient_b(&self) -> C64 {
        c(self.v_b.ln() + 1.0 - self.gamma0 / self.pairing, 0.0) + ExpansionConstants::c1_over_b1()
    }

    pub fn a(&self, omega: C64) -> Result<C64> {
        let (ek, ekb) = (eta(omega * self.v)?, eta(omega * self.v_b)?);
        Ok(match self.case {
            DensityCase::I => ekb / ek,
            DensityCase::II => (ekb * self.pairing + self.gamma0) / (ek * self.pairing + self.gamma0),
        })
    }

    fn source(&self, omega: C64) -> Result<C64> {
        Ok(self.a(omega)? * (self.delta / (4.0 * self.volume * ExpansionConstants::b1())))
    }

    pub fn residual(&self, omega: C64) -> Result<C64> {
        Ok(omega * omega * (omega.ln() + self.coefficient_b()) - self.source(omega)?)
    }

    /// Fixed-point iterate of ω = √(a·δ/(4·Vol·b₁)/(ln ω + B)) from ω = √δ.
    pub fn initial_guess(&self) -> Result<C64> {
        let b = self.coefficient_b();
        let mut w = c(self.delta.sqrt(), 0.0);
        for _ in 0..200 {
            let mut next = (self.source(w)? / (w.ln() + b)).sqrt();
            if next.re < 0.0 {
                next = -next;
            }
            let done = (next - w).norm() <= 1e-14 * next.norm();
            w = next;
            if done {
                break;
            }
        }
        Ok(w)
    }

    pub fn solve(&self, options: &SearchOptions) -> Result<ResonanceResult> {
        let guess = self.initial_guess()?;
        let root = try_muller(|w| self.residual(w), stencil(guess), options.tol, options.max_iter)?;
        finish(root, Method::Formula2d, options)
    }
}

pub fn resonance_formula_2d(config: &BubbleConfiguration, options: &SearchOptions) -> Result<ResonanceResult> {
    Formula2d::from_config(config)?.solve(options)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub symmetric: ResonanceResult,
    pub antisymmetric: ResonanceResult,
    /// False when both singular vectors had the same sign pattern and the
    /// labels fell back to ordering by real part.
    pub classified: bool,
}

/// Monopole charges ∫ψ_b dσ of each bubble in the minimal right singular vector of A₂(ω).
pub fn mode_charges(config: &BubbleConfiguration, omega: C64) -> Result<(C64, C64)> {
    let system = assemble_system(omega, config)?;
    let (_, vectors) = min_singular_pairs(&system.matrix, 1)?;
    let v = &vectors[0];
    let charge = |bubble: usize| {
        let start = system.offsets[2 * bubble];
        config.boundaries[bubble].integrate(&v[start..start + config.boundaries[bubble].len()])
    };
    Ok((charge(0), charge(1)))
}

fn is_symmetric(config: &BubbleConfiguration, omega: C64) -> Result<bool> {
    let (m1, m2) = mode_charges(config, omega)?;
    Ok((m1 * m2.conj()).re > 0.0)
}

/// Two characteristic values of A₂ seeded from `guesses`, labelled by mode shape.
pub fn normal_modes_two_bubbles(
    config: &BubbleConfiguration,
    guesses: (C64, C64),
    options: &SearchOptions,
) -> Result<NormalModes> {
    if config.bubble_count() != 2 {
        return Err(Error::argument("config", "normal modes need exactly two bubbles"));
    }
    let first = characteristic_value(config, guesses.0, options)?;
    let second = characteristic_value(config, guesses.1, options)?;
    if (first.omega - second.omega).norm() <= 1e-6 * first.omega.norm() {
        return Err(Error::ModeCollapse { omega: first.omega });
    }
    let (s1, s2) = (is_symmetric(config, first.omega)?, is_symmetric(config, second.omega)?);
    let classified = s1 != s2;
    let first_is_symmetric = if classified { s1 } else { first.omega.re <= second.omega.re };
    let (symmetric, antisymmetric) = if first_is_symmetric { (first, second) } else { (second, first) };
    Ok(NormalModes { symmetric, antisymmetric, classified })
}
