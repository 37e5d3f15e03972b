//! Bubble physics: materials, block systems, resonances and scattering.

mod resonance;
mod scattering;
mod system;

pub use resonance::{
    characteristic_value, characteristic_value_from_scan, grid_scan, mode_charges, normal_modes_two_bubbles, objective, resonance_formula_2d,
    resonance_formula_3d, Formula2d, Method, NormalModes, ResonanceResult, SearchOptions,
};
pub use scattering::{
    extract_monopole, extract_monopole_with, far_field_pattern, regime_of, scattering_coefficient_3d,
    solve_scattering, BubbleDensities, PlaneWave, Regime, ScatteringCoefficient, ScatteringOptions,
    ScatteringSolution,
};
pub use system::{assemble_a, assemble_a2, assemble_system, BlockSystem};

use serde::{Deserialize, Serialize};

use crate::geometry::{make_circle, DiscreteBoundary};
use crate::{Error, Point, Result, C64};

/// Background (ρ, κ) and bubble (ρ_b, κ_b) densities and bulk moduli.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialParams {
    pub rho: f64,
    pub kappa: f64,
    pub rho_b: f64,
    pub kappa_b: f64,
}

impl MaterialParams {
    pub fn new(rho: f64, kappa: f64, rho_b: f64, kappa_b: f64) -> Result<Self> {
        let m = MaterialParams { rho, kappa, rho_b, kappa_b };
        m.validate()?;
        Ok(m)
    }

    /// Background ρ = κ = `background`, bubble ρ_b = κ_b = δ·`background`,
    /// so both wave speeds are 1 and the contrast is δ.
    pub fn matched(background: f64, delta: f64) -> Result<Self> {
        Self::new(background, background, delta * background, delta * background)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("rho", self.rho), ("kappa", self.kappa), ("rho_b", self.rho_b), ("kappa_b", self.kappa_b)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::argument(name, format!("must be positive, got {value}")));
            }
        }
        Ok(())
    }

    pub fn v(&self) -> f64 {
        (self.rho / self.kappa).sqrt()
    }

    pub fn v_b(&self) -> f64 {
        (self.rho_b / self.kappa_b).sqrt()
    }

    pub fn delta(&self) -> f64 {
        self.rho_b / self.rho
    }

    pub fn tau(&self) -> f64 {
        self.v_b() / self.v()
    }

    pub fn k(&self, omega: C64) -> C64 {
        omega * self.v()
    }

    pub fn k_b(&self, omega: C64) -> C64 {
        omega * self.v_b()
    }

    /// Same parameters with all four values multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.rho * factor, self.kappa * factor, self.rho_b * factor, self.kappa_b * factor)
    }
}

/// How the separation `d` between two bubbles is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistanceConvention {
    /// Shortest distance between the two boundaries.
    #[default]
    Gap,
    /// Distance between the two centers.
    Center,
}

/// One or two disjoint bubbles in a common background.
#[derive(Debug, Clone)]
pub struct BubbleConfiguration {
    pub boundaries: Vec<DiscreteBoundary>,
    pub materials: MaterialParams,
    pub centers: Vec<Point>,
}

impl BubbleConfiguration {
    pub fn single(boundary: DiscreteBoundary, materials: MaterialParams) -> Result<Self> {
        materials.validate()?;
        let centers = vec![boundary.center()];
        Ok(BubbleConfiguration { boundaries: vec![boundary], materials, centers })
    }

    pub fn pair(first: DiscreteBoundary, second: DiscreteBoundary, materials: MaterialParams) -> Result<Self> {
        materials.validate()?;
        let min_distance = first
            .nodes
            .iter()
            .map(|x| second.node_distance(*x))
            .fold(f64::INFINITY, f64::min);
        let inside = |a: &DiscreteBoundary, b: &DiscreteBoundary| winding(&b.nodes, a.nodes[0]) != 0;
        if !(min_distance > 0.0) || inside(&first, &second) || inside(&second, &first) {
            return Err(Error::Overlap { min_distance });
        }
        let centers = vec![first.center(), second.center()];
        Ok(BubbleConfiguration { boundaries: vec![first, second], materials, centers })
    }

    /// Unit-radius circle at the origin.
    pub fn unit_circle(n: usize, materials: MaterialParams) -> Result<Self> {
        Self::single(make_circle([0.0, 0.0], 1.0, n)?, materials)
    }

    /// Two circles of equal radius on the x-axis, symmetric about the origin.
    pub fn two_circles(
        radius: f64,
        distance: f64,
        convention: DistanceConvention,
        n: usize,
        materials: MaterialParams,
    ) -> Result<Self> {
        let separation = match convention {
            DistanceConvention::Gap => distance + 2.0 * radius,
            DistanceConvention::Center => distance,
        };
        if !(distance.is_finite() && distance > 0.0) || separation <= 2.0 * radius {
            return Err(Error::argument(
                "distance",
                format!("circles of radius {radius} at {convention:?} distance {distance} overlap"),
            ));
        }
        let half = separation / 2.0;
        Self::pair(make_circle([-half, 0.0], radius, n)?, make_circle([half, 0.0], radius, n)?, materials)
    }

    pub fn bubble_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Same geometry with other materials.
    pub fn with_materials(&self, materials: MaterialParams) -> Result<Self> {
        materials.validate()?;
        Ok(BubbleConfiguration { materials, ..self.clone() })
    }
}

fn winding(polygon: &[Point], p: Point) -> i32 {
    let mut w = 0;
    for (i, a) in polygon.iter().enumerate() {
        let b = polygon[(i + 1) % polygon.len()];
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= p[1] {
            if b[1] > p[1] && cross > 0.0 {
                w += 1;
            }
        } else if b[1] <= p[1] && cross < 0.0 {
            w -= 1;
        }
    }
    w
}
