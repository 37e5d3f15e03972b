//! Smooth closed planar curves and their trapezoidal discretization.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::layerpot::{assemble_static_adjoint, assemble_static_single_layer};
use crate::spectral::min_singular_pairs;
use crate::{Error, Point, Result, C64};

/// Shape descriptor, as it appears in experiment configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveDescriptor {
    Circle {
        center: Point,
        radius: f64,
    },
    Ellipse {
        center: Point,
        semi_axes: [f64; 2],
    },
    /// Star-shaped curve with polar radius
    /// `r(t) = cos[0] + Σ_{m≥1} (cos[m]·cos(mt) + sin[m-1]·sin(mt))`.
    Trigonometric {
        center: Point,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

/// A validated, counterclockwise, 2π-periodic parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    descriptor: CurveDescriptor,
}

impl ParametricCurve {
    pub fn new(descriptor: CurveDescriptor) -> Result<Self> {
        match &descriptor {
            CurveDescriptor::Circle { center, radius } => {
                check_point("center", center)?;
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::argument("radius", format!("must be positive, got {radius}")));
                }
            }
            CurveDescriptor::Ellipse { center, semi_axes } => {
                check_point("center", center)?;
                if !semi_axes.iter().all(|a| a.is_finite() && *a > 0.0) {
                    return Err(Error::argument(
                        "semi_axes",
                        format!("must be positive, got {semi_axes:?}"),
                    ));
                }
            }
            CurveDescriptor::Trigonometric { center, cos, sin } => {
                check_point("center", center)?;
                if cos.is_empty() {
                    return Err(Error::argument("cos", "needs at least the mean radius"));
                }
                if !cos.iter().chain(sin).all(|x| x.is_finite()) {
                    return Err(Error::argument("cos", "coefficients must be finite"));
                }
                let curve = ParametricCurve { descriptor: descriptor.clone() };
                let min_radius = (0..1024)
                    .map(|i| curve.polar_radius(2.0 * PI * i as f64 / 1024.0).0)
                    .fold(f64::INFINITY, f64::min);
                if min_radius <= 0.0 {
                    return Err(Error::argument("cos", "polar radius must stay positive"));
                }
            }
        }
        Ok(ParametricCurve { descriptor })
    }

    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        Self::new(CurveDescriptor::Circle { center, radius })
    }

    pub fn ellipse(center: Point, semi_axes: [f64; 2]) -> Result<Self> {
        Self::new(CurveDescriptor::Ellipse { center, semi_axes })
    }

    pub fn descriptor(&self) -> &CurveDescriptor {
        &self.descriptor
    }

    pub fn center(&self) -> Point {
        match &self.descriptor {
            CurveDescriptor::Circle { center, .. }
            | CurveDescriptor::Ellipse { center, .. }
            | CurveDescriptor::Trigonometric { center, .. } => *center,
        }
    }

    // r, r', r''
    fn polar_radius(&self, t: f64) -> (f64, f64, f64) {
        let CurveDescriptor::Trigonometric { cos, sin, .. } = &self.descriptor else {
            unreachable!("polar radius only defined for trigonometric curves")
        };
        let mut r = cos[0];
        let mut dr = 0.0;
        let mut ddr = 0.0;
        for m in 1..cos.len().max(sin.len() + 1) {
            let mf = m as f64;
            let a = cos.get(m).copied().unwrap_or(0.0);
            let b = sin.get(m - 1).copied().unwrap_or(0.0);
            let (s, c) = (mf * t).sin_cos();
            r += a * c + b * s;
            dr += mf * (-a * s + b * c);
            ddr -= mf * mf * (a * c + b * s);
        }
        (r, dr, ddr)
    }

    /// Position, first and second derivative at parameter `t`.
    pub fn evaluate(&self, t: f64) -> (Point, Point, Point) {
        let (s, c) = t.sin_cos();
        match &self.descriptor {
            CurveDescriptor::Circle { center, radius } => (
                [center[0] + radius * c, center[1] + radius * s],
                [-radius * s, radius * c],
                [-radius * c, -radius * s],
            ),
            CurveDescriptor::Ellipse { center, semi_axes: [a, b] } => (
                [center[0] + a * c, center[1] + b * s],
                [-a * s, b * c],
                [-a * c, -b * s],
            ),
            CurveDescriptor::Trigonometric { center, .. } => {
                let (r, dr, ddr) = self.polar_radius(t);
                (
                    [center[0] + r * c, center[1] + r * s],
                    [dr * c - r * s, dr * s + r * c],
                    [ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s],
                )
            }
        }
    }

    pub fn position(&self, t: f64) -> Point {
        self.evaluate(t).0
    }

    pub fn derivative(&self, t: f64) -> Point {
        self.evaluate(t).1
    }

    /// Closed-form area where one exists.
    pub fn exact_area(&self) -> Option<f64> {
        match &self.descriptor {
            CurveDescriptor::Circle { radius, .. } => Some(PI * radius * radius),
            CurveDescriptor::Ellipse { semi_axes: [a, b], .. } => Some(PI * a * b),
            CurveDescriptor::Trigonometric { .. } => None,
        }
    }
}

fn check_point(name: &'static str, p: &Point) -> Result<()> {
    if p.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::argument(name, format!("non-finite coordinates {p:?}")))
    }
}

/// Nyström nodes on a closed curve: equispaced parameters `t_j = 2πj/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBoundary {
    pub curve: ParametricCurve,
    pub params: Vec<f64>,
    pub nodes: Vec<Point>,
    pub normals: Vec<Point>,
    pub jacobians: Vec<f64>,
    pub curvatures: Vec<f64>,
    /// Trapezoidal weight 2π/N per node (in parameter space).
    pub weights: Vec<f64>,
    /// Kress weights for ∫ ln(4 sin²((t_i−s)/2)) f(s) ds, indexed by (i − j) mod N.
    pub(crate) log_weights: Vec<f64>,
    /// ln(4 sin²(π d/N)) for d = (i − j) mod N, entry 0 unused.
    pub(crate) log_sin: Vec<f64>,
}

pub const MIN_NODES: usize = 16;

impl DiscreteBoundary {
    pub fn new(curve: ParametricCurve, n: usize) -> Result<Self> {
        if n < MIN_NODES || n % 2 != 0 {
            return Err(Error::argument("n", format!("need an even node count ≥ {MIN_NODES}, got {n}")));
        }
        let h = 2.0 * PI / n as f64;
        let mut params = Vec::with_capacity(n);
        let mut nodes = Vec::with_capacity(n);
        let mut normals = Vec::with_capacity(n);
        let mut jacobians = Vec::with_capacity(n);
        let mut curvatures = Vec::with_capacity(n);
        for j in 0..n {
            let t = h * j as f64;
            let (x, dx, ddx) = curve.evaluate(t);
            let speed = dx[0].hypot(dx[1]);
            if !(speed > 0.0) {
                return Err(Error::argument("curve", format!("degenerate tangent at t = {t}")));
            }
            params.push(t);
            nodes.push(x);
            normals.push([dx[1] / speed, -dx[0] / speed]);
            jacobians.push(speed);
            curvatures.push((dx[0] * ddx[1] - dx[1] * ddx[0]) / speed.powi(3));
        }
        let (log_weights, log_sin) = kress_tables(n);
        Ok(DiscreteBoundary {
            curve,
            params,
            nodes,
            normals,
            jacobians,
            curvatures,
            weights: vec![h; n],
            log_weights,
            log_sin,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn center(&self) -> Point {
        self.curve.center()
    }

    /// Arc-length quadrature weight of node `j`.
    pub fn measure(&self, j: usize) -> f64 {
        self.weights[j] * self.jacobians[j]
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|j| self.measure(j)).sum()
    }

    /// Largest arc length between neighbouring nodes.
    pub fn spacing(&self) -> f64 {
        (0..self.len()).map(|j| self.measure(j)).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for a in &self.nodes {
            for b in &self.nodes {
                d = d.max(distance(*a, *b));
            }
        }
        d
    }

    /// Weighted discrete inner product (f, g) = Σ f_j·conj(g_j)·w_j·|x'(t_j)|.
    pub fn inner(&self, f: &[C64], g: &[C64]) -> C64 {
        f.iter().zip(g).enumerate().map(|(j, (a, b))| a * b.conj() * self.measure(j)).sum()
    }

    /// ∫ f dσ.
    pub fn integrate(&self, f: &[C64]) -> C64 {
        f.iter().enumerate().map(|(j, v)| v * self.measure(j)).sum()
    }

    /// Distance from `p` to the nearest node.
    pub fn node_distance(&self, p: Point) -> f64 {
        self.nodes.iter().map(|x| distance(*x, p)).fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn distance(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn kress_tables(n: usize) -> (Vec<f64>, Vec<f64>) {
    let half = n / 2;
    let hf = half as f64;
    let mut weights = vec![0.0; n];
    let mut log_sin = vec![0.0; n];
    for (d, w) in weights.iter_mut().enumerate() {
        let tau = 2.0 * PI * d as f64 / n as f64;
        let mut s = 0.0;
        for m in 1..half {
            s += (m as f64 * tau).cos() / m as f64;
        }
        *w = -2.0 * PI / hf * s - PI / (hf * hf) * (hf * tau).cos();
        if d > 0 {
            let sin = (tau / 2.0).sin();
            log_sin[d] = (4.0 * sin * sin).ln();
        }
    }
    (weights, log_sin)
}

/// Circle discretized with `n` equispaced nodes.
pub fn make_circle(center: Point, radius: f64, n: usize) -> Result<DiscreteBoundary> {
    DiscreteBoundary::new(ParametricCurve::circle(center, radius)?, n)
}

pub fn make_ellipse(center: Point, semi_axes: [f64; 2], n: usize) -> Result<DiscreteBoundary> {
    DiscreteBoundary::new(ParametricCurve::ellipse(center, semi_axes)?, n)
}

/// Enclosed area by Green's theorem, ½∮ x·ν dσ.
pub fn area(boundary: &DiscreteBoundary) -> f64 {
    0.5 * (0..boundary.len())
        .map(|j| {
            let x = boundary.nodes[j];
            let nu = boundary.normals[j];
            (x[0] * nu[0] + x[1] * nu[1]) * boundary.measure(j)
        })
        .sum::<f64>()
}

/// Whether S_D is singular (γ₀ = 0) or invertible (γ₀ ≠ 0) in 2D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityCase {
    I,
    II,
}

/// Normalized null function ψ₀ of (−½I + K*₀) with S_D[ψ₀] = γ₀ on ∂D.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumDensity {
    pub values: Vec<f64>,
    pub gamma0: f64,
    /// (ψ₀, χ_∂D)
    pub pairing: f64,
    /// max |S_D[ψ₀] − γ₀|
    pub constancy_defect: f64,
    /// max |(−½I + K*₀)[ψ₀]|
    pub residual: f64,
    pub case: DensityCase,
}

const KERNEL_TOL: f64 = 1e-8;

pub fn equilibrium_density(boundary: &DiscreteBoundary) -> Result<EquilibriumDensity> {
    let n = boundary.len();
    let mut op = assemble_static_adjoint(boundary, boundary)?.entries;
    for i in 0..n {
        op[(i, i)] -= 0.5;
    }
    let (sigma, vectors) = min_singular_pairs(&op, 2)?;
    if !(sigma[0] <= KERNEL_TOL && sigma[1] > KERNEL_TOL) {
        return Err(Error::NumericalRank { smallest: sigma[0], second: sigma[1] });
    }
    let v = &vectors[0];
    // the kernel is real; strip the arbitrary phase from the SVD
    let pivot = v.iter().copied().fold(C64::new(0.0, 0.0), |m, x| if x.norm() > m.norm() { x } else { m });
    let phase = pivot.conj() / pivot.norm();
    let mut values: Vec<f64> = v.iter().map(|x| (x * phase).re).collect();
    let norm = values
        .iter()
        .enumerate()
        .map(|(j, x)| x * x * boundary.measure(j))
        .sum::<f64>()
        .sqrt();
    let mut pairing: f64 = values.iter().enumerate().map(|(j, x)| x * boundary.measure(j)).sum();
    let sign = if pairing < 0.0 { -1.0 } else { 1.0 };
    for x in values.iter_mut() {
        *x *= sign / norm;
    }
    pairing *= sign / norm;

    let psi: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
    let residual = apply(&op, &psi).iter().map(|x| x.norm()).fold(0.0, f64::max);
    let single = apply(&assemble_static_single_layer(boundary, boundary)?.entries, &psi);
    let gamma0 = single.iter().map(|x| x.re).sum::<f64>() / n as f64;
    let constancy_defect = single.iter().map(|x| (x - gamma0).norm()).fold(0.0, f64::max);
    let case = if gamma0.abs() < 1e-8 * boundary.perimeter() { DensityCase::I } else { DensityCase::II };
    Ok(EquilibriumDensity { values, gamma0, pairing, constancy_defect, residual, case })
}

pub(crate) fn apply(m: &crate::CMat, x: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum())
        .collect()
}
