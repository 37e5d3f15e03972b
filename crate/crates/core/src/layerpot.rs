//! Nyström matrices for single-layer and adjoint double-layer potentials.
//!
//! Self-interaction blocks use the Kress log-split trapezoidal rule; blocks
//! between distinct boundaries use the plain trapezoidal rule, whose kernels
//! are smooth there. Entry (i, j) already contains the quadrature weight of
//! column node j, so applying an operator to a density is a matrix-vector
//! product.

use std::f64::consts::PI;

use crate::exec::fill_rows;
use crate::geometry::{distance, DiscreteBoundary};
use crate::special::{bessel_jy01, eta, ExpansionConstants, EULER_GAMMA};
use crate::{c, CMat, Error, Point, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// S^k
    SingleLayer,
    /// K^{k,*}
    AdjointDoubleLayer,
    /// S (Laplace)
    StaticSingleLayer,
    /// K* (Laplace)
    StaticAdjoint,
    /// Ŝ_k = S + η_k ∫·dσ
    SHat,
    /// S^{(1)}_{1}, kernel b₁|x−y|²
    S11,
    /// S^{(1)}_{2}, kernel |x−y|²(b₁ ln|x−y| + c₁)
    S12,
    /// K^{(1)}_{1}
    K11,
    /// K^{(1)}_{2}
    K12,
}

/// Dense operator matrix together with the boundaries it maps between.
#[derive(Debug, Clone)]
pub struct OperatorMatrix<'a> {
    pub entries: CMat,
    pub kind: OperatorKind,
    pub wavenumber: Option<C64>,
    /// Target (row) boundary.
    pub rows: &'a DiscreteBoundary,
    /// Source (column) boundary.
    pub cols: &'a DiscreteBoundary,
}

impl OperatorMatrix<'_> {
    pub fn apply(&self, density: &[C64]) -> Vec<C64> {
        crate::geometry::apply(&self.entries, density)
    }

    /// Discrete adjoint with respect to the weighted inner product,
    /// W_rows⁻¹ Mᴴ W_cols.
    pub fn weighted_adjoint(&self) -> CMat {
        CMat::from_fn(self.cols.len(), self.rows.len(), |i, j| {
            self.entries[(j, i)].conj() * self.rows.measure(j) / self.cols.measure(i)
        })
    }
}

fn is_self(rows: &DiscreteBoundary, cols: &DiscreteBoundary) -> bool {
    std::ptr::eq(rows, cols)
}

fn check_disjoint(rows: &DiscreteBoundary, cols: &DiscreteBoundary) -> Result<()> {
    let mut min_distance = f64::INFINITY;
    for x in &rows.nodes {
        min_distance = min_distance.min(cols.node_distance(*x));
    }
    if min_distance < 1e-12 * (1.0 + rows.diameter().max(cols.diameter())) {
        return Err(Error::Overlap { min_distance });
    }
    Ok(())
}

fn check_wavenumber(k: C64) -> Result<()> {
    if !(k.re.is_finite() && k.im.is_finite()) || k == c(0.0, 0.0) {
        return Err(Error::argument("k", format!("wavenumber must be finite and non-zero, got {k}")));
    }
    Ok(())
}

fn build(rows: &DiscreteBoundary, cols: &DiscreteBoundary, entry: impl Fn(usize, usize) -> C64 + Sync + Send) -> CMat {
    let (m, n) = (rows.len(), cols.len());
    let mut buffer = vec![c(0.0, 0.0); m * n];
    fill_rows(&mut buffer, n, |i, row| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = entry(i, j);
        }
    });
    CMat::from_fn(m, n, |i, j| buffer[i * n + j])
}

// Geometry shared by the kernels: difference vector, distance, and the
// projection of x − y on the target normal.
#[inline]
fn pair(rows: &DiscreteBoundary, cols: &DiscreteBoundary, i: usize, j: usize) -> (f64, f64) {
    let x = rows.nodes[i];
    let y = cols.nodes[j];
    let d = [x[0] - y[0], x[1] - y[1]];
    let nu = rows.normals[i];
    (d[0].hypot(d[1]), d[0] * nu[0] + d[1] * nu[1])
}

/// Kress combination R_{ij}·K₁ + (2π/N)·K₂ for a self block.
#[inline]
fn kress(b: &DiscreteBoundary, i: usize, j: usize, k1: C64, k2: C64) -> C64 {
    let n = b.len();
    b.log_weights[(i + n - j) % n] * k1 + b.weights[j] * k2
}

#[inline]
fn log_sin(b: &DiscreteBoundary, i: usize, j: usize) -> f64 {
    let n = b.len();
    b.log_sin[(i + n - j) % n]
}

/// S^k with kernel −(i/4)H₀⁽¹⁾(k|x−y|).
pub fn assemble_single_layer<'a>(
    rows: &'a DiscreteBoundary,
    cols: &'a DiscreteBoundary,
    k: C64,
) -> Result<OperatorMatrix<'a>> {
    check_wavenumber(k)?;
    let entries = if is_self(rows, cols) {
        let b = rows;
        let ln_k = k.ln();
        probe_bessel(k, b.diameter())?;
        build(rows, cols, |i, j| {
            let jac = b.jacobians[j];
            if i == j {
                let m1 = c(jac / (4.0 * PI), 0.0);
                let m2 = (c(0.0, -0.25) + (EULER_GAMMA + ln_k + (jac / 2.0).ln()) / (2.0 * PI)) * jac;
                kress(b, i, j, m1, m2)
            } else {
                let (r, _) = pair(b, b, i, j);
                let f = bessel_jy01(k * r).expect("argument range checked");
                let m = c(0.0, -0.25) * f.h0() * jac;
                let m1 = f.j0 * jac / (4.0 * PI);
                kress(b, i, j, m1, m - m1 * log_sin(b, i, j))
            }
        })
    } else {
        check_disjoint(rows, cols)?;
        probe_bessel(k, span(rows, cols))?;
        build(rows, cols, |i, j| {
            let (r, _) = pair(rows, cols, i, j);
            green(k, r) * cols.measure(j)
        })
    };
    Ok(OperatorMatrix { entries, kind: OperatorKind::SingleLayer, wavenumber: Some(k), rows, cols })
}

/// K^{k,*} with kernel ∂G/∂ν(x) = (ik/4)H₁⁽¹⁾(k|x−y|)(x−y)·ν(x)/|x−y|.
pub fn assemble_adjoint_double_layer<'a>(
    rows: &'a DiscreteBoundary,
    cols: &'a DiscreteBoundary,
    k: C64,
) -> Result<OperatorMatrix<'a>> {
    check_wavenumber(k)?;
    let entries = if is_self(rows, cols) {
        let b = rows;
        probe_bessel(k, b.diameter())?;
        build(rows, cols, |i, j| {
            let jac = b.jacobians[j];
            if i == j {
                kress(b, i, j, c(0.0, 0.0), c(b.curvatures[i] * jac / (4.0 * PI), 0.0))
            } else {
                let (r, proj) = pair(b, b, i, j);
                let f = bessel_jy01(k * r).expect("argument range checked");
                let l = c(0.0, 0.25) * k * f.h1() * (proj / r * jac);
                let l1 = -k * f.j1 * (proj / r * jac / (4.0 * PI));
                kress(b, i, j, l1, l - l1 * log_sin(b, i, j))
            }
        })
    } else {
        check_disjoint(rows, cols)?;
        probe_bessel(k, span(rows, cols))?;
        build(rows, cols, |i, j| {
            let (r, proj) = pair(rows, cols, i, j);
            let f = bessel_jy01(k * r).expect("argument range checked");
            c(0.0, 0.25) * k * f.h1() * (proj / r * cols.measure(j))
        })
    };
    Ok(OperatorMatrix { entries, kind: OperatorKind::AdjointDoubleLayer, wavenumber: Some(k), rows, cols })
}

/// Laplace single layer with kernel (1/2π)ln|x−y|.
pub fn assemble_static_single_layer<'a>(
    rows: &'a DiscreteBoundary,
    cols: &'a DiscreteBoundary,
) -> Result<OperatorMatrix<'a>> {
    let entries = if is_self(rows, cols) {
        let b = rows;
        build(rows, cols, |i, j| {
            let jac = b.jacobians[j];
            let m1 = jac / (4.0 * PI);
            let m2 = if i == j {
                m1 * (jac * jac).ln()
            } else {
                let (r, _) = pair(b, b, i, j);
                m1 * ((r * r).ln() - log_sin(b, i, j))
            };
            kress(b, i, j, c(m1, 0.0), c(m2, 0.0))
        })
    } else {
        check_disjoint(rows, cols)?;
        build(rows, cols, |i, j| {
            let (r, _) = pair(rows, cols, i, j);
            c(r.ln() / (2.0 * PI) * cols.measure(j), 0.0)
        })
    };
    Ok(OperatorMatrix { entries, kind: OperatorKind::StaticSingleLayer, wavenumber: None, rows, cols })
}

/// Laplace K* with kernel (1/2π)(x−y)·ν(x)/|x−y|².
pub fn assemble_static_adjoint<'a>(
    rows: &'a DiscreteBoundary,
    cols: &'a DiscreteBoundary,
) -> Result<OperatorMatrix<'a>> {
    let self_block = is_self(rows, cols);
    if !self_block {
        check_disjoint(rows, cols)?;
    }
    let entries = build(rows, cols, |i, j| {
        let value = if self_block && i == j {
            rows.curvatures[i] / (4.0 * PI)
        } else {
            let (r, proj) = pair(rows, cols, i, j);
            proj / (2.0 * PI * r * r)
        };
        c(value * cols.measure(j), 0.0)
    });
    Ok(OperatorMatrix { entries, kind: OperatorKind::StaticAdjoint, wavenumber: None, rows, cols })
}

/// Ŝ_k = S + η_k ∫_∂D ·dσ on a single boundary.
pub fn assemble_s_hat(boundary: &DiscreteBoundary, k: C64) -> Result<OperatorMatrix<'_>> {
    let eta_k = eta(k)?;
    let mut op = assemble_static_single_layer(boundary, boundary)?;
    for j in 0..boundary.len() {
        let w = eta_k * boundary.measure(j);
        for i in 0..boundary.len() {
            op.entries[(i, j)] += w;
        }
    }
    op.kind = OperatorKind::SHat;
    op.wavenumber = Some(k);
    Ok(op)
}

/// First-order correction operators in the small-k expansions
/// S^k = Ŝ_k + k²ln k·S₁⁽¹⁾ + k²S₂⁽¹⁾ + O(k⁴ln k) and
/// K^{k,*} = K* + k²ln k·K₁⁽¹⁾ + k²K₂⁽¹⁾ + O(k⁴ln k).
#[derive(Debug, Clone)]
pub struct ExpansionOperators<'a> {
    pub s11: OperatorMatrix<'a>,
    pub s12: OperatorMatrix<'a>,
    pub k11: OperatorMatrix<'a>,
    pub k12: OperatorMatrix<'a>,
}

pub fn assemble_expansion_ops(boundary: &DiscreteBoundary) -> Result<ExpansionOperators<'_>> {
    let b = boundary;
    let b1 = ExpansionConstants::b1();
    let c1 = ExpansionConstants::c1();
    let op = |entries, kind| OperatorMatrix { entries, kind, wavenumber: None, rows: b, cols: b };
    let s11 = build(b, b, |i, j| {
        let (r, _) = pair(b, b, i, j);
        c(b1 * r * r * b.measure(j), 0.0)
    });
    let s12 = build(b, b, |i, j| {
        if i == j {
            return c(0.0, 0.0);
        }
        let (r, _) = pair(b, b, i, j);
        let jac = b.jacobians[j];
        let r2 = r * r;
        let m1 = c(0.5 * b1 * r2 * jac, 0.0);
        let m2 = (c1 * r2 + 0.5 * b1 * r2 * (r2.ln() - log_sin(b, i, j))) * jac;
        kress(b, i, j, m1, m2)
    });
    let k11 = build(b, b, |i, j| {
        let (_, proj) = pair(b, b, i, j);
        c(2.0 * b1 * proj * b.measure(j), 0.0)
    });
    let k12 = build(b, b, |i, j| {
        if i == j {
            return c(0.0, 0.0);
        }
        let (r, proj) = pair(b, b, i, j);
        let jac = b.jacobians[j];
        let l1 = c(b1 * proj * jac, 0.0);
        let l2 = (c1 * 2.0 + b1) * proj * jac + b1 * proj * ((r * r).ln() - log_sin(b, i, j)) * jac;
        kress(b, i, j, l1, l2)
    });
    Ok(ExpansionOperators {
        s11: op(s11, OperatorKind::S11),
        s12: op(s12, OperatorKind::S12),
        k11: op(k11, OperatorKind::K11),
        k12: op(k12, OperatorKind::K12),
    })
}

/// Largest entry of S^k − Ŝ_k − k²ln k·S₁⁽¹⁾ − k²S₂⁽¹⁾ and of the matching
/// K^{k,*} remainder, for real k > 0.
pub fn expansion_remainders(boundary: &DiscreteBoundary, k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::argument("k", format!("must be positive, got {k}")));
    }
    let kc = c(k, 0.0);
    let ops = assemble_expansion_ops(boundary)?;
    let s = assemble_single_layer(boundary, boundary, kc)?.entries;
    let sh = assemble_s_hat(boundary, kc)?.entries;
    let kk = assemble_adjoint_double_layer(boundary, boundary, kc)?.entries;
    let k0 = assemble_static_adjoint(boundary, boundary)?.entries;
    let (l, q) = (k * k * k.ln(), k * k);
    let (mut rs, mut rk): (f64, f64) = (0.0, 0.0);
    for j in 0..boundary.len() {
        for i in 0..boundary.len() {
            let es = s[(i, j)] - sh[(i, j)] - ops.s11.entries[(i, j)] * l - ops.s12.entries[(i, j)] * q;
            let ek = kk[(i, j)] - k0[(i, j)] - ops.k11.entries[(i, j)] * l - ops.k12.entries[(i, j)] * q;
            rs = rs.max(es.norm());
            rk = rk.max(ek.norm());
        }
    }
    Ok((rs, rk))
}

/// G(x, y; k) = −(i/4)H₀⁽¹⁾(k r).
pub fn green(k: C64, r: f64) -> C64 {
    let f = bessel_jy01(k * r).expect("Green's function argument out of range");
    c(0.0, -0.25) * f.h0()
}

fn span(a: &DiscreteBoundary, b: &DiscreteBoundary) -> f64 {
    let mut d: f64 = 0.0;
    for x in &a.nodes {
        for y in &b.nodes {
            d = d.max(distance(*x, *y));
        }
    }
    d
}

fn probe_bessel(k: C64, max_r: f64) -> Result<()> {
    bessel_jy01(k * max_r.max(f64::MIN_POSITIVE)).map(|_| ())
}

fn check_proximity(boundary: &DiscreteBoundary, points: &[Point]) -> Result<()> {
    let required = 3.0 * boundary.spacing();
    for p in points {
        let d = boundary.node_distance(*p);
        if d < required {
            return Err(Error::Proximity { point: *p, distance: d, required });
        }
    }
    Ok(())
}

/// S^k[ψ](x) at points away from the boundary (≥ 3 node spacings).
pub fn evaluate_field(boundary: &DiscreteBoundary, density: &[C64], k: C64, points: &[Point]) -> Result<Vec<C64>> {
    check_wavenumber(k)?;
    check_density(boundary, density)?;
    check_proximity(boundary, points)?;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut sum = c(0.0, 0.0);
        for (j, y) in boundary.nodes.iter().enumerate() {
            let f = bessel_jy01(k * distance(*p, *y))?;
            sum += c(0.0, -0.25) * f.h0() * density[j] * boundary.measure(j);
        }
        out.push(sum);
    }
    Ok(out)
}

/// ∇S^k[ψ](x) at points away from the boundary.
pub fn evaluate_gradient(
    boundary: &DiscreteBoundary,
    density: &[C64],
    k: C64,
    points: &[Point],
) -> Result<Vec<[C64; 2]>> {
    check_wavenumber(k)?;
    check_density(boundary, density)?;
    check_proximity(boundary, points)?;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut g = [c(0.0, 0.0); 2];
        for (j, y) in boundary.nodes.iter().enumerate() {
            let d = [p[0] - y[0], p[1] - y[1]];
            let r = d[0].hypot(d[1]);
            let f = bessel_jy01(k * r)?;
            // d/dr of −(i/4)H₀(kr) = (ik/4)H₁(kr)
            let radial = c(0.0, 0.25) * k * f.h1() * density[j] * boundary.measure(j) / r;
            g[0] += radial * d[0];
            g[1] += radial * d[1];
        }
        out.push(g);
    }
    Ok(out)
}

fn check_density(boundary: &DiscreteBoundary, density: &[C64]) -> Result<()> {
    if density.len() != boundary.len() {
        return Err(Error::argument(
            "density",
            format!("length {} does not match {} nodes", density.len(), boundary.len()),
        ));
    }
    Ok(())
}
