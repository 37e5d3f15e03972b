//! Dense linear algebra on complex matrices and Muller's root finder.

use faer::linalg::solvers::Solve;

use crate::{c, CMat, Error, Result, C64};

/// Largest matrix dimension accepted by the dense routines.
pub const MAX_DIMENSION: usize = 4096;

fn check_square(a: &CMat) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::argument("matrix", format!("not square: {}×{}", a.nrows(), a.ncols())));
    }
    if a.nrows() == 0 || a.nrows() > MAX_DIMENSION {
        return Err(Error::argument("matrix", format!("dimension {} outside 1..={MAX_DIMENSION}", a.nrows())));
    }
    Ok(())
}

/// max |a_ij|
pub fn max_norm(a: &CMat) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

/// Solve A x = b by LU with partial pivoting.
pub fn solve_linear(a: &CMat, b: &[C64]) -> Result<Vec<C64>> {
    check_square(a)?;
    if b.len() != a.nrows() {
        return Err(Error::argument("rhs", format!("length {} for a {}-row matrix", b.len(), a.nrows())));
    }
    let lu = a.partial_piv_lu();
    let threshold = 1e-14 * max_norm(a);
    let u = lu.U();
    let pivot = (0..u.nrows()).map(|i| u[(i, i)].norm()).fold(f64::INFINITY, f64::min);
    if !(pivot >= threshold) || threshold == 0.0 {
        return Err(Error::Singular { pivot, threshold });
    }
    let rhs = CMat::from_fn(b.len(), 1, |i, _| b[i]);
    let x = lu.solve(&rhs);
    Ok((0..b.len()).map(|i| x[(i, 0)]).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<C64>,
    pub min_modulus: C64,
}

/// Eigenvalue that is smallest in modulus; exact ties go to the smaller argument.
pub fn min_modulus(values: &[C64]) -> Option<C64> {
    values.iter().copied().min_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.arg().partial_cmp(&b.arg()).unwrap_or(std::cmp::Ordering::Equal))
    })
}

pub fn eigenvalues(a: &CMat) -> Result<SpectrumResult> {
    check_square(a)?;
    let values = a.eigenvalues().map_err(|_| Error::Convergence { routine: "eigenvalues" })?;
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Convergence { routine: "eigenvalues" });
    }
    let min = min_modulus(&values).expect("non-empty matrix");
    Ok(SpectrumResult { eigenvalues: values, min_modulus: min })
}

pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    check_square(a)?;
    a.singular_values().map_err(|_| Error::Convergence { routine: "singular values" })
}

pub fn min_singular_value(a: &CMat) -> Result<f64> {
    Ok(*singular_values(a)?.last().expect("non-empty matrix"))
}

/// The `count` smallest singular values (ascending) with their right singular vectors.
pub fn min_singular_pairs(a: &CMat, count: usize) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    check_square(a)?;
    let svd = a.svd().map_err(|_| Error::Convergence { routine: "svd" })?;
    let n = a.ncols();
    let s = svd.S().column_vector();
    let v = svd.V();
    let count = count.min(n);
    let mut values = Vec::with_capacity(count);
    let mut vectors = Vec::with_capacity(count);
    for idx in (n - count..n).rev() {
        values.push(s[idx].re);
        vectors.push((0..n).map(|i| v[(i, idx)]).collect());
    }
    Ok((values, vectors))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    pub root: C64,
    pub iterations: usize,
    /// |f(root)|
    pub residual: f64,
    pub converged: bool,
    /// Every evaluated iterate, starting with the three guesses.
    pub trace: Vec<C64>,
}

/// Muller's method for an infallible function.
pub fn muller<F>(mut f: F, guesses: [C64; 3], tol: f64, max_iter: usize) -> Result<RootResult>
where
    F: FnMut(C64) -> C64,
{
    try_muller(|z| Ok(f(z)), guesses, tol, max_iter)
}

/// Muller's method. Stops when |f| ≤ tol or the step is below tol·max(1, |z|).
pub fn try_muller<F>(mut f: F, guesses: [C64; 3], tol: f64, max_iter: usize) -> Result<RootResult>
where
    F: FnMut(C64) -> Result<C64>,
{
    if !(tol > 0.0) {
        return Err(Error::argument("tol", format!("must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::argument("max_iter", "must be at least 1"));
    }
    let [mut x0, mut x1, mut x2] = guesses;
    if x0 == x1 || x1 == x2 || x0 == x2 {
        return Err(Error::argument("guesses", "the three initial points must be distinct"));
    }
    let mut trace = vec![x0, x1, x2];
    let (mut f0, mut f1, mut f2) = (f(x0)?, f(x1)?, f(x2)?);
    if f2.norm() <= tol {
        return Ok(RootResult { root: x2, iterations: 0, residual: f2.norm(), converged: true, trace });
    }
    for iteration in 1..=max_iter {
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        let d1 = (f1 - f0) / h1;
        let d2 = (f2 - f1) / h2;
        let a = (d2 - d1) / (h2 + h1);
        let b = a * h2 + d2;
        let disc = (b * b - a * f2 * 4.0).sqrt();
        let (plus, minus) = (b + disc, b - disc);
        let denom = if plus.norm() >= minus.norm() { plus } else { minus };
        if denom.norm() == 0.0 || !(denom.re.is_finite() && denom.im.is_finite()) {
            return Err(Error::DegenerateParabola { at: x2 });
        }
        let step = -f2 * 2.0 / denom;
        let x3 = x2 + step;
        let f3 = f(x3)?;
        trace.push(x3);
        (x0, x1, x2) = (x1, x2, x3);
        (f0, f1, f2) = (f1, f2, f3);
        if f3.norm() <= tol || step.norm() <= tol * x3.norm().max(1.0) {
            return Ok(RootResult { root: x3, iterations: iteration, residual: f3.norm(), converged: true, trace });
        }
        if x0 == x1 || x1 == x2 {
            return Err(Error::DegenerateParabola { at: x2 });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, last: x2, residual: f2.norm() })
}

/// Default three-point stencil around a single guess.
pub fn stencil(guess: C64) -> [C64; 3] {
    let scale = guess.norm().max(1e-300);
    [guess * 0.99, guess * 1.01 + c(0.0, 0.005 * scale), guess]
}
