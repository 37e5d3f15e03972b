//! Complex Bessel and Hankel functions of order 0 and 1, and the constants of
//! the small-argument expansion of the 2D Helmholtz fundamental solution
//!
//! ```text
//! −(i/4)·H₀⁽¹⁾(k|x−y|) = (1/2π)·ln|x−y| + η_k + Σ_j (b_j·ln(k|x−y|) + c_j)·(k|x−y|)^{2j}
//! ```
//!
//! Evaluation uses the ascending power series for `|z| ≤ 12` and the Hankel
//! asymptotic expansion beyond. Both sides reach roughly 1e-11 relative
//! accuracy at the crossover. Logarithms and square roots use the principal
//! branch, so the cut lies on the negative real axis and arguments in the
//! lower half-plane (resonance frequencies) are handled by analytic
//! continuation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use crate::{c, Error, Result, C64};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest |z| accepted by the Bessel routines.
pub const MAX_ARGUMENT: f64 = 200.0;

/// Switch from the power series to the asymptotic expansion.
const SERIES_RADIUS: f64 = 12.0;

/// J₀, J₁, Y₀, Y₁ evaluated at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselSet {
    pub j0: C64,
    pub j1: C64,
    pub y0: C64,
    pub y1: C64,
}

impl BesselSet {
    pub fn h0(&self) -> C64 {
        self.j0 + C64::i() * self.y0
    }

    pub fn h1(&self) -> C64 {
        self.j1 + C64::i() * self.y1
    }
}

fn check_argument(function: &'static str, z: C64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(function, format!("non-finite argument {z}")));
    }
    if z.norm() > MAX_ARGUMENT {
        return Err(Error::domain(
            function,
            format!("|z| = {} exceeds the validity region |z| ≤ {MAX_ARGUMENT}", z.norm()),
        ));
    }
    Ok(())
}

fn check_order(function: &'static str, order: u32) -> Result<()> {
    if order > 1 {
        return Err(Error::domain(function, format!("order {order} not supported (0 or 1)")));
    }
    Ok(())
}

/// Bessel function of the first kind, J₀ or J₁.
pub fn bessel_j(order: u32, z: C64) -> Result<C64> {
    check_order("bessel_j", order)?;
    check_argument("bessel_j", z)?;
    if z.norm() <= SERIES_RADIUS {
        let (j0, j1) = series_j(z);
        Ok(if order == 0 { j0 } else { j1 })
    } else {
        let set = large_argument(z);
        Ok(if order == 0 { set.j0 } else { set.j1 })
    }
}

/// Bessel function of the second kind, Y₀ or Y₁.
pub fn bessel_y(order: u32, z: C64) -> Result<C64> {
    check_order("bessel_y", order)?;
    let set = bessel_jy01(z).map_err(|e| rename(e, "bessel_y"))?;
    Ok(if order == 0 { set.y0 } else { set.y1 })
}

/// Hankel function of the first kind, H₀⁽¹⁾ or H₁⁽¹⁾.
pub fn hankel1(order: u32, z: C64) -> Result<C64> {
    check_order("hankel1", order)?;
    let set = bessel_jy01(z).map_err(|e| rename(e, "hankel1"))?;
    Ok(if order == 0 { set.h0() } else { set.h1() })
}

fn rename(e: Error, function: &'static str) -> Error {
    match e {
        Error::Domain { reason, .. } => Error::Domain { function, reason },
        other => other,
    }
}

/// All four of J₀, J₁, Y₀, Y₁ at once; the kernels need every one of them.
pub fn bessel_jy01(z: C64) -> Result<BesselSet> {
    check_argument("bessel_jy01", z)?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::domain("bessel_jy01", "logarithmic singularity at z = 0"));
    }
    if z.norm() <= SERIES_RADIUS {
        Ok(series_jy(z))
    } else {
        Ok(large_argument(z))
    }
}

// The Hankel expansions degrade near the negative real axis, so the left
// half-plane goes through w = −z: J_n(z) = (−1)^n J_n(w) and
// Y_n(z) = (−1)^n (Y_n(w) ± 2i J_n(w)) with + for Im z ≥ 0 (principal branch).
fn large_argument(z: C64) -> BesselSet {
    if z.re < 0.0 {
        let w = large_argument(-z);
        let jump = if z.im >= 0.0 { c(0.0, 2.0) } else { c(0.0, -2.0) };
        return BesselSet { j0: w.j0, j1: -w.j1, y0: w.y0 + jump * w.j0, y1: -(w.y1 + jump * w.j1) };
    }
    let (h10, h20) = asymptotic_hankel(0, z);
    let (h11, h21) = asymptotic_hankel(1, z);
    let two_i = c(0.0, 2.0);
    BesselSet {
        j0: (h10 + h20) * 0.5,
        j1: (h11 + h21) * 0.5,
        y0: (h10 - h20) / two_i,
        y1: (h11 - h21) / two_i,
    }
}

fn series_j(z: C64) -> (C64, C64) {
    let q = -(z * z) * 0.25;
    let mut t0 = c(1.0, 0.0);
    let mut t1 = c(1.0, 0.0);
    let mut j0 = t0;
    let mut j1 = t1;
    for m in 1..200 {
        let mf = m as f64;
        t0 *= q / (mf * mf);
        t1 *= q / (mf * (mf + 1.0));
        j0 += t0;
        j1 += t1;
        if t0.norm() <= 1e-17 * j0.norm().max(1e-300) && t1.norm() <= 1e-17 * j1.norm().max(1e-300)
        {
            break;
        }
    }
    (j0, j1 * z * 0.5)
}

// Ascending series:
//   Y₀ = (2/π)[(ln(z/2)+γ)·J₀ − Σ_{m≥1} H_m·t_m],           t_m = (−z²/4)^m/(m!)²
//   Y₁ = (2/π)(ln(z/2)+γ)·J₁ − 2/(πz) − (z/2π)·Σ_{m≥0} (H_m+H_{m+1})·u_m,
//                                                             u_m = (−z²/4)^m/(m!(m+1)!)
fn series_jy(z: C64) -> BesselSet {
    let q = -(z * z) * 0.25;
    let mut t0 = c(1.0, 0.0);
    let mut t1 = c(1.0, 0.0);
    let mut j0 = t0;
    let mut j1 = t1;
    let mut s0 = c(0.0, 0.0);
    let mut s1 = t1; // m = 0: H_0 + H_1 = 1
    let mut harmonic = 0.0;
    for m in 1..200 {
        let mf = m as f64;
        harmonic += 1.0 / mf;
        t0 *= q / (mf * mf);
        t1 *= q / (mf * (mf + 1.0));
        j0 += t0;
        j1 += t1;
        s0 += t0 * harmonic;
        s1 += t1 * (2.0 * harmonic + 1.0 / (mf + 1.0));
        let small = |t: C64, acc: C64| t.norm() * (harmonic + 1.0) <= 1e-17 * acc.norm().max(1e-300);
        if small(t0, j0) && small(t1, j1) && small(t0, s0) && small(t1, s1) {
            break;
        }
    }
    let half = z * 0.5;
    let j1 = j1 * half;
    let log_term = half.ln() + EULER_GAMMA;
    let y0 = (log_term * j0 - s0) * (2.0 / PI);
    let y1 = log_term * j1 * (2.0 / PI) - (PI * z).inv() * 2.0 - half * s1 / PI;
    BesselSet { j0, j1, y0, y1 }
}

// H⁽¹⁾_ν(z) ~ √(2/πz)·e^{+iφ}·Σ i^k a_k/z^k,  H⁽²⁾_ν(z) ~ √(2/πz)·e^{−iφ}·Σ (−i)^k a_k/z^k,
// φ = z − νπ/2 − π/4, a_k = Π_{l=1..k}(4ν² − (2l−1)²) / (k!·8^k).
fn asymptotic_hankel(order: u32, z: C64) -> (C64, C64) {
    let mu = 4.0 * (order * order) as f64;
    let mut term = c(1.0, 0.0);
    let mut sum_plus = term;
    let mut sum_minus = term;
    let mut i_pow = c(1.0, 0.0);
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (8.0 * kf * z);
        if next.norm() > term.norm() {
            break;
        }
        term = next;
        i_pow *= C64::i();
        sum_plus += i_pow * term;
        sum_minus += i_pow.conj() * term;
        if term.norm() < 1e-17 {
            break;
        }
    }
    let prefactor = (c(2.0 / PI, 0.0) / z).sqrt();
    let phase = z - FRAC_PI_2 * order as f64 - FRAC_PI_4;
    let e_plus = (C64::i() * phase).exp();
    let e_minus = (-C64::i() * phase).exp();
    (prefactor * e_plus * sum_plus, prefactor * e_minus * sum_minus)
}

/// η_k = (1/2π)(ln k + γ − ln 2) − i/4, the constant term of the 2D
/// fundamental solution's small-argument expansion.
pub fn eta(k: C64) -> Result<C64> {
    if !k.re.is_finite() || !k.im.is_finite() {
        return Err(Error::domain("eta", format!("non-finite argument {k}")));
    }
    if k == C64::new(0.0, 0.0) {
        return Err(Error::domain("eta", "logarithm of zero"));
    }
    Ok((k.ln() + EULER_GAMMA - LN_2) / (2.0 * PI) - c(0.0, 0.25))
}

/// Coefficients b_j and c_j of the expansion of −(i/4)H₀⁽¹⁾; index 0 is unused.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionConstants {
    pub euler_gamma: f64,
    pub b: Vec<f64>,
    pub c: Vec<C64>,
    /// c_j / b_j = γ − ln 2 − iπ/2 − H_j, kept exactly as formed.
    pub c_over_b: Vec<C64>,
}

impl ExpansionConstants {
    pub fn new(max_order: usize) -> Self {
        let mut b = vec![0.0; max_order + 1];
        let mut cs = vec![c(0.0, 0.0); max_order + 1];
        let mut ratio = vec![c(0.0, 0.0); max_order + 1];
        let mut factorial = 1.0;
        let mut harmonic = 0.0;
        for j in 1..=max_order {
            let jf = j as f64;
            factorial *= jf;
            harmonic += 1.0 / jf;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            b[j] = sign / (2.0 * PI) / (4f64.powi(j as i32) * factorial * factorial);
            ratio[j] = c(EULER_GAMMA - LN_2 - harmonic, -FRAC_PI_2);
            cs[j] = ratio[j] * b[j];
        }
        ExpansionConstants { euler_gamma: EULER_GAMMA, b, c: cs, c_over_b: ratio }
    }

    /// b₁ = −1/(8π).
    pub fn b1() -> f64 {
        -1.0 / (2.0 * PI) / 4.0
    }

    /// c₁ = −(1/8π)(γ − ln 2 − 1 − iπ/2).
    pub fn c1() -> C64 {
        Self::c1_over_b1() * Self::b1()
    }

    pub fn c1_over_b1() -> C64 {
        c(EULER_GAMMA - LN_2 - 1.0, -FRAC_PI_2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn j0_at_origin_is_one() {
        assert_eq!(bessel_j(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(bessel_j(1, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn values_at_one() {
        // J₀(1), Y₀(1), J₁(1), Y₁(1) to 16 digits
        assert!(close(bessel_j(0, c(1.0, 0.0)).unwrap(), c(0.765_197_686_557_966_6, 0.0), 1e-14));
        assert!(close(bessel_y(0, c(1.0, 0.0)).unwrap(), c(0.088_256_964_215_676_96, 0.0), 1e-14));
        assert!(close(bessel_j(1, c(1.0, 0.0)).unwrap(), c(0.440_050_585_744_933_5, 0.0), 1e-14));
        assert!(close(bessel_y(1, c(1.0, 0.0)).unwrap(), c(-0.781_212_821_300_288_7, 0.0), 1e-14));
        let h = hankel1(0, c(1.0, 0.0)).unwrap();
        assert!(close(h, c(0.765_197_686_557_966_6, 0.088_256_964_215_676_96), 1e-14));
    }

    #[test]
    fn hankel_is_j_plus_iy() {
        for z in [c(0.3, -0.1), c(5.0, 2.0), c(30.0, -4.0), c(-2.0, 0.5)] {
            for order in 0..2 {
                let h = hankel1(order, z).unwrap();
                let j = bessel_j(order, z).unwrap();
                let y = bessel_y(order, z).unwrap();
                assert_eq!(h, j + C64::i() * y);
            }
        }
    }

    #[test]
    fn singular_and_out_of_range_arguments() {
        assert!(matches!(bessel_y(0, c(0.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(hankel1(1, c(0.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(bessel_j(0, c(201.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(bessel_j(0, c(f64::NAN, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(bessel_j(2, c(1.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn crossover_is_continuous() {
        for angle in [0.0, 0.4, -0.9, 1.5, 2.8, -2.8, 3.1] {
            let z_in = C64::from_polar(SERIES_RADIUS * (1.0 - 1e-12), angle);
            let z_out = C64::from_polar(SERIES_RADIUS * (1.0 + 1e-12), angle);
            let a = bessel_jy01(z_in).unwrap();
            let b = bessel_jy01(z_out).unwrap();
            let scale = a.h0().norm() + a.j0.norm();
            assert!((a.j0 - b.j0).norm() < 1e-10 * scale, "J0 jump at angle {angle}");
            assert!((a.y1 - b.y1).norm() < 1e-10 * (a.h1().norm() + a.j1.norm()));
        }
    }

    #[test]
    fn eta_closed_form() {
        let e1 = eta(c(1.0, 0.0)).unwrap();
        assert!((e1 - c((EULER_GAMMA - LN_2) / (2.0 * PI), -0.25)).norm() < 1e-16);
        assert!((e1.re + 0.018_451_07).abs() < 1e-7);
        let e2 = eta(c(2.0, 0.0)).unwrap();
        assert!((e2 - c(EULER_GAMMA / (2.0 * PI), -0.25)).norm() < 1e-16);
        let k = c(0.03, -0.002);
        assert_eq!(eta(k).unwrap() / eta(k).unwrap(), c(1.0, 0.0));
        assert!(eta(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn expansion_constants() {
        let k = ExpansionConstants::new(4);
        assert_eq!(k.b[1], -1.0 / (8.0 * PI));
        assert_eq!(k.b[1], ExpansionConstants::b1());
        assert_eq!(k.c_over_b[1], ExpansionConstants::c1_over_b1());
        assert!((k.c[1] / k.b[1] - ExpansionConstants::c1_over_b1()).norm() < 1e-15);
        assert!((k.b[2] - 1.0 / (2.0 * PI * 64.0)).abs() < 1e-18);
        let mut harmonic = 0.0;
        for j in 1..=4 {
            harmonic += 1.0 / j as f64;
            let expected = c(EULER_GAMMA - LN_2 - harmonic, -FRAC_PI_2);
            assert!((k.c[j] / k.b[j] - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn small_argument_expansion_is_fourth_order() {
        // −(i/4)H₀(kr) minus the two-term expansion should shrink by ~16 per halving
        let k = c(1.0, 0.0);
        let remainder = |r: f64| {
            let kr = k * r;
            let g = c(0.0, -0.25) * hankel1(0, kr).unwrap();
            let expansion = r.ln() / (2.0 * PI)
                + eta(k).unwrap()
                + (kr.ln() * ExpansionConstants::b1() + ExpansionConstants::c1()) * kr * kr;
            (g - expansion).norm()
        };
        let mut r = 0.2;
        for _ in 0..4 {
            let ratio = remainder(r) / remainder(r / 2.0);
            assert!(ratio >= 12.0, "ratio {ratio} at r = {r}");
            r /= 2.0;
        }
    }

    #[test]
    fn leading_behavior_near_origin() {
        // z = 1e-3 on the positive axis: G ≈ (1/2π) ln r + η_k
        let z = c(1e-3, 0.0);
        let g = c(0.0, -0.25) * hankel1(0, z).unwrap();
        let leading = (1e-3f64).ln() / (2.0 * PI) + eta(c(1.0, 0.0)).unwrap();
        assert!((g - leading).norm() < 1e-6);
    }
}
