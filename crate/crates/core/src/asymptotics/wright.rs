//! Wright's contour integral
//! `P_s(u) = (1/2πi) ∫_{1-Mi}^{1+Mi} v^s e^{u(v + 1/v)} dv`.
//!
//! `P_s(u)` agrees with `I_{-s-1}(2u)` up to a term of size roughly e^u, so
//! for u in the tens the interesting difference sits sixteen or more
//! decimal digits below the value itself. The quadrature therefore runs in
//! 192-bit floating point (nodes, weights and integrand), and only the
//! final sum is rounded to f64.
//!
//! With `v = 1 + it` the integral becomes
//! `e^{2u}/(2π) ∫_{-M}^{M} (1+t²)^{s/2} e^{i s atan t} e^{u(-t² + i t³)/(1+t²)} dt`,
//! whose exponent stays O(1) near the peak.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::{initial_root_guess, QuadOptions, GL_ORDER};
use crate::error::{Error, Result};

const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

fn hp(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn hp_int(x: i64) -> BigFloat {
    BigFloat::from_i64(x, PREC)
}

fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.format(Radix::Dec, RM, cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// Gauss–Legendre nodes and weights on [-1, 1] at 192 bits.
struct HpRule {
    nodes: Vec<BigFloat>,
    weights: Vec<BigFloat>,
}

impl HpRule {
    fn new(order: usize) -> Self {
        let one = hp_int(1);
        let two = hp_int(2);
        let legendre = |x: &BigFloat| -> (BigFloat, BigFloat) {
            let mut p0 = one.clone();
            let mut p1 = x.clone();
            for j in 1..order {
                let a = hp_int(2 * j as i64 + 1).mul(x, PREC, RM).mul(&p1, PREC, RM);
                let b = hp_int(j as i64).mul(&p0, PREC, RM);
                let p2 = a.sub(&b, PREC, RM).div(&hp_int(j as i64 + 1), PREC, RM);
                p0 = p1;
                p1 = p2;
            }
            let num = x.mul(&p1, PREC, RM).sub(&p0, PREC, RM).mul(&hp_int(order as i64), PREC, RM);
            let den = x.mul(x, PREC, RM).sub(&one, PREC, RM);
            (p1, num.div(&den, PREC, RM))
        };
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 1..=order {
            let mut x = hp(initial_root_guess(order, i));
            // Quadratic convergence: ~2^-30 → 2^-192 well within 10 steps.
            for _ in 0..10 {
                let (p, dp) = legendre(&x);
                x = x.sub(&p.div(&dp, PREC, RM), PREC, RM);
            }
            let (_, dp) = legendre(&x);
            let one_minus_x2 = one.sub(&x.mul(&x, PREC, RM), PREC, RM);
            let w = two.div(&one_minus_x2.mul(&dp, PREC, RM).mul(&dp, PREC, RM), PREC, RM);
            nodes.push(x);
            weights.push(w);
        }
        HpRule { nodes, weights }
    }
}

/// `e^{-2u}` times the integrand at v = 1 + it, as (re, im).
fn scaled_integrand(t: &BigFloat, s: &BigFloat, u: &BigFloat, cc: &mut Consts) -> (BigFloat, BigFloat) {
    let one = hp_int(1);
    let t2 = t.mul(t, PREC, RM);
    let r2 = one.add(&t2, PREC, RM);
    let half_s = s.div(&hp_int(2), PREC, RM);
    let log_mod = half_s
        .mul(&r2.ln(PREC, RM, cc), PREC, RM)
        .sub(&u.mul(&t2, PREC, RM).div(&r2, PREC, RM), PREC, RM);
    let t3 = t2.mul(t, PREC, RM);
    let phase = s
        .mul(&t.atan(PREC, RM, cc), PREC, RM)
        .add(&u.mul(&t3, PREC, RM).div(&r2, PREC, RM), PREC, RM);
    let modulus = log_mod.exp(PREC, RM, cc);
    (
        modulus.mul(&phase.cos(PREC, RM, cc), PREC, RM),
        modulus.mul(&phase.sin(PREC, RM, cc), PREC, RM),
    )
}

/// Sum over `panels` equal panels of [-M, M] of the scaled integrand, in
/// 192 bits, plus an f64 estimate of the L1 mass.
fn panel_sum(rule: &HpRule, s: f64, u: f64, m: f64, panels: usize) -> (BigFloat, BigFloat, f64) {
    let parts: Vec<(BigFloat, BigFloat, f64)> = (0..panels)
        .into_par_iter()
        .map_init(consts, |cc, p| {
            let (s, u) = (hp(s), hp(u));
            let width = hp(2.0 * m).div(&hp_int(panels as i64), PREC, RM);
            let half = width.div(&hp_int(2), PREC, RM);
            let left = hp(-m).add(&width.mul(&hp_int(p as i64), PREC, RM), PREC, RM);
            let mid = left.add(&half, PREC, RM);
            let mut re = hp(0.0);
            let mut im = hp(0.0);
            let mut mass = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = mid.add(&half.mul(x, PREC, RM), PREC, RM);
                let (fr, fi) = scaled_integrand(&t, &s, &u, cc);
                let hw = half.mul(w, PREC, RM);
                let (fr, fi) = (fr.mul(&hw, PREC, RM), fi.mul(&hw, PREC, RM));
                mass += to_f64(&fr, cc).hypot(to_f64(&fi, cc));
                re = re.add(&fr, PREC, RM);
                im = im.add(&fi, PREC, RM);
            }
            (re, im, mass)
        })
        .collect();
    let mut re = hp(0.0);
    let mut im = hp(0.0);
    let mut mass = 0.0;
    for (r, i, w) in parts {
        re = re.add(&r, PREC, RM);
        im = im.add(&i, PREC, RM);
        mass += w;
    }
    (re, im, mass)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightEstimate {
    /// `P_s(u)` rounded to f64.
    pub value: Complex64,
    /// `e^{-2u} P_s(u)`, finite for any u.
    pub scaled: Complex64,
    pub nodes: usize,
    /// Change between the last two levels, relative to the L1 mass.
    pub last_change: f64,
}

/// Converged `e^{-2u} P_s(u)` at 192 bits, as (re, im, nodes, last_change).
fn scaled_hp(s: f64, u: f64, m: f64, opts: &QuadOptions, cc: &mut Consts) -> Result<(BigFloat, BigFloat, usize, f64)> {
    opts.validate()?;
    if !(u > 0.0 && u.is_finite()) || !(m > 0.0 && m.is_finite()) || !s.is_finite() {
        return Err(Error::DomainError(format!("P_s(u) needs u > 0 and M > 0, got u = {u}, M = {m}")));
    }
    let rule = HpRule::new(GL_ORDER);
    let two_pi = hp(2.0).mul(&cc.pi(PREC, RM), PREC, RM);

    let mut panels = opts.initial_panels.max(2);
    let (mut prev_re, mut prev_im, _) = panel_sum(&rule, s, u, m, panels);
    let mut last_change = f64::INFINITY;
    loop {
        panels *= 2;
        let nodes = panels * GL_ORDER;
        if nodes > opts.max_nodes {
            return Err(Error::NoConvergence {
                nodes: nodes / 2,
                last_change,
            });
        }
        let (re, im, mass) = panel_sum(&rule, s, u, m, panels);
        let dre = to_f64(&re.sub(&prev_re, PREC, RM), cc);
        let dim = to_f64(&im.sub(&prev_im, PREC, RM), cc);
        last_change = dre.hypot(dim) / mass;
        if last_change <= opts.tol {
            return Ok((re.div(&two_pi, PREC, RM), im.div(&two_pi, PREC, RM), nodes, last_change));
        }
        prev_re = re;
        prev_im = im;
    }
}

/// `P_s(u)` by composite Gauss–Legendre on the segment `1 + it`, |t| ≤ M,
/// with panel doubling until successive estimates differ by less than
/// `opts.tol` relative to the L1 mass of the integrand.
pub fn wright_p_with(s: f64, u: f64, m: f64, opts: &QuadOptions) -> Result<WrightEstimate> {
    let mut cc = consts();
    let (sre, sim, nodes, last_change) = scaled_hp(s, u, m, opts, &mut cc)?;
    let growth = hp(2.0 * u).exp(PREC, RM, &mut cc);
    let value = Complex64::new(
        to_f64(&sre.mul(&growth, PREC, RM), &mut cc),
        to_f64(&sim.mul(&growth, PREC, RM), &mut cc),
    );
    Ok(WrightEstimate {
        value,
        scaled: Complex64::new(to_f64(&sre, &mut cc), to_f64(&sim, &mut cc)),
        nodes,
        last_change,
    })
}

/// I_ν(x) at half-integer ν from the cosh/sinh seeds and the three-term
/// recurrence, at 192 bits.
fn bessel_half_integer_hp(order: f64, x: &BigFloat, cc: &mut Consts) -> BigFloat {
    let c = hp(2.0)
        .div(&cc.pi(PREC, RM).mul(x, PREC, RM), PREC, RM)
        .sqrt(PREC, RM);
    let minus_half = c.mul(&x.cosh(PREC, RM, cc), PREC, RM);
    let plus_half = c.mul(&x.sinh(PREC, RM, cc), PREC, RM);
    let twice_nu = |nu: f64| hp(2.0 * nu).div(x, PREC, RM);
    if order > 0.0 {
        let (mut below, mut cur) = (minus_half, plus_half);
        let mut nu = 0.5;
        while nu < order {
            let next = below.sub(&twice_nu(nu).mul(&cur, PREC, RM), PREC, RM);
            below = cur;
            cur = next;
            nu += 1.0;
        }
        cur
    } else {
        let (mut above, mut cur) = (plus_half, minus_half);
        let mut nu = -0.5;
        while nu > order {
            let next = above.add(&twice_nu(nu).mul(&cur, PREC, RM), PREC, RM);
            above = cur;
            cur = next;
            nu -= 1.0;
        }
        cur
    }
}

/// `(Re P_s(u) − I_{-s-1}(2u)) e^{-u}` for half-integer s. The subtraction
/// happens before rounding, so the result is meaningful even when the two
/// terms agree to more digits than an f64 holds.
pub fn wright_bessel_defect(s: f64, u: f64, m: f64, opts: &QuadOptions) -> Result<f64> {
    if (2.0 * s).fract() != 0.0 || s.fract() == 0.0 {
        return Err(Error::DomainError(format!("s = {s} is not a half-integer")));
    }
    let mut cc = consts();
    let (sre, _, _, _) = scaled_hp(s, u, m, opts, &mut cc)?;
    let uu = hp(u);
    let bessel = bessel_half_integer_hp(-s - 1.0, &uu.mul(&hp_int(2), PREC, RM), &mut cc);
    let diff = sre
        .mul(&uu.exp(PREC, RM, &mut cc), PREC, RM)
        .sub(&bessel.mul(&uu.neg().exp(PREC, RM, &mut cc), PREC, RM), PREC, RM);
    Ok(to_f64(&diff, &mut cc))
}

/// [`wright_p_with`] with default node budget and relative tolerance `tol`.
pub fn wright_p(s: f64, u: f64, m: f64, tol: f64) -> Result<WrightEstimate> {
    wright_p_with(s, u, m, &QuadOptions::with_tol(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{arc_constant, bessel_i};

    #[test]
    fn hp_rule_integrates_polynomials_exactly() {
        let rule = HpRule::new(GL_ORDER);
        let mut cc = consts();
        let mut sum = hp(0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            sum = sum.add(&w.mul(&x.powi(30, PREC, RM), PREC, RM), PREC, RM);
        }
        let exact = hp(2.0).div(&hp(31.0), PREC, RM);
        let err = to_f64(&sum.sub(&exact, PREC, RM), &mut cc).abs();
        assert!(err < 1e-50, "{err:e}");
    }

    #[test]
    fn imaginary_part_vanishes() {
        let est = wright_p(1.5, 5.0, arc_constant(), 1e-10).unwrap();
        assert!(est.value.im.abs() <= 1e-10 * est.value.re.abs());
    }

    #[test]
    fn close_to_bessel_for_moderate_u() {
        let u = 10.0;
        let est = wright_p(1.5, u, arc_constant(), 1e-12).unwrap();
        let bessel = bessel_i(-2.5, 2.0 * u).unwrap();
        // The gap is O(e^u), tiny next to I(2u) ~ e^{2u}.
        assert!(((est.value.re - bessel) / bessel).abs() < 1e-3);
        assert!((est.value.re - bessel).abs() * (-u).exp() < 5.0);
    }

    #[test]
    fn hp_bessel_matches_f64_closed_form() {
        let mut cc = consts();
        for order in [-2.5, -0.5, 1.5] {
            let hpv = to_f64(&bessel_half_integer_hp(order, &hp(7.0), &mut cc), &mut cc);
            let f = bessel_i(order, 7.0).unwrap();
            assert!(((hpv - f) / f).abs() < 1e-14);
        }
    }

    #[test]
    fn defect_agrees_with_f64_at_small_u() {
        let u = 5.0;
        let opts = QuadOptions::with_tol(1e-14);
        let d = wright_bessel_defect(1.5, u, arc_constant(), &opts).unwrap();
        let est = wright_p_with(1.5, u, arc_constant(), &opts).unwrap();
        let direct = (est.value.re - bessel_i(-2.5, 2.0 * u).unwrap()) * (-u).exp();
        assert!((d - direct).abs() < 1e-9, "{d} vs {direct}");
        assert!(wright_bessel_defect(1.0, u, 1.0, &opts).is_err());
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(matches!(wright_p(1.5, 0.0, 1.0, 1e-10), Err(Error::DomainError(_))));
        assert!(wright_p(1.5, 1.0, -1.0, 1e-10).is_err());
    }
}
