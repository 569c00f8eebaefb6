//! Modified Bessel functions of the first kind, I_ν(x), for real x > 0.
//!
//! Two independent routes: the ascending series (any real order) and, for
//! half-integer orders, the elementary closed forms seeded by
//! `I_{-1/2}(x) = √(2/(πx)) cosh x`, `I_{1/2}(x) = √(2/(πx)) sinh x`
//! and carried to other orders with `I_{ν-1} - I_{ν+1} = (2ν/x) I_ν`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::DomainError(format!("I-Bessel argument must be a finite x > 0, got {x}")));
    }
    Ok(())
}

/// `Some(2ν)` when ν is a half-integer.
fn twice_half_integer(order: f64) -> Option<i64> {
    let t = 2.0 * order;
    (t.fract() == 0.0 && (t as i64) % 2 != 0).then_some(t as i64)
}

/// `1/Γ(1 + ν)`; exact recurrence from Γ(1/2) = √π at half-integers.
fn recip_gamma_one_plus(order: f64) -> f64 {
    match twice_half_integer(order) {
        Some(t) => {
            // Γ(z) for z = (t + 2)/2, walked from z = 1/2.
            let mut z = 0.5;
            let mut g = PI.sqrt();
            let target = (t + 2) as f64 / 2.0;
            while z < target {
                g *= z;
                z += 1.0;
            }
            while z > target {
                z -= 1.0;
                g /= z;
            }
            1.0 / g
        }
        None => 1.0 / libm::tgamma(1.0 + order),
    }
}

/// Ascending series `Σ_m (x/2)^{2m+ν} / (m! Γ(m+ν+1))`.
pub fn bessel_i_series(order: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    // I_{-n} = I_n for integer n, where 1/Γ vanishes on the leading terms.
    let order = if order < 0.0 && order.fract() == 0.0 { -order } else { order };
    let half = 0.5 * x;
    let quarter_sq = half * half;
    let mut term = half.powf(order) * recip_gamma_one_plus(order);
    let mut sum = term;
    for m in 1..10_000 {
        let mf = m as f64;
        term *= quarter_sq / (mf * (mf + order));
        sum += term;
        if mf > half && term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        nodes: 10_000,
        last_change: term.abs(),
    })
}

/// Closed form for half-integer orders.
pub fn bessel_i_half_integer(order: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let twice = twice_half_integer(order)
        .ok_or_else(|| Error::DomainError(format!("order {order} is not a half-integer")))?;
    let c = (2.0 / (PI * x)).sqrt();
    let minus_half = c * x.cosh();
    let plus_half = c * x.sinh();
    if twice > 0 {
        // Upward: I_{ν+1} = I_{ν-1} - (2ν/x) I_ν, starting at ν = 1/2.
        let (mut below, mut cur) = (minus_half, plus_half);
        let mut nu = 0.5;
        while nu < order {
            let next = below - (2.0 * nu / x) * cur;
            below = cur;
            cur = next;
            nu += 1.0;
        }
        Ok(cur)
    } else {
        // Downward: I_{ν-1} = I_{ν+1} + (2ν/x) I_ν, starting at ν = -1/2.
        let (mut above, mut cur) = (plus_half, minus_half);
        let mut nu = -0.5;
        while nu > order {
            let next = above + (2.0 * nu / x) * cur;
            above = cur;
            cur = next;
            nu -= 1.0;
        }
        Ok(cur)
    }
}

/// I_ν(x): closed form at half-integer orders, ascending series otherwise.
pub fn bessel_i(order: f64, x: f64) -> Result<f64> {
    if twice_half_integer(order).is_some() {
        bessel_i_half_integer(order, x)
    } else {
        bessel_i_series(order, x)
    }
}

/// Large-x expansion `e^x/√(2πx) Σ_{m<terms} (-1)^m a_m(ν) / x^m`, with
/// `a_m = Π_{j=1}^m (4ν² - (2j-1)²) / (m! 8^m)`. Finite (and exact up to the
/// exponentially small e^{-x} branch) for half-integer ν.
pub fn bessel_i_asymptotic(order: f64, x: f64, terms: usize) -> f64 {
    let mu = 4.0 * order * order;
    let mut coeff = 1.0;
    let mut sum = 0.0;
    for m in 0..terms {
        if m > 0 {
            let odd = (2 * m - 1) as f64;
            coeff *= -(mu - odd * odd) / (m as f64 * 8.0 * x);
        }
        sum += coeff;
        if coeff == 0.0 {
            break;
        }
    }
    x.exp() / (2.0 * PI * x).sqrt() * sum
}
