//! Numerical evaluation of `𝓜_k(q)` and of Euler's product on the unit disc.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Factors `1 - q^m` with `|q|^m` below this are dropped.
pub const DEFAULT_PROD_TOL: f64 = 1e-18;

/// Hard limit on the number of product factors.
const MAX_FACTORS: u64 = 50_000_000;

/// A point `τ = x + iy` of the upper half plane with |x| ≤ 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexTau {
    x: f64,
    y: f64,
}

impl ComplexTau {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !y.is_finite() || y <= 0.0 || x.is_nan() || x.abs() > 0.5 {
            return Err(Error::DomainError(format!("τ = {x} + {y}i needs y > 0 and |x| ≤ 1/2")));
        }
        Ok(ComplexTau { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// `e^{2πiτ}`.
    pub fn q(&self) -> Complex64 {
        Complex64::from_polar((-2.0 * PI * self.y).exp(), 2.0 * PI * self.x)
    }
}

/// `(q;q)_∞`, truncated once `|q|^m < tol`.
pub fn euler_product_q(q: Complex64, tol: f64) -> Result<Complex64> {
    let r = q.norm();
    if r.is_nan() || r >= 1.0 {
        return Err(Error::DomainError(format!("Euler product needs |q| < 1, got {r}")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("product tolerance must lie in (0, 1), got {tol}")));
    }
    let needed = if r == 0.0 { 0.0 } else { (tol.ln() / r.ln()).ceil() };
    if needed > MAX_FACTORS as f64 {
        return Err(Error::NoConvergence {
            nodes: MAX_FACTORS as usize,
            last_change: r,
        });
    }
    Ok(euler_product_unchecked(q, tol))
}

pub(crate) fn euler_product_unchecked(q: Complex64, tol: f64) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qm = q;
    while qm.norm() >= tol {
        prod *= 1.0 - qm;
        qm *= q;
    }
    prod
}

/// `Σ_{j<k} (-1)^j q^{j(3j+1)/2}(1 - q^{2j+1})`, without the `(-1)^{k-1}` sign.
pub fn mgf_numerator(q: Complex64, k: u64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..k {
        let a = q.powu((j * (3 * j + 1) / 2) as u32);
        let b = q.powu((2 * j + 1) as u32);
        let term = a * (1.0 - b);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

pub(crate) fn mgf_unchecked(q: Complex64, k: u64, tol: f64) -> Complex64 {
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * mgf_numerator(q, k) / euler_product_unchecked(q, tol)
}

/// `𝓜_k(q) = Σ_n M_k(n) qⁿ` for an arbitrary |q| < 1.
pub fn mgf_eval_q(q: Complex64, k: u64, prod_tol: f64) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let prod = euler_product_q(q, prod_tol)?;
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * mgf_numerator(q, k) / prod)
}

/// `𝓜_k(e^{2πiτ})`.
pub fn mgf_eval(tau: ComplexTau, k: u64, prod_tol: f64) -> Result<Complex64> {
    mgf_eval_q(tau.q(), k, prod_tol)
}

/// `-2 e^{πi/4} π k τ^{3/2} e^{πi/(12τ)}`, principal branch.
pub fn near_arc_approximation(tau: Complex64, k: u64) -> Complex64 {
    let i = Complex64::i();
    -2.0 * (i * PI / 4.0).exp() * PI * k as f64 * tau.powf(1.5) * (i * PI / (12.0 * tau)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaReport {
    pub tau: ComplexTau,
    /// `|(q;q)_∞ / L − 1|` with `L = (−iτ)^{−1/2} e^{−πiτ/12 − πi/(12τ)}`.
    pub leading_defect: f64,
    /// `10 e^{−2π Im(−1/τ)}`.
    pub bound: f64,
    /// Same with the `(q';q')_∞` factor at `q' = e^{−2πi/τ}` restored.
    pub full_defect: f64,
}

/// Rounding floor for the defect; the bound itself can sit far below f64 resolution.
const ETA_ROUNDING: f64 = 1e-12;

impl EtaReport {
    pub fn within_bound(&self) -> bool {
        self.leading_defect <= self.bound + ETA_ROUNDING
    }
}

/// Compares `(q;q)_∞` with its image under `τ ↦ −1/τ`.
pub fn eta_inversion_check(tau: ComplexTau, prod_tol: f64) -> Result<EtaReport> {
    let i = Complex64::i();
    let t = tau.tau();
    let direct = euler_product_q(tau.q(), prod_tol)?;
    let leading = (-i * t).powf(-0.5) * (-PI * i * t / 12.0 - PI * i / (12.0 * t)).exp();
    let inv = -1.0 / t;
    let dual = euler_product_q((2.0 * PI * i * inv).exp(), prod_tol)?;
    Ok(EtaReport {
        tau,
        leading_defect: (direct / leading - 1.0).norm(),
        bound: 10.0 * (-2.0 * PI * inv.im).exp(),
        full_defect: (direct / (leading * dual) - 1.0).norm(),
    })
}
