//! Numerical circle method: M_k(n) as a Cauchy integral at height y = 1/(2√(6n)).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::mgf::{mgf_unchecked, DEFAULT_PROD_TOL};
use super::quadrature::{integrate_composite, QuadOptions};
use crate::error::{Error, Result};

/// Beyond this the integrand peak leaves comfortable f64 range.
pub const CIRCLE_MAX_N: u64 = 80;

/// Half-width of the major arc in units of y: `√((12/(12−π²))² − 1)`.
pub fn arc_constant() -> f64 {
    let r = 12.0 / (12.0 - PI * PI);
    (r * r - 1.0).sqrt()
}

/// `1/(2√(6n))`.
pub fn saddle_height(n: u64) -> f64 {
    1.0 / (2.0 * (6.0 * n as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec {
    pub n: u64,
    pub k: u64,
    pub y: f64,
    pub m: f64,
    /// Initial panel count on the major arc.
    pub major_pts: usize,
    /// Initial panel count on each minor arc.
    pub minor_pts: usize,
}

impl ContourSpec {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument(format!("contour needs n ≥ 1 and k ≥ 1, got n = {n}, k = {k}")));
        }
        Ok(ContourSpec {
            n,
            k,
            y: saddle_height(n),
            m: arc_constant(),
            major_pts: 4,
            minor_pts: 4,
        })
    }

    /// Major arc half-width `My`, capped at 1/2.
    pub fn major_half_width(&self) -> f64 {
        (self.m * self.y).min(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleReport {
    pub n: u64,
    pub k: u64,
    /// Real part of the integral.
    pub value: f64,
    pub imag_residual: f64,
    /// `∫|integrand|`, the scale the residual is measured against.
    pub l1_mass: f64,
    pub rounded: i64,
    pub nodes: usize,
}

impl CircleReport {
    pub fn imag_ok(&self) -> bool {
        self.imag_residual.abs() < 1e-6 * self.l1_mass.max(1.0)
    }
}

/// `∫_{-1/2}^{1/2} 𝓜_k(e^{2πiτ}) e^{-2πinτ} dx` along `τ = x + iy`, split into
/// the major arc and the two minor arcs.
pub fn circle_method_mk(spec: &ContourSpec, opts: &QuadOptions) -> Result<CircleReport> {
    let (n, k, y) = (spec.n, spec.k, spec.y);
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("circle method needs n ≥ 1 and k ≥ 1".into()));
    }
    if n > CIRCLE_MAX_N {
        return Err(Error::OutOfRange(format!("n = {n} (circle method limit {CIRCLE_MAX_N})")));
    }
    let nf = n as f64;
    let lift = (2.0 * PI * nf * y).exp();
    let integrand = |x: f64| {
        let q = Complex64::from_polar((-2.0 * PI * y).exp(), 2.0 * PI * x);
        mgf_unchecked(q, k, DEFAULT_PROD_TOL) * lift * Complex64::from_polar(1.0, -2.0 * PI * nf * x)
    };
    let a = spec.major_half_width();
    let major = QuadOptions {
        initial_panels: spec.major_pts.max(1),
        ..*opts
    };
    let minor = QuadOptions {
        initial_panels: spec.minor_pts.max(1),
        ..*opts
    };
    let mut pieces = vec![integrate_composite(integrand, -a, a, &major)?];
    if a < 0.5 {
        pieces.push(integrate_composite(integrand, -0.5, -a, &minor)?);
        pieces.push(integrate_composite(integrand, a, 0.5, &minor)?);
    }
    let value: Complex64 = pieces.iter().map(|p| p.value).sum();
    Ok(CircleReport {
        n,
        k,
        value: value.re,
        imag_residual: value.im,
        l1_mass: pieces.iter().map(|p| p.l1_mass).sum(),
        rounded: value.re.round() as i64,
        nodes: pieces.iter().map(|p| p.nodes).sum(),
    })
}
