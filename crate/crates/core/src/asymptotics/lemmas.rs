//! Sampled checks of the near-arc approximation and the away-arc bound for `𝓜_k(q)`.
//!
//! Both reports scale the observed error by the claimed order of magnitude,
//! so a bounded normalized value across growing n is what the estimates predict.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::circle::{arc_constant, saddle_height};
use super::mgf::{mgf_eval, mgf_numerator, near_arc_approximation, ComplexTau, DEFAULT_PROD_TOL};
use super::regime_check;
use crate::error::{Error, Result};
use crate::truncated::TruncatedFamily;

/// Points sampled across the major arc, endpoints included.
pub const NEAR_SAMPLES: usize = 257;
/// Interior points per minor arc; both endpoints are added.
pub const AWAY_SAMPLES_PER_SIDE: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NearReport {
    pub n: u64,
    pub k: u64,
    pub samples: usize,
    pub max_defect: f64,
    pub worst_x: f64,
    /// `max_defect · e^{−π√n/√6} · n^{5/4} / k³`.
    pub normalized: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AwayReport {
    pub n: u64,
    pub k: u64,
    pub samples: usize,
    pub max_abs: f64,
    pub worst_x: f64,
    /// `max_abs · n^{1/4} · e^{−π√n/(2√6)} / k`.
    pub normalized: f64,
    /// Largest sampled `|Σ_j (−1)^j q^{j(3j+1)/2}(1 − q^{2j+1})|`.
    pub max_numerator: f64,
    /// `|𝓜_k|` at x = 1/2.
    pub at_half: f64,
    /// `|𝓜_k|` at x = 0, the top of the major arc.
    pub major_peak: f64,
}

impl AwayReport {
    pub fn numerator_bound_holds(&self) -> bool {
        self.max_numerator <= 2.0 * self.k as f64
    }
}

fn require_regime(n: u64, k: u64) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("lemma checks need n ≥ 1 and k ≥ 1, got n = {n}, k = {k}")));
    }
    if !regime_check(n, k, TruncatedFamily::Mk) {
        return Err(Error::RegimeViolation { n, k });
    }
    Ok(())
}

/// Largest value and its abscissa; ties keep the first point.
fn argmax(values: &[(f64, f64)]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::NEG_INFINITY, 0.0), |best, &(x, v)| if v > best.0 { (v, x) } else { best })
}

/// Near-arc check after the regime guard.
pub fn lemma_near1_check(n: u64, k: u64, samples: usize) -> Result<NearReport> {
    require_regime(n, k)?;
    near1_defect(n, k, samples)
}

/// Near-arc check for any n, k ≥ 1.
pub fn near1_defect(n: u64, k: u64, samples: usize) -> Result<NearReport> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let y = saddle_height(n);
    let a = (arc_constant() * y).min(0.5);
    let xs: Vec<f64> = (0..samples).map(|i| -a + 2.0 * a * i as f64 / (samples - 1) as f64).collect();
    let defects = xs
        .par_iter()
        .map(|&x| {
            let tau = ComplexTau::new(x, y)?;
            let v = mgf_eval(tau, k, DEFAULT_PROD_TOL)?;
            Ok((x, (v - near_arc_approximation(tau.tau(), k)).norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_defect, worst_x) = argmax(&defects);
    let nf = n as f64;
    let scale = (-PI * nf.sqrt() / 6f64.sqrt()).exp() * nf.powf(1.25) / (k as f64).powi(3);
    Ok(NearReport {
        n,
        k,
        samples,
        max_defect,
        worst_x,
        normalized: max_defect * scale,
    })
}

/// Away-arc check after the regime guard.
pub fn lemma_away1_check(n: u64, k: u64, per_side: usize) -> Result<AwayReport> {
    require_regime(n, k)?;
    away1_defect(n, k, per_side)
}

/// Away-arc check for any n, k ≥ 1; empty when the major arc covers the circle.
pub fn away1_defect(n: u64, k: u64, per_side: usize) -> Result<AwayReport> {
    let y = saddle_height(n);
    let a = (arc_constant() * y).min(0.5);
    let steps = per_side + 1;
    let mut xs = Vec::with_capacity(2 * (per_side + 2));
    for i in 0..=steps {
        let x = a + (0.5 - a) * i as f64 / steps as f64;
        xs.push(-x);
        xs.push(x);
    }
    let values = xs
        .par_iter()
        .map(|&x| {
            let tau = ComplexTau::new(x, y)?;
            Ok((x, mgf_eval(tau, k, DEFAULT_PROD_TOL)?.norm(), mgf_numerator(tau.q(), k).norm()))
        })
        .collect::<Result<Vec<(f64, f64, f64)>>>()?;
    let (max_abs, worst_x) = argmax(&values.iter().map(|&(x, v, _)| (x, v)).collect::<Vec<_>>());
    let max_numerator = values.iter().map(|v| v.2).fold(0.0, f64::max);
    let nf = n as f64;
    let scale = nf.powf(0.25) * (-PI * nf.sqrt() / (2.0 * 6f64.sqrt())).exp() / k as f64;
    let at_half = mgf_eval(ComplexTau::new(0.5, y)?, k, DEFAULT_PROD_TOL)?.norm();
    let major_peak = mgf_eval(ComplexTau::new(0.0, y)?, k, DEFAULT_PROD_TOL)?.norm();
    Ok(AwayReport {
        n,
        k,
        samples: xs.len(),
        max_abs,
        worst_x,
        normalized: max_abs * scale,
        max_numerator,
        at_half,
        major_peak,
    })
}

/// Near-arc point value `|𝓜_k − approximation|` at τ, for diagnostics.
pub fn near_defect_at(tau: ComplexTau, k: u64) -> Result<f64> {
    let v: Complex64 = mgf_eval(tau, k, DEFAULT_PROD_TOL)?;
    Ok((v - near_arc_approximation(tau.tau(), k)).norm())
}
