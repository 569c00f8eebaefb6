//! Composite Gauss–Legendre quadrature with panel doubling.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points per panel.
pub const GL_ORDER: usize = 16;

/// Stopping rule for [`integrate_composite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Accept once two successive estimates differ by at most `tol` times
    /// the L1 mass `∫|f|` of the integrand.
    pub tol: f64,
    /// Node budget for a single level.
    pub max_nodes: usize,
    /// Panel count of the coarsest level.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tol: 1e-10,
            max_nodes: 1 << 20,
            initial_panels: 1,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions {
            tol,
            ..Default::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 || self.max_nodes == 0 || self.initial_panels == 0 {
            return Err(Error::InvalidArgument(format!("bad quadrature options {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub l1_mass: f64,
    /// Nodes used by the accepted level.
    pub nodes: usize,
    pub last_change: f64,
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 1..n {
        let p2 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p0) / (j + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 2);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 1..=order {
            let mut x = initial_root_guess(order, i);
            for _ in 0..100 {
                let (p, dp) = legendre(order, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(order, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    /// Integral over [a, b] split into `panels` equal panels, with the L1 mass.
    pub fn integrate_panels<F>(&self, f: &F, a: f64, b: f64, panels: usize) -> (Complex64, f64)
    where
        F: Fn(f64) -> Complex64,
    {
        let h = (b - a) / panels as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let v = f(mid + half * x) * (w * half);
                sum += v;
                mass += v.norm();
            }
        }
        (sum, mass)
    }
}

/// Tricomi's approximation to the i-th root (descending) of `P_n`.
pub(crate) fn initial_root_guess(n: usize, i: usize) -> f64 {
    (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos()
}

/// Integrates `f` over [a, b], doubling the panel count until the change
/// between levels falls below `tol · ∫|f|`.
pub fn integrate_composite<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadEstimate>
where
    F: Fn(f64) -> Complex64,
{
    opts.validate()?;
    let rule = GaussLegendre::new(GL_ORDER);
    let mut panels = opts.initial_panels;
    let (mut prev, _) = rule.integrate_panels(&f, a, b, panels);
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
        let (cur, mass) = rule.integrate_panels(&f, a, b, panels);
        last_change = (cur - prev).norm();
        if last_change <= opts.tol * mass {
            return Ok(QuadEstimate {
                value: cur,
                l1_mass: mass,
                nodes,
                last_change,
            });
        }
        prev = cur;
    }
}
