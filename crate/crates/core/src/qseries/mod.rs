//! Dense truncated formal power series in q with big-integer coefficients.
//!
//! A [`CoeffSeries`] of truncation order N stores the coefficients of
//! q⁰..q^N and every operation discards anything above degree N. Products
//! are schoolbook; series division is multiplication by an inverse.

mod identities;
mod product;

use std::io;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use identities::{
    check_identity, compare_sides, guozeng_pod_sides, guozeng_square_sides, mk_gf_closed, mk_gf_positive,
    verify_identities, Identity, IdentityCheck, Mismatch,
};
pub use product::{
    gaussian_binomial_poly, pochhammer, poly_div_exact, q_binom, PochhammerLength, QBinomial, QMonomial,
};

static ZERO: BigInt = BigInt::ZERO;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffSeries {
    coeffs: Vec<BigInt>,
}

impl CoeffSeries {
    pub fn zero(order: usize) -> Self {
        CoeffSeries {
            coeffs: vec![BigInt::ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `c·q^e`, or the zero series when `e` exceeds the order.
    pub fn monomial(c: impl Into<BigInt>, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c.into();
        }
        s
    }

    /// Takes ownership of `coeffs` as q⁰..q^N; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least a constant term".into()));
        }
        Ok(CoeffSeries { coeffs })
    }

    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` terms.
    pub fn from_slice<T: Clone + Into<BigInt>>(coeffs: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (dst, c) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = c.clone().into();
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`; zero above the truncation order.
    pub fn coeff(&self, e: usize) -> &BigInt {
        self.coeffs.get(e).unwrap_or(&ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same series at a lower (or equal) truncation order.
    pub fn truncated(&self, order: usize) -> Self {
        Self::from_slice(&self.coeffs, order)
    }

    pub fn neg(&self) -> Self {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        CoeffSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shifted(&self, e: usize) -> Self {
        let mut out = Self::zero(self.trunc_order());
        for (i, c) in self.coeffs.iter().enumerate() {
            match out.coeffs.get_mut(i + e) {
                Some(dst) => *dst = c.clone(),
                None => break,
            }
        }
        out
    }

    /// Adds `q^e · other` in place; terms past the order are dropped.
    /// `other` may have any truncation order.
    pub fn add_shifted(&mut self, other: &CoeffSeries, e: usize) {
        for (i, c) in other.coeffs.iter().enumerate() {
            match self.coeffs.get_mut(i + e) {
                Some(dst) => *dst += c,
                None => break,
            }
        }
    }

    /// In-place multiplication by `1 + c·q^d`.
    pub fn mul_binomial(&mut self, c: i64, d: usize) {
        if c == 0 {
            return;
        }
        if d == 0 {
            let f = BigInt::from(1 + c);
            self.coeffs.iter_mut().for_each(|x| *x *= &f);
            return;
        }
        for i in (d..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - d];
            if src.is_zero() {
                continue;
            }
            match c {
                1 => hi[0] += src,
                -1 => hi[0] -= src,
                _ => hi[0] += src * c,
            }
        }
    }

    /// In-place multiplication by `1/(1 - q^d)`, `d ≥ 1`.
    pub fn div_one_minus(&mut self, d: usize) {
        assert!(d >= 1, "1/(1 - q^0) is not a power series");
        for i in d..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - d];
        }
    }

    /// Lowest exponent where the two series differ.
    pub fn first_mismatch(&self, other: &CoeffSeries) -> Result<Option<usize>> {
        check_orders(self, other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b))
    }

    /// Writes `exponent,coefficient` rows under a header line.
    pub fn write_csv<W: io::Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "exponent,coefficient")?;
        for (e, c) in self.coeffs.iter().enumerate() {
            writeln!(out, "{e},{c}")?;
        }
        Ok(())
    }
}

fn check_orders(a: &CoeffSeries, b: &CoeffSeries) -> Result<()> {
    if a.trunc_order() != b.trunc_order() {
        return Err(Error::OrderMismatch {
            left: a.trunc_order(),
            right: b.trunc_order(),
        });
    }
    Ok(())
}

pub fn series_add(a: &CoeffSeries, b: &CoeffSeries) -> Result<CoeffSeries> {
    check_orders(a, b)?;
    Ok(CoeffSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    })
}

pub fn series_sub(a: &CoeffSeries, b: &CoeffSeries) -> Result<CoeffSeries> {
    check_orders(a, b)?;
    Ok(CoeffSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
    })
}

/// Truncated Cauchy product.
pub fn series_mul(a: &CoeffSeries, b: &CoeffSeries) -> Result<CoeffSeries> {
    check_orders(a, b)?;
    let n = a.trunc_order();
    let mut out = CoeffSeries::zero(n);
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=n - i].iter().enumerate() {
            if !bj.is_zero() {
                out.coeffs[i + j] += ai * bj;
            }
        }
    }
    Ok(out)
}

/// Multiplicative inverse of a series whose constant term is ±1.
pub fn series_inverse(a: &CoeffSeries) -> Result<CoeffSeries> {
    let a0 = &a.coeffs[0];
    if !(a0.abs().is_one()) {
        return Err(Error::NonUnitConstantTerm(a0.to_string()));
    }
    let negate = a0.is_negative();
    let n = a.trunc_order();
    let support: Vec<(usize, &BigInt)> = a.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
    b.push(a0.clone());
    for m in 1..=n {
        let mut acc = BigInt::ZERO;
        for &(i, ai) in support.iter().take_while(|(i, _)| *i <= m) {
            let bj = &b[m - i];
            if !bj.is_zero() {
                acc += ai * bj;
            }
        }
        // b_m = -a0⁻¹ Σ a_i b_{m-i}, and a0⁻¹ = a0.
        b.push(if negate { acc } else { -acc });
    }
    Ok(CoeffSeries { coeffs: b })
}
