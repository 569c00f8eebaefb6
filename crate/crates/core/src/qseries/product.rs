use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CoeffSeries;
use crate::error::{Error, Result};

/// The `A = c·q^power` argument of a q-Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMonomial {
    pub coeff: i64,
    pub power: usize,
}

impl QMonomial {
    pub const fn new(coeff: i64, power: usize) -> Self {
        QMonomial { coeff, power }
    }

    /// `q^power`
    pub const fn q_pow(power: usize) -> Self {
        Self::new(1, power)
    }

    /// `-q^power`
    pub const fn neg_q_pow(power: usize) -> Self {
        Self::new(-1, power)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerLength {
    Finite(usize),
    Infinite,
}

/// `(A; q^base)_len = Π_{j<len} (1 - A q^{base·j})`, truncated at `order`.
///
/// Infinite products stop at the first factor whose q-term lies above the
/// truncation order; every later factor is 1 modulo q^{order+1}.
pub fn pochhammer(a: QMonomial, base: usize, len: PochhammerLength, order: usize) -> Result<CoeffSeries> {
    if base == 0 {
        return Err(Error::InvalidArgument("q-Pochhammer base must be q^b with b ≥ 1".into()));
    }
    let mut out = CoeffSeries::one(order);
    let count = match len {
        PochhammerLength::Finite(n) => n,
        PochhammerLength::Infinite => usize::MAX,
    };
    for j in 0..count {
        let e = a.power + base * j;
        if e > order {
            break;
        }
        out.mul_binomial(-a.coeff, e);
    }
    Ok(out)
}

/// Exact quotient of two polynomials (coefficient lists, lowest degree first).
///
/// Fails with [`Error::InexactDivision`] if the remainder is nonzero.
pub fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let den_deg = den
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
    let lead = &den[den_deg];
    let support: Vec<(usize, &BigInt)> = den[..den_deg].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();

    let mut rem: Vec<BigInt> = num.to_vec();
    let num_deg = match rem.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return Ok(vec![BigInt::ZERO]),
    };
    if num_deg < den_deg {
        return Err(Error::InexactDivision);
    }
    let mut quot = vec![BigInt::ZERO; num_deg - den_deg + 1];
    for shift in (0..quot.len()).rev() {
        let top = &rem[shift + den_deg];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return Err(Error::InexactDivision);
        }
        let qc = top / lead;
        for &(i, c) in &support {
            rem[shift + i] -= &qc * c;
        }
        rem[shift + den_deg] = BigInt::ZERO;
        quot[shift] = qc;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(quot)
}

fn poly_mul_one_minus(p: &mut Vec<BigInt>, d: usize) {
    let old_len = p.len();
    p.resize(old_len + d, BigInt::ZERO);
    for i in (d..p.len()).rev() {
        let (lo, hi) = p.split_at_mut(i);
        if !lo[i - d].is_zero() {
            hi[0] -= &lo[i - d];
        }
    }
}

/// The Gaussian binomial `[a, b]_q` as an untruncated polynomial.
///
/// Built as `Π_{i=1}^{b} (1 - q^{a-b+i}) / (1 - q^i)`; after step i the
/// partial product is `[a-b+i, i]_q`, so each division must be exact.
pub fn gaussian_binomial_poly(a: i64, b: i64) -> Result<Vec<BigInt>> {
    if b < 0 || b > a {
        return Ok(vec![BigInt::ZERO]);
    }
    let b = b.min(a - b) as usize;
    let a = a as usize;
    let mut poly = vec![BigInt::one()];
    for i in 1..=b {
        poly_mul_one_minus(&mut poly, a - b + i);
        let mut den = vec![BigInt::ZERO; i + 1];
        den[0] = BigInt::one();
        den[i] = -BigInt::one();
        poly = poly_div_exact(&poly, &den)?;
    }
    Ok(poly)
}

/// A Gaussian binomial in base `q^base`, as a truncated series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QBinomial {
    pub a: i64,
    pub b: i64,
    pub base: usize,
    pub value: CoeffSeries,
}

impl QBinomial {
    /// Degree in q of the untruncated polynomial; `None` for the zero case.
    pub fn degree(&self) -> Option<usize> {
        (self.b >= 0 && self.b <= self.a).then(|| (self.b * (self.a - self.b)) as usize * self.base)
    }
}

/// `[a, b]_{q^base}`: zero when `b < 0` or `b > a`, otherwise
/// `(q;q)_a / ((q;q)_b (q;q)_{a-b})` with q replaced by q^base.
pub fn q_binom(a: i64, b: i64, base: usize, order: usize) -> Result<QBinomial> {
    if base == 0 {
        return Err(Error::InvalidArgument("Gaussian binomial base must be q^b with b ≥ 1".into()));
    }
    let poly = gaussian_binomial_poly(a, b)?;
    let mut value = CoeffSeries::zero(order);
    for (i, c) in poly.into_iter().enumerate() {
        let e = i * base;
        if e > order {
            break;
        }
        value.coeffs[e] = c;
    }
    Ok(QBinomial { a, b, base, value })
}
