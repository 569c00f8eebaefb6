//! Both sides of the truncated theta-series identities, as truncated series.
//!
//! * `𝓜_k(q)` in closed form, `(-1)^{k-1}/(q;q)_∞ · Σ_{j<k} (-1)^j q^{j(3j+1)/2}(1 - q^{2j+1})`,
//!   and in the manifestly nonnegative form
//!   `(-1)^{k-1} + Σ_{n≥k} q^{C(k,2)+(k+1)n}/(q;q)_n · [n-1, k-1]_q`.
//! * The square-exponent identity for overpartitions,
//!   `(-q;q)_∞/(q;q)_∞ Σ_{|j|≤k} (-1)^j q^{j²}
//!    = 1 + (-1)^k Σ_{n≥k+1} (-q;q)_k (-1;q)_{n-k} q^{(k+1)n}/(q;q)_n [n-1, k]_q`.
//! * The triangular-exponent identity for pod,
//!   `(-q;q²)_∞/(q²;q²)_∞ Σ_{j<k} (-1)^j q^{j(2j+1)}(1 - q^{2j+1})
//!    = 1 + (-1)^{k-1} Σ_{n≥k} (-q;q²)_k (-q;q²)_{n-k} q^{2(k+1)n-k}/(q²;q²)_n [n-1, k-1]_{q²}`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::product::{pochhammer, q_binom, PochhammerLength, QMonomial};
use super::{series_inverse, series_mul, CoeffSeries};
use crate::error::{Error, Result};

fn sign(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// `1/(q;q)_∞` through series inversion of the Euler product.
fn inverse_euler(base: usize, order: usize) -> Result<CoeffSeries> {
    series_inverse(&pochhammer(QMonomial::q_pow(base), base, PochhammerLength::Infinite, order)?)
}

/// `Σ_{j<k} (-1)^j (q^{a_j} - q^{b_j})` for exponent pairs produced by `exps`.
fn alternating_pairs(k: usize, order: usize, exps: impl Fn(usize) -> (usize, usize)) -> CoeffSeries {
    let mut s = CoeffSeries::zero(order);
    for j in 0..k {
        let (a, b) = exps(j);
        let sg = sign(j);
        if a <= order {
            s.coeffs[a] += sg;
        }
        if b <= order {
            s.coeffs[b] -= sg;
        }
    }
    s
}

/// Closed form of `𝓜_k(q)`; coefficient n is M_k(n), with M_k(0) = (-1)^{k-1}.
pub fn mk_gf_closed(k: usize, order: usize) -> Result<CoeffSeries> {
    require_k(k)?;
    let numerator = alternating_pairs(k, order, |j| (j * (3 * j + 1) / 2, (j + 1) * (3 * j + 2) / 2));
    let s = series_mul(&numerator, &inverse_euler(1, order)?)?;
    Ok(s.scale(&BigInt::from(sign(k - 1))))
}

/// `𝓜_k(q)` as `(-1)^{k-1}` plus a sum of series with nonnegative coefficients.
pub fn mk_gf_positive(k: usize, order: usize) -> Result<CoeffSeries> {
    require_k(k)?;
    let mut total = CoeffSeries::monomial(sign(k - 1), 0, order);
    // 1/(q;q)_n, grown one factor per step.
    let mut inv_poch = CoeffSeries::one(order);
    for n in 1usize.. {
        let lead = k * (k - 1) / 2 + (k + 1) * n;
        if lead > order {
            break;
        }
        inv_poch.div_one_minus(n);
        if n < k {
            continue;
        }
        let rest = order - lead;
        let binom = q_binom(n as i64 - 1, k as i64 - 1, 1, rest)?;
        let term = series_mul(&inv_poch.truncated(rest), &binom.value)?;
        total.add_shifted(&term, lead);
    }
    Ok(total)
}

/// Left and right sides of the square-exponent (overpartition) identity.
///
/// Coefficient n ≥ 1 of the left side is `(-1)^k M̄_k(n)`.
pub fn guozeng_square_sides(k: usize, order: usize) -> Result<(CoeffSeries, CoeffSeries)> {
    require_k(k)?;
    let mut theta = CoeffSeries::zero(order);
    for j in -(k as i64)..=k as i64 {
        let e = (j * j) as usize;
        if e <= order {
            theta.coeffs[e] += sign(j.unsigned_abs() as usize);
        }
    }
    let over = series_mul(
        &pochhammer(QMonomial::neg_q_pow(1), 1, PochhammerLength::Infinite, order)?,
        &inverse_euler(1, order)?,
    )?;
    let lhs = series_mul(&over, &theta)?;

    let mut rhs = CoeffSeries::zero(order);
    let mut inv_poch = CoeffSeries::one(order);
    let prefix = pochhammer(QMonomial::neg_q_pow(1), 1, PochhammerLength::Finite(k), order)?;
    for n in 1usize.. {
        let lead = (k + 1) * n;
        if lead > order {
            break;
        }
        inv_poch.div_one_minus(n);
        if n < k + 1 {
            continue;
        }
        let rest = order - lead;
        let tail = pochhammer(QMonomial::new(-1, 0), 1, PochhammerLength::Finite(n - k), rest)?;
        let binom = q_binom(n as i64 - 1, k as i64, 1, rest)?;
        let mut term = series_mul(&prefix.truncated(rest), &tail)?;
        term = series_mul(&term, &inv_poch.truncated(rest))?;
        term = series_mul(&term, &binom.value)?;
        rhs.add_shifted(&term, lead);
    }
    let mut rhs = rhs.scale(&BigInt::from(sign(k)));
    rhs.coeffs[0] += 1;
    Ok((lhs, rhs))
}

/// Left and right sides of the triangular-exponent (pod) identity.
///
/// Coefficient n ≥ 1 of the left side is `(-1)^{k-1} MP_k(n)`.
pub fn guozeng_pod_sides(k: usize, order: usize) -> Result<(CoeffSeries, CoeffSeries)> {
    require_k(k)?;
    let numerator = alternating_pairs(k, order, |j| (j * (2 * j + 1), (j + 1) * (2 * j + 1)));
    let pod = series_mul(
        &pochhammer(QMonomial::neg_q_pow(1), 2, PochhammerLength::Infinite, order)?,
        &inverse_euler(2, order)?,
    )?;
    let lhs = series_mul(&pod, &numerator)?;

    let mut rhs = CoeffSeries::zero(order);
    let mut inv_poch = CoeffSeries::one(order);
    let prefix = pochhammer(QMonomial::neg_q_pow(1), 2, PochhammerLength::Finite(k), order)?;
    for n in 1usize.. {
        let lead = 2 * (k + 1) * n - k;
        if lead > order {
            break;
        }
        inv_poch.div_one_minus(2 * n);
        if n < k {
            continue;
        }
        let rest = order - lead;
        let tail = pochhammer(QMonomial::neg_q_pow(1), 2, PochhammerLength::Finite(n - k), rest)?;
        let binom = q_binom(n as i64 - 1, k as i64 - 1, 2, rest)?;
        let mut term = series_mul(&prefix.truncated(rest), &tail)?;
        term = series_mul(&term, &inv_poch.truncated(rest))?;
        term = series_mul(&term, &binom.value)?;
        rhs.add_shifted(&term, lead);
    }
    let mut rhs = rhs.scale(&BigInt::from(sign(k - 1)));
    rhs.coeffs[0] += 1;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    /// Closed form of 𝓜_k(q) against its nonnegative form.
    MkClosedVsPositive,
    /// Square-exponent overpartition identity.
    GuoZengSquare,
    /// Triangular-exponent pod identity.
    GuoZengPod,
}

impl Identity {
    pub const ALL: [Identity; 3] = [Identity::MkClosedVsPositive, Identity::GuoZengSquare, Identity::GuoZengPod];

    pub fn name(self) -> &'static str {
        match self {
            Identity::MkClosedVsPositive => "mk_closed_vs_positive",
            Identity::GuoZengSquare => "guozeng_square",
            Identity::GuoZengPod => "guozeng_pod",
        }
    }

    pub fn sides(self, k: usize, order: usize) -> Result<(CoeffSeries, CoeffSeries)> {
        match self {
            Identity::MkClosedVsPositive => Ok((mk_gf_closed(k, order)?, mk_gf_positive(k, order)?)),
            Identity::GuoZengSquare => guozeng_square_sides(k, order),
            Identity::GuoZengPod => guozeng_pod_sides(k, order),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Outcome of comparing both sides of one identity for one k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub k: usize,
    pub order: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn compare_sides(identity: Identity, k: usize, lhs: &CoeffSeries, rhs: &CoeffSeries) -> Result<IdentityCheck> {
    let mismatch = lhs.first_mismatch(rhs)?.map(|e| Mismatch {
        exponent: e,
        lhs: lhs.coeff(e).clone(),
        rhs: rhs.coeff(e).clone(),
    });
    Ok(IdentityCheck {
        identity,
        k,
        order: lhs.trunc_order(),
        mismatch,
    })
}

pub fn check_identity(identity: Identity, k: usize, order: usize) -> Result<IdentityCheck> {
    let (lhs, rhs) = identity.sides(k, order)?;
    compare_sides(identity, k, &lhs, &rhs)
}

/// Every identity for `k = 1..=k_max`, ordered by identity then k.
pub fn verify_identities(k_max: usize, order: usize) -> Result<Vec<IdentityCheck>> {
    let jobs: Vec<(Identity, usize)> = Identity::ALL
        .iter()
        .flat_map(|&id| (1..=k_max).map(move |k| (id, k)))
        .collect();
    jobs.par_iter().map(|&(id, k)| check_identity(id, k, order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{build_overp_table, build_p_table, build_pod_table};

    fn at(s: &CoeffSeries, e: usize) -> i64 {
        i64::try_from(s.coeff(e)).unwrap()
    }

    #[test]
    fn constant_terms_follow_sign_convention() {
        assert_eq!(at(&mk_gf_closed(1, 10).unwrap(), 0), 1);
        assert_eq!(at(&mk_gf_closed(2, 10).unwrap(), 0), -1);
        assert_eq!(at(&mk_gf_positive(2, 10).unwrap(), 0), -1);
        for k in 1..4 {
            let (l, r) = guozeng_square_sides(k, 5).unwrap();
            assert_eq!((at(&l, 0), at(&r, 0)), (1, 1));
            let (l, r) = guozeng_pod_sides(k, 5).unwrap();
            assert_eq!((at(&l, 0), at(&r, 0)), (1, 1));
        }
    }

    #[test]
    fn closed_form_k1_is_p_difference() {
        let s = mk_gf_closed(1, 10).unwrap();
        let p = build_p_table(10);
        for n in 1..=10 {
            assert_eq!(s.coeff(n), &(&p.values()[n] - &p.values()[n - 1]));
        }
        assert_eq!(at(&s, 5), 2);
    }

    #[test]
    fn positive_form_examples() {
        assert_eq!(mk_gf_positive(1, 3).unwrap(), mk_gf_closed(1, 3).unwrap());
        let s = mk_gf_positive(2, 20).unwrap();
        assert!((1..7).all(|m| at(&s, m) == 0));
        assert_eq!(at(&s, 7), 1);
        for k in 1..=5 {
            let s = mk_gf_positive(k, 60).unwrap();
            let first = k * (3 * k + 1) / 2;
            assert!((1..first.min(61)).all(|m| at(&s, m) == 0), "k = {k}");
        }
    }

    #[test]
    fn identities_hold_for_small_k() {
        for k in 1..=4 {
            for id in Identity::ALL {
                let c = check_identity(id, k, 60).unwrap();
                assert!(c.holds(), "{id} k={k}: {:?}", c.mismatch);
            }
        }
    }

    #[test]
    fn degree_zero_is_consistent() {
        for id in Identity::ALL {
            assert!(check_identity(id, 3, 0).unwrap().holds());
        }
    }

    #[test]
    fn base_families_match_product_forms() {
        let order = 80;
        let p = build_p_table(order);
        let inv = inverse_euler(1, order).unwrap();
        assert_eq!(inv.coeffs(), p.values());

        let over = series_mul(
            &pochhammer(QMonomial::neg_q_pow(1), 1, PochhammerLength::Infinite, order).unwrap(),
            &inv,
        )
        .unwrap();
        assert_eq!(over.coeffs(), build_overp_table(order).values());

        let pod = series_mul(
            &pochhammer(QMonomial::neg_q_pow(1), 2, PochhammerLength::Infinite, order).unwrap(),
            &inverse_euler(2, order).unwrap(),
        )
        .unwrap();
        assert_eq!(pod.coeffs(), build_pod_table(order).values());
    }

    #[test]
    fn corrupted_side_reports_first_bad_exponent() {
        let good = mk_gf_closed(2, 30).unwrap();
        let mut bad = good.clone();
        bad.coeffs[17] += 1;
        let c = compare_sides(Identity::MkClosedVsPositive, 2, &good, &bad).unwrap();
        let m = c.mismatch.unwrap();
        assert_eq!(m.exponent, 17);
        assert_eq!(m.rhs, &m.lhs + 1);
    }

    #[test]
    fn k_zero_rejected() {
        assert!(mk_gf_closed(0, 5).is_err());
        assert!(guozeng_pod_sides(0, 5).is_err());
    }
}
