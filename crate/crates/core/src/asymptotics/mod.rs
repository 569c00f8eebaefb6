//! Floating-point side: main terms, ratio tables and the numerical pieces
//! of the circle method.
//!
//! Exact values reach e^{257} at n = 10⁴, so every comparison against a
//! main term happens on logarithms through [`LogMagnitude`].

mod bessel;
mod circle;
mod lemmas;
mod mgf;
mod quadrature;
mod wright;

use std::f64::consts::{LN_2, PI};
use std::io;

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::partition::SeqTable;
use crate::truncated::{self, TruncatedFamily};

pub use bessel::{bessel_i, bessel_i_asymptotic, bessel_i_half_integer, bessel_i_series};
pub use circle::{arc_constant, circle_method_mk, saddle_height, CircleReport, ContourSpec, CIRCLE_MAX_N};
pub use lemmas::{
    away1_defect, lemma_away1_check, lemma_near1_check, near1_defect, near_defect_at, AwayReport, NearReport,
    AWAY_SAMPLES_PER_SIDE, NEAR_SAMPLES,
};
pub use mgf::{
    eta_inversion_check, euler_product_q, mgf_eval, mgf_eval_q, mgf_numerator, near_arc_approximation, ComplexTau,
    EtaReport, DEFAULT_PROD_TOL,
};
pub use quadrature::{integrate_composite, GaussLegendre, QuadEstimate, QuadOptions, GL_ORDER};
pub use wright::{wright_bessel_defect, wright_p, wright_p_with, WrightEstimate};

/// Sign and natural log of the absolute value of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogMagnitude {
    pub sign: i8,
    pub ln_abs: f64,
}

impl LogMagnitude {
    pub const ZERO: LogMagnitude = LogMagnitude {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn positive(ln_abs: f64) -> Self {
        LogMagnitude { sign: 1, ln_abs }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogMagnitude {
                sign: if x > 0.0 { 1 } else { -1 },
                ln_abs: x.abs().ln(),
            }
        }
    }

    /// Uses the top 53 bits, so the error is a rounding of the mantissa only.
    pub fn from_bigint(x: &BigInt) -> Self {
        let sign = match x.sign() {
            Sign::NoSign => return Self::ZERO,
            Sign::Plus => 1,
            Sign::Minus => -1,
        };
        let mag = x.magnitude();
        let bits = mag.bits();
        let shift = bits.saturating_sub(53);
        let top = (mag >> shift).to_f64().expect("53-bit value fits in f64");
        LogMagnitude {
            sign,
            ln_abs: top.ln() + shift as f64 * LN_2,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Back to f64; overflows to ±∞ past e^{709}.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.ln_abs.exp()
    }
}

/// ln of (π/(12√2)) k n^{-3/2} e^{2π√(n/6)}.
pub fn main_term_mk(n: u64, k: u64) -> LogMagnitude {
    let (n, k) = (n as f64, k as f64);
    LogMagnitude::positive((PI / (12.0 * 2f64.sqrt())).ln() + k.ln() - 1.5 * n.ln() + 2.0 * PI * (n / 6.0).sqrt())
}

/// ln of (1/8) n^{-1} e^{π√n}; independent of k.
pub fn main_term_mkbar(n: u64, _k: u64) -> LogMagnitude {
    let n = n as f64;
    LogMagnitude::positive(-(8f64.ln()) - n.ln() + PI * n.sqrt())
}

/// ln of (π/16) k n^{-3/2} e^{π√(n/2)}.
pub fn main_term_mp(n: u64, k: u64) -> LogMagnitude {
    let (n, k) = (n as f64, k as f64);
    LogMagnitude::positive((PI / 16.0).ln() + k.ln() - 1.5 * n.ln() + PI * (n / 2.0).sqrt())
}

/// ln of 1/(4√3 n) e^{2π√(n/6)}.
pub fn hardy_ramanujan_p(n: u64) -> LogMagnitude {
    let n = n as f64;
    LogMagnitude::positive(-(4.0 * 3f64.sqrt()).ln() - n.ln() + 2.0 * PI * (n / 6.0).sqrt())
}

pub fn main_term(family: TruncatedFamily, n: u64, k: u64) -> LogMagnitude {
    match family {
        TruncatedFamily::Mk => main_term_mk(n, k),
        TruncatedFamily::MkBar => main_term_mkbar(n, k),
        TruncatedFamily::MPk => main_term_mp(n, k),
    }
}

/// `k⁸ ≤ n` for M_k and MP_k, `k¹² ≤ n` for M̄_k.
pub fn regime_check(n: u64, k: u64, family: TruncatedFamily) -> bool {
    let exp = match family {
        TruncatedFamily::Mk | TruncatedFamily::MPk => 8,
        TruncatedFamily::MkBar => 12,
    };
    match u128::from(k).checked_pow(exp) {
        Some(bound) => bound <= u128::from(n),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub family: TruncatedFamily,
    pub n: u64,
    pub k: u64,
    pub exact: LogMagnitude,
    pub main: LogMagnitude,
    /// exact/main − 1, or `None` when the exact value is not positive.
    pub rel_dev: Option<f64>,
    pub in_regime: bool,
}

impl RatioReport {
    pub fn new(family: TruncatedFamily, n: u64, k: u64, exact: &BigInt) -> Self {
        let exact = LogMagnitude::from_bigint(exact);
        let main = main_term(family, n, k);
        let rel_dev = (exact.sign > 0).then(|| (exact.ln_abs - main.ln_abs).exp_m1());
        RatioReport {
            family,
            n,
            k,
            exact,
            main,
            rel_dev,
            in_regime: regime_check(n, k, family),
        }
    }
}

/// One row per (n, k), n-major in input order.
pub fn ratio_table(family: TruncatedFamily, ns: &[u64], ks: &[u64], table: &SeqTable) -> Result<Vec<RatioReport>> {
    table.expect_family(family.base())?;
    let pairs: Vec<(u64, u64)> = ns.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).collect();
    pairs
        .par_iter()
        .map(|&(n, k)| {
            let exact = match family {
                TruncatedFamily::Mk => truncated::mk(n as usize, k as usize, table),
                TruncatedFamily::MkBar => truncated::mkbar(n as usize, k as usize, table),
                TruncatedFamily::MPk => truncated::mp(n as usize, k as usize, table),
            }?;
            Ok(RatioReport::new(family, n, k, &exact))
        })
        .collect()
}

/// True when |rel_dev| strictly decreases along the rows, which must all be defined.
pub fn is_converging(rows: &[RatioReport]) -> bool {
    let devs: Option<Vec<f64>> = rows.iter().map(|r| r.rel_dev.map(f64::abs)).collect();
    match devs {
        Some(d) => d.windows(2).all(|w| w[1] < w[0]),
        None => false,
    }
}

pub(crate) fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub fn write_ratio_csv<W: io::Write>(rows: &[RatioReport], out: &mut W) -> io::Result<()> {
    writeln!(out, "family,n,k,ln_exact,ln_main,rel_dev,in_regime")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.family,
            r.n,
            r.k,
            fmt_f64(r.exact.ln_abs),
            fmt_f64(r.main.ln_abs),
            fmt_f64(r.rel_dev.unwrap_or(f64::NAN)),
            r.in_regime
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Family;
    use proptest::prelude::*;

    #[test]
    fn log_magnitude_of_big_integers() {
        let x = BigInt::from(190_569_292u64);
        let lm = LogMagnitude::from_bigint(&x);
        assert_eq!(lm.sign, 1);
        assert!((lm.ln_abs - 190_569_292f64.ln()).abs() < 1e-15);
        let big: BigInt = BigInt::from(3) << 1000usize;
        let lm = LogMagnitude::from_bigint(&-big);
        assert_eq!(lm.sign, -1);
        assert!((lm.ln_abs - (3f64.ln() + 1000.0 * LN_2)).abs() < 1e-12);
        assert_eq!(LogMagnitude::from_bigint(&BigInt::from(0)), LogMagnitude::ZERO);
        assert!(LogMagnitude::from_bigint(&BigInt::from(0)).ln_abs.is_infinite());
    }

    #[test]
    fn main_term_relations() {
        for n in [10u64, 100, 10_000] {
            assert!((main_term_mk(n, 6).ln_abs - main_term_mk(n, 3).ln_abs - LN_2).abs() < 1e-12);
            assert!((main_term_mp(n, 4).ln_abs - main_term_mp(n, 2).ln_abs - LN_2).abs() < 1e-12);
            assert_eq!(main_term_mkbar(n, 1), main_term_mkbar(n, 5));
            let ratio = main_term_mk(n, 1).ln_abs - hardy_ramanujan_p(n).ln_abs;
            let expect = (PI / (12.0 * 2f64.sqrt()) * (n as f64).powf(-0.5) * 4.0 * 3f64.sqrt()).ln();
            assert!((ratio - expect).abs() < 1e-12);
        }
        let n = 1e4f64;
        assert!((main_term_mkbar(10_000, 1).ln_abs - ((0.125f64).ln() - n.ln() + 100.0 * PI)).abs() < 1e-12);
        let mp = (PI / 16.0).ln() - 1.5 * n.ln() + PI * 100.0 / 2f64.sqrt();
        assert!((main_term_mp(10_000, 1).ln_abs - mp).abs() < 1e-12);
    }

    #[test]
    fn main_term_mk_increases_in_n() {
        for k in 1..=3 {
            for n in 1..2000 {
                assert!(main_term_mk(n + 1, k).ln_abs > main_term_mk(n, k).ln_abs, "n = {n}");
            }
        }
    }

    #[test]
    fn regime_examples() {
        assert!(regime_check(256, 2, TruncatedFamily::Mk));
        assert!(!regime_check(255, 2, TruncatedFamily::Mk));
        assert!(regime_check(4096, 2, TruncatedFamily::MkBar));
        assert!(!regime_check(4095, 2, TruncatedFamily::MkBar));
        assert!(regime_check(1, 1, TruncatedFamily::MPk));
        assert!(!regime_check(u64::MAX, u64::MAX, TruncatedFamily::Mk));
    }

    #[test]
    fn ratio_rows_and_zero_values() {
        let table = SeqTable::build(Family::P, 200);
        let rows = ratio_table(TruncatedFamily::Mk, &[2, 7, 100], &[1, 2], &table).unwrap();
        let keys: Vec<(u64, u64)> = rows.iter().map(|r| (r.n, r.k)).collect();
        assert_eq!(keys, vec![(2, 1), (2, 2), (7, 1), (7, 2), (100, 1), (100, 2)]);
        // M_2(2) = 0.
        assert_eq!(rows[1].exact, LogMagnitude::ZERO);
        assert_eq!(rows[1].rel_dev, None);
        assert!(rows[4].rel_dev.unwrap().is_finite());
        assert!(!rows[3].in_regime);
        assert!(ratio_table(TruncatedFamily::MkBar, &[2], &[1], &table).is_err());
        assert!(ratio_table(TruncatedFamily::Mk, &[201], &[1], &table).is_err());
    }

    #[test]
    fn ratio_csv_format() {
        let table = SeqTable::build(Family::P, 10);
        let rows = ratio_table(TruncatedFamily::Mk, &[10], &[1, 3], &table).unwrap();
        let mut buf = Vec::new();
        write_ratio_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "family,n,k,ln_exact,ln_main,rel_dev,in_regime");
        assert!(lines[1].starts_with("mk,10,1,2.4849066497880004e0,"));
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("mk,10,3,"));
    }

    proptest! {
        #[test]
        fn from_bigint_matches_f64_for_small_values(x in -(1i64 << 52)..(1i64 << 52)) {
            let lm = LogMagnitude::from_bigint(&BigInt::from(x));
            prop_assert_eq!(lm, LogMagnitude::from_f64(x as f64));
        }
    }
}
