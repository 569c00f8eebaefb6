//! The truncated alternating sums and their counting interpretations.
//!
//! ```text
//! M_k(n)  = (-1)^{k-1} Σ_{j=0}^{k-1} (-1)^j [p(n - j(3j+1)/2) - p(n - j(3j+5)/2 - 1)]
//! M̄_k(n)  = (-1)^k     Σ_{j=-k}^{k}  (-1)^j p̄(n - j²)
//! MP_k(n) = (-1)^{k-1} Σ_{j=0}^{k-1} (-1)^j [pod(n - j(2j+1)) - pod(n - (j+1)(2j+1))]
//! ```
//!
//! Sequence values at negative arguments are zero. At n = 0 the functions
//! return the raw sums, which are the generating-function constant terms
//! (`(-1)^{k-1}`, `(-1)^k`, `(-1)^{k-1}`) rather than counts.

use std::fmt;
use std::io;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Family, PartitionMode, SeqTable, POD_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruncatedFamily {
    #[serde(rename = "mk")]
    Mk,
    #[serde(rename = "mkbar")]
    MkBar,
    #[serde(rename = "mp")]
    MPk,
}

impl TruncatedFamily {
    pub const ALL: [TruncatedFamily; 3] = [TruncatedFamily::Mk, TruncatedFamily::MkBar, TruncatedFamily::MPk];

    pub fn name(self) -> &'static str {
        match self {
            TruncatedFamily::Mk => "mk",
            TruncatedFamily::MkBar => "mkbar",
            TruncatedFamily::MPk => "mp",
        }
    }

    /// The sequence the sum is built from.
    pub fn base(self) -> Family {
        match self {
            TruncatedFamily::Mk => Family::P,
            TruncatedFamily::MkBar => Family::OverP,
            TruncatedFamily::MPk => Family::Pod,
        }
    }

    /// Largest n the brute-force counter accepts.
    pub fn oracle_cap(self) -> usize {
        match self {
            TruncatedFamily::Mk => PartitionMode::Plain.cap(),
            TruncatedFamily::MkBar => PartitionMode::Over.cap(),
            TruncatedFamily::MPk => POD_CAP,
        }
    }
}

impl fmt::Display for TruncatedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TruncatedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mk" => Ok(TruncatedFamily::Mk),
            "mkbar" => Ok(TruncatedFamily::MkBar),
            "mp" | "mpk" => Ok(TruncatedFamily::MPk),
            other => Err(Error::InvalidArgument(format!("unknown truncated-sum family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedSumQuery {
    family: TruncatedFamily,
    n: usize,
    k: usize,
}

impl TruncatedSumQuery {
    pub fn new(family: TruncatedFamily, n: usize, k: usize) -> Result<Self> {
        require_k(k)?;
        Ok(TruncatedSumQuery { family, n, k })
    }

    pub fn family(&self) -> TruncatedFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Exact value from a table of the family's base sequence.
    pub fn evaluate(&self, table: &SeqTable) -> Result<BigInt> {
        match self.family {
            TruncatedFamily::Mk => mk(self.n, self.k, table),
            TruncatedFamily::MkBar => mkbar(self.n, self.k, table),
            TruncatedFamily::MPk => mp(self.n, self.k, table),
        }
    }

    /// Brute-force count of the partitions the value enumerates.
    pub fn oracle(&self) -> Result<u64> {
        match self.family {
            TruncatedFamily::Mk => mk_oracle(self.n, self.k),
            TruncatedFamily::MkBar => mkbar_oracle(self.n, self.k),
            TruncatedFamily::MPk => mp_oracle(self.n, self.k),
        }
    }
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn check_table(n: usize, k: usize, table: &SeqTable, family: Family) -> Result<()> {
    require_k(k)?;
    table.expect_family(family)?;
    if n > table.max_n() {
        return Err(Error::TableTooSmall {
            family,
            max_n: table.max_n(),
            requested: n,
        });
    }
    Ok(())
}

fn apply_sign(v: BigInt, exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `M_k(n)` from a table of p.
pub fn mk(n: usize, k: usize, table: &SeqTable) -> Result<BigInt> {
    check_table(n, k, table, Family::P)?;
    let n = n as i64;
    let mut acc = BigInt::ZERO;
    for j in 0..k as i64 {
        let lo = n - j * (3 * j + 1) / 2;
        if lo < 0 {
            break;
        }
        let hi = n - j * (3 * j + 5) / 2 - 1;
        let term = table.value(lo)? - table.value(hi)?;
        acc += apply_sign(term, j as usize);
    }
    Ok(apply_sign(acc, k - 1))
}

/// `M̄_k(n)` from a table of p̄.
pub fn mkbar(n: usize, k: usize, table: &SeqTable) -> Result<BigInt> {
    check_table(n, k, table, Family::OverP)?;
    let n = n as i64;
    let mut acc = table.value(n)?.clone();
    for j in 1..=k as i64 {
        let arg = n - j * j;
        if arg < 0 {
            break;
        }
        // j and -j contribute equally.
        let twice = table.value(arg)? * 2;
        acc += apply_sign(twice, j as usize);
    }
    Ok(apply_sign(acc, k))
}

/// `MP_k(n)` from a table of pod.
pub fn mp(n: usize, k: usize, table: &SeqTable) -> Result<BigInt> {
    check_table(n, k, table, Family::Pod)?;
    let n = n as i64;
    let mut acc = BigInt::ZERO;
    for j in 0..k as i64 {
        let lo = n - j * (2 * j + 1);
        if lo < 0 {
            break;
        }
        let hi = n - (j + 1) * (2 * j + 1);
        let term = table.value(lo)? - table.value(hi)?;
        acc += apply_sign(term, j as usize);
    }
    Ok(apply_sign(acc, k - 1))
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Partitions of n in which k is the least positive integer that is not a
/// part, and which have more parts above k than below k.
pub fn mk_oracle(n: usize, k: usize) -> Result<u64> {
    require_k(k)?;
    let k = k as u32;
    let mut count = 0;
    for p in enumerate_partitions(n, PartitionMode::Plain)? {
        if p.contains(k) || !(1..k).all(|i| p.contains(i)) {
            continue;
        }
        let above = p.parts().iter().filter(|&&x| x > k).count();
        let below = p.parts().iter().filter(|&&x| x < k).count();
        if above > below {
            count += 1;
        }
    }
    Ok(count)
}

/// Overpartitions of n whose smallest part exceeding k occurs at least
/// k + 1 times.
pub fn mkbar_oracle(n: usize, k: usize) -> Result<u64> {
    require_k(k)?;
    let k32 = k as u32;
    let mut count = 0;
    for p in enumerate_partitions(n, PartitionMode::Over)? {
        if let Some(first) = p.smallest_part_above(k32) {
            if p.multiplicity(first) > k {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Partitions of n whose smallest part exceeding 2k - 1 is odd and occurs
/// exactly k times, with every other odd part occurring at most once.
///
/// The empty partition has no such part and is never counted.
pub fn mp_oracle(n: usize, k: usize) -> Result<u64> {
    require_k(k)?;
    check_cap(n, POD_CAP)?;
    let bound = 2 * k as u32 - 1;
    let mut count = 0;
    for p in enumerate_partitions(n, PartitionMode::Plain)? {
        let Some(first) = p.smallest_part_above(bound) else {
            continue;
        };
        if first % 2 == 0 || p.multiplicity(first) != k {
            continue;
        }
        let others_distinct = p
            .parts()
            .windows(2)
            .all(|w| !(w[0] == w[1] && w[0] % 2 == 1 && w[0] != first));
        if others_distinct {
            count += 1;
        }
    }
    Ok(count)
}

/// One cell of an exported (family, n, k) grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridValue {
    pub family: TruncatedFamily,
    pub n: usize,
    pub k: usize,
    pub value: BigInt,
}

/// Evaluates `family` on `ns × ks` in row-major (n, then k) order.
pub fn evaluate_grid(family: TruncatedFamily, ns: &[usize], ks: &[usize], table: &SeqTable) -> Result<Vec<GridValue>> {
    let mut out = Vec::with_capacity(ns.len() * ks.len());
    for &n in ns {
        for &k in ks {
            let value = TruncatedSumQuery::new(family, n, k)?.evaluate(table)?;
            out.push(GridValue { family, n, k, value });
        }
    }
    Ok(out)
}

/// Writes `family,n,k,value` rows under a header line.
pub fn write_grid_csv<W: io::Write>(rows: &[GridValue], out: &mut W) -> io::Result<()> {
    writeln!(out, "family,n,k,value")?;
    for r in rows {
        writeln!(out, "{},{},{},{}", r.family, r.n, r.k, r.value)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{build_overp_table, build_p_table, build_pod_table};

    fn int(v: BigInt) -> i64 {
        i64::try_from(v).unwrap()
    }

    #[test]
    fn mk_examples() {
        let p = build_p_table(60);
        assert_eq!(int(mk(5, 1, &p).unwrap()), 2);
        assert_eq!(int(mk(7, 2, &p).unwrap()), 1);
        for k in 1..6 {
            assert_eq!(int(mk(0, k, &p).unwrap()), if k % 2 == 1 { 1 } else { -1 });
            let first = k * (3 * k + 1) / 2;
            for m in 1..first.min(61) {
                assert_eq!(int(mk(m, k, &p).unwrap()), 0, "M_{k}({m})");
            }
        }
    }

    #[test]
    fn mkbar_examples() {
        let t = build_overp_table(10);
        assert_eq!(int(mkbar(1, 1, &t).unwrap()), 0);
        assert_eq!(int(mkbar(0, 1, &t).unwrap()), -1);
        assert_eq!(int(mkbar(0, 2, &t).unwrap()), 1);
    }

    #[test]
    fn mp_examples() {
        let t = build_pod_table(10);
        assert_eq!(int(mp(1, 1, &t).unwrap()), 0);
        // pod(3) = 2 and pod(2) = 1 (1+1 repeats an odd part).
        assert_eq!(int(mp(3, 1, &t).unwrap()), 1);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(mk_oracle(5, 1).unwrap(), 2);
        assert_eq!(mk_oracle(1, 1).unwrap(), 0);
        assert_eq!(mk_oracle(7, 2).unwrap(), 1);
        assert_eq!(mkbar_oracle(1, 1).unwrap(), 0);
        assert_eq!(mkbar_oracle(2, 1).unwrap(), 0);
        assert_eq!(mp_oracle(3, 1).unwrap(), 1);
        assert_eq!(mp_oracle(0, 2).unwrap(), 0);
    }

    #[test]
    fn oracles_respect_caps() {
        assert_eq!(mk_oracle(46, 1).unwrap_err(), Error::CapExceeded { n: 46, cap: 45 });
        assert_eq!(mkbar_oracle(31, 1).unwrap_err(), Error::CapExceeded { n: 31, cap: 30 });
        assert_eq!(mp_oracle(41, 1).unwrap_err(), Error::CapExceeded { n: 41, cap: 40 });
    }

    #[test]
    fn table_errors() {
        let p = build_p_table(10);
        assert!(matches!(mk(11, 1, &p), Err(Error::TableTooSmall { requested: 11, .. })));
        assert!(matches!(mkbar(3, 1, &p), Err(Error::FamilyMismatch { .. })));
        assert!(mk(3, 0, &p).is_err());
    }

    #[test]
    fn formulas_match_oracles_on_small_grid() {
        let p = build_p_table(20);
        let o = build_overp_table(12);
        let d = build_pod_table(20);
        for n in 1..=12 {
            for k in 1..=3 {
                assert_eq!(mk(n, k, &p).unwrap(), mk_oracle(n, k).unwrap().into());
                assert_eq!(mkbar(n, k, &o).unwrap(), mkbar_oracle(n, k).unwrap().into());
                assert_eq!(mp(n, k, &d).unwrap(), mp_oracle(n, k).unwrap().into());
            }
        }
    }

    #[test]
    fn grid_csv() {
        let t = build_p_table(8);
        let rows = evaluate_grid(TruncatedFamily::Mk, &[5, 7], &[1, 2], &t).unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "family,n,k,value\nmk,5,1,2\nmk,5,2,0\nmk,7,1,4\nmk,7,2,1\n"
        );
    }
}
