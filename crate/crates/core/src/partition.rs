//! Exact tables of p(n), p̄(n) and pod(n), plus partition enumeration.
//!
//! All three tables are filled by reciprocal-theta recurrences:
//!
//! * `1/(q;q)_∞`, with `(q;q)_∞ = Σ_j (-1)^j q^{j(3j-1)/2}` (Euler),
//! * `(-q;q)_∞/(q;q)_∞ = 1/Σ_j (-1)^j q^{j²}` (Gauss),
//! * `(-q;q²)_∞/(q²;q²)_∞ = 1/Σ_{m≥0} (-1)^{m(m+1)/2} q^{m(m+1)/2}`.
//!
//! Each recurrence touches O(√n) earlier entries per index. The q-series
//! module computes the same coefficients through products of q-Pochhammer
//! symbols, which the tests use as an independent route.

use std::fmt;
use std::io;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

static ZERO: BigInt = BigInt::ZERO;

/// Which base counting sequence a [`SeqTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Ordinary partitions p(n).
    P,
    /// Overpartitions p̄(n).
    OverP,
    /// Partitions with no repeated odd part, pod(n).
    Pod,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::P, Family::OverP, Family::Pod];

    pub fn name(self) -> &'static str {
        match self {
            Family::P => "p",
            Family::OverP => "overp",
            Family::Pod => "pod",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Family::P),
            "overp" | "pbar" => Ok(Family::OverP),
            "pod" => Ok(Family::Pod),
            other => Err(Error::InvalidArgument(format!("unknown sequence family `{other}`"))),
        }
    }
}

/// Memoized exact values `family(0..=max_n)`.
///
/// Immutable once built; out-of-range negative indices read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqTable {
    family: Family,
    values: Vec<BigInt>,
}

impl SeqTable {
    pub fn build(family: Family, max_n: usize) -> Self {
        match family {
            Family::P => build_p_table(max_n),
            Family::OverP => build_overp_table(max_n),
            Family::Pod => build_pod_table(max_n),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Value at a signed index: zero for `n < 0`, an error past `max_n`.
    pub fn value(&self, n: i64) -> Result<&BigInt> {
        if n < 0 {
            return Ok(&ZERO);
        }
        self.values.get(n as usize).ok_or(Error::TableTooSmall {
            family: self.family,
            max_n: self.max_n(),
            requested: n as usize,
        })
    }

    pub(crate) fn expect_family(&self, expected: Family) -> Result<()> {
        if self.family == expected {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                expected,
                actual: self.family,
            })
        }
    }

    /// Writes `n,value` rows under a header line.
    pub fn write_csv<W: io::Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "n,value")?;
        for (n, v) in self.values.iter().enumerate() {
            writeln!(out, "{n},{v}")?;
        }
        Ok(())
    }
}

/// Fills `a(0..=max_n)` from `a(n) = -Σ_{(e, s)} s·a(n - e)` where `(e, s)`
/// runs over the nonzero terms `s q^e` (e ≥ 1) of a theta series with
/// constant term 1, sorted by exponent.
fn reciprocal_recurrence(family: Family, max_n: usize, terms: &[(usize, i32)]) -> SeqTable {
    let mut values: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    values.push(BigInt::one());
    for n in 1..=max_n {
        let mut acc = BigInt::ZERO;
        for &(e, s) in terms.iter().take_while(|(e, _)| *e <= n) {
            let prev = &values[n - e];
            match s {
                1 => acc -= prev,
                -1 => acc += prev,
                _ => acc -= prev * s,
            }
        }
        values.push(acc);
    }
    SeqTable { family, values }
}

/// p(0..=max_n) via Euler's pentagonal recurrence,
/// `p(n) = Σ_{j≥1} (-1)^{j-1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]`.
pub fn build_p_table(max_n: usize) -> SeqTable {
    let mut terms = Vec::new();
    for j in 1usize.. {
        let g1 = j * (3 * j - 1) / 2;
        if g1 > max_n {
            break;
        }
        let s = if j % 2 == 1 { -1 } else { 1 };
        terms.push((g1, s));
        let g2 = j * (3 * j + 1) / 2;
        if g2 <= max_n {
            terms.push((g2, s));
        }
    }
    reciprocal_recurrence(Family::P, max_n, &terms)
}

/// p̄(0..=max_n), the coefficients of `(-q;q)_∞/(q;q)_∞`.
pub fn build_overp_table(max_n: usize) -> SeqTable {
    let terms: Vec<(usize, i32)> = (1usize..)
        .map(|j| (j * j, if j % 2 == 1 { -2 } else { 2 }))
        .take_while(|(e, _)| *e <= max_n)
        .collect();
    reciprocal_recurrence(Family::OverP, max_n, &terms)
}

/// pod(0..=max_n), the coefficients of `(-q;q²)_∞/(q²;q²)_∞`.
pub fn build_pod_table(max_n: usize) -> SeqTable {
    let terms: Vec<(usize, i32)> = (1usize..)
        .map(|m| {
            let t = m * (m + 1) / 2;
            (t, if t % 2 == 1 { -1 } else { 1 })
        })
        .take_while(|(e, _)| *e <= max_n)
        .collect();
    reciprocal_recurrence(Family::Pod, max_n, &terms)
}

/// Enumeration caps (inclusive) per mode.
pub const PLAIN_CAP: usize = 45;
pub const OVER_CAP: usize = 30;
pub const POD_CAP: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionMode {
    /// Every partition of n.
    Plain,
    /// Overpartitions: each distinct part may carry an overline on its first occurrence.
    Over,
    /// Partitions in which no odd part repeats.
    PodOnly,
}

impl PartitionMode {
    pub fn cap(self) -> usize {
        match self {
            PartitionMode::Plain => PLAIN_CAP,
            PartitionMode::Over => OVER_CAP,
            PartitionMode::PodOnly => POD_CAP,
        }
    }

    pub fn family(self) -> Family {
        match self {
            PartitionMode::Plain => Family::P,
            PartitionMode::Over => Family::OverP,
            PartitionMode::PodOnly => Family::Pod,
        }
    }
}

/// A partition stored as a nonincreasing list of parts.
///
/// In overpartition mode `overlines[i]` says whether the i-th distinct part
/// (in decreasing order) has its first occurrence overlined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    overlines: Option<Vec<bool>>,
}

impl Partition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn overlines(&self) -> Option<&[bool]> {
        self.overlines.as_deref()
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, part: u32) -> bool {
        self.parts.contains(&part)
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Distinct parts in decreasing order.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut d = self.parts.clone();
        d.dedup();
        d
    }

    /// Smallest part strictly greater than `bound`, if any.
    pub fn smallest_part_above(&self, bound: u32) -> Option<u32> {
        self.parts.iter().rev().copied().find(|&p| p > bound)
    }

    /// Whether the first occurrence of `part` is overlined.
    pub fn is_overlined(&self, part: u32) -> bool {
        let Some(marks) = &self.overlines else {
            return false;
        };
        self.distinct_parts()
            .iter()
            .position(|&p| p == part)
            .map(|i| marks[i])
            .unwrap_or(false)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let marked = self.overlines.as_deref();
        let mut distinct_idx = 0usize;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            let first = i == 0 || self.parts[i - 1] != p;
            if first && i > 0 {
                distinct_idx += 1;
            }
            match marked {
                Some(m) if first && m[distinct_idx] => write!(f, "{p}\u{305}")?,
                _ => write!(f, "{p}")?,
            }
        }
        Ok(())
    }
}

/// Streams the partitions of `n` admissible in `mode`, each exactly once.
pub fn enumerate_partitions(n: usize, mode: PartitionMode) -> Result<Partitions> {
    let cap = mode.cap();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let start = if n == 0 { Vec::new() } else { vec![n as u32] };
    Ok(Partitions {
        mode,
        current: Some(start),
        distinct: 0,
        mask: 0,
    })
}

/// Iterator returned by [`enumerate_partitions`].
///
/// Plain partitions are produced in reverse lexicographic order; in
/// overpartition mode every overline mask of a plain partition is emitted
/// before moving on.
#[derive(Debug, Clone)]
pub struct Partitions {
    mode: PartitionMode,
    current: Option<Vec<u32>>,
    distinct: u32,
    mask: u64,
}

impl Partitions {
    fn step_plain(&mut self) {
        let Some(parts) = self.current.as_mut() else {
            return;
        };
        let mut rem = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            rem += 1;
        }
        match parts.last_mut() {
            None => self.current = None,
            Some(last) => {
                *last -= 1;
                let cap = *last;
                rem += 1;
                while rem > 0 {
                    let take = rem.min(cap);
                    parts.push(take);
                    rem -= take;
                }
            }
        }
    }

    fn repeats_odd_part(parts: &[u32]) -> bool {
        parts.windows(2).any(|w| w[0] == w[1] && w[0] % 2 == 1)
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let parts = self.current.as_ref()?;
            match self.mode {
                PartitionMode::Plain => {
                    let out = Partition {
                        parts: parts.clone(),
                        overlines: None,
                    };
                    self.step_plain();
                    return Some(out);
                }
                PartitionMode::PodOnly => {
                    let keep = !Self::repeats_odd_part(parts);
                    let out = keep.then(|| Partition {
                        parts: parts.clone(),
                        overlines: None,
                    });
                    self.step_plain();
                    if out.is_some() {
                        return out;
                    }
                }
                PartitionMode::Over => {
                    if self.mask == 0 {
                        let mut d = parts.clone();
                        d.dedup();
                        self.distinct = d.len() as u32;
                    }
                    let marks: Vec<bool> = (0..self.distinct).map(|i| self.mask >> i & 1 == 1).collect();
                    let out = Partition {
                        parts: parts.clone(),
                        overlines: Some(marks),
                    };
                    self.mask += 1;
                    if self.mask == 1u64 << self.distinct {
                        self.mask = 0;
                        self.step_plain();
                    }
                    return Some(out);
                }
            }
        }
    }
}
