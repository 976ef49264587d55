use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_capacity, Error, Result};

/// Largest degree for which partitions are enumerated.
pub const MAX_PARTITION_DEGREE: usize = 30;

/// A partition of `n`: a non-increasing sequence of positive parts.
///
/// The derived ordering is lexicographic on the parts, which for two
/// partitions of the same `n` is the lexicographic order on partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// Outcome of comparing two partitions of the same integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionOrder {
    Dominance,
    Lex,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the entries into non-increasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The hook `(n-s, 1^s)`.
    pub fn hook(n: usize, s: usize) -> Result<Self> {
        if s >= n && !(n == 0 && s == 0) {
            return Err(Error::domain(format!("hook (n-s,1^s) needs s < n (n={n}, s={s})")));
        }
        let mut parts = vec![n - s];
        parts.extend(std::iter::repeat_n(1, s));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of the first row (0 for the empty partition).
    pub fn first_row(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), with implicit zeros beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Removes the first row, e.g. `(n-s, γ) -> γ`.
    pub fn without_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_row();
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Contents `j - i` of every cell `(i, j)`, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push(j as i64 - i as i64);
            }
        }
        out
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.n());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push((p - j - 1) + (conj.parts[j] - i - 1) + 1);
            }
        }
        out
    }

    /// Multiplicity of each part length, indexed by length (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first_row() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Sign of any permutation with this cycle type.
    pub fn sign(&self) -> i64 {
        let odd = self.parts.iter().filter(|&&p| p % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self ⊵ other` in the dominance order.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn compare(&self, other: &Partition, order: PartitionOrder) -> Result<Comparison> {
        if self.n() != other.n() {
            return Err(Error::domain(format!(
                "cannot compare partitions of {} and {}",
                self.n(),
                other.n()
            )));
        }
        Ok(match order {
            PartitionOrder::Lex => match self.parts.cmp(&other.parts) {
                Ordering::Less => Comparison::Less,
                Ordering::Equal => Comparison::Equal,
                Ordering::Greater => Comparison::Greater,
            },
            PartitionOrder::Dominance => {
                if self == other {
                    Comparison::Equal
                } else if self.dominates(other) {
                    Comparison::Greater
                } else if other.dominates(self) {
                    Comparison::Less
                } else {
                    Comparison::Incomparable
                }
            }
        })
    }

    /// Comma-separated parts, e.g. `3,1` (empty string for the empty partition).
    pub fn to_csv_form(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All partitions of `n` in descending lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    ensure_capacity("partition degree", MAX_PARTITION_DEGREE as u128, n as u128)?;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    Ok(out)
}

/// Compares two partitions of the same `n` in the requested order.
pub fn compare_partitions(
    lambda: &Partition,
    mu: &Partition,
    order: PartitionOrder,
) -> Result<Comparison> {
    lambda.compare(mu, order)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv_form())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1`, `(3,1)`, `3 1` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}
