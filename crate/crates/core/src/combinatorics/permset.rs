use std::fmt::Write as _;

use crate::combinatorics::counting::factorial;
use crate::combinatorics::permutation::Permutation;
use crate::error::{ensure_capacity, Error, Result};

/// Largest degree for dense permutation sets (10! bits = 450 KiB).
pub const MAX_SET_DEGREE: usize = 10;

/// A subset of `S_n` stored as a dense bitset over lexicographic ranks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermutationSet {
    n: usize,
    order: usize,
    words: Vec<u64>,
}

impl PermutationSet {
    pub fn empty(n: usize) -> Result<Self> {
        ensure_capacity("permutation-set degree", MAX_SET_DEGREE as u128, n as u128)?;
        let order = factorial(n) as usize;
        Ok(PermutationSet {
            n,
            order,
            words: vec![0; order.div_ceil(64)],
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for r in 0..s.order {
            s.insert_rank(r);
        }
        Ok(s)
    }

    pub fn from_ranks(n: usize, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for r in ranks {
            if r >= s.order {
                return Err(Error::domain(format!("rank {r} out of range for S_{n}")));
            }
            s.insert_rank(r);
        }
        Ok(s)
    }

    pub fn from_permutations<'a>(n: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for p in perms {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!`, the size of the ambient group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, p: &Permutation) -> Result<()> {
        if p.degree() != self.n {
            return Err(Error::domain(format!("permutation of degree {} in a set of degree {}", p.degree(), self.n)));
        }
        self.insert_rank(p.rank() as usize);
        Ok(())
    }

    pub fn insert_rank(&mut self, r: usize) {
        self.words[r / 64] |= 1 << (r % 64);
    }

    pub fn remove_rank(&mut self, r: usize) {
        self.words[r / 64] &= !(1 << (r % 64));
    }

    pub fn contains_rank(&self, r: usize) -> bool {
        self.words[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.contains_rank(p.rank() as usize)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn permutations(&self) -> impl Iterator<Item = Permutation> + '_ {
        let n = self.n;
        self.ranks().map(move |r| Permutation::unrank(n, r as u64).expect("rank in range"))
    }

    fn check_same(&self, other: &PermutationSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::domain(format!("set degrees differ ({} vs {})", self.n, other.n)));
        }
        Ok(())
    }

    fn zip_with(&self, other: &PermutationSet, op: impl Fn(u64, u64) -> u64) -> Result<PermutationSet> {
        self.check_same(other)?;
        Ok(PermutationSet {
            n: self.n,
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn union(&self, other: &PermutationSet) -> Result<PermutationSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PermutationSet) -> Result<PermutationSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &PermutationSet) -> Result<PermutationSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &PermutationSet) -> Result<PermutationSet> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn symmetric_difference_len(&self, other: &PermutationSet) -> Result<usize> {
        self.check_same(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub fn complement(&self) -> PermutationSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.order % 64;
        if tail != 0 {
            *words.last_mut().expect("non-empty") &= (1u64 << tail) - 1;
        }
        PermutationSet {
            n: self.n,
            order: self.order,
            words,
        }
    }

    /// Text form: `n=<degree>` then one permutation per line in rank order.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for p in self.permutations() {
            writeln!(out, "{p}").expect("write to string");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::parse("empty permutation-set file"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(format!("expected header \"n=<degree>\", found {header:?}")))?;
        let mut set = Self::empty(n)?;
        for line in lines {
            let p: Permutation = line.parse()?;
            set.insert(&p)?;
        }
        Ok(set)
    }
}

/// The `k` lexicographically smallest permutations of `S_n`.
pub fn lex_initial_segment(n: usize, k: usize) -> Result<PermutationSet> {
    let s = PermutationSet::empty(n)?;
    if k > s.order {
        return Err(Error::domain(format!("segment size {k} exceeds {}!", n)));
    }
    PermutationSet::from_ranks(n, 0..k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::coset::TCoset;

    #[test]
    fn lex_segments() {
        let s = lex_initial_segment(3, 2).unwrap();
        let got: Vec<Vec<usize>> = s.permutations().map(|p| p.one_line()).collect();
        assert_eq!(got, vec![vec![1, 2, 3], vec![1, 3, 2]]);
        assert!(lex_initial_segment(5, 0).unwrap().is_empty());
        for n in 2..=6 {
            let seg = lex_initial_segment(n, factorial(n - 1) as usize).unwrap();
            let coset = TCoset::new(n, &[1], &[1]).unwrap();
            let c = PermutationSet::from_permutations(n, &coset.members()).unwrap();
            assert_eq!(seg, c);
        }
        assert!(lex_initial_segment(3, 7).is_err());
    }

    #[test]
    fn set_algebra() {
        let a = PermutationSet::from_ranks(4, [0, 1, 2, 70 % 24]).unwrap();
        let b = PermutationSet::from_ranks(4, [2, 3]).unwrap();
        assert_eq!(a.union(&b).unwrap().len(), 5);
        assert_eq!(a.intersection(&b).unwrap().len(), 1);
        assert_eq!(a.symmetric_difference_len(&b).unwrap(), 4);
        assert_eq!(a.difference(&b).unwrap().len(), 3);
        assert_eq!(a.complement().len(), 24 - a.len());
        assert_eq!(PermutationSet::full(4).unwrap().len(), 24);
        assert!(PermutationSet::empty(11).unwrap_err().is_capacity());
    }

    #[test]
    fn text_format_roundtrip() {
        let a = PermutationSet::from_ranks(4, [0, 5, 23]).unwrap();
        let text = a.to_text();
        assert!(text.starts_with("n=4\n1 2 3 4\n"));
        assert_eq!(PermutationSet::from_text(&text).unwrap(), a);
        assert!(PermutationSet::from_text("3 1 2\n").is_err());
        assert!(PermutationSet::from_text("n=3\n1 2\n").is_err());
    }
}
