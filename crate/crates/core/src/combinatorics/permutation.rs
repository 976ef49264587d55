use std::fmt;
use std::str::FromStr;

use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::Partition;
use crate::error::{ensure_capacity, Error, Result};

/// Largest degree whose lexicographic ranks fit in a `u64`.
pub const MAX_RANK_DEGREE: usize = 20;

/// A permutation of `{1..n}` stored in one-line notation.
///
/// Images are kept 0-based internally; the text form and
/// [`Permutation::from_one_line`] use 1-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankDirection {
    Rank,
    Unrank,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds from 1-based one-line images, e.g. `[3, 1, 2]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        ensure_capacity("permutation degree", 64, n as u128)?;
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::domain(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths sorted non-increasingly; fixed points contribute parts of size 1.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(cycle_lengths(&self.images))
    }

    pub fn sign(&self) -> i64 {
        self.cycle_type().sign()
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()
    }

    /// Lexicographic rank via the Lehmer code; rank 0 is the identity.
    pub fn rank(&self) -> u64 {
        lehmer_rank(&self.images)
    }

    pub fn unrank(n: usize, rank: u64) -> Result<Self> {
        ensure_capacity("ranked permutation degree", MAX_RANK_DEGREE as u128, n as u128)?;
        let total = factorial(n);
        if rank as u128 >= total {
            return Err(Error::domain(format!("rank {rank} out of range for S_{n} (order {total})")));
        }
        let mut images = Vec::with_capacity(n);
        unrank_into(n, rank, &mut images);
        Ok(Permutation { images })
    }
}

pub(crate) fn cycle_lengths(images: &[u8]) -> Vec<usize> {
    let n = images.len();
    let mut seen = 0u64;
    let mut lens = Vec::new();
    for start in 0..n {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen & (1 << x) == 0 {
            seen |= 1 << x;
            x = images[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    lens
}

pub(crate) fn lehmer_rank(images: &[u8]) -> u64 {
    let n = images.len();
    let mut rank = 0u64;
    let mut used = 0u32;
    for (i, &x) in images.iter().enumerate() {
        let smaller_free = (x as u32 - (used & ((1u32 << x) - 1)).count_ones()) as u64;
        rank = rank * (n - i) as u64 + smaller_free;
        used |= 1 << x;
    }
    rank
}

pub(crate) fn unrank_into(n: usize, mut rank: u64, out: &mut Vec<u8>) {
    out.clear();
    let mut digits = vec![0u64; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut free: Vec<u8> = (0..n as u8).collect();
    for d in digits {
        out.push(free.remove(d as usize));
    }
}

/// Rank ↔ permutation conversion in one entry point.
pub fn lex_rank_bijection(
    n: usize,
    direction: RankDirection,
    rank: Option<u64>,
    perm: Option<&Permutation>,
) -> Result<(u64, Permutation)> {
    match direction {
        RankDirection::Unrank => {
            let r = rank.ok_or_else(|| Error::domain("unrank needs a rank"))?;
            Ok((r, Permutation::unrank(n, r)?))
        }
        RankDirection::Rank => {
            let p = perm.ok_or_else(|| Error::domain("rank needs a permutation"))?;
            if p.degree() != n {
                return Err(Error::domain(format!("permutation has degree {}, expected {n}", p.degree())));
            }
            ensure_capacity("ranked permutation degree", MAX_RANK_DEGREE as u128, n as u128)?;
            Ok((p.rank(), p.clone()))
        }
    }
}

/// Steps `images` to its lexicographic successor; false when already last.
pub(crate) fn next_permutation(images: &mut [u8]) -> bool {
    let n = images.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while images[j] <= images[i - 1] {
        j -= 1;
    }
    images.swap(i - 1, j);
    images[i..].reverse();
    true
}

/// Calls `visit(rank, images)` for every permutation of degree `n` in rank order.
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(usize, &[u8])) {
    let mut images: Vec<u8> = (0..n as u8).collect();
    let mut r = 0usize;
    loop {
        visit(r, &images);
        r += 1;
        if !next_permutation(&mut images) {
            break;
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        f.write_str(&words.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses space-separated 1-based images, e.g. `"3 1 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(&images)
    }
}
