use std::fmt;

use crate::combinatorics::counting::{arrangements, binomial, combinations, falling_factorial};
use crate::combinatorics::permutation::Permutation;
use crate::error::{ensure_capacity, Error, Result};

/// Upper bound on the number of t-cosets materialized by [`enumerate_t_cosets`].
pub const MAX_COSET_COUNT: u128 = 10_000_000;

/// The t-coset `{σ : σ(i_k) = j_k for all k}`.
///
/// Stored as its pair-set `{(i_k, j_k)}` sorted by domain point, so two cosets
/// built from the same pairs in different orders compare equal. Points are
/// 0-based internally.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TCoset {
    n: usize,
    pairs: Vec<(u8, u8)>,
}

impl TCoset {
    /// Builds `T_{IJ}` from 1-based ordered tuples `I` (domain) and `J` (image).
    pub fn new(n: usize, domain: &[usize], image: &[usize]) -> Result<Self> {
        if domain.len() != image.len() {
            return Err(Error::domain(format!(
                "coset tuples differ in length ({} vs {})",
                domain.len(),
                image.len()
            )));
        }
        let check = |tuple: &[usize], what: &str| -> Result<Vec<usize>> {
            let mut seen = vec![false; n];
            tuple
                .iter()
                .map(|&x| {
                    if x == 0 || x > n || seen[x - 1] {
                        Err(Error::domain(format!("{what} tuple {tuple:?} is not distinct points of 1..{n}")))
                    } else {
                        seen[x - 1] = true;
                        Ok(x - 1)
                    }
                })
                .collect()
        };
        let d = check(domain, "domain")?;
        let i = check(image, "image")?;
        Ok(Self::from_pairs(n, d.into_iter().zip(i).collect()))
    }

    /// 0-based pairs, assumed valid.
    pub(crate) fn from_pairs(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<(u8, u8)> = pairs.into_iter().map(|(a, b)| (a as u8, b as u8)).collect();
        pairs.sort_unstable();
        TCoset { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    /// 0-based `(domain, image)` pairs sorted by domain point.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    /// 1-based domain tuple in canonical order.
    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(a, _)| a as usize + 1).collect()
    }

    /// 1-based image tuple matching [`TCoset::domain`].
    pub fn image(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, b)| b as usize + 1).collect()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        sigma.degree() == self.n && self.pairs.iter().all(|&(a, b)| sigma.apply(a as usize) == b as usize)
    }

    /// Number of members, `(n-t)!`.
    pub fn size(&self) -> u128 {
        falling_factorial(self.n - self.t(), self.n - self.t())
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Permutation> {
        let n = self.n;
        let mut fixed = vec![None; n];
        let mut used = vec![false; n];
        for (a, b) in self.pairs() {
            fixed[a] = Some(b as u8);
            used[b] = true;
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(pos: usize, fixed: &[Option<u8>], used: &mut [bool], cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
            if pos == fixed.len() {
                out.push(Permutation::from_zero_based(cur.clone()));
                return;
            }
            if let Some(v) = fixed[pos] {
                cur.push(v);
                rec(pos + 1, fixed, used, cur, out);
                cur.pop();
                return;
            }
            for v in 0..fixed.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v as u8);
                    rec(pos + 1, fixed, used, cur, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(0, &fixed, &mut used, &mut cur, &mut out);
        out
    }

    /// Whether the two cosets share a permutation.
    pub fn intersects(&self, other: &TCoset) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            other.pairs.iter().all(|&(c, d)| (a == c) == (b == d))
        })
    }
}

/// Number of t-cosets of `S_n`, `(n)_t · binomial(n, t)`.
pub fn t_coset_count(n: usize, t: usize) -> u128 {
    falling_factorial(n, t) * binomial(n, t)
}

/// Every t-coset exactly once, ordered by (sorted domain set, image tuple).
pub fn enumerate_t_cosets(n: usize, t: usize) -> Result<Vec<TCoset>> {
    if t > n {
        return Err(Error::domain(format!("t = {t} exceeds n = {n}")));
    }
    ensure_capacity("t-coset count", MAX_COSET_COUNT, t_coset_count(n, t))?;
    let images = arrangements(n, t);
    let mut out = Vec::with_capacity(t_coset_count(n, t) as usize);
    for dom in combinations(n, t) {
        for img in &images {
            out.push(TCoset::from_pairs(n, dom.iter().copied().zip(img.iter().copied()).collect()));
        }
    }
    Ok(out)
}

impl fmt::Display for TCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<usize>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "T[({})->({})]", join(self.domain()), join(self.image()))
    }
}

impl fmt::Debug for TCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        for n in 1..=5 {
            assert_eq!(enumerate_t_cosets(n, 1).unwrap().len(), n * n);
        }
        assert_eq!(enumerate_t_cosets(4, 2).unwrap().len(), 72);
        assert_eq!(enumerate_t_cosets(4, 0).unwrap().len(), 1);
        assert!(enumerate_t_cosets(3, 4).is_err());
    }

    #[test]
    fn deduplicated_enumeration_agrees() {
        // Oracle: every ordered (I, J) pair, canonicalized and deduplicated.
        let n = 4;
        let mut set = HashSet::new();
        for i in arrangements(n, 2) {
            for j in arrangements(n, 2) {
                set.insert(TCoset::from_pairs(n, i.iter().copied().zip(j.iter().copied()).collect()));
            }
        }
        assert_eq!(set.len(), 72);
        let listed: HashSet<_> = enumerate_t_cosets(n, 2).unwrap().into_iter().collect();
        assert_eq!(set, listed);
    }

    #[test]
    fn members_of_point_stabilizer() {
        let t = TCoset::new(3, &[1], &[1]).unwrap();
        let m: Vec<Vec<usize>> = t.members().iter().map(|p| p.one_line()).collect();
        assert_eq!(m, vec![vec![1, 2, 3], vec![1, 3, 2]]);
        for p in t.members() {
            assert!(t.contains(&p));
        }
        assert_eq!(TCoset::new(6, &[1, 2], &[3, 4]).unwrap().members().len(), 24);
    }

    #[test]
    fn canonical_equality_ignores_pair_order() {
        let a = TCoset::new(5, &[3, 1, 4], &[2, 5, 1]).unwrap();
        let b = TCoset::new(5, &[1, 4, 3], &[5, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.domain(), vec![1, 3, 4]);
        assert_eq!(a.image(), vec![5, 2, 1]);
        assert!(TCoset::new(5, &[1, 1], &[2, 3]).is_err());
        assert!(TCoset::new(5, &[1], &[6]).is_err());
    }

    #[test]
    fn intersection_rule() {
        let t11 = TCoset::new(4, &[1], &[1]).unwrap();
        let t12 = TCoset::new(4, &[1], &[2]).unwrap();
        let t22 = TCoset::new(4, &[2], &[2]).unwrap();
        assert!(!t11.intersects(&t12));
        assert!(t11.intersects(&t22));
        assert!(!t12.intersects(&t22));
    }
}
