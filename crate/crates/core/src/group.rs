//! Dense lookup tables for `S_n`, shared by the Fourier and spectral modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::{enumerate_partitions, Partition};
use crate::combinatorics::permutation::{cycle_lengths, for_each_permutation, lehmer_rank};
use crate::error::{ensure_capacity, Result};

/// Largest degree for which dense per-element tables are built.
pub const MAX_DENSE_DEGREE: usize = 9;

/// Per-element tables of `S_n`, indexed by lexicographic rank.
///
/// Transposition `(i j)` with `i < j` (0-based) has index `j(j-1)/2 + i`;
/// `neighbors(r)[idx]` is the rank of `σ∘(i j)`, i.e. `σ` with positions `i`
/// and `j` swapped. For the transposition class the left and right Cayley
/// graphs coincide, so the same table serves both conventions.
#[derive(Debug)]
pub struct SymmetricGroup {
    n: usize,
    order: usize,
    classes: Vec<Partition>,
    class_keys: HashMap<u64, usize>,
    class_of: Vec<u16>,
    neighbors: Vec<u32>,
}

impl SymmetricGroup {
    /// Shared, lazily built tables for degree `n`.
    pub fn get(n: usize) -> Result<Arc<SymmetricGroup>> {
        ensure_capacity("dense group degree", MAX_DENSE_DEGREE as u128, n as u128)?;
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().expect("group cache poisoned").get(&n) {
            return Ok(g.clone());
        }
        let built = Arc::new(Self::build(n)?);
        let mut guard = cache.lock().expect("group cache poisoned");
        Ok(guard.entry(n).or_insert(built).clone())
    }

    fn build(n: usize) -> Result<Self> {
        let order = factorial(n) as usize;
        let classes = enumerate_partitions(n)?;
        let class_keys = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (cycle_key(n, c.parts().iter().copied()), i))
            .collect::<HashMap<_, _>>();
        let tcount = n * n.saturating_sub(1) / 2;
        let mut class_of = vec![0u16; order];
        let mut neighbors = vec![0u32; order * tcount];
        let mut scratch = vec![0u8; n];
        for_each_permutation(n, |r, images| {
            class_of[r] = class_keys[&cycle_key(n, cycle_lengths(images).into_iter())] as u16;
            let row = &mut neighbors[r * tcount..(r + 1) * tcount];
            let mut idx = 0;
            for j in 1..n {
                for i in 0..j {
                    scratch.copy_from_slice(images);
                    scratch.swap(i, j);
                    row[idx] = lehmer_rank(&scratch) as u32;
                    idx += 1;
                }
            }
        });
        Ok(SymmetricGroup {
            n,
            order,
            classes,
            class_keys,
            class_of,
            neighbors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Conjugacy classes (cycle types) in descending lexicographic order.
    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    /// `binomial(n, 2)`.
    pub fn transposition_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Ranks of the `binomial(n, 2)` transposition neighbours of rank `r`.
    pub fn neighbors(&self, r: usize) -> &[u32] {
        let t = self.transposition_count();
        &self.neighbors[r * t..(r + 1) * t]
    }

    /// Class index (position in [`SymmetricGroup::classes`]) of rank `r`.
    pub fn class_of_rank(&self, r: usize) -> usize {
        self.class_of[r] as usize
    }

    pub fn class_index(&self, cycle_type: &Partition) -> Option<usize> {
        if cycle_type.n() != self.n {
            return None;
        }
        self.class_keys.get(&cycle_key(self.n, cycle_type.parts().iter().copied())).copied()
    }

    /// Class index of the permutation with these 0-based images.
    pub(crate) fn class_of_images(&self, images: &[u8]) -> usize {
        self.class_keys[&cycle_key(self.n, cycle_lengths(images).into_iter())]
    }
}

/// Order-independent key of a multiset of cycle lengths.
fn cycle_key(n: usize, lengths: impl Iterator<Item = usize>) -> u64 {
    let base = (n + 1) as u64;
    lengths.map(|l| base.pow(l as u32 - 1)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutation::Permutation;

    #[test]
    fn neighbour_table_swaps_positions() {
        let g = SymmetricGroup::get(4).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.transposition_count(), 6);
        for r in 0..g.order() {
            let p = Permutation::unrank(4, r as u64).unwrap();
            let mut idx = 0;
            for j in 1..4 {
                for i in 0..j {
                    let mut im = p.images().to_vec();
                    im.swap(i, j);
                    assert_eq!(g.neighbors(r)[idx] as u64, lehmer_rank(&im));
                    idx += 1;
                }
            }
            assert_eq!(g.classes()[g.class_of_rank(r)], p.cycle_type());
        }
    }

    #[test]
    fn class_sizes_from_table() {
        let g = SymmetricGroup::get(5).unwrap();
        let mut counts = vec![0; g.classes().len()];
        for r in 0..g.order() {
            counts[g.class_of_rank(r)] += 1;
        }
        // (5),(4,1),(3,2),(3,1,1),(2,2,1),(2,1,1,1),(1^5)
        assert_eq!(counts, vec![24, 30, 20, 20, 15, 10, 1]);
        assert!(SymmetricGroup::get(10).unwrap_err().is_capacity());
    }
}
