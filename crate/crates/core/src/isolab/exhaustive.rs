use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::permutation::Permutation;
use crate::error::{ensure_capacity, Result};
use crate::group::SymmetricGroup;

/// Largest degree for the full subset enumeration (`2^{24}` subsets).
pub const MAX_EXHAUSTIVE_DEGREE: usize = 4;
/// Largest degree for the sampled search (`n! ≤ 128` fits one mask).
pub const MAX_SAMPLED_DEGREE: usize = 5;

/// Low bits enumerated by each worker's Gray-code walk.
const GRAY_BITS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    /// Random sets of every size, each improved by single swaps until no swap
    /// lowers the boundary.
    Sampled { samples_per_size: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeVerdict {
    pub k: usize,
    pub lex_boundary: u32,
    pub min_boundary: u32,
    /// Ranks of a set with a strictly smaller boundary than the lex segment.
    pub witness: Option<Vec<usize>>,
}

/// Per-size comparison of lex initial segments against the best sets found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenEfraimTable {
    pub n: usize,
    pub mode: SearchMode,
    pub rows: Vec<SizeVerdict>,
}

impl BenEfraimTable {
    /// No size has a set beating the lex segment.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.witness.is_none())
    }

    /// `k,lex_boundary,min_boundary,witness_if_smaller`; a witness is written as
    /// its members in one-line notation, separated by `|`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,lex_boundary,min_boundary,witness_if_smaller\n");
        for r in &self.rows {
            let witness = r
                .witness
                .as_ref()
                .map(|ranks| {
                    ranks
                        .iter()
                        .map(|&q| Permutation::unrank(self.n, q as u64).expect("rank in range").to_string())
                        .collect::<Vec<_>>()
                        .join("|")
                })
                .unwrap_or_default();
            writeln!(out, "{},{},{},{}", r.k, r.lex_boundary, r.min_boundary, witness).expect("write to string");
        }
        out
    }
}

/// Neighbour masks of the transposition graph, vertices in lex rank order.
fn neighbor_masks(n: usize) -> Result<Vec<u128>> {
    let group = SymmetricGroup::get(n)?;
    Ok((0..group.order())
        .map(|r| group.neighbors(r).iter().fold(0u128, |m, &q| m | 1 << q))
        .collect())
}

fn boundary_of(mask: u128, nbr: &[u128]) -> u32 {
    let mut total = 0;
    let mut bits = mask;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        total += (nbr[v] & !mask).count_ones();
    }
    total
}

fn ranks_of(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Per-size minimum boundary and the least mask attaining it.
type Minima = Vec<(u32, u128)>;

fn merge(mut a: Minima, b: Minima) -> Minima {
    for (x, y) in a.iter_mut().zip(b) {
        if y < *x {
            *x = y;
        }
    }
    a
}

/// Compares every subset of `S_n` (`n ≤ 4`) against the lex segment of its size.
///
/// Workers own disjoint blocks of the high bits and walk the low bits in Gray
/// code order, updating the boundary in O(1) per step: adding `v` changes it
/// by `deg - 2|N(v) ∩ A|`.
pub fn exhaustive_benefraim(n: usize) -> Result<BenEfraimTable> {
    ensure_capacity("exhaustive search degree", MAX_EXHAUSTIVE_DEGREE as u128, n as u128)?;
    let nbr = neighbor_masks(n)?;
    let order = nbr.len();
    let degree = (n * n.saturating_sub(1) / 2) as i64;
    let low = order.min(GRAY_BITS);
    let high = order - low;

    let init: Minima = vec![(u32::MAX, u128::MAX); order + 1];
    let minima = (0u128..1 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut best = init.clone();
            let mut mask = prefix << low;
            let mut boundary = boundary_of(mask, &nbr) as i64;
            let mut size = mask.count_ones() as usize;
            let record = |mask: u128, boundary: i64, size: usize, best: &mut Minima| {
                let entry = (boundary as u32, mask);
                if entry < best[size] {
                    best[size] = entry;
                }
            };
            record(mask, boundary, size, &mut best);
            for step in 1u128..1 << low {
                let v = step.trailing_zeros() as usize;
                let inside = (nbr[v] & mask).count_ones() as i64;
                if mask >> v & 1 == 1 {
                    mask &= !(1 << v);
                    boundary -= degree - 2 * inside;
                    size -= 1;
                } else {
                    mask |= 1 << v;
                    boundary += degree - 2 * inside;
                    size += 1;
                }
                record(mask, boundary, size, &mut best);
            }
            best
        })
        .reduce(|| init.clone(), merge);

    Ok(table(n, SearchMode::Exhaustive, &nbr, minima))
}

fn table(n: usize, mode: SearchMode, nbr: &[u128], minima: Minima) -> BenEfraimTable {
    let rows = minima
        .into_iter()
        .enumerate()
        .map(|(k, (min, mask))| {
            let lex = boundary_of(lex_mask(k), nbr);
            SizeVerdict {
                k,
                lex_boundary: lex,
                min_boundary: min.min(lex),
                witness: (min < lex).then(|| ranks_of(mask)),
            }
        })
        .collect();
    BenEfraimTable { n, mode, rows }
}

fn lex_mask(k: usize) -> u128 {
    if k == 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

/// Randomized version of [`exhaustive_benefraim`] for `n ≤ 5`: for every size,
/// `samples_per_size` seeded random sets are pushed to a local minimum under
/// member/non-member swaps.
pub fn sampled_benefraim(n: usize, samples_per_size: usize, seed: u64) -> Result<BenEfraimTable> {
    ensure_capacity("sampled search degree", MAX_SAMPLED_DEGREE as u128, n as u128)?;
    let nbr = neighbor_masks(n)?;
    let order = nbr.len();
    let minima: Minima = (0..=order)
        .into_par_iter()
        .map(|k| {
            let mut best = (u32::MAX, u128::MAX);
            for s in 0..samples_per_size {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 32) ^ s as u64);
                let start = sample(&mut rng, order, k).into_iter().fold(0u128, |m, v| m | 1 << v);
                let local = descend(start, &nbr);
                best = best.min(local);
            }
            best
        })
        .collect();
    Ok(table(n, SearchMode::Sampled { samples_per_size, seed }, &nbr, minima))
}

/// Steepest descent over swaps of one member for one non-member. Swapping
/// `u` out and `v` in changes the boundary by `2(|N(u) ∩ A| - |N(v) ∩ A∖u|)`.
fn descend(mut mask: u128, nbr: &[u128]) -> (u32, u128) {
    let full = lex_mask(nbr.len());
    let mut boundary = boundary_of(mask, nbr) as i64;
    loop {
        let mut best: Option<(i64, u128)> = None;
        for u in ranks_of(mask) {
            let in_u = (nbr[u] & mask).count_ones() as i64;
            let without = mask & !(1 << u);
            for v in ranks_of(!mask & full) {
                let in_v = (nbr[v] & without).count_ones() as i64;
                let candidate = (boundary + 2 * (in_u - in_v), without | 1 << v);
                if best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
        match best {
            Some((b, next)) if b < boundary => (boundary, mask) = (b, next),
            _ => return (boundary as u32, mask),
        }
    }
}
