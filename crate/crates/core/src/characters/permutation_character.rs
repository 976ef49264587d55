use std::collections::HashMap;

use crate::characters::ClassFunction;
use crate::combinatorics::partition::{enumerate_partitions, Partition};
use crate::combinatorics::permutation::for_each_permutation;
use crate::combinatorics::tableaux::kostka_number;
use crate::error::{ensure_capacity, Error, Result};
use crate::scalar::Scalar;

/// Largest number of rows accepted by [`determinantal_character`] (its sum has `l!` terms).
pub const MAX_DETERMINANT_ROWS: usize = 8;

/// `ξ_μ(c)`: the number of `μ`-tabloids fixed by a permutation of cycle type `c`.
///
/// A tabloid is fixed exactly when each row is a union of cycles, so this
/// counts the assignments of the (distinguishable) cycles to rows with row
/// `i` receiving total length `μ_i`.
pub fn permutation_character(mu: &Partition, cycle_type: &Partition) -> Result<u128> {
    if mu.n() != cycle_type.n() {
        return Err(Error::domain(format!("{mu} and {cycle_type} partition different n")));
    }
    Ok(fixed_tabloids(mu.parts(), cycle_type.parts()))
}

/// Same count for a composition (row sizes in any order, zeros allowed).
fn fixed_tabloids(rows: &[usize], cycles: &[usize]) -> u128 {
    fn rec(cycles: &[usize], room: &mut Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u128>) -> u128 {
        let Some((&len, rest)) = cycles.split_first() else {
            return 1;
        };
        let key = (cycles.len(), room.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for i in 0..room.len() {
            if room[i] >= len {
                room[i] -= len;
                total += rec(rest, room, memo);
                room[i] += len;
            }
        }
        memo.insert(key, total);
        total
    }
    let mut room: Vec<usize> = rows.iter().copied().filter(|&r| r > 0).collect();
    rec(cycles, &mut room, &mut HashMap::new())
}

/// `χ_α = Σ_{π∈S_l} sgn(π) ξ_{α - id + π}`, with terms having a negative
/// entry dropped.
pub fn determinantal_character<S: Scalar>(alpha: &Partition) -> Result<ClassFunction<S>> {
    let l = alpha.len();
    ensure_capacity("determinantal formula rows", MAX_DETERMINANT_ROWS as u128, l as u128)?;
    let classes = enumerate_partitions(alpha.n())?;
    let mut acc = vec![0i128; classes.len()];
    for_each_permutation(l, |_, images| {
        let mut comp = Vec::with_capacity(l);
        for (i, &p) in images.iter().enumerate() {
            // 0-based: α_i - i + π(i).
            let v = alpha.parts()[i] as i64 - i as i64 + p as i64;
            if v < 0 {
                return;
            }
            comp.push(v as usize);
        }
        let sign = if inversions(images).is_multiple_of(2) { 1 } else { -1 };
        for (slot, c) in acc.iter_mut().zip(&classes) {
            *slot += sign * fixed_tabloids(&comp, c.parts()) as i128;
        }
    });
    ClassFunction::new(alpha.n(), acc.into_iter().map(|v| S::from_i64(v as i64)).collect())
}

fn inversions(images: &[u8]) -> usize {
    (0..images.len())
        .map(|i| (i + 1..images.len()).filter(|&j| images[j] < images[i]).count())
        .sum()
}

/// Young's rule: `{λ ↦ K_{λ,μ}}` over the `λ` with non-zero multiplicity, in
/// descending lex order.
pub fn young_decomposition(mu: &Partition) -> Result<Vec<(Partition, u128)>> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(mu.n())? {
        if lambda < *mu {
            break;
        }
        let k = kostka_number(&lambda, mu)?;
        if k > 0 {
            out.push((lambda, k));
        }
    }
    Ok(out)
}
