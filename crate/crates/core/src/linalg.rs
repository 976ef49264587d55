//! Rank computations for the coset-indicator span checks.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse row: `(column, value)` pairs with strictly increasing columns.
pub type SparseRow<S> = Vec<(usize, S)>;

/// Rank of the rows by Gaussian elimination over `S`.
///
/// Each incoming row is reduced against the pivot rows found so far (keyed by
/// leading column); a row that does not vanish becomes a new pivot. Exact for
/// rational scalars.
pub fn sparse_rank<S: Scalar>(rows: impl IntoIterator<Item = SparseRow<S>>) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow<S>> = BTreeMap::new();
    for row in rows {
        let mut row: SparseRow<S> = row.into_iter().filter(|(_, v)| !v.is_negligible()).collect();
        while let Some((lead, lead_val)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(pivot) => {
                    let factor = lead_val / pivot[0].1.clone();
                    row = axpy(&row, pivot, &factor);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row - factor * pivot`, dropping vanishing entries.
fn axpy<S: Scalar>(row: &[(usize, S)], pivot: &[(usize, S)], factor: &S) -> SparseRow<S> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, val) = if take_row {
            i += 1;
            (row[i - 1].0, row[i - 1].1.clone())
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, -(factor.clone() * pivot[j - 1].1.clone()))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, row[i - 1].1.clone() - factor.clone() * pivot[j - 1].1.clone())
        };
        if !val.is_negligible() {
            out.push((col, val));
        }
    }
    out
}

/// Prime modulus for [`rank_mod_prime`]; products of two residues fit in `u64`.
pub const RANK_PRIME: u64 = 2_147_483_647;

/// Rank over `GF(p)` of 0/1 rows given by their supports, stopping early once
/// `stop_at` pivots are found.
///
/// The result is a lower bound for the rank over the rationals.
pub fn rank_mod_prime(rows: impl IntoIterator<Item = Vec<usize>>, ncols: usize, stop_at: usize) -> usize {
    const P: u64 = RANK_PRIME;
    let mut pivot_rows: Vec<Vec<u64>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    if stop_at == 0 {
        return 0;
    }
    for support in rows {
        let mut row = vec![0u64; ncols];
        for c in support {
            row[c] = 1;
        }
        // Pivot rows are normalized to 1 at their pivot column and zero at
        // every earlier pivot column.
        for (prow, &pc) in pivot_rows.iter().zip(&pivot_cols) {
            let f = row[pc];
            if f != 0 {
                let neg = P - f;
                for (x, &y) in row.iter_mut().zip(prow) {
                    if y != 0 {
                        *x = (*x + neg * y) % P;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = pow_mod(row[pc], P - 2, P);
        for x in row.iter_mut() {
            *x = *x * inv % P;
        }
        // Keep earlier pivots reduced at the new pivot column.
        for prow in pivot_rows.iter_mut() {
            let f = prow[pc];
            if f != 0 {
                let neg = P - f;
                for (x, &y) in prow.iter_mut().zip(&row) {
                    if y != 0 {
                        *x = (*x + neg * y) % P;
                    }
                }
            }
        }
        pivot_rows.push(row);
        pivot_cols.push(pc);
        if pivot_rows.len() >= stop_at {
            break;
        }
    }
    pivot_rows.len()
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
