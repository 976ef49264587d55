//! Counting standard and semistandard Young tableaux.

use std::collections::HashMap;

use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::{Partition, MAX_PARTITION_DEGREE};
use crate::error::{ensure_capacity, Error, Result};

/// Largest degree accepted by [`kostka_number`].
pub const MAX_KOSTKA_DEGREE: usize = 20;

/// Number of standard Young tableaux of shape `lambda` (= `dim[λ]`), by the
/// hook-length formula.
pub fn count_standard_tableaux(lambda: &Partition) -> Result<u128> {
    ensure_capacity("tableau degree", MAX_PARTITION_DEGREE as u128, lambda.n() as u128)?;
    let hooks: u128 = lambda.hook_lengths().iter().map(|&h| h as u128).product();
    Ok(factorial(lambda.n()) / hooks)
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
///
/// The entries `1, 2, ...` are placed one value at a time; the cells holding
/// value `i` form a horizontal strip of size `mu_i`. Intermediate shapes are
/// memoized, so the backtracking visits each (value, shape) pair once.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> Result<u128> {
    if lambda.n() != mu.n() {
        return Err(Error::domain(format!(
            "Kostka number needs partitions of the same n ({lambda} vs {mu})"
        )));
    }
    ensure_capacity("Kostka degree", MAX_KOSTKA_DEGREE as u128, lambda.n() as u128)?;
    let target = lambda.parts().to_vec();
    let mut memo = HashMap::new();
    let start = vec![0usize; target.len()];
    Ok(count_strips(&target, mu.parts(), 0, start, &mut memo))
}

fn count_strips(
    target: &[usize],
    content: &[usize],
    value: usize,
    shape: Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), u128>,
) -> u128 {
    if value == content.len() {
        return u128::from(shape.as_slice() == target);
    }
    let key = (value, shape);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let shape = key.1.clone();
    let mut total = 0u128;
    let mut next = shape.clone();
    add_horizontal_strip(target, &shape, 0, content[value], &mut next, &mut |grown| {
        total += count_strips(target, content, value + 1, grown.to_vec(), memo);
    });
    memo.insert(key, total);
    total
}

/// Enumerates every `next ⊇ shape` with `next/shape` a horizontal strip of
/// `remaining` cells and `next ⊆ target`.
fn add_horizontal_strip(
    target: &[usize],
    shape: &[usize],
    row: usize,
    remaining: usize,
    next: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if row == target.len() {
        if remaining == 0 {
            visit(next);
        }
        return;
    }
    // A horizontal strip may extend row `row` only up to the old length of the row above.
    let cap = if row == 0 { target[0] } else { target[row].min(shape[row - 1]) };
    let room = cap.saturating_sub(shape[row]);
    for add in 0..=room.min(remaining) {
        next[row] = shape[row] + add;
        add_horizontal_strip(target, shape, row + 1, remaining - add, next, visit);
    }
    next[row] = shape[row];
}
