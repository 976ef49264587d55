use crate::characters::{class_size, CharacterTable};
use crate::combinatorics::counting::{factorial, falling_factorial};
use crate::combinatorics::partition::{enumerate_partitions, Partition, MAX_PARTITION_DEGREE};
use crate::error::{ensure_capacity, Error, Result};
use crate::scalar::{ratio, Rational};

/// `(1/n!) Σ_σ |χ_α(σ)|`, computed classwise.
pub fn character_l1_norm(alpha: &Partition) -> Result<Rational> {
    let table = CharacterTable::cached(alpha.n())?;
    let i = table
        .index_of(alpha)
        .ok_or_else(|| Error::domain(format!("{alpha} is not a partition")))?;
    let total: u128 = table
        .class_sizes()
        .iter()
        .zip(table.row_values(i))
        .map(|(&size, &v)| size * v.unsigned_abs() as u128)
        .sum();
    Ok(ratio(total as i128, factorial(alpha.n()) as i128))
}

/// `N_{m,s}`, the number of permutations of `S_m` with every cycle longer
/// than `s`, via the recurrence on the cycle through the largest point:
/// `N_m = (m-1)(N_{m-1} + (m-2)(m-3)…(m-s) N_{m-s-1})`.
pub fn count_long_cycle_permutations(m: usize, s: usize) -> Result<u128> {
    if s == 0 {
        return Err(Error::domain("cycle-length threshold s must be at least 1"));
    }
    ensure_capacity("long-cycle degree", MAX_PARTITION_DEGREE as u128, m as u128)?;
    let mut n = vec![0u128; m + 1];
    n[0] = 1;
    for k in s + 1..=m {
        n[k] = (k as u128 - 1) * (n[k - 1] + falling_factorial(k - 2, s - 1) * n[k - s - 1]);
    }
    Ok(n[m])
}

/// Cycle types `(λ, β_2, …, β_l)` with `λ ⊢ β_1` having all parts `> s`.
pub fn x_beta_s_cycle_types(beta: &Partition, s: usize) -> Result<Vec<Partition>> {
    let n = beta.n();
    if beta.first_row() + s < n {
        return Err(Error::domain(format!("{beta} has first row below n - s = {}", n as i64 - s as i64)));
    }
    let tail = beta.without_first_row();
    let mut out = Vec::new();
    for lambda in enumerate_partitions(beta.first_row())? {
        if lambda.parts().iter().all(|&p| p > s) {
            let mut parts = lambda.parts().to_vec();
            parts.extend_from_slice(tail.parts());
            out.push(Partition::from_unsorted(parts));
        }
    }
    Ok(out)
}

/// `|X_{β,s}|`: total size of the classes in [`x_beta_s_cycle_types`].
pub fn x_beta_s_size(beta: &Partition, s: usize) -> Result<u128> {
    Ok(x_beta_s_cycle_types(beta, s)?.iter().map(class_size).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutation::{cycle_lengths, for_each_permutation};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn brute_long_cycles(m: usize, s: usize) -> u128 {
        let mut count = 0;
        for_each_permutation(m, |_, images| {
            if cycle_lengths(images).into_iter().all(|l| l > s) {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(count_long_cycle_permutations(3, 1).unwrap(), 2);
        assert_eq!(count_long_cycle_permutations(4, 1).unwrap(), 9);
        assert_eq!(count_long_cycle_permutations(5, 2).unwrap(), 24);
        assert_eq!(count_long_cycle_permutations(0, 2).unwrap(), 1);
        assert_eq!(count_long_cycle_permutations(2, 2).unwrap(), 0);
        assert!(count_long_cycle_permutations(3, 0).is_err());
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for m in 0..=8 {
            for s in 1..=3 {
                assert_eq!(count_long_cycle_permutations(m, s).unwrap(), brute_long_cycles(m, s), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn l1_norm_examples() {
        assert_eq!(character_l1_norm(&Partition::row(6)).unwrap(), ratio(1, 1));
        assert_eq!(character_l1_norm(&Partition::column(6)).unwrap(), ratio(1, 1));
        assert_eq!(character_l1_norm(&p(&[2, 1])).unwrap(), ratio(2, 3));
    }

    #[test]
    fn x_beta_s_examples() {
        // Choose the fixed point, then a derangement of the other four.
        assert_eq!(x_beta_s_size(&p(&[4, 1]), 1).unwrap(), 5 * 9);
        assert_eq!(x_beta_s_size(&p(&[3, 1]), 1).unwrap(), 8);
        assert_eq!(x_beta_s_size(&p(&[2, 1]), 1).unwrap(), 3);
        assert_eq!(x_beta_s_size(&Partition::row(6), 1).unwrap(), count_long_cycle_permutations(6, 1).unwrap());
        assert!(x_beta_s_size(&p(&[2, 2]), 1).is_err());
    }
}
