//! Isotypic projection by convolution with the character kernel,
//! `f_α(σ) = (dim[α]/n!) Σ_π f(π) χ_α(σπ⁻¹)`.
//!
//! For each `σ` the values `f(π)` are bucketed by the cycle type of `σπ⁻¹`,
//! so every component is read off the same `n! × #classes` bucket table.

use rayon::prelude::*;

use crate::characters::CharacterTable;
use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::Partition;
use crate::combinatorics::permutation::for_each_permutation;
use crate::error::{ensure_capacity, Result};
use crate::fourier::GroupFunction;
use crate::group::SymmetricGroup;
use crate::scalar::Scalar;

/// Largest degree for the quadratic-cost convolution.
pub const MAX_CONVOLUTION_DEGREE: usize = 7;

/// Every isotypic component of `f` (descending lex order of `α`) by kernel
/// convolution.
pub fn convolution_components<S: Scalar>(f: &GroupFunction<S>) -> Result<Vec<(Partition, GroupFunction<S>)>> {
    let n = f.n();
    ensure_capacity("convolution projection degree", MAX_CONVOLUTION_DEGREE as u128, n as u128)?;
    let buckets = class_buckets(f)?;
    let table = CharacterTable::cached(n)?;
    let order = S::from_u128(factorial(n));
    table
        .partitions()
        .iter()
        .enumerate()
        .map(|(a, alpha)| {
            let chi: Vec<S> = table.row_values(a).iter().map(|&v| S::from_i64(v)).collect();
            let scale = S::from_u128(table.dim(a)) / order.clone();
            let values = buckets
                .iter()
                .map(|b| {
                    let mut acc = S::zero();
                    for (x, c) in b.iter().zip(&chi) {
                        acc = acc + x.clone() * c.clone();
                    }
                    acc * scale.clone()
                })
                .collect();
            Ok((alpha.clone(), GroupFunction::new(n, values)?))
        })
        .collect()
}

/// `f_α` alone by kernel convolution.
pub fn convolution_projection<S: Scalar>(f: &GroupFunction<S>, alpha: &Partition) -> Result<GroupFunction<S>> {
    let comps = convolution_components(f)?;
    comps
        .into_iter()
        .find(|(a, _)| a == alpha)
        .map(|(_, g)| g)
        .ok_or_else(|| crate::error::Error::domain(format!("{alpha} is not a partition of {}", f.n())))
}

/// `buckets[σ][c] = Σ { f(π) : σπ⁻¹ has cycle type c }`.
fn class_buckets<S: Scalar>(f: &GroupFunction<S>) -> Result<Vec<Vec<S>>> {
    let n = f.n();
    let group = SymmetricGroup::get(n)?;
    let k = group.classes().len();
    let mut perms: Vec<Vec<u8>> = Vec::with_capacity(factorial(n) as usize);
    for_each_permutation(n, |_, images| perms.push(images.to_vec()));
    let inverses: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0u8; n];
            for (i, &x) in p.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            inv
        })
        .collect();
    Ok(perms
        .par_iter()
        .map(|sigma| {
            let mut bucket = vec![S::zero(); k];
            let mut prod = vec![0u8; n];
            for (pi_inv, value) in inverses.iter().zip(f.values()) {
                if value.is_zero() {
                    continue;
                }
                for (x, slot) in prod.iter_mut().enumerate() {
                    *slot = sigma[pi_inv[x] as usize];
                }
                let c = group.class_of_images(&prod);
                bucket[c] = bucket[c].clone() + value.clone();
            }
            bucket
        })
        .collect())
}
