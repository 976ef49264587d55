//! Exact isotypic splitting through the central Jucys–Murphy power sums.
//!
//! `P_k = Σ_j X_j^k` with `X_j = Σ_{i<j} (i j)` is central in the group
//! algebra and acts on `U_α` as the scalar `p_k(contents of α)`. A fixed
//! integer combination `Z = Σ_k r_k P_k` has pairwise distinct eigenvalues
//! `z_α`, so the projection onto `U_α` is the Lagrange polynomial
//! `Π_{β≠α} (Z - z_β)/(z_α - z_β)` applied to `f`. Everything runs modulo the
//! Mersenne prime `2^61 - 1`; since `(n!/dim[α]) · D · f_α` is an integer of
//! bounded size (`D` clears the denominators of `f`), the residues lift back
//! to exact values.

use rayon::prelude::*;

use crate::characters::CharacterTable;
use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::Partition;
use crate::error::{Error, Result};
use crate::fourier::GroupFunction;
use crate::group::SymmetricGroup;
use crate::linalg::pow_mod;
use crate::scalar::{ratio, Rational};

const P: u64 = (1 << 61) - 1;
/// Denominators of the input are limited so norms stay inside `i128`.
const MAX_DENOMINATOR: i128 = 1 << 40;

fn mul_mod(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % P as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn to_residue(v: i128) -> u64 {
    v.rem_euclid(P as i128) as u64
}

fn lift(v: u64) -> i128 {
    if v > P / 2 {
        v as i128 - P as i128
    } else {
        v as i128
    }
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2, P)
}

/// Krylov data for one input function, from which every isotypic component
/// can be read off.
pub(crate) struct ModularSplit {
    n: usize,
    partitions: Vec<Partition>,
    dims: Vec<u128>,
    denom: i128,
    ints: Vec<i128>,
    krylov: Vec<Vec<u64>>,
    lagrange: Vec<Vec<u64>>,
}

impl ModularSplit {
    pub(crate) fn new(f: &GroupFunction<Rational>) -> Result<Self> {
        let n = f.n();
        let group = SymmetricGroup::get(n)?;
        let table = CharacterTable::cached(n)?;
        let partitions = table.partitions().to_vec();
        let dims: Vec<u128> = (0..partitions.len()).map(|a| table.dim(a)).collect();
        let (denom, ints) = f.integer_form().ok_or(Error::Capacity {
            what: "common denominator of function values",
            limit: MAX_DENOMINATOR as u128,
            requested: u128::MAX,
        })?;
        if denom > MAX_DENOMINATOR {
            return Err(Error::Capacity {
                what: "common denominator of function values",
                limit: MAX_DENOMINATOR as u128,
                requested: denom as u128,
            });
        }
        // |W| ≤ max|F| · n! · dim must stay below P/2 for the lift.
        let max_abs = ints.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
        let bound = (P / 2) as u128 / (factorial(n) * dims.iter().max().copied().unwrap_or(1));
        if max_abs > bound {
            return Err(Error::Capacity {
                what: "integer magnitude of function values for exact projection",
                limit: bound,
                requested: max_abs,
            });
        }

        let (weights, eigen) = central_combination(&partitions);
        let m = partitions.len();
        let mut krylov = Vec::with_capacity(m);
        krylov.push(ints.iter().map(|&v| to_residue(v)).collect::<Vec<u64>>());
        for i in 1..m {
            let next = apply_central(&group, &weights, &krylov[i - 1]);
            krylov.push(next);
        }
        let lagrange = lagrange_coefficients(&eigen);
        Ok(ModularSplit {
            n,
            partitions,
            dims,
            denom,
            ints,
            krylov,
            lagrange,
        })
    }

    pub(crate) fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// `W_α = (n!/dim[α]) · D · f_α`, an integer vector.
    pub(crate) fn weights(&self, a: usize) -> Vec<i128> {
        let coeffs = &self.lagrange[a];
        let order = factorial(self.n) as usize;
        let scale = mul_mod((factorial(self.n) % P as u128) as u64, inv_mod((self.dims[a] % P as u128) as u64));
        (0..order)
            .into_par_iter()
            .map(|s| {
                let mut acc = 0u64;
                for (c, v) in coeffs.iter().zip(&self.krylov) {
                    acc = add_mod(acc, mul_mod(*c, v[s]));
                }
                lift(mul_mod(acc, scale))
            })
            .collect()
    }

    /// `n! · D`, the denominator of every component.
    pub(crate) fn denominator(&self) -> i128 {
        factorial(self.n) as i128 * self.denom
    }

    /// `Σ dim[α] W_α` over the selected `α`, i.e. `n! · D` times the sum of
    /// those components.
    pub(crate) fn combined_weights(&self, mut select: impl FnMut(&Partition) -> bool) -> Vec<i128> {
        let mut total = vec![0i128; self.ints.len()];
        for (a, alpha) in self.partitions.iter().enumerate() {
            if select(alpha) {
                let dim = self.dims[a] as i128;
                for (acc, w) in total.iter_mut().zip(self.weights(a)) {
                    *acc += dim * w;
                }
            }
        }
        total
    }

    /// `f_α = W_α · dim[α] / (n! · D)`.
    pub(crate) fn component(&self, a: usize) -> GroupFunction<Rational> {
        let den = factorial(self.n) as i128 * self.denom;
        let dim = self.dims[a] as i128;
        let values = self.weights(a).into_iter().map(|w| ratio(w * dim, den)).collect();
        GroupFunction::new(self.n, values).expect("degree already validated")
    }

    /// Every component's weights, after checking `Σ_α f_α = f` exactly.
    pub(crate) fn all_weights(&self) -> Result<Vec<Vec<i128>>> {
        let all: Vec<Vec<i128>> = (0..self.partitions.len()).map(|a| self.weights(a)).collect();
        let order = factorial(self.n) as i128;
        for (s, &target) in self.ints.iter().enumerate() {
            let total: i128 = all.iter().zip(&self.dims).map(|(w, &d)| w[s] * d as i128).sum();
            if total != order * target {
                return Err(Error::domain("isotypic components failed the completeness check"));
            }
        }
        Ok(all)
    }

    /// `‖f_α‖² = ⟨f, f_α⟩ = dim[α] · Σ_σ F(σ)W_α(σ) / (n!² D²)` for every `α`.
    pub(crate) fn norms(&self) -> Result<Vec<Rational>> {
        let order = factorial(self.n) as i128;
        let overflow = || Error::Capacity {
            what: "exact norm accumulator",
            limit: i128::MAX as u128,
            requested: u128::MAX,
        };
        self.all_weights()?
            .iter()
            .zip(&self.dims)
            .map(|(w, &dim)| {
                let mut acc: i128 = 0;
                for (&x, &y) in self.ints.iter().zip(w) {
                    acc = acc.checked_add(x.checked_mul(y).ok_or_else(overflow)?).ok_or_else(overflow)?;
                }
                Ok(ratio(acc, order) * ratio(dim as i128, order) / ratio(self.denom, 1) / ratio(self.denom, 1))
            })
            .collect()
    }
}

/// Chooses `Z = Σ_{k≤K} B^{k-1} P_k` with distinct eigenvalues mod `P`.
/// Returns the coefficients `r_k` and the eigenvalue `z_α` per partition.
fn central_combination(partitions: &[Partition]) -> (Vec<u64>, Vec<u64>) {
    let n = partitions.first().map(Partition::n).unwrap_or(0);
    let power_sums: Vec<Vec<i128>> = partitions
        .iter()
        .map(|a| {
            let c = a.contents();
            (1..=n.max(1) as u32).map(|k| c.iter().map(|&x| (x as i128).pow(k)).sum()).collect()
        })
        .collect();
    // The full sequence p_1..p_n determines the content multiset, hence α.
    let mut k = 1;
    while k < n.max(1) {
        let mut prefixes: Vec<&[i128]> = power_sums.iter().map(|p| &p[..k]).collect();
        prefixes.sort();
        prefixes.dedup();
        if prefixes.len() == partitions.len() {
            break;
        }
        k += 1;
    }
    let mut base = 1_000_003u64;
    loop {
        let weights: Vec<u64> = (0..k as u64).map(|e| pow_mod(base, e, P)).collect();
        let eigen: Vec<u64> = power_sums
            .iter()
            .map(|p| {
                p[..k]
                    .iter()
                    .zip(&weights)
                    .fold(0, |acc, (&v, &w)| add_mod(acc, mul_mod(to_residue(v), w)))
            })
            .collect();
        let mut sorted = eigen.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == eigen.len() {
            return (weights, eigen);
        }
        base += 2;
    }
}

/// `Z v` with `Z = Σ_k r_k Σ_j X_j^k`, where `X_j` sums the right
/// multiplications by the transpositions `(i j)`, `i < j`.
fn apply_central(group: &SymmetricGroup, weights: &[u64], v: &[u64]) -> Vec<u64> {
    let n = group.n();
    let mut out = vec![0u64; v.len()];
    let mut cur = vec![0u64; v.len()];
    for j in 1..n {
        let base = j * (j - 1) / 2;
        cur.copy_from_slice(v);
        for &r in weights {
            let next: Vec<u64> = (0..v.len())
                .into_par_iter()
                .map(|s| {
                    let nb = &group.neighbors(s)[base..base + j];
                    // At most 8 residues below 2^61 are summed before reducing.
                    let sum: u64 = nb.iter().map(|&t| cur[t as usize]).sum();
                    sum % P
                })
                .collect();
            cur = next;
            for (o, &c) in out.iter_mut().zip(&cur) {
                *o = add_mod(*o, mul_mod(r, c));
            }
        }
    }
    out
}

/// Coefficients of `Π_{β≠α} (x - z_β)/(z_α - z_β)` for every `α`, lowest degree first.
fn lagrange_coefficients(eigen: &[u64]) -> Vec<Vec<u64>> {
    let m = eigen.len();
    // Full product Π (x - z_β), lowest degree first.
    let mut full = vec![1u64];
    for &z in eigen {
        let mut next = vec![0u64; full.len() + 1];
        for (i, &c) in full.iter().enumerate() {
            next[i + 1] = add_mod(next[i + 1], c);
            next[i] = sub_mod(next[i], mul_mod(c, z));
        }
        full = next;
    }
    eigen
        .iter()
        .map(|&za| {
            // Synthetic division by (x - z_α).
            let mut q = vec![0u64; m];
            let mut carry = 0u64;
            for i in (1..=m).rev() {
                carry = add_mod(full[i], mul_mod(carry, za));
                q[i - 1] = carry;
            }
            let denom = eigen
                .iter()
                .filter(|&&zb| zb != za)
                .fold(1u64, |acc, &zb| mul_mod(acc, sub_mod(za, zb)));
            let inv = inv_mod(denom);
            q.into_iter().map(|c| mul_mod(c, inv)).collect()
        })
        .collect()
}
