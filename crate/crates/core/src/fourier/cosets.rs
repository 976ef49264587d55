use std::collections::HashMap;

use crate::characters::{permutation_character, CharacterTable, ClassFunction};
use crate::combinatorics::counting::{
    arrangement_rank, binomial, combination_rank, combinations, factorial, falling_factorial,
};
use crate::combinatorics::coset::{enumerate_t_cosets, TCoset};
use crate::combinatorics::partition::Partition;
use crate::combinatorics::permset::PermutationSet;
use crate::combinatorics::permutation::{for_each_permutation, Permutation};
use crate::combinatorics::tableaux::kostka_number;
use crate::error::{ensure_capacity, Error, Result};
use crate::fourier::modular::ModularSplit;
use crate::fourier::{GroupFunction, Space};
use crate::group::MAX_DENSE_DEGREE;
use crate::scalar::{ratio, Rational, Scalar};

/// Indexes the t-cosets of `S_n` in [`enumerate_t_cosets`] order and lists,
/// for any permutation, the `binomial(n, t)` cosets containing it.
#[derive(Debug, Clone)]
pub struct CosetIndex {
    n: usize,
    t: usize,
    domains: Vec<Vec<usize>>,
    cosets: Vec<TCoset>,
}

impl CosetIndex {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        ensure_capacity("coset index degree", MAX_DENSE_DEGREE as u128, n as u128)?;
        let cosets = enumerate_t_cosets(n, t)?;
        Ok(CosetIndex {
            n,
            t,
            domains: combinations(n, t),
            cosets,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[TCoset] {
        &self.cosets
    }

    pub fn id_of(&self, coset: &TCoset) -> Option<usize> {
        if coset.n() != self.n || coset.t() != self.t {
            return None;
        }
        let (dom, img): (Vec<usize>, Vec<usize>) = coset.pairs().unzip();
        let id = combination_rank(self.n, &dom) * falling_factorial(self.n, self.t) as usize
            + arrangement_rank(self.n, &img);
        Some(id)
    }

    /// Calls `visit(id)` for every coset containing the permutation with these
    /// 0-based images.
    pub fn for_each_containing(&self, images: &[u8], mut visit: impl FnMut(usize)) {
        let per_domain = falling_factorial(self.n, self.t) as usize;
        let mut img = vec![0usize; self.t];
        for (d, dom) in self.domains.iter().enumerate() {
            for (slot, &x) in img.iter_mut().zip(dom) {
                *slot = images[x] as usize;
            }
            visit(d * per_domain + arrangement_rank(self.n, &img));
        }
    }

    /// `Σ_{π∈T} g(π)` for every coset `T`.
    pub fn coset_sums<S: Scalar>(&self, g: &GroupFunction<S>) -> Result<Vec<S>> {
        self.check_degree(g.n())?;
        let mut sums = vec![S::zero(); self.len()];
        for_each_permutation(self.n, |r, images| {
            let v = g.at(r);
            if !v.is_zero() {
                self.for_each_containing(images, |id| sums[id] = sums[id].clone() + v.clone());
            }
        });
        Ok(sums)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::domain(format!("function on S_{n} against cosets of S_{}", self.n)));
        }
        Ok(())
    }
}

/// Per-coset coefficients of a set `A` at level `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetStatistic {
    pub coset: TCoset,
    /// `a_T = |A ∩ T| / (n-t)!`.
    pub a: Rational,
    /// `b_T = (n)_t ⟨g_t, 1_T⟩`, the mean of the `V_t` projection over `T`.
    pub b: Rational,
}

/// `a_T` and `b_T` for every t-coset, in [`enumerate_t_cosets`] order.
pub fn coset_statistics(set: &PermutationSet, t: usize) -> Result<Vec<CosetStatistic>> {
    let n = set.n();
    let index = CosetIndex::new(n, t)?;
    let f = GroupFunction::<Rational>::indicator(set)?;
    let coset_size = factorial(n - t) as i128;

    let mut counts = vec![0i128; index.len()];
    for r in set.ranks() {
        let images = Permutation::unrank(n, r as u64)?;
        index.for_each_containing(images.images(), |id| counts[id] += 1);
    }

    // g_t = G / (n! D) with G integral; b_T = (Σ_{σ∈T} G(σ)) / ((n-t)! n! D).
    let split = ModularSplit::new(&f)?;
    let g = split.combined_weights(|alpha| Space::V.selects(alpha, t));
    let mut sums = vec![0i128; index.len()];
    for_each_permutation(n, |r, images| {
        let v = g[r];
        if v != 0 {
            index.for_each_containing(images, |id| sums[id] += v);
        }
    });
    let den = coset_size * split.denominator();
    Ok(index
        .cosets()
        .iter()
        .zip(counts.into_iter().zip(sums))
        .map(|(coset, (count, sum))| CosetStatistic {
            coset: coset.clone(),
            a: ratio(count, coset_size),
            b: ratio(sum, den),
        })
        .collect())
}

/// Checks that the `b_T` sum to zero along every "row" and "column" of
/// extensions of a `(t-1)`-coset: for each `(t-1)`-coset `S` and each free
/// image `y`, `Σ_k b_{S ∪ (k,y)} = 0`, and for each free domain point `x`,
/// `Σ_l b_{S ∪ (x,l)} = 0`. Returns the number of vanishing sums checked, or
/// the first non-vanishing one as an error.
pub fn verify_coset_dependencies(stats: &[CosetStatistic], n: usize, t: usize) -> Result<usize> {
    if t == 0 {
        return Ok(0);
    }
    let b: HashMap<&TCoset, Rational> = stats.iter().map(|s| (&s.coset, s.b)).collect();
    let mut checked = 0;
    for base in enumerate_t_cosets(n, t - 1)? {
        let pairs: Vec<(usize, usize)> = base.pairs().collect();
        let free_dom: Vec<usize> = (0..n).filter(|x| pairs.iter().all(|p| p.0 != *x)).collect();
        let free_img: Vec<usize> = (0..n).filter(|y| pairs.iter().all(|p| p.1 != *y)).collect();
        let extend = |x: usize, y: usize| {
            let mut p = pairs.clone();
            p.push((x, y));
            TCoset::from_pairs(n, p)
        };
        for &y in &free_img {
            let total: Rational = free_dom.iter().map(|&k| b[&extend(k, y)]).sum();
            if total != ratio(0, 1) {
                return Err(Error::domain(format!("b-sum over domain extensions of {base} with image {} is {total}", y + 1)));
            }
            checked += 1;
        }
        for &x in &free_dom {
            let total: Rational = free_img.iter().map(|&l| b[&extend(x, l)]).sum();
            if total != ratio(0, 1) {
                return Err(Error::domain(format!("b-sum over image extensions of {base} at point {} is {total}", x + 1)));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// `Mg = (n)_t Σ_T ⟨g, 1_T⟩ 1_T`, i.e. `Mg(σ) = ((n)_t / n!) Σ_{T∋σ} Σ_{π∈T} g(π)`.
pub fn operator_m_apply<S: Scalar>(g: &GroupFunction<S>, t: usize) -> Result<GroupFunction<S>> {
    operator_m_apply_indexed(&CosetIndex::new(g.n(), t)?, g)
}

/// [`operator_m_apply`] reusing a prebuilt index.
pub fn operator_m_apply_indexed<S: Scalar>(index: &CosetIndex, g: &GroupFunction<S>) -> Result<GroupFunction<S>> {
    let n = g.n();
    let sums = index.coset_sums(g)?;
    let scale = S::from_u128(falling_factorial(n, index.t())) / S::from_u128(factorial(n));
    GroupFunction::from_fn(n, |images| {
        let mut acc = S::zero();
        index.for_each_containing(images, |id| acc = acc.clone() + sums[id].clone());
        acc * scale.clone()
    })
}

/// `λ_α = binomial(n,t) K_{α,(n-t,1^t)} / dim[α]` for every `α ⊢ n`.
pub fn operator_m_spectrum(n: usize, t: usize) -> Result<Vec<(Partition, Rational)>> {
    if t > n {
        return Err(Error::domain(format!("t = {t} exceeds n = {n}")));
    }
    let hook = Partition::hook(n, t)?;
    let table = CharacterTable::cached(n)?;
    table
        .partitions()
        .iter()
        .enumerate()
        .map(|(a, alpha)| {
            let k = kostka_number(alpha, &hook)?;
            Ok((alpha.clone(), ratio((binomial(n, t) * k) as i128, table.dim(a) as i128)))
        })
        .collect()
}

/// The weight `w = (1/n!) binomial(n,t) ξ_{(n-t,1^t)}` whose Cayley operator is `M`.
pub fn operator_m_weight(n: usize, t: usize) -> Result<ClassFunction<Rational>> {
    let hook = Partition::hook(n, t)?;
    let scale = ratio(binomial(n, t) as i128, factorial(n) as i128);
    let mut err = None;
    let w = ClassFunction::from_fn(n, |c| match permutation_character(&hook, c) {
        Ok(x) => scale * ratio(x as i128, 1),
        Err(e) => {
            err = Some(e);
            ratio(0, 1)
        }
    })?;
    err.map_or(Ok(w), Err)
}
