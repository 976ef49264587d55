//! Edge boundaries in the transposition graph and the spectral bounds on them.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::counting::factorial;
use crate::combinatorics::permset::PermutationSet;
use crate::combinatorics::permutation::{for_each_permutation, lehmer_rank};
use crate::error::{ensure_capacity, Error, Result};
use crate::fourier::{isotypic_norms, GroupFunction};
use crate::group::{SymmetricGroup, MAX_DENSE_DEGREE};
use crate::scalar::{ratio, rational_pair, Rational, Scalar};
use crate::spectral::{big_integer, transposition_eigenvalues, CayleySpec};

/// Largest degree accepted by [`spectral_lower_bounds`].
pub const MAX_BOUND_DEGREE: usize = 8;

/// Work limit `n! · |support of w|` for [`cayley_apply`] with general weights.
const MAX_APPLY_WORK: u128 = 2_000_000_000;

/// `(Af)(σ) = Σ_π w(σπ⁻¹) f(π) = Σ_g w(g) f(g⁻¹σ)`.
///
/// Weights supported on the transposition class use the neighbour table;
/// anything else walks every group element with non-zero weight.
pub fn cayley_apply<S: Scalar>(spec: &CayleySpec<S>, f: &GroupFunction<S>) -> Result<GroupFunction<S>> {
    let n = spec.n();
    if f.n() != n {
        return Err(Error::domain(format!("function on S_{} against a Cayley graph on S_{n}", f.n())));
    }
    let group = SymmetricGroup::get(n)?;
    let weights = spec.weight().values();
    let transposition = (n >= 2).then(|| group.class_index(&transposition_type(n))).flatten();
    let only_transpositions = weights
        .iter()
        .enumerate()
        .all(|(c, w)| w.is_zero() || Some(c) == transposition);

    if only_transpositions {
        let w = transposition.map(|c| weights[c].clone()).unwrap_or_else(S::zero);
        let values = (0..group.order())
            .into_par_iter()
            .map(|r| {
                let mut acc = S::zero();
                for &q in group.neighbors(r) {
                    acc = acc + f.at(q as usize).clone();
                }
                acc * w.clone()
            })
            .collect();
        return GroupFunction::new(n, values);
    }

    // Inverses of the weighted elements, paired with their weights.
    let mut support: Vec<(Vec<u8>, S)> = Vec::new();
    for_each_permutation(n, |r, images| {
        let w = &weights[group.class_of_rank(r)];
        if !w.is_zero() {
            let mut inv = vec![0u8; n];
            for (i, &x) in images.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            support.push((inv, w.clone()));
        }
    });
    ensure_capacity(
        "Cayley operator work n!·|support|",
        MAX_APPLY_WORK,
        group.order() as u128 * support.len() as u128,
    )?;
    let mut elements = Vec::with_capacity(group.order());
    for_each_permutation(n, |_, images| elements.push(images.to_vec()));
    let values = elements
        .par_iter()
        .map(|sigma| {
            let mut prod = vec![0u8; n];
            let mut acc = S::zero();
            for (ginv, w) in &support {
                for (slot, &x) in prod.iter_mut().zip(sigma) {
                    *slot = ginv[x as usize];
                }
                acc = acc + w.clone() * f.at(lehmer_rank(&prod) as usize).clone();
            }
            acc
        })
        .collect();
    GroupFunction::new(n, values)
}

fn transposition_type(n: usize) -> crate::combinatorics::partition::Partition {
    let mut parts = vec![2];
    parts.extend(std::iter::repeat_n(1, n - 2));
    crate::combinatorics::partition::Partition::from_unsorted(parts)
}

/// `|∂A|`: transposition-graph edges with exactly one endpoint in `A`.
pub fn boundary_size(set: &PermutationSet) -> Result<u128> {
    let group = SymmetricGroup::get(set.n())?;
    let members: Vec<usize> = set.ranks().collect();
    Ok(members
        .par_iter()
        .map(|&r| group.neighbors(r).iter().filter(|&&q| !set.contains_rank(q as usize)).count() as u128)
        .sum())
}

/// `e(S, T)`: ordered pairs `(σ, π) ∈ S × T` joined by a transposition edge.
pub fn edges_between(s: &PermutationSet, t: &PermutationSet) -> Result<u128> {
    if s.n() != t.n() {
        return Err(Error::domain(format!("set degrees differ ({} vs {})", s.n(), t.n())));
    }
    let group = SymmetricGroup::get(s.n())?;
    let members: Vec<usize> = s.ranks().collect();
    Ok(members
        .par_iter()
        .map(|&r| group.neighbors(r).iter().filter(|&&q| t.contains_rank(q as usize)).count() as u128)
        .sum())
}

/// True when `A` is a disjoint union of 1-cosets, i.e. `A = {σ : σ(i) ∈ J}` or
/// `A = {σ : σ⁻¹(j) ∈ I}` for some point and some set of points. Two 1-cosets
/// are disjoint only when they share their domain point or their image point,
/// so every such union has one of these two shapes.
pub fn is_disjoint_one_coset_union(set: &PermutationSet) -> bool {
    let n = set.n();
    if set.is_empty() || n == 0 {
        return true;
    }
    let block = factorial(n - 1) as usize;
    let members: Vec<_> = set.permutations().collect();
    (0..n).any(|i| {
        let mut images = vec![false; n];
        let mut preimages = vec![false; n];
        for p in &members {
            images[p.images()[i] as usize] = true;
            preimages[p.inverse().images()[i] as usize] = true;
        }
        let count = |v: &[bool]| v.iter().filter(|&&b| b).count();
        count(&images) * block == members.len() || count(&preimages) * block == members.len()
    })
}

/// A lower bound on `|∂A|` and how far it is from the true value.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedBound {
    pub name: &'static str,
    pub value: Rational,
    /// `|∂A| - value`.
    pub slack: Rational,
    pub tight: bool,
}

impl NamedBound {
    fn new(name: &'static str, value: Rational, boundary: u128) -> Self {
        let slack = Rational::from_u128(boundary) - value;
        NamedBound {
            name,
            value,
            tight: slack.is_zero(),
            slack,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "value": rational_pair(&self.value),
            "slack": rational_pair(&self.slack),
            "tight": self.tight,
        })
    }
}

/// Exact edge boundary of a set, with whichever lower bounds were computed.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub n: usize,
    pub size: usize,
    pub boundary: u128,
    pub bounds: Vec<NamedBound>,
    /// Whether `1_A - (|A|/n!)·1` lies in the `μ₂`-eigenspace; computed
    /// together with the spectral bounds.
    pub centered_in_gap_eigenspace: Option<bool>,
}

impl BoundaryReport {
    pub fn bound(&self, name: &str) -> Option<&NamedBound> {
        self.bounds.iter().find(|b| b.name == name)
    }

    /// Every bound is at most `|∂A|`.
    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.slack >= Rational::from_integer(0))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "size": self.size,
            "boundary": big_integer(self.boundary),
            "bounds": self.bounds.iter().map(NamedBound::to_json).collect::<Vec<_>>(),
            "centered_in_gap_eigenspace": self.centered_in_gap_eigenspace,
        })
    }
}

/// `|∂A|` by direct count, with no bounds attached.
pub fn edge_boundary(set: &PermutationSet) -> Result<BoundaryReport> {
    Ok(BoundaryReport {
        n: set.n(),
        size: set.len(),
        boundary: boundary_size(set)?,
        bounds: Vec::new(),
        centered_in_gap_eigenspace: None,
    })
}

/// Bound names used by [`spectral_lower_bounds`].
pub const ALON_MILMAN: &str = "alon_milman";
pub const DIACONIS_SHAHSHAHANI: &str = "diaconis_shahshahani";
pub const SPECTRAL_IDENTITY: &str = "spectral_identity";
pub const CERTIFIED_DEGREE: &str = "certified_degree";

/// `|∂A|` together with
/// - `alon_milman`: `μ₂ |A| |Aᶜ| / n!`, with `μ₂` read off the character spectrum;
/// - `diaconis_shahshahani`: `|A| (n! - |A|) / (n-1)!`;
/// - `spectral_identity`: `n! Σ_α μ_α ‖f_α‖²`, which equals `|∂A|`;
/// - `certified_degree`: `n! · t(n-t+1) · Σ_{α₁ ≤ n-t} ‖f_α‖²`, valid because
///   `μ_α ≥ t(n-t+1)` whenever `α₁ ≤ n-t`.
pub fn spectral_lower_bounds(set: &PermutationSet, t: usize) -> Result<BoundaryReport> {
    let n = set.n();
    ensure_capacity("spectral bound degree", MAX_BOUND_DEGREE as u128, n as u128)?;
    const { assert!(MAX_BOUND_DEGREE <= MAX_DENSE_DEGREE) };
    if t == 0 || 2 * t > n {
        return Err(Error::domain(format!("certified bound needs 1 ≤ t ≤ n/2 (t = {t}, n = {n})")));
    }
    let mut report = edge_boundary(set)?;
    let boundary = report.boundary;
    let order = factorial(n) as i128;
    let size = set.len() as i128;

    let spectrum = transposition_eigenvalues(n)?;
    let gap = spectrum.spectral_gap().expect("n ≥ 2 has a non-trivial eigenvalue");
    let alon = gap * ratio(size * (order - size), order);
    let diaconis = ratio(size * (order - size), factorial(n - 1) as i128);

    let norms = isotypic_norms(&GroupFunction::<Rational>::indicator(set)?)?;
    let mut identity = ratio(0, 1);
    let mut tail = ratio(0, 1);
    let mut in_gap_space = true;
    for ((alpha, norm), entry) in norms.iter().zip(&spectrum.entries) {
        debug_assert_eq!(alpha, &entry.partition);
        identity += entry.mu * norm;
        if alpha.first_row() + t <= n {
            tail += norm;
        }
        if alpha.first_row() != n && entry.mu != gap && !norm.is_zero() {
            in_gap_space = false;
        }
    }
    identity *= ratio(order, 1);
    let certified = tail * ratio(order * (t * (n - t + 1)) as i128, 1);

    report.bounds = vec![
        NamedBound::new(ALON_MILMAN, alon, boundary),
        NamedBound::new(DIACONIS_SHAHSHAHANI, diaconis, boundary),
        NamedBound::new(SPECTRAL_IDENTITY, identity, boundary),
        NamedBound::new(CERTIFIED_DEGREE, certified, boundary),
    ];
    report.centered_in_gap_eigenspace = Some(in_gap_space);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::coset::TCoset;
    use crate::combinatorics::counting::binomial;
    use crate::combinatorics::partition::enumerate_partitions;
    use crate::fourier::isotypic_components;
    use crate::spectral::transposition_eigenvalue;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coset(n: usize, i: &[usize], j: &[usize]) -> PermutationSet {
        PermutationSet::from_permutations(n, &TCoset::new(n, i, j).unwrap().members()).unwrap()
    }

    fn random_set(n: usize, size: usize, seed: u64) -> PermutationSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = factorial(n) as usize;
        let mut s = PermutationSet::empty(n).unwrap();
        while s.len() < size {
            s.insert_rank(rng.gen_range(0..order));
        }
        s
    }

    #[test]
    fn degree_bound_is_below_every_high_eigenvalue() {
        // μ_α ≥ t(n-t+1) for α₁ ≤ n-t, the step that makes the certified bound valid.
        for n in 2..=12 {
            let c = binomial(n, 2) as i128;
            let parts = enumerate_partitions(n).unwrap();
            for t in 1..=n / 2 {
                let floor = (t * (n - t + 1)) as i128;
                for alpha in parts.iter().filter(|a| a.first_row() + t <= n) {
                    assert!(c - transposition_eigenvalue(alpha) >= floor, "n={n} t={t} {alpha}");
                }
            }
        }
    }

    #[test]
    fn coset_and_trivial_boundaries() {
        assert_eq!(boundary_size(&coset(5, &[1], &[1])).unwrap(), 96);
        assert_eq!(boundary_size(&PermutationSet::empty(5).unwrap()).unwrap(), 0);
        assert_eq!(boundary_size(&PermutationSet::full(5).unwrap()).unwrap(), 0);
        let single = PermutationSet::from_ranks(4, [0]).unwrap();
        assert_eq!(boundary_size(&single).unwrap(), 6);
    }

    #[test]
    fn edges_between_is_symmetric() {
        let a = random_set(5, 40, 1);
        let b = random_set(5, 30, 2);
        assert_eq!(edges_between(&a, &b).unwrap(), edges_between(&b, &a).unwrap());
        assert_eq!(edges_between(&a, &a.complement()).unwrap(), boundary_size(&a).unwrap());
    }

    #[test]
    fn one_coset_unions() {
        let n = 5;
        let a = coset(n, &[2], &[1]).union(&coset(n, &[2], &[4])).unwrap();
        assert!(is_disjoint_one_coset_union(&a));
        let b = coset(n, &[1], &[3]).union(&coset(n, &[4], &[3])).unwrap();
        assert!(is_disjoint_one_coset_union(&b));
        let c = coset(n, &[1], &[1]).union(&coset(n, &[2], &[2])).unwrap();
        assert!(!is_disjoint_one_coset_union(&c));
        assert!(!is_disjoint_one_coset_union(&coset(n, &[1, 2], &[1, 2])));
    }

    #[test]
    fn bounds_on_a_one_coset() {
        for n in 3..=6 {
            let r = spectral_lower_bounds(&coset(n, &[1], &[2]), 1).unwrap();
            let expected = ((n - 1) * factorial(n - 1) as usize) as u128;
            assert_eq!(r.boundary, expected);
            assert!(r.bound(DIACONIS_SHAHSHAHANI).unwrap().tight);
            assert!(r.bound(ALON_MILMAN).unwrap().tight);
            assert!(r.bound(SPECTRAL_IDENTITY).unwrap().tight);
            assert_eq!(r.centered_in_gap_eigenspace, Some(true));
        }
    }

    #[test]
    fn random_sets_satisfy_the_identity() {
        for seed in 0..10 {
            let a = random_set(5, 60, seed);
            let r = spectral_lower_bounds(&a, 2).unwrap();
            assert!(r.all_bounds_hold(), "{r:?}");
            assert!(r.bound(SPECTRAL_IDENTITY).unwrap().tight);
            assert_eq!(
                r.bound(ALON_MILMAN).unwrap().value,
                r.bound(DIACONIS_SHAHSHAHANI).unwrap().value
            );
        }
    }

    #[test]
    fn bound_parameter_range() {
        let a = coset(4, &[1], &[1]);
        assert!(spectral_lower_bounds(&a, 0).is_err());
        assert!(spectral_lower_bounds(&a, 3).is_err());
        assert!(spectral_lower_bounds(&PermutationSet::empty(9).unwrap(), 1).unwrap_err().is_capacity());
    }

    #[test]
    fn adjacency_acts_by_eigenvalues() {
        let n = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = GroupFunction::from_fn(n, |_| ratio(rng.gen_range(-3..=3), 1)).unwrap();
        let spec = CayleySpec::<Rational>::transpositions(n).unwrap();
        let spectrum = transposition_eigenvalues(n).unwrap();
        for ((alpha, g), entry) in isotypic_components(&f).unwrap().iter().zip(&spectrum.entries) {
            assert_eq!(alpha, &entry.partition);
            assert_eq!(cayley_apply(&spec, g).unwrap(), g.scale(&entry.lambda));
        }
    }

    #[test]
    fn general_weight_matches_neighbour_table() {
        let n = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = GroupFunction::from_fn(n, |_| ratio(rng.gen_range(-3..=3), 1)).unwrap();
        let t = CayleySpec::<Rational>::transpositions(n).unwrap();
        // A second class forces the element-walking path; linearity splits it.
        let both = CayleySpec::<Rational>::parse(n, "2,1,1;3,1").unwrap();
        let three = CayleySpec::<Rational>::parse(n, "3-cycles").unwrap();
        let lhs = cayley_apply(&both, &f).unwrap();
        let rhs = cayley_apply(&t, &f).unwrap().add(&cayley_apply(&three, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
