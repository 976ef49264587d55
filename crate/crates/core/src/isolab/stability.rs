use serde_json::{json, Value};

use crate::combinatorics::coset::TCoset;
use crate::combinatorics::counting::{binomial, factorial};
use crate::combinatorics::permset::PermutationSet;
use crate::error::{ensure_capacity, Error, Result};
use crate::fourier::{projection_report, CosetIndex};
use crate::scalar::{ratio, rational_pair, rational_sqrt, round_half_up, Rational, Scalar};

/// Search budget: exact search runs when `binomial(|C(n,t)|, m)` is at most this.
pub const MAX_EXACT_COMBINATIONS: u128 = 10_000_000;
/// Largest degree for the stability pipeline.
pub const MAX_STABILITY_DEGREE: usize = 8;
/// Passes of pairwise swap improvement after the greedy start.
const MAX_SWAP_PASSES: usize = 64;

/// Members of every t-coset, as ranks, in canonical enumeration order.
struct CosetMembers {
    index: CosetIndex,
    members: Vec<Vec<u32>>,
}

impl CosetMembers {
    fn new(n: usize, t: usize) -> Result<Self> {
        let index = CosetIndex::new(n, t)?;
        let mut members = vec![Vec::with_capacity(factorial(n - t) as usize); index.len()];
        crate::combinatorics::permutation::for_each_permutation(n, |r, images| {
            index.for_each_containing(images, |id| members[id].push(r as u32));
        });
        Ok(CosetMembers { index, members })
    }

    /// `|A ∩ T|` for every coset.
    fn overlaps(&self, set: &PermutationSet) -> Vec<usize> {
        self.members
            .iter()
            .map(|m| m.iter().filter(|&&r| set.contains_rank(r as usize)).count())
            .collect()
    }
}

/// Incrementally maintained `|A Δ C|` for a multiset union `C` of cosets.
struct Cover<'a> {
    set: &'a PermutationSet,
    counts: Vec<u16>,
    symdiff: i64,
}

impl<'a> Cover<'a> {
    fn new(set: &'a PermutationSet) -> Self {
        Cover {
            set,
            counts: vec![0; set.order()],
            symdiff: set.len() as i64,
        }
    }

    fn step(&self, r: u32) -> i64 {
        if self.set.contains_rank(r as usize) {
            -1
        } else {
            1
        }
    }

    fn add(&mut self, coset: &[u32]) {
        for &r in coset {
            if self.counts[r as usize] == 0 {
                self.symdiff += self.step(r);
            }
            self.counts[r as usize] += 1;
        }
    }

    fn remove(&mut self, coset: &[u32]) {
        for &r in coset {
            self.counts[r as usize] -= 1;
            if self.counts[r as usize] == 0 {
                self.symdiff -= self.step(r);
            }
        }
    }

    /// Change in `|A Δ C|` from replacing `out` by `inn`.
    fn swap_delta(&mut self, out: &[u32], inn: &[u32]) -> i64 {
        let before = self.symdiff;
        self.remove(out);
        self.add(inn);
        let delta = self.symdiff - before;
        self.remove(inn);
        self.add(out);
        delta
    }
}

/// Best union of `m` distinct t-cosets found for a set.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetUnion {
    pub cosets: Vec<TCoset>,
    pub set: PermutationSet,
    /// `|A Δ C|`.
    pub symdiff: usize,
    /// True when every `m`-subset of cosets was examined.
    pub exact: bool,
}

/// The union `C` of `m` distinct t-cosets minimising `|A Δ C|`.
///
/// Exhaustive when `binomial(|C(n,t)|, m) ≤ 10⁷`; otherwise the `m` cosets
/// with the largest `|A ∩ T|` (ties in canonical order), improved by
/// first-improvement swaps until a full pass changes nothing.
pub fn best_coset_union(set: &PermutationSet, t: usize, m: usize) -> Result<CosetUnion> {
    let n = set.n();
    if t > n {
        return Err(Error::domain(format!("t = {t} exceeds n = {n}")));
    }
    let cm = CosetMembers::new(n, t)?;
    let total = cm.members.len();
    if m > total {
        return Err(Error::domain(format!("{m} distinct cosets requested but S_{n} has {total} t-cosets")));
    }
    let exact = binomial(total, m) <= MAX_EXACT_COMBINATIONS;
    let chosen = if exact {
        exact_search(set, &cm, m)
    } else {
        greedy_search(set, &cm, m)
    };
    let mut union = PermutationSet::empty(n)?;
    for &id in &chosen {
        for &r in &cm.members[id] {
            union.insert_rank(r as usize);
        }
    }
    let symdiff = union.symmetric_difference_len(set)?;
    Ok(CosetUnion {
        cosets: chosen.iter().map(|&id| cm.index.cosets()[id].clone()).collect(),
        set: union,
        symdiff,
        exact,
    })
}

fn exact_search(set: &PermutationSet, cm: &CosetMembers, m: usize) -> Vec<usize> {
    fn walk(
        cm: &CosetMembers,
        cover: &mut Cover,
        start: usize,
        left: usize,
        current: &mut Vec<usize>,
        best: &mut (i64, Vec<usize>),
    ) {
        if left == 0 {
            if cover.symdiff < best.0 {
                *best = (cover.symdiff, current.clone());
            }
            return;
        }
        for id in start..=cm.members.len() - left {
            cover.add(&cm.members[id]);
            current.push(id);
            walk(cm, cover, id + 1, left - 1, current, best);
            current.pop();
            cover.remove(&cm.members[id]);
        }
    }
    let mut cover = Cover::new(set);
    let mut best = (i64::MAX, Vec::new());
    walk(cm, &mut cover, 0, m, &mut Vec::with_capacity(m), &mut best);
    best.1
}

fn greedy_search(set: &PermutationSet, cm: &CosetMembers, m: usize) -> Vec<usize> {
    let overlaps = cm.overlaps(set);
    let mut order: Vec<usize> = (0..cm.members.len()).collect();
    order.sort_by(|&a, &b| overlaps[b].cmp(&overlaps[a]).then(a.cmp(&b)));
    let mut chosen: Vec<usize> = order[..m].to_vec();
    let mut used = vec![false; cm.members.len()];
    let mut cover = Cover::new(set);
    for &id in &chosen {
        used[id] = true;
        cover.add(&cm.members[id]);
    }
    for _ in 0..MAX_SWAP_PASSES {
        let mut improved = false;
        for slot in chosen.iter_mut() {
            for cand in 0..cm.members.len() {
                if used[cand] {
                    continue;
                }
                let out = *slot;
                if cover.swap_delta(&cm.members[out], &cm.members[cand]) < 0 {
                    cover.remove(&cm.members[out]);
                    cover.add(&cm.members[cand]);
                    used[out] = false;
                    used[cand] = true;
                    *slot = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// True when `A` is a union of t-cosets, i.e. equals the union of the t-cosets it contains.
pub fn is_union_of_t_cosets(set: &PermutationSet, t: usize) -> Result<bool> {
    let cm = CosetMembers::new(set.n(), t)?;
    let mut covered = PermutationSet::empty(set.n())?;
    for (members, overlap) in cm.members.iter().zip(cm.overlaps(set)) {
        if overlap == members.len() {
            for &r in members {
                covered.insert_rank(r as usize);
            }
        }
    }
    Ok(covered == *set)
}

/// Measured quantities of the quasi-stability statement for one set.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub n: usize,
    pub t: usize,
    pub size: usize,
    /// `c = |A| / (n-t)!`.
    pub c: Rational,
    /// `ε = E[(f - f_t)²] (n)_t / c` (zero for the empty set).
    pub epsilon: Rational,
    /// `⌈c⌋`: nearest integer, halves rounded up.
    pub round_c: i128,
    /// Number of cosets in the best union found.
    pub m_found: usize,
    pub cosets: Vec<TCoset>,
    pub symdiff: usize,
    /// `|A Δ C| / |A|` (zero for the empty set).
    pub symdiff_ratio: Rational,
    pub exact_search: bool,
    /// `√ε`, exact when `ε` is a rational square.
    pub sqrt_epsilon: f64,
    pub sqrt_epsilon_exact: Option<Rational>,
    /// `c / √n`.
    pub c_over_sqrt_n: f64,
    /// `symdiff_ratio / (√ε + c/√n)`, the empirical constant.
    pub measured_constant: f64,
    /// `|c - ⌈c⌋| / ((√ε + c/√n) c)`, the empirical constant of the second clause.
    pub measured_rounding_constant: f64,
}

impl StabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "t": self.t,
            "size": self.size,
            "c": rational_pair(&self.c),
            "epsilon": rational_pair(&self.epsilon),
            "round_c": self.round_c,
            "m_found": self.m_found,
            "cosets": self.cosets.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "symdiff": self.symdiff,
            "symdiff_ratio": rational_pair(&self.symdiff_ratio),
            "exact_search": self.exact_search,
            "bound_inputs": {
                "sqrt_epsilon": self.sqrt_epsilon,
                "sqrt_epsilon_exact": self.sqrt_epsilon_exact.as_ref().map(rational_pair),
                "c_over_sqrt_n": self.c_over_sqrt_n,
            },
            "measured_constant": self.measured_constant,
            "measured_rounding_constant": self.measured_rounding_constant,
        })
    }
}

/// Projection weights, `⌈c⌋`, and the closest union of `⌈c⌋` t-cosets.
pub fn quasi_stability_report(set: &PermutationSet, t: usize) -> Result<StabilityReport> {
    stability_report_with_count(set, t, None)
}

/// [`quasi_stability_report`] searching unions of `m` cosets instead of `⌈c⌋`
/// when `m` is given.
pub fn stability_report_with_count(set: &PermutationSet, t: usize, m: Option<usize>) -> Result<StabilityReport> {
    let n = set.n();
    ensure_capacity("stability pipeline degree", MAX_STABILITY_DEGREE as u128, n as u128)?;
    let proj = projection_report(set, t)?;
    let epsilon = proj.epsilon.unwrap_or_else(|| ratio(0, 1));
    let round_c = round_half_up(&proj.c);
    let union = best_coset_union(set, t, m.unwrap_or(round_c as usize))?;
    let size = set.len();
    let symdiff_ratio = if size == 0 { ratio(0, 1) } else { ratio(union.symdiff as i128, size as i128) };

    let sqrt_epsilon_exact = rational_sqrt(&epsilon);
    let sqrt_epsilon = epsilon.to_f64().sqrt();
    let c_over_sqrt_n = proj.c.to_f64() / (n as f64).sqrt();
    let scale = sqrt_epsilon + c_over_sqrt_n;
    let rounding_gap = (proj.c - ratio(round_c, 1)).to_f64().abs();
    let guarded = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    Ok(StabilityReport {
        n,
        t,
        size,
        c: proj.c,
        epsilon,
        round_c,
        m_found: union.cosets.len(),
        cosets: union.cosets,
        symdiff: union.symdiff,
        symdiff_ratio,
        exact_search: union.exact,
        sqrt_epsilon,
        sqrt_epsilon_exact,
        c_over_sqrt_n,
        measured_constant: guarded(symdiff_ratio.to_f64(), scale),
        measured_rounding_constant: guarded(rounding_gap, scale * proj.c.to_f64()),
    })
}
