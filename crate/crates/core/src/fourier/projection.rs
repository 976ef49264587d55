use serde_json::{json, Value};

use crate::combinatorics::counting::{factorial, falling_factorial};
use crate::combinatorics::partition::Partition;
use crate::combinatorics::permset::PermutationSet;
use crate::error::{Error, Result};
use crate::fourier::convolution::{convolution_components, MAX_CONVOLUTION_DEGREE};
use crate::fourier::modular::ModularSplit;
use crate::fourier::GroupFunction;
use crate::scalar::{ratio, rational_pair, Rational, Scalar};

/// Which piece of the degree filtration to project onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `U_t`: every `U_α` with `α₁ ≥ n - t`.
    U,
    /// `V_t`: every `U_α` with `α₁ = n - t`.
    V,
}

impl Space {
    pub fn selects(self, alpha: &Partition, t: usize) -> bool {
        let n = alpha.n();
        match self {
            Space::U => alpha.first_row() + t >= n,
            Space::V => alpha.first_row() + t == n,
        }
    }
}

/// Exact splitter for exact scalars; `None` means the caller should use the
/// convolution kernel instead.
fn exact_split<S: Scalar>(f: &GroupFunction<S>) -> Result<Option<ModularSplit>> {
    if !S::EXACT {
        return Ok(None);
    }
    let Some(exact) = f.to_rational() else {
        return Ok(None);
    };
    match ModularSplit::new(&exact) {
        Ok(split) => Ok(Some(split)),
        Err(e) if e.is_capacity() && f.n() <= MAX_CONVOLUTION_DEGREE => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every isotypic component `(α, f_α)`, in descending lex order of `α`.
///
/// Exact scalars go through the modular splitter; other scalars (and exact
/// inputs too large for it) use kernel convolution.
pub fn isotypic_components<S: Scalar>(f: &GroupFunction<S>) -> Result<Vec<(Partition, GroupFunction<S>)>> {
    match exact_split(f)? {
        Some(split) => {
            split.all_weights()?;
            Ok(split
                .partitions()
                .iter()
                .enumerate()
                .map(|(a, alpha)| (alpha.clone(), GroupFunction::from_rational(&split.component(a))))
                .collect())
        }
        None => convolution_components(f),
    }
}

/// The orthogonal projection `f_α` of `f` onto `U_α`.
pub fn isotypic_projection<S: Scalar>(f: &GroupFunction<S>, alpha: &Partition) -> Result<GroupFunction<S>> {
    if alpha.n() != f.n() {
        return Err(Error::domain(format!("{alpha} is not a partition of {}", f.n())));
    }
    match exact_split(f)? {
        Some(split) => {
            let a = split
                .partitions()
                .iter()
                .position(|p| p == alpha)
                .expect("every partition of n is listed");
            Ok(GroupFunction::from_rational(&split.component(a)))
        }
        None => Ok(convolution_components(f)?
            .into_iter()
            .find(|(p, _)| p == alpha)
            .map(|(_, g)| g)
            .expect("every partition of n is listed")),
    }
}

/// `f_t` (space `U`) or `g_t = f_t - f_{t-1}` (space `V`).
pub fn degree_projection<S: Scalar>(f: &GroupFunction<S>, t: usize, space: Space) -> Result<GroupFunction<S>> {
    let n = f.n();
    if t > n {
        return Err(Error::domain(format!("degree t = {t} exceeds n = {n}")));
    }
    match exact_split(f)? {
        Some(split) => {
            let total = split.combined_weights(|alpha| space.selects(alpha, t));
            let den = split.denominator();
            let values = total.into_iter().map(|v| S::from_rational(&ratio(v, den))).collect();
            GroupFunction::new(n, values)
        }
        None => {
            let mut acc = GroupFunction::zero(n)?;
            for (alpha, g) in convolution_components(f)? {
                if space.selects(&alpha, t) {
                    acc = acc.add(&g)?;
                }
            }
            Ok(acc)
        }
    }
}

/// `‖f_α‖²` for every `α`, in descending lex order.
pub fn isotypic_norms<S: Scalar>(f: &GroupFunction<S>) -> Result<Vec<(Partition, S)>> {
    match exact_split(f)? {
        Some(split) => Ok(split
            .partitions()
            .iter()
            .cloned()
            .zip(split.norms()?.iter().map(S::from_rational))
            .collect()),
        None => Ok(convolution_components(f)?
            .into_iter()
            .map(|(a, g)| {
                let norm = g.norm_squared();
                (a, norm)
            })
            .collect()),
    }
}

/// Exact Fourier weight profile of a set `A ⊆ S_n` against the degree-`t` filtration.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionReport {
    pub n: usize,
    pub t: usize,
    pub size: usize,
    /// `c = |A| / (n-t)!`.
    pub c: Rational,
    /// `‖f_α‖²` per partition, descending lex order.
    pub norms: Vec<(Partition, Rational)>,
    /// `E[(f - f_t)²] = Σ_{α₁ < n-t} ‖f_α‖²`.
    pub tail: Rational,
    /// `tail · (n)_t / c`, absent when `A` is empty.
    pub epsilon: Option<Rational>,
}

impl ProjectionReport {
    /// `Σ_α ‖f_α‖²`, which equals `‖f‖² = |A|/n!`.
    pub fn total_weight(&self) -> Rational {
        self.norms.iter().map(|(_, v)| *v).sum()
    }

    pub fn norm_of(&self, alpha: &Partition) -> Option<Rational> {
        self.norms.iter().find(|(a, _)| a == alpha).map(|(_, v)| *v)
    }

    pub fn to_json(&self) -> Value {
        let norms: Vec<Value> = self
            .norms
            .iter()
            .map(|(a, v)| {
                let [p, q] = rational_pair(v);
                json!([a.to_csv_form(), p, q])
            })
            .collect();
        json!({
            "n": self.n,
            "t": self.t,
            "size": self.size,
            "c": rational_pair(&self.c),
            "norms": norms,
            "tail": rational_pair(&self.tail),
            "epsilon": self.epsilon.as_ref().map(rational_pair),
        })
    }
}

pub fn projection_report(set: &PermutationSet, t: usize) -> Result<ProjectionReport> {
    let n = set.n();
    if t > n {
        return Err(Error::domain(format!("degree t = {t} exceeds n = {n}")));
    }
    let f = GroupFunction::<Rational>::indicator(set)?;
    let norms = isotypic_norms(&f)?;
    let tail: Rational = norms
        .iter()
        .filter(|(a, _)| !Space::U.selects(a, t))
        .map(|(_, v)| *v)
        .sum();
    let size = set.len();
    let c = ratio(size as i128, factorial(n - t) as i128);
    let epsilon = (size > 0).then(|| tail * ratio(falling_factorial(n, t) as i128, 1) / c);
    Ok(ProjectionReport {
        n,
        t,
        size,
        c,
        norms,
        tail,
        epsilon,
    })
}
