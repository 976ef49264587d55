//! Spectra of normal Cayley graphs on `S_n`, edge boundaries in the
//! transposition graph, and the spectral lower bounds on them.

mod boundary;
mod dense;

pub use boundary::{
    boundary_size, cayley_apply, edge_boundary, edges_between, is_disjoint_one_coset_union, spectral_lower_bounds,
    BoundaryReport, NamedBound, ALON_MILMAN, CERTIFIED_DEGREE, DIACONIS_SHAHSHAHANI, MAX_BOUND_DEGREE,
    SPECTRAL_IDENTITY,
};
pub use dense::{dense_adjacency, dense_cayley_check, dense_operator_m_check, DenseCheck, MAX_DENSE_ORACLE_DEGREE};

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::characters::{class_size, CharacterTable, ClassFunction};
use crate::combinatorics::counting::binomial;
use crate::combinatorics::partition::{enumerate_partitions, Partition, MAX_PARTITION_DEGREE};
use crate::combinatorics::tableaux::count_standard_tableaux;
use crate::error::{ensure_capacity, Error, Result};
use crate::scalar::{format_rational, rational_pair, Rational, Scalar};

/// A normal Cayley graph on `S_n` given by a class-function weight `w`; the
/// adjacency operator is `A_{σ,π} = w(σπ⁻¹)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleySpec<S> {
    weight: ClassFunction<S>,
}

impl<S: Scalar> CayleySpec<S> {
    pub fn new(weight: ClassFunction<S>) -> Self {
        CayleySpec { weight }
    }

    /// Unweighted graph generated by the union of the given conjugacy classes.
    pub fn from_classes(n: usize, classes: &[Partition]) -> Result<Self> {
        for c in classes {
            if c.n() != n {
                return Err(Error::domain(format!("{c} is not a cycle type of S_{n}")));
            }
        }
        let weight = ClassFunction::from_fn(n, |c| if classes.contains(c) { S::one() } else { S::zero() })?;
        Ok(CayleySpec { weight })
    }

    pub fn transpositions(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("the transposition graph needs n ≥ 2"));
        }
        Self::from_classes(n, &[Partition::from_unsorted(transposition_parts(n))])
    }

    /// Parses a generator description: `transpositions`, `<k>-cycles`, or a
    /// `;`-separated list of cycle types such as `3,1,1;2,2,1`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "transpositions" {
            return Self::transpositions(n);
        }
        if let Some(k) = text.strip_suffix("-cycles") {
            let k: usize = k.parse().map_err(|_| Error::parse(format!("bad cycle length in {text:?}")))?;
            if k < 2 || k > n {
                return Err(Error::domain(format!("{k}-cycles do not exist in S_{n}")));
            }
            let mut parts = vec![k];
            parts.extend(std::iter::repeat_n(1, n - k));
            return Self::from_classes(n, &[Partition::new(parts)?]);
        }
        let classes = text
            .split(';')
            .map(|c| c.trim().parse::<Partition>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_classes(n, &classes)
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn weight(&self) -> &ClassFunction<S> {
        &self.weight
    }
}

fn transposition_parts(n: usize) -> Vec<usize> {
    let mut parts = vec![2];
    parts.extend(std::iter::repeat_n(1, n - 2));
    parts
}

/// One row of a spectrum: the eigenvalue on `U_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry<S> {
    pub partition: Partition,
    /// Adjacency eigenvalue `λ_α`.
    pub lambda: S,
    /// Laplacian eigenvalue `μ_α = λ_{(n)} - λ_α`.
    pub mu: S,
    /// `dim[α]²`.
    pub multiplicity: u128,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport<S> {
    pub n: usize,
    pub entries: Vec<SpectrumEntry<S>>,
}

impl<S: Scalar> SpectrumReport<S> {
    pub fn eigenvalue(&self, alpha: &Partition) -> Option<&S> {
        self.entries.iter().find(|e| &e.partition == alpha).map(|e| &e.lambda)
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Least non-zero Laplacian eigenvalue.
    pub fn spectral_gap(&self) -> Option<S> {
        self.entries
            .iter()
            .filter(|e| !e.mu.is_negligible())
            .map(|e| e.mu.clone())
            .fold(None, |best: Option<S>, m| match best {
                Some(b) if b <= m => Some(b),
                _ => Some(m),
            })
    }
}

impl SpectrumReport<Rational> {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "partition": e.partition.to_csv_form(),
                    "lambda": rational_pair(&e.lambda),
                    "mu": rational_pair(&e.mu),
                    "multiplicity": big_integer(e.multiplicity),
                })
            })
            .collect();
        json!({ "n": self.n, "eigenvalues": rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,lambda,mu,multiplicity\n");
        for e in &self.entries {
            writeln!(
                out,
                "\"{}\",{},{},{}",
                e.partition.to_csv_form(),
                format_rational(&e.lambda),
                format_rational(&e.mu),
                e.multiplicity
            )
            .expect("write to string");
        }
        out
    }
}

/// A JSON number when it fits in `u64`, otherwise a decimal string.
pub(crate) fn big_integer(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

/// `λ_α = (1/dim[α]) Σ_c |c| w(c) χ_α(c)` for every `α`.
pub fn normal_cayley_eigenvalues<S: Scalar>(spec: &CayleySpec<S>) -> Result<SpectrumReport<S>> {
    let n = spec.n();
    let table = CharacterTable::cached(n)?;
    let weighted: Vec<S> = table
        .partitions()
        .iter()
        .zip(spec.weight.values())
        .map(|(c, w)| S::from_u128(class_size(c)) * w.clone())
        .collect();
    let lambdas: Vec<S> = (0..table.partitions().len())
        .map(|a| {
            let mut acc = S::zero();
            for (x, &chi) in weighted.iter().zip(table.row_values(a)) {
                acc = acc + x.clone() * S::from_i64(chi);
            }
            acc / S::from_u128(table.dim(a))
        })
        .collect();
    let degree = lambdas[0].clone();
    let entries = table
        .partitions()
        .iter()
        .zip(lambdas)
        .enumerate()
        .map(|(a, (alpha, lambda))| SpectrumEntry {
            partition: alpha.clone(),
            mu: degree.clone() - lambda.clone(),
            lambda,
            multiplicity: table.dim(a).pow(2),
        })
        .collect();
    Ok(SpectrumReport { n, entries })
}

/// `λ_α = ½ Σ_j ((α_j - j)(α_j - j + 1) - j(j - 1))` (rows numbered from 1).
pub fn transposition_eigenvalue(alpha: &Partition) -> i128 {
    let twice: i128 = alpha
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let j = i as i128 + 1;
            let a = a as i128;
            (a - j) * (a - j + 1) - j * (j - 1)
        })
        .sum();
    twice / 2
}

/// Transposition-graph spectrum from the closed form, for `n ≤ 30`.
pub fn transposition_eigenvalues(n: usize) -> Result<SpectrumReport<Rational>> {
    ensure_capacity("transposition spectrum degree", MAX_PARTITION_DEGREE as u128, n as u128)?;
    let degree = binomial(n, 2) as i128;
    let entries = enumerate_partitions(n)?
        .into_iter()
        .map(|alpha| {
            let lambda = transposition_eigenvalue(&alpha);
            let dim = count_standard_tableaux(&alpha)?;
            Ok(SpectrumEntry {
                multiplicity: dim.checked_mul(dim).ok_or(Error::Capacity {
                    what: "multiplicity dim²",
                    limit: u128::MAX,
                    requested: u128::MAX,
                })?,
                lambda: Rational::from_integer(lambda),
                mu: Rational::from_integer(degree - lambda),
                partition: alpha,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport { n, entries })
}

/// Largest degree accepted by [`dominance_monotonicity_check`].
pub const MAX_MONOTONICITY_DEGREE: usize = 12;

/// Pairs `(α, β)` with `α` dominating `β` but `λ_α < λ_β`; empty when the
/// transposition eigenvalues are monotone under dominance.
pub fn dominance_monotonicity_check(n: usize) -> Result<Vec<(Partition, Partition)>> {
    ensure_capacity("monotonicity check degree", MAX_MONOTONICITY_DEGREE as u128, n as u128)?;
    let parts = enumerate_partitions(n)?;
    let lambdas: Vec<i128> = parts.iter().map(transposition_eigenvalue).collect();
    let mut violations = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            if a.dominates(b) && lambdas[i] < lambdas[j] {
                violations.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_values() {
        for n in 4..=12 {
            let s = transposition_eigenvalues(n).unwrap();
            let c = binomial(n, 2) as i128;
            assert_eq!(*s.eigenvalue(&Partition::row(n)).unwrap(), ratio(c, 1));
            assert_eq!(*s.eigenvalue(&p(&[n - 1, 1])).unwrap(), ratio(c - n as i128, 1));
            assert_eq!(*s.eigenvalue(&p(&[n - 2, 2])).unwrap(), ratio(c - 2 * n as i128 + 2, 1));
            assert_eq!(*s.eigenvalue(&Partition::column(n)).unwrap(), ratio(-c, 1));
            assert_eq!(s.spectral_gap().unwrap(), ratio(n as i128, 1));
            assert_eq!(s.total_multiplicity(), crate::combinatorics::counting::factorial(n));
        }
    }

    #[test]
    fn closed_form_matches_characters() {
        for n in 2..=10 {
            let chars = normal_cayley_eigenvalues(&CayleySpec::<Rational>::transpositions(n).unwrap()).unwrap();
            assert_eq!(chars, transposition_eigenvalues(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn contents_give_the_same_eigenvalues() {
        for alpha in enumerate_partitions(9).unwrap() {
            assert_eq!(transposition_eigenvalue(&alpha), alpha.contents().iter().map(|&c| c as i128).sum::<i128>());
        }
    }

    #[test]
    fn monotone_under_dominance() {
        for n in 1..=12 {
            assert!(dominance_monotonicity_check(n).unwrap().is_empty());
        }
        assert!(dominance_monotonicity_check(13).unwrap_err().is_capacity());
    }

    #[test]
    fn generator_parsing() {
        let t = CayleySpec::<Rational>::parse(5, "transpositions").unwrap();
        let c = CayleySpec::<Rational>::parse(5, "2-cycles").unwrap();
        let l = CayleySpec::<Rational>::parse(5, "2,1,1,1").unwrap();
        assert_eq!(t, c);
        assert_eq!(t, l);
        let both = CayleySpec::<Rational>::parse(5, "3,1,1; 2,2,1").unwrap();
        assert_eq!(both.weight().values().iter().filter(|v| **v == ratio(1, 1)).count(), 2);
        assert!(CayleySpec::<Rational>::parse(5, "6-cycles").is_err());
        assert!(CayleySpec::<Rational>::parse(5, "3,1").is_err());
    }

    #[test]
    fn reports_serialize() {
        let s = transposition_eigenvalues(3).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("partition,lambda,mu,multiplicity\n\"3\",3,0,1\n"));
        assert_eq!(s.to_json()["eigenvalues"][1]["lambda"], json!([0, 1]));
    }
}
