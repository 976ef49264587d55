use crate::combinatorics::counting::factorial;
use crate::combinatorics::permset::PermutationSet;
use crate::combinatorics::permutation::{for_each_permutation, Permutation};
use crate::error::{ensure_capacity, Error, Result};
use crate::group::MAX_DENSE_DEGREE;
use crate::scalar::{common_denominator, Rational, Scalar};

/// A function `S_n → S`, stored densely by lexicographic rank.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> GroupFunction<S> {
    pub fn new(n: usize, values: Vec<S>) -> Result<Self> {
        ensure_capacity("dense function degree", MAX_DENSE_DEGREE as u128, n as u128)?;
        let order = factorial(n) as usize;
        if values.len() != order {
            return Err(Error::domain(format!("function on S_{n} needs {order} values, got {}", values.len())));
        }
        Ok(GroupFunction { n, values })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::constant(n, S::zero())
    }

    pub fn constant(n: usize, c: S) -> Result<Self> {
        ensure_capacity("dense function degree", MAX_DENSE_DEGREE as u128, n as u128)?;
        Ok(GroupFunction {
            n,
            values: vec![c; factorial(n) as usize],
        })
    }

    /// `1_A`.
    pub fn indicator(set: &PermutationSet) -> Result<Self> {
        let mut f = Self::zero(set.n())?;
        for r in set.ranks() {
            f.values[r] = S::one();
        }
        Ok(f)
    }

    /// Evaluates `f` at every permutation, in rank order.
    pub fn from_fn(n: usize, mut f: impl FnMut(&[u8]) -> S) -> Result<Self> {
        ensure_capacity("dense function degree", MAX_DENSE_DEGREE as u128, n as u128)?;
        let mut values = Vec::with_capacity(factorial(n) as usize);
        for_each_permutation(n, |_, images| values.push(f(images)));
        Ok(GroupFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn at(&self, rank: usize) -> &S {
        &self.values[rank]
    }

    pub fn get(&self, sigma: &Permutation) -> Result<&S> {
        if sigma.degree() != self.n {
            return Err(Error::domain(format!("permutation of degree {} for a function on S_{}", sigma.degree(), self.n)));
        }
        Ok(&self.values[sigma.rank() as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_negligible())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::domain(format!("functions on S_{} and S_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, k: &S) -> Self {
        GroupFunction {
            n: self.n,
            values: self.values.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        GroupFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// `⟨f, g⟩ = (1/n!) Σ_σ f(σ) g(σ)`.
    pub fn inner_product(&self, other: &Self) -> Result<S> {
        self.check_same(other)?;
        let mut acc = S::zero();
        for (a, b) in self.values.iter().zip(&other.values) {
            acc = acc + a.clone() * b.clone();
        }
        Ok(acc / S::from_u128(factorial(self.n)))
    }

    pub fn norm_squared(&self) -> S {
        self.inner_product(self).expect("same degree")
    }

    /// `E[f]`.
    pub fn mean(&self) -> S {
        let mut acc = S::zero();
        for v in &self.values {
            acc = acc + v.clone();
        }
        acc / S::from_u128(factorial(self.n))
    }

    /// Exact values, when the scalar type has them.
    pub fn to_rational(&self) -> Option<GroupFunction<Rational>> {
        let values = self.values.iter().map(S::to_rational).collect::<Option<Vec<_>>>()?;
        Some(GroupFunction { n: self.n, values })
    }

    pub fn from_rational(f: &GroupFunction<Rational>) -> Self {
        GroupFunction {
            n: f.n,
            values: f.values.iter().map(S::from_rational).collect(),
        }
    }
}

impl GroupFunction<Rational> {
    /// `(D, F)` with `f = F / D`, `F` integral and `D` the least common denominator.
    pub(crate) fn integer_form(&self) -> Option<(i128, Vec<i128>)> {
        let d = common_denominator(&self.values)?;
        let values = self
            .values
            .iter()
            .map(|v| v.numer().checked_mul(d / v.denom()))
            .collect::<Option<Vec<_>>>()?;
        Some((d, values))
    }
}

/// `⟨f, g⟩` (free-function form of [`GroupFunction::inner_product`]).
pub fn inner_product<S: Scalar>(f: &GroupFunction<S>, g: &GroupFunction<S>) -> Result<S> {
    f.inner_product(g)
}
