//! Irreducible and permutation characters of `S_n` and the long-cycle counts
//! used to bound character norms.

mod cycles;
mod permutation_character;
mod table;

pub use cycles::{character_l1_norm, count_long_cycle_permutations, x_beta_s_cycle_types, x_beta_s_size};
pub use permutation_character::{determinantal_character, permutation_character, young_decomposition, MAX_DETERMINANT_ROWS};
pub use table::{character_table, class_size, CharacterTable, MAX_TABLE_DEGREE};

use crate::combinatorics::counting::factorial;
use crate::combinatorics::partition::{enumerate_partitions, Partition};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A function on `S_n` constant on conjugacy classes, stored as one value per
/// cycle type in descending lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction<S> {
    n: usize,
    classes: Vec<Partition>,
    values: Vec<S>,
}

impl<S: Scalar> ClassFunction<S> {
    pub fn new(n: usize, values: Vec<S>) -> Result<Self> {
        let classes = enumerate_partitions(n)?;
        if values.len() != classes.len() {
            return Err(Error::domain(format!(
                "class function on S_{n} needs {} values, got {}",
                classes.len(),
                values.len()
            )));
        }
        Ok(ClassFunction { n, classes, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> S) -> Result<Self> {
        let classes = enumerate_partitions(n)?;
        let values = classes.iter().map(&mut f).collect();
        Ok(ClassFunction { n, classes, values })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| S::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, cycle_type: &Partition) -> Result<&S> {
        self.classes
            .binary_search_by(|q| cycle_type.cmp(q))
            .map(|i| &self.values[i])
            .map_err(|_| Error::domain(format!("{cycle_type} is not a cycle type of S_{}", self.n)))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::domain(format!("class functions on S_{} and S_{}", self.n, other.n)));
        }
        Ok(())
    }

    /// `(1/n!) Σ_c |c| f(c) g(c)`.
    pub fn inner_product(&self, other: &Self) -> Result<S> {
        self.check_same(other)?;
        let mut acc = S::zero();
        for (c, (a, b)) in self.classes.iter().zip(self.values.iter().zip(&other.values)) {
            acc = acc + S::from_u128(class_size(c)) * a.clone() * b.clone();
        }
        Ok(acc / S::from_u128(factorial(self.n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.map_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.map_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, k: &S) -> Self {
        ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.clone() * k.clone()).collect(),
        }
    }

    fn map_with(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn inner_product_of_irreducibles() {
        let t = CharacterTable::compute(4).unwrap();
        let a: ClassFunction<Rational> = t.row(&Partition::new(vec![3, 1]).unwrap()).unwrap();
        let b: ClassFunction<Rational> = t.row(&Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(a.inner_product(&a).unwrap(), ratio(1, 1));
        assert_eq!(a.inner_product(&b).unwrap(), ratio(0, 1));
        let f: ClassFunction<f64> = t.row(&Partition::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert!((f.inner_product(&f).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lookup_by_cycle_type() {
        let f = ClassFunction::<Rational>::from_fn(3, |c| Rational::from_integer(c.len() as i128)).unwrap();
        assert_eq!(*f.value(&Partition::new(vec![2, 1]).unwrap()).unwrap(), ratio(2, 1));
        assert!(f.value(&Partition::new(vec![2]).unwrap()).is_err());
        assert!(ClassFunction::<Rational>::new(3, vec![]).is_err());
    }
}
