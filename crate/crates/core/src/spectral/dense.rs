//! Dense-matrix oracles for small `n`: explicit adjacency and averaging
//! matrices, checked against the character formulas with a floating-point
//! symmetric eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::characters::CharacterTable;
use crate::combinatorics::counting::{binomial, factorial, falling_factorial};
use crate::combinatorics::permutation::for_each_permutation;
use crate::error::{ensure_capacity, Result};
use crate::fourier::{operator_m_spectrum, operator_m_weight};
use crate::group::SymmetricGroup;
use crate::scalar::{Rational, Scalar};
use crate::spectral::{normal_cayley_eigenvalues, CayleySpec};

/// Largest degree for which dense `n! × n!` matrices are built.
pub const MAX_DENSE_ORACLE_DEGREE: usize = 6;

/// Outcome of a dense cross-check.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseCheck {
    pub n: usize,
    /// Largest gap between the sorted dense eigenvalues and the formula's
    /// eigenvalues repeated `dim[α]²` times.
    pub max_eigenvalue_error: f64,
    /// Largest entry of `A P_α - λ_α P_α` over all `α`, where `P_α` is the
    /// projector onto `U_α`.
    pub max_eigenspace_residual: f64,
    /// For the averaging operator: largest entry of the difference between
    /// the class-function matrix and the coset-count definition (zero otherwise).
    pub max_matrix_error: f64,
    pub tolerance: f64,
}

impl DenseCheck {
    pub fn passed(&self) -> bool {
        self.max_eigenvalue_error <= self.tolerance
            && self.max_eigenspace_residual <= self.tolerance
            && self.max_matrix_error <= self.tolerance
    }
}

struct Elements {
    images: Vec<Vec<u8>>,
    inverses: Vec<Vec<u8>>,
}

fn elements(n: usize) -> Elements {
    let mut images = Vec::new();
    for_each_permutation(n, |_, im| images.push(im.to_vec()));
    let inverses = images
        .iter()
        .map(|p| {
            let mut inv = vec![0u8; n];
            for (i, &x) in p.iter().enumerate() {
                inv[x as usize] = i as u8;
            }
            inv
        })
        .collect();
    Elements { images, inverses }
}

/// Class index of `σπ⁻¹` for every pair of ranks, row-major.
fn quotient_classes(n: usize) -> Result<Vec<usize>> {
    let group = SymmetricGroup::get(n)?;
    let el = elements(n);
    let order = el.images.len();
    let mut out = Vec::with_capacity(order * order);
    let mut prod = vec![0u8; n];
    for sigma in &el.images {
        for pi_inv in &el.inverses {
            for (x, slot) in prod.iter_mut().enumerate() {
                *slot = sigma[pi_inv[x] as usize];
            }
            out.push(group.class_of_images(&prod));
        }
    }
    Ok(out)
}

fn class_matrix(n: usize, classes: &[usize], per_class: &[f64]) -> DMatrix<f64> {
    let order = factorial(n) as usize;
    DMatrix::from_fn(order, order, |i, j| per_class[classes[i * order + j]])
}

/// `A_{σ,π} = w(σπ⁻¹)` as a dense matrix.
pub fn dense_adjacency<S: Scalar>(spec: &CayleySpec<S>) -> Result<DMatrix<f64>> {
    let n = spec.n();
    ensure_capacity("dense matrix degree", MAX_DENSE_ORACLE_DEGREE as u128, n as u128)?;
    let w: Vec<f64> = spec.weight().values().iter().map(Scalar::to_f64).collect();
    Ok(class_matrix(n, &quotient_classes(n)?, &w))
}

/// Compares a dense matrix with the eigenvalue `λ_α` claimed on each `U_α`.
fn compare_spectrum(n: usize, matrix: DMatrix<f64>, lambdas: &[Rational]) -> Result<(f64, f64)> {
    let table = CharacterTable::cached(n)?;
    let classes = quotient_classes(n)?;
    let order = factorial(n) as f64;

    let mut expected: Vec<f64> = Vec::new();
    for (a, l) in lambdas.iter().enumerate() {
        let dim = table.dim(a);
        expected.extend(std::iter::repeat_n(l.to_f64(), (dim * dim) as usize));
    }
    expected.sort_by(f64::total_cmp);

    let mut residual: f64 = 0.0;
    for (a, l) in lambdas.iter().enumerate() {
        let dim = table.dim(a) as f64;
        let chi: Vec<f64> = table.row_values(a).iter().map(|&v| v as f64 * dim / order).collect();
        let projector = class_matrix(n, &classes, &chi);
        let diff = &matrix * &projector - &projector * l.to_f64();
        residual = residual.max(diff.amax());
    }

    let mut dense: Vec<f64> = SymmetricEigen::new(matrix).eigenvalues.iter().copied().collect();
    dense.sort_by(f64::total_cmp);
    let eig_error = dense
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((eig_error, residual))
}

/// Character-formula eigenvalues of a Cayley graph against a dense eigensolve.
pub fn dense_cayley_check<S: Scalar>(spec: &CayleySpec<S>, tolerance: f64) -> Result<DenseCheck> {
    let n = spec.n();
    let matrix = dense_adjacency(spec)?;
    let exact = spec
        .weight()
        .values()
        .iter()
        .map(|v| v.to_rational())
        .collect::<Option<Vec<_>>>();
    let lambdas: Vec<Rational> = match exact {
        Some(w) => {
            let spec = CayleySpec::new(crate::characters::ClassFunction::new(n, w)?);
            normal_cayley_eigenvalues(&spec)?.entries.into_iter().map(|e| e.lambda).collect()
        }
        None => {
            return Err(crate::error::Error::domain("dense check needs an exactly representable weight"));
        }
    };
    let (max_eigenvalue_error, max_eigenspace_residual) = compare_spectrum(n, matrix, &lambdas)?;
    Ok(DenseCheck {
        n,
        max_eigenvalue_error,
        max_eigenspace_residual,
        max_matrix_error: 0.0,
        tolerance,
    })
}

/// The averaging operator `M` at level `t`: its class-function matrix
/// `(1/n!) binomial(n,t) ξ_{(n-t,1^t)}(σπ⁻¹)` is compared entrywise with the
/// coset-count definition `((n)_t/n!) · #{t-cosets containing σ and π}` and its
/// spectrum with `binomial(n,t) K_{α,(n-t,1^t)} / dim[α]`.
pub fn dense_operator_m_check(n: usize, t: usize, tolerance: f64) -> Result<DenseCheck> {
    ensure_capacity("dense matrix degree", MAX_DENSE_ORACLE_DEGREE as u128, n as u128)?;
    let weight = operator_m_weight(n, t)?;
    let matrix = dense_adjacency(&CayleySpec::new(weight))?;

    // Cosets containing both σ and π correspond to t-subsets of the points
    // where σ and π agree.
    let el = elements(n);
    let scale = falling_factorial(n, t) as f64 / factorial(n) as f64;
    let mut max_matrix_error: f64 = 0.0;
    for (i, s) in el.images.iter().enumerate() {
        for (j, p) in el.images.iter().enumerate() {
            let agree = s.iter().zip(p).filter(|(a, b)| a == b).count();
            let direct = scale * binomial(agree, t) as f64;
            max_matrix_error = max_matrix_error.max((matrix[(i, j)] - direct).abs());
        }
    }

    let lambdas: Vec<Rational> = operator_m_spectrum(n, t)?.into_iter().map(|(_, l)| l).collect();
    let (max_eigenvalue_error, max_eigenspace_residual) = compare_spectrum(n, matrix, &lambdas)?;
    Ok(DenseCheck {
        n,
        max_eigenvalue_error,
        max_eigenspace_residual,
        max_matrix_error,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_graph_small() {
        for n in 2..=4 {
            let spec = CayleySpec::<Rational>::transpositions(n).unwrap();
            let check = dense_cayley_check(&spec, 1e-8).unwrap();
            assert!(check.passed(), "{check:?}");
        }
    }

    #[test]
    fn three_cycles_in_s5() {
        let spec = CayleySpec::<Rational>::parse(5, "3-cycles").unwrap();
        assert!(dense_cayley_check(&spec, 1e-8).unwrap().passed());
    }

    #[test]
    fn averaging_operator_small() {
        for (n, t) in [(4, 1), (4, 2), (5, 1)] {
            let check = dense_operator_m_check(n, t, 1e-8).unwrap();
            assert!(check.passed(), "n={n} t={t} {check:?}");
        }
    }

    #[test]
    fn wrong_eigenvalues_are_detected() {
        let n = 4;
        let spec = CayleySpec::<Rational>::transpositions(n).unwrap();
        let matrix = dense_adjacency(&spec).unwrap();
        let lambdas = vec![Rational::from_integer(0); 5];
        let (eig, res) = compare_spectrum(n, matrix, &lambdas).unwrap();
        assert!(eig > 1.0 && res > 0.1);
    }

    #[test]
    fn capacity_limit() {
        let spec = CayleySpec::<Rational>::transpositions(7).unwrap();
        assert!(dense_adjacency(&spec).unwrap_err().is_capacity());
    }
}
