use crate::characters::CharacterTable;
use crate::combinatorics::counting::factorial;
use crate::combinatorics::coset::{t_coset_count, TCoset};
use crate::combinatorics::permset::PermutationSet;
use crate::error::{ensure_capacity, Error, Result};
use crate::fourier::cosets::CosetIndex;
use crate::fourier::projection_report;
use crate::linalg::{rank_mod_prime, sparse_rank, SparseRow};
use crate::scalar::{ratio, Rational};

/// Largest degree accepted by [`span_check_ut`].
pub const MAX_SPAN_DEGREE: usize = 7;
/// Matrices with at most this many entries are eliminated over the rationals.
const EXACT_ENTRY_LIMIT: u128 = 50_000;
/// Budget for modular elimination, in `rows · rank · columns` operations.
const MODULAR_WORK_LIMIT: u128 = 10_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Sparse Gaussian elimination over the rationals.
    Exact,
    /// Rank over `GF(p)` (a lower bound for the rational rank) reaching the
    /// dimension of `U_t`, which bounds it above because the standard
    /// t-coset indicator has zero weight outside `U_t` and `U_t` is closed
    /// under left and right translation.
    ModularCertificate,
    /// Rank over `GF(p)` fell short of the dimension, so only the lower bound
    /// is known.
    ModularLowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub n: usize,
    pub t: usize,
    /// `Σ_{α₁ ≥ n-t} dim[α]²`.
    pub dimension: u128,
    /// Rank of the t-coset indicator family.
    pub rank: u128,
    pub equal: bool,
    pub method: RankMethod,
}

/// Compares the rank of the t-coset indicators with `dim U_t`.
pub fn span_check_ut(n: usize, t: usize) -> Result<SpanCheck> {
    ensure_capacity("span check degree", MAX_SPAN_DEGREE as u128, n as u128)?;
    if t > n {
        return Err(Error::domain(format!("t = {t} exceeds n = {n}")));
    }
    let table = CharacterTable::cached(n)?;
    let dimension: u128 = table
        .partitions()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.first_row() + t >= n)
        .map(|(i, _)| table.dim(i).pow(2))
        .sum();
    let rows = t_coset_count(n, t);
    let order = factorial(n);
    let index = CosetIndex::new(n, t)?;
    let supports = || {
        index.cosets().iter().map(|c| c.members().iter().map(|p| p.rank() as usize).collect::<Vec<_>>())
    };

    let (rank, method) = if rows * order <= EXACT_ENTRY_LIMIT {
        let sparse = supports().map(|mut s| {
            s.sort_unstable();
            s.into_iter().map(|c| (c, ratio(1, 1))).collect::<SparseRow<Rational>>()
        });
        (sparse_rank(sparse) as u128, RankMethod::Exact)
    } else {
        ensure_capacity("modular elimination work", MODULAR_WORK_LIMIT, rows * dimension * order)?;
        let standard = TCoset::new(n, &(1..=t).collect::<Vec<_>>(), &(1..=t).collect::<Vec<_>>())?;
        let inside = projection_report(&PermutationSet::from_permutations(n, &standard.members())?, t)?.tail == ratio(0, 1);
        let r = rank_mod_prime(supports(), order as usize, dimension as usize) as u128;
        let method = if inside && r == dimension {
            RankMethod::ModularCertificate
        } else {
            RankMethod::ModularLowerBound
        };
        (r, method)
    };
    Ok(SpanCheck {
        n,
        t,
        dimension,
        rank,
        equal: rank == dimension && method != RankMethod::ModularLowerBound,
        method,
    })
}
