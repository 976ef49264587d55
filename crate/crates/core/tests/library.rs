//! Library-scale properties of the transposition graph: sets of size `(n-t)!`
//! never beat a t-coset, and lex segments are optimal at small degree.

use proptest::prelude::*;
use sn_spectral::combinatorics::{enumerate_t_cosets, factorial, lex_initial_segment, PermutationSet};
use sn_spectral::isolab::{exhaustive_benefraim, is_union_of_t_cosets, perturb, random_set, t_coset_boundary, FamilySpec};
use sn_spectral::spectral::boundary_size;

const RANDOM_SETS: u64 = 500;
const PERTURBED_SETS: u64 = 200;

fn coset_sets(n: usize, t: usize) -> Vec<PermutationSet> {
    enumerate_t_cosets(n, t)
        .unwrap()
        .iter()
        .map(|c| PermutationSet::from_permutations(n, &c.members()).unwrap())
        .collect()
}

fn check_degree(n: usize, t: usize) {
    let floor = t_coset_boundary(n, t);
    let size = factorial(n - t) as usize;
    let cosets = coset_sets(n, t);
    let mut library: Vec<PermutationSet> = cosets.clone();
    library.push(lex_initial_segment(n, size).unwrap());
    for seed in 0..RANDOM_SETS {
        library.push(random_set(n, size, seed).unwrap());
    }
    for seed in 0..PERTURBED_SETS {
        let base = &cosets[seed as usize % cosets.len()];
        let swap = 1 + seed as usize % (size / 2).max(1);
        library.push(perturb(base, swap, swap, seed).unwrap());
    }
    for set in &library {
        assert_eq!(set.len(), size);
        let b = boundary_size(set).unwrap();
        assert!(b >= floor, "n={n} t={t}: boundary {b} below {floor}");
        if b == floor {
            assert!(is_union_of_t_cosets(set, t).unwrap(), "n={n} t={t}: non-coset attains the floor");
        }
    }
}

#[test]
fn minimum_size_sets_at_degree_six() {
    check_degree(6, 1);
    check_degree(6, 2);
}

#[test]
fn minimum_size_sets_at_degree_seven() {
    check_degree(7, 1);
    check_degree(7, 2);
}

#[test]
fn minimum_size_sets_at_degree_eight() {
    check_degree(8, 1);
    check_degree(8, 2);
}

#[test]
fn lex_pairs_in_s4() {
    let table = exhaustive_benefraim(4).unwrap();
    assert_eq!(table.rows[2].min_boundary, 10);
    assert_eq!(table.rows[2].lex_boundary, 10);
    assert!(table.holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_is_complement_invariant(n in 3usize..=6, seed in any::<u64>(), k in 0usize..=720) {
        let k = k % (factorial(n) as usize + 1);
        let set = random_set(n, k, seed).unwrap();
        prop_assert_eq!(boundary_size(&set).unwrap(), boundary_size(&set.complement()).unwrap());
    }

    #[test]
    fn family_specs_round_trip(seed in any::<u64>(), size in 0usize..=120) {
        let spec = FamilySpec::parse(5, &format!("perturb(base=random(size={size},seed={seed}),swap=0,seed=1)")).unwrap();
        let again = FamilySpec::parse(5, &spec.kind.to_string()).unwrap();
        prop_assert_eq!(&spec, &again);
        prop_assert_eq!(spec.generate().unwrap(), again.generate().unwrap());
    }
}
