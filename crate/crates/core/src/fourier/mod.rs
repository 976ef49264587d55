//! Functions on `S_n`, their isotypic decomposition, the degree filtration
//! `U_t`/`V_t`, t-coset coefficients and the averaging operator `M`.

mod convolution;
mod cosets;
mod function;
mod modular;
mod projection;
mod span;

pub use convolution::{convolution_components, convolution_projection, MAX_CONVOLUTION_DEGREE};
pub use cosets::{
    coset_statistics, operator_m_apply, operator_m_apply_indexed, operator_m_spectrum, operator_m_weight,
    verify_coset_dependencies, CosetIndex, CosetStatistic,
};
pub use function::{inner_product, GroupFunction};
pub use projection::{
    degree_projection, isotypic_components, isotypic_norms, isotypic_projection, projection_report,
    ProjectionReport, Space,
};
pub use span::{span_check_ut, RankMethod, SpanCheck, MAX_SPAN_DEGREE};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::coset::TCoset;
    use crate::combinatorics::partition::Partition;
    use crate::combinatorics::permset::PermutationSet;
    use crate::scalar::{ratio, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coset_set(n: usize, i: &[usize], j: &[usize]) -> PermutationSet {
        PermutationSet::from_permutations(n, &TCoset::new(n, i, j).unwrap().members()).unwrap()
    }

    fn random_function(n: usize, seed: u64) -> GroupFunction<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GroupFunction::from_fn(n, |_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).unwrap()
    }

    #[test]
    fn constant_function_lives_in_trivial_component() {
        let f = GroupFunction::constant(5, ratio(3, 2)).unwrap();
        for (alpha, g) in isotypic_components(&f).unwrap() {
            if alpha == Partition::row(5) {
                assert_eq!(g, f);
            } else {
                assert!(g.is_zero(), "{alpha}");
            }
        }
    }

    #[test]
    fn coset_indicator_mean_component() {
        let f = GroupFunction::<Rational>::indicator(&coset_set(3, &[1], &[1])).unwrap();
        let g = isotypic_projection(&f, &Partition::row(3)).unwrap();
        assert!(g.values().iter().all(|v| *v == ratio(1, 3)));
        assert_eq!(degree_projection(&f, 1, Space::U).unwrap(), f);
    }

    #[test]
    fn exact_path_matches_convolution_oracle() {
        for n in 1..=5 {
            let f = random_function(n, 11 + n as u64);
            let fast = isotypic_components(&f).unwrap();
            let slow = convolution_components(&f).unwrap();
            assert_eq!(fast, slow, "n={n}");
        }
        let f = random_function(6, 99);
        assert_eq!(isotypic_components(&f).unwrap(), convolution_components(&f).unwrap());
    }

    #[test]
    fn float_path_agrees_with_exact_path() {
        let f = random_function(4, 5);
        let exact = isotypic_components(&f).unwrap();
        let float = isotypic_components(&GroupFunction::<f64>::from_rational(&f)).unwrap();
        for ((a, e), (b, x)) in exact.iter().zip(&float) {
            assert_eq!(a, b);
            for (u, v) in e.values().iter().zip(x.values()) {
                assert!((crate::scalar::Scalar::to_f64(u) - v).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn projector_algebra_small() {
        let f = random_function(5, 1);
        let comps = isotypic_components(&f).unwrap();
        let mut sum = GroupFunction::zero(5).unwrap();
        let mut parseval = ratio(0, 1);
        for (i, (alpha, g)) in comps.iter().enumerate() {
            assert_eq!(&isotypic_projection(g, alpha).unwrap(), g);
            for (_, h) in comps.iter().skip(i + 1) {
                assert_eq!(g.inner_product(h).unwrap(), ratio(0, 1));
            }
            sum = sum.add(g).unwrap();
            parseval += g.norm_squared();
        }
        assert_eq!(sum, f);
        assert_eq!(parseval, f.norm_squared());
        let norms = isotypic_norms(&f).unwrap();
        for ((a, g), (b, v)) in comps.iter().zip(&norms) {
            assert_eq!(a, b);
            assert_eq!(g.norm_squared(), *v);
        }
    }

    #[test]
    fn degree_filtration_pieces_are_orthogonal() {
        let n = 5;
        let f = random_function(n, 3);
        let pieces: Vec<_> = (0..=n).map(|t| degree_projection(&f, t, Space::V).unwrap()).collect();
        let mut sum = GroupFunction::zero(n).unwrap();
        for (i, g) in pieces.iter().enumerate() {
            for h in &pieces[i + 1..] {
                assert_eq!(g.inner_product(h).unwrap(), ratio(0, 1));
            }
            sum = sum.add(g).unwrap();
        }
        assert_eq!(sum, f);
        assert_eq!(degree_projection(&f, n, Space::U).unwrap(), f);
        let u2 = degree_projection(&f, 2, Space::U).unwrap();
        let u1 = degree_projection(&f, 1, Space::U).unwrap();
        assert_eq!(u2.sub(&u1).unwrap(), pieces[2]);
    }

    #[test]
    fn report_for_a_coset_has_no_tail() {
        let r = projection_report(&coset_set(6, &[1, 2], &[4, 5]), 2).unwrap();
        assert_eq!(r.tail, ratio(0, 1));
        assert_eq!(r.epsilon, Some(ratio(0, 1)));
        assert_eq!(r.c, ratio(1, 1));
        assert_eq!(r.total_weight(), ratio(24, 720));
        let empty = projection_report(&PermutationSet::empty(4).unwrap(), 1).unwrap();
        assert_eq!(empty.epsilon, None);
        let json = r.to_json();
        assert_eq!(json["c"], serde_json::json!([1, 1]));
        assert_eq!(json["norms"][0][0], serde_json::json!("6"));
    }

    #[test]
    fn two_point_stabilizers_are_close_to_degree_one() {
        let a = coset_set(6, &[1], &[1]).union(&coset_set(6, &[2], &[2])).unwrap();
        let r = projection_report(&a, 1).unwrap();
        let eps = r.epsilon.unwrap();
        assert!(eps > ratio(0, 1) && eps < ratio(1, 4), "{eps}");
    }

    #[test]
    fn coset_statistics_basics() {
        let set = coset_set(5, &[1, 3], &[2, 4]);
        let stats = coset_statistics(&set, 2).unwrap();
        let own = stats.iter().find(|s| s.coset == TCoset::new(5, &[1, 3], &[2, 4]).unwrap()).unwrap();
        assert_eq!(own.a, ratio(1, 1));
        assert!(verify_coset_dependencies(&stats, 5, 2).unwrap() > 0);
        let empty = coset_statistics(&PermutationSet::empty(4).unwrap(), 1).unwrap();
        assert!(empty.iter().all(|s| s.a == ratio(0, 1) && s.b == ratio(0, 1)));
    }

    #[test]
    fn coset_index_ids_match_enumeration() {
        let index = CosetIndex::new(5, 2).unwrap();
        for (id, c) in index.cosets().iter().enumerate() {
            assert_eq!(index.id_of(c), Some(id));
        }
        let sigma = crate::combinatorics::permutation::Permutation::from_one_line(&[3, 1, 5, 2, 4]).unwrap();
        let mut seen = 0;
        index.for_each_containing(sigma.images(), |id| {
            assert!(index.cosets()[id].contains(&sigma));
            seen += 1;
        });
        assert_eq!(seen, 10);
    }

    #[test]
    fn operator_m_examples() {
        let one = GroupFunction::constant(5, ratio(1, 1)).unwrap();
        assert_eq!(operator_m_apply(&one, 1).unwrap(), GroupFunction::constant(5, ratio(5, 1)).unwrap());
        let zero = GroupFunction::<Rational>::zero(4).unwrap();
        assert!(operator_m_apply(&zero, 2).unwrap().is_zero());
        let spec = operator_m_spectrum(7, 2).unwrap();
        let get = |a: &Partition| spec.iter().find(|(b, _)| b == a).unwrap().1;
        assert_eq!(get(&p(&[7])), ratio(21, 1));
        assert_eq!(get(&p(&[5, 2])), ratio(3, 2));
        assert_eq!(get(&p(&[5, 1, 1])), ratio(7, 5));
    }

    #[test]
    fn operator_m_acts_by_its_eigenvalues() {
        for (n, t) in [(4, 1), (5, 2)] {
            let f = random_function(n, 40 + t as u64);
            let spec = operator_m_spectrum(n, t).unwrap();
            for ((alpha, g), (beta, lambda)) in isotypic_components(&f).unwrap().iter().zip(&spec) {
                assert_eq!(alpha, beta);
                assert_eq!(operator_m_apply(g, t).unwrap(), g.scale(lambda), "n={n} t={t} {alpha}");
            }
        }
    }

    #[test]
    fn span_checks() {
        let c = span_check_ut(4, 1).unwrap();
        assert_eq!((c.dimension, c.rank, c.equal), (10, 10, true));
        assert_eq!(c.method, RankMethod::Exact);
        for n in 2..=5 {
            let zero = span_check_ut(n, 0).unwrap();
            assert_eq!((zero.dimension, zero.rank), (1, 1));
            let full = span_check_ut(n, n).unwrap();
            assert!(full.equal);
            assert_eq!(full.rank, crate::combinatorics::counting::factorial(n));
        }
        let modular = span_check_ut(6, 2).unwrap();
        assert_eq!(modular.method, RankMethod::ModularCertificate);
        assert!(modular.equal);
        assert!(span_check_ut(8, 1).unwrap_err().is_capacity());
    }
}
