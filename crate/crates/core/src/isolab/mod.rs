//! Experiment harness: structured families of permutations, the exhaustive
//! lex-segment isoperimetry search, the quasi-stability pipeline and the
//! fourth-moment optimisation check.

mod exhaustive;
mod family;
mod moments;
mod stability;

pub use exhaustive::{
    exhaustive_benefraim, sampled_benefraim, BenEfraimTable, SearchMode, SizeVerdict, MAX_EXHAUSTIVE_DEGREE,
    MAX_SAMPLED_DEGREE,
};
pub use family::{
    chain_boundary, generate_family, perturb, random_set, random_set_any_size, t_coset_boundary, FamilyKind,
    FamilySpec,
};
pub use moments::{
    fourth_moment_bound_check, fourth_moment_lower_bound, fourth_moment_minimum, two_level_optimum,
    FourthMomentVerdict, TwoLevelOptimum, MOMENT_TOLERANCE,
};
pub use stability::{
    best_coset_union, is_union_of_t_cosets, quasi_stability_report, stability_report_with_count, CosetUnion,
    StabilityReport, MAX_EXACT_COMBINATIONS, MAX_STABILITY_DEGREE,
};
