//! Partitions, permutations, tableaux, t-cosets and permutation sets.

pub mod coset;
pub mod counting;
pub mod partition;
pub mod permset;
pub mod permutation;
pub mod tableaux;

pub use coset::{enumerate_t_cosets, t_coset_count, TCoset};
pub use counting::{binomial, factorial, falling_factorial};
pub use partition::{compare_partitions, enumerate_partitions, Comparison, Partition, PartitionOrder};
pub use permset::{lex_initial_segment, PermutationSet};
pub use permutation::{lex_rank_bijection, Permutation, RankDirection};
pub use tableaux::{count_standard_tableaux, kostka_number};
