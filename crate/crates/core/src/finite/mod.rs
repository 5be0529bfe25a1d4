//! Finite permutation groups and homomorphism counting.
//!
//! Every finite group embeds in some `SO(N)` through its regular
//! representation; that embedding is not constructed here.

mod colorings;
mod group;
mod homs;

pub use colorings::{coloring_matrix, fox_colorings};
pub use group::{FiniteGroup, GroupError, GroupSummary, Perm, MAX_ORDER};
pub use homs::{
    count_homs, count_homs_in, count_homs_up_to_conjugacy, enumerate_homs, eval_word, find_separating_hom,
    for_each_hom, search_space, HomAssignment, HomError, HomOptions, Separation, DEFAULT_SEARCH_BUDGET,
};
