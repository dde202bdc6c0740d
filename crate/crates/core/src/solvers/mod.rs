//! Exact independence and matching solvers.

pub mod independence;
pub mod matching;

pub use independence::{
    alpha, alpha_critical_edges, alpha_critical_vertices, core, corona,
    lex_min_maximum_independent_set, omega_family, IndependentFamily,
};
pub use matching::{
    all_maximum_matchings, double_cover_mu, matching_from_into, mu, mu_critical_edges,
    mu_critical_vertices, Matching,
};
