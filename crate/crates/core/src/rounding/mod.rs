//! Greedy rounding of a structured fractional packing, with exact checks of
//! the per-step ratio against `(20 + √130)/9`.

pub mod algebraic;
pub mod candidates;
pub mod greedy;
pub mod profile;

pub use algebraic::{beta_identities, compare_with_beta, within_beta, AlgebraicBound};
pub use candidates::{
    all_candidates, candidate_fourcolor, candidate_single, candidate_threshold, choose_fstar, conflict_graph, four_color,
    CandidateSet, Rule,
};
pub use greedy::{audit_component, greedy_round, ComponentAudit, ComponentStep, Iteration, RoundingTrace};
pub use profile::ThresholdProfile;
