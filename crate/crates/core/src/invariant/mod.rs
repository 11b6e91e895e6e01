//! The Buchstaber invariant: freeness conditions, ξ-search, the criteria for
//! `s(K) ≥ 1, 2, 3`, lower bounds, and the combined report.

pub mod bounds;
pub mod conditions;
pub mod criteria;
pub mod report;
pub mod xi;

pub use bounds::{ayzenberg_s, chromatic_number, cover_lower_bound, CoverBound};
pub use conditions::{
    complete_to_lambda, lift_to_integers, verify_lambda, verify_lambda_gf2, verify_lambda_integer,
    verify_nonsimplex_condition_gf2, verify_nonsimplex_condition_integer, verify_s, verify_s_gf2,
    verify_s_integer, MatrixWitness, Ring,
};
pub use criteria::{check_criteria, CriteriaResult, CriterionWitness};
pub use report::{analyze, s_real, upper_bound, AnalyzeOptions, InvariantReport, SInterval, SRealResult};
pub use xi::{xi_search, xi_to_matrix, SearchOptions, XiWitness};
