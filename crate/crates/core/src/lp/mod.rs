//! Exact packing LP, the structured transform and support uncrossing.

pub mod packing;
pub mod simplex;
pub mod structured;
pub mod uncross;

pub use packing::{check_feasible, constraint_rows, solve_packing_lp, FractionalSolution};
pub use structured::{is_structured, make_structured, support_family, Shift};
pub use uncross::uncross_support;
