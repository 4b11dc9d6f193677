//! Instances, generators, exhaustive oracles and reports.

pub mod corpus;
pub mod enumerate;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod pipeline;

pub use enumerate::{enumerate_family, simple_cycles};
pub use instance::{FamilySpec, Instance, InstanceJson, Label, Mode};
pub use oracle::{brute_max_packing, brute_min_transversal};
pub use pipeline::{run, Report, RunOptions};
