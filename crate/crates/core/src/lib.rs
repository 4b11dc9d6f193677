//! Greedy LP rounding for packing disjoint cycles of a laminar family in a
//! sphere-embedded planar graph, with exact-rational certificates.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod harness;
pub mod lp;
pub mod planar;
pub mod rational;
pub mod reduction;
pub mod rounding;
pub mod structure;

pub use error::{Error, Result};
pub use planar::{Cycle, EmbeddedGraph, LaminarFamily};
pub use rational::Rational;
pub use harness::{Instance, Mode};
