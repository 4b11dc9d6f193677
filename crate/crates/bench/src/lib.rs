//! Fixed workloads shared by the benchmarks.

use std::sync::Arc;

use cyclepack::harness::corpus::medium_profile;
use cyclepack::harness::generate::{diagonal_grid, enumerated, gen_nested};
use cyclepack::harness::pipeline::family_cycles;
use cyclepack::harness::{FamilySpec, Instance, Mode};
use cyclepack::planar::{Cycle, EmbeddedGraph};

/// A nested medium instance with its graph shared and its cycles listed.
pub struct Workload {
    pub name: String,
    pub instance: Instance,
    pub graph: Arc<EmbeddedGraph>,
    pub cycles: Vec<Cycle>,
}

impl Workload {
    fn new(name: &str, instance: Instance) -> Self {
        let cycles = family_cycles(&instance, 200_000).expect("family enumerates");
        Workload { name: name.into(), graph: Arc::new(instance.graph.clone()), instance, cycles }
    }
}

pub fn nested(seed: u64) -> Workload {
    Workload::new(&format!("nested-{seed}"), gen_nested(medium_profile(), seed))
}

/// All cycles of a 3×3 grid with random diagonals; the LP support usually crosses.
pub fn all_cycles(seed: u64) -> Workload {
    let g = diagonal_grid(3, 3, 50, seed);
    Workload::new(&format!("all-3x3-{seed}"), enumerated(g, FamilySpec::All { length_cap: 9 }, Mode::Vertex, "all", seed))
}
