use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::generate::{
    chain, diagonal_grid, disjoint, enumerated, redundant_nest, star_split, peeling, flower, gen_nested, k4_graph, theta, Grid,
    NestProfile,
};
use super::instance::{FamilySpec, Instance, Mode};

/// Larger nested families than [`NestProfile::small`].
pub fn medium_profile() -> NestProfile {
    NestProfile { nx: 7, ny: 7, count: 12, max_cells: 20, rect_percent: 50 }
}

fn with_mode(mut inst: Instance, mode: Mode) -> Instance {
    inst.mode = mode;
    if mode == Mode::Edge {
        inst.name = inst.name.map(|n| format!("{n}-edge"));
    }
    inst
}

fn fixtures() -> Vec<Instance> {
    let mut out = vec![theta(), redundant_nest(), star_split(), peeling()];
    out.extend((2..=6).map(flower));
    out.extend((2..=4).map(chain));
    out.extend((1..=3).map(disjoint));
    out
}

/// The fixed acceptance corpus: hand-built fixtures, random nested families
/// and enumerated all/odd/demand families, in both modes.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for inst in fixtures() {
        out.push(with_mode(inst.clone(), Mode::Vertex));
        out.push(with_mode(inst, Mode::Edge));
    }
    for seed in 0..60 {
        let inst = gen_nested(NestProfile::small(), seed);
        out.push(if seed % 2 == 0 { with_mode(inst.clone(), Mode::Vertex) } else { inst.clone() });
        if seed < 30 {
            out.push(with_mode(inst, Mode::Edge));
        }
    }
    for seed in 100..130 {
        let mut inst = gen_nested(medium_profile(), seed);
        inst.name = Some(format!("nested-medium-{seed}"));
        out.push(inst.clone());
        if seed < 115 {
            out.push(with_mode(inst, Mode::Edge));
        }
    }
    out.extend(enumerated_instances());
    out
}

/// Families given by a rule rather than a list.
pub fn enumerated_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..10 {
        let g = diagonal_grid(3, 3, 50, seed);
        let spec = FamilySpec::All { length_cap: 9 };
        for mode in [Mode::Vertex, Mode::Edge] {
            out.push(enumerated(g.clone(), spec.clone(), mode, &format!("all-3x3-{seed}-{mode}"), seed));
        }
    }
    for seed in 0..10 {
        let g = diagonal_grid(4, 3, 60, seed);
        out.push(enumerated(g, FamilySpec::Odd { length_cap: 12 }, Mode::Vertex, &format!("odd-4x3-{seed}"), seed));
    }
    for seed in 0..10 {
        let g = Grid::new(4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut demand: Vec<usize> = sample(&mut rng, g.graph.num_edges(), 2).into_vec();
        demand.sort_unstable();
        let mode = if seed % 2 == 0 { Mode::Vertex } else { Mode::Edge };
        let spec = FamilySpec::DCycles { demand, length_cap: 16 };
        out.push(enumerated(g, spec, mode, &format!("dcycles-4x4-{seed}"), seed));
    }
    for mode in [Mode::Vertex, Mode::Edge] {
        let inst = Instance::with_family(k4_graph(), FamilySpec::All { length_cap: 4 }, mode);
        out.push(inst.named(&format!("k4-{mode}"), "k4", 0));
    }
    out
}
