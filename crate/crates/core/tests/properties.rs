//! Invariants over random nested families, random weights and random planar graphs.

use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use cyclepack::harness::corpus::medium_profile;
use cyclepack::harness::generate::{diagonal_grid, gen_nested, NestProfile};
use cyclepack::harness::{brute_max_packing, run, Instance, Mode, Report, RunOptions};
use cyclepack::lp::{check_feasible, constraint_rows, make_structured, solve_packing_lp, support_family, FractionalSolution};
use cyclepack::planar::{classify_family, is_laminar, Cycle};
use cyclepack::rational::{ratio, Rational};
use cyclepack::reduction::edge_to_vertex;
use cyclepack::rounding::{compare_with_beta, four_color, greedy_round};
use cyclepack::structure::{certify, check_cover, cover_for_set};

fn nested(seed: u64, medium: bool) -> Instance {
    gen_nested(if medium { medium_profile() } else { NestProfile::small() }, seed)
}

/// Random weights scaled so the heaviest vertex carries at most 1.
fn feasible_weights(cycles: &[Cycle], raw: &[u32]) -> FractionalSolution {
    let w: Vec<i64> = cycles.iter().enumerate().map(|(i, _)| raw[i % raw.len()] as i64).collect();
    let load = constraint_rows(cycles, Mode::Vertex)
        .values()
        .map(|r| r.iter().map(|&i| w[i]).sum::<i64>())
        .max()
        .unwrap_or(1)
        .max(1);
    FractionalSolution { mode: Mode::Vertex, weights: w.iter().map(|&a| ratio(a, load)).collect() }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn generated_families_are_laminar(seed in 0u64..100_000, medium in any::<bool>()) {
        let inst = nested(seed, medium);
        let cycles = inst.explicit_cycles().unwrap();
        prop_assert!(is_laminar(&inst.graph, cycles).is_ok());
    }

    #[test]
    fn structured_transform_keeps_value_and_feasibility(seed in 0u64..100_000, raw in prop::collection::vec(0u32..6, 1..16)) {
        let inst = nested(seed, true);
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = feasible_weights(cycles, &raw);
        let (y, shifts) = make_structured(&g, cycles, &x).unwrap();
        prop_assert_eq!(y.value(), x.value());
        prop_assert!(check_feasible(cycles, &y).is_ok());
        prop_assert!(shifts.len() <= x.support().len());
        let fam = support_family(&g, cycles, &y).unwrap();
        for members in fam.components() {
            let comp = fam.subfamily(&members).unwrap();
            prop_assert!((0..comp.len()).all(|i| !comp.is_redundant(i)));
        }
    }

    #[test]
    fn rounding_random_weights_meets_guarantee(seed in 0u64..100_000, raw in prop::collection::vec(0u32..6, 1..16)) {
        let inst = nested(seed, seed % 2 == 0);
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = feasible_weights(cycles, &raw);
        let t = greedy_round(&g, cycles, &x).unwrap();
        prop_assert!(t.guarantee);
        prop_assert!(t.violations().is_empty(), "{:?}", t.violations());
    }

    #[test]
    fn certificates_on_structured_components(seed in 0u64..100_000, raw in prop::collection::vec(1u32..6, 1..16)) {
        let inst = nested(seed, true);
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let (y, _) = make_structured(&g, cycles, &feasible_weights(cycles, &raw)).unwrap();
        let fam = support_family(&g, cycles, &y).unwrap();
        for members in fam.components() {
            let cert = certify(&fam.subfamily(&members).unwrap()).unwrap();
            prop_assert!(cert.passes() && cert.within_size_bound(), "{:?}", cert);
        }
    }

    #[test]
    fn covers_for_random_one_sided_subsets(seed in 0u64..100_000, mask in any::<u64>()) {
        let inst = nested(seed, true);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        for members in fam.components() {
            let comp = fam.subfamily(&members).unwrap();
            let f: Vec<usize> = comp.one_sided().into_iter().filter(|&i| mask >> (comp.id(i) % 64) & 1 == 1).collect();
            let cover = cover_for_set(&comp, &f).unwrap();
            prop_assert!(check_cover(&comp, &f, &cover.m).is_empty());
        }
    }

    #[test]
    fn reduction_matches_edge_disjointness(seed in 0u64..100_000) {
        let inst = nested(seed, true);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let map = edge_to_vertex(&fam).unwrap();
        prop_assert!(map.disjointness_mismatches().is_empty());
        let total: usize = fam.cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(map.target_graph.num_edges(), total + map.connectors.len());
    }

    #[test]
    fn pipeline_passes_and_round_trips(seed in 0u64..100_000, edge in any::<bool>()) {
        let mut inst = nested(seed, false);
        inst.mode = if edge { Mode::Edge } else { Mode::Vertex };
        let r = run(&inst, &RunOptions::default()).unwrap();
        prop_assert!(r.passes(), "{:?}", r.violations);
        prop_assert_eq!(Report::parse(&r.to_json()).unwrap(), r);
        prop_assert_eq!(Instance::parse(&inst.to_json_string()).unwrap().to_json_string(), inst.to_json_string());
    }

    #[test]
    fn lp_dominates_integral_packing(seed in 0u64..100_000) {
        let inst = nested(seed, false);
        let cycles = inst.explicit_cycles().unwrap();
        prop_assume!(cycles.len() <= 20);
        for mode in [Mode::Vertex, Mode::Edge] {
            let (_, value) = solve_packing_lp(cycles, mode);
            let (nu, _) = brute_max_packing(cycles, mode).unwrap();
            prop_assert!(Rational::from_integer(nu.into()) <= value);
        }
    }

    #[test]
    fn four_colouring_of_planar_graphs_is_proper(w in 2usize..6, h in 2usize..6, p in 0u32..100, seed in any::<u64>()) {
        let grid = diagonal_grid(w, h, p, seed);
        let g = &grid.graph;
        let mut adj = vec![Vec::new(); g.num_vertices()];
        for e in 0..g.num_edges() {
            let (a, b) = g.endpoints(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        let colour = four_color(&adj, 1_000_000).unwrap();
        prop_assert!(colour.iter().all(|&c| c < 4));
        for (v, ns) in adj.iter().enumerate() {
            prop_assert!(ns.iter().all(|&u| colour[u] != colour[v]));
        }
    }

    #[test]
    fn guarantee_comparison_agrees_with_floats(n in 0u64..200, p in 0i64..2000, q in 1i64..50) {
        let x = ratio(p, q);
        let lhs = n as f64 * (20.0 + 130f64.sqrt());
        let rhs = 9.0 * x.to_f64().unwrap();
        prop_assume!((lhs - rhs).abs() > 1e-6);
        prop_assert_eq!(compare_with_beta(n, &x), lhs >= rhs);
        if x.is_zero() {
            prop_assert!(compare_with_beta(n, &x));
        }
    }
}
