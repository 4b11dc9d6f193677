use std::collections::HashSet;

use super::instance::FamilySpec;
use crate::error::{Error, Result};
use crate::planar::{edge_of, Cycle, EmbeddedGraph};

pub const DEFAULT_BUDGET: usize = 200;

/// All simple cycles of length ≤ `cap`, sorted by (length, edge set).
pub fn simple_cycles(g: &EmbeddedGraph, cap: usize, budget: usize) -> Result<Vec<Cycle>> {
    let n = g.num_vertices();
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut on_path = vec![false; n];
    let mut path_edges = Vec::new();
    // Each cycle is found from its smallest vertex, once per direction.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &EmbeddedGraph,
        s: usize,
        v: usize,
        cap: usize,
        budget: usize,
        on_path: &mut [bool],
        path_edges: &mut Vec<usize>,
        found: &mut HashSet<Vec<usize>>,
    ) -> Result<()> {
        for &d in g.rotation(v) {
            let e = edge_of(d);
            if path_edges.last() == Some(&e) {
                continue;
            }
            let w = g.head(d);
            if w == s && !path_edges.is_empty() {
                let mut es = path_edges.clone();
                es.push(e);
                es.sort_unstable();
                found.insert(es);
                if found.len() > budget {
                    return Err(Error::BudgetExceeded(format!("more than {budget} cycles")));
                }
                continue;
            }
            if w < s || on_path[w] || path_edges.len() + 1 >= cap {
                continue;
            }
            on_path[w] = true;
            path_edges.push(e);
            dfs(g, s, w, cap, budget, on_path, path_edges, found)?;
            path_edges.pop();
            on_path[w] = false;
        }
        Ok(())
    }
    // the raw budget bounds the search; the caller's filter decides what is kept
    let raw_budget = budget.saturating_mul(20).max(budget);
    for s in 0..n {
        on_path[s] = true;
        dfs(g, s, s, cap, raw_budget, &mut on_path, &mut path_edges, &mut found)?;
        on_path[s] = false;
    }
    let mut cycles: Vec<Cycle> = found.into_iter().map(|es| Cycle::new(g, &es).expect("simple cycle")).collect();
    cycles.sort_by_key(|a| (a.len(), a.sorted_edges()));
    Ok(cycles)
}

/// Cycles matching a family spec; explicit families are returned as given.
pub fn enumerate_family(g: &EmbeddedGraph, spec: &FamilySpec, budget: usize) -> Result<Vec<Cycle>> {
    type Keep = Box<dyn Fn(&Cycle) -> bool>;
    let (cap, keep): (usize, Keep) = match spec {
        FamilySpec::Explicit { cycles, .. } => return Ok(cycles.clone()),
        FamilySpec::All { length_cap } => (*length_cap, Box::new(|_| true)),
        FamilySpec::Odd { length_cap } => (*length_cap, Box::new(|c: &Cycle| c.len() % 2 == 1)),
        FamilySpec::DCycles { demand, length_cap } => {
            let demand = demand.clone();
            (
                *length_cap,
                Box::new(move |c: &Cycle| c.edges().iter().filter(|e| demand.contains(e)).count() == 1),
            )
        }
    };
    let cycles: Vec<Cycle> = simple_cycles(g, cap, budget)?.into_iter().filter(|c| keep(c)).collect();
    if cycles.len() > budget {
        return Err(Error::BudgetExceeded(format!("{} cycles exceed budget {budget}", cycles.len())));
    }
    Ok(cycles)
}
