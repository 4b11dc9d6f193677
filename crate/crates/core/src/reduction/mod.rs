//! Edge-disjoint packing over a laminar family as vertex-disjoint packing in
//! a derived graph whose vertices are the original edges.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::harness::Mode;
use crate::lp::FractionalSolution;
use crate::planar::{is_laminar, Cycle, EmbeddedGraph, LaminarFamily};

/// The derived graph and family. Cycle `i` of the source maps to cycle `i`
/// of the target; node `e` of the target is edge `e` of the source graph.
#[derive(Debug, Clone)]
pub struct ReductionMap {
    pub source: Vec<Cycle>,
    pub target_graph: Arc<EmbeddedGraph>,
    pub target: Vec<Cycle>,
    /// Target edges joining components so the graph is connected.
    pub connectors: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct End {
    edge: usize,
    cycle: usize,
    /// Junction at the tail of the node's source edge.
    at_tail: bool,
}

/// Builds the derived graph: one edge per pair of consecutive edges of each
/// cycle. At node `e = (u, w)` the chords through `u` come first, ordered by
/// the size of the cycle's side left of `e` ascending, then the chords through
/// `w` by the same size descending. Connector edges chain the components.
pub fn edge_to_vertex(fam: &LaminarFamily) -> Result<ReductionMap> {
    let g = fam.graph();
    let n = g.num_edges();
    if n < 2 {
        return Err(Error::Degenerate("the derived graph needs at least two edges".into()));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut ends: Vec<Vec<End>> = vec![Vec::new(); n];
    let mut chords: Vec<Vec<usize>> = Vec::new();
    for (ci, c) in fam.cycles().iter().enumerate() {
        let k = c.len();
        let mut mine = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (c.edges()[(i + k - 1) % k], c.edges()[i]);
            let v = c.vertices()[i];
            let id = edges.len();
            edges.push((a, b));
            mine.push(id);
            for node in [a, b] {
                ends[node].push(End { edge: id, cycle: ci, at_tail: g.endpoints(node).0 == v });
            }
        }
        chords.push(mine);
    }
    let left_size = |e: usize, ci: usize| -> usize {
        let left = g.face_of(2 * e + 1);
        let s = if fam.side(ci, 0).contains(left) { 0 } else { 1 };
        fam.side(ci, s).count_ones(..)
    };
    let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (e, list) in ends.iter().enumerate() {
        let mut tail: Vec<(usize, usize)> =
            list.iter().filter(|x| x.at_tail).map(|x| (left_size(e, x.cycle), x.edge)).collect();
        let mut head: Vec<(usize, usize)> =
            list.iter().filter(|x| !x.at_tail).map(|x| (left_size(e, x.cycle), x.edge)).collect();
        tail.sort();
        head.sort_by(|a, b| b.cmp(a));
        rotation.push(tail.into_iter().chain(head).map(|(_, id)| id).collect());
    }
    // chain the components with connector edges
    let mut comp = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = reps.len();
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &id in &rotation[v] {
                let (a, b) = edges[id];
                let w = if a == v { b } else { a };
                if comp[w] == usize::MAX {
                    comp[w] = reps.len();
                    stack.push(w);
                }
            }
        }
        reps.push(s);
    }
    let mut connectors = Vec::new();
    for w in reps.windows(2) {
        let id = edges.len();
        edges.push((w[0], w[1]));
        rotation[w[0]].push(id);
        rotation[w[1]].push(id);
        connectors.push(id);
    }
    let target_graph = Arc::new(EmbeddedGraph::new(n, edges, rotation)?);
    let target: Vec<Cycle> = chords.iter().map(|ids| Cycle::new(&target_graph, ids)).collect::<Result<_>>()?;
    if let Err((a, b)) = is_laminar(&target_graph, &target) {
        return Err(Error::NotLaminar(a, b));
    }
    Ok(ReductionMap { source: fam.cycles().to_vec(), target_graph, target, connectors })
}

impl ReductionMap {
    /// Pairs `(i, j)` for which edge-disjointness in the source and
    /// vertex-disjointness in the target disagree.
    pub fn disjointness_mismatches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.source.len() {
            for j in i + 1..self.source.len() {
                let edge_disjoint = !self.source[i].shares_edge(&self.source[j]);
                let vertex_disjoint = !self.target[i].shares_vertex(&self.target[j]);
                if edge_disjoint != vertex_disjoint {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// A packing of target cycles as source cycles.
    pub fn lift_packing(&self, packing: &[usize]) -> Result<Vec<usize>> {
        if let Some(&i) = packing.iter().find(|&&i| i >= self.source.len()) {
            return Err(Error::UnknownCycle(i));
        }
        Ok(packing.to_vec())
    }

    /// Target weights as an edge-mode solution on the source family.
    pub fn lift_solution(&self, y: &FractionalSolution) -> Result<FractionalSolution> {
        if y.weights.len() != self.source.len() {
            return Err(Error::UnknownCycle(y.weights.len()));
        }
        Ok(FractionalSolution { mode: Mode::Edge, weights: y.weights.clone() })
    }

    /// Source edge-mode weights carried onto the target family.
    pub fn push_solution(&self, x: &FractionalSolution) -> FractionalSolution {
        FractionalSolution { mode: Mode::Vertex, weights: x.weights.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{star_split, flower, Grid};
    use crate::planar::classify_family;

    fn reduce(g: &EmbeddedGraph, cycles: &[Cycle]) -> ReductionMap {
        edge_to_vertex(&classify_family(g, cycles).unwrap()).unwrap()
    }

    #[test]
    fn single_triangle() {
        let inst = flower(1);
        let m = reduce(&inst.graph, inst.explicit_cycles().unwrap());
        assert_eq!(m.target_graph.num_vertices(), 3);
        assert_eq!(m.target[0].len(), 3);
        assert!(m.connectors.is_empty());
    }

    #[test]
    fn petals_sharing_a_vertex_become_disjoint() {
        let inst = flower(4);
        let m = reduce(&inst.graph, inst.explicit_cycles().unwrap());
        assert!(m.disjointness_mismatches().is_empty());
        assert!(m.target.iter().enumerate().all(|(i, a)| m.target[i + 1..].iter().all(|b| !a.shares_vertex(b))));
    }

    #[test]
    fn nested_grid_rectangles_sharing_edges() {
        let grid = Grid::new(4, 4);
        let cycles = vec![grid.rect(0, 0, 1, 1), grid.rect(0, 0, 2, 2), grid.rect(0, 0, 2, 1), grid.rect(2, 2, 3, 3)];
        let m = reduce(&grid.graph, &cycles);
        assert!(m.disjointness_mismatches().is_empty());
        let total: usize = cycles.iter().map(|c| c.len()).sum();
        assert_eq!(m.target_graph.num_edges(), total + m.connectors.len());
    }

    #[test]
    fn star_split_reduces() {
        let inst = star_split();
        let m = reduce(&inst.graph, inst.explicit_cycles().unwrap());
        assert!(m.disjointness_mismatches().is_empty());
        assert!(m.lift_packing(&[99]).is_err());
    }
}
