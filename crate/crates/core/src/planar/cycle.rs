use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::graph::{edge_of, rev, Dart, EmbeddedGraph};
use crate::error::{Error, Result};

/// A simple cycle stored as a closed walk. `vertices[i]` is where `edges[i]`
/// starts, so the walk is `v0 -e0- v1 -e1- ... -e(k-1)- v0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<usize>,
    vertices: Vec<usize>,
}

impl Cycle {
    /// Accepts the edges in any order and normalizes them to a walk that starts
    /// at the smallest edge id and continues toward the smaller neighbouring edge.
    pub fn new(g: &EmbeddedGraph, edge_ids: &[usize]) -> Result<Self> {
        let k = edge_ids.len();
        if k < 2 {
            return Err(Error::NotACycle(format!("length {k}")));
        }
        let mut sorted = edge_ids.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotACycle("repeated edge".into()));
        }
        if let Some(&e) = sorted.iter().find(|&&e| e >= g.num_edges()) {
            return Err(Error::NotACycle(format!("unknown edge {e}")));
        }
        let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in &sorted {
            let (u, v) = g.endpoints(e);
            at.entry(u).or_default().push(e);
            at.entry(v).or_default().push(e);
        }
        if at.values().any(|es| es.len() != 2) {
            return Err(Error::NotACycle("a vertex does not have degree two".into()));
        }
        let other = |e: usize, v: usize| {
            let (a, b) = g.endpoints(e);
            if a == v {
                b
            } else {
                a
            }
        };
        let next_edge = |e: usize, v: usize| {
            let es = &at[&v];
            if es[0] == e {
                es[1]
            } else {
                es[0]
            }
        };
        let e0 = sorted[0];
        let (a, b) = g.endpoints(e0);
        let (na, nb) = (next_edge(e0, a), next_edge(e0, b));
        // walking e0 from `start` reaches the smaller neighbour edge first
        let start = match nb.cmp(&na) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => a.min(b),
        };
        let mut edges = Vec::with_capacity(k);
        let mut vertices = Vec::with_capacity(k);
        let (mut e, mut v) = (e0, start);
        loop {
            edges.push(e);
            vertices.push(v);
            v = other(e, v);
            e = next_edge(e, v);
            if e == e0 {
                break;
            }
            if edges.len() > k {
                break;
            }
        }
        if edges.len() != k || v != start {
            return Err(Error::NotACycle("edges do not form a single closed walk".into()));
        }
        Ok(Cycle { edges, vertices })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    /// Index of `v` along the walk.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Darts in walk order.
    pub fn darts(&self, g: &EmbeddedGraph) -> Vec<Dart> {
        self.edges.iter().zip(&self.vertices).map(|(&e, &v)| g.dart_from(e, v)).collect()
    }

    pub fn shares_vertex(&self, other: &Cycle) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }

    pub fn shares_edge(&self, other: &Cycle) -> bool {
        self.edges.iter().any(|e| other.edges.contains(e))
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut es = self.edges.clone();
        es.sort_unstable();
        es
    }
}

pub type FaceSet = FixedBitSet;

pub fn is_subset(a: &FaceSet, b: &FaceSet) -> bool {
    a.is_subset(b)
}

/// One of the two regions bounded by a cycle, as a set of faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideRegion {
    pub cycle: usize,
    pub faces: FaceSet,
}

/// Returns (right side, left side) with respect to the cycle's stored walk.
pub fn cycle_sides(g: &EmbeddedGraph, c: &Cycle) -> (FaceSet, FaceSet) {
    let nf = g.num_faces();
    let mut on_cycle = FixedBitSet::with_capacity(g.num_edges());
    for &e in c.edges() {
        on_cycle.insert(e);
    }
    let mut right = FixedBitSet::with_capacity(nf);
    let mut stack: Vec<usize> = Vec::new();
    for d in c.darts(g) {
        let f = g.face_of(d);
        if !right.put(f) {
            stack.push(f);
        }
    }
    while let Some(f) = stack.pop() {
        for &d in &g.faces()[f] {
            if on_cycle.contains(edge_of(d)) {
                continue;
            }
            let h = g.face_of(rev(d));
            if !right.put(h) {
                stack.push(h);
            }
        }
    }
    let mut left = right.clone();
    left.toggle_range(..);
    (right, left)
}

/// Same as [`cycle_sides`] wrapped as regions tagged with `id`.
pub fn side_regions(g: &EmbeddedGraph, c: &Cycle, id: usize) -> (SideRegion, SideRegion) {
    let (a, b) = cycle_sides(g, c);
    (SideRegion { cycle: id, faces: a }, SideRegion { cycle: id, faces: b })
}

/// Some side of `c2` lies inside `s`.
pub fn side_contains_cycle(g: &EmbeddedGraph, s: &FaceSet, c2: &Cycle) -> bool {
    let (a, b) = cycle_sides(g, c2);
    a.is_subset(s) || b.is_subset(s)
}

/// Indices `(i, j)` of disjoint sides of two cycles, if any.
pub fn disjoint_sides(a: &[FaceSet; 2], b: &[FaceSet; 2]) -> Option<(usize, usize)> {
    for i in 0..2 {
        for j in 0..2 {
            if a[i].is_disjoint(&b[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Returns `Ok(())` or the first crossing pair by input position.
pub fn is_laminar(g: &EmbeddedGraph, cycles: &[Cycle]) -> std::result::Result<(), (usize, usize)> {
    let sides: Vec<[FaceSet; 2]> = cycles
        .iter()
        .map(|c| {
            let (a, b) = cycle_sides(g, c);
            [a, b]
        })
        .collect();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if disjoint_sides(&sides[i], &sides[j]).is_none() {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> EmbeddedGraph {
        EmbeddedGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap()
    }

    fn k4() -> EmbeddedGraph {
        // vertex 3 in the middle of triangle 0,1,2
        let edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        EmbeddedGraph::new(4, edges, vec![vec![0, 3, 2], vec![1, 4, 0], vec![2, 5, 1], vec![5, 3, 4]]).unwrap()
    }

    #[test]
    fn k4_faces_and_triangle_sides() {
        let g = k4();
        assert_eq!(g.num_faces(), 4);
        for tri in [[0, 1, 2], [0, 4, 3], [1, 5, 4], [2, 3, 5]] {
            let c = Cycle::new(&g, &tri).unwrap();
            let (a, b) = cycle_sides(&g, &c);
            let mut sizes = [a.count_ones(..), b.count_ones(..)];
            sizes.sort();
            assert_eq!(sizes, [1, 3]);
        }
    }

    #[test]
    fn theta_sides() {
        let g = theta();
        let c12 = Cycle::new(&g, &[0, 1]).unwrap();
        let c23 = Cycle::new(&g, &[1, 2]).unwrap();
        let (a, b) = cycle_sides(&g, &c12);
        let mut sizes = [a.count_ones(..), b.count_ones(..)];
        sizes.sort();
        assert_eq!(sizes, [1, 2]);
        let small = if a.count_ones(..) == 1 { a } else { b };
        assert!(!side_contains_cycle(&g, &small, &c23));
        assert!(side_contains_cycle(&g, &small, &c12));
        assert!(is_laminar(&g, &[c12, c23]).is_ok());
    }

    #[test]
    fn normalization_is_order_independent() {
        let g = k4();
        let a = Cycle::new(&g, &[4, 1, 3, 2]).unwrap();
        let b = Cycle::new(&g, &[2, 3, 1, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges()[0], 1);
        assert!(Cycle::new(&g, &[0, 1]).is_err());
        assert!(Cycle::new(&g, &[0, 1, 2, 3, 4, 5]).is_err());
    }
}
