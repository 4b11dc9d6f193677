use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::cycle::{cycle_sides, disjoint_sides, Cycle, FaceSet};
use super::graph::EmbeddedGraph;
use crate::error::{Error, Result};

/// A laminar cycle family with sides, one-sidedness, homotopy classes and
/// vertex-sharing components. Positions `0..len()` index the family; `id(i)`
/// is the caller's identifier for position `i`.
#[derive(Debug, Clone)]
pub struct LaminarFamily {
    graph: Arc<EmbeddedGraph>,
    cycles: Vec<Cycle>,
    ids: Vec<usize>,
    sides: Vec<[FaceSet; 2]>,
    one_sided: Vec<bool>,
    /// (position, side) of every ⊆-minimal side, in position order.
    minimal_sides: Vec<(usize, usize)>,
    signatures: Vec<[FixedBitSet; 2]>,
    homotopy: Vec<usize>,
    component: Vec<usize>,
    num_components: usize,
}

impl LaminarFamily {
    pub fn new(graph: Arc<EmbeddedGraph>, cycles: Vec<Cycle>) -> Result<Self> {
        let ids = (0..cycles.len()).collect();
        Self::with_ids(graph, cycles, ids)
    }

    pub fn with_ids(graph: Arc<EmbeddedGraph>, cycles: Vec<Cycle>, ids: Vec<usize>) -> Result<Self> {
        let sides = cycles
            .iter()
            .map(|c| {
                let (a, b) = cycle_sides(&graph, c);
                [a, b]
            })
            .collect();
        Self::build(graph, cycles, ids, sides)
    }

    /// The subfamily on the given positions, in the given order, reusing sides.
    pub fn subfamily(&self, members: &[usize]) -> Result<Self> {
        Self::build(
            self.graph.clone(),
            members.iter().map(|&i| self.cycles[i].clone()).collect(),
            members.iter().map(|&i| self.ids[i]).collect(),
            members.iter().map(|&i| self.sides[i].clone()).collect(),
        )
    }

    fn build(graph: Arc<EmbeddedGraph>, cycles: Vec<Cycle>, ids: Vec<usize>, sides: Vec<[FaceSet; 2]>) -> Result<Self> {
        let k = cycles.len();
        for i in 0..k {
            for j in i + 1..k {
                if disjoint_sides(&sides[i], &sides[j]).is_none() {
                    return Err(Error::NotLaminar(ids[i], ids[j]));
                }
                if sides[i][0] == sides[j][0] || sides[i][0] == sides[j][1] {
                    return Err(Error::Degenerate(format!("cycles {} and {} have identical sides", ids[i], ids[j])));
                }
            }
        }
        let mut minimal_sides = Vec::new();
        let mut one_sided = vec![false; k];
        for i in 0..k {
            for s in 0..2 {
                let minimal = (0..k)
                    .filter(|&j| j != i)
                    .all(|j| (0..2).all(|t| !sides[j][t].is_subset(&sides[i][s])));
                if minimal {
                    minimal_sides.push((i, s));
                    one_sided[i] = true;
                }
            }
        }
        let m = minimal_sides.len();
        let signatures: Vec<[FixedBitSet; 2]> = (0..k)
            .map(|i| {
                let sig = |s: usize| {
                    let mut b = FixedBitSet::with_capacity(m);
                    for (t, &(j, u)) in minimal_sides.iter().enumerate() {
                        if sides[j][u].is_subset(&sides[i][s]) {
                            b.insert(t);
                        }
                    }
                    b
                };
                [sig(0), sig(1)]
            })
            .collect();
        let mut classes: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
        let homotopy = signatures
            .iter()
            .map(|[a, b]| {
                let (a, b): (Vec<usize>, Vec<usize>) = (a.ones().collect(), b.ones().collect());
                let key = if a <= b { (a, b) } else { (b, a) };
                let next = classes.len();
                *classes.entry(key).or_insert(next)
            })
            .collect();
        let (component, num_components) = vertex_components(&cycles);
        Ok(LaminarFamily {
            graph,
            cycles,
            ids,
            sides,
            one_sided,
            minimal_sides,
            signatures,
            homotopy,
            component,
            num_components,
        })
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<EmbeddedGraph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    pub fn id(&self, i: usize) -> usize {
        self.ids[i]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn position_of(&self, id: usize) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn sides(&self, i: usize) -> &[FaceSet; 2] {
        &self.sides[i]
    }

    pub fn side(&self, i: usize, s: usize) -> &FaceSet {
        &self.sides[i][s]
    }

    pub fn is_one_sided(&self, i: usize) -> bool {
        self.one_sided[i]
    }

    /// Positions of the one-sided cycles, in order.
    pub fn one_sided(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.one_sided[i]).collect()
    }

    pub fn num_one_sided_sides(&self) -> usize {
        self.minimal_sides.len()
    }

    pub fn minimal_sides(&self) -> &[(usize, usize)] {
        &self.minimal_sides
    }

    /// The ⊆-minimal side of a one-sided cycle (the first, for a lone cycle).
    pub fn minimal_side(&self, i: usize) -> Option<usize> {
        self.minimal_sides.iter().find(|&&(j, _)| j == i).map(|&(_, s)| s)
    }

    /// Indices into [`minimal_sides`](Self::minimal_sides) of the one-sided sides inside side `s` of `i`.
    pub fn signature(&self, i: usize, s: usize) -> &FixedBitSet {
        &self.signatures[i][s]
    }

    pub fn homotopy_class(&self, i: usize) -> usize {
        self.homotopy[i]
    }

    pub fn homotopic(&self, i: usize, j: usize) -> bool {
        self.homotopy[i] == self.homotopy[j]
    }

    pub fn is_chain(&self) -> bool {
        self.minimal_sides.len() == 2
    }

    pub fn component(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_components];
        for i in 0..self.len() {
            out[self.component[i]].push(i);
        }
        out
    }

    /// Sides `(s_i, s_j)` of two distinct cycles that are disjoint.
    pub fn pair_sides(&self, i: usize, j: usize) -> (usize, usize) {
        disjoint_sides(&self.sides[i], &self.sides[j]).expect("laminar family")
    }

    /// Some side of cycle `j` lies inside `s`.
    pub fn inside(&self, j: usize, s: &FaceSet) -> bool {
        self.sides[j][0].is_subset(s) || self.sides[j][1].is_subset(s)
    }

    /// Side of `j` inside `s`, if any.
    pub fn side_inside(&self, j: usize, s: &FaceSet) -> Option<usize> {
        (0..2).find(|&t| self.sides[j][t].is_subset(s))
    }

    /// Two-sided and homotopic to a one-sided cycle of this family, i.e. one of
    /// its sides holds exactly one one-sided side.
    pub fn is_redundant(&self, i: usize) -> bool {
        !self.one_sided[i] && self.redundancy_side(i).is_some()
    }

    pub fn redundancy_side(&self, i: usize) -> Option<usize> {
        if self.one_sided[i] {
            return None;
        }
        (0..2).find(|&s| self.signatures[i][s].count_ones(..) == 1)
    }

    /// `(N, N1)`: cycles sharing a vertex with `i` (including `i`), and the one-sided ones among them.
    pub fn neighbours(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let c = &self.cycles[i];
        let n: Vec<usize> = (0..self.len()).filter(|&j| j == i || self.cycles[j].shares_vertex(c)).collect();
        let n1 = n.iter().copied().filter(|&j| self.one_sided[j]).collect();
        (n, n1)
    }

    pub fn neighbours_by_id(&self, id: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let i = self.position_of(id).ok_or(Error::CycleNotInFamily(id))?;
        Ok(self.neighbours(i))
    }
}

/// Components of cycles under vertex sharing, numbered by smallest member.
pub fn vertex_components(cycles: &[Cycle]) -> (Vec<usize>, usize) {
    let k = cycles.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for &v in c.vertices() {
            if let Some(&j) = owner.get(&v) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            } else {
                owner.insert(v, i);
            }
        }
    }
    let mut label = vec![usize::MAX; k];
    let mut comp = vec![0; k];
    let mut count = 0;
    for i in 0..k {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp[i] = label[r];
    }
    (comp, count)
}

/// Classifies a family given by cycles on a shared graph.
pub fn classify_family(g: &EmbeddedGraph, cycles: &[Cycle]) -> Result<LaminarFamily> {
    LaminarFamily::new(Arc::new(g.clone()), cycles.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{chain, redundant_nest, theta};

    fn family(inst: &crate::harness::Instance) -> LaminarFamily {
        classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap()
    }

    #[test]
    fn theta_pair() {
        let t = theta();
        let fam = classify_family(&t.graph, &t.explicit_cycles().unwrap()[..2]).unwrap();
        assert!(fam.is_one_sided(0) && fam.is_one_sided(1));
        // only two one-sided sides: a chain, so the pair is homotopic
        assert!(fam.is_chain());
        assert!(fam.homotopic(0, 1));
        assert_eq!(fam.num_components(), 1);
        assert_eq!(fam.neighbours(0).0, vec![0, 1]);
    }

    #[test]
    fn theta_all_three_are_one_sided() {
        let fam = family(&theta());
        assert_eq!(fam.one_sided(), vec![0, 1, 2]);
        assert!(!fam.homotopic(0, 1) && !fam.homotopic(1, 2) && !fam.homotopic(0, 2));
    }

    #[test]
    fn redundant_nest_classification() {
        let fam = family(&redundant_nest());
        let one: Vec<usize> = fam.one_sided();
        assert_eq!(one, vec![2, 3, 5]); // c, d, f
        for i in [0, 1, 4] {
            assert!(fam.is_redundant(i), "cycle {i}");
        }
        assert!(fam.neighbours(3).0.contains(&1));
        assert_eq!(fam.num_components(), 1);
    }

    #[test]
    fn two_chain_is_homotopic() {
        let fam = family(&chain(2));
        assert!(fam.is_chain());
        assert!(fam.is_one_sided(0) && fam.is_one_sided(1));
        assert!(fam.homotopic(0, 1));
        let fam = family(&chain(4));
        assert!(fam.is_chain());
        assert_eq!(fam.one_sided(), vec![0, 3]);
        assert!((1..4).all(|i| fam.homotopic(0, i)));
    }

    #[test]
    fn single_cycle_has_two_minimal_sides() {
        let t = theta();
        let fam = classify_family(&t.graph, &t.explicit_cycles().unwrap()[..1]).unwrap();
        assert_eq!(fam.num_one_sided_sides(), 2);
        assert!(fam.is_one_sided(0));
    }
}
