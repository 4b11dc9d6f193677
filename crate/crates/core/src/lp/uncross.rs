use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use super::packing::{check_feasible, FractionalSolution};
use crate::error::{Error, Result};
use crate::planar::{cycle_sides, disjoint_sides, Cycle, EmbeddedGraph, FaceSet};
use crate::rational::Rational;

struct Sides<'a> {
    g: &'a EmbeddedGraph,
    family: &'a [Cycle],
    cache: HashMap<usize, [FaceSet; 2]>,
}

impl Sides<'_> {
    fn get(&mut self, i: usize) -> &[FaceSet; 2] {
        let (g, family) = (self.g, self.family);
        self.cache.entry(i).or_insert_with(|| {
            let (a, b) = cycle_sides(g, &family[i]);
            [a, b]
        })
    }

    fn crossing(&mut self, i: usize, j: usize) -> bool {
        let a = self.get(i).clone();
        disjoint_sides(&a, self.get(j)).is_none()
    }

    fn crossing_pairs(&mut self, support: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &i) in support.iter().enumerate() {
            for &j in &support[k + 1..] {
                if self.crossing(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Subpaths of `c2` whose end vertices lie on `c1` and whose inner vertices do
/// not, skipping single edges that `c1` also uses. Returns (edges, start, end).
fn bridges(c1: &Cycle, c2: &Cycle) -> Vec<(Vec<usize>, usize, usize)> {
    let k = c2.len();
    let vs = c2.vertices();
    let on1: Vec<bool> = vs.iter().map(|&v| c1.contains_vertex(v)).collect();
    let mut out = Vec::new();
    for i in 0..k {
        if !on1[i] {
            continue;
        }
        let mut edges = vec![c2.edges()[i]];
        let mut j = (i + 1) % k;
        while !on1[j] {
            edges.push(c2.edges()[j]);
            j = (j + 1) % k;
        }
        if j == i || (edges.len() == 1 && c1.contains_edge(edges[0])) {
            continue;
        }
        out.push((edges, vs[i], vs[j]));
    }
    out
}

/// The two arcs of `c` between vertices `a` and `b`.
fn arcs(c: &Cycle, a: usize, b: usize) -> [Vec<usize>; 2] {
    let k = c.len();
    let (pa, pb) = (c.index_of(a).unwrap(), c.index_of(b).unwrap());
    let forward: Vec<usize> = (0..(pb + k - pa) % k).map(|t| c.edges()[(pa + t) % k]).collect();
    let backward: Vec<usize> = (0..(pa + k - pb) % k).map(|t| c.edges()[(pb + t) % k]).collect();
    [forward, backward]
}

/// Reroutes value off crossing support pairs until the support is laminar.
/// Each accepted step must strictly reduce the number of crossing support
/// pairs; the number of steps is capped at `10 · |family|²`.
pub fn uncross_support(g: &EmbeddedGraph, family: &[Cycle], x: &FractionalSolution) -> Result<(FractionalSolution, usize)> {
    let mut x = x.clone();
    let index: HashMap<Vec<usize>, usize> = family.iter().enumerate().map(|(i, c)| (c.sorted_edges(), i)).collect();
    let edge_sets: Vec<HashSet<usize>> = family.iter().map(|c| c.edges().iter().copied().collect()).collect();
    let mut sides = Sides { g, family, cache: HashMap::new() };
    let cap = 10 * family.len() * family.len();
    let mut steps = 0;
    loop {
        let support = x.support();
        let crossing = sides.crossing_pairs(&support);
        if crossing.is_empty() {
            return Ok((x, steps));
        }
        if steps >= cap {
            return Err(Error::UncrossingStalled(steps));
        }
        let mut best: Option<(usize, FractionalSolution)> = None;
        for &(p, q) in &crossing {
            for (i1, i2) in [(p, q), (q, p)] {
                let (c1, c2) = (&family[i1], &family[i2]);
                for (p2, a, b) in bridges(c1, c2) {
                    for p1 in arcs(c1, a, b) {
                        let mut c3: Vec<usize> = p1.iter().chain(&p2).copied().collect();
                        c3.sort_unstable();
                        let Some(&i3) = index.get(&c3) else { continue };
                        let rest: HashSet<usize> = c1
                            .edges()
                            .iter()
                            .filter(|e| !p1.contains(e))
                            .chain(c2.edges().iter().filter(|e| !p2.contains(e)))
                            .copied()
                            .collect();
                        for i4 in (0..family.len()).filter(|&i| edge_sets[i].is_subset(&rest)) {
                            let eps: Rational = x.weights[i1].clone().min(x.weights[i2].clone());
                            let mut y = x.clone();
                            y.weights[i1] -= &eps;
                            y.weights[i2] -= &eps;
                            y.weights[i3] += &eps;
                            y.weights[i4] += &eps;
                            if check_feasible(family, &y).is_err() {
                                continue;
                            }
                            let count = sides.crossing_pairs(&y.support()).len();
                            if count < crossing.len() && best.as_ref().is_none_or(|(c, _)| count < *c) {
                                best = Some((count, y));
                            }
                        }
                    }
                }
            }
            if best.is_some() {
                break;
            }
        }
        if best.is_none() {
            best = general_exchange(&mut sides, family, &edge_sets, &x, &crossing);
        }
        let Some((_, y)) = best else { return Err(Error::UncrossingStalled(steps)) };
        debug_assert_eq!(y.value(), x.value());
        debug_assert!(y.weights.iter().all(|w| !w.is_negative()));
        x = y;
        steps += 1;
        for w in x.weights.iter_mut() {
            if w.is_zero() {
                *w = Rational::zero();
            }
        }
    }
}

/// Any two family cycles whose edge multiset fits inside that of a crossing
/// pair, used when no bridge exchange helps.
fn general_exchange(
    sides: &mut Sides<'_>,
    family: &[Cycle],
    edge_sets: &[HashSet<usize>],
    x: &FractionalSolution,
    crossing: &[(usize, usize)],
) -> Option<(usize, FractionalSolution)> {
    let mut best: Option<(usize, FractionalSolution)> = None;
    for &(i1, i2) in crossing {
        let union: HashSet<usize> = edge_sets[i1].union(&edge_sets[i2]).copied().collect();
        let cand: Vec<usize> =
            (0..family.len()).filter(|&j| j != i1 && j != i2 && edge_sets[j].is_subset(&union)).collect();
        let eps: Rational = x.weights[i1].clone().min(x.weights[i2].clone());
        for (k, &a) in cand.iter().enumerate() {
            for &b in &cand[k..] {
                let fits = union.iter().all(|e| {
                    let have = edge_sets[i1].contains(e) as u8 + edge_sets[i2].contains(e) as u8;
                    edge_sets[a].contains(e) as u8 + edge_sets[b].contains(e) as u8 <= have
                });
                if !fits {
                    continue;
                }
                let mut y = x.clone();
                y.weights[i1] -= &eps;
                y.weights[i2] -= &eps;
                y.weights[a] += &eps;
                y.weights[b] += &eps;
                if check_feasible(family, &y).is_err() {
                    continue;
                }
                let count = sides.crossing_pairs(&y.support()).len();
                if count < crossing.len() && best.as_ref().is_none_or(|(c, _)| count < *c) {
                    best = Some((count, y));
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    best
}
