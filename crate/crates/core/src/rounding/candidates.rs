use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::algebraic::within_beta;
use super::profile::ThresholdProfile;
use crate::error::{Error, Result};
use crate::lp::FractionalSolution;
use crate::planar::LaminarFamily;
use crate::rational::{self, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum Rule {
    Single,
    Threshold {
        #[serde(with = "rational::serde_str")]
        alpha: Rational,
    },
    Fourcolor {
        #[serde(with = "rational::serde_str")]
        alpha: Rational,
    },
}

/// A set of pairwise disjoint one-sided cycles and the mass their
/// neighbourhoods carry. `cycles` holds family positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    #[serde(flatten)]
    pub rule: Rule,
    pub cycles: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub mass: Rational,
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    /// The rule's own upper bound on `ratio`.
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
}

/// Positions sharing a vertex with some cycle of `set` (including `set`).
pub fn neighbourhood(fam: &LaminarFamily, set: &[usize]) -> Vec<usize> {
    (0..fam.len())
        .filter(|&j| set.iter().any(|&i| i == j || fam.cycle(i).shares_vertex(fam.cycle(j))))
        .collect()
}

/// `x(N(set))`.
pub fn neighbourhood_mass(fam: &LaminarFamily, x: &FractionalSolution, set: &[usize]) -> Rational {
    rational::sum(neighbourhood(fam, set).iter().map(|&j| &x.weights[fam.id(j)]))
}

fn make(fam: &LaminarFamily, x: &FractionalSolution, rule: Rule, mut cycles: Vec<usize>, bound: Rational) -> Result<CandidateSet> {
    cycles.sort_unstable();
    for (k, &a) in cycles.iter().enumerate() {
        if !fam.is_one_sided(a) {
            return Err(Error::StructureInvariantViolated(format!("cycle {} is not one-sided", fam.id(a))));
        }
        if let Some(&b) = cycles[k + 1..].iter().find(|&&b| fam.cycle(a).shares_vertex(fam.cycle(b))) {
            return Err(Error::FeasibilityViolation(format!("candidate cycles {} and {} meet", fam.id(a), fam.id(b))));
        }
    }
    let mass = neighbourhood_mass(fam, x, &cycles);
    let ratio = &mass / Rational::from_integer(cycles.len().into());
    if ratio > bound {
        return Err(Error::GuaranteeViolated(format!("{rule:?}: ratio {ratio} exceeds its bound {bound}")));
    }
    Ok(CandidateSet { rule, cycles, mass, ratio, bound })
}

/// The one-sided cycle with the least neighbourhood mass (ties by id); its
/// ratio is at most `3 + x(𝓛₁)/|𝓛₁|`.
pub fn candidate_single(fam: &LaminarFamily, x: &FractionalSolution) -> Result<CandidateSet> {
    let l1 = fam.one_sided();
    if l1.is_empty() {
        return Err(Error::EmptySupport);
    }
    let best = *l1.iter().min_by_key(|&&i| (neighbourhood_mass(fam, x, &[i]), fam.id(i))).unwrap();
    let total = rational::sum(l1.iter().map(|&i| &x.weights[fam.id(i)]));
    let bound = Rational::from_integer(3.into()) + total / Rational::from_integer(l1.len().into());
    make(fam, x, Rule::Single, vec![best], bound)
}

/// `𝓛₁^{>α}` for `α ≥ ½`; its ratio is at most `1 + (1 − α)/r_α`.
pub fn candidate_threshold(fam: &LaminarFamily, x: &FractionalSolution, alpha: &Rational) -> Result<CandidateSet> {
    assert!(*alpha >= ratio(1, 2));
    let p = ThresholdProfile::new(fam, x);
    let level = p.level(alpha);
    if level.is_empty() {
        return Err(Error::EmptyLevel);
    }
    let bound = Rational::one() + (Rational::one() - alpha) / p.r(alpha);
    make(fam, x, Rule::Threshold { alpha: alpha.clone() }, level, bound)
}

/// Adjacency lists of the conflict graph on `𝓛₁^{>α}` (indices into the
/// returned level), `α ≥ ¼`.
pub fn conflict_graph(fam: &LaminarFamily, x: &FractionalSolution, alpha: &Rational) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    assert!(*alpha >= ratio(1, 4));
    let level = ThresholdProfile::new(fam, x).level(alpha);
    let mut count = std::collections::BTreeMap::<usize, usize>::new();
    for &i in &level {
        for &v in fam.cycle(i).vertices() {
            let c = count.entry(v).or_default();
            *c += 1;
            if *c >= 4 {
                return Err(Error::FeasibilityViolation(format!("vertex {v} lies on four cycles above {alpha}")));
            }
        }
    }
    let adj = (0..level.len())
        .map(|a| {
            (0..level.len()).filter(|&b| b != a && fam.cycle(level[a]).shares_vertex(fam.cycle(level[b]))).collect()
        })
        .collect();
    Ok((level, adj))
}

/// A proper colouring with at most four colours by backtracking in
/// smallest-last order; `budget` bounds the search nodes.
pub fn four_color(adj: &[Vec<usize>], budget: usize) -> Result<Vec<usize>> {
    let n = adj.len();
    // smallest-last (degeneracy) order, ties by index
    let mut removed = vec![false; n];
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for &u in &adj[v] {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order.reverse();
    let mut colour = vec![usize::MAX; n];
    let mut nodes = 0;
    fn go(k: usize, order: &[usize], adj: &[Vec<usize>], colour: &mut [usize], nodes: &mut usize, budget: usize) -> Result<bool> {
        if k == order.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SearchExhausted);
        }
        let v = order[k];
        for c in 0..4 {
            if adj[v].iter().all(|&u| colour[u] != c) {
                colour[v] = c;
                if go(k + 1, order, adj, colour, nodes, budget)? {
                    return Ok(true);
                }
            }
        }
        colour[v] = usize::MAX;
        Ok(false)
    }
    if go(0, &order, adj, &mut colour, &mut nodes, budget)? {
        Ok(colour)
    } else {
        Err(Error::SearchExhausted)
    }
}

/// For `¼ ≤ α < ½`: `𝓛₁^{>1−α}` plus the largest colour class of the
/// remaining level set; its ratio is at most `1 + 4(1 − α)/(r_α + 3r_{1−α})`.
pub fn candidate_fourcolor(fam: &LaminarFamily, x: &FractionalSolution, alpha: &Rational) -> Result<CandidateSet> {
    assert!(*alpha >= ratio(1, 4) && *alpha < ratio(1, 2));
    let p = ThresholdProfile::new(fam, x);
    let beta = Rational::one() - alpha;
    let hi: BTreeSet<usize> = p.level(&beta).into_iter().collect();
    let (level, adj) = conflict_graph(fam, x, alpha)?;
    if level.is_empty() {
        return Err(Error::EmptyLevel);
    }
    for (a, &i) in level.iter().enumerate() {
        if hi.contains(&i) && !adj[a].is_empty() {
            return Err(Error::FeasibilityViolation(format!("cycle {} above {beta} meets the level set", fam.id(i))));
        }
    }
    let rest: Vec<usize> = (0..level.len()).filter(|&a| !hi.contains(&level[a])).collect();
    let index: std::collections::HashMap<usize, usize> = rest.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let sub: Vec<Vec<usize>> = rest.iter().map(|&a| adj[a].iter().filter_map(|b| index.get(b).copied()).collect()).collect();
    let colour = four_color(&sub, 1_000_000)?;
    let mut classes: [Vec<usize>; 4] = Default::default();
    for (k, &c) in colour.iter().enumerate() {
        classes[c].push(level[rest[k]]);
    }
    let largest = (0..4).max_by_key(|&c| (classes[c].len(), std::cmp::Reverse(c))).unwrap();
    let mut cycles: Vec<usize> = hi.iter().copied().chain(classes[largest].iter().copied()).collect();
    cycles.sort_unstable();
    if 4 * cycles.len() < 4 * hi.len() + (level.len() - hi.len()) {
        return Err(Error::StructureInvariantViolated("largest colour class below a quarter".into()));
    }
    let denom = p.r(alpha) + Rational::from_integer(3.into()) * p.r(&beta);
    let bound = Rational::one() + Rational::from_integer(4.into()) * &beta / denom;
    make(fam, x, Rule::Fourcolor { alpha: alpha.clone() }, cycles, bound)
}

/// Threshold levels: `½` and every one-sided weight in `[½, 1)`.
pub fn threshold_alphas(p: &ThresholdProfile) -> Vec<Rational> {
    let half = ratio(1, 2);
    let mut out: Vec<Rational> = std::iter::once(half.clone())
        .chain(p.values.iter().filter(|v| **v >= half && **v < Rational::one()).cloned())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Four-colour levels in `[¼, ½)`: every point where `𝓛₁^{>α}` or
/// `𝓛₁^{>1−α}` changes, and the midpoints between consecutive ones.
pub fn fourcolor_alphas(p: &ThresholdProfile) -> Vec<Rational> {
    let (q, half) = (ratio(1, 4), ratio(1, 2));
    let mut cuts: Vec<Rational> = vec![q.clone()];
    for v in &p.values {
        if *v >= q && *v < half {
            cuts.push(v.clone());
        }
        let w = Rational::one() - v;
        if w >= q && w < half {
            cuts.push(w);
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out = cuts.clone();
    for (k, c) in cuts.iter().enumerate() {
        let next = cuts.get(k + 1).unwrap_or(&half);
        out.push((c + next) / Rational::from_integer(2.into()));
    }
    out.sort();
    out.dedup();
    out
}

/// Every applicable candidate: single, thresholds, then four-colour levels.
pub fn all_candidates(fam: &LaminarFamily, x: &FractionalSolution) -> Result<Vec<CandidateSet>> {
    let p = ThresholdProfile::new(fam, x);
    let mut out = vec![candidate_single(fam, x)?];
    for a in threshold_alphas(&p) {
        if p.r(&a).is_zero() {
            continue;
        }
        out.push(candidate_threshold(fam, x, &a)?);
    }
    for a in fourcolor_alphas(&p) {
        if p.r(&a).is_zero() {
            continue;
        }
        out.push(candidate_fourcolor(fam, x, &a)?);
    }
    Ok(out)
}

/// The minimum-ratio candidate (first on ties), checked against `β` exactly.
pub fn choose_fstar(fam: &LaminarFamily, x: &FractionalSolution) -> Result<CandidateSet> {
    let all = all_candidates(fam, x)?;
    let best = all.iter().min_by(|a, b| a.ratio.cmp(&b.ratio)).unwrap().clone();
    if !within_beta(&best.ratio) {
        return Err(Error::GuaranteeViolated(format!("best ratio {} exceeds (20+√130)/9", best.ratio)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{disjoint, flower};
    use crate::harness::Mode;
    use crate::planar::classify_family;

    fn sol(w: Vec<Rational>) -> FractionalSolution {
        FractionalSolution { mode: Mode::Vertex, weights: w }
    }

    #[test]
    fn disjoint_unit_cycles() {
        let inst = disjoint(2);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let x = sol(vec![Rational::one(), Rational::one()]);
        assert_eq!(candidate_single(&fam, &x).unwrap().ratio, Rational::one());
        let t = candidate_threshold(&fam, &x, &ratio(1, 2)).unwrap();
        assert_eq!((t.cycles.len(), t.ratio.clone()), (2, Rational::one()));
        assert_eq!(choose_fstar(&fam, &x).unwrap().ratio, Rational::one());
    }

    #[test]
    fn three_thirds_form_a_triangle() {
        let inst = flower(3);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let x = sol(vec![ratio(1, 3); 3]);
        let (level, adj) = conflict_graph(&fam, &x, &ratio(1, 4)).unwrap();
        assert_eq!(level.len(), 3);
        assert!(adj.iter().all(|a| a.len() == 2));
        let c = candidate_fourcolor(&fam, &x, &ratio(1, 4)).unwrap();
        assert_eq!(c.cycles.len(), 1);
        assert_eq!(c.ratio, Rational::one());
    }

    #[test]
    fn four_at_a_vertex_is_infeasible() {
        let inst = flower(4);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let x = sol(vec![ratio(1, 4) + ratio(1, 100); 4]);
        assert!(matches!(conflict_graph(&fam, &x, &ratio(1, 4)), Err(Error::FeasibilityViolation(_))));
    }

    #[test]
    fn colouring_small_graphs() {
        assert_eq!(four_color(&[vec![], vec![]], 100).unwrap(), vec![0, 0]);
        let tri = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        let c = four_color(&tri, 100).unwrap();
        assert_eq!(c.iter().collect::<BTreeSet<_>>().len(), 3);
        let k4: Vec<Vec<usize>> = (0..4).map(|v| (0..4).filter(|&u| u != v).collect()).collect();
        let c = four_color(&k4, 100).unwrap();
        assert_eq!(c.iter().collect::<BTreeSet<_>>().len(), 4);
        let k5: Vec<Vec<usize>> = (0..5).map(|v| (0..5).filter(|&u| u != v).collect()).collect();
        assert!(four_color(&k5, 1000).is_err());
    }

    #[test]
    fn alpha_grids() {
        let inst = flower(3);
        let fam = classify_family(&inst.graph, inst.explicit_cycles().unwrap()).unwrap();
        let x = sol(vec![ratio(2, 3), ratio(1, 6), ratio(1, 6)]);
        let p = ThresholdProfile::new(&fam, &x);
        assert_eq!(threshold_alphas(&p), vec![ratio(1, 2), ratio(2, 3)]);
        assert_eq!(fourcolor_alphas(&p), vec![ratio(1, 4), ratio(7, 24), ratio(1, 3), ratio(5, 12)]);
    }
}
