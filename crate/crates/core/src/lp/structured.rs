use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::packing::{check_feasible, FractionalSolution};
use crate::error::{Error, Result};
use crate::planar::{Cycle, EmbeddedGraph, LaminarFamily};
use crate::rational::{self, Rational};

/// One value shift of the structured transform, by cycle position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub from: usize,
    pub to: usize,
    #[serde(with = "rational::serde_str")]
    pub amount: Rational,
}

/// Redundancy of a cycle inside one support component, with one-sided sides
/// recomputed for that component alone.
pub fn is_redundant(component: &LaminarFamily, i: usize) -> bool {
    component.is_redundant(i)
}

/// The laminar family on the support of `x`, with ids equal to cycle positions.
pub fn support_family(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], x: &FractionalSolution) -> Result<LaminarFamily> {
    let support = x.support();
    LaminarFamily::with_ids(g.clone(), support.iter().map(|&i| cycles[i].clone()).collect(), support)
}

/// Moves the value of redundant cycles onto the unique one-sided cycle inside
/// their minimal homotopy side until no component has a redundant cycle.
pub fn make_structured(
    g: &Arc<EmbeddedGraph>,
    cycles: &[Cycle],
    x: &FractionalSolution,
) -> Result<(FractionalSolution, Vec<Shift>)> {
    let mut x = x.clone();
    let base = support_family(g, cycles, &x)?;
    let mut alive: Vec<usize> = (0..base.len()).collect();
    let mut shifts = Vec::new();
    let limit = base.len();
    loop {
        let fam = base.subfamily(&alive)?;
        let mut step = None;
        for members in fam.components() {
            let comp = fam.subfamily(&members)?;
            if let Some(s) = pick_shift(&comp)? {
                step = Some(s);
                break;
            }
        }
        let Some((from_id, to_id)) = step else { break };
        if shifts.len() >= limit {
            return Err(Error::StructureInvariantViolated("more shifts than support cycles".into()));
        }
        let amount = x.weights[from_id].clone();
        if &amount + &x.weights[to_id] > Rational::one() {
            return Err(Error::StructureInvariantViolated(format!(
                "x({from_id}) + x({to_id}) exceeds 1"
            )));
        }
        x.weights[to_id] += &amount;
        x.weights[from_id] = Rational::zero();
        check_feasible(cycles, &x)
            .map_err(|e| Error::StructureInvariantViolated(format!("shift {from_id} -> {to_id}: {e}")))?;
        alive.retain(|&p| base.id(p) != from_id);
        shifts.push(Shift { from: from_id, to: to_id, amount });
    }
    Ok((x, shifts))
}

/// Chooses (redundant cycle, target) in a component: the candidate whose
/// single-signature side is ⊆-minimal, ties by id; returns ids.
fn pick_shift(comp: &LaminarFamily) -> Result<Option<(usize, usize)>> {
    // both sides can qualify when the component has exactly two minimal sides
    let candidates: Vec<(usize, usize)> = (0..comp.len())
        .filter(|&i| comp.is_redundant(i))
        .flat_map(|i| (0..2).map(move |s| (i, s)))
        .filter(|&(i, s)| comp.signature(i, s).count_ones(..) == 1)
        .collect();
    let minimal = candidates.iter().filter(|&&(i, s)| {
        !candidates
            .iter()
            .any(|&(j, t)| j != i && comp.side(j, t).is_subset(comp.side(i, s)) && comp.side(j, t) != comp.side(i, s))
    });
    let Some(&(c, s)) = minimal.min_by_key(|&&(i, _)| comp.id(i)) else { return Ok(None) };
    let inside: Vec<usize> = (0..comp.len()).filter(|&j| j != c && comp.inside(j, comp.side(c, s))).collect();
    if inside.len() != 1 {
        return Err(Error::StructureInvariantViolated(format!(
            "side of redundant cycle {} holds {} other cycles",
            comp.id(c),
            inside.len()
        )));
    }
    Ok(Some((comp.id(c), comp.id(inside[0]))))
}

/// True iff no support component contains a redundant cycle.
pub fn is_structured(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], x: &FractionalSolution) -> Result<bool> {
    let fam = support_family(g, cycles, x)?;
    for members in fam.components() {
        let comp = fam.subfamily(&members)?;
        if (0..comp.len()).any(|i| comp.is_redundant(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{chain, redundant_nest, redundant_nest_with_f};
    use crate::harness::{FamilySpec, Mode};
    use crate::rational::ratio;

    fn weights_of(inst: &crate::harness::Instance) -> Vec<Rational> {
        match &inst.family {
            FamilySpec::Explicit { weights, .. } => weights.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn redundant_nest_shifts() {
        let inst = redundant_nest();
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = FractionalSolution { mode: Mode::Vertex, weights: weights_of(&inst) };
        check_feasible(cycles, &x).unwrap();
        let (y, shifts) = make_structured(&g, cycles, &x).unwrap();
        let z = Rational::zero();
        assert_eq!(y.weights, vec![ratio(2, 3), z.clone(), ratio(1, 3), ratio(2, 3), z, ratio(1, 1)]);
        assert_eq!(shifts.iter().map(|s| (s.from, s.to)).collect::<Vec<_>>(), vec![(1, 3), (4, 5)]);
        assert_eq!(y.value(), x.value());
        assert!(is_structured(&g, cycles, &y).unwrap());
        assert!(!is_structured(&g, cycles, &x).unwrap());
    }

    #[test]
    fn redundant_nest_with_f_one_third() {
        let inst = redundant_nest_with_f(ratio(1, 3));
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = FractionalSolution { mode: Mode::Vertex, weights: weights_of(&inst) };
        let (y, _) = make_structured(&g, cycles, &x).unwrap();
        assert_eq!(y.weights[5], ratio(2, 3));
        assert_eq!(y.weights[3], ratio(2, 3));
    }

    #[test]
    fn chain_is_fixed_point() {
        let inst = chain(2);
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = FractionalSolution { mode: Mode::Vertex, weights: vec![ratio(1, 4), ratio(1, 2)] };
        let (y, shifts) = make_structured(&g, cycles, &x).unwrap();
        assert!(shifts.is_empty());
        assert_eq!(y, x);
    }
}
