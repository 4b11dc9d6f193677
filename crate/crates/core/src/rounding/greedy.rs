use std::sync::Arc;

use num_traits::Zero;
#[cfg(test)]
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::algebraic::{compare_with_beta, within_beta};
use super::candidates::{all_candidates, neighbourhood, neighbourhood_mass, CandidateSet, Rule};
use super::profile::ThresholdProfile;
use crate::error::{Error, Result};
use crate::lp::{make_structured, support_family, FractionalSolution, Shift};
use crate::planar::{Cycle, EmbeddedGraph, LaminarFamily};
use crate::rational::{self, Rational};
use crate::structure::{check_cover, cover_for_set};

/// Exact checks made on one structured connected component.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentAudit {
    /// `Σ_{C∈𝓛₁} x(N(C) \ {C})`, to compare with `3|𝓛₁|`.
    #[serde(with = "rational::serde_str")]
    pub one_sided_neighbour_mass: Rational,
    /// `min_{C∈𝓛₁} x(N(C))`, to compare with 4.
    #[serde(with = "rational::serde_str")]
    pub min_neighbourhood_mass: Rational,
    pub one_sided: usize,
    pub integral_identity: bool,
    /// Levels whose cover was checked.
    pub covers_checked: usize,
    pub cover_violations: Vec<String>,
    /// Candidates whose ratio exceeds their rule's bound.
    pub bound_violations: Vec<String>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStep {
    /// Cycle indices of the component.
    pub members: Vec<usize>,
    /// The chosen set, with cycle indices in place of positions.
    pub chosen: CandidateSet,
    pub candidates: usize,
    pub audit: ComponentAudit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iteration {
    pub shifts: Vec<Shift>,
    pub components: Vec<ComponentStep>,
    #[serde(with = "rational::serde_str")]
    pub mass_before: Rational,
    #[serde(with = "rational::serde_str")]
    pub mass_after: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundingTrace {
    pub iterations: Vec<Iteration>,
    /// Cycle indices of the packing, sorted.
    pub packing: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub lp_value: Rational,
    /// `|packing|·(20+√130) ≥ 9·lp_value`.
    pub guarantee: bool,
}

impl RoundingTrace {
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .iterations
            .iter()
            .flat_map(|it| it.components.iter())
            .flat_map(|c| c.audit.violations.iter().chain(&c.audit.cover_violations).chain(&c.audit.bound_violations).cloned())
            .collect();
        if !self.guarantee {
            out.push(format!("packing of {} below the guarantee for LP value {}", self.packing.len(), self.lp_value));
        }
        out
    }
}

/// Exact checks on a structured connected component, including the
/// cover bound for every level set produced by the threshold rules.
pub fn audit_component(fam: &LaminarFamily, x: &FractionalSolution, cands: &[CandidateSet]) -> Result<ComponentAudit> {
    let l1 = fam.one_sided();
    let mut audit = ComponentAudit { one_sided: l1.len(), ..Default::default() };
    let mut total = Rational::zero();
    let mut least: Option<Rational> = None;
    for &i in &l1 {
        let n = neighbourhood_mass(fam, x, &[i]);
        total += &n - &x.weights[fam.id(i)];
        if least.as_ref().is_none_or(|l| n < *l) {
            least = Some(n);
        }
    }
    let three = Rational::from_integer((3 * l1.len()).into());
    if total > three {
        audit.violations.push(format!("one-sided neighbour mass {total} exceeds {three}"));
    }
    let least = least.unwrap_or_else(Rational::zero);
    if least > Rational::from_integer(4.into()) {
        audit.violations.push(format!("least one-sided neighbourhood mass {least} exceeds 4"));
    }
    audit.one_sided_neighbour_mass = total;
    audit.min_neighbourhood_mass = least;
    audit.integral_identity = ThresholdProfile::new(fam, x).integral_identity_holds();
    if !audit.integral_identity {
        audit.violations.push("threshold integral identity fails".into());
    }
    for c in cands {
        if let Rule::Single = c.rule {
            continue;
        }
        let cover = cover_for_set(fam, &c.cycles)?;
        let bad = check_cover(fam, &c.cycles, &cover.m);
        audit.covers_checked += 1;
        audit.cover_violations.extend(bad.into_iter().map(|b| format!("{:?}: {b}", c.rule)));
    }
    for c in cands {
        if c.ratio > c.bound {
            audit.bound_violations.push(format!("{:?}: ratio {} above bound {}", c.rule, c.ratio, c.bound));
        }
    }
    Ok(audit)
}

/// Greedy rounding: re-structure, split the support into components, take
/// the best candidate set in each, zero out its neighbourhood, and repeat
/// until nothing is left. `x` must be feasible with laminar support.
pub fn greedy_round(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], x: &FractionalSolution) -> Result<RoundingTrace> {
    let lp_value = x.value();
    let mut x = x.clone();
    let mut packing = Vec::new();
    let mut iterations = Vec::new();
    while !x.value().is_zero() {
        let mass_before = x.value();
        let (y, shifts) = make_structured(g, cycles, &x)?;
        x = y;
        let fam = support_family(g, cycles, &x)?;
        let mut components = Vec::new();
        let mut zero = Vec::new();
        for members in fam.components() {
            let comp = fam.subfamily(&members)?;
            let cands = all_candidates(&comp, &x)?;
            let best = cands.iter().min_by(|a, b| a.ratio.cmp(&b.ratio)).unwrap().clone();
            if !within_beta(&best.ratio) {
                return Err(Error::GuaranteeViolated(format!("best ratio {} exceeds (20+√130)/9", best.ratio)));
            }
            let audit = audit_component(&comp, &x, &cands)?;
            zero.extend(neighbourhood(&comp, &best.cycles).into_iter().map(|j| comp.id(j)));
            let ids: Vec<usize> = best.cycles.iter().map(|&j| comp.id(j)).collect();
            packing.extend(ids.iter().copied());
            components.push(ComponentStep {
                members: comp.ids().to_vec(),
                chosen: CandidateSet { cycles: ids, ..best },
                candidates: cands.len(),
                audit,
            });
        }
        for id in zero {
            x.weights[id] = Rational::zero();
        }
        let mass_after = x.value();
        if mass_after >= mass_before && !mass_before.is_zero() && shifts.is_empty() {
            return Err(Error::StructureInvariantViolated("rounding made no progress".into()));
        }
        iterations.push(Iteration { shifts, components, mass_before, mass_after });
    }
    packing.sort_unstable();
    for (k, &a) in packing.iter().enumerate() {
        if let Some(&b) = packing[k + 1..].iter().find(|&&b| cycles[a].shares_vertex(&cycles[b])) {
            return Err(Error::FeasibilityViolation(format!("packed cycles {a} and {b} meet")));
        }
    }
    let guarantee = compare_with_beta(packing.len() as u64, &lp_value);
    Ok(RoundingTrace { iterations, packing, lp_value, guarantee })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{disjoint, redundant_nest, theta};
    use crate::harness::{brute_max_packing, FamilySpec, Mode};
    use crate::lp::solve_packing_lp;

    fn run(inst: &crate::harness::Instance, x: Option<FractionalSolution>) -> RoundingTrace {
        let g = Arc::new(inst.graph.clone());
        let cycles = inst.explicit_cycles().unwrap();
        let x = x.unwrap_or_else(|| solve_packing_lp(cycles, Mode::Vertex).0);
        greedy_round(&g, cycles, &x).unwrap()
    }

    #[test]
    fn disjoint_cycles_all_packed() {
        let t = run(&disjoint(4), None);
        assert_eq!(t.packing.len(), 4);
        assert!(t.guarantee && t.violations().is_empty());
    }

    #[test]
    fn theta_packs_one() {
        let t = run(&theta(), None);
        assert_eq!(t.lp_value, Rational::one());
        assert_eq!(t.packing.len(), 1);
        assert!(t.guarantee);
    }

    #[test]
    fn redundant_nest_packs_at_least_two() {
        let inst = redundant_nest();
        let FamilySpec::Explicit { weights, .. } = &inst.family else { unreachable!() };
        let x = FractionalSolution { mode: Mode::Vertex, weights: weights.clone() };
        let t = run(&inst, Some(x));
        let (nu, _) = brute_max_packing(inst.explicit_cycles().unwrap(), Mode::Vertex).unwrap();
        assert!(t.packing.len() >= 2 && t.packing.len() <= nu, "{:?} nu {nu}", t.packing);
        assert!(t.violations().is_empty(), "{:?}", t.violations());
    }
}
