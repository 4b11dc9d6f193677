use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::instance::{Instance, Mode};
use super::oracle::{brute_max_packing, brute_min_transversal, MAX_ORACLE_CYCLES};
use super::enumerate_family;
use crate::error::{Error, Result};
use crate::lp::{check_feasible, constraint_rows, is_structured, make_structured, solve_packing_lp, support_family, uncross_support, FractionalSolution};
use crate::planar::{classify_family, is_laminar, Cycle, EmbeddedGraph, LaminarFamily};
use crate::rational::{self, Rational};
use crate::reduction::edge_to_vertex;
use crate::rounding::{compare_with_beta, greedy_round, RoundingTrace};
use crate::structure::{brute_min_mstar, certify, Certificate};

/// Knobs for one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Cap on enumerated family size and on exhaustive search nodes.
    pub budget: usize,
    /// Run the exhaustive oracles when the family has at most 20 cycles.
    pub oracle: bool,
    /// Build certificates on the structured support components.
    pub certify: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { budget: 200_000, oracle: true, certify: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredCheck {
    pub shifts: usize,
    pub value_preserved: bool,
    pub feasible: bool,
    pub redundancy_free: bool,
}

impl StructuredCheck {
    pub fn passes(&self) -> bool {
        self.value_preserved && self.feasible && self.redundancy_free
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBlock {
    pub nu: usize,
    pub tau: usize,
    pub nu_witness: Vec<usize>,
    pub tau_witness: Vec<usize>,
    /// `|packing| ≤ ν ≤ LP ≤ τ`.
    pub sandwich: bool,
    /// Minimum certificate sizes found by exhaustive search, per certified component.
    pub brute_mstar: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionBlock {
    pub nodes: usize,
    pub edges: usize,
    pub connectors: usize,
    /// Source cycle indices that were reduced.
    pub reduced: Vec<usize>,
    pub mismatches: Vec<(usize, usize)>,
    /// Packing size of the vertex pipeline run directly on the reduced instance.
    pub vertex_pipeline_packing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub mode: Mode,
    pub cycles: usize,
    #[serde(with = "rational::serde_str")]
    pub lp_value: Rational,
    pub uncross_steps: usize,
    pub structured: StructuredCheck,
    pub packing: Vec<usize>,
    /// `|packing|·(20+√130) ≥ 9·LP`, exactly.
    pub guarantee: bool,
    pub trace: RoundingTrace,
    pub certificates: Vec<Certificate>,
    pub oracle: Option<OracleBlock>,
    pub reduction: Option<ReductionBlock>,
    /// Rounding and certificates for the uniform solution on a laminar family.
    pub uniform: Option<UniformBlock>,
    pub violations: Vec<String>,
}

/// The whole family weighted `1/(largest load)`, rounded and certified like
/// an LP solution. Exercises the fractional paths that integral LP optima skip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformBlock {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub structured: StructuredCheck,
    pub trace: RoundingTrace,
    pub certificates: Vec<Certificate>,
}

impl Report {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInstance(e.to_string()))
    }
}

/// The family cycles of an instance, enumerated if needed.
pub fn family_cycles(inst: &Instance, budget: usize) -> Result<Vec<Cycle>> {
    enumerate_family(&inst.graph, &inst.family, budget)
}

/// An optimal LP solution with laminar support.
pub fn laminar_lp(g: &EmbeddedGraph, cycles: &[Cycle], mode: Mode) -> Result<(FractionalSolution, Rational, usize)> {
    let (x, value) = solve_packing_lp(cycles, mode);
    let support: Vec<Cycle> = x.support().iter().map(|&i| cycles[i].clone()).collect();
    if is_laminar(g, &support).is_ok() {
        return Ok((x, value, 0));
    }
    let (y, steps) = uncross_support(g, cycles, &x)?;
    Ok((y, value, steps))
}

fn structured_check(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], x: &FractionalSolution) -> Result<(StructuredCheck, FractionalSolution)> {
    let (y, shifts) = make_structured(g, cycles, x)?;
    let check = StructuredCheck {
        shifts: shifts.len(),
        value_preserved: y.value() == x.value(),
        feasible: check_feasible(cycles, &y).is_ok(),
        redundancy_free: is_structured(g, cycles, &y)?,
    };
    Ok((check, y))
}

/// Certificates for the components of a structured support.
pub fn certify_support(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], y: &FractionalSolution) -> Result<Vec<(LaminarFamily, Certificate)>> {
    let fam = support_family(g, cycles, y)?;
    let mut out = Vec::new();
    for members in fam.components() {
        let comp = fam.subfamily(&members)?;
        let cert = certify(&comp)?;
        out.push((comp, cert));
    }
    Ok(out)
}

/// Uniform weights `1/(largest load)` on every cycle.
pub fn uniform_solution(cycles: &[Cycle], mode: Mode) -> FractionalSolution {
    let load = constraint_rows(cycles, mode).values().map(|r| r.len()).max().unwrap_or(1);
    FractionalSolution { mode, weights: vec![Rational::new(1.into(), load.into()); cycles.len()] }
}

fn uniform_block(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], opts: &RunOptions, v: &mut Vec<String>) -> Result<Option<UniformBlock>> {
    if cycles.is_empty() || is_laminar(g, cycles).is_err() {
        return Ok(None);
    }
    let x = uniform_solution(cycles, Mode::Vertex);
    let (structured, y) = structured_check(g, cycles, &x)?;
    if !structured.passes() {
        v.push(format!("uniform structured transform: {structured:?}"));
    }
    let certs = if opts.certify { certify_support(g, cycles, &y)? } else { Vec::new() };
    certificate_violations(&certs, v);
    let trace = greedy_round(g, cycles, &x)?;
    v.extend(trace.violations().into_iter().map(|s| format!("uniform: {s}")));
    Ok(Some(UniformBlock {
        value: x.value(),
        structured,
        trace,
        certificates: certs.into_iter().map(|(_, c)| c).collect(),
    }))
}

/// Vertex-disjoint pipeline: LP, uncrossing, structured transform,
/// certificates and greedy rounding.
type VertexCore = (Rational, usize, StructuredCheck, RoundingTrace, Vec<(LaminarFamily, Certificate)>);

fn vertex_core(
    g: &Arc<EmbeddedGraph>,
    cycles: &[Cycle],
    opts: &RunOptions,
    v: &mut Vec<String>,
) -> Result<VertexCore> {
    let (x, value, steps) = laminar_lp(g, cycles, Mode::Vertex)?;
    let (check, y) = structured_check(g, cycles, &x)?;
    if !check.passes() {
        v.push(format!("structured transform: {check:?}"));
    }
    let certs = if opts.certify { certify_support(g, cycles, &y)? } else { Vec::new() };
    let trace = greedy_round(g, cycles, &x)?;
    Ok((value, steps, check, trace, certs))
}

fn certificate_violations(certs: &[(LaminarFamily, Certificate)], v: &mut Vec<String>) {
    for (_, c) in certs {
        if !c.passes() || !c.within_size_bound() {
            v.push(format!(
                "certificate on {:?}: {:?} {:?} {:?} |M*|={}",
                c.ids, c.structured_violations, c.good_violations, c.certificate_violations, c.mstar.len()
            ));
        }
    }
}

fn oracle_block(cycles: &[Cycle], mode: Mode, lp: &Rational, packing: usize, certs: &[(LaminarFamily, Certificate)], budget: usize) -> Result<OracleBlock> {
    let (nu, nu_witness) = brute_max_packing(cycles, mode)?;
    let (tau, tau_witness) = brute_min_transversal(cycles, mode, budget)?;
    let r = |n: usize| Rational::from_integer(n.into());
    let sandwich = packing <= nu && r(nu) <= *lp && *lp <= r(tau);
    let brute_mstar = certs
        .iter()
        .map(|(fam, _)| brute_min_mstar(fam, budget).ok().map(|m| m.len()))
        .collect();
    Ok(OracleBlock { nu, tau, nu_witness, tau_witness, sandwich, brute_mstar })
}

/// Runs the full pipeline in the instance's mode.
pub fn run(inst: &Instance, opts: &RunOptions) -> Result<Report> {
    let cycles = family_cycles(inst, opts.budget)?;
    let g = Arc::new(inst.graph.clone());
    let name = inst.name.clone().unwrap_or_else(|| "instance".into());
    let mut violations = Vec::new();
    match inst.mode {
        Mode::Vertex => {
            let (lp_value, uncross_steps, structured, trace, certs) = vertex_core(&g, &cycles, opts, &mut violations)?;
            let packing = trace.packing.clone();
            violations.extend(trace.violations());
            certificate_violations(&certs, &mut violations);
            let oracle = if opts.oracle && cycles.len() <= MAX_ORACLE_CYCLES {
                let o = oracle_block(&cycles, Mode::Vertex, &lp_value, packing.len(), &certs, opts.budget)?;
                check_oracle(&o, &certs, &mut violations);
                Some(o)
            } else {
                None
            };
            let guarantee = compare_with_beta(packing.len() as u64, &lp_value);
            let uniform = uniform_block(&g, &cycles, opts, &mut violations)?;
            Ok(Report {
                instance: name,
                mode: Mode::Vertex,
                cycles: cycles.len(),
                lp_value,
                uncross_steps,
                structured,
                packing,
                guarantee,
                trace,
                certificates: certs.into_iter().map(|(_, c)| c).collect(),
                oracle,
                reduction: None,
                uniform,
                violations,
            })
        }
        Mode::Edge => run_edge(&g, &cycles, name, opts),
    }
}

fn check_oracle(o: &OracleBlock, certs: &[(LaminarFamily, Certificate)], v: &mut Vec<String>) {
    if !o.sandwich {
        v.push(format!("oracle sandwich fails: nu={} tau={}", o.nu, o.tau));
    }
    for ((_, c), b) in certs.iter().zip(&o.brute_mstar) {
        if let Some(b) = b {
            if *b > c.mstar.len() {
                v.push(format!("exhaustive certificate {b} larger than constructed {}", c.mstar.len()));
            }
        }
    }
}

/// Edge-disjoint pipeline: edge LP, laminar support, reduction to the derived
/// graph, vertex rounding there, and lifting back.
fn run_edge(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], name: String, opts: &RunOptions) -> Result<Report> {
    let mut violations = Vec::new();
    let mut uniform = None;
    let (x, lp_value, uncross_steps) = if is_laminar(g, cycles).is_ok() {
        let (x, v) = solve_packing_lp(cycles, Mode::Edge);
        (x, v, 0)
    } else {
        laminar_lp(g, cycles, Mode::Edge)?
    };
    let reduced: Vec<usize> = if is_laminar(g, cycles).is_ok() { (0..cycles.len()).collect() } else { x.support() };
    let sub: Vec<Cycle> = reduced.iter().map(|&i| cycles[i].clone()).collect();
    let (packing, trace, structured, block, certs) = if sub.is_empty() {
        let trace = RoundingTrace { iterations: vec![], packing: vec![], lp_value: lp_value.clone(), guarantee: true };
        let check = StructuredCheck { shifts: 0, value_preserved: true, feasible: true, redundancy_free: true };
        (vec![], trace, check, None, vec![])
    } else {
        let map = edge_to_vertex(&classify_family(g, &sub)?)?;
        let y = map.push_solution(&FractionalSolution {
            mode: Mode::Edge,
            weights: reduced.iter().map(|&i| x.weights[i].clone()).collect(),
        });
        check_feasible(&map.target, &y)?;
        let tg = &map.target_graph;
        let (check, ys) = structured_check(tg, &map.target, &y)?;
        if !check.passes() {
            violations.push(format!("structured transform: {check:?}"));
        }
        let certs = if opts.certify { certify_support(tg, &map.target, &ys)? } else { Vec::new() };
        let trace = greedy_round(tg, &map.target, &y)?;
        uniform = uniform_block(tg, &map.target, opts, &mut violations)?;
        let lifted: Vec<usize> = map.lift_packing(&trace.packing)?.iter().map(|&i| reduced[i]).collect();
        let mut direct_v = Vec::new();
        let (_, _, _, direct, _) =
            vertex_core(tg, &map.target, &RunOptions { certify: false, ..opts.clone() }, &mut direct_v)?;
        let block = ReductionBlock {
            nodes: tg.num_vertices(),
            edges: tg.num_edges(),
            connectors: map.connectors.len(),
            reduced: reduced.clone(),
            mismatches: map.disjointness_mismatches(),
            vertex_pipeline_packing: direct.packing.len(),
        };
        if !block.mismatches.is_empty() {
            violations.push(format!("reduction disjointness mismatches {:?}", block.mismatches));
        }
        if block.vertex_pipeline_packing != lifted.len() {
            violations.push(format!(
                "edge pipeline packed {} but the vertex pipeline on the reduced instance packed {}",
                lifted.len(),
                block.vertex_pipeline_packing
            ));
        }
        (lifted, trace, check, Some(block), certs)
    };
    let mut packing = packing;
    packing.sort_unstable();
    for (k, &a) in packing.iter().enumerate() {
        if packing[k + 1..].iter().any(|&b| cycles[a].shares_edge(&cycles[b])) {
            violations.push(format!("lifted packing shares an edge at cycle {a}"));
        }
    }
    violations.extend(trace.violations());
    certificate_violations(&certs, &mut violations);
    let oracle = if opts.oracle && cycles.len() <= MAX_ORACLE_CYCLES {
        let o = oracle_block(cycles, Mode::Edge, &lp_value, packing.len(), &[], opts.budget)?;
        check_oracle(&o, &[], &mut violations);
        Some(o)
    } else {
        None
    };
    let guarantee = compare_with_beta(packing.len() as u64, &lp_value);
    if !guarantee {
        violations.push(format!("edge packing {} below the guarantee for {lp_value}", packing.len()));
    }
    Ok(Report {
        instance: name,
        mode: Mode::Edge,
        cycles: cycles.len(),
        lp_value,
        uncross_steps,
        structured,
        packing,
        guarantee,
        trace,
        certificates: certs.into_iter().map(|(_, c)| c).collect(),
        oracle,
        reduction: block,
        uniform,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{disjoint, redundant_nest, flower, theta};

    #[test]
    fn theta_vertex_and_edge() {
        let inst = theta();
        let r = run(&inst, &RunOptions::default()).unwrap();
        assert_eq!(rational::format(&r.lp_value), "1/1");
        assert_eq!(r.packing.len(), 1);
        assert!(r.passes(), "{:?}", r.violations);
        let mut e = inst.clone();
        e.mode = Mode::Edge;
        let r = run(&e, &RunOptions::default()).unwrap();
        assert!(r.passes(), "{:?}", r.violations);
    }

    #[test]
    fn small_fixtures_pass_and_round_trip() {
        for inst in [redundant_nest(), flower(4), disjoint(3)] {
            for mode in [Mode::Vertex, Mode::Edge] {
                let mut i = inst.clone();
                i.mode = mode;
                let r = run(&i, &RunOptions::default()).unwrap();
                assert!(r.passes(), "{:?} {mode:?}: {:?}", inst.name, r.violations);
                assert_eq!(Report::parse(&r.to_json()).unwrap(), r);
            }
        }
    }
}
