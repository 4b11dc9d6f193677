//! The ten acceptance criteria, run over the fixed corpus. Prints one
//! PASS/FAIL line per criterion and fails if any criterion fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, ToPrimitive, Zero};

use cyclepack::error::Error;
use cyclepack::harness::corpus::corpus;
use cyclepack::harness::generate::redundant_nest;
use cyclepack::harness::pipeline::{family_cycles, laminar_lp, uniform_solution};
use cyclepack::harness::{run, FamilySpec, Instance, Mode, Report, RunOptions};
use cyclepack::lp::{check_feasible, make_structured, support_family, FractionalSolution};
use cyclepack::planar::{classify_family, is_laminar, Cycle, EmbeddedGraph};
use cyclepack::rational::{int, ratio, Rational};
use cyclepack::reduction::edge_to_vertex;
use cyclepack::rounding::{
    all_candidates, beta_identities, candidates::neighbourhood_mass, within_beta, AlgebraicBound, RoundingTrace, Rule,
    ThresholdProfile,
};

#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
    checked: usize,
    notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

const TITLES: [&str; 10] = [
    "packing guarantee |P|(20+sqrt130) >= 9 LP, both modes",
    "per-iteration ratio of every chosen set <= beta",
    "structured transform preserves value, feasibility, no redundancy",
    "good structured incidence sets and vertex certificates",
    "one-sided neighbour mass <= 3|L1| and least neighbourhood <= 4",
    "cover size and hitting for every threshold set",
    "candidate ratios within their rule bounds",
    "beta root identities and delta < 1/6",
    "edge reduction preserves disjointness and packing size",
    "oracle sandwich |P| <= nu <= LP <= tau",
];

fn beta_f64() -> f64 {
    (20.0 + 130f64.sqrt()) / 9.0
}

/// `n(20+√130) ≥ 9x`, decided by squaring instead of the library's comparison.
fn guarantee_by_squares(n: u64, x: &Rational) -> bool {
    let n = Rational::from_integer(n.into());
    let lhs = Rational::from_integer(9.into()) * x - Rational::from_integer(20.into()) * &n;
    lhs <= Rational::zero() || &lhs * &lhs <= Rational::from_integer(130.into()) * &n * &n
}

fn pairwise_disjoint(cycles: &[Cycle], packing: &[usize], mode: Mode) -> bool {
    packing.iter().enumerate().all(|(k, &a)| {
        packing[k + 1..].iter().all(|&b| match mode {
            Mode::Vertex => !cycles[a].shares_vertex(&cycles[b]),
            Mode::Edge => !cycles[a].shares_edge(&cycles[b]),
        })
    })
}

fn traces(r: &Report) -> Vec<&RoundingTrace> {
    let mut out = vec![&r.trace];
    out.extend(r.uniform.as_ref().map(|u| &u.trace));
    out
}

/// Recomputes every candidate's ratio and bound from the threshold profile.
fn replay_candidates(g: &Arc<EmbeddedGraph>, cycles: &[Cycle], x: &FractionalSolution, c3: &mut Criterion, c7: &mut Criterion, tag: &str) {
    let (y, _) = match make_structured(g, cycles, x) {
        Ok(v) => v,
        Err(e) => {
            c3.check(false, || format!("{tag}: {e}"));
            return;
        }
    };
    c3.check(y.value() == x.value(), || format!("{tag}: value {} became {}", x.value(), y.value()));
    c3.check(check_feasible(cycles, &y).is_ok(), || format!("{tag}: infeasible after the transform"));
    let fam = support_family(g, cycles, &y).unwrap();
    for members in fam.components() {
        let comp = fam.subfamily(&members).unwrap();
        c3.check((0..comp.len()).all(|i| !comp.is_redundant(i)), || format!("{tag}: redundant cycle left in {:?}", comp.ids()));
        let p = ThresholdProfile::new(&comp, &y);
        let l1 = Rational::from_integer(p.len().into());
        let one = Rational::one();
        for c in all_candidates(&comp, &y).unwrap() {
            let bound = match &c.rule {
                Rule::Single => {
                    let mass: Rational = p.one_sided.iter().map(|(_, w)| w.clone()).fold(Rational::zero(), |a, b| a + b);
                    int(3) + mass / &l1
                }
                Rule::Threshold { alpha } => &one + (&one - alpha) / p.r(alpha),
                Rule::Fourcolor { alpha } => {
                    &one + int(4) * (&one - alpha) / (p.r(alpha) + int(3) * p.r(&(&one - alpha)))
                }
            };
            let ratio = neighbourhood_mass(&comp, &y, &c.cycles) / Rational::from_integer(c.cycles.len().into());
            c7.check(ratio == c.ratio && bound == c.bound && ratio <= bound, || {
                format!("{tag}: {:?} ratio {ratio} (reported {}) bound {bound} (reported {})", c.rule, c.ratio, c.bound)
            });
        }
    }
}

fn check_reduction(inst: &Instance, cycles: &[Cycle], c9: &mut Criterion) {
    let g = Arc::new(inst.graph.clone());
    if cycles.is_empty() || g.num_edges() < 2 || is_laminar(&g, cycles).is_err() {
        return;
    }
    let map = edge_to_vertex(&classify_family(&g, cycles).unwrap()).unwrap();
    let mismatches = map.disjointness_mismatches();
    c9.check(mismatches.is_empty(), || format!("{:?}: disjointness differs on {mismatches:?}", inst.name));
}

fn redundant_nest_weights(c3: &mut Criterion) {
    let inst = redundant_nest();
    let FamilySpec::Explicit { weights, .. } = &inst.family else { unreachable!() };
    let g = Arc::new(inst.graph.clone());
    let cycles = inst.explicit_cycles().unwrap();
    let x = FractionalSolution { mode: Mode::Vertex, weights: weights.clone() };
    let (y, _) = make_structured(&g, cycles, &x).unwrap();
    let expect = [("a", ratio(2, 3)), ("b", int(0)), ("c", ratio(1, 3)), ("d", ratio(2, 3)), ("e", int(0)), ("f", int(1))];
    for (name, w) in expect {
        let got = &y.weights[inst.cycle_by_name(name).unwrap()];
        c3.check(*got == w, || format!("redundant nest: {name} = {got}, expected {w}"));
    }
    c3.notes.push("redundant nest gives a=2/3 c=1/3 d=2/3 f=1".into());
}

fn beta_checks(c8: &mut Criterion) {
    let (quadratic, fixed_point) = beta_identities();
    c8.check(quadratic, || "9b^2 - 40b + 30 = 0 fails exactly".into());
    c8.check(fixed_point, || "b = (b^2 - 94b + 90)/(26(1-b)) fails exactly".into());
    let b = beta_f64();
    let residual = (9.0 * b * b - 40.0 * b + 30.0).abs();
    c8.check(residual < 1e-12, || format!("float residual {residual:e}"));
    let alt = ((b * b - 94.0 * b + 90.0) / (26.0 * (1.0 - b)) - b).abs();
    c8.check(alt < 1e-12, || format!("float fixed-point residual {alt:e}"));
    let delta = (2.0 * b - 3.0) / 26.0;
    c8.check(delta < 1.0 / 6.0, || format!("delta = {delta}"));
    // δ < 1/6 ⇔ β < 11/3
    let exact = AlgebraicBound::beta().cmp_rational(&ratio(11, 3)) == std::cmp::Ordering::Less;
    c8.check(exact, || "beta >= 11/3".into());
    c8.notes.push(format!("beta = {b:.12}, residual {residual:.1e}, delta = {delta:.6}"));
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let instances = corpus();
    let mut c: Vec<Criterion> = (0..10).map(|_| Criterion::default()).collect();
    let max_vertices = instances.iter().map(|i| i.graph.num_vertices()).max().unwrap();
    let mut max_cycles = 0;
    let mut modes: BTreeMap<Mode, usize> = BTreeMap::new();
    let mut gap: BTreeMap<Mode, (usize, f64)> = BTreeMap::new();
    let mut brute_confirmed = 0;

    for inst in &instances {
        let name = inst.name.clone().unwrap_or_default();
        *modes.entry(inst.mode).or_default() += 1;
        let cycles = family_cycles(inst, RunOptions::default().budget).unwrap();
        max_cycles = max_cycles.max(cycles.len());
        let report = match run(inst, &RunOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                let is_guarantee = matches!(e, Error::GuaranteeViolated(_));
                c[if is_guarantee { 1 } else { 0 }].check(false, || format!("{name}: {e}"));
                continue;
            }
        };

        // 1
        let n = report.packing.len() as u64;
        c[0].check(report.guarantee && guarantee_by_squares(n, &report.lp_value), || {
            format!("{name}: {n} cycles for LP {}", report.lp_value)
        });
        c[0].check(pairwise_disjoint(&cycles, &report.packing, inst.mode), || format!("{name}: packing not disjoint"));

        // 2, 5, 6
        for t in traces(&report) {
            for it in &t.iterations {
                for step in &it.components {
                    let r = &step.chosen.ratio;
                    c[1].check(within_beta(r) && r.to_f64().unwrap() <= beta_f64() + 1e-9, || {
                        format!("{name}: chosen ratio {r}")
                    });
                    let a = &step.audit;
                    let l1 = Rational::from_integer((3 * a.one_sided).into());
                    c[4].check(a.one_sided_neighbour_mass <= l1, || {
                        format!("{name}: neighbour mass {} for {} one-sided", a.one_sided_neighbour_mass, a.one_sided)
                    });
                    c[4].check(a.min_neighbourhood_mass <= int(4), || format!("{name}: least mass {}", a.min_neighbourhood_mass));
                    c[4].check(a.integral_identity, || format!("{name}: threshold integral identity"));
                    c[5].checked += a.covers_checked;
                    c[5].failures.extend(a.cover_violations.iter().map(|v| format!("{name}: {v}")));
                    c[6].checked += 1;
                    c[6].failures.extend(a.bound_violations.iter().map(|v| format!("{name}: {v}")));
                }
            }
        }

        // 3
        c[2].check(report.structured.passes(), || format!("{name}: {:?}", report.structured));
        if let Some(u) = &report.uniform {
            c[2].check(u.structured.passes(), || format!("{name} uniform: {:?}", u.structured));
        }

        // 4
        let mut certs: Vec<_> = report.certificates.iter().collect();
        certs.extend(report.uniform.iter().flat_map(|u| u.certificates.iter()));
        for cert in &certs {
            c[3].check(cert.passes() && cert.within_size_bound(), || {
                format!(
                    "{name} on {:?}: {:?} {:?} {:?}",
                    cert.ids, cert.structured_violations, cert.good_violations, cert.certificate_violations
                )
            });
        }
        if let Some(o) = &report.oracle {
            for (cert, b) in report.certificates.iter().zip(&o.brute_mstar) {
                if let Some(b) = b {
                    brute_confirmed += 1;
                    c[3].check(*b <= cert.mstar.len(), || format!("{name}: exhaustive {b} > constructed {}", cert.mstar.len()));
                }
            }
        }

        // 7 and an independent pass over 3
        if inst.mode == Mode::Vertex {
            let g = Arc::new(inst.graph.clone());
            let (x, _, _) = laminar_lp(&g, &cycles, Mode::Vertex).unwrap();
            let (head, tail) = c.split_at_mut(6);
            replay_candidates(&g, &cycles, &x, &mut head[2], &mut tail[0], &name);
            if is_laminar(&g, &cycles).is_ok() && !cycles.is_empty() {
                let u = uniform_solution(&cycles, Mode::Vertex);
                replay_candidates(&g, &cycles, &u, &mut head[2], &mut tail[0], &format!("{name} uniform"));
            }
        }

        // 9
        check_reduction(inst, &cycles, &mut c[8]);
        if let Some(b) = &report.reduction {
            c[8].check(b.mismatches.is_empty(), || format!("{name}: mismatches {:?}", b.mismatches));
            c[8].check(b.vertex_pipeline_packing == report.packing.len(), || {
                format!("{name}: edge pipeline {} vs vertex pipeline {}", report.packing.len(), b.vertex_pipeline_packing)
            });
        }

        // 10
        if let Some(o) = &report.oracle {
            c[9].check(o.sandwich, || format!("{name}: |P|={} nu={} LP={} tau={}", n, o.nu, report.lp_value, o.tau));
            c[9].check(o.nu > 0 || o.tau == 0, || format!("{name}: tau/nu infinite"));
            if o.nu > 0 {
                let e = gap.entry(inst.mode).or_insert((0, 1.0));
                e.0 += 1;
                e.1 = e.1.max(o.tau as f64 / o.nu as f64);
            }
        }
    }

    redundant_nest_weights(&mut c[2]);
    beta_checks(&mut c[7]);
    c[3].notes.push(format!("{brute_confirmed} exhaustive certificate checks"));
    c[3].check(brute_confirmed > 0, || "no micro-instance certificate was checked exhaustively".into());
    for mode in [Mode::Vertex, Mode::Edge] {
        c[0].check(modes.get(&mode).copied().unwrap_or(0) > 0, || format!("no {mode} instance"));
        let (k, worst) = gap.get(&mode).copied().unwrap_or((0, f64::NAN));
        c[9].check(k > 0 && worst.is_finite(), || format!("no {mode} micro-instance"));
        c[9].notes.push(format!("{mode}: {k} micro-instances, max tau/nu = {worst:.3}"));
    }

    println!(
        "corpus: {} instances, max {} vertices, max {} cycles, {:?}",
        instances.len(),
        max_vertices,
        max_cycles,
        modes
    );
    assert!(instances.len() >= 200 && max_vertices <= 60 && max_cycles <= 200);
    let mut failed = Vec::new();
    for (k, (crit, title)) in c.iter().zip(TITLES).enumerate() {
        let verdict = if crit.failures.is_empty() { "PASS" } else { "FAIL" };
        let notes = if crit.notes.is_empty() { String::new() } else { format!("; {}", crit.notes.join("; ")) };
        println!("{verdict} criterion {:>2}: {title} ({} checks{notes})", k + 1, crit.checked);
        for f in crit.failures.iter().take(5) {
            println!("      {f}");
        }
        if !crit.failures.is_empty() {
            failed.push(k + 1);
        }
    }
    println!("elapsed {:.1}s", start.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
