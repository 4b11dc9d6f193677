use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cyclepack::error::Error;
use cyclepack::harness::corpus::{corpus, medium_profile};
use cyclepack::harness::generate::{
    chain, diagonal_grid, disjoint, enumerated, redundant_nest, star_split, peeling, flower, gen_nested, k4_graph, theta,
    NestProfile,
};
use cyclepack::harness::pipeline::{family_cycles, laminar_lp, uniform_solution};
use cyclepack::harness::{brute_max_packing, brute_min_transversal, run, FamilySpec, Instance, Mode, RunOptions};
use cyclepack::lp::make_structured;
use cyclepack::planar::{classify_family, is_laminar};
use cyclepack::rational;
use cyclepack::reduction::edge_to_vertex;
use cyclepack::rounding::AlgebraicBound;
use cyclepack::structure::certify;

#[derive(Parser)]
#[command(name = "cyclepack", version, about = "Disjoint cycle packing by greedy LP rounding on planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Gen {
        #[arg(long, value_enum, default_value_t = Generator::Nested)]
        generator: Generator,
        /// Petal count, chain length, grid side, depending on the generator.
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the packing LP exactly and make its support laminar.
    Solve(Common),
    /// Full pipeline: LP, structured transform, certificates, rounding, checks.
    Round(Common),
    /// Good structured incidence sets and vertex certificates per component.
    Certify(Common),
    /// Reduce an edge-disjoint instance to a vertex-disjoint one.
    Reduce(Common),
    /// Exhaustive packing and transversal optima.
    Oracle(Common),
    /// Run a batch of instances and print a table of ratios.
    Bench {
        /// Random nested instances instead of the fixed corpus.
        #[arg(long)]
        count: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Instance JSON file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search budget for enumeration and exhaustive oracles.
    #[arg(long, default_value_t = 200_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the instance's mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vertex,
    Edge,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Vertex => Mode::Vertex,
            ModeArg::Edge => Mode::Edge,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Nested,
    NestedMedium,
    Theta,
    RedundantNest,
    StarSplit,
    Peeling,
    Flower,
    Chain,
    Disjoint,
    K4,
    All,
    Odd,
    Dcycles,
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuaranteeViolated(_)
            | Error::StructureInvariantViolated(_)
            | Error::FeasibilityViolation(_)
            | Error::CheckerFailed(_)
            | Error::SearchExhausted => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(common: &Common) -> Result<Instance, Failure> {
    let path = common.instance.as_ref().ok_or_else(|| Failure::Input("--instance is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut inst = Instance::parse(&text)?;
    if let Some(m) = common.mode {
        inst.mode = m.into();
    }
    Ok(inst)
}

fn emit(common: &Common, text: &str) -> Outcome {
    match &common.out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        // a closed pipe downstream is not an error worth reporting
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn emit_json(common: &Common, v: &Value) -> Outcome {
    emit(common, &serde_json::to_string_pretty(v).expect("json"))
}

fn generate(generator: Generator, size: usize, common: &Common) -> Instance {
    let seed = common.seed;
    let mut inst = match generator {
        Generator::Nested => gen_nested(NestProfile::small(), seed),
        Generator::NestedMedium => gen_nested(medium_profile(), seed),
        Generator::Theta => theta(),
        Generator::RedundantNest => redundant_nest(),
        Generator::StarSplit => star_split(),
        Generator::Peeling => peeling(),
        Generator::Flower => flower(size),
        Generator::Chain => chain(size),
        Generator::Disjoint => disjoint(size),
        Generator::K4 => Instance::with_family(k4_graph(), FamilySpec::All { length_cap: 4 }, Mode::Vertex).named("k4", "k4", 0),
        Generator::All => {
            let spec = FamilySpec::All { length_cap: size * size };
            enumerated(diagonal_grid(size, size, 50, seed), spec, Mode::Vertex, &format!("all-{size}-{seed}"), seed)
        }
        Generator::Odd => {
            let spec = FamilySpec::Odd { length_cap: size * size };
            enumerated(diagonal_grid(size, size, 50, seed), spec, Mode::Vertex, &format!("odd-{size}-{seed}"), seed)
        }
        Generator::Dcycles => {
            let grid = diagonal_grid(size, size, 0, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut demand = sample(&mut rng, grid.graph.num_edges(), 2).into_vec();
            demand.sort_unstable();
            let spec = FamilySpec::DCycles { demand, length_cap: size * size };
            enumerated(grid, spec, Mode::Vertex, &format!("dcycles-{size}-{seed}"), seed)
        }
    };
    if let Some(m) = common.mode {
        inst.mode = m.into();
    }
    inst
}

fn solve(common: &Common) -> Outcome {
    let inst = load(common)?;
    let g = Arc::new(inst.graph.clone());
    let cycles = family_cycles(&inst, common.budget)?;
    let (x, value, steps) = laminar_lp(&g, &cycles, inst.mode)?;
    emit_json(
        common,
        &json!({
            "mode": inst.mode,
            "cycles": cycles.len(),
            "lp_value": rational::format(&value),
            "uncross_steps": steps,
            "support": x.support(),
            "weights": x.weights.iter().map(rational::format).collect::<Vec<_>>(),
        }),
    )
}

fn round(common: &Common) -> Outcome {
    let inst = load(common)?;
    let report = run(&inst, &RunOptions { budget: common.budget, ..RunOptions::default() })?;
    emit(common, &report.to_json())?;
    if report.passes() && report.guarantee {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{} violations", report.violations.len())))
    }
}

/// Certificates for each component of the family, after moving the weight of
/// redundant cycles away with the structured transform of uniform weights.
fn certify_cmd(common: &Common) -> Outcome {
    let inst = load(common)?;
    let g = Arc::new(inst.graph.clone());
    let cycles = family_cycles(&inst, common.budget)?;
    if let Err((a, b)) = is_laminar(&g, &cycles) {
        return Err(Error::NotLaminar(a, b).into());
    }
    let x = uniform_solution(&cycles, Mode::Vertex);
    let (y, shifts) = make_structured(&g, &cycles, &x)?;
    let kept = y.support();
    let fam = classify_family(&g, &kept.iter().map(|&i| cycles[i].clone()).collect::<Vec<_>>())?;
    let mut certs = Vec::new();
    let mut ok = true;
    for members in fam.components() {
        let mut cert = certify(&fam.subfamily(&members)?)?;
        cert.ids = cert.ids.iter().map(|&p| kept[p]).collect();
        ok &= cert.passes() && cert.within_size_bound();
        certs.push(cert);
    }
    let dropped: Vec<usize> = shifts.iter().map(|s| s.from).collect();
    emit_json(common, &json!({ "dropped_redundant": dropped, "certificates": certs, "passes": ok }))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation("certificate check failed".into()))
    }
}

fn reduce(common: &Common) -> Outcome {
    let inst = load(common)?;
    let cycles = family_cycles(&inst, common.budget)?;
    let map = edge_to_vertex(&classify_family(&inst.graph, &cycles)?)?;
    let mismatches = map.disjointness_mismatches();
    let mut target = Instance::explicit((*map.target_graph).clone(), map.target.clone(), Mode::Vertex);
    target.seed = inst.seed;
    target.name = inst.name.map(|n| format!("{n}-reduced"));
    target.generator = Some("reduce".into());
    emit(common, &target.to_json_string())?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("disjointness differs on {mismatches:?}")))
    }
}

fn oracle(common: &Common) -> Outcome {
    let inst = load(common)?;
    let cycles = family_cycles(&inst, common.budget)?;
    let (nu, nu_witness) = brute_max_packing(&cycles, inst.mode)?;
    let (tau, tau_witness) = brute_min_transversal(&cycles, inst.mode, common.budget)?;
    emit_json(
        common,
        &json!({ "mode": inst.mode, "cycles": cycles.len(), "nu": nu, "tau": tau, "nu_witness": nu_witness, "tau_witness": tau_witness }),
    )
}

fn bench(count: Option<u64>, common: &Common) -> Outcome {
    let instances: Vec<Instance> = match count {
        None => corpus(),
        Some(n) => (common.seed..common.seed + n)
            .flat_map(|s| {
                let inst = gen_nested(medium_profile(), s);
                let mut e = inst.clone();
                e.mode = Mode::Edge;
                [inst, e]
            })
            .collect(),
    };
    let opts = RunOptions { budget: common.budget, ..RunOptions::default() };
    let mut lines = vec![format!("{:<24} {:<6} {:>6} {:>10} {:>5} {:>8} {:>4} {:>4}  verdict", "instance", "mode", "cycles", "lp", "|P|", "lp/|P|", "nu", "tau")];
    let (mut worst, mut failed) = (0f64, 0usize);
    for inst in &instances {
        let label = inst.name.clone().unwrap_or_else(|| format!("seed-{}", inst.seed));
        match run(inst, &opts) {
            Ok(r) => {
                let lp = rational::to_f64(&r.lp_value);
                let ratio = if r.packing.is_empty() { 0.0 } else { lp / r.packing.len() as f64 };
                worst = worst.max(ratio);
                let ok = r.passes() && r.guarantee;
                failed += usize::from(!ok);
                let (nu, tau) = r.oracle.as_ref().map_or(("-".into(), "-".into()), |o| (o.nu.to_string(), o.tau.to_string()));
                lines.push(format!(
                    "{label:<24} {:<6} {:>6} {:>10} {:>5} {ratio:>8.3} {nu:>4} {tau:>4}  {}",
                    r.mode.to_string(),
                    r.cycles,
                    rational::format(&r.lp_value),
                    r.packing.len(),
                    if ok { "pass" } else { "FAIL" }
                ));
            }
            Err(e) => {
                failed += 1;
                lines.push(format!("{label:<24} error: {e}"));
            }
        }
    }
    lines.push(format!(
        "{} runs, {failed} failed, worst lp/|P| = {worst:.4} (bound {:.4})",
        instances.len(),
        AlgebraicBound::beta().to_f64()
    ));
    emit(common, &lines.join("\n"))?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{failed} runs failed")))
    }
}

fn main() -> ExitCode {
    // usage errors are input errors, not violations
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Gen { generator, size, common } => {
            let inst = generate(*generator, *size, common);
            emit(common, &inst.to_json_string())
        }
        Command::Solve(c) => solve(c),
        Command::Round(c) => round(c),
        Command::Certify(c) => certify_cmd(c),
        Command::Reduce(c) => reduce(c),
        Command::Oracle(c) => oracle(c),
        Command::Bench { count, common } => bench(*count, common),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(2)
        }
    }
}
