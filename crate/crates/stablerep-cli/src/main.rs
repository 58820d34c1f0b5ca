//! `stablerep` — command-line front end for the stable-representation
//! library: algebra inspection, degree-zero class groups, Waldhausen-axiom
//! suites, and localization-tail exactness reports.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 input
//! error, 3 a resource cap was exceeded.  With `--json` each command prints a
//! versioned envelope (`schema: 1`) that is byte-identical across runs with
//! identical inputs; the default human output is rendered from that JSON.

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use stablerep::algebra::{
    jacobson_radical, quotient_by_ideal, subalgebra_generated, unit_group, Algebra, Ideal,
};
use stablerep::decomp::krull_schmidt;
use stablerep::error::Error;
use stablerep::kzero::{
    g0, gst0, k0, les_tail_check, rep_split, stabrep_split, tower_check,
    AbelianGroupPresentation, ExactnessReport,
};
use stablerep::linalg::fp::echelonize;
use stablerep::modules::Module;
use stablerep::report::CheckReport;
use stablerep::stable::{is_injective, simples};
use stablerep::textio;
use stablerep::waldhausen::{check_axioms, check_quasi_frobenius, WaldhausenSpec};
use stablerep::Result;

use input::Workspace;
use output::Envelope;

#[derive(Parser)]
#[command(
    name = "stablerep",
    version,
    about = "Exact stable representation invariants of finite-dimensional algebras over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra inspection
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Degree-zero class groups of module categories
    Kgroups(KgroupsArgs),
    /// Cofibration/weak-equivalence structure checks
    #[command(subcommand)]
    Waldhausen(WaldCmd),
    /// Localization-tail exactness reports
    #[command(subcommand)]
    Les(LesCmd),
    /// Multi-stage tower reports
    #[command(subcommand)]
    Tower(TowerCmd),
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Radical series, simples, projectives, quasi-Frobenius verdict, units
    Info(AlgInfoArgs),
}

#[derive(Subcommand)]
enum WaldCmd {
    /// Run the structural axiom suite over a finite universe
    Check(WaldCheckArgs),
}

#[derive(Subcommand)]
enum LesCmd {
    /// Check the degree-zero tail of a subalgebra/quotient localization
    Check(LesCheckArgs),
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Check every stage of a tower file
    Check(TowerCheckArgs),
}

#[derive(Args)]
struct AlgInfoArgs {
    /// Algebra reference: preset:<name>:<args> or a file path
    algebra: String,
    /// Enumeration cap for the unit-group computation
    #[arg(long, default_value_t = 1 << 20)]
    cap: u64,
    /// Emit the JSON envelope instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Theory {
    K0,
    G0,
    Rep,
    Stabrep,
    Gst0,
}

impl Theory {
    fn name(self) -> &'static str {
        match self {
            Theory::K0 => "k0",
            Theory::G0 => "g0",
            Theory::Rep => "rep",
            Theory::Stabrep => "stabrep",
            Theory::Gst0 => "gst0",
        }
    }

    fn from_name(name: &str) -> Result<Theory> {
        match name {
            "k0" => Ok(Theory::K0),
            "g0" => Ok(Theory::G0),
            "rep" => Ok(Theory::Rep),
            "stabrep" => Ok(Theory::Stabrep),
            "gst0" => Ok(Theory::Gst0),
            other => Err(Error::Input(format!("unknown theory `{other}`"))),
        }
    }
}

#[derive(Args)]
struct KgroupsArgs {
    /// Algebra reference: preset:<name>:<args> or a file path
    algebra: String,
    /// Which group to present
    #[arg(long, value_enum)]
    theory: Theory,
    /// Dimension bound for the indecomposable census (rep/stabrep/gst0)
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Emit the JSON envelope instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WaldCheckArgs {
    /// Algebra reference (required unless --verify-witness is given)
    algebra: Option<String>,
    /// Cofibration class descriptor (e.g. `all`, `pullback phi.morphism all`)
    #[arg(long, default_value = "all")]
    cof: String,
    /// Weak-equivalence class descriptor
    #[arg(long, default_value = "all")]
    we: String,
    /// Universe: `census`, `census:<max_dim>`, or a module-list file
    #[arg(long, default_value = "census")]
    universe: String,
    /// Default census dimension bound
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Diagram budget per axiom before sampling kicks in
    #[arg(long, default_value_t = 4096)]
    budget: u64,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Census universe cap
    #[arg(long, default_value_t = 1 << 21)]
    cap: u64,
    /// Emit the JSON envelope instead of the table
    #[arg(long)]
    json: bool,
    /// Re-run a recorded JSON report and confirm its outcomes reproduce
    #[arg(long, value_name = "FILE")]
    verify_witness: Option<String>,
}

#[derive(Args)]
struct LesCheckArgs {
    /// Middle-algebra reference (required unless --verify-witness is given)
    algebra: Option<String>,
    /// Subalgebra generators: `;`-separated coordinate vectors
    #[arg(long)]
    sub: Option<String>,
    /// Quotient-ideal generators: `;`-separated coordinate vectors
    #[arg(long)]
    ideal: Option<String>,
    /// Dimension bound for the indecomposable censuses
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Hom-scan budget for relation discovery
    #[arg(long, default_value_t = 4096)]
    budget: u64,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON envelope instead of the table
    #[arg(long)]
    json: bool,
    /// Re-run a recorded JSON report and confirm its outcomes reproduce
    #[arg(long, value_name = "FILE")]
    verify_witness: Option<String>,
}

#[derive(Args)]
struct TowerCheckArgs {
    /// Tower file (required unless --verify-witness is given)
    file: Option<String>,
    /// Dimension bound for the indecomposable censuses
    #[arg(long, default_value_t = 4)]
    max_dim: usize,
    /// Hom-scan budget for relation discovery
    #[arg(long, default_value_t = 4096)]
    budget: u64,
    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON envelope instead of the table
    #[arg(long)]
    json: bool,
    /// Re-run a recorded JSON report and confirm its outcomes reproduce
    #[arg(long, value_name = "FILE")]
    verify_witness: Option<String>,
}

// ---------------------------------------------------------------------------
// Invocations (embedded in every envelope so reports are reproducible).

#[derive(Serialize, Deserialize)]
struct AlgInfoInvocation {
    algebra: String,
    cap: u64,
}

#[derive(Serialize, Deserialize)]
struct KgroupsInvocation {
    algebra: String,
    theory: String,
    max_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct WaldhausenInvocation {
    algebra: String,
    cof: String,
    we: String,
    universe: String,
    max_dim: usize,
    budget: u64,
    seed: u64,
    cap: u64,
}

#[derive(Serialize, Deserialize)]
struct LesInvocation {
    algebra: String,
    sub: String,
    ideal: String,
    max_dim: usize,
    budget: u64,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
struct TowerInvocation {
    file: String,
    max_dim: usize,
    budget: u64,
    seed: u64,
}

// ---------------------------------------------------------------------------
// Results.

#[derive(Serialize)]
struct SimpleInfo {
    dim: usize,
}

#[derive(Serialize)]
struct ProjectiveInfo {
    label: String,
    dim: usize,
    multiplicity: usize,
    injective: bool,
}

#[derive(Serialize)]
struct UnitGroupInfo {
    order: u64,
    factors: Vec<u64>,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct AlgInfoResult {
    reference: String,
    p: u64,
    dim: usize,
    commutative: bool,
    labels: Vec<String>,
    radical_series_dims: Vec<usize>,
    simples: Vec<SimpleInfo>,
    projectives: Vec<ProjectiveInfo>,
    quasi_frobenius: bool,
    unit_group: Option<UnitGroupInfo>,
}

#[derive(Serialize)]
struct KgroupsResult {
    reference: String,
    theory: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_dim: Option<usize>,
    group: AbelianGroupPresentation,
}

#[derive(Serialize)]
struct WaldhausenResult {
    reference: String,
    cof: String,
    we: String,
    universe_size: usize,
    all_passed: bool,
    reports: Vec<CheckReport>,
}

#[derive(Serialize)]
struct LesResult {
    passed: bool,
    report: ExactnessReport,
}

#[derive(Serialize)]
struct TowerStageResult {
    algebra: String,
    passed: bool,
    report: ExactnessReport,
}

#[derive(Serialize)]
struct TowerResult {
    reference: String,
    all_passed: bool,
    stages: Vec<TowerStageResult>,
}

// ---------------------------------------------------------------------------
// Command cores: invocation in, result out.  The verify-witness mode re-runs
// these from a recorded invocation and compares the serialized results.

fn cwd() -> PathBuf {
    PathBuf::from(".")
}

fn alg_info_core(inv: &AlgInfoInvocation) -> Result<AlgInfoResult> {
    let ws = Workspace::new();
    let alg = ws.algebra(&inv.algebra, &cwd())?;

    let rad = jacobson_radical(&alg);
    let mut radical_series_dims = Vec::new();
    let mut power = rad.basis.clone();
    while !power.is_empty() && radical_series_dims.len() <= alg.dim {
        radical_series_dims.push(power.len());
        let mut next = Vec::new();
        for a in &power {
            for b in &rad.basis {
                next.push(alg.mul_elems(a, b));
            }
        }
        power = echelonize(alg.p, &next);
    }

    let simple_mods = simples(&alg)?;
    let dec = krull_schmidt(&Module::regular(&alg), 1 << 20)?;
    let mut projectives = Vec::new();
    for (i, (m, mult)) in dec.summands.iter().enumerate() {
        projectives.push(ProjectiveInfo {
            label: format!("P{i}"),
            dim: m.dim,
            multiplicity: *mult,
            injective: is_injective(m)?,
        });
    }
    let quasi_frobenius = check_quasi_frobenius(&alg)?;
    let unit_group_info = if alg.is_commutative() {
        let g = unit_group(&alg, inv.cap)?;
        Some(UnitGroupInfo { order: g.order, factors: g.factors, generators: g.generator_labels })
    } else {
        None
    };

    Ok(AlgInfoResult {
        reference: inv.algebra.clone(),
        p: alg.p,
        dim: alg.dim,
        commutative: alg.is_commutative(),
        labels: alg.labels.clone(),
        radical_series_dims,
        simples: simple_mods.iter().map(|s| SimpleInfo { dim: s.dim }).collect(),
        projectives,
        quasi_frobenius,
        unit_group: unit_group_info,
    })
}

fn kgroups_core(inv: &KgroupsInvocation) -> Result<KgroupsResult> {
    let ws = Workspace::new();
    let alg = ws.algebra(&inv.algebra, &cwd())?;
    let theory = Theory::from_name(&inv.theory)?;
    let (classes, max_dim) = match theory {
        Theory::K0 => (k0(&alg)?, None),
        Theory::G0 => (g0(&alg)?, None),
        Theory::Rep => (rep_split(&alg, inv.max_dim)?, Some(inv.max_dim)),
        Theory::Stabrep => (stabrep_split(&alg, inv.max_dim)?, Some(inv.max_dim)),
        Theory::Gst0 => (gst0(&alg, inv.max_dim)?, Some(inv.max_dim)),
    };
    Ok(KgroupsResult {
        reference: inv.algebra.clone(),
        theory: inv.theory.clone(),
        max_dim,
        group: classes.group,
    })
}

fn waldhausen_core(inv: &WaldhausenInvocation) -> Result<(WaldhausenResult, bool)> {
    let ws = Workspace::new();
    let base = cwd();
    let alg = ws.algebra(&inv.algebra, &base)?;
    let cof = input::parse_class(&ws, &inv.cof, &alg, &base)?;
    let we = input::parse_class(&ws, &inv.we, &alg, &base)?;
    let universe =
        input::parse_universe(&ws, &inv.universe, &alg, inv.max_dim, inv.cap as u128, &base)?;
    let spec = WaldhausenSpec::new(alg, cof, we)
        .map_err(|e| Error::Input(format!("invalid structure: {e}")))?;
    let reports = check_axioms(&spec, &universe, inv.budget, inv.seed)?;
    let all_passed = reports.iter().all(|r| r.passed);
    Ok((
        WaldhausenResult {
            reference: inv.algebra.clone(),
            cof: inv.cof.clone(),
            we: inv.we.clone(),
            universe_size: universe.len(),
            all_passed,
            reports,
        },
        all_passed,
    ))
}

/// Build the subalgebra embedding and quotient projection a stage describes.
fn stage_maps(
    alg: &Arc<Algebra>,
    sub_gens: &[Vec<u64>],
    ideal_gens: &[Vec<u64>],
) -> Result<(stablerep::algebra::AlgebraMorphism, stablerep::algebra::AlgebraMorphism)> {
    for v in sub_gens.iter().chain(ideal_gens.iter()) {
        if v.len() != alg.dim {
            return Err(Error::Input(format!(
                "generator width {} does not match the algebra dimension {}",
                v.len(),
                alg.dim
            )));
        }
    }
    let (_, iota) = subalgebra_generated(alg, sub_gens)
        .map_err(|e| Error::Input(format!("subalgebra construction failed: {e}")))?;
    let ideal = Ideal::from_generators(alg, ideal_gens);
    let (_, phi) = quotient_by_ideal(alg, &ideal)
        .map_err(|e| Error::Input(format!("quotient construction failed: {e}")))?;
    Ok((iota, phi))
}

fn les_passed(report: &ExactnessReport) -> bool {
    report.hypotheses_pass
        && report.exact_at_b.as_ref().map_or(false, |c| c.passed)
        && report.surjective_at_c.as_ref().map_or(false, |c| c.passed)
}

fn les_core(inv: &LesInvocation) -> Result<(LesResult, bool)> {
    let ws = Workspace::new();
    let alg = ws.algebra(&inv.algebra, &cwd())?;
    let sub_gens = input::parse_vectors("--sub", &inv.sub, alg.dim)?;
    let ideal_gens = input::parse_vectors("--ideal", &inv.ideal, alg.dim)?;
    let (iota, phi) = stage_maps(&alg, &sub_gens, &ideal_gens)?;
    let report = les_tail_check(&iota, &phi, inv.max_dim, inv.budget, inv.seed)?;
    let passed = les_passed(&report);
    Ok((LesResult { passed, report }, passed))
}

fn tower_core(inv: &TowerInvocation) -> Result<(TowerResult, bool)> {
    let ws = Workspace::new();
    let path = Path::new(&inv.file);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read `{}`: {e}", path.display())))?;
    let stage_specs = textio::parse_tower(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(cwd);
    let mut maps = Vec::with_capacity(stage_specs.len());
    for s in &stage_specs {
        let alg = ws.algebra(&s.algebra, &base)?;
        maps.push(stage_maps(&alg, &s.sub_generators, &s.ideal_generators)?);
    }
    let reports = tower_check(&maps, inv.max_dim, inv.budget, inv.seed)?;
    let mut stages = Vec::with_capacity(reports.len());
    let mut all_passed = true;
    for (s, report) in stage_specs.iter().zip(reports) {
        let passed = les_passed(&report);
        all_passed &= passed;
        stages.push(TowerStageResult { algebra: s.algebra.clone(), passed, report });
    }
    Ok((TowerResult { reference: inv.file.clone(), all_passed, stages }, all_passed))
}

// ---------------------------------------------------------------------------
// Emission and witness verification.

fn emit<I: Serialize, R: Serialize>(
    json: bool,
    command: &str,
    invocation: I,
    result: R,
    render: fn(&Value),
) -> Result<()> {
    let envelope = Envelope::new(command, invocation, result);
    let text = envelope.to_json()?;
    if json {
        print!("{text}");
    } else {
        let value: Value = serde_json::from_str(&text)?;
        render(&value);
    }
    Ok(())
}

/// Re-run a recorded report from its embedded invocation and compare the
/// serialized results; failures must reproduce byte-identically.
fn verify_witness<I, F>(file: &str, expected_command: &str, rerun: F) -> Result<i32>
where
    I: DeserializeOwned,
    F: FnOnce(&I) -> Result<Value>,
{
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Input(format!("cannot read `{file}`: {e}")))?;
    let envelope: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("`{file}` is not a JSON report: {e}")))?;
    let command = envelope.get("command").and_then(Value::as_str).unwrap_or("");
    if command != expected_command {
        return Err(Error::Input(format!(
            "`{file}` records a `{command}` run, not `{expected_command}`"
        )));
    }
    let invocation: I = serde_json::from_value(
        envelope.get("invocation").cloned().unwrap_or(Value::Null),
    )
    .map_err(|e| Error::Input(format!("`{file}` has an unreadable invocation: {e}")))?;
    let recorded = envelope.get("result").cloned().unwrap_or(Value::Null);
    let fresh = rerun(&invocation)?;
    if serde_json::to_string(&recorded)? == serde_json::to_string(&fresh)? {
        println!("witness verification: recorded outcomes reproduced");
        Ok(0)
    } else {
        println!("witness verification: rerun DIFFERS from the recorded report");
        Ok(1)
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::Input(format!("{what} is required")))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Cmd::Alg(AlgCmd::Info(args)) => {
            let inv = AlgInfoInvocation { algebra: args.algebra, cap: args.cap };
            let result = alg_info_core(&inv)?;
            emit(args.json, "alg info", inv, result, output::render_alg_info)?;
            Ok(0)
        }
        Cmd::Kgroups(args) => {
            let inv = KgroupsInvocation {
                algebra: args.algebra,
                theory: args.theory.name().to_string(),
                max_dim: args.max_dim,
            };
            let result = kgroups_core(&inv)?;
            emit(args.json, "kgroups", inv, result, output::render_kgroups)?;
            Ok(0)
        }
        Cmd::Waldhausen(WaldCmd::Check(args)) => {
            if let Some(file) = &args.verify_witness {
                return verify_witness(file, "waldhausen check", |inv: &WaldhausenInvocation| {
                    Ok(serde_json::to_value(waldhausen_core(inv)?.0)?)
                });
            }
            let inv = WaldhausenInvocation {
                algebra: require(args.algebra, "an algebra reference")?,
                cof: args.cof,
                we: args.we,
                universe: args.universe,
                max_dim: args.max_dim,
                budget: args.budget,
                seed: args.seed,
                cap: args.cap,
            };
            let (result, passed) = waldhausen_core(&inv)?;
            emit(args.json, "waldhausen check", inv, result, output::render_waldhausen)?;
            Ok(if passed { 0 } else { 1 })
        }
        Cmd::Les(LesCmd::Check(args)) => {
            if let Some(file) = &args.verify_witness {
                return verify_witness(file, "les check", |inv: &LesInvocation| {
                    Ok(serde_json::to_value(les_core(inv)?.0)?)
                });
            }
            let inv = LesInvocation {
                algebra: require(args.algebra, "an algebra reference")?,
                sub: require(args.sub, "--sub")?,
                ideal: require(args.ideal, "--ideal")?,
                max_dim: args.max_dim,
                budget: args.budget,
                seed: args.seed,
            };
            let (result, passed) = les_core(&inv)?;
            emit(args.json, "les check", inv, result, output::render_les)?;
            Ok(if passed { 0 } else { 1 })
        }
        Cmd::Tower(TowerCmd::Check(args)) => {
            if let Some(file) = &args.verify_witness {
                return verify_witness(file, "tower check", |inv: &TowerInvocation| {
                    Ok(serde_json::to_value(tower_core(inv)?.0)?)
                });
            }
            let inv = TowerInvocation {
                file: require(args.file, "a tower file")?,
                max_dim: args.max_dim,
                budget: args.budget,
                seed: args.seed,
            };
            let (result, passed) = tower_core(&inv)?;
            emit(args.json, "tower check", inv, result, output::render_tower)?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
