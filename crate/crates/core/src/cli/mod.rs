//! The `nearortho` command line.
//!
//! Every command produces a [`Report`]. Exit codes: 0 when every requested
//! check passes, 1 when a check fails, 2 for usage and parse errors, 3 when
//! a budget is exceeded.

mod report;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::construct::{
    self, check_alpha, check_beta, check_transfer, exhaustive_search_max, ramsey_upper_bound, sample_construction,
    ConstructError, ConstructionParams, Mode, Property,
};
use crate::container::{
    check_process_invariants, check_spreadness, run_container_process, verify_container_output, ContainerError,
    SpreadParams,
};
use crate::exec::{configure_threads, Exec};
use crate::formats::{self, FormatError};
use crate::gf::{FieldSpec, GfError};
use crate::graph::{build_ortho_graph, spectral_check, GraphError, OrthoGraph, VertexPolicy, DEFAULT_VERTEX_BUDGET};
use crate::rational::{self, Rational};
use crate::underpin::{
    adversarial_pair, explicit_family, family_size_bound, sample_crossing_free_tuple, verify_covering, SpreadPolicy,
    UnderpinConfig, UnderpinError,
};

pub use report::{OutputFormat, Report};

/// Environment variable naming the default directory for generated files.
pub const OUT_DIR_ENV: &str = "NEARORTHO_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "nearortho", version, about = "Containers, orthogonality graphs and nearly-orthogonal sets over GF(p)")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; more than one enables the parallel strategy.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for randomised commands; generated and recorded when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build orthogonality graphs and check their spectra.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Run the container process on a hypergraph file.
    #[command(subcommand)]
    Container(ContainerCommand),
    /// Check the covering property of underpin sets.
    #[command(subcommand)]
    Underpin(UnderpinCommand),
    /// Sample tensor-product candidate sets.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Brute-force the alpha or beta property of a vector-set file.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Branch-and-bound search for large valid sets.
    Search(SearchArgs),
    /// Print the binomial upper bound C(d + k, k).
    Ramsey(RamseyArgs),
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    Build(GraphBuildArgs),
    Spectrum(GraphSpectrumArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    AllNonzero,
    NonSelfOrthogonal,
}

impl From<PolicyArg> for VertexPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::AllNonzero => VertexPolicy::AllNonzero,
            PolicyArg::NonSelfOrthogonal => VertexPolicy::NonSelfOrthogonal,
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphSpec {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum, default_value_t = PolicyArg::AllNonzero)]
    pub policy: PolicyArg,
    /// Largest vertex count to build.
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct GraphBuildArgs {
    #[command(flatten)]
    pub spec: GraphSpec,
    /// Graph file to write; defaults to a name under the output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphSpectrumArgs {
    /// Graph file; alternatively give --p and --t.
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub spec: GraphSpec,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum ContainerCommand {
    /// Run the process and print the fingerprint and container.
    Run(ContainerArgs),
    /// Run the process and check its guarantees and invariants.
    Verify(ContainerArgs),
}

#[derive(Debug, Args)]
pub struct ContainerArgs {
    /// Hypergraph file.
    pub file: PathBuf,
    /// Independent tuple, parts separated by `;`, members by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    /// Comma-separated p_i; defaults to 1/|V_i|.
    #[arg(long)]
    pub p: Option<String>,
    /// Spreadness constant; defaults to the minimal feasible value.
    #[arg(long)]
    pub k: Option<String>,
    /// Number of random sub-tuples to re-run for reconstruction.
    #[arg(long)]
    pub reconstruct: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum UnderpinCommand {
    Verify(UnderpinArgs),
}

#[derive(Debug, Args)]
pub struct UnderpinArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::AllNonzero)]
    pub policy: PolicyArg,
    /// Random maximal crossing-free tuples to check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Extra (independent set, non-neighbourhood) pairs; needs ell = 2.
    #[arg(long, default_value_t = 0)]
    pub adversarial: usize,
    /// Density constant c; defaults to min(1/2, D/n).
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long, default_value_t = crate::underpin::DEFAULT_C_PRIME)]
    pub c_prime: f64,
    #[arg(long)]
    pub c_final: Option<f64>,
    /// Small-set threshold; defaults to ceil(3 log2 n).
    #[arg(long)]
    pub tau: Option<usize>,
    /// Raise K to the minimal feasible value when c^(-l^2) is too small.
    #[arg(long)]
    pub adaptive: bool,
    /// Enumerate every crossing-free pair (n <= 10, ell = 2).
    #[arg(long)]
    pub explicit: bool,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    Sample(ConstructArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub k: usize,
    /// Sample count; defaults to floor(p^(mt/(4 ell))).
    #[arg(long)]
    pub r: Option<u64>,
    /// Zero-pad vectors to this dimension.
    #[arg(long)]
    pub pad: Option<usize>,
    /// Vector-set file to write; a `.meta.json` sidecar is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = construct::DEFAULT_COORDINATE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Beta(VerifyArgs),
    Alpha(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Sampled => Mode::Sampled,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Vector-set file.
    pub file: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Largest tuple count an exhaustive check may visit.
    #[arg(long, default_value_t = construct::DEFAULT_EXHAUSTIVE_BUDGET)]
    pub budget: u64,
    /// Tuples drawn in sampled mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PropertyArg {
    Alpha,
    Beta,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = PropertyArg::Alpha)]
    pub property: PropertyArg,
    /// Node budget for the search.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Check(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Field(f) => f.into(),
            GraphError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            GraphError::NonConvergence { .. } => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ContainerError> for CliError {
    fn from(e: ContainerError) -> Self {
        match e {
            ContainerError::InvalidHypergraph(_) | ContainerError::InvalidMeasure(_) | ContainerError::InvalidParams(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<UnderpinError> for CliError {
    fn from(e: UnderpinError) -> Self {
        match e {
            UnderpinError::Graph(g) => g.into(),
            UnderpinError::InvalidConfig(_) | UnderpinError::Arity { .. } => CliError::Usage(e.to_string()),
            UnderpinError::RoundCap { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Field(f) => f.into(),
            ConstructError::Budget { .. } => CliError::Budget(e.to_string()),
            ConstructError::SelfOrthogonal { .. } => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn default_path(name: String) -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
        .join(name)
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, CliError> {
    rational::parse(s).ok_or_else(|| CliError::Usage(format!("bad {what} `{s}`")))
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report values serialise")
}

struct Context {
    seed: Option<u64>,
    exec: Exec,
}

impl Context {
    /// The seed for a randomised command, generating one if none was given.
    fn seed(&mut self) -> u64 {
        *self.seed.get_or_insert_with(rand::random)
    }
}

/// A finished command: report contents plus whether its checks passed.
struct Outcome {
    params: Value,
    results: Value,
    table: Option<Vec<Value>>,
    passed: bool,
}

impl Outcome {
    fn new(params: Value, results: Value, passed: bool) -> Self {
        Self {
            params,
            results,
            table: None,
            passed,
        }
    }
}

fn graph_from_spec(spec: &GraphSpec) -> Result<OrthoGraph, CliError> {
    let (Some(p), Some(t)) = (spec.p, spec.t) else {
        return Err(CliError::Usage("give a graph file or both --p and --t".into()));
    };
    let field = FieldSpec::new(p)?;
    Ok(build_ortho_graph(field, t, spec.policy.into(), spec.budget)?)
}

fn cmd_graph_build(args: &GraphBuildArgs) -> Result<Outcome, CliError> {
    let g = graph_from_spec(&args.spec)?;
    let path = args.out.clone().unwrap_or_else(|| {
        default_path(format!("graph-p{}-t{}-{}.txt", g.field().p(), g.t(), g.policy().as_str()))
    });
    write_file(&path, &formats::write_graph(&g))?;
    let params = json!({
        "p": g.field().p(),
        "t": g.t(),
        "policy": g.policy().as_str(),
        "budget": args.spec.budget,
    });
    let mut degrees = std::collections::BTreeMap::new();
    for v in 0..g.n() {
        *degrees.entry(g.graph().degree(v)).or_insert(0usize) += 1;
    }
    let results = json!({
        "n": g.n(),
        "edges": g.graph().edge_count(),
        "nominal_degree": g.nominal_degree(),
        "degree_histogram": degrees,
        "file": path.display().to_string(),
    });
    Ok(Outcome::new(params, results, true))
}

fn cmd_graph_spectrum(args: &GraphSpectrumArgs) -> Result<Outcome, CliError> {
    let g = match &args.file {
        Some(path) => formats::parse_graph(&read_file(path)?)?,
        None => graph_from_spec(&args.spec)?,
    };
    let cert = spectral_check(&g, args.tol)?;
    let params = json!({
        "p": g.field().p(),
        "t": g.t(),
        "policy": g.policy().as_str(),
        "tol": args.tol,
    });
    let passed = cert.passes && cert.degrees_match_loop_removal;
    Ok(Outcome::new(params, to_json(&cert), passed))
}

fn cmd_container(args: &ContainerArgs, verify: bool, ctx: &mut Context) -> Result<Outcome, CliError> {
    let (h, nu) = formats::parse_hypergraph(&read_file(&args.file)?)?;
    let tuple = formats::parse_index_tuple(&args.u)?;
    let u: Vec<BTreeSet<u32>> = tuple
        .iter()
        .map(|part| part.iter().map(|&v| v as u32).collect())
        .collect();
    let p: Vec<Rational> = match &args.p {
        Some(list) => list
            .split(',')
            .map(|s| parse_rational(s, "p_i"))
            .collect::<Result<_, _>>()?,
        None => h
            .part_sizes()
            .iter()
            .map(|&size| rational::rat(1, size as i64))
            .collect(),
    };
    let spread = check_spreadness(&h, &nu, &p)?;
    let k = match &args.k {
        Some(k) => parse_rational(k, "K")?,
        None => spread.minimal_k.clone(),
    };
    let params_echo = json!({
        "file": args.file.display().to_string(),
        "u": args.u,
        "p": p.iter().map(rational::format).collect::<Vec<_>>(),
        "k": rational::format(&k),
    });
    let params = SpreadParams::new(p, k)?;
    let outcome = run_container_process(&h, &nu, &params, &u)?;
    let trials = args.reconstruct.unwrap_or(if verify { 5 } else { 0 });
    let mut results = json!({
        "minimal_k": rational::format(&spread.minimal_k),
        "fingerprint": outcome.fingerprint,
        "container": outcome.result,
    });
    let mut passed = true;
    if verify || trials > 0 {
        let seed = ctx.seed();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report = verify_container_output(&h, &nu, &params, &u, &outcome.fingerprint, &outcome.result, trials, &mut rng);
        passed &= if verify { report.passed() } else { report.reconstruction_ok };
        results["verification"] = to_json(&report);
    }
    if verify {
        let invariants = check_process_invariants(&outcome, &u);
        passed &= invariants.passed();
        results["invariants"] = to_json(&invariants);
    }
    Ok(Outcome::new(params_echo, results, passed))
}

fn cmd_underpin(args: &UnderpinArgs, ctx: &mut Context) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(args.p)?;
    let g = build_ortho_graph(field, args.t, args.policy.into(), DEFAULT_VERTEX_BUDGET)?;
    let expansion = g.expansion_params();
    let mut config = match &args.c {
        Some(c) => UnderpinConfig::new(args.ell, parse_rational(c, "c")?)?,
        None => UnderpinConfig::for_degree(args.ell, g.nominal_degree(), g.n())?,
    };
    config.c_prime = args.c_prime;
    config.c_final = args.c_final;
    config.small_set_threshold = args.tau;
    if args.adaptive {
        config.spread_policy = SpreadPolicy::Adaptive;
    }
    config.validate()?;
    if args.adversarial > 0 && args.ell != 2 {
        return Err(CliError::Usage("--adversarial needs --ell 2".into()));
    }
    let seed = ctx.seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuples: Vec<_> = (0..args.samples)
        .map(|_| sample_crossing_free_tuple(g.graph(), args.ell, &mut rng))
        .collect();
    tuples.extend((0..args.adversarial).map(|_| adversarial_pair(g.graph(), &mut rng)));
    let report = verify_covering(g.graph(), &expansion, &config, &tuples, ctx.exec);

    let params = json!({
        "p": args.p,
        "t": args.t,
        "ell": args.ell,
        "policy": g.policy().as_str(),
        "samples": args.samples,
        "adversarial": args.adversarial,
        "config": config,
        "explicit": args.explicit,
    });
    let mut results = json!({
        "n": g.n(),
        "expansion": expansion,
        "k": rational::format(&config.k()),
        "zeta": rational::format(&config.zeta()),
        "tau": report.tau,
        "size_threshold": report.size_threshold,
        "c_final": report.c_final,
        "total": report.total,
        "passed": report.passed,
        "small_layer": report.small_layer,
        "container_layer": report.container_layer,
        "rejected": report.rejected,
        "max_rounds": report.max_rounds,
        "max_ratio": report.max_ratio,
        "family_size_bound": family_size_bound(g.n(), &config),
    });
    let mut passed = report.all_passed();
    if args.explicit {
        let family = explicit_family(g.graph(), &expansion, &config)?;
        passed &= family.failures == 0;
        results["explicit"] = to_json(&family);
    }
    let mut outcome = Outcome::new(params, results, passed);
    outcome.table = Some(report.records.iter().map(to_json).collect());
    Ok(outcome)
}

fn cmd_construct(args: &ConstructArgs, ctx: &mut Context) -> Result<Outcome, CliError> {
    let params = ConstructionParams {
        field: FieldSpec::new(args.p)?,
        t: args.t,
        m: args.m,
        ell: args.ell,
        k: args.k,
        r: args.r,
        pad_to: args.pad,
        seed: ctx.seed(),
    };
    let set = sample_construction(&params, args.budget)?;
    let transfer = check_transfer(&set);
    let dim = set.vectors.first().map(|v| v.dim()).unwrap_or(params.pad_to.unwrap_or(0));
    let path = args.out.clone().unwrap_or_else(|| {
        default_path(format!(
            "construct-p{}-t{}-m{}-seed{}.txt",
            args.p, args.t, args.m, params.seed
        ))
    });
    write_file(&path, &formats::write_vector_set(params.field, dim, &set.vectors))?;
    let mut meta_path = path.clone().into_os_string();
    meta_path.push(".meta.json");
    let meta_path = PathBuf::from(meta_path);
    let meta = json!({
        "params": params,
        "r": set.vectors.len(),
        "d": dim,
        "tuples": set.tuples,
    });
    write_file(&meta_path, &format!("{}\n", serde_json::to_string_pretty(&meta).expect("json")))?;
    let results = json!({
        "r": set.vectors.len(),
        "d": dim,
        "transfer": transfer,
        "file": path.display().to_string(),
        "meta": meta_path.display().to_string(),
    });
    Ok(Outcome::new(to_json(&params), results, transfer.passed()))
}

fn cmd_verify(args: &VerifyArgs, property: Property, ctx: &mut Context) -> Result<Outcome, CliError> {
    let (field, d, vectors) = formats::parse_vector_set(&read_file(&args.file)?)?;
    let mode: Mode = args.mode.into();
    let seed = match mode {
        Mode::Sampled => Some(ctx.seed()),
        Mode::Exhaustive => ctx.seed,
    };
    let rng_seed = seed.unwrap_or(0);
    let run = |property: Property| {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        match property {
            Property::Alpha => check_alpha(&vectors, args.k, args.ell, mode, args.budget, args.samples, &mut rng, ctx.exec),
            Property::Beta => check_beta(&vectors, args.k, args.ell, mode, args.budget, args.samples, &mut rng, ctx.exec),
        }
    };
    let report = run(property)?;
    let params = json!({
        "file": args.file.display().to_string(),
        "p": field.p(),
        "d": d,
        "k": args.k,
        "ell": args.ell,
        "mode": mode,
        "budget": args.budget,
        "samples": args.samples,
    });
    let mut results = to_json(&report);
    let mut passed = report.passed() && report.witness_sound != Some(false);
    if property == Property::Beta && report.passed() {
        let alpha = run(Property::Alpha)?;
        results["alpha_verdict"] = to_json(&alpha.verdict);
        results["implies_alpha"] = json!(alpha.passed());
        passed &= alpha.passed();
    }
    Ok(Outcome::new(params, results, passed))
}

fn cmd_search(args: &SearchArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(args.p)?;
    let property = match args.property {
        PropertyArg::Alpha => Property::Alpha,
        PropertyArg::Beta => Property::Beta,
    };
    let found = exhaustive_search_max(field, args.d, args.k, args.ell, property, args.budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let budget = construct::DEFAULT_EXHAUSTIVE_BUDGET;
    let recheck = match property {
        Property::Alpha => check_alpha(&found.best, args.k, args.ell, Mode::Exhaustive, budget, 0, &mut rng, ctx.exec),
        Property::Beta => check_beta(&found.best, args.k, args.ell, Mode::Exhaustive, budget, 0, &mut rng, ctx.exec),
    }?;
    let mut passed = recheck.passed() && found.size >= args.d;
    let mut results = json!({
        "search": found,
        "recheck": recheck.verdict,
    });
    if args.p == 2 && args.ell == 1 {
        let bound = ramsey_upper_bound(args.d as u64, args.k as u64);
        let below = num_bigint::BigUint::from(found.size) < bound;
        results["ramsey_bound"] = json!(bound.to_string());
        results["below_ramsey_bound"] = json!(below);
        passed &= below;
    }
    let params = json!({
        "p": args.p,
        "d": args.d,
        "k": args.k,
        "ell": args.ell,
        "property": property,
        "budget": args.budget,
    });
    Ok(Outcome::new(params, results, passed))
}

fn cmd_ramsey(args: &RamseyArgs) -> Result<Outcome, CliError> {
    if args.d == 0 || args.k == 0 {
        return Err(CliError::Usage("d and k must be positive".into()));
    }
    let bound = ramsey_upper_bound(args.d, args.k);
    Ok(Outcome::new(
        json!({ "d": args.d, "k": args.k }),
        json!({ "bound": bound.to_string() }),
        true,
    ))
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Graph(GraphCommand::Build(_)) => "graph build",
        Command::Graph(GraphCommand::Spectrum(_)) => "graph spectrum",
        Command::Container(ContainerCommand::Run(_)) => "container run",
        Command::Container(ContainerCommand::Verify(_)) => "container verify",
        Command::Underpin(UnderpinCommand::Verify(_)) => "underpin verify",
        Command::Construct(ConstructCommand::Sample(_)) => "construct sample",
        Command::Verify(VerifyCommand::Beta(_)) => "verify beta",
        Command::Verify(VerifyCommand::Alpha(_)) => "verify alpha",
        Command::Search(_) => "search",
        Command::Ramsey(_) => "ramsey",
    }
}

/// Runs a parsed command and builds its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    if cli.threads > 1 {
        configure_threads(cli.threads);
    }
    let mut ctx = Context {
        seed: cli.seed,
        exec: Exec::from_threads(cli.threads),
    };
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Graph(GraphCommand::Build(a)) => cmd_graph_build(a),
        Command::Graph(GraphCommand::Spectrum(a)) => cmd_graph_spectrum(a),
        Command::Container(ContainerCommand::Run(a)) => cmd_container(a, false, &mut ctx),
        Command::Container(ContainerCommand::Verify(a)) => cmd_container(a, true, &mut ctx),
        Command::Underpin(UnderpinCommand::Verify(a)) => cmd_underpin(a, &mut ctx),
        Command::Construct(ConstructCommand::Sample(a)) => cmd_construct(a, &mut ctx),
        Command::Verify(VerifyCommand::Beta(a)) => cmd_verify(a, Property::Beta, &mut ctx),
        Command::Verify(VerifyCommand::Alpha(a)) => cmd_verify(a, Property::Alpha, &mut ctx),
        Command::Search(a) => cmd_search(a, &ctx),
        Command::Ramsey(a) => cmd_ramsey(a),
    }?;
    Ok(Report {
        command: command_name(&cli.command).to_string(),
        params: outcome.params,
        seed: ctx.seed,
        threads: cli.threads,
        passed: outcome.passed,
        results: outcome.results,
        table: outcome.table,
        timing_ms: start.elapsed().as_millis() as u64,
        versions: report::versions(),
    })
}

/// Parses arguments, runs the command, writes the report and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let text = report.render(cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                eprintln!("error: {}", e.message());
                return e.exit_code();
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        0
    } else {
        1
    }
}
