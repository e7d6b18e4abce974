//! Command line for the workbench: run registered claims, evaluate
//! formulas over the bundled structures, enumerate admitted predicates,
//! and build explicit selectors.
//!
//! Exit status is 0 exactly when every executed claim matched its
//! expectation (and other subcommands completed without error).

use clap::{Args, Parser, Subcommand, ValueEnum};
use henkin::choice::{builtin_provider, construct_choice, full_unary};
use henkin::claims::{self, ClaimKind, ClaimParams, ClaimResult};
use henkin::domain::{
    build_full, build_sigma0, build_sigma2, build_sigma3, ExistsStrategy, HenkinStructure,
    PredicateFile, QuantifierPolicy, SymbolicPredicate,
};
use henkin::eval::{eval, Assignment};
use henkin::formula::parse;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "henkin",
    about = "Second-order choice principles over finitely supported predicate domains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and run the claim registry.
    Claims {
        #[command(subcommand)]
        action: ClaimsAction,
    },
    /// Evaluate a formula over one structure.
    Eval(EvalArgs),
    /// Enumerate the admitted predicates at an arity and support budget.
    Enumerate(EnumerateArgs),
    /// Build the explicit selector for a head/relation pair.
    Construct(ConstructArgs),
}

#[derive(Subcommand)]
enum ClaimsAction {
    /// List every registered claim.
    List,
    /// Run claims by id, or all of them.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Claim ids to run.
    #[arg(required_unless_present = "all")]
    ids: Vec<String>,
    /// Run every registered claim.
    #[arg(long, conflicts_with = "ids")]
    all: bool,
    /// Override a claim parameter, e.g. `--param n=5` or `--param s_exist=2`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Seed for sampled batteries and randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the full results as JSON to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Sigma0,
    Sigma2,
    Sigma3,
    Full,
}

#[derive(Args)]
struct ModelArgs {
    /// Structure family.
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Domain size: one number, or `n0,n1` for the two-part structure.
    #[arg(long)]
    size: Option<String>,
    /// Universal support budget (defaults per structure).
    #[arg(long)]
    s_univ: Option<usize>,
    /// Existential support budget (defaults per structure).
    #[arg(long)]
    s_exist: Option<usize>,
    /// Witness provider tried before existential sweeps.
    #[arg(long)]
    provider: Option<String>,
    /// Seed for sampled quantifier batteries.
    #[arg(long)]
    seed: Option<u64>,
    /// Approximate size of sampled batteries.
    #[arg(long)]
    sample_size: Option<usize>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Formula file, or the formula itself.
    #[arg(long)]
    formula: String,
    /// Bind a predicate variable from a JSON file: `name=file`.
    #[arg(long = "assign", value_name = "NAME=FILE")]
    assigns: Vec<String>,
    /// Print the failing path when the formula is false.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Predicate arity.
    #[arg(long)]
    arity: u8,
    /// Support weight budget.
    #[arg(long)]
    support: usize,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Relation to uniformize, as a predicate JSON file.
    #[arg(long)]
    rho: String,
    /// Head predicate file; defaults to the full unary predicate.
    #[arg(long)]
    alpha: Option<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            for cause in e.chain().skip(1) {
                eprintln!("  caused by: {cause}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Claims { action: ClaimsAction::List } => {
            list_claims();
            Ok(ExitCode::SUCCESS)
        }
        Command::Claims { action: ClaimsAction::Run(args) } => run_claims(args),
        Command::Eval(args) => run_eval(args),
        Command::Enumerate(args) => run_enumerate(args),
        Command::Construct(args) => run_construct(args),
    }
}

/// Write a line to stdout. A closed pipe (the reader finished early, as
/// under `head`) ends the run quietly instead of aborting.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn list_claims() {
    let specs = claims::registry();
    let width = specs.iter().map(|s| s.id.len()).max().unwrap_or(0);
    for spec in specs {
        let kind = match spec.kind {
            ClaimKind::Runnable => "runnable",
            ClaimKind::Composite => "composite",
            ClaimKind::Annotation => "annotation",
        };
        let expected = spec
            .expected
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        emit(&format!(
            "{:width$}  {kind:10}  expect {expected:17}  {}",
            spec.id, spec.title
        ));
    }
}

fn run_claims(args: RunArgs) -> anyhow::Result<ExitCode> {
    let mut params = ClaimParams::default();
    for kv in &args.params {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("--param expects KEY=VALUE, got `{kv}`"))?;
        params.set(key, value)?;
    }
    if let Some(seed) = args.seed {
        params.seed = Some(seed);
    }

    let results = if args.all {
        claims::run_all(&params)?
    } else {
        let mut out = Vec::new();
        for id in &args.ids {
            out.push(claims::run_claim(id, &params)?);
        }
        out
    };

    for r in &results {
        emit(&render_result(r));
    }
    let matched = results.iter().filter(|r| r.matched).count();
    emit(&format!(
        "{} claim(s) executed, {} matched, {} mismatched",
        results.len(),
        matched,
        results.len() - matched
    ));

    if let Some(path) = &args.json {
        std::fs::write(path, serde_json::to_string_pretty(&results)?)?;
        eprintln!("results written to {path}");
    }

    Ok(if claims::all_matched(&results) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn render_result(r: &ClaimResult) -> String {
    let mut line = String::new();
    let status = if r.matched { "ok      " } else { "MISMATCH" };
    let verdict = r.verdict.map_or_else(|| "-".to_string(), |v| v.to_string());
    let expected = r.expected.map_or_else(|| "-".to_string(), |v| v.to_string());
    let _ = write!(
        line,
        "{status} {:42} verdict {verdict:17} expected {expected:17} {:6} ms{}",
        r.id,
        r.millis,
        if r.sampled { "  [sampled]" } else { "" }
    );
    for d in &r.details {
        let _ = write!(line, "\n         - {d}");
    }
    line
}

fn parse_sizes(args: &ModelArgs) -> anyhow::Result<Vec<u32>> {
    let Some(raw) = &args.size else {
        return Ok(match args.model {
            ModelKind::Sigma3 => vec![6, 6],
            ModelKind::Full => vec![2],
            _ => vec![4],
        });
    };
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| anyhow::anyhow!("--size expects numbers, got `{s}`"))
        })
        .collect()
}

fn build_model(args: &ModelArgs) -> anyhow::Result<HenkinStructure> {
    if let Some(name) = &args.provider {
        if builtin_provider(name).is_none() {
            anyhow::bail!("unknown witness provider `{name}`");
        }
    }
    let sizes = parse_sizes(args)?;
    let one = || -> anyhow::Result<u32> {
        match sizes.as_slice() {
            [n] => Ok(*n),
            _ => anyhow::bail!("this structure takes a single --size number"),
        }
    };
    let mut h = match args.model {
        ModelKind::Full => build_full(one()?),
        ModelKind::Sigma0 => {
            let n = one()?;
            build_sigma0(n, policy_for(args, 1, 3)?)?
        }
        ModelKind::Sigma2 => {
            let n = one()?;
            build_sigma2(n, policy_for(args, 1, 3)?)?
        }
        ModelKind::Sigma3 => {
            let [n0, n1] = sizes.as_slice() else {
                anyhow::bail!("the two-part structure takes --size n0,n1");
            };
            build_sigma3(*n0, *n1, policy_for(args, 2, 2)?)?
        }
    };
    // The everything-admitted structure fixes budgets at the domain size;
    // apply the remaining knobs on top.
    if args.model == ModelKind::Full {
        let mut p = h.policy().clone();
        if let Some(s) = args.s_univ {
            p.s_univ = s;
        }
        if let Some(s) = args.s_exist {
            p.s_exist = s;
        }
        apply_common(&mut p, args);
        h.set_policy(p)?;
    }
    Ok(h)
}

fn policy_for(
    args: &ModelArgs,
    default_univ: usize,
    default_exist: usize,
) -> anyhow::Result<QuantifierPolicy> {
    let mut p = QuantifierPolicy::new(
        args.s_univ.unwrap_or(default_univ),
        args.s_exist.unwrap_or(default_exist),
    )?;
    apply_common(&mut p, args);
    Ok(p)
}

fn apply_common(p: &mut QuantifierPolicy, args: &ModelArgs) {
    if let Some(seed) = args.seed {
        p.seed = seed;
    }
    if let Some(k) = args.sample_size {
        p.sample_size = k;
    }
    if let Some(name) = &args.provider {
        p.strategy = ExistsStrategy::Hybrid(name.clone());
    }
}

fn load_predicate(h: &HenkinStructure, path: &str) -> anyhow::Result<SymbolicPredicate> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read predicate file `{path}`: {e}"))?;
    let file: PredicateFile = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("`{path}` is not a predicate file: {e}"))?;
    Ok(SymbolicPredicate::from_file(h.group(), &file)?)
}

fn run_eval(args: EvalArgs) -> anyhow::Result<ExitCode> {
    let h = build_model(&args.model)?;
    let text = if Path::new(&args.formula).is_file() {
        std::fs::read_to_string(&args.formula)?
    } else {
        args.formula.clone()
    };
    let f = parse(&text)?;

    let mut asg = Assignment::new();
    for kv in &args.assigns {
        let (name, path) = kv
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("--assign expects NAME=FILE, got `{kv}`"))?;
        asg = asg.with_pred(name, load_predicate(&h, path)?);
    }

    let out = eval(&h, &asg, &f, h.policy())?;
    println!("structure: {}", h.name());
    println!("formula:   {f}");
    println!("truth:     {}", out.truth);
    println!(
        "work:      {} nodes, {} predicates swept, {} provider witnesses{}",
        out.stats.nodes,
        out.stats.predicates_swept,
        out.stats.provider_witnesses,
        if out.stats.sampled { ", sampled sweeps" } else { "" }
    );
    if args.trace {
        match out.trace {
            Some(t) => println!("trace:     {t}"),
            None => println!("trace:     (none)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_enumerate(args: EnumerateArgs) -> anyhow::Result<ExitCode> {
    // Listing needs no evaluation headroom: unless budgets are given
    // explicitly, align them with the requested support weight so small
    // truncations stay listable.
    let mut margs = args.model;
    margs.s_univ = Some(margs.s_univ.unwrap_or(args.support));
    margs.s_exist = Some(margs.s_exist.unwrap_or(args.support));
    let h = build_model(&margs)?;
    let preds = h.enumerate_predicates(args.arity, args.support)?;
    for p in preds.iter() {
        emit(&serde_json::to_string(&p.to_file(h.domain()))?);
    }
    eprintln!(
        "{} admitted predicates at arity {} within support weight {} over {}",
        preds.len(),
        args.arity,
        args.support,
        h.name()
    );
    Ok(ExitCode::SUCCESS)
}

fn run_construct(args: ConstructArgs) -> anyhow::Result<ExitCode> {
    if matches!(args.model.model, ModelKind::Full | ModelKind::Sigma0) {
        anyhow::bail!("construct supports the pair-block and two-part structures");
    }
    let h = build_model(&args.model)?;
    let rho = load_predicate(&h, &args.rho)?;
    let alpha = match &args.alpha {
        Some(path) => load_predicate(&h, path)?,
        None => full_unary(&h),
    };
    let sigma = construct_choice(&h, &alpha, &rho)?;
    println!("{}", serde_json::to_string_pretty(&sigma.to_file(h.domain()))?);
    eprintln!(
        "selector over {}: support weight {}, {} tuples",
        h.name(),
        sigma.weight(h.group()),
        sigma.extension().iter_codes().count()
    );
    Ok(ExitCode::SUCCESS)
}
