use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use hqmm_core::catalog::{self, CatalogModel, EntryKind};
use hqmm_core::{
    analyze, io as model_io, quantum, verify, verify_hqmm, AnalyzeOptions, Assertions, Error, GenericHqmm64, Hmm64, LogBase,
    VerifyOptions,
};
use serde::Serialize;

mod sweep;

#[derive(Parser)]
#[command(name = "hqmm", version, about = "Internal-entropy chain of hidden Markov models and their quantum models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every entropy, classify the equality case, print the report.
    Analyze(AnalyzeArgs),
    /// Evaluate a catalog model over a parameter grid and write CSV.
    Sweep(sweep::SweepArgs),
    /// Draw a symbol stream from a model.
    Sample(SampleArgs),
    /// Run the invariant battery.
    Verify(VerifyArgs),
    /// List or emit catalog models.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Clone)]
pub struct ModelArgs {
    /// Catalog entry id (see `hqmm catalog list`).
    #[arg(long, conflicts_with = "model")]
    pub catalog: Option<String>,
    /// Catalog parameter, `name=value`; repeatable.
    #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
    /// JSON model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct MetricArgs {
    /// Logarithm base: `2` (bits) or `e` (nats).
    #[arg(long, default_value = "2")]
    pub base: LogBase,
    /// Largest block length of the excess-entropy curve.
    #[arg(long, default_value_t = hqmm_core::classify::DEFAULT_BLOCK_DEPTH)]
    pub block_depth: usize,
    /// Treat the model as an epsilon-machine (reports C_epsilon and exact E).
    #[arg(long)]
    pub assert_epsilon_machine: bool,
    /// Treat the model as a minimal generator (reports C_Cl).
    #[arg(long)]
    pub assert_minimal: bool,
}

impl MetricArgs {
    pub fn options(&self, parameters: BTreeMap<String, f64>) -> AnalyzeOptions {
        AnalyzeOptions {
            base: self.base,
            block_depth: self.block_depth,
            assertions: Assertions {
                epsilon_machine: self.assert_epsilon_machine,
                minimal: self.assert_minimal,
            },
            parameters,
            ..AnalyzeOptions::default()
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    metrics: MetricArgs,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of symbols to draw
    /// Number of symbols to draw
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Simulate the induced quantum model instead of the classical chain.
    #[arg(long)]
    quantum: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    metrics: MetricArgs,
    /// Also compare sampled block frequencies with the exact law.
    #[arg(long)]
    deep: bool,
    /// Simulation length for --deep
    #[arg(long, default_value_t = 1_000_000)]
    steps: usize,
    /// RNG seed for --deep
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Show every entry with its parameters.
    List {
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Write an entry in the model-file format.
    Emit {
        id: String,
        #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overwrite an existing output file
        #[arg(long)]
        force: bool,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

pub enum Loaded {
    Hmm(Hmm64),
    Hqmm(GenericHqmm64),
}

impl ModelArgs {
    pub fn param_map(&self) -> BTreeMap<String, f64> {
        self.params.iter().cloned().collect()
    }

    pub fn load(&self) -> anyhow::Result<Loaded> {
        match (&self.catalog, &self.model) {
            (Some(id), None) => Ok(match catalog::build::<f64>(id, &self.param_map())? {
                CatalogModel::Hmm(m) => Loaded::Hmm(m),
                CatalogModel::Hqmm(h) => Loaded::Hqmm(h),
            }),
            (None, Some(path)) => {
                if !self.params.is_empty() {
                    bail!("--param only applies to --catalog models");
                }
                let m = model_io::load_model(path).with_context(|| format!("cannot load {}", path.display()))?;
                Ok(Loaded::Hmm(m))
            }
            _ => bail!("give exactly one of --catalog or --model"),
        }
    }

    pub fn load_hmm(&self) -> anyhow::Result<Hmm64> {
        match self.load()? {
            Loaded::Hmm(m) => Ok(m),
            Loaded::Hqmm(h) => bail!("`{}` is a quantum model; only `sample`, `verify` and `catalog emit` accept it", h.name()),
        }
    }

    /// Parameters echoed in reports: the resolved catalog parameters.
    pub fn resolved_params(&self) -> anyhow::Result<BTreeMap<String, f64>> {
        match &self.catalog {
            Some(id) => Ok(catalog::resolve_params(catalog::entry(id)?, &self.param_map())?),
            None => Ok(BTreeMap::new()),
        }
    }
}

pub fn write_output(out: Option<&Path>, force: bool, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            if path.exists() && !force {
                bail!("{} exists; pass --force to overwrite", path.display());
            }
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn to_json<S: Serialize>(value: &S) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn cmd_analyze(args: &AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let model = args.model.load_hmm()?;
    let report = analyze(&model, &args.metrics.options(args.model.resolved_params()?))?;
    let text = if args.json { to_json(&report)? } else { report.render_text() };
    write_output(args.out.as_deref(), args.force, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    model: &'a str,
    steps: usize,
    seed: u64,
    quantum: bool,
    symbols: Vec<&'a str>,
}

fn cmd_sample(args: &SampleArgs) -> anyhow::Result<ExitCode> {
    let (name, labels, word) = match args.model.load()? {
        Loaded::Hmm(m) => {
            let word = if args.quantum {
                let qm = quantum::induce_quantum_model(&m, LogBase::Two)?;
                quantum::simulate_hqmm(&qm, args.steps, args.seed)?
            } else {
                hqmm_core::sample(&m, args.steps, args.seed)?.symbols
            };
            (m.name().to_string(), m.symbol_labels().to_vec(), word)
        }
        Loaded::Hqmm(h) => {
            let word = h.simulate(args.steps, args.seed)?;
            (h.name().to_string(), h.symbols().to_vec(), word)
        }
    };
    let text = if args.json {
        to_json(&SampleOutput {
            model: &name,
            steps: args.steps,
            seed: args.seed,
            quantum: args.quantum,
            symbols: word.iter().map(|&r| labels[r].as_str()).collect(),
        })?
    } else if word.is_empty() {
        String::new()
    } else {
        format!("{}\n", hqmm_core::hmm::render_symbols(&labels, &word))
    };
    write_output(args.out.as_deref(), args.force, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let opts = VerifyOptions {
        analyze: args.metrics.options(args.model.resolved_params()?),
        deep: args.deep,
        steps: args.steps,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let report = match args.model.load()? {
        Loaded::Hmm(m) => verify(&m, &opts)?,
        Loaded::Hqmm(h) => verify_hqmm(&h, &opts)?,
    };
    let text = if args.json { to_json(&report)? } else { report.render_text() };
    write_output(None, false, &text)?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else if report.checks.iter().any(|c| c.name == "validation" && !c.passed) {
        ExitCode::from(2)
    } else {
        ExitCode::from(3)
    })
}

#[derive(Serialize)]
struct ListedEntry {
    id: &'static str,
    kind: EntryKind,
    params: Vec<String>,
    description: &'static str,
}

fn cmd_catalog(cmd: &CatalogCommand) -> anyhow::Result<ExitCode> {
    match cmd {
        CatalogCommand::List { json } => {
            let entries: Vec<ListedEntry> = catalog::ENTRIES
                .iter()
                .map(|e| ListedEntry {
                    id: e.id,
                    kind: e.kind,
                    params: e
                        .params
                        .iter()
                        .map(|p| {
                            let open = if p.min_inclusive { '[' } else { '(' };
                            format!("{} in {open}{}, {}] default {}", p.name, p.min, p.max, p.default)
                        })
                        .collect(),
                    description: e.description,
                })
                .collect();
            let text = if *json {
                to_json(&entries)?
            } else {
                let mut s = String::new();
                for e in &entries {
                    s.push_str(&format!("{:<22} {}\n", e.id, e.description));
                    for p in &e.params {
                        s.push_str(&format!("{:<22}   {p}\n", ""));
                    }
                }
                s
            };
            write_output(None, false, &text)?;
        }
        CatalogCommand::Emit { id, params, out, force } => {
            let params: BTreeMap<String, f64> = params.iter().cloned().collect();
            let text = match catalog::build::<f64>(id, &params)? {
                CatalogModel::Hmm(m) => format!("{}\n", model_io::model_to_json(&m)?),
                CatalogModel::Hqmm(h) => to_json(&h.to_file())?,
            };
            write_output(out.as_deref(), *force, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// 1 for unreadable or malformed input, 2 for validation failures,
/// 3 for internal-consistency errors.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Validation(_)) => 2,
        Some(Error::InternalConsistency(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Catalog(c) => cmd_catalog(c),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
