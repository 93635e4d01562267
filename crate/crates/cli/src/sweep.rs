use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::Args;
use hqmm_core::catalog::{self, EntryKind};
use hqmm_core::{
    analyze, channel_mutual_information, excess_entropy_epsilon_machine, induce_quantum_model, shannon_entropy,
    AnalysisReport, Error, Hmm64, LogBase,
};
use rayon::prelude::*;

use crate::{write_output, MetricArgs};

#[derive(Args)]
pub struct SweepArgs {
    /// Catalog entry to sweep.
    #[arg(long)]
    catalog: String,
    /// Fixed parameter, `name=value`; repeatable.
    #[arg(long = "param", value_name = "K=V", value_parser = crate::parse_param)]
    params: Vec<(String, f64)>,
    /// Parameter that runs over the grid.
    #[arg(long)]
    vary: String,
    /// First grid value
    #[arg(long)]
    start: f64,
    /// Last grid value (inclusive)
    #[arg(long)]
    stop: f64,
    /// Grid spacing
    #[arg(long)]
    step: f64,
    /// Comma-separated output columns.
    #[arg(long, value_delimiter = ',', default_value = "h_mu,i_xy,c_q,c_q_diagonal,e_curve_last,case_label")]
    columns: Vec<Column>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    metrics: MetricArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    HMu,
    IXy,
    CQ,
    CQDiagonal,
    ECurveLast,
    EExact,
    CaseLabel,
    I3State,
    CQMarkov,
    CQ3State,
    H3State,
    CClLowerBound,
}

const COLUMNS: &[(&str, Column)] = &[
    ("h_mu", Column::HMu),
    ("i_xy", Column::IXy),
    ("c_q", Column::CQ),
    ("c_q_diagonal", Column::CQDiagonal),
    ("e_curve_last", Column::ECurveLast),
    ("e_exact", Column::EExact),
    ("case_label", Column::CaseLabel),
    ("i_3state", Column::I3State),
    ("c_q_markov", Column::CQMarkov),
    ("c_q_3state", Column::CQ3State),
    ("h_3state", Column::H3State),
    ("c_cl_lower_bound", Column::CClLowerBound),
];

impl Column {
    fn name(self) -> &'static str {
        COLUMNS.iter().find(|c| c.1 == self).map(|c| c.0).unwrap_or("?")
    }

    fn needs_eps(self) -> bool {
        matches!(
            self,
            Column::I3State | Column::CQMarkov | Column::CQ3State | Column::H3State | Column::CClLowerBound
        )
    }
}

impl FromStr for Column {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        COLUMNS.iter().find(|c| c.0 == s.trim()).map(|c| c.1).ok_or_else(|| {
            let names: Vec<&str> = COLUMNS.iter().map(|c| c.0).collect();
            format!("unknown column `{s}` (known: {})", names.join(", "))
        })
    }
}

/// Grid `start, start + step, …` up to `stop`, rounded to twelve decimals so
/// endpoints such as 1.0 are hit exactly.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn grid(start: f64, stop: f64, step: f64) -> anyhow::Result<Vec<f64>> {
    if !(step > 0.0) {
        bail!("--step must be positive");
    }
    if !(start <= stop) {
        bail!("--start must not exceed --stop");
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| {
            let v = start + k as f64 * step;
            ((v * 1e12).round() / 1e12).min(stop)
        })
        .collect())
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

struct Row {
    report: AnalysisReport<f64>,
    model: Hmm64,
    params: BTreeMap<String, f64>,
}

fn evaluate(args: &SweepArgs, fixed: &BTreeMap<String, f64>, value: f64) -> anyhow::Result<Row> {
    let mut raw = fixed.clone();
    raw.insert(args.vary.clone(), value);
    let entry = catalog::entry(&args.catalog)?;
    let params = catalog::resolve_params(entry, &raw)?;
    let model = catalog::build::<f64>(&args.catalog, &params)?.into_hmm()?;
    let report = analyze(&model, &args.metrics.options(params.clone()))
        .with_context(|| format!("{} = {value}", args.vary))?;
    Ok(Row { report, model, params })
}

fn cell(col: Column, row: &Row, base: LogBase, assert_em: bool) -> anyhow::Result<String> {
    let r = &row.report;
    let eps = || row.params.get("eps").copied().context("column needs parameter `eps`");
    Ok(match col {
        Column::HMu => fmt_num(r.h_mu),
        Column::IXy => fmt_num(r.i_xy),
        Column::CQ => fmt_num(r.c_q),
        Column::CQDiagonal => fmt_num(r.c_q_diagonal),
        Column::ECurveLast => r.excess.last.map(fmt_num).unwrap_or_default(),
        Column::EExact => {
            if (assert_em || r.excess.exact.is_some()) && !row.model.is_flagged_not_epsilon_machine() {
                match excess_entropy_epsilon_machine(&row.model, base) {
                    Ok(e) => fmt_num(e),
                    Err(Error::NotUnifilar { .. }) => String::new(),
                    Err(e) => return Err(e.into()),
                }
            } else {
                String::new()
            }
        }
        Column::CaseLabel => r.case_label.to_string(),
        Column::I3State => fmt_num(channel_mutual_information(
            &catalog::perturbed_coin_3state::<f64>(eps()?)?,
            base,
        )?),
        Column::CQMarkov => fmt_num(induce_quantum_model(&catalog::perturbed_coin_em::<f64>(eps()?)?, base)?.c_q),
        Column::CQ3State => fmt_num(induce_quantum_model(&catalog::perturbed_coin_3state::<f64>(eps()?)?, base)?.c_q),
        Column::H3State => fmt_num(shannon_entropy(
            catalog::perturbed_coin_3state::<f64>(eps()?)?.initial(),
            base,
        )?),
        Column::CClLowerBound => {
            let e = eps()?;
            fmt_num(shannon_entropy(&[1.0 - e / 2.0, e / 2.0], base)?)
        }
    })
}

pub fn run(args: &SweepArgs) -> anyhow::Result<ExitCode> {
    if args.columns.is_empty() {
        bail!("--columns must name at least one column");
    }
    let entry = catalog::entry(&args.catalog)?;
    if entry.kind != EntryKind::Hmm {
        bail!("`{}` is a quantum model and cannot be swept", entry.id);
    }
    if !entry.params.iter().any(|p| p.name == args.vary) {
        bail!("`{}` has no parameter `{}`", entry.id, args.vary);
    }
    let fixed: BTreeMap<String, f64> = args.params.iter().cloned().collect();
    if fixed.contains_key(&args.vary) {
        bail!("`{}` is both swept and fixed", args.vary);
    }
    if args.columns.iter().any(|c| c.needs_eps()) && !entry.params.iter().any(|p| p.name == "eps") {
        bail!("columns i_3state, c_q_markov, c_q_3state, h_3state and c_cl_lower_bound need an `eps` parameter");
    }
    if let Some(path) = &args.out {
        if path.exists() && !args.force {
            bail!("{} exists; pass --force to overwrite", path.display());
        }
    }
    let points = grid(args.start, args.stop, args.step)?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build()?;
    let base = args.metrics.base;
    let assert_em = args.metrics.assert_epsilon_machine;
    let lines: Vec<String> = pool.install(|| {
        points
            .par_iter()
            .map(|&v| {
                let row = evaluate(args, &fixed, v)?;
                let mut cells = vec![fmt_num(v)];
                for &c in &args.columns {
                    cells.push(cell(c, &row, base, assert_em)?);
                }
                Ok(cells.join(","))
            })
            .collect::<anyhow::Result<Vec<String>>>()
    })?;

    let mut csv = String::new();
    let header: Vec<&str> = std::iter::once(args.vary.as_str())
        .chain(args.columns.iter().map(|c| c.name()))
        .collect();
    csv.push_str(&header.join(","));
    csv.push('\n');
    for line in lines {
        csv.push_str(&line);
        csv.push('\n');
    }
    write_output(args.out.as_deref(), args.force, &csv)?;
    Ok(ExitCode::SUCCESS)
}
