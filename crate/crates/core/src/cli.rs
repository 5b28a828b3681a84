//! Command-line front end. Each subcommand calls one library operation per
//! DMU and prints a report; DMUs are evaluated in parallel but reported in
//! dataset order.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::decomposition::{decompose_network, to_tandem};
use crate::error::{Error, Result};
use crate::general_network::{blackbox_mpss, lexicographic_stages, network_mpss, Intermediates};
use crate::model_io::{load_data_file, load_dataset, read_score_column, summarize, Dataset, NetworkTopology};
use crate::report::{render, Cell, Format, ReportTable, EFFICIENCY_DECIMALS, MPSS_DECIMALS};
use crate::stats::{kruskal_wallis_with, TieCorrection};
use crate::value_chain::{chain_efficiency, chain_mpss, intermediate_targets, profitability_mpss, ChainWeights};

#[derive(Debug, Parser)]
#[command(name = "dea-mpss", version, about = "Efficiency and most productive scale size for network DEA")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Print scores at full precision.
    #[arg(long, global = true)]
    raw: bool,
    /// First chain weight (chain-eff: operation, chain-mpss: market).
    #[arg(long, global = true, default_value_t = 1.0)]
    w1: f64,
    /// Second chain weight (chain-eff: R&D, chain-mpss: operation).
    #[arg(long, global = true, default_value_t = 1.0)]
    w2: f64,
    /// Third chain weight (chain-eff: market, chain-mpss: R&D).
    #[arg(long, global = true, default_value_t = 1.0)]
    w3: f64,
    /// Weight of the first real process in the tandem split.
    #[arg(long, global = true, default_value_t = 0.5)]
    omega1: f64,
    /// Weight of the second real process in the tandem split.
    #[arg(long, global = true, default_value_t = 0.5)]
    omega2: f64,
    /// Replace nonpositive data cells by this value instead of failing.
    #[arg(long = "min-epsilon", global = true)]
    min_epsilon: Option<f64>,
    /// Evaluate only these DMUs (repeat or separate with commas).
    #[arg(long, global = true, value_delimiter = ',')]
    dmu: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IntermediatesArg {
    Variable,
    Radial,
}

#[derive(Debug, Args)]
struct Inputs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    topology: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a data file against a topology.
    Validate(Inputs),
    /// Mean, standard deviation, minimum and maximum of every measure.
    Summary {
        #[arg(long)]
        data: PathBuf,
    },
    /// MPSS of the network viewed as a single process.
    BlackboxMpss(Inputs),
    /// System MPSS of a two-stage network.
    NetworkMpss {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "variable")]
        intermediates: IntermediatesArg,
        /// Also solve the stage models (radial intermediates only).
        #[arg(long)]
        stages: bool,
    },
    /// Black-box, system, process, stage and tandem scores.
    Decompose(Inputs),
    /// One-step efficiency of an R&D value chain.
    ChainEff(Inputs),
    /// Chain MPSS with the profitability and marketability split.
    ChainMpss {
        #[command(flatten)]
        inputs: Inputs,
        /// Report appropriate intermediate levels and strategies instead.
        #[arg(long)]
        targets: bool,
    },
    /// Kruskal-Wallis test across score files, one group per file.
    KruskalWallis {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        groups: Vec<PathBuf>,
        /// Column to read when a file has several.
        #[arg(long)]
        column: Option<String>,
        #[arg(long)]
        no_tie_correction: bool,
    },
}

/// Runs the command line `args` (including the program name). Returns the
/// exit status: 0 on success, 1 for invalid input, 2 for solver failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_solver_failure() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<String> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    };
    let mut table = match &cli.command {
        Command::Validate(inputs) => {
            let (d, t) = load(cli, inputs, err)?;
            let mut table = ReportTable::new("Validation", ["dmus", "measures", "shape", "processes", "links"]);
            table.push(vec![
                Cell::text(d.num_dmus().to_string()),
                Cell::text(d.measures().len().to_string()),
                Cell::text(t.shape.as_str()),
                Cell::text(t.processes.len().to_string()),
                Cell::text(t.links.len().to_string()),
            ]);
            table
        }
        Command::Summary { data } => {
            let (d, warnings) = load_data_file(data, cli.min_epsilon)?;
            print_warnings(err, &warnings);
            let mut table = ReportTable::new("Descriptive statistics", ["measure", "mean", "sd", "min", "max"]);
            for (name, s) in summarize(&d) {
                let n = |v| Cell::num(v, EFFICIENCY_DECIMALS);
                table.push(vec![Cell::text(name), n(s.mean), n(s.sd), n(s.min), n(s.max)]);
            }
            table
        }
        Command::BlackboxMpss(inputs) => {
            let (d, t) = load(cli, inputs, err)?;
            let roles = t.black_box_roles()?;
            let results = per_dmu(cli, &d, |dmu| blackbox_mpss(&d, &roles, dmu))?;
            let mut table = ReportTable::new("Black-box MPSS", ["dmu", "score", "input_factor", "output_factor", "mpss"]);
            for r in results {
                table.push(vec![
                    Cell::text(&r.dmu),
                    mpss(r.score),
                    mpss(r.scale_factors["input"]),
                    mpss(r.scale_factors["output"]),
                    yes_no(r.is_mpss()),
                ]);
            }
            table
        }
        Command::NetworkMpss {
            inputs,
            intermediates,
            stages,
        } => {
            let (d, t) = load(cli, inputs, err)?;
            let mode = match intermediates {
                IntermediatesArg::Variable => Intermediates::Variable,
                IntermediatesArg::Radial => Intermediates::Radial,
            };
            if *stages {
                if mode != Intermediates::Radial {
                    return Err(Error::InvalidArgument("--stages requires --intermediates radial".into()));
                }
                let results = per_dmu(cli, &d, |dmu| lexicographic_stages(&d, &t, dmu))?;
                let mut table = ReportTable::new("Network MPSS by stage", ["dmu", "system", "stage_1", "stage_2", "additivity_gap"]);
                for [s, a, b] in results {
                    table.push(vec![
                        Cell::text(&s.dmu),
                        mpss(s.score),
                        mpss(a.score),
                        mpss(b.score),
                        mpss(a.score + b.score - s.score),
                    ]);
                }
                table
            } else {
                let results = per_dmu(cli, &d, |dmu| network_mpss(&d, &t, dmu, mode))?;
                let names = t.two_stage_roles()?.intermediates;
                let mut headers: Vec<String> = ["dmu", "score", "stage1_input", "stage1_output", "stage2_input", "stage2_output"]
                    .map(String::from)
                    .to_vec();
                if mode == Intermediates::Variable {
                    headers.extend(names.iter().map(|m| format!("{m}_target")));
                    headers.push("alternate_optima".into());
                }
                let mut table = ReportTable::new("Network MPSS", headers);
                for r in results {
                    let mut row = vec![Cell::text(&r.dmu), mpss(r.score)];
                    row.extend(r.scale_factors.values().map(|&v| mpss(v)));
                    if mode == Intermediates::Variable {
                        row.extend(names.iter().map(|m| mpss(r.optimal_intermediates[m])));
                        row.push(yes_no(r.has_alternate_intermediates()));
                    }
                    table.push(row);
                }
                table
            }
        }
        Command::Decompose(inputs) => {
            let (d, t) = load(cli, inputs, err)?;
            // validates the weights and the shape before any solve
            to_tandem(&t)?.with_weights(cli.omega1, cli.omega2)?;
            let weights = (cli.omega1, cli.omega2);
            let results = per_dmu(cli, &d, |dmu| decompose_network(&d, &t, dmu, weights))?;
            let mut table = ReportTable::new(
                "MPSS decomposition",
                [
                    "dmu",
                    "black_box",
                    "system_variable",
                    "system_radial",
                    "process_1",
                    "process_2",
                    "stage_1",
                    "stage_2",
                    "tandem",
                    "additivity_gap",
                ],
            );
            for r in results {
                let split = match &r.decomposition {
                    Some(s) => vec![mpss(s.stage_scores.0), mpss(s.stage_scores.1), mpss(s.tandem_score)],
                    None => {
                        let _ = writeln!(err, "warning: DMU {:?} has a negative process score; no stage split", r.dmu);
                        vec![Cell::Missing, Cell::Missing, Cell::Missing]
                    }
                };
                let mut row = vec![
                    Cell::text(&r.dmu),
                    mpss(r.black_box),
                    mpss(r.system_variable),
                    mpss(r.system_radial),
                    mpss(r.process_scores.0),
                    mpss(r.process_scores.1),
                ];
                row.extend(split);
                row.push(mpss(r.additivity_gap));
                table.push(row);
            }
            table
        }
        Command::ChainEff(inputs) => {
            let (d, t) = load(cli, inputs, err)?;
            let weights = ChainWeights::new(cli.w3, cli.w1, cli.w2)?;
            let names: Vec<String> = t.chain_roles()?.intermediates().cloned().collect();
            let results = per_dmu(cli, &d, |dmu| chain_efficiency(&d, &t, dmu, weights))?;
            let mut headers: Vec<String> = ["dmu", "overall", "operation", "rd", "marketability", "market_expansion"]
                .map(String::from)
                .to_vec();
            headers.extend(names.iter().map(|m| format!("{m}_efficiency_target")));
            let mut table = ReportTable::new("Value chain efficiency", headers);
            for r in results {
                let e = |v| Cell::num(v, EFFICIENCY_DECIMALS);
                let mut row = vec![
                    Cell::text(&r.dmu),
                    e(r.objective),
                    e(r.operation),
                    e(r.rd),
                    e(r.marketability),
                    e(r.market_expansion),
                ];
                row.extend(names.iter().map(|m| e(r.intermediates[m])));
                table.push(row);
            }
            table
        }
        Command::ChainMpss { inputs, targets } => {
            let (d, t) = load(cli, inputs, err)?;
            let weights = ChainWeights::new(cli.w1, cli.w2, cli.w3)?;
            if *targets {
                let names: Vec<String> = t.chain_roles()?.intermediates().cloned().collect();
                let results = per_dmu(cli, &d, |dmu| intermediate_targets(&d, &t, dmu, weights))?;
                let mut headers = vec!["dmu".to_string()];
                for m in &names {
                    headers.extend(["current", "appropriate", "gap"].map(|c| format!("{m}_{c}")));
                }
                headers.extend(["strategy", "alternate_optima"].map(String::from));
                let mut table = ReportTable::new("Appropriate intermediate levels", headers);
                for (dmu, r) in selected(cli, &d)?.iter().zip(results) {
                    let mut row = vec![Cell::text(dmu)];
                    for tg in &r.targets {
                        row.extend([
                            Cell::num(tg.current, EFFICIENCY_DECIMALS),
                            Cell::num(tg.appropriate, EFFICIENCY_DECIMALS),
                            Cell::num(tg.gap, EFFICIENCY_DECIMALS),
                        ]);
                    }
                    row.push(Cell::text(&r.strategy));
                    row.push(yes_no(r.alternate_optima));
                    table.push(row);
                }
                table
            } else {
                let results = per_dmu(cli, &d, |dmu| {
                    let chain = chain_mpss(&d, &t, dmu, weights)?;
                    let split = profitability_mpss(&d, &t, dmu, chain.score, weights)?;
                    Ok((chain, split))
                })?;
                let mut table = ReportTable::new(
                    "Value chain MPSS",
                    ["dmu", "chain", "operation", "rd", "profitability", "marketability"],
                );
                for (c, s) in results {
                    table.push(vec![
                        Cell::text(&c.dmu),
                        mpss(c.score),
                        mpss(s.operation_mpss),
                        mpss(s.rd_mpss),
                        mpss(s.profitability_mpss),
                        mpss(s.marketability_mpss),
                    ]);
                }
                table
            }
        }
        Command::KruskalWallis {
            groups,
            column,
            no_tie_correction,
        } => {
            let samples = groups
                .iter()
                .map(|p| read_scores(p, column.as_deref()))
                .collect::<Result<Vec<_>>>()?;
            let ties = if *no_tie_correction {
                TieCorrection::Omitted
            } else {
                TieCorrection::Applied
            };
            let r = kruskal_wallis_with(&samples, ties)?;
            let mut table = ReportTable::new("Kruskal-Wallis test", ["h", "df", "p", "tie_corrected", "tied_values"]);
            table.push(vec![
                Cell::num(r.h_statistic, EFFICIENCY_DECIMALS),
                Cell::text(r.degrees_of_freedom.to_string()),
                Cell::num(r.p_value, EFFICIENCY_DECIMALS),
                yes_no(r.tie_corrected),
                Cell::text(r.tie_counts.iter().sum::<usize>().to_string()),
            ]);
            table
        }
    };
    table.raw = cli.raw;
    Ok(render(&table, format))
}

fn mpss(v: f64) -> Cell {
    Cell::num(v, MPSS_DECIMALS)
}

fn yes_no(b: bool) -> Cell {
    Cell::text(if b { "yes" } else { "no" })
}

fn print_warnings(err: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn load(cli: &Cli, inputs: &Inputs, err: &mut dyn Write) -> Result<(Dataset, NetworkTopology)> {
    let (d, t, warnings) = load_dataset(&inputs.data, &inputs.topology, cli.min_epsilon)?;
    print_warnings(err, &warnings);
    Ok((d, t))
}

fn read_scores(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_score_column(file, &path.display().to_string(), column)
}

/// DMUs to evaluate, in dataset order.
fn selected(cli: &Cli, d: &Dataset) -> Result<Vec<String>> {
    for id in &cli.dmu {
        d.dmu_index(id)?;
    }
    Ok(d.dmu_ids()
        .iter()
        .filter(|id| cli.dmu.is_empty() || cli.dmu.contains(id))
        .cloned()
        .collect())
}

fn per_dmu<T: Send>(cli: &Cli, d: &Dataset, f: impl Fn(&str) -> Result<T> + Sync) -> Result<Vec<T>> {
    selected(cli, d)?.par_iter().map(|dmu| f(dmu)).collect()
}
