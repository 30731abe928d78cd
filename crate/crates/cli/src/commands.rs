use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use crn_core::decomposition::{basis_from_names, component_partition};
use crn_core::kinetics::DEFAULT_STEADY_STATE_TOLERANCE;
use crn_core::{
    build_coordinate_graph, greedy_basis, is_steady_state, parse_network, verify_decomposition,
    Error, Kinetics, Network,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::input::{parse_labels, parse_partition, parse_point, parse_rates, parse_tolerance};
use crate::report::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "crn",
    version,
    about = "Independent decompositions and structural analysis of reaction networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: network numbers, coordinate graph, decomposition, theorem checks.
    Analyze {
        file: PathBuf,
        /// Use this partition instead of the coordinate-graph components, e.g. "R1,R2|R3,R4".
        #[arg(long)]
        parts: Option<String>,
        /// Basis reactions for the coordinate graph, e.g. "R1,R4,R5,R6".
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Finest independent decomposition from the coordinate graph.
    Decompose {
        file: PathBuf,
        /// Check whether these reactions form a part of some independent decomposition.
        #[arg(long)]
        contains: Option<String>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rank bookkeeping for a given partition; exit 3 if not independent.
    Check {
        file: PathBuf,
        #[arg(long)]
        parts: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Network numbers table for the network and optional parts.
    Numbers {
        file: PathBuf,
        #[arg(long)]
        parts: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Mass-action species formation rate at a point; exit 3 if not steady.
    SteadyState {
        file: PathBuf,
        /// Rate constants: "1,1,3,1", "k1=1,k2=1,..." or "R1=1,...".
        #[arg(long)]
        rates: String,
        /// Concentrations: "2,3,3,2" or "X1=2,X2=3,...".
        #[arg(long)]
        point: String,
        /// Also evaluate each part of this partition on its own.
        #[arg(long)]
        parts: Option<String>,
        /// Relative tolerance; accepts "inf".
        #[arg(long)]
        tol: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// What a command prints and the exit code it wants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn emit<T: Serialize>(
    format: Format,
    report: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<String> {
    Ok(match format {
        Format::Text => text(report),
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
    })
}

pub fn load(path: &Path) -> Result<Network> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_network(&text)?)
}

fn basis_for(net: &Network, spec: Option<&str>) -> Result<crn_core::BasisSelection> {
    match spec {
        None => Ok(greedy_basis(net)),
        Some(s) => {
            let names: Vec<&str> = s.split(',').map(str::trim).collect();
            basis_from_names(net, &names).map_err(|e| match e {
                Error::InvalidBasis(msg) => CliError::Usage(format!("--basis: {msg}")),
                Error::DependentBasis => {
                    CliError::Usage("--basis: reactions are linearly dependent".into())
                }
                other => other.into(),
            })
        }
    }
}

pub fn analyze(net: &Network, parts: Option<&str>, basis: Option<&str>) -> Result<AnalysisReport> {
    let basis = basis_for(net, basis)?;
    let graph = build_coordinate_graph(net, &basis)?;
    let (source, parts) = match parts {
        Some(spec) => (PartsSource::Given, parse_partition(net, spec)?),
        None => (
            PartsSource::CoordinateGraph,
            component_partition(net, &graph),
        ),
    };
    let independence = verify_decomposition(net, &parts)?;
    if source == PartsSource::CoordinateGraph && !independence.independent {
        return Err(
            Error::Internal("coordinate-graph components are not independent".into()).into(),
        );
    }
    let all: Vec<usize> = (0..net.reaction_count()).collect();
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.into(),
        network: SubnetworkReport::build("N", net, net, &all),
        coordinate_graph: GraphReport::build(net, &graph),
        decomposition: DecompositionReport {
            source,
            trivial: parts.len() == 1,
            parts: part_reports(net, &parts)?,
            independence,
        },
    })
}

pub fn decompose(
    net: &Network,
    contains: Option<&str>,
    basis: Option<&str>,
) -> Result<DecomposeReport> {
    let basis = basis_for(net, basis)?;
    let found = crn_core::find_independent_decomposition_with_basis(net, &basis)?;
    let contains = match contains {
        None => None,
        Some(spec) => {
            let mut part = parse_labels(net, spec)?;
            part.sort_unstable();
            let rest: Vec<usize> = (0..net.reaction_count())
                .filter(|j| !part.contains(j))
                .collect();
            let independence = if rest.is_empty() {
                verify_decomposition(net, &[part.clone()])?
            } else {
                verify_decomposition(net, &[part.clone(), rest])?
            };
            Some(ContainsReport {
                reactions: part.iter().map(|&j| net.reaction_name(j)).collect(),
                found: independence.independent,
                independence,
            })
        }
    };
    Ok(DecomposeReport {
        schema_version: SCHEMA_VERSION.into(),
        basis: basis
            .basis_rows()
            .iter()
            .map(|&j| net.reaction_name(j))
            .collect(),
        trivial: found.is_none(),
        parts: found.map(|d| d.labels(net)).unwrap_or_default(),
        contains,
    })
}

pub fn check(net: &Network, parts: &str) -> Result<CheckReport> {
    let parts = parse_partition(net, parts)?;
    let independence = verify_decomposition(net, &parts)?;
    Ok(CheckReport {
        schema_version: SCHEMA_VERSION.into(),
        parts: parts
            .iter()
            .enumerate()
            .map(|(i, p)| PartLabels {
                name: part_name(i),
                reactions: p.iter().map(|&j| net.reaction_name(j)).collect(),
            })
            .collect(),
        independence,
    })
}

pub fn numbers(net: &Network, parts: Option<&str>) -> Result<NumbersReport> {
    let all: Vec<usize> = (0..net.reaction_count()).collect();
    let whole = SubnetworkReport::build("N", net, net, &all);
    let mut columns = vec![whole];
    if let Some(spec) = parts {
        columns.extend(part_reports(net, &parse_partition(net, spec)?)?);
    }
    Ok(NumbersReport {
        schema_version: SCHEMA_VERSION.into(),
        columns: columns
            .into_iter()
            .map(|c| NumbersColumn {
                name: c.name,
                reactions: c.reactions,
                numbers: c.numbers,
            })
            .collect(),
    })
}

fn evaluate(name: &str, net: &Network, kin: &Kinetics, x: &[f64], tol: f64) -> Result<Evaluation> {
    let f = crn_core::sfrf(net, kin, x)?;
    let flux = kin.flux(net, x)?;
    let max_abs_f = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let flux_scale = flux.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    Ok(Evaluation {
        name: name.into(),
        species: net.species().iter().map(|s| s.name.clone()).collect(),
        f,
        max_abs_f,
        flux_scale,
        steady: is_steady_state(net, kin, x, tol)?,
    })
}

pub fn steady_state(
    net: &Network,
    rates: &str,
    point: &str,
    parts: Option<&str>,
    tol: Option<&str>,
) -> Result<SteadyStateReport> {
    let tol = match tol {
        Some(raw) => parse_tolerance(raw)?,
        None => DEFAULT_STEADY_STATE_TOLERANCE,
    };
    let kin = Kinetics::mass_action(net, parse_rates(net, rates)?)?;
    let x = parse_point(net, point)?;
    let mut evaluations = vec![evaluate("N", net, &kin, &x, tol)?];
    if let Some(spec) = parts {
        for (i, p) in parse_partition(net, spec)?.iter().enumerate() {
            let sub = net.subnetwork(p)?;
            let species: Vec<usize> = sub
                .species()
                .iter()
                .map(|s| {
                    net.species_index(&s.name)
                        .expect("subnetwork species exist in parent")
                })
                .collect();
            let sub_x: Vec<f64> = species.iter().map(|&s| x[s]).collect();
            evaluations.push(evaluate(
                &part_name(i),
                &sub,
                &kin.restrict(p, &species),
                &sub_x,
                tol,
            )?);
        }
    }
    Ok(SteadyStateReport {
        schema_version: SCHEMA_VERSION.into(),
        tolerance: format!("{tol:e}"),
        evaluations,
    })
}

pub fn run(cli: Cli) -> Result<Output> {
    let ok = |stdout: String| Output { stdout, code: 0 };
    match cli.command {
        Command::Analyze {
            file,
            parts,
            basis,
            format,
        } => {
            let net = load(&file)?;
            let rep = analyze(&net, parts.as_deref(), basis.as_deref())?;
            Ok(ok(emit(format, &rep, AnalysisReport::render_text)?))
        }
        Command::Decompose {
            file,
            contains,
            basis,
            format,
        } => {
            let net = load(&file)?;
            let rep = decompose(&net, contains.as_deref(), basis.as_deref())?;
            let code = match &rep.contains {
                Some(c) if !c.found => 3,
                _ => 0,
            };
            Ok(Output {
                stdout: emit(format, &rep, DecomposeReport::render_text)?,
                code,
            })
        }
        Command::Check {
            file,
            parts,
            format,
        } => {
            let net = load(&file)?;
            let rep = check(&net, &parts)?;
            Ok(Output {
                code: if rep.independence.independent { 0 } else { 3 },
                stdout: emit(format, &rep, CheckReport::render_text)?,
            })
        }
        Command::Numbers {
            file,
            parts,
            format,
        } => {
            let net = load(&file)?;
            let rep = numbers(&net, parts.as_deref())?;
            Ok(ok(emit(format, &rep, NumbersReport::render_text)?))
        }
        Command::SteadyState {
            file,
            rates,
            point,
            parts,
            tol,
            format,
        } => {
            let net = load(&file)?;
            let rep = steady_state(&net, &rates, &point, parts.as_deref(), tol.as_deref())?;
            Ok(Output {
                code: if rep.all_steady() { 0 } else { 3 },
                stdout: emit(format, &rep, SteadyStateReport::render_text)?,
            })
        }
    }
}

/// Parses arguments and runs, folding every failure into an exit code and
/// a stderr message.
pub fn run_args<I, T>(args: I) -> (Output, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                (
                    Output {
                        stdout: rendered,
                        code,
                    },
                    String::new(),
                )
            } else {
                (
                    Output {
                        stdout: String::new(),
                        code,
                    },
                    rendered,
                )
            };
        }
    };
    match run(cli) {
        Ok(out) => (out, String::new()),
        Err(e) => (
            Output {
                stdout: String::new(),
                code: e.exit_code(),
            },
            format!("error: {e}\n"),
        ),
    }
}
