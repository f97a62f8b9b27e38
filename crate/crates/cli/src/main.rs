//! `testability`: command-line front end over `testability-core`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use testability_core::construct::{graph_direct_product, semigroup_direct_product};
use testability_core::graph::{analyze_graph, complete_with_sink, transition_semigroup};
use testability_core::io::{
    parse_graph, parse_semigroup, render_report, write_graph, write_semigroup, ReportFormat,
};
use testability_core::semigroup::analyze_semigroup;
use testability_core::{Error, Limits, Property, Request, TransitionGraph};

const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "testability",
    version,
    about = "Decide testability properties of automata and finite semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a transition graph ("labels nodes" header, one row per node).
    AnalyzeGraph {
        file: PathBuf,
        #[command(flatten)]
        common: AnalysisArgs,
        /// Also decide k-testability at this width.
        #[arg(long)]
        k: Option<usize>,
        /// Counting threshold for the threshold order (used with --order).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        /// Cap on transition-semigroup size.
        #[arg(long, default_value_t = Limits::default().max_elements)]
        max_elements: usize,
    },
    /// Analyze a semigroup ("elements generators" header, Cayley rows).
    AnalyzeSemigroup {
        file: PathBuf,
        #[command(flatten)]
        common: AnalysisArgs,
    },
    /// Write the direct product of two graphs.
    ProductGraph {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the direct product of two semigroups.
    ProductSemigroup {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the transition semigroup of a graph.
    TransitionSemigroup {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = Limits::default().max_elements)]
        max_elements: usize,
    },
}

#[derive(Args, Debug)]
struct AnalysisArgs {
    /// Comma-separated property names or "all":
    /// lt, slt, right-lt, left-lt, loc-idem, ltt, pt, aperiodic, assoc, 1t.
    #[arg(long, default_value = "all", value_parser = parse_props)]
    props: PropList,
    /// Search for the order of local testability.
    #[arg(long)]
    order: bool,
    #[arg(long, default_value_t = Limits::default().k_max)]
    kmax: usize,
    /// Profile-state budget of the k-testability oracle.
    #[arg(long, default_value_t = Limits::default().budget)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with 3 when any result is unknown because of a budget.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Clone)]
struct PropList(Vec<Property>);

fn parse_props(s: &str) -> Result<PropList, String> {
    if s == "all" {
        return Ok(PropList(Property::ALL.to_vec()));
    }
    let mut props = Vec::new();
    for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        let p =
            Property::from_short_name(name).ok_or_else(|| format!("unknown property '{name}'"))?;
        if !props.contains(&p) {
            props.push(p);
        }
    }
    if props.is_empty() {
        return Err("empty property list".into());
    }
    Ok(PropList(props))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Machine => ReportFormat::Machine,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::TooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn in_file(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn load_graph(path: &Path) -> Result<TransitionGraph, Failure> {
    parse_graph(&read(path)?).map_err(in_file(path))
}

/// Routes undefined transitions to a fresh sink, telling the user.
fn completed(path: &Path, gr: TransitionGraph) -> TransitionGraph {
    if gr.is_complete() {
        return gr;
    }
    let full = complete_with_sink(&gr);
    eprintln!(
        "note: {}: undefined transitions routed to sink node {}",
        path.display(),
        gr.node_count()
    );
    full
}

fn emit(report: &testability_core::PropertyReport, args: &AnalysisArgs) -> Result<(), Failure> {
    print!("{}", render_report(report, args.format.into()));
    if args.strict && report.has_unknown() {
        return Err(Failure {
            code: EXIT_BUDGET,
            message: "budget exceeded: some results are unknown".into(),
        });
    }
    Ok(())
}

fn limits(args: &AnalysisArgs, t: usize, max_elements: usize) -> Limits {
    Limits {
        k_max: args.kmax,
        t,
        budget: args.budget,
        max_elements,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::AnalyzeGraph {
            file,
            common,
            k,
            t,
            max_elements,
        } => {
            let gr = load_graph(&file)?;
            let mut request = Request {
                properties: common.props.0.clone(),
                order: common.order,
            };
            if let Some(k) = k {
                request.properties.push(Property::KTestability(k));
            }
            let limits = limits(&common, t as usize, max_elements);
            let report = analyze_graph(&gr, &file.display().to_string(), &request, &limits)
                .map_err(in_file(&file))?;
            emit(&report, &common)
        }
        Command::AnalyzeSemigroup { file, common } => {
            let s = parse_semigroup(&read(&file)?).map_err(in_file(&file))?;
            let request = Request {
                properties: common.props.0.clone(),
                order: common.order,
            };
            let limits = limits(&common, 1, Limits::default().max_elements);
            let report = analyze_semigroup(&s, &file.display().to_string(), &request, &limits)
                .map_err(in_file(&file))?;
            emit(&report, &common)
        }
        Command::ProductGraph { a, b, output } => {
            let ga = completed(&a, load_graph(&a)?);
            let gb = completed(&b, load_graph(&b)?);
            write(&output, &write_graph(&graph_direct_product(&ga, &gb)?))
        }
        Command::ProductSemigroup { a, b, output } => {
            let sa = parse_semigroup(&read(&a)?).map_err(in_file(&a))?;
            let sb = parse_semigroup(&read(&b)?).map_err(in_file(&b))?;
            write(
                &output,
                &write_semigroup(&semigroup_direct_product(&sa, &sb)?),
            )
        }
        Command::TransitionSemigroup {
            graph,
            output,
            max_elements,
        } => {
            let gr = completed(&graph, load_graph(&graph)?);
            let ts = transition_semigroup(&gr, max_elements).map_err(in_file(&graph))?;
            write(&output, &write_semigroup(&ts.semigroup))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
