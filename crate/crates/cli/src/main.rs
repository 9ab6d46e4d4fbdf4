//! `nestoq`: h-polynomials of nestohedra from the command line.
//!
//! Exit status: 0 on success (documented errata included), 1 when a
//! verification check disagrees unexpectedly, 2 on usage or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nestoq::bintree::q_narayana;
use nestoq::buildset::{self, FAMILY_NAMES};
use nestoq::combinat::posets_from_json;
use nestoq::families::snk_closed_form;
use nestoq::graph::h_graph;
use nestoq::verify::{self, parse_suites};
use nestoq::{
    euler_mahonian, h_polynomial, qh_from_posets, BuildingSet, Graph, Polynomial, Style, Var, Vars,
};

#[derive(Parser)]
#[command(name = "nestoq", version)]
#[command(about = "Exact t/q/u h-polynomials of nestohedra via B-tree enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the h-polynomial of a family, building set, graph or poset list
    Poly(PolyArgs),
    /// Run the verification suites and write the errata report
    Verify(VerifyArgs),
    /// Emit a table of polynomials as CSV
    Table(TableArgs),
    /// Sum t^des q^maj over a list of cone posets
    Posets(PosetArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Named building set family
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FAMILY_NAMES))]
    family: Option<String>,

    #[arg(long)]
    n: Option<u32>,

    /// Second parameter of `snk`
    #[arg(long)]
    k: Option<u32>,

    /// Building set JSON: {"n": 3, "sets": [[1],[2],...]}
    #[arg(long, value_name = "PATH")]
    building_set: Option<PathBuf>,

    /// Graph file: a header line `n <N>`, then one `i j` edge per line
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,

    /// Poset list JSON: [{"n": 3, "covers": [[1,2],[3,2]]}, ...]
    #[arg(long, value_name = "PATH")]
    posets: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = VarsArg::Tq)]
    vars: VarsArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suites, or `all`
    #[arg(long, default_value = "all")]
    suite: String,

    #[arg(long, default_value_t = 6)]
    max_n: u32,

    /// Where to write the JSON report; standard output by default
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: TableFamily,

    #[arg(long, default_value_t = 6)]
    max_n: u32,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long, value_name = "PATH")]
    posets: PathBuf,

    #[arg(long, value_enum, default_value_t = VarsArg::Tq)]
    vars: VarsArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarsArg {
    T,
    Tq,
    Tqu,
}

impl From<VarsArg> for Vars {
    fn from(v: VarsArg) -> Self {
        match v {
            VarsArg::T => Vars::T,
            VarsArg::Tq => Vars::TQ,
            VarsArg::Tqu => Vars::TQU,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
    Json,
    Csv,
}

impl From<FormatArg> for Style {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => Style::Plain,
            FormatArg::Latex => Style::Latex,
            FormatArg::Json => Style::Json,
            FormatArg::Csv => Style::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum TableFamily {
    Narayana,
    EulerMahonian,
    Snk,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(p: &Polynomial, format: FormatArg) -> Result<()> {
    let mut out = p.format(format.into());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn poset_polynomial(path: &Path, vars: VarsArg) -> Result<Polynomial> {
    let text = read(path)?;
    let posets = posets_from_json(&text).with_context(|| format!("in {}", path.display()))?;
    let h = qh_from_posets(&posets)?;
    Ok(match vars {
        VarsArg::T => h.specialize(Var::Q),
        VarsArg::Tq => h,
        VarsArg::Tqu => bail!("--vars tqu needs a building set or graph; poset lists carry no mu"),
    })
}

fn run_poly(args: PolyArgs) -> Result<()> {
    let sources = [
        args.family.is_some(),
        args.building_set.is_some(),
        args.graph.is_some(),
        args.posets.is_some(),
    ];
    if sources.iter().filter(|&&s| s).count() != 1 {
        bail!("give exactly one of --family, --building-set, --graph, --posets");
    }
    let vars = Vars::from(args.vars);
    let h = if let Some(name) = &args.family {
        let n = args.n.context("--family needs --n")?;
        let b = buildset::family(name, n, args.k)?;
        h_polynomial(&b, vars)?
    } else if let Some(path) = &args.building_set {
        let b = BuildingSet::from_json_str(&read(path)?)
            .with_context(|| format!("in {}", path.display()))?;
        h_polynomial(&b, vars)?
    } else if let Some(path) = &args.graph {
        let g = Graph::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        h_graph(&g, vars)?
    } else {
        poset_polynomial(args.posets.as_deref().expect("one source"), args.vars)?
    };
    emit(&h, args.format)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let suites = parse_suites(&args.suite)?;
    let report = verify::run(&suites, args.max_n)?;
    let json = serde_json::to_string_pretty(&report.to_json())? + "\n";
    match &args.report {
        Some(path) => {
            fs::write(path, json).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => io::stdout().write_all(json.as_bytes())?,
    }
    eprint!("{}", report.summary());
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_table(args: TableArgs) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout());
    match args.family {
        TableFamily::Narayana => {
            w.write_record(["n", "k", "polynomial"])?;
            for n in 1..=args.max_n as usize {
                for k in 1..=n {
                    let p = q_narayana(n, k)?;
                    w.write_record([n.to_string(), k.to_string(), p.to_string()])?;
                }
            }
        }
        TableFamily::EulerMahonian => {
            w.write_record(["n", "polynomial"])?;
            for n in 1..=args.max_n {
                w.write_record([n.to_string(), euler_mahonian(n).to_string()])?;
            }
        }
        TableFamily::Snk => {
            w.write_record(["n", "k", "polynomial"])?;
            for n in 2..=args.max_n {
                for k in 2..=n {
                    w.write_record([
                        n.to_string(),
                        k.to_string(),
                        snk_closed_form(n, k)?.to_string(),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poly(args) => run_poly(args).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args).map(|()| ExitCode::SUCCESS),
        Command::Posets(args) => poset_polynomial(&args.posets, args.vars)
            .and_then(|h| emit(&h, args.format))
            .map(|()| ExitCode::SUCCESS),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
