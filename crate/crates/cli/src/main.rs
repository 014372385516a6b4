//! `twistlab`: batch front end for residual analysis, Pink-Lie filtrations,
//! conjugate self-twists, level detection and the verification suite.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regex::Regex;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use twistlab::cst::{fixed_subring, reduce_twists, twist_group_with, TwistSearch};
use twistlab::io::{load_rep, parse_conjugators, parse_elem, Caps, LoadedRep, RepInput};
use twistlab::pink::{decompose_lie, generated_subring, level_detector, pink_filtration, span_to_json, Base, Decomposability, Subring};
use twistlab::residual::residual_report;
use twistlab::ring::ring_automorphisms;
use twistlab::suite::{instances, run_instances, Options};

const DEFAULT_DEPTH: usize = 3;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Pseudorepresentations over finite local rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input JSON file, `-` for stdin, or an inline JSON object.
    #[arg(long)]
    input: String,
    /// Enumeration limits, e.g. `ring=65536,group=100000`.
    #[arg(long)]
    caps: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Residual report: projective class, E, regularity, twists, Pi_0.
    Analyze(Common),
    /// Pink-Lie filtration L_1, ..., L_depth of the image.
    Pinklie {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Conjugate self-twists and their reduction.
    Cst(Common),
    /// Largest congruence level contained in the image.
    Level {
        #[command(flatten)]
        common: Common,
        /// JSON array of matrices tried as conjugators.
        #[arg(long)]
        conjugators: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        /// Only run instances whose id or tags match.
        #[arg(long)]
        filter: Option<String>,
        /// Corrupt one ring multiplication entry (negative control).
        #[arg(long)]
        perturb: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] twistlab::error::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("invalid filter: {0}")]
    Filter(#[from] regex::Error),
    #[error("{failed} of {total} instances failed")]
    Verification { failed: usize, total: usize },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Core(e) if e.is_cap() => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        use twistlab::error::Error as E;
        match self {
            CliError::Core(e) if e.is_cap() => "cap_exceeded",
            CliError::Core(E::Input(_)) | CliError::Core(E::Ring(_)) => "input",
            CliError::Core(E::Precondition(_)) => "precondition",
            CliError::Core(_) => "analysis",
            CliError::Read { .. } | CliError::Write { .. } => "io",
            CliError::Filter(_) | CliError::Usage(_) => "usage",
            CliError::Verification { .. } => "verification",
        }
    }

    fn to_json(&self) -> String {
        let body = ErrorBody { kind: self.kind(), message: self.to_string(), exit_code: self.exit_code() };
        serde_json::to_string(&ErrorReport { error: body }).expect("error serializes")
    }
}

/// Shape of the single line written to stderr on failure.
#[derive(Serialize)]
struct ErrorReport {
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    exit_code: u8,
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(spec: &str) -> Result<String> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|source| CliError::Read { path: "stdin".into(), source })?;
        return Ok(s);
    }
    fs::read_to_string(spec).map_err(|source| CliError::Read { path: spec.into(), source })
}

fn load(common: &Common) -> Result<LoadedRep> {
    let caps = match &common.caps {
        Some(c) => Caps::parse(c)?,
        None => Caps::default(),
    };
    let input = RepInput::parse(&read_input(&common.input)?)?;
    Ok(load_rep(&input, &caps)?)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "stdout".into(), source })
        }
    }
}

fn emit_json(mut report: Value, command: &str, loaded: &LoadedRep, output: &Option<PathBuf>) -> Result<()> {
    report["command"] = json!(command);
    report["input"] = loaded.input.to_json();
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    emit(&text, output)
}

fn analyze(common: &Common) -> Result<()> {
    let loaded = load(common)?;
    let rbar = loaded.rep.residual();
    let mut report = residual_report(&rbar)?;
    report["ring"] = json!(loaded.ring.spec().to_string());
    report["group_order"] = json!(loaded.rep.group().len());
    emit_json(report, "analyze", &loaded, &common.output)
}

fn pinklie(common: &Common, depth: Option<usize>) -> Result<()> {
    let loaded = load(common)?;
    let depth = depth.or(loaded.input.depth).unwrap_or(DEFAULT_DEPTH);
    if depth == 0 {
        return Err(CliError::Usage("depth must be at least 1".into()));
    }
    let levels = pink_filtration(loaded.rep.group(), depth)?;
    let out: Vec<Value> = levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let dec = decompose_lie(l);
            json!({
                "n": k + 1,
                "cardinality": l.cardinality() as u64,
                "decomposable": dec.is_decomposable(),
                "strong": dec.kind == Decomposability::Strong,
                "I": dec.i.as_ref().map(span_to_json),
                "B": dec.b.as_ref().map(span_to_json),
                "C": dec.c.as_ref().map(span_to_json),
                "basis": l.to_json()["basis"].clone(),
            })
        })
        .collect();
    emit_json(json!({ "depth": depth, "levels": out }), "pinklie", &loaded, &common.output)
}

fn cst(common: &Common) -> Result<()> {
    let loaded = load(common)?;
    let r = &loaded.ring;
    let pr = loaded.rep.pseudo();
    let opts = match &loaded.input.coefficient_subring {
        None => TwistSearch::default(),
        Some(gens) => {
            let gens = gens.iter().map(|g| parse_elem(r, g)).collect::<std::result::Result<Vec<_>, _>>()?;
            let sub = generated_subring(r, &gens, Base::Prime)?;
            TwistSearch { coefficient_subring: Some(sub.elements()) }
        }
    };
    let auts = ring_automorphisms(r).map_err(twistlab::error::Error::from)?;
    let tg = twist_group_with(&pr, &auts, &opts)?;
    let red = reduce_twists(&tg, &pr)?;
    let fixed = fixed_subring(r, &tg.sigmas());
    let report = json!({
        "pairs": tg.pairs().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "abelian": tg.is_abelian(),
        "kernel_size": red.kernel_size(),
        "raw_kernel_size": red.raw_kernel.len(),
        "reduced_image_size": red.image.len(),
        "fixed_subring_basis": fixed.basis().iter().map(|a| r.coeffs(*a)).collect::<Vec<_>>(),
        "fixed_subring_cardinality": fixed.cardinality() as u64,
    });
    emit_json(report, "cst", &loaded, &common.output)
}

fn level(common: &Common, conjugators: &Option<PathBuf>) -> Result<()> {
    let loaded = load(common)?;
    let r = &loaded.ring;
    let conj = match conjugators {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
            Some(parse_conjugators(r, &text)?)
        }
        None => None,
    };
    let s = Subring::whole(r);
    let rep = level_detector(loaded.rep.group(), &s, conj.as_deref())?;
    emit_json(rep.to_json(), "level", &loaded, &common.output)
}

fn verify(filter: &Option<String>, perturb: bool, threads: Option<usize>, output: &Option<PathBuf>) -> Result<()> {
    let re = filter.as_deref().map(Regex::new).transpose()?;
    let all = instances();
    let selected: Vec<_> = all.iter().filter(|i| re.as_ref().is_none_or(|re| re.is_match(&i.filter_text()))).collect();
    if selected.is_empty() {
        return Err(CliError::Usage("filter matches no instance".into()));
    }
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let reports = run_instances(&selected, &Options { perturb }, threads);
    let failed = reports.iter().filter(|r| !r.passed).count();
    let mut text: String = reports.iter().map(|r| r.line() + "\n").collect();
    text.push_str(&format!("{} passed, {} failed\n", reports.len() - failed, failed));
    emit(&text, output)?;
    if failed > 0 {
        return Err(CliError::Verification { failed, total: reports.len() });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(c) => analyze(&c),
        Command::Pinklie { common, depth } => pinklie(&common, depth),
        Command::Cst(c) => cst(&c),
        Command::Level { common, conjugators } => level(&common, &conjugators),
        Command::Verify { filter, perturb, threads, output } => verify(&filter, perturb, threads, &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
