//! `icef` command-line tool.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 total conflict,
//! 4 non-convergence, 5 I/O error, 6 invalid dataset schema.

mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icef::classify::{
    load_dataset, monte_carlo_evaluate, sweep_evaluate, write_accuracy_table, write_sweep_table,
    ClassifierConfig, EvaluationReport, Schema,
};
use icef::divergence::{alpha_curve, default_alphas, moving_set_curve, write_curve};
use icef::{
    build_edmm, build_eem, builtin, icef, Document, Error, FusionMethod, IcefConfig,
    InitialProbability, MeasureKind, TraceMode,
};

#[derive(Parser)]
#[command(
    name = "icef",
    version,
    about = "Credible evidence fusion for Dempster-Shafer mass functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse an evidence document and print masses, pignistic probabilities and the decision.
    Fuse {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::IcefPbagd)]
        method: Method,
        #[command(flatten)]
        fusion: FusionArgs,
        /// Print full precision instead of 4 decimal places.
        #[arg(long)]
        full_precision: bool,
    },
    /// Write the per-iteration table of an iterative fusion run.
    Trace {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        fusion: FusionArgs,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        full_precision: bool,
    },
    /// Print evidence distance matrices, or the `alpha-sweep` / `moving-set` divergence curves.
    Divergence {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Measure::Pbagd)]
        measure: Measure,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        full_precision: bool,
    },
    /// Evaluate fusion methods on a labelled dataset with the interval classifier.
    Bench(BenchArgs),
    /// Print a built-in evidence set as a document.
    Builtin {
        /// One of the built-in evidence set names.
        name: String,
    },
}

#[derive(Args)]
struct Input {
    /// Evidence document (TOML).
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Use a built-in evidence set instead of a file.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Clone, Copy)]
struct FusionArgs {
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, value_enum, default_value_t = Init::Uniform)]
    init: Init,
    #[arg(long, value_enum, default_value_t = Measure::Pbagd)]
    measure: Measure,
}

#[derive(Args)]
struct BenchArgs {
    dataset: PathBuf,
    /// Label column name.
    #[arg(long, required_unless_present = "schema", conflicts_with = "schema")]
    label: Option<String>,
    /// Schema descriptor (TOML with `label`, optional `attributes` and `delimiter`).
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Comma-separated attribute columns to use.
    #[arg(long, value_delimiter = ',')]
    attributes: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Mode::Montecarlo)]
    mode: Mode,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Method::Dcr, Method::Murphy, Method::IcefPbagd])]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 5.0)]
    lambda: f64,
    #[arg(long, default_value_t = 200.0)]
    tau: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dcr,
    Murphy,
    IcefPbagd,
    CefAvg,
    CefEig,
}

impl From<Method> for FusionMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Dcr => FusionMethod::Dcr,
            Method::Murphy => FusionMethod::Murphy,
            Method::IcefPbagd => FusionMethod::Icef,
            Method::CefAvg => FusionMethod::CefAverage,
            Method::CefEig => FusionMethod::CefEigen,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Init {
    Uniform,
    Eem,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Pbagd,
    Bjs,
}

impl From<Measure> for MeasureKind {
    fn from(m: Measure) -> Self {
        match m {
            Measure::Pbagd => MeasureKind::Pbagd(Default::default()),
            Measure::Bjs => MeasureKind::Bjs(Default::default()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sweep,
    Montecarlo,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::TotalConflict(_) => 3,
            Error::NotConverged { .. } => 4,
            Error::Io(_) => 5,
            Error::Csv(c) if c.is_io_error() => 5,
            Error::Schema(_) => 6,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn at_path(e: Error, path: &Path) -> Failure {
    let f = Failure::from(e);
    Failure {
        message: format!("{}: {}", path.display(), f.message),
        ..f
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Fuse {
            input,
            method,
            fusion,
            full_precision,
        } => fuse(&input, method, fusion, precision(full_precision)),
        Command::Trace {
            input,
            fusion,
            out,
            full_precision,
        } => trace(&input, fusion, out.as_deref(), precision(full_precision)),
        Command::Divergence {
            input,
            measure,
            out,
            full_precision,
        } => divergence(&input, measure, out.as_deref(), precision(full_precision)),
        Command::Bench(args) => bench(&args),
        Command::Builtin { name } => {
            let doc = builtin_document(&name)?;
            print!("{}", doc.to_toml()?);
            Ok(())
        }
    }
}

fn precision(full: bool) -> Option<usize> {
    (!full).then_some(4)
}

fn builtin_document(name: &str) -> CliResult<Document> {
    builtin::by_name(name)
        .map(Document::from)
        .ok_or_else(|| Failure {
            code: 2,
            message: format!(
                "unknown builtin `{name}`; available: {}",
                builtin::NAMES.join(", ")
            ),
        })
}

fn load_input(input: &Input) -> CliResult<Document> {
    match (&input.file, &input.builtin) {
        (Some(path), _) => Document::load(path).map_err(|e| at_path(e, path)),
        (None, Some(name)) => builtin_document(name),
        (None, None) => unreachable!("clap requires an input"),
    }
}

fn icef_config(doc: &Document, args: FusionArgs) -> IcefConfig {
    let mut cfg = IcefConfig {
        measure: args.measure.into(),
        init: match args.init {
            Init::Uniform => InitialProbability::Uniform,
            Init::Eem => InitialProbability::FromEem,
        },
        ..IcefConfig::default()
    };
    doc.config.apply(&mut cfg);
    if let Some(tau) = args.tau {
        cfg.tau = tau;
    }
    if let Some(delta) = args.delta {
        cfg.delta = delta;
    }
    if let Some(max_iter) = args.max_iter {
        cfg.max_iter = max_iter;
    }
    cfg
}

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn fuse(input: &Input, method: Method, args: FusionArgs, precision: Option<usize>) -> CliResult {
    let doc = load_input(input)?;
    let cfg = icef_config(&doc, args);
    let mut out = io::stdout().lock();
    if method == Method::IcefPbagd {
        let run = icef(&doc.evidence, &doc.frame, &cfg)?;
        if !run.trace.converged {
            let hint = match &input.file {
                Some(p) => format!("icef trace {} --out trace.csv", p.display()),
                None => format!(
                    "icef trace --builtin {} --out trace.csv",
                    input.builtin.as_deref().unwrap_or_default()
                ),
            };
            let err: Failure = run.require_converged().unwrap_err().into();
            return Err(Failure {
                message: format!("{}; inspect the iterations with `{hint}`", err.message),
                ..err
            });
        }
        let mut result = run.result;
        result.method = FusionMethod::Icef.name().to_string();
        render::fusion(&mut out, &doc, &result, precision)?;
        render::credibility(&mut out, &doc.names, &result, precision)?;
        writeln!(out, "converged after {} steps", run.trace.steps_used)?;
    } else {
        let mut result = FusionMethod::from(method).fuse(&doc.evidence, &doc.frame, &cfg)?;
        result.method = FusionMethod::from(method).name().to_string();
        render::fusion(&mut out, &doc, &result, precision)?;
        if matches!(method, Method::CefAvg | Method::CefEig) {
            render::credibility(&mut out, &doc.names, &result, precision)?;
        }
    }
    Ok(())
}

fn trace(
    input: &Input,
    args: FusionArgs,
    out: Option<&Path>,
    precision: Option<usize>,
) -> CliResult {
    let doc = load_input(input)?;
    let cfg = IcefConfig {
        trace: TraceMode::Full,
        ..icef_config(&doc, args)
    };
    let run = icef(&doc.evidence, &doc.frame, &cfg)?;
    let mut w = open_output(out)?;
    run.trace
        .write_table(&doc.frame, &doc.names, &mut w, precision)?;
    w.flush()?;
    if !run.trace.converged {
        return Err(run.require_converged().unwrap_err().into());
    }
    Ok(())
}

fn divergence(
    input: &Input,
    measure: Measure,
    out: Option<&Path>,
    precision: Option<usize>,
) -> CliResult {
    let ts: Vec<usize> = (1..=10).collect();
    let mut w = open_output(out)?;
    match input.builtin.as_deref() {
        Some("alpha-sweep" | "example2") => {
            let points = alpha_curve::<f64>(&default_alphas(), &ts)?;
            write_curve(&points, &mut w, precision)?;
        }
        Some("moving-set" | "example3") => {
            let kind = MeasureKind::from(measure);
            let points = moving_set_curve::<f64>(kind.as_measure(), &ts)?;
            write_curve(&points, &mut w, precision)?;
        }
        _ => {
            let doc = load_input(input)?;
            let kind = MeasureKind::from(measure);
            if doc.evidence.len() >= 2 {
                let edmm = build_edmm(&doc.evidence, kind.as_measure())?;
                writeln!(w, "# EDMM ({})", edmm.measure())?;
                edmm.write_table(&doc.names, &mut w, precision)?;
                writeln!(w)?;
            }
            let eem = build_eem(&doc.evidence, &doc.frame, kind.as_measure())?;
            writeln!(w, "# EEM ({})", eem.measure())?;
            eem.write_table(&doc.names, &mut w, precision)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn bench(args: &BenchArgs) -> CliResult {
    let mut schema = match (&args.schema, &args.label) {
        (Some(path), _) => Schema::load(path).map_err(|e| at_path(e, path))?,
        (None, Some(label)) => Schema::with_label(label.clone()),
        (None, None) => unreachable!("clap requires a label or schema"),
    };
    if let Some(attrs) = &args.attributes {
        schema.attributes = Some(attrs.clone());
    }
    let ds = load_dataset(&args.dataset, &schema).map_err(|e| at_path(e, &args.dataset))?;
    let methods: Vec<FusionMethod> = args.methods.iter().map(|&m| m.into()).collect();
    let cfg = ClassifierConfig {
        lambda: args.lambda,
        icef: IcefConfig {
            tau: args.tau,
            ..ClassifierConfig::default().icef
        },
    };
    let summary: Vec<EvaluationReport> = match args.mode {
        Mode::Montecarlo => {
            let reports = monte_carlo_evaluate(&ds, args.trials, args.seed, &methods, &cfg)?;
            if let Some(path) = &args.out {
                let mut w = open_output(Some(path))?;
                write_accuracy_table(&reports, &mut w, 4)?;
                w.flush()?;
            }
            reports
        }
        Mode::Sweep => {
            let reports = sweep_evaluate(&ds, &methods, &cfg)?;
            let mut w = open_output(args.out.as_deref())?;
            write_sweep_table(&reports, &mut w, 4)?;
            w.flush()?;
            if args.out.is_none() {
                println!();
            }
            reports
                .chunks(51)
                .map(|chunk| {
                    chunk[1..]
                        .iter()
                        .fold(chunk[0].clone(), |acc, r| acc.merge(r))
                })
                .collect()
        }
    };
    let mut out = io::stdout().lock();
    write_accuracy_table(&summary, &mut out, 4)?;
    Ok(())
}
