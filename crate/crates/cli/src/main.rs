mod codefile;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stabcat_core::stabilizer::max_admissible_weight;
use stabcat_core::{
    construct, construct_conv, simulate_depolarizing, verify, BlockCode, ConcatenatedCode,
    ConstructionError, ConstructionSpec, ConvolutionalCode, DecodeError, DistanceStatus,
    PauliFilter, PauliOperator, StabilizerError, TwoStageDecoder,
};
use thiserror::Error;

use crate::codefile::{CodeDefinition, CodeFileError};
use crate::report::ReportDocument;

const DEFAULT_FRAMES: usize = 3;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    CodeFile {
        path: PathBuf,
        source: CodeFileError,
    },
    #[error("unknown code {0:?}; expected a file or one of repetition-N, parity-N, hamming74, trivial-N (optionally with -dual)")]
    UnknownCode(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "stabcat",
    version,
    about = "Build and check concatenated stabilizer codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    PureX,
    PureZ,
}

impl From<FilterArg> for PauliFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => PauliFilter::All,
            FilterArg::PureX => PauliFilter::PureX,
            FilterArg::PureZ => PauliFilter::PureZ,
        }
    }
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Classical code: a file path or a built-in name such as hamming74 or repetition-3-dual.
    #[arg(long)]
    c1: String,
    /// Length of the inner repetition code.
    #[arg(long)]
    d2: usize,
    /// Frames used to terminate a convolutional code.
    #[arg(long)]
    conv_frames: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List built-in classical codes with their parameters.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print stabilizer generators and logical operators.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print operators as `X1 Z4` instead of `XIIZ`.
        #[arg(long)]
        indexed: bool,
    },
    /// Check the claimed rate and distance against exhaustive search.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        wmax: Option<usize>,
        /// Exit with status 1 unless every claim is confirmed exactly.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Leave out timing so repeated runs give identical output.
        #[arg(long)]
        deterministic: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every error up to a weight.
    Sweep {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        wmax: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive minimum distance.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        wmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte Carlo logical error rate of the two-stage decoder.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn builtin(name: &str) -> Option<BlockCode> {
    if let Some(base) = name.strip_suffix("-dual") {
        return builtin(base).map(|c| c.dual());
    }
    if name == "hamming74" {
        return Some(BlockCode::hamming74());
    }
    let (family, n) = name.rsplit_once('-')?;
    let n: usize = n.parse().ok()?;
    match family {
        "repetition" => BlockCode::repetition(n).ok(),
        "parity" => BlockCode::parity(n).ok(),
        "trivial" => BlockCode::trivial(n).ok(),
        _ => None,
    }
}

fn load(arg: &str) -> Result<CodeDefinition, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        return codefile::parse(&text).map_err(|source| CliError::CodeFile {
            path: path.to_owned(),
            source,
        });
    }
    builtin(arg)
        .map(CodeDefinition::Block)
        .ok_or_else(|| CliError::UnknownCode(arg.to_string()))
}

/// The resolved input plus a canonical text form used for the report digest.
struct Input {
    spec: ConstructionSpec,
    name: String,
    canonical: String,
}

fn resolve(args: &CodeArgs) -> Result<Input, CliError> {
    let definition = load(&args.c1)?;
    let mut name = definition.name().to_string();
    let (spec, canonical) = match definition {
        CodeDefinition::Block(code) => {
            if args.conv_frames.is_some() {
                return Err(CliError::Usage(
                    "--conv-frames needs a convolutional code".into(),
                ));
            }
            let rows: Vec<String> = code
                .generator()
                .rows()
                .iter()
                .map(|r| r.to_string())
                .collect();
            let canonical = format!("block\n{}\nd2={}", rows.join("\n"), args.d2);
            (ConstructionSpec::block(code, args.d2), canonical)
        }
        CodeDefinition::Convolutional { code, .. } => {
            let frames = args.conv_frames.unwrap_or(DEFAULT_FRAMES);
            name = format!("{name}-L{frames}");
            let canonical = format!(
                "conv\n{}\nframes={frames}\nd2={}",
                conv_polys(&code),
                args.d2
            );
            (
                ConstructionSpec::convolutional(code, frames, args.d2),
                canonical,
            )
        }
    };
    Ok(Input {
        spec,
        name,
        canonical,
    })
}

fn conv_polys(code: &ConvolutionalCode) -> String {
    (0..code.k())
        .map(|i| {
            (0..code.n())
                .map(|j| code.polynomial(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn build(input: &Input) -> Result<ConcatenatedCode, CliError> {
    Ok(match &input.spec.c1 {
        stabcat_core::ClassicalInput::Block(code) => construct(code, input.spec.d2)?,
        stabcat_core::ClassicalInput::Convolutional { code, frames } => {
            construct_conv(code, *frames, input.spec.d2)?.0
        }
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    n: usize,
    k: usize,
    d: Option<usize>,
    d_perp: Option<usize>,
}

fn catalog(format: Format) -> Result<(), CliError> {
    let mut codes = Vec::new();
    for n in 1..=8 {
        codes.push(BlockCode::repetition(n).expect("n >= 1"));
    }
    for n in 3..=8 {
        codes.push(BlockCode::parity(n).expect("n >= 2"));
    }
    codes.push(BlockCode::hamming74());
    let duals: Vec<_> = codes
        .iter()
        .map(BlockCode::dual)
        .filter(|d| d.k() > 0)
        .collect();
    codes.extend(duals);

    let mut entries = Vec::new();
    for c in &codes {
        entries.push(CatalogEntry {
            name: c.name().to_string(),
            n: c.n(),
            k: c.k(),
            d: c.min_distance().map_err(ConstructionError::from)?,
            d_perp: c.dual_distance().map_err(ConstructionError::from)?,
        });
    }
    match format {
        Format::Json => print_json(&entries)?,
        Format::Text => {
            let opt = |d: Option<usize>| d.map_or("-".to_string(), |v| v.to_string());
            println!(
                "{:<18} {:>3} {:>3} {:>3} {:>6}",
                "name", "n", "k", "d", "d_perp"
            );
            for e in &entries {
                println!(
                    "{:<18} {:>3} {:>3} {:>3} {:>6}",
                    e.name,
                    e.n,
                    e.k,
                    opt(e.d),
                    opt(e.d_perp)
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct LogicalJson {
    x: String,
    z: String,
}

#[derive(Serialize)]
struct ConstructJson {
    name: String,
    n: usize,
    k: usize,
    d2: usize,
    generators: Vec<String>,
    logicals: Vec<LogicalJson>,
    block_logicals_valid: bool,
}

fn construct_cmd(input: &Input, format: Format, indexed: bool) -> Result<(), CliError> {
    let built = build(input)?;
    let code = built.code();
    let show = |p: &PauliOperator| if indexed { p.indexed() } else { p.to_string() };
    let doc = ConstructJson {
        name: input.name.clone(),
        n: code.n(),
        k: code.k(),
        d2: built.d2(),
        generators: code.generators().iter().map(show).collect(),
        logicals: code
            .logicals()
            .iter()
            .map(|l| LogicalJson {
                x: show(l.x()),
                z: show(l.z()),
            })
            .collect(),
        block_logicals_valid: built.block_logicals_valid(),
    };
    match format {
        Format::Json => print_json(&doc)?,
        Format::Text => {
            println!(
                "[[{}, {}]] from {} with d2 = {}",
                doc.n, doc.k, doc.name, doc.d2
            );
            println!("generators ({}):", doc.generators.len());
            for (i, g) in doc.generators.iter().enumerate() {
                println!("  S{:<3} {g}", i + 1);
            }
            println!("logicals:");
            for (i, l) in doc.logicals.iter().enumerate() {
                println!("  X{:<3} {}", i + 1, l.x);
                println!("  Z{:<3} {}", i + 1, l.z);
            }
        }
    }
    Ok(())
}

fn verify_cmd(
    input: &Input,
    wmax: Option<usize>,
    strict: bool,
    format: Format,
    deterministic: bool,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let mut report = verify(&input.spec, wmax)?;
    report.name = input.name.clone();
    let elapsed = u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX);
    let wall = (!deterministic).then_some(elapsed);
    let canonical = format!("{}\nwmax={}", input.canonical, report.wmax);
    let text = match format {
        Format::Json => {
            let doc = ReportDocument::from_report(&report, &canonical, wall);
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text => {
            let mut text = report.to_string();
            if let Some(us) = wall {
                text.push_str(&format!("time            {:.1} ms\n", us as f64 / 1000.0));
            }
            text
        }
    };
    match out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    let confirmed = report.all_match() && report.complete;
    Ok(if strict && !confirmed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn sweep_cmd(
    input: &Input,
    wmax: usize,
    filter: FilterArg,
    format: Format,
) -> Result<(), CliError> {
    let built = build(input)?;
    let tally = built.code().sweep_errors(wmax, filter.into())?;
    match format {
        Format::Json => print_json(&tally)?,
        Format::Text => {
            println!(
                "{:>3} {:>12} {:>14} {:>12} {:>10}",
                "w", "identity", "in_stabilizer", "detected", "logical"
            );
            for (w, c) in tally.by_weight.iter().enumerate() {
                println!(
                    "{w:>3} {:>12} {:>14} {:>12} {:>10}",
                    c.identity, c.in_stabilizer, c.detected, c.logical
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DistanceJson {
    d: Option<usize>,
    status: &'static str,
    wmax: usize,
    witness: Option<String>,
    d_css_x: Option<usize>,
    d_css_z: Option<usize>,
}

fn distance_cmd(input: &Input, wmax: Option<usize>, format: Format) -> Result<(), CliError> {
    let built = build(input)?;
    let code = built.code();
    let wmax = wmax.unwrap_or_else(|| max_admissible_weight(code.n(), code.n(), PauliFilter::All));
    let d = code.distance(wmax)?;
    let css = if code.is_css() {
        match code.distance_css() {
            Ok(css) => Some(css),
            Err(e) => {
                log::warn!("css cross-check skipped: {e}");
                None
            }
        }
    } else {
        None
    };
    let doc = DistanceJson {
        d: d.exact(),
        status: if d.is_exact() { "exact" } else { "lower_bound" },
        wmax,
        witness: d.witness.as_ref().map(PauliOperator::indexed),
        d_css_x: css.and_then(|c| c.x),
        d_css_z: css.and_then(|c| c.z),
    };
    match format {
        Format::Json => print_json(&doc)?,
        Format::Text => {
            match (d.exact(), d.status) {
                (Some(v), _) => println!(
                    "d = {v} (exact), witness {}",
                    doc.witness.as_deref().unwrap_or("-")
                ),
                (None, DistanceStatus::LowerBoundOnly { wmax }) => {
                    println!("d > {wmax} (lower bound, no logical up to weight {wmax})")
                }
                (None, DistanceStatus::Exact) => println!("d undefined (no logical operators)"),
            }
            if let Some(c) = css {
                let opt = |d: Option<usize>| d.map_or("-".to_string(), |v| v.to_string());
                println!("css cross-check: d_x = {}, d_z = {}", opt(c.x), opt(c.z));
            }
        }
    }
    Ok(())
}

fn simulate_cmd(
    input: &Input,
    p: f64,
    trials: u64,
    seed: u64,
    format: Format,
) -> Result<(), CliError> {
    let built = build(input)?;
    let decoder = TwoStageDecoder::new(&built)?;
    let stats = simulate_depolarizing(&decoder, p, trials, seed)?;
    match format {
        Format::Json => print_json(&stats)?,
        Format::Text => {
            println!("p = {p}, trials = {trials}, seed = {seed}");
            println!(
                "failures = {}, inconsistent = {}",
                stats.failures, stats.inconsistent
            );
            println!(
                "logical error rate = {:.6} (95% upper {:.6})",
                stats.logical_error_rate,
                stats.upper_bound(1.96)
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Catalog { format } => catalog(format)?,
        Command::Construct {
            code,
            format,
            indexed,
        } => construct_cmd(&resolve(&code)?, format, indexed)?,
        Command::Verify {
            code,
            wmax,
            strict,
            format,
            deterministic,
            out,
        } => {
            return verify_cmd(
                &resolve(&code)?,
                wmax,
                strict,
                format,
                deterministic,
                out.as_deref(),
            )
        }
        Command::Sweep {
            code,
            wmax,
            filter,
            format,
        } => sweep_cmd(&resolve(&code)?, wmax, filter, format)?,
        Command::Distance { code, wmax, format } => distance_cmd(&resolve(&code)?, wmax, format)?,
        Command::Simulate {
            code,
            p,
            trials,
            seed,
            format,
        } => simulate_cmd(&resolve(&code)?, p, trials, seed, format)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
