use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cn_spectra::family::Family;
use cn_spectra::pipeline::{sweep, PipelineError, VerifyOptions, NUMERIC_SPECTRUM_TOLERANCE};
use cn_spectra::spectral::{CnMode, Method, SpectralError};

mod cache;
mod render;
mod select;

use cache::Cache;
use render::{Item, Source};
use select::{ParamValues, Values};

#[derive(Parser)]
#[command(
    name = "cn-spectra",
    version,
    about = "Commuting graphs of finite groups and their CNL/CNSL spectra and energies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build groups and summarise their centralizers.
    Build(Common),
    /// Emit commuting graphs.
    Graph(Common),
    /// CNL and CNSL spectra.
    Spectrum(Analysed),
    /// CNL and CNSL energies against the complete-graph baseline.
    Energy(Analysed),
    /// Integrality and hyperenergeticity verdicts.
    Classify(Analysed),
    /// Cross-check structural, numeric and closed-form results per instance.
    Verify(Checked),
    /// Verification table; without --family, every family up to order 512.
    Sweep(Checked),
}

#[derive(Args)]
struct Input {
    /// Family name (repeat or comma-separate for several).
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    /// Edge-list JSON document instead of a family.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, value_parser = select::parse_values)]
    n: Option<Values>,
    #[arg(long, value_parser = select::parse_values)]
    k: Option<Values>,
    #[arg(long, value_parser = select::parse_values)]
    q: Option<Values>,
    #[arg(long, value_parser = select::parse_values)]
    m: Option<Values>,
    #[arg(long, value_parser = select::parse_values)]
    p: Option<Values>,
    #[arg(long, value_parser = select::parse_values)]
    z: Option<Values>,
}

impl Input {
    fn params(&self) -> ParamValues {
        ParamValues {
            n: self.n.clone(),
            k: self.k.clone(),
            q: self.q.clone(),
            m: self.m.clone(),
            p: self.p.clone(),
            z: self.z.clone(),
        }
    }

    fn families(&self) -> Result<Vec<Family>, CliError> {
        if self.graph.is_some() {
            return Err(CliError::Usage("this command needs --family".into()));
        }
        select::families(&self.family, &self.params()).map_err(CliError::Usage)
    }

    fn sources(&self) -> Result<Vec<Source>, CliError> {
        match &self.graph {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                Ok(vec![Source::Graph {
                    path: path.display().to_string(),
                    text,
                }])
            }
            None => Ok(self.families()?.into_iter().map(Source::Family).collect()),
        }
    }
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Cache directory for computed documents.
    #[arg(long, env = "CN_SPECTRA_CACHE")]
    cache: Option<PathBuf>,
    /// Which vertex pairs get common-neighbour counts.
    #[arg(long, value_enum, default_value_t = ModeArg::AllPairs)]
    cn_mode: ModeArg,
}

#[derive(Args)]
struct Analysed {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
}

#[derive(Args)]
struct Checked {
    #[command(flatten)]
    common: Common,
    /// Per-eigenvalue tolerance between numeric and exact spectra.
    #[arg(long, default_value_t = NUMERIC_SPECTRUM_TOLERANCE)]
    tol: f64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Numeric,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Numeric => Method::Numeric,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    AllPairs,
    AdjacentOnly,
}

impl From<ModeArg> for CnMode {
    fn from(m: ModeArg) -> CnMode {
        match m {
            ModeArg::AllPairs => CnMode::AllPairs,
            ModeArg::AdjacentOnly => CnMode::AdjacentOnly,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("cache: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} instances disagree")]
    Mismatch { failed: usize, total: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch { .. } => 1,
            CliError::Pipeline(e) if e.is_resource_bound() => 3,
            CliError::Pipeline(PipelineError::Spectral(SpectralError::AmbiguousCluster {
                ..
            })) => 1,
            CliError::Pipeline(_) | CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

fn format_for(
    format: Option<Format>,
    default: Format,
    allowed: &[Format],
) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(
            format!("format {f:?} is not available here").to_lowercase(),
        ))
    }
}

fn run_items(kind: Item, common: &Common, method: Method) -> Result<String, CliError> {
    use Format::*;
    let format = match kind {
        Item::Graph => format_for(common.format, Json, &[Json, Csv, Dot, Text])?,
        _ => format_for(common.format, Json, &[Json, Csv, Text])?,
    };
    let mode = CnMode::from(common.cn_mode);
    let cache = Cache::open(common.cache.clone())?;
    let mut out = String::new();
    if format == Csv {
        out += &render::csv_line(kind.csv_header());
    }
    let mut rendered = 0;
    let mut skipped = None;
    for src in common.input.sources()? {
        let key = [
            kind.name(),
            &src.key(),
            &format!("{method:?}"),
            &format!("{mode:?}"),
            &format!("{format:?}"),
        ];
        match cache.get_or_try(&key, || render::item(kind, &src, method, mode, format)) {
            Ok(doc) => {
                out += &doc;
                rendered += 1;
            }
            Err(CliError::Pipeline(PipelineError::NotRealizable(e))) => {
                eprintln!("skipped: {e}");
                skipped = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    if rendered == 0 {
        return Err(CliError::Usage(
            skipped.unwrap_or_else(|| "no instances".into()),
        ));
    }
    Ok(out)
}

fn run_checked(args: &Checked, default_grid: bool) -> Result<String, CliError> {
    use Format::*;
    let common = &args.common;
    let format = format_for(
        common.format,
        if default_grid { Csv } else { Text },
        &[Json, Csv, Text],
    )?;
    if !(args.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let families = if default_grid && common.input.family.is_empty() && common.input.graph.is_none()
    {
        select::default_grid()
    } else {
        common.input.families()?
    };
    let opts = VerifyOptions {
        tolerance: args.tol,
        mode: common.cn_mode.into(),
    };
    let cache = Cache::open(common.cache.clone())?;
    let key = |f: &Family| {
        vec![
            "verify".to_string(),
            f.to_string(),
            format!("{:e}", opts.tolerance),
            format!("{:?}", opts.mode),
        ]
    };
    let lookup = |f: &Family| {
        let k = key(f);
        let parts: Vec<&str> = k.iter().map(String::as_str).collect();
        cache
            .get(&parts)
            .and_then(|s| serde_json::from_str::<Value>(&s).ok())
    };

    let mut records: Vec<(Family, Value)> = Vec::new();
    let mut todo = Vec::new();
    for f in &families {
        match lookup(f) {
            Some(r) => records.push((*f, r)),
            None => todo.push(*f),
        }
    }
    let mut skipped = 0;
    for (f, res) in sweep(&todo, args.jobs, &opts)? {
        match res {
            Ok(rep) => {
                let record = render::verify_record(&rep);
                let k = key(&f);
                let parts: Vec<&str> = k.iter().map(String::as_str).collect();
                cache.put(&parts, &record.to_string())?;
                records.push((f, record));
            }
            Err(PipelineError::NotRealizable(e)) => {
                eprintln!("skipped: {e}");
                skipped += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if records.is_empty() {
        return Err(CliError::Usage(format!(
            "none of the {skipped} instances is realizable"
        )));
    }
    records.sort_by_key(|(f, _)| *f);

    let mut out = String::new();
    if format == Csv {
        out += &render::csv_line(render::VERIFY_HEADER);
    }
    let mut failed = 0;
    for (f, record) in &records {
        out += &render::verify_row(record, format);
        if record["ok"] != json!(true) {
            failed += 1;
            eprintln!(
                "{}",
                json!({"family": f.to_string(), "mismatches": record["unexplained"]})
            );
        }
    }
    if failed > 0 {
        print!("{out}");
        return Err(CliError::Mismatch {
            failed,
            total: records.len(),
        });
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Build(c) => run_items(Item::Build, c, Method::Exact),
        Command::Graph(c) => run_items(Item::Graph, c, Method::Exact),
        Command::Spectrum(a) => run_items(Item::Spectrum, &a.common, a.method.into()),
        Command::Energy(a) => run_items(Item::Energy, &a.common, a.method.into()),
        Command::Classify(a) => run_items(Item::Classify, &a.common, a.method.into()),
        Command::Verify(c) => run_checked(c, false),
        Command::Sweep(c) => run_checked(c, true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
