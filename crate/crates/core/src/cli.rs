//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or format error,
//! 3 invalid parameters. In `--glob` mode every file is processed
//! independently and the exit code is the most severe one observed.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::energy::active_joint_selection;
use crate::error::Error;
use crate::ingest::{self, synth::SyntheticSpec, Format};
use crate::pooling::{analyze, apply, uniform_boundaries};
use crate::sequence::{NormFn, PoolingMode, PoolingParams, SkeletonSequence};

#[derive(Debug, Parser)]
#[command(
    name = "jmap",
    version,
    about = "Motion-adaptive temporal pooling for skeleton sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pool a sequence to ceil(T / theta) frames.
    Pool(CommonArgs),
    /// Write motion curves, windows and matrices as JSON.
    Analyze(CommonArgs),
    /// Write the per-joint energy report as JSON.
    Energy(CommonArgs),
    /// Generate a synthetic sequence.
    Synth(CommonArgs),
    /// Write adaptive vs uniform window boundaries as CSV.
    Compare(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Ntu,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ntu => Format::Ntu,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Frame,
    Joint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Tanh,
    Identity,
    Sqrt,
    Softmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitItem {
    Mi,
    Ci,
    Windows,
    Matrix,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file, or directory in --glob mode. Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "frame")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 5.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon2: f64,
    #[arg(long, value_enum, default_value = "tanh")]
    pub norm: NormArg,
    #[arg(long)]
    pub no_row_normalize: bool,
    /// Comma-separated subset of mi,ci,windows,matrix.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "mi,ci,windows")]
    pub emit: Vec<EmitItem>,
    /// Process every file matching the pattern.
    #[arg(long)]
    pub glob: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Synthetic spec as JSON.
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

impl CommonArgs {
    pub fn params(&self) -> Result<PoolingParams, CliError> {
        let params = PoolingParams {
            theta: self.theta,
            gamma: self.gamma,
            alpha: self.alpha,
            epsilon2: self.epsilon2,
            norm_fn: match self.norm {
                NormArg::Tanh => NormFn::Tanh,
                NormArg::Identity => NormFn::Identity,
                NormArg::Sqrt => NormFn::Sqrt,
                NormArg::Softmax => NormFn::Softmax,
            },
            mode: match self.mode {
                ModeArg::Frame => PoolingMode::FrameWise,
                ModeArg::Joint => PoolingMode::JointWise,
            },
            row_normalize: !self.no_row_normalize,
        };
        params.validate().map_err(|e| CliError::from_lib(e, None))?;
        Ok(params)
    }
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const IO: i32 = 1;
    pub const FORMAT: i32 = 2;
    pub const PARAMS: i32 = 3;

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: Self::IO,
            message: format!("{}: {err}", path.display()),
        }
    }

    fn params(message: impl Into<String>) -> Self {
        Self {
            code: Self::PARAMS,
            message: message.into(),
        }
    }

    fn from_lib(err: Error, path: Option<&Path>) -> Self {
        let code = if err.is_format_error() {
            Self::FORMAT
        } else {
            Self::PARAMS
        };
        let message = match (path, &err) {
            (_, Error::InvalidParameter { name, reason }) => format!("--{name}: {reason}"),
            (Some(p), _) => format!("{}: {err}", p.display()),
            (None, _) => err.to_string(),
        };
        Self { code, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn resolve_format(args: &CommonArgs, path: &Path) -> Result<Format, CliError> {
    args.format
        .map(Format::from)
        .or_else(|| Format::from_path(path))
        .ok_or_else(|| CliError::params(format!("--format: cannot infer a format from `{}`", path.display())))
}

/// Reads and parses one input file.
pub fn load(args: &CommonArgs, path: &Path) -> Result<(SkeletonSequence, Format), CliError> {
    let format = resolve_format(args, path)?;
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let seq =
        ingest::parse(&text, format, &path.display().to_string()).map_err(|e| CliError::from_lib(e, Some(path)))?;
    Ok((seq, format))
}

fn emit_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serializes");
    s.push('\n');
    s
}

/// Produces the output text of one command for one input file.
pub fn process(command: &Command, args: &CommonArgs, path: &Path) -> Result<String, CliError> {
    let params = args.params()?;
    let (seq, format) = load(args, path)?;
    let lib = |e| CliError::from_lib(e, Some(path));
    match command {
        Command::Pool(_) => {
            let plan = analyze(&seq, &params).map_err(lib)?.plan;
            let pooled = apply(&plan, &seq).map_err(lib)?;
            Ok(ingest::write_grid(
                pooled.data.view(),
                format,
                Some(&pooled.input_source),
            ))
        }
        Command::Analyze(_) => {
            let a = analyze(&seq, &params).map_err(lib)?;
            let has = |item| args.emit.contains(&item);
            let mut value = a.profile.to_json_value(has(EmitItem::Mi), has(EmitItem::Ci));
            if has(EmitItem::Windows) || has(EmitItem::Matrix) {
                value["plan"] = a.plan.to_json_value(has(EmitItem::Matrix));
            }
            value["active_set"] = a.energy.to_json_value()["active_set"].clone();
            Ok(emit_json(&value))
        }
        Command::Energy(_) => {
            let report = active_joint_selection(&seq, params.alpha).map_err(lib)?;
            Ok(emit_json(&report.to_json_value()))
        }
        Command::Compare(_) => compare_table(&seq, &params).map_err(lib),
        Command::Synth(_) => unreachable!("synth has no input file"),
    }
}

/// Two-column CSV of window end frames: adaptive (frame-wise curve) vs uniform.
pub fn compare_table(seq: &SkeletonSequence, params: &PoolingParams) -> crate::Result<String> {
    let plan = analyze(seq, &params.with_mode(PoolingMode::FrameWise))?.plan;
    let adaptive = &plan.curves[0].windows.boundaries;
    let uniform = uniform_boundaries(plan.frames, plan.tau);
    let mut out = String::from("adaptive,uniform\n");
    for (a, u) in adaptive.iter().zip(&uniform).skip(1) {
        out.push_str(&format!("{a},{u}\n"));
    }
    Ok(out)
}

/// Spec used by `synth` when `--spec` is absent: a 64-frame, 25-joint clip
/// that moves only in frames 24..48.
pub fn default_synth_spec() -> SyntheticSpec {
    SyntheticSpec::moving_span(64, 25, 3, 24, 48)
}

fn synth_output(args: &CommonArgs) -> Result<String, CliError> {
    let mut spec = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_str::<SyntheticSpec>(&text).map_err(|e| CliError {
                code: CliError::FORMAT,
                message: format!("{}:{}: {e}", path.display(), e.line()),
            })?
        }
        None => default_synth_spec(),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let seq = ingest::synthesize(&spec).map_err(|e| CliError::from_lib(e, args.spec.as_deref()))?;
    let format = args
        .format
        .map(Format::from)
        .or_else(|| args.output.as_deref().and_then(Format::from_path))
        .unwrap_or(Format::Json);
    Ok(match format.output_family() {
        Format::Csv => ingest::write_csv(&seq),
        _ => ingest::write_json(&seq),
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn batch_output_name(command: &Command, input: &Path, format: Option<Format>) -> String {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    match command {
        Command::Pool(_) => {
            let family = format.unwrap_or(Format::Json).output_family();
            format!("{stem}.pooled.{}", family.extension())
        }
        Command::Analyze(_) => format!("{stem}.analyze.json"),
        Command::Energy(_) => format!("{stem}.energy.json"),
        Command::Compare(_) => format!("{stem}.compare.csv"),
        Command::Synth(_) => format!("{stem}.json"),
    }
}

fn run_glob(command: &Command, args: &CommonArgs, pattern: &str) -> Result<(), CliError> {
    let out_dir = args
        .output
        .as_deref()
        .ok_or_else(|| CliError::params("--output: a directory is required with --glob"))?;
    let paths: Vec<PathBuf> = glob::glob(pattern)
        .map_err(|e| CliError::params(format!("--glob: {e}")))?
        .filter_map(|p| p.ok())
        .collect();
    if paths.is_empty() {
        return Err(CliError {
            code: CliError::IO,
            message: format!("--glob: no files match `{pattern}`"),
        });
    }
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let worst = paths
        .par_iter()
        .map(|path| {
            let result = process(command, args, path).and_then(|text| {
                let fmt = resolve_format(args, path).ok();
                let target = out_dir.join(batch_output_name(command, path, fmt));
                write_output(Some(&target), &text).map(|_| target)
            });
            match result {
                Ok(target) => {
                    eprintln!("ok {} -> {}", path.display(), target.display());
                    0
                }
                Err(e) => {
                    eprintln!("error {}", e);
                    e.code
                }
            }
        })
        .max()
        .unwrap_or(0);
    if worst == 0 {
        Ok(())
    } else {
        Err(CliError {
            code: worst,
            message: "some files failed".into(),
        })
    }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let args = match &cli.command {
        Command::Pool(a) | Command::Analyze(a) | Command::Energy(a) | Command::Synth(a) | Command::Compare(a) => a,
    };
    if let Command::Synth(_) = cli.command {
        let text = synth_output(args)?;
        return write_output(args.output.as_deref(), &text);
    }
    args.params()?;
    match (&args.glob, &args.input) {
        (Some(pattern), None) => run_glob(&cli.command, args, pattern),
        (None, Some(input)) => {
            let text = process(&cli.command, args, input)?;
            write_output(args.output.as_deref(), &text)
        }
        (Some(_), Some(_)) => Err(CliError::params("--input and --glob are mutually exclusive")),
        (None, None) => Err(CliError::params("--input: required (or use --glob)")),
    }
}

/// Parses `argv`, runs it, and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => CliError::PARAMS,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("jmap: {e}");
            e.code
        }
    }
}
