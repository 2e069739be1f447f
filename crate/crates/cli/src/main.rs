use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use salpart::bench::{rows_to_csv, run_bench};
use salpart::formats::{load_saliency, save_raw_f32, FormatError, MapFormat};
use salpart::report::{PartitionReport, Timing};
use salpart::synth::{synth_blobs, Blob};
use salpart_core::{
    partition, smallest_far_crop, ColumnIntegralMap, PartitionConfig, PartitionResult,
    RoundDiagnostics, SaliencyMap,
};

/// Exit codes: 0 success, 1 usage, 2 I/O, 3 infeasible, 4 partial result.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Infeasible(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Infeasible(m) => m,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(err: FormatError) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<salpart_core::Error> for CliError {
    fn from(err: salpart_core::Error) -> Self {
        match err {
            salpart_core::Error::RoundFailed { .. } => CliError::Infeasible(err.to_string()),
            salpart_core::Error::DimensionMismatch { .. } => CliError::Io(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "salpart",
    version,
    about = "Partition a saliency map into fixed-aspect-ratio crop regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the single smallest crop capturing a fraction of the total attention
    Crop(CropArgs),
    /// Extract k disjoint crops plus the boundary lines between them
    Partition(PartitionArgs),
    /// Generate a synthetic saliency map from Gaussian blobs (raw-f32 output)
    Synth(SynthArgs),
    /// Time partition runs across k and record exact operation counters
    Bench(BenchArgs),
}

#[derive(Args)]
struct CropArgs {
    /// Saliency map file
    #[arg(long)]
    input: PathBuf,
    /// Input format: png-gray, pgm, raw-f32, csv (default: by extension)
    #[arg(long)]
    format: Option<String>,
    /// Crop aspect ratio, width / height
    #[arg(long, default_value_t = 1.0)]
    ratio: f64,
    /// Required mass as a fraction of the map total, in (0, 1]
    #[arg(long)]
    threshold_fraction: f64,
}

#[derive(Args)]
struct PartitionArgs {
    /// Saliency map file
    #[arg(long)]
    input: PathBuf,
    /// Input format: png-gray, pgm, raw-f32, csv (default: by extension)
    #[arg(long)]
    format: Option<String>,
    /// Number of crops to extract
    #[arg(long)]
    k: usize,
    /// Crop aspect ratio, width / height
    #[arg(long, default_value_t = 1.0)]
    ratio: f64,
    /// Threshold margin above the even split of remaining mass
    #[arg(long, default_value_t = salpart_core::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Threshold cap as a fraction of remaining mass, in (0, 1]
    #[arg(long, default_value_t = salpart_core::DEFAULT_TAU_MAX)]
    tau_max: f64,
    /// Reject crops that overlap earlier ones (default)
    #[arg(long, overrides_with = "no_strict")]
    strict: bool,
    /// Allow later crops to overlap earlier, already-suppressed regions
    #[arg(long)]
    no_strict: bool,
    /// Exit 4 with a partial report instead of failing when a round finds nothing
    #[arg(long)]
    allow_partial: bool,
    /// Write an overlay PNG here
    #[arg(long)]
    overlay: Option<PathBuf>,
    /// Overlay base image (PNG); default is the saliency map itself
    #[arg(long)]
    base: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Gaussian blob as row,col,sigma,amplitude; repeatable
    #[arg(long = "blob", value_name = "R,C,SIGMA,AMP")]
    blobs: Vec<String>,
    /// Output path (raw-f32)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 512)]
    rows: usize,
    #[arg(long, default_value_t = 512)]
    cols: usize,
    /// Benchmark k = 1..=k_max
    #[arg(long, default_value_t = 8)]
    k_max: usize,
    #[arg(long, default_value_t = 1.0)]
    ratio: f64,
    /// Timed repetitions per k
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Seed for the random map
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also write the CSV table here (it always goes to stdout)
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr on its own
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Crop(args) => cmd_crop(args),
        Command::Partition(args) => cmd_partition(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn resolve_format(path: &Path, flag: Option<&str>) -> Result<MapFormat, CliError> {
    match flag {
        Some(name) => MapFormat::from_name(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown format '{name}' (expected png-gray, pgm, raw-f32, or csv)"
            ))
        }),
        None => MapFormat::from_extension(path).ok_or_else(|| {
            CliError::Usage(format!(
                "cannot infer format of '{}'; pass --format",
                path.display()
            ))
        }),
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.to_string()))
    }
}

fn load_input(path: &Path, format: MapFormat) -> Result<SaliencyMap, CliError> {
    load_saliency(path, format).map_err(|e| match e {
        FormatError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => CliError::Io(format!("{}: {other}", path.display())),
    })
}

fn cmd_crop(args: CropArgs) -> Result<u8, CliError> {
    require(
        args.threshold_fraction.is_finite()
            && args.threshold_fraction > 0.0
            && args.threshold_fraction <= 1.0,
        "--threshold-fraction must be in (0, 1]",
    )?;
    require(args.ratio.is_finite() && args.ratio > 0.0, "--ratio must be > 0")?;
    let format = resolve_format(&args.input, args.format.as_deref())?;

    let run_started = Instant::now();
    let map = load_input(&args.input, format)?;
    let load_ms = run_started.elapsed().as_secs_f64() * 1e3;

    let threshold = args.threshold_fraction * map.total_mass();
    let search_started = Instant::now();
    let colint = ColumnIntegralMap::build(&map);
    let outcome = smallest_far_crop(&colint, args.ratio, threshold)?;
    let partition_ms = search_started.elapsed().as_secs_f64() * 1e3;

    let found = outcome.best.is_some();
    let result = PartitionResult {
        boxes: outcome.best.into_iter().collect(),
        boundaries: Vec::new(),
        rounds: vec![RoundDiagnostics {
            round_index: 1,
            mass_before: map.total_mass(),
            threshold,
            found,
            windows_searched: outcome.windows_searched,
            rows_advanced: outcome.rows_advanced,
        }],
    };
    // single-shot search: no scheduling margin, no clamp, no overlap rule
    let config_echo = PartitionConfig {
        k: 1,
        aspect_ratio: args.ratio,
        epsilon: 0.0,
        tau_max: 1.0,
        strict_disjoint: false,
        allow_partial: true,
    };
    let timing = Timing {
        load_ms,
        partition_ms,
        overlay_ms: 0.0,
        total_ms: run_started.elapsed().as_secs_f64() * 1e3,
    };
    let report = PartitionReport::new(
        &args.input.display().to_string(),
        (map.height(), map.width()),
        &config_echo,
        &result,
        timing,
    );
    println!("{}", report.to_json());

    if found {
        Ok(0)
    } else {
        eprintln!("no crop with ratio {} reaches mass {threshold}", args.ratio);
        Ok(3)
    }
}

fn load_overlay_base(
    map: &SaliencyMap,
    base: Option<&Path>,
) -> Result<salpart_core::RgbGrid, CliError> {
    match base {
        None => Ok(salpart_core::RgbGrid::from_gray_map(map)),
        Some(path) => {
            let img = image::open(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
                .to_rgb8();
            let (w, h) = (img.width() as usize, img.height() as usize);
            let pixels = img.pixels().map(|p| p.0).collect();
            Ok(salpart_core::RgbGrid::from_pixels(h, w, pixels)?)
        }
    }
}

fn write_png(path: &Path, grid: &salpart_core::RgbGrid) -> Result<(), CliError> {
    let raw: Vec<u8> = grid.pixels().iter().flatten().copied().collect();
    let img = image::RgbImage::from_raw(grid.width() as u32, grid.height() as u32, raw)
        .expect("pixel buffer matches dimensions");
    img.save(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_partition(args: PartitionArgs) -> Result<u8, CliError> {
    let format = resolve_format(&args.input, args.format.as_deref())?;
    let config = PartitionConfig {
        k: args.k,
        aspect_ratio: args.ratio,
        epsilon: args.epsilon,
        tau_max: args.tau_max,
        strict_disjoint: !args.no_strict,
        allow_partial: args.allow_partial,
    };
    config.validate()?;

    let run_started = Instant::now();
    let map = load_input(&args.input, format)?;
    let load_ms = run_started.elapsed().as_secs_f64() * 1e3;

    let partition_started = Instant::now();
    let result = partition(&map, &config)?;
    let partition_ms = partition_started.elapsed().as_secs_f64() * 1e3;

    let mut overlay_ms = 0.0;
    if let Some(out_path) = &args.overlay {
        let overlay_started = Instant::now();
        let base = load_overlay_base(&map, args.base.as_deref())?;
        let rendered = salpart_core::render_overlay(&base, &result, &Default::default())?;
        write_png(out_path, &rendered)?;
        overlay_ms = overlay_started.elapsed().as_secs_f64() * 1e3;
        eprintln!("overlay written to {}", out_path.display());
    }

    let complete = result.boxes.len() == config.k;
    if !complete {
        eprintln!(
            "partial result: {} of {} crops found",
            result.boxes.len(),
            config.k
        );
    }
    let timing = Timing {
        load_ms,
        partition_ms,
        overlay_ms,
        total_ms: run_started.elapsed().as_secs_f64() * 1e3,
    };
    let report = PartitionReport::new(
        &args.input.display().to_string(),
        (map.height(), map.width()),
        &config,
        &result,
        timing,
    );
    println!("{}", report.to_json());
    Ok(if complete { 0 } else { 4 })
}

fn parse_blob(text: &str) -> Result<Blob, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--blob expects row,col,sigma,amplitude, got '{text}'"
        )));
    }
    let mut nums = [0.0f64; 4];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| {
            CliError::Usage(format!("--blob component '{}' is not a number", part.trim()))
        })?;
    }
    Ok(Blob::new(nums[0], nums[1], nums[2], nums[3]))
}

fn cmd_synth(args: SynthArgs) -> Result<u8, CliError> {
    let blobs = args
        .blobs
        .iter()
        .map(|text| parse_blob(text))
        .collect::<Result<Vec<_>, _>>()?;
    let map = synth_blobs(args.rows, args.cols, &blobs)?;
    save_raw_f32(&args.out, &map)?;
    eprintln!(
        "wrote {} ({}x{}, {} blobs)",
        args.out.display(),
        args.rows,
        args.cols,
        blobs.len()
    );
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<u8, CliError> {
    require(args.rows >= 1 && args.cols >= 1, "--rows and --cols must be at least 1")?;
    require(args.k_max >= 1, "--k-max must be at least 1")?;
    require(args.repeats >= 1, "--repeats must be at least 1")?;
    require(args.ratio.is_finite() && args.ratio > 0.0, "--ratio must be > 0")?;

    let rows = run_bench(args.rows, args.cols, args.k_max, args.ratio, args.repeats, args.seed)?;
    let csv = rows_to_csv(&rows);
    print!("{csv}");
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        eprintln!("csv written to {}", path.display());
    }
    Ok(0)
}
