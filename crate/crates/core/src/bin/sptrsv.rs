use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sptrsv_rewrite::cli::{self, AnalyzeConfig, CodegenConfig, RunReport, TransformConfig};
use sptrsv_rewrite::codegen::{CodegenOptions, DEFAULT_SPLIT_THRESHOLD, DEFAULT_STATEMENT_CAP};
use sptrsv_rewrite::ThinLevelOptions;

#[derive(Parser)]
#[command(
    version,
    about = "Rewrite thin levels of sparse triangular solves and generate specialized C"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Level-set statistics of a matrix's lower triangle.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Rewrite thin levels and verify the result.
    Transform {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rewrite: Rewrite,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Transform, verify and emit a specialized C solver.
    Codegen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        rewrite: Rewrite,
        /// Emit OpenMP tasks with a barrier between levels.
        #[arg(long)]
        parallel: bool,
        /// Fold the right-hand side into per-row constants.
        #[arg(long)]
        embed_rhs: bool,
        /// Right-hand side for --embed-rhs (n little-endian f64); all ones if absent.
        #[arg(long)]
        rhs: Option<PathBuf>,
        /// Split levels wider than this into several functions.
        #[arg(long, default_value_t = DEFAULT_SPLIT_THRESHOLD)]
        split_threshold: usize,
        /// Refuse to emit more statements than this.
        #[arg(long, default_value_t = DEFAULT_STATEMENT_CAP)]
        statement_cap: usize,
        /// Output directory for the bundle.
        #[arg(long, default_value = "generated")]
        out: PathBuf,
        /// Write into a non-empty output directory.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Download a SuiteSparse matrix (e.g. lung2 or Group/Name) into the cache.
    Fetch {
        name: String,
        /// Defaults to $SPTRSV_CACHE or ~/.cache/sptrsv-rewrite.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Matrix Market file; only the lower triangle is used.
    #[arg(long)]
    matrix: PathBuf,
    /// Force every diagonal entry to 1.0.
    #[arg(long)]
    unit_diagonal: bool,
}

#[derive(Args)]
struct Rewrite {
    /// Levels with at most this many rows are rewritten.
    #[arg(long, default_value_t = 2)]
    thin_threshold: usize,
    /// Maximum terms in any rewritten equation.
    #[arg(long, default_value_t = 256)]
    fill_budget: usize,
    /// How many levels a thin level may be pulled down in one merge.
    #[arg(long, default_value_t = 16)]
    max_merge_span: usize,
    /// Never reduce the schedule below this many levels.
    #[arg(long, default_value_t = 1)]
    min_levels: usize,
    /// Elevate exactly these rows (comma separated) instead of the thin-level pass.
    #[arg(long, value_delimiter = ',')]
    rows: Option<Vec<usize>>,
    /// Keep the equations as they are (verification still runs).
    #[arg(long)]
    no_rewrite: bool,
    /// Seed for the verification right-hand sides.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random right-hand sides to verify with.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Maximum accepted max|Δx| / max(1, ‖x‖∞).
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

fn transform_config(input: Input, r: Rewrite) -> TransformConfig {
    TransformConfig {
        matrix: input.matrix,
        unit_diagonal: input.unit_diagonal,
        thin: ThinLevelOptions {
            thin_threshold: r.thin_threshold,
            fill_budget: r.fill_budget,
            min_levels_kept: r.min_levels,
            max_merge_span: r.max_merge_span,
        },
        rows: r.rows,
        no_rewrite: r.no_rewrite,
        trials: r.trials,
        tol: r.tol,
        seed: r.seed,
    }
}

fn emit(report: &RunReport, format: ReportFormat) -> ExitCode {
    let text = match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Structured => report.to_json() + "\n",
    };
    // a closed pipe (`| head`) is not an error worth a panic
    let _ = std::io::stdout().write_all(text.as_bytes());
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Analyze { input, report } => cli::analyze(&AnalyzeConfig {
            matrix: input.matrix,
            unit_diagonal: input.unit_diagonal,
        })
        .map(|r| emit(&r, report)),
        Command::Transform {
            input,
            rewrite,
            report,
        } => cli::transform(&transform_config(input, rewrite)).map(|r| emit(&r, report)),
        Command::Codegen {
            input,
            rewrite,
            parallel,
            embed_rhs,
            rhs,
            split_threshold,
            statement_cap,
            out,
            force,
            report,
        } => cli::codegen(&CodegenConfig {
            transform: transform_config(input, rewrite),
            codegen: CodegenOptions {
                split_threshold,
                embed_rhs,
                parallel,
                statement_cap,
            },
            out,
            overwrite: force,
            rhs,
        })
        .map(|r| emit(&r, report)),
        Command::Fetch { name, cache_dir } => {
            let cache = cache_dir.unwrap_or_else(cli::default_cache_dir);
            cli::fetch(&name, &cache).map(|p| {
                println!("{}", p.display());
                ExitCode::SUCCESS
            })
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
