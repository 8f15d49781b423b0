use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qpp_cli::commands::{atlas_cmd, classify_cmd, render_cmd, search_cmd, verify_cmd, ReportFormat, TableFormat};
use qpp_cli::render::{FigureFormat, FigureOptions};
use qpp_cli::{CliError, Output, EXIT_USAGE};
use qpp_core::{make_sector, SearchMode, SectorSpec};

/// Quadratic packing polynomials on rational sectors.
#[derive(Parser)]
#[command(name = "qpp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Svg,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Restricted,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// List every QPP on the sector 0 <= y <= (n/m) x (use m = 0 for the quadrant).
    Classify {
        n: i64,
        m: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportArg,
    },
    /// Check that a polynomial packs the sector, by certified window.
    Verify {
        n: i64,
        m: i64,
        /// An expression such as "2*x^2 - 2*x*y + 1/2*y^2 + 1/2*y", or six
        /// coefficients "c_xx,c_xy,c_yy,c_x,c_y,c_0".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Fixed window bound; without it the window grows until --target is certified.
        #[arg(long)]
        xmax: Option<i64>,
        #[arg(long, default_value_t = 1000)]
        target: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportArg,
    },
    /// Exhaustive search over integer alpha-form coefficients.
    Search {
        n: i64,
        m: i64,
        #[arg(long, value_enum, default_value = "restricted")]
        mode: ModeArg,
        /// D:E:F (restricted) or A:B:C:D:E:F (full); each part is lo..hi or v.
        #[arg(long, allow_hyphen_values = true)]
        bounds: Option<String>,
        #[arg(long, default_value_t = 200)]
        target: i64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportArg,
    },
    /// Tabulate the classification for all coprime n <= nmax, m <= mmax.
    Atlas {
        #[arg(long)]
        nmax: i64,
        #[arg(long)]
        mmax: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: TableArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Draw a QPP's values on the sector lattice.
    Render {
        n: i64,
        m: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 8)]
        xmax: i64,
        /// Leave points with larger values unlabelled.
        #[arg(long)]
        value_max: Option<i64>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FigureArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn report(f: ReportArg) -> ReportFormat {
    match f {
        ReportArg::Text => ReportFormat::Text,
        ReportArg::Json => ReportFormat::Json,
    }
}

fn sector(n: i64, m: i64) -> Result<SectorSpec, CliError> {
    Ok(make_sector(n, m)?)
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Classify { n, m, format } => classify_cmd(sector(n, m)?, report(format)),
        Command::Verify {
            n,
            m,
            poly,
            xmax,
            target,
            format,
        } => verify_cmd(sector(n, m)?, &poly, xmax, target, report(format)),
        Command::Search {
            n,
            m,
            mode,
            bounds,
            target,
            jobs,
            format,
        } => {
            if jobs == Some(0) {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let mode = match mode {
                ModeArg::Restricted => SearchMode::Restricted,
                ModeArg::Full => SearchMode::Full,
            };
            search_cmd(sector(n, m)?, mode, bounds.as_deref(), target, jobs, report(format))
        }
        Command::Atlas {
            nmax,
            mmax,
            format,
            out,
            jobs,
        } => {
            let format = match format {
                TableArg::Json => TableFormat::Json,
                TableArg::Csv => TableFormat::Csv,
            };
            with_pool(jobs, || atlas_cmd(nmax, mmax, format, out.as_deref()))?
        }
        Command::Render {
            n,
            m,
            k,
            xmax,
            value_max,
            format,
            out,
        } => {
            let format = match format {
                FigureArg::Svg => FigureFormat::Svg,
                FigureArg::Ascii => FigureFormat::Ascii,
            };
            render_cmd(
                sector(n, m)?,
                k,
                FigureOptions {
                    x_max: xmax,
                    value_max,
                    format,
                },
                out.as_deref(),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("qpp: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
