//! `wel`: verify metric specs, construct family members, sweep parameters.
//! Exit codes: 0 pass, 1 verification failure, 2 input error, 3 numerical
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wel::construct::{build, report, write_files, Family};
use wel::spec::resolve_chart;
use wel::sweep::{parse_grid, render_csv as sweep_csv, render_json as sweep_json, run_sweep};
use wel::verify::{render_csv, render_json, run_verify, Jet, Sampling};
use wel::{emit, init_threads, CliError};

#[derive(Parser)]
#[command(name = "wel", version, about = "Curvature toolkit batch front end")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum JetArg {
    Ad,
    Fd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a metric and check the quadratic curvature condition.
    Verify {
        /// Path to a spec JSON file, or a catalog label.
        spec: String,
        /// Number of random sample points (default 40).
        #[arg(long, conflicts_with = "grid")]
        points: Option<usize>,
        /// Lattice resolution per axis, instead of random points.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residual tolerance; defaults to 1e-10 for --jet ad, 1e-5 for --jet fd.
        #[arg(long)]
        tol: Option<f64>,
        /// Jet source: exact derivatives, or finite differences as an
        /// independent cross-check.
        #[arg(long, value_enum, default_value_t = JetArg::Ad)]
        jet: JetArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Catalog parameter override, key=value; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Build one family member; writes chart.json, trajectory.csv, report.json.
    Construct {
        /// One of: homogeneous, profile-i, profile-ii, harmonic.
        family: String,
        /// Inline JSON object with the family parameters, or a path to one.
        params: String,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Bound on residuals and prediction errors for the pass flag.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Cartesian parameter sweep; one row per (parameters, point).
    Sweep {
        /// One of: homogeneous, profile-i, profile-ii, harmonic.
        family: String,
        /// Inline JSON object mapping parameter names to value lists, or a path.
        grid: String,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample points per parameter combination.
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { spec, points, grid, seed, tol, jet, format, out, params } => {
            let jet = match jet {
                JetArg::Ad => Jet::Ad,
                JetArg::Fd => Jet::Fd,
            };
            let sampling = match (points, grid) {
                (None, Some(k)) => Sampling::Grid(k),
                (p, None) => Sampling::Points(p.unwrap_or(40)),
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            let chart = resolve_chart(&spec, &params)?;
            let tol = tol.unwrap_or_else(|| jet.default_tol());
            let (report, pass) = run_verify(&spec, &chart, sampling, seed, tol, jet)?;
            let text = match format {
                FormatArg::Json => render_json(&report)?,
                FormatArg::Csv => render_csv(&report)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(pass)
        }
        Command::Construct { family, params, out, seed, points, tol } => {
            let family = Family::parse(&family)?;
            let value = wel::construct::params_value(&params)?;
            let built = build(family, &value)?;
            let rep = report(&built, &value, seed, points, tol)?;
            let files = write_files(&built, &rep, &out)?;
            println!("{} {} {}", rep.family, rep.summary.pass, files.join(" "));
            Ok(rep.summary.pass)
        }
        Command::Sweep { family, grid, out, seed, points, tol, format } => {
            let family = Family::parse(&family)?;
            let grid = parse_grid(&grid)?;
            let rows = run_sweep(family, &grid, seed, points, tol)?;
            let dim = rows.first().map(|r| r.point.len()).unwrap_or(4);
            let text = match format {
                FormatArg::Json => sweep_json(&rows)?,
                FormatArg::Csv => sweep_csv(&grid, &rows, dim)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
