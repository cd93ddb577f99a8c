use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tangles::cli::{self, RunConfig};

/// Traceless SU(2) character varieties of 2-stranded tangles: components,
/// pillowcase images, and instanton generator counts.
#[derive(Parser)]
#[command(name = "tangles", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// write the pillowcase figure here
    #[arg(long)]
    svg: Option<PathBuf>,
    /// write per-component point clouds here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// write the JSON report here (it is always printed to stdout)
    #[arg(long)]
    json: Option<PathBuf>,
    /// pillowcase samples per analytic curve
    #[arg(long, default_value_t = 2048)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the tangle of a (p, q) torus knot
    Torus {
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
        #[arg(short, allow_negative_numbers = true)]
        q: i64,
        /// surgery coefficient r (pr + qs = 1); defaults to p^{-1} mod q
        #[arg(long, requires = "s", allow_negative_numbers = true)]
        r: Option<i64>,
        /// surgery coefficient s (pr + qs = 1)
        #[arg(long, requires = "r", allow_negative_numbers = true)]
        s: Option<i64>,
        /// cells per axis for zero-set tracing
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Analyze the tangle of a (-2, 3, n) pretzel knot
    Pretzel {
        #[arg(short)]
        n: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Binary dihedral components from branched-cover data
    Bd {
        #[arg(long = "h-ba", allow_negative_numbers = true)]
        h_ba: i64,
        #[arg(long = "h-bc", allow_negative_numbers = true)]
        h_bc: i64,
        /// odd order of the torsion eigenspace A_-
        #[arg(long)]
        aminus: u64,
        /// offset angle pair "l1,l2" for one circle; repeatable
        #[arg(long = "offset", value_parser = parse_offset, allow_hyphen_values = true)]
        offsets: Vec<(f64, f64)>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_offset(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"l1,l2\", got {s:?}"));
    }
    let a = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn config_from(out: &OutputArgs, grid: usize) -> RunConfig {
    RunConfig {
        grid,
        samples: out.samples,
        svg: out.svg.clone(),
        csv: out.csv.clone(),
        json: out.json.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Torus { p, q, r, s, grid, out } => {
            cli::run_torus(p, q, r, s, &config_from(&out, grid))
        }
        Command::Pretzel { n, out } => cli::run_pretzel(n, &config_from(&out, 1024)),
        Command::Bd { h_ba, h_bc, aminus, offsets, out } => {
            cli::run_bd(h_ba, h_bc, aminus, offsets, &config_from(&out, 1024))
        }
    };
    match result {
        Ok(report) => match cli::report_json(&report) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::FAILURE
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
