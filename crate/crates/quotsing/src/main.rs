use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quotsing::center::CenterTables;
use quotsing::quiver::{build_mckay, contraction};
use quotsing::report::{analyze, census, verify_group, SweepConfig};
use quotsing::{build_group, parse_group_spec, Bounds, Error, GroupSpec};

/// Exact computations for abelian quotient singularities: quivers,
/// contraction-algebra centers, and singular loci, cross-checked.
#[derive(Parser)]
#[command(name = "quotsing", version, about)]
struct Cli {
    /// Largest allowed group order when closing a generating set.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_order: u64,
    /// Largest allowed lattice-point count for box enumerations.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_box: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline and print the JSON report.
    Analyze {
        spec: PathBuf,
        /// Also write the McKay quiver as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Degree bound for the center table (default 2|G|).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 0 iff every check passes.
    Verify {
        spec: PathBuf,
        /// Degree bound for the per-monomial center check (default 2|G|).
        #[arg(long)]
        max_degree: Option<u32>,
        /// Negative-control hook: corrupt the ideal table of the given
        /// nontrivial character before checking.
        #[arg(long, hide = true)]
        corrupt: Option<usize>,
    },
    /// Export the McKay quiver (or the contraction quiver) as DOT.
    Quiver {
        spec: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        /// Export the contraction quiver instead of the McKay quiver.
        #[arg(long)]
        contraction: bool,
    },
    /// Print the center Hilbert table as JSON.
    Center {
        spec: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
    /// Sample random groups, verify each, and print the aggregate JSON.
    Census {
        #[arg(long, default_value_t = 3)]
        dim_max: usize,
        #[arg(long, default_value_t = 20)]
        order_max: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample single-generator groups only.
        #[arg(long)]
        cyclic_only: bool,
        /// Degree bound per sample (default 2|G| of the sample).
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

fn read_spec(path: &PathBuf) -> Result<GroupSpec, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    parse_group_spec(&text)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let bounds = Bounds {
        max_group_order: cli.max_order,
        max_box_points: cli.max_box,
        ..Bounds::default()
    };
    match cli.cmd {
        Cmd::Analyze {
            spec,
            dot,
            max_degree,
            out,
        } => {
            let spec = read_spec(&spec)?;
            let timed = analyze(&spec, max_degree, &bounds)?;
            if let Some(path) = dot {
                let group = build_group(&spec, &bounds)?;
                fs::write(&path, build_mckay(&group).to_dot())
                    .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
            }
            let text = serde_json::to_string_pretty(&timed).expect("report serializes");
            match out {
                Some(path) => fs::write(&path, text + "\n")
                    .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Cmd::Verify {
            spec,
            max_degree,
            corrupt,
        } => {
            let spec = read_spec(&spec)?;
            let group = build_group(&spec, &bounds)?;
            let outcome = verify_group(&group, max_degree, corrupt, &bounds)?;
            for check in &outcome.checks {
                let verdict = if check.passed { "PASS" } else { "FAIL" };
                match &check.detail {
                    Some(d) => println!("{}: {} ({d})", check.name, verdict),
                    None => println!("{}: {}", check.name, verdict),
                }
            }
            Ok(u8::from(!outcome.all_passed))
        }
        Cmd::Quiver {
            spec,
            dot,
            contraction: want_con,
        } => {
            let spec = read_spec(&spec)?;
            let group = build_group(&spec, &bounds)?;
            let mckay = build_mckay(&group);
            let text = if want_con {
                contraction(&mckay).to_dot()
            } else {
                mckay.to_dot()
            };
            fs::write(&dot, text)
                .map_err(|e| Error::MalformedInput(format!("{}: {e}", dot.display())))?;
            Ok(0)
        }
        Cmd::Center { spec, max_degree } => {
            let spec = read_spec(&spec)?;
            let group = build_group(&spec, &bounds)?;
            let tables = CenterTables::new(&group, &bounds)?;
            let table = tables.center_hilbert(max_degree)?;
            let json = serde_json::json!({
                "max_degree": table.max_degree,
                "dim_z": table.dim_z,
                "dim_r": table.dim_r,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("serializes")
            );
            Ok(0)
        }
        Cmd::Census {
            dim_max,
            order_max,
            samples,
            seed,
            cyclic_only,
            max_degree,
        } => {
            let config = SweepConfig {
                dim_max,
                order_max,
                samples,
                seed,
                cyclic_only,
                max_degree,
            };
            let report = census(&config, &bounds)?;
            let ok = report.failures.is_empty();
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializes")
            );
            Ok(u8::from(!ok))
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QUOTSING_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
