use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use semihilbert::export::{self, RangePlot};
use semihilbert::harness::{self, CampaignConfig, Tolerances};
use semihilbert::{AOperator, CMatrix, WeightGeometry, C64};

#[derive(Parser)]
#[command(
    name = "semihilbert",
    version,
    about = "Numerical ranges in semi-Hilbertian geometry"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute every invariant and region for one (T, A) pair.
    Compute {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        weight: PathBuf,
        /// Number of angles in the support-function sweep.
        #[arg(long, default_value_t = 720)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Boundary samples of W_A; W_max goes to a `_wmax` sibling file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a verification campaign over random instances.
    Verify {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// `2..6`, `2..=6`, `4` or a comma list.
        #[arg(long, default_value = "1..6")]
        dims: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Relative tolerance for geometric tests.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        fail_dir: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-run a serialized instance.
    Replay {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> semihilbert::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> semihilbert::Result<bool> {
    match cli.cmd {
        Cmd::Compute {
            matrix,
            weight,
            grid,
            out,
            csv,
            svg,
        } => {
            let t = CMatrix::read_json(&matrix)?;
            let a = CMatrix::read_json(&weight)?;
            let tols = Tolerances {
                grid,
                ..Tolerances::default()
            };
            let report = harness::verify_instance(&t, &a, &tols)?;
            emit(&report.to_json(), out.as_ref())?;
            if csv.is_some() || svg.is_some() {
                let geom = Arc::new(WeightGeometry::new(&a, tols.rank)?);
                let op = AOperator::with_tol(t, geom, tols.bound)?;
                let plot = RangePlot::new(
                    &op,
                    C64::new(report.c_re, report.c_im),
                    &tols.range_config(),
                )?;
                if let Some(p) = csv {
                    export::write_csv(p, &plot)?;
                }
                if let Some(p) = svg {
                    export::write_svg(p, &plot)?;
                }
            }
            Ok(report.summary.fail == 0)
        }
        Cmd::Verify {
            trials,
            dims,
            seed,
            tol,
            out,
            fail_dir,
            threads,
        } => {
            let mut cfg = CampaignConfig::new(trials, harness::parse_dims(&dims)?, seed);
            if let Some(tol) = tol {
                cfg.tolerances.geom = tol;
            }
            if let Some(n) = threads {
                cfg.threads = n.max(1);
            }
            let run = harness::campaign(&cfg)?;
            let s = &run.summary;
            eprintln!(
                "{} instances: {} pass, {} fail, {} inconclusive verdicts; {} errors",
                s.trials, s.verdicts.pass, s.verdicts.fail, s.verdicts.inconclusive, s.errors
            );
            if let Some(dir) = fail_dir {
                for p in run.write_failures(&dir)? {
                    eprintln!("wrote {}", p.display());
                }
            }
            match out {
                Some(p) => std::fs::write(p, s.to_json())?,
                None => println!("{}", s.to_json()),
            }
            Ok(!s.has_hard_failure())
        }
        Cmd::Replay { instance, out } => {
            let report = harness::replay_path(&instance)?;
            emit(&report.to_json(), out.as_ref())?;
            Ok(report.summary.fail == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
