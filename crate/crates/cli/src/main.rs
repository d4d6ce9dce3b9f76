use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use teich_core::harness::{
    arc_records, constants_report, run_compare, run_distance, run_phi, run_report, run_verify, to_csv, to_json,
    ArcStatus, ExperimentConfig, ReportFormat,
};

#[derive(Parser)]
#[command(name = "teich", version, about = "Metric estimates on Teichmüller spaces of bordered surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gap, pants and comparison constants for a boundary vector.
    Constants {
        #[command(flatten)]
        common: Common,
        /// Comma-separated boundary lengths; defaults to the config's.
        #[arg(long, value_delimiter = ',')]
        boundary: Option<Vec<f64>>,
    },
    /// Thurston, arc and Teichmüller estimates for the first sampled pair.
    Distance(Common),
    /// One comparison row per sampled pair.
    Compare(Common),
    /// Check the arc-to-curve bound on every sampled pair.
    VerifyArcs(Common),
    /// Thurston distances along a ray before and after forgetting the boundary.
    PhiExperiment(Common),
    /// Empirical almost-isometry constants of the boundary-forgetting map.
    Report(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Experiment config (JSON). Without it: genus 1, two boundaries of length 1.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
            None => ExperimentConfig::new(1, 2, vec![1.0, 1.0]),
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(d) = self.depth {
            cfg.depth = d;
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
            };
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.display().to_string());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Commands without a table only speak JSON; an explicit `--format csv` is an error.
    fn json_only(&self, what: &str) -> Result<()> {
        if matches!(self.format, Some(Format::Csv)) {
            bail!("{what} has no CSV form; use --format json");
        }
        Ok(())
    }
}

fn emit(cfg: &ExperimentConfig, body: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {path}"))?);
            w.write_all(body.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Constants { common, boundary } => {
            common.json_only("constants")?;
            let cfg = common.config()?;
            let b = boundary.unwrap_or_else(|| cfg.boundary.clone());
            emit(&cfg, &to_json(&constants_report(&b)?)?)?;
        }
        Command::Distance(common) => {
            common.json_only("distance")?;
            let cfg = common.config()?;
            emit(&cfg, &to_json(&run_distance(&cfg)?)?)?;
        }
        Command::Compare(common) => {
            let cfg = common.config()?;
            let rows = run_compare(&cfg)?;
            let body = match cfg.format {
                ReportFormat::Csv => to_csv(&rows)?,
                ReportFormat::Json => to_json(&rows)?,
            };
            emit(&cfg, &body)?;
            let unordered = rows.iter().filter(|r| !r.row.ordered).count();
            if unordered > 0 {
                eprintln!("{unordered} rows violate d_A >= d_Th >= 0");
                return Ok(ExitCode::from(2));
            }
        }
        Command::VerifyArcs(common) => {
            let cfg = common.config()?;
            let runs = run_verify(&cfg)?;
            let body = match cfg.format {
                ReportFormat::Csv => to_csv(&arc_records(&runs))?,
                ReportFormat::Json => to_json(&runs)?,
            };
            emit(&cfg, &body)?;
            let count = |s| runs.iter().map(|v| v.count(s)).sum::<usize>();
            eprintln!(
                "C = {:.6}: {} pass, {} fail, {} vacuous, {} without essential curve",
                runs[0].constants.c,
                count(ArcStatus::Pass),
                count(ArcStatus::Fail),
                count(ArcStatus::Vacuous),
                count(ArcStatus::NoEssentialCurve)
            );
            if count(ArcStatus::Fail) > 0 {
                for v in &runs {
                    for f in v.failures() {
                        eprintln!("{}", serde_json::json!({"x1": v.x1, "x2": v.x2, "check": f}));
                    }
                }
                return Ok(ExitCode::from(2));
            }
        }
        Command::PhiExperiment(common) => {
            let cfg = common.config()?;
            let t = run_phi(&cfg)?;
            let body = match cfg.format {
                ReportFormat::Csv => to_csv(&t.rows)?,
                ReportFormat::Json => to_json(&t)?,
            };
            emit(&cfg, &body)?;
            eprintln!(
                "max |d_Th - d_Th(Phi)| = {:.6e} (ceiling {:.6}); max Teichmüller gap lower bound {:.6e} vs log(n+3) = {:.6}",
                t.max_difference, t.ceiling, t.max_teich_diff_lo, t.teich_bound
            );
            if t.exceeded {
                eprintln!("ceiling exceeded");
                return Ok(ExitCode::from(2));
            }
        }
        Command::Report(common) => {
            common.json_only("report")?;
            let cfg = common.config()?;
            emit(&cfg, &to_json(&run_report(&cfg)?)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
