use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use distbench::Metric;
use distbench_cli::config::parse_metrics;
use distbench_cli::report::{self, Format};
use distbench_cli::{
    compare_to_reference, load_datasets, run_clean_phase, run_noise_phase, top_metrics,
    ExperimentConfig, TestKind, PUBLISHED_TOP,
};
use log::{error, info};

#[derive(Parser)]
#[command(name = "bench", version, about = "KNN distance-measure benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured metric on the clean datasets.
    Clean {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the noise sweep over the top metrics.
    Noise {
        #[arg(long)]
        config: PathBuf,
        /// Take the N best metrics from the clean results (default: top_n).
        #[arg(long, conflicts_with_all = ["metrics", "published_top"])]
        top: Option<usize>,
        /// Explicit comma-separated metric list.
        #[arg(long, conflicts_with = "published_top")]
        metrics: Option<String>,
        /// Use the published top list instead of local clean results.
        #[arg(long)]
        published_top: bool,
    },
    /// Wilcoxon comparison of a reference metric against the others.
    Compare {
        #[arg(long, default_value = "HasD")]
        reference: String,
        /// Comma-separated metrics to compare against (default: all others).
        #[arg(long)]
        others: Option<String>,
        #[command(flatten)]
        source: RecordSource,
        #[arg(long, default_value_t = 0.0)]
        level: f64,
        #[arg(long, value_enum, default_value_t = TestArg::RankSum)]
        test: TestArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render records as CSV or markdown.
    Report {
        #[arg(long, value_enum, default_value_t = FormatArg::Markdown)]
        format: FormatArg,
        #[command(flatten)]
        source: RecordSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct RecordSource {
    /// Records CSV (default: clean.csv in the configured output directory).
    #[arg(long)]
    records: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

impl RecordSource {
    fn path(&self) -> anyhow::Result<PathBuf> {
        if let Some(p) = &self.records {
            return Ok(p.clone());
        }
        let dir = match &self.config {
            Some(c) => ExperimentConfig::load(c)?.output_dir,
            None => PathBuf::from("results"),
        };
        Ok(dir.join(CLEAN_CSV))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TestArg {
    RankSum,
    SignedRank,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

const CLEAN_CSV: &str = "clean.csv";
const CLEAN_MD: &str = "clean.md";
const NOISE_CSV: &str = "noise.csv";
const NOISE_MD: &str = "noise.md";

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Clean { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let datasets = load_datasets(&cfg)?;
            let records = run_clean_phase(&cfg, &datasets)?;
            write_outputs(&cfg.output_dir, CLEAN_CSV, CLEAN_MD, &records)
        }
        Command::Noise {
            config,
            top,
            metrics,
            published_top,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let datasets = load_datasets(&cfg)?;
            let selected: Vec<Metric> = if let Some(list) = metrics {
                parse_metrics(&list)?
            } else if published_top {
                PUBLISHED_TOP.to_vec()
            } else {
                let n = top.unwrap_or(cfg.top_n);
                let clean_path = cfg.output_dir.join(CLEAN_CSV);
                let clean = if clean_path.exists() {
                    info!("ranking metrics from {}", clean_path.display());
                    report::read_csv(File::open(&clean_path)?)?
                } else {
                    info!(
                        "no clean results at {}; running the clean phase first",
                        clean_path.display()
                    );
                    let records = run_clean_phase(&cfg, &datasets)?;
                    write_outputs(&cfg.output_dir, CLEAN_CSV, CLEAN_MD, &records)?;
                    records
                };
                top_metrics(&clean, n)
            };
            let names: Vec<&str> = selected.iter().map(|m| m.abbrev()).collect();
            info!("noise phase metrics: {}", names.join(", "));
            let records = run_noise_phase(&cfg, &datasets, &selected)?;
            write_outputs(&cfg.output_dir, NOISE_CSV, NOISE_MD, &records)
        }
        Command::Compare {
            reference,
            others,
            source,
            level,
            test,
            out,
        } => {
            let reference: Metric = reference.parse()?;
            let others = match others {
                Some(list) => parse_metrics(&list)?,
                None => Vec::new(),
            };
            let path = source.path()?;
            let records = report::read_csv(
                File::open(&path).with_context(|| format!("opening {}", path.display()))?,
            )?;
            let test = match test {
                TestArg::RankSum => TestKind::RankSum,
                TestArg::SignedRank => TestKind::SignedRank,
            };
            let comparisons = compare_to_reference(&records, reference, &others, level, test)?;
            let text = report::comparison_markdown(reference, &comparisons, level, test);
            write_to(out.as_deref(), text.as_bytes())
        }
        Command::Report {
            format,
            source,
            out,
        } => {
            let path = source.path()?;
            let records = report::read_csv(
                File::open(&path).with_context(|| format!("opening {}", path.display()))?,
            )?;
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Markdown => Format::Markdown,
            };
            let mut buf = Vec::new();
            report::emit_report(&records, format, &mut buf)?;
            write_to(out.as_deref(), &buf)
        }
    }
}

fn write_outputs(
    dir: &Path,
    csv_name: &str,
    md_name: &str,
    records: &[distbench_cli::RunRecord],
) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv_path = dir.join(csv_name);
    let mut w = BufWriter::new(
        File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?,
    );
    report::write_csv(records, &mut w)?;
    w.flush()?;
    let md = report::markdown(records);
    let md_path = dir.join(md_name);
    fs::write(&md_path, &md).with_context(|| format!("writing {}", md_path.display()))?;
    info!("wrote {} and {}", csv_path.display(), md_path.display());
    Ok(())
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
