//! Record CSV and markdown summaries.

use std::fmt::Write as _;
use std::io::{Read, Write};

use anyhow::{bail, Context};
use distbench::{Metric, ScoreTriple};

use crate::compare::{Comparison, TestKind};
use crate::runner::RunRecord;
use crate::summary::{self, ScoreKind};

pub const CSV_HEADER: [&str; 7] = [
    "dataset",
    "metric",
    "noise_level",
    "repetition",
    "accuracy",
    "precision",
    "recall",
];

pub const SKIPPED: &str = "skipped";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

/// Writes records in the given order. Scores use six decimals so output
/// is stable byte for byte.
pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let scores = match r.scores {
            Some(s) => [s.accuracy, s.macro_precision, s.macro_recall].map(|v| format!("{v:.6}")),
            None => [SKIPPED; 3].map(String::from),
        };
        w.write_record([
            r.dataset.as_str(),
            r.metric.abbrev(),
            &r.noise_level.to_string(),
            &r.repetition.to_string(),
            &scores[0],
            &scores[1],
            &scores[2],
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<RunRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        bail!("unexpected header {header:?}");
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let field = |c: usize| {
            row.get(c)
                .with_context(|| format!("line {line}: missing column {}", CSV_HEADER[c]))
        };
        let metric: Metric = field(1)?.parse().with_context(|| format!("line {line}"))?;
        let noise_level: f64 = field(2)?
            .parse()
            .with_context(|| format!("line {line}: noise_level"))?;
        let repetition: usize = field(3)?
            .parse()
            .with_context(|| format!("line {line}: repetition"))?;
        let scores = if field(4)? == SKIPPED {
            None
        } else {
            let num = |c: usize| -> anyhow::Result<f64> {
                field(c)?
                    .parse()
                    .with_context(|| format!("line {line}: {}", CSV_HEADER[c]))
            };
            Some(ScoreTriple {
                accuracy: num(4)?,
                macro_precision: num(5)?,
                macro_recall: num(6)?,
            })
        };
        out.push(RunRecord {
            dataset: field(0)?.to_string(),
            metric,
            noise_level,
            repetition,
            scores,
        });
    }
    Ok(out)
}

pub fn emit_report<W: Write>(
    records: &[RunRecord],
    format: Format,
    mut out: W,
) -> anyhow::Result<()> {
    match format {
        Format::Csv => write_csv(records, out),
        Format::Markdown => {
            out.write_all(markdown(records).as_bytes())?;
            Ok(())
        }
    }
}

fn fmt_score(v: f64) -> String {
    if v.is_nan() {
        SKIPPED.to_string()
    } else {
        format!("{v:.4}")
    }
}

fn fmt_level(level: f64) -> String {
    format!("{level:.1}")
}

/// Overall table, per-dataset accuracy and, when several levels are
/// present, rank tables and mean/std per level.
pub fn markdown(records: &[RunRecord]) -> String {
    let mut s = String::new();
    let levels = summary::levels(records);
    if levels.is_empty() {
        s.push_str("No records.\n");
        return s;
    }
    let base = levels[0];
    overall_table(&mut s, records, base);
    per_dataset_table(&mut s, records, base);
    if levels.len() > 1 {
        for kind in ScoreKind::ALL {
            rank_tables(&mut s, records, &levels, kind);
        }
        for kind in ScoreKind::ALL {
            level_stats(&mut s, records, &levels, kind);
        }
    }
    s
}

fn overall_table(s: &mut String, records: &[RunRecord], level: f64) {
    let rows = summary::summarize(records, level);
    let table = summary::rank_table(records, level, ScoreKind::Accuracy);
    let _ = writeln!(s, "## Overall means at noise level {}\n", fmt_level(level));
    s.push_str("| Rank | Metric | Accuracy | Precision | Recall | Datasets | Skipped |\n");
    s.push_str("|---:|---|---:|---:|---:|---:|---:|\n");
    for r in rows {
        let rank = table.rank_of(r.metric.abbrev()).unwrap_or(0);
        let _ = writeln!(
            s,
            "| {rank} | {} | {} | {} | {} | {} | {} |",
            r.metric.abbrev(),
            fmt_score(r.accuracy),
            fmt_score(r.precision),
            fmt_score(r.recall),
            r.datasets,
            r.skipped
        );
    }
    s.push('\n');
}

fn per_dataset_table(s: &mut String, records: &[RunRecord], level: f64) {
    let datasets = summary::datasets(records);
    let means = summary::dataset_means(records, level);
    let _ = writeln!(
        s,
        "## Mean accuracy per dataset at noise level {}\n",
        fmt_level(level)
    );
    let _ = writeln!(s, "| Metric | {} |", datasets.join(" | "));
    let _ = writeln!(s, "|---|{}", "---:|".repeat(datasets.len()));
    let metrics: Vec<Metric> = summary::metrics(records);
    for m in metrics {
        let cells: Vec<String> = datasets
            .iter()
            .map(|d| {
                means
                    .iter()
                    .find(|x| x.metric == m && &x.dataset == d)
                    .map_or_else(|| SKIPPED.to_string(), |x| format!("{:.4}", x.accuracy))
            })
            .collect();
        let _ = writeln!(s, "| {} | {} |", m.abbrev(), cells.join(" | "));
    }
    s.push('\n');
}

fn rank_tables(s: &mut String, records: &[RunRecord], levels: &[f64], kind: ScoreKind) {
    let _ = writeln!(s, "## Ranking by {} per noise level\n", kind.name());
    for &level in levels {
        let table = summary::rank_table(records, level, kind);
        let _ = writeln!(s, "### Noise level {}\n", fmt_level(level));
        s.push_str("| Rank | Metric | Mean |\n|---:|---|---:|\n");
        for row in &table.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} |",
                row.rank,
                row.metric,
                fmt_score(row.mean)
            );
        }
        s.push('\n');
    }
}

fn level_stats(s: &mut String, records: &[RunRecord], levels: &[f64], kind: ScoreKind) {
    let _ = writeln!(
        s,
        "## Mean {} ± std over datasets per noise level\n",
        kind.name()
    );
    let header: Vec<String> = levels.iter().map(|l| fmt_level(*l)).collect();
    let _ = writeln!(s, "| Metric | {} |", header.join(" | "));
    let _ = writeln!(s, "|---|{}", "---:|".repeat(levels.len()));
    let per_level: Vec<_> = levels
        .iter()
        .map(|l| summary::summarize(records, *l))
        .collect();
    for m in summary::metrics(records) {
        let cells: Vec<String> = per_level
            .iter()
            .map(|rows| {
                rows.iter()
                    .find(|r| r.metric == m && r.datasets > 0)
                    .map_or_else(
                        || SKIPPED.to_string(),
                        |r| format!("{:.4} ± {:.4}", r.get(kind), r.std(kind)),
                    )
            })
            .collect();
        let _ = writeln!(s, "| {} | {} |", m.abbrev(), cells.join(" | "));
    }
    s.push('\n');
}

/// p-value table; significant entries are starred.
pub fn comparison_markdown(
    reference: Metric,
    comparisons: &[Comparison],
    level: f64,
    test: TestKind,
) -> String {
    let name = match test {
        TestKind::RankSum => "Wilcoxon rank-sum",
        TestKind::SignedRank => "Wilcoxon signed-rank",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "## {name}: {} vs others at noise level {} (* p < {})\n",
        reference.abbrev(),
        fmt_level(level),
        crate::compare::SIGNIFICANCE
    );
    s.push_str(
        "| Metric | Accuracy | Precision | Recall | Datasets |\n|---|---:|---:|---:|---:|\n",
    );
    for c in comparisons {
        let cells: Vec<String> = ScoreKind::ALL
            .iter()
            .map(|k| {
                let star = if c.significant(*k) { "*" } else { "" };
                format!("{:.4}{star}", c.p(*k))
            })
            .collect();
        let _ = writeln!(
            s,
            "| {} | {} | {} |",
            c.metric.abbrev(),
            cells.join(" | "),
            c.datasets
        );
    }
    s
}
