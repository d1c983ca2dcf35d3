//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use distbench::eval::{rank_sum_test, PValueMethod};
use distbench::metrics::evaluate;
use distbench::noise::inject_with_rows;
use distbench::{
    load_csv, registry, CsvSchema, Dataset, KnnModel, LabeledExample, Metric, NoiseSpec, SplitPlan,
};
use distbench_cli::{run_clean_phase, runner::run_levels, summarize, ExperimentConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

const REAL_DATASETS: [&str; 8] = [
    "iris",
    "wine",
    "sonar",
    "bcw",
    "liver",
    "ionosphere",
    "diabetes",
    "vehicle",
];

fn real_datasets() -> Vec<Dataset> {
    REAL_DATASETS
        .iter()
        .map(|n| load_csv(data_dir().join(format!("{n}.csv")), &CsvSchema::default()).unwrap())
        .collect()
}

// ---------------------------------------------------------------- 1

const V1: [f64; 4] = [5.1, 3.5, 1.4, 0.3];
const V2: [f64; 4] = [5.4, 3.4, 1.7, 0.2];

const PUBLISHED: [(&str, f64); 46] = [
    ("MD", 0.8),
    ("CD", 0.3),
    ("ED", 0.4472),
    ("LD", 0.7153),
    ("SD", 0.0381),
    ("SoD", 0.0734),
    ("KD", 0.0792),
    ("MCD", 0.2),
    ("NID", 0.4),
    ("JacD", 0.0048),
    ("CosD", 0.0016),
    ("ChoD", 0.0564),
    ("BD", -2.34996),
    ("SCD", 0.0297),
    ("MatD", 0.1722),
    ("HeD", 0.2436),
    ("SED", 0.2),
    ("ClaD", 0.2245),
    ("NCSD", 0.1181),
    ("PCSD", 0.1225),
    ("SquD", 0.0591),
    ("PSCSD", 0.1182),
    ("DivD", 0.1008),
    ("AD", 0.2236),
    ("MCED", 0.2236),
    ("SCSD", 0.0591),
    ("KLD", -0.3402),
    ("JefD", 0.1184),
    ("KDD", -0.1853),
    ("JSD", 0.014809),
    ("JDD", 0.0074),
    ("VWHD", 0.8025),
    ("VSDF1", 0.3002),
    ("VSDF2", 0.1349),
    ("VSDF3", 0.1058),
    ("MSCD", 0.1225),
    ("MiSCSD", 0.1181),
    ("AvgD", 0.55),
    ("KJD", 21.2138),
    ("TanD", 0.0149),
    ("HamD", 4.0),
    ("HauD", 0.3),
    ("CSSD", 0.0894),
    ("MeeD", 0.48),
    ("MotD", 0.5190),
    ("HasD", 0.2571),
];

/// Textbook transcriptions, independent of the library kernels.
fn oracle(abbrev: &str, x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let sum = |f: &dyn Fn(f64, f64) -> f64| (0..n).map(|i| f(x[i], y[i])).sum::<f64>();
    let pearson = || {
        let mx = x.iter().sum::<f64>() / n as f64;
        let my = y.iter().sum::<f64>() / n as f64;
        let c = sum(&|a, b| (a - mx) * (b - my));
        let vx = sum(&|a, _| (a - mx).powi(2));
        let vy = sum(&|_, b| (b - my).powi(2));
        c / (vx * vy).sqrt()
    };
    match abbrev {
        "CanD" => sum(&|a, b| (a - b).abs() / (a.abs() + b.abs())),
        "DicD" => 1.0 - 2.0 * sum(&|a, b| a * b) / (sum(&|a, _| a * a) + sum(&|_, b| b * b)),
        "ASCSD" => 2.0 * sum(&|a, b| (a - b).powi(2) * (a + b) / (a * b)),
        "WIAD" => {
            let (sx, sy): (f64, f64) = (x.iter().sum(), y.iter().sum());
            0.5 * sum(&|a, b| (a / sx - b / sy).abs())
        }
        "TopD" => sum(&|a, b| a * (2.0 * a / (a + b)).ln() + b * (2.0 * b / (a + b)).ln()),
        "PeaD" => 1.0 - pearson(),
        "CorD" => 0.5 * (1.0 - pearson()),
        "SPeaD" => 1.0 - pearson().powi(2),
        _ => unreachable!(),
    }
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (abbrev, expected) in PUBLISHED {
        let got = abbrev
            .parse::<Metric>()
            .unwrap()
            .distance(&V1, &V2)
            .unwrap();
        let err = (got - expected).abs();
        worst = worst.max(err);
        if err > 1e-3 {
            bad.push(abbrev);
        }
    }
    let mut worst_derived = 0.0f64;
    for abbrev in [
        "CanD", "DicD", "ASCSD", "WIAD", "TopD", "PeaD", "CorD", "SPeaD",
    ] {
        let got = abbrev
            .parse::<Metric>()
            .unwrap()
            .distance(&V1, &V2)
            .unwrap();
        let err = (got - oracle(abbrev, &V1, &V2)).abs();
        worst_derived = worst_derived.max(err);
        if err > 1e-6 {
            bad.push(abbrev);
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} published values (max err {worst:.2e}), 8 derived values (max err {worst_derived:.2e}){}",
            PUBLISHED.len(),
            if bad.is_empty() { String::new() } else { format!("; off: {bad:?}") }
        ),
    )
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let ds = distbench::read_csv(
        "toy",
        "5,4,3,1\n1,2,2,2\n1,2,3,2\n".as_bytes(),
        &CsvSchema::default(),
    )
    .unwrap();
    let ed = Metric::Euclidean.descriptor();
    let q = [4.0, 4.0, 2.0];
    let model = KnnModel::new(ds.full_view(), ed, 3).unwrap();
    let dists: Vec<f64> = model
        .neighbors(&q)
        .unwrap()
        .iter()
        .map(|n| n.distance)
        .collect();
    let dist_ok = dists
        .iter()
        .zip([1.4, 3.6, 3.7])
        .all(|(d, e)| (d - e).abs() <= 0.05);
    let k1 = &ds.class_names()[KnnModel::new(ds.full_view(), ed, 1)
        .unwrap()
        .classify(&q)
        .unwrap()];
    let k3 = &ds.class_names()[model.classify(&q).unwrap()];
    outcome(
        dist_ok && k1 == "1" && k3 == "2",
        format!("distances {dists:.3?}, k=1 -> {k1}, k=3 -> {k3}"),
    )
}

// ---------------------------------------------------------------- 3

fn domain_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
    if rng.gen_bool(0.2) {
        v[rng.gen_range(0..n)] = 0.0;
    }
    v
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = Vec::new();
    for m in registry() {
        for _ in 0..1000 {
            let n = rng.gen_range(1..12);
            let (x, y) = (domain_vec(&mut rng, n), domain_vec(&mut rng, n));
            let xy = evaluate(m, &x, &y).unwrap();
            let ok = xy.is_finite()
                && (!m.flags.symmetric || xy == evaluate(m, &y, &x).unwrap())
                && (!m.flags.zero_self || evaluate(m, &x, &x).unwrap().abs() <= 1e-12)
                && (!m.flags.nonneg_output || xy >= 0.0);
            if !ok {
                violations.push(format!("{} on {x:?},{y:?}", m.abbrev));
                break;
            }
        }
    }
    let mut triangle_fail = Vec::new();
    for abbrev in ["MD", "ED", "CD", "HasD", "MatD"] {
        let m = abbrev.parse::<Metric>().unwrap().descriptor();
        for _ in 0..10_000 {
            let n = rng.gen_range(1..8);
            let (x, y, z) = (
                domain_vec(&mut rng, n),
                domain_vec(&mut rng, n),
                domain_vec(&mut rng, n),
            );
            let d = |a: &[f64], b: &[f64]| evaluate(m, a, b).unwrap();
            if d(&x, &z) > d(&x, &y) + d(&y, &z) + 1e-9 {
                triangle_fail.push(abbrev);
                break;
            }
        }
    }
    let pass = violations.is_empty() && triangle_fail.is_empty();
    outcome(
        pass,
        if pass {
            "54 metrics x 1000 pairs; triangle over 10000 triples for MD, ED, CD, HasD, MatD"
                .to_string()
        } else {
            format!("axiom violations {violations:?}; triangle failures {triangle_fail:?}")
        },
    )
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    use Metric::*;
    let groups: [&[Metric]; 5] = [
        &[Manhattan, MeanCharacter, NonIntersection],
        &[Euclidean, SquaredEuclidean, Average],
        &[Topsoe, JensenShannon],
        &[SquaredChiSquare, ProbabilisticSymmetricChiSquare],
        &[SquaredChord, Matusita, Hellinger],
    ];
    let mut disagreements = 0usize;
    let mut predictions = 0usize;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let examples = (0..100)
            .map(|i| LabeledExample {
                features: (0..8)
                    .map(|_| rng.gen_range(0.0..1.0) + 0.3 * (i % 3) as f64)
                    .collect(),
                class: i % 3,
            })
            .collect();
        let ds = Dataset::new("syn", examples, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let (train, test) = SplitPlan::default().split(&ds, 0).unwrap();
        for group in groups {
            let preds: Vec<Vec<usize>> = group
                .iter()
                .map(|m| {
                    KnnModel::new(train.clone(), m.descriptor(), 1)
                        .unwrap()
                        .classify_all(&test)
                        .unwrap()
                })
                .collect();
            for p in &preds[1..] {
                predictions += p.len();
                disagreements += p.iter().zip(&preds[0]).filter(|(a, b)| a != b).count();
            }
        }
    }
    outcome(
        disagreements == 0,
        format!("{disagreements} disagreements over {predictions} paired predictions, 20 datasets"),
    )
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let examples: Vec<LabeledExample> = (0..1000)
        .map(|i| LabeledExample {
            features: (0..5).map(|_| rng.gen_range(-3.0..7.0)).collect(),
            class: i % 4,
        })
        .collect();
    let ds = Dataset::new("n1000", examples, (0..4).map(|c| c.to_string()).collect()).unwrap();
    let mut problems = Vec::new();
    for step in 1..=9 {
        let level = step as f64 / 10.0;
        let noisy = inject_with_rows(&ds, &NoiseSpec::new(level, 77 + step)).unwrap();
        let changed: Vec<usize> = (0..ds.len())
            .filter(|&i| ds.examples()[i].features != noisy.dataset.examples()[i].features)
            .collect();
        let in_bounds = noisy.dataset.examples().iter().all(|e| {
            e.features
                .iter()
                .enumerate()
                .all(|(j, v)| *v >= ds.attr_min()[j] && *v <= ds.attr_max()[j])
        });
        let labels_same = ds
            .examples()
            .iter()
            .zip(noisy.dataset.examples())
            .all(|(a, b)| a.class == b.class);
        if changed.len() != step as usize * 100
            || changed != noisy.corrupted
            || !in_bounds
            || !labels_same
        {
            problems.push(format!("level {level}: {} changed", changed.len()));
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            "levels 0.1..0.9 on 1000 rows: exact counts, in-bounds values, labels unchanged"
                .to_string()
        } else {
            problems.join("; ")
        },
    )
}

// ---------------------------------------------------------------- 6

/// All vendored real datasets, seed fixed in advance; no selection.
fn criterion_6(soft: &mut Vec<String>) -> Outcome {
    let datasets = real_datasets();
    let cfg = ExperimentConfig {
        datasets: vec!["in-memory".into()],
        metrics: vec![Metric::Hassanat, Metric::Euclidean, Metric::Manhattan],
        master_seed: 0,
        ..ExperimentConfig::default()
    };
    let records = run_levels(&cfg, &datasets, &cfg.metrics, &[0.0, 0.9]).unwrap();
    let clean = summarize(&records, 0.0);
    let noisy = summarize(&records, 0.9);
    let mut pass = true;
    let mut parts = Vec::new();
    for m in &cfg.metrics {
        let c = clean.iter().find(|s| s.metric == *m).unwrap().accuracy;
        let n = noisy.iter().find(|s| s.metric == *m).unwrap().accuracy;
        pass &= n >= c - 0.35;
        parts.push(format!("{} {c:.4}->{n:.4} (drop {:.4})", m.abbrev(), c - n));
    }
    let hasd = clean
        .iter()
        .find(|s| s.metric == Metric::Hassanat)
        .unwrap()
        .accuracy;
    let ed = clean
        .iter()
        .find(|s| s.metric == Metric::Euclidean)
        .unwrap()
        .accuracy;
    soft.push(format!(
        "soft: HasD mean accuracy {hasd:.4} {} ED {ed:.4} over {} real datasets",
        if hasd >= ed { ">=" } else { "<" },
        datasets.len()
    ));
    outcome(
        pass,
        format!(
            "{} datasets; {}; slack 0.35",
            datasets.len(),
            parts.join(", ")
        ),
    )
}

// ---------------------------------------------------------------- 7

fn enumerate_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let n = pooled.len();
    // midranks by counting
    let ranks: Vec<f64> = pooled
        .iter()
        .map(|v| {
            let below = pooled.iter().filter(|w| *w < v).count() as f64;
            let equal = pooled.iter().filter(|w| *w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let s: f64 = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ranks[i])
            .sum();
        total += 1;
        le += (s <= observed + 1e-9) as u64;
        ge += (s >= observed - 1e-9) as u64;
    }
    (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n1 in 1..12usize {
        for n2 in 1..=(12 - n1) {
            for trial in 0..20 {
                // alternate continuous values and a coarse grid with ties
                let mut draw = |n: usize| -> Vec<f64> {
                    (0..n)
                        .map(|_| {
                            if trial % 2 == 0 {
                                rng.gen_range(0.0..1.0)
                            } else {
                                rng.gen_range(0..4) as f64
                            }
                        })
                        .collect()
                };
                let (a, b) = (draw(n1), draw(n2));
                let p = distbench::wilcoxon_rank_sum(&a, &b).unwrap();
                worst = worst.max((p - enumerate_p(&a, &b)).abs());
                cases += 1;
            }
        }
    }
    let mut self_ok = true;
    for n in 1..=12 {
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        self_ok &= distbench::wilcoxon_rank_sum(&a, &a).unwrap() == 1.0;
        self_ok &= rank_sum_test(&a, &a, PValueMethod::Normal).unwrap().p_value == 1.0;
    }
    outcome(
        worst <= 0.03 && self_ok,
        format!("{cases} samples over all size pairs with n1+n2<=12, max |p - exact| = {worst:.2e}; p(a,a)=1: {self_ok}"),
    )
}

// ---------------------------------------------------------------- 8

/// Banknote-shaped surrogate: 1372 rows, 4 features, 2 classes separated by
/// a hyperplane with a margin.
fn banknote_surrogate() -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(1372);
    let w = [0.6, -0.4, 0.5, 0.3];
    let mut examples = Vec::with_capacity(1372);
    while examples.len() < 1372 {
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-8.0..8.0)).collect();
        let s: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() + 0.5;
        if s.abs() < 0.5 {
            continue;
        }
        examples.push(LabeledExample {
            features: x,
            class: usize::from(s > 0.0),
        });
    }
    Dataset::new("banknote_surrogate", examples, vec!["0".into(), "1".into()]).unwrap()
}

fn criterion_8() -> Outcome {
    let ds = banknote_surrogate();
    let cfg = ExperimentConfig {
        datasets: vec!["in-memory".into()],
        metrics: vec![Metric::Euclidean],
        master_seed: 8,
        ..ExperimentConfig::default()
    };
    let records = run_clean_phase(&cfg, std::slice::from_ref(&ds)).unwrap();
    let accs: Vec<f64> = records.iter().map(|r| r.scores.unwrap().accuracy).collect();
    let mean = accs.iter().sum::<f64>() / accs.len() as f64;
    outcome(
        mean >= 0.98 && accs.len() == 10,
        format!("synthetic 1372x4 separable surrogate, ED k=1, 10 splits: mean accuracy {mean:.4}"),
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let data = data_dir().canonicalize().unwrap();
    let mut outputs = Vec::new();
    for (run, workers) in [(1, "1"), (2, "4")] {
        let out = dir.path().join(format!("run{run}"));
        let cfg_path = dir.path().join(format!("run{run}.conf"));
        std::fs::write(
            &cfg_path,
            format!(
                "datasets = {d}/iris.csv, {d}/wine.csv, {d}/ionosphere.csv\nmetrics = all\nmaster_seed = 99\noutput_dir = {}\n",
                out.display(),
                d = data.display()
            ),
        )
        .unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_bench"))
            .args(["clean", "--config"])
            .arg(&cfg_path)
            .env("BENCH_WORKERS", workers)
            .env("RUST_LOG", "warn")
            .status()
            .unwrap();
        if !status.success() {
            return outcome(false, format!("bench clean exited with {status}"));
        }
        outputs.push(std::fs::read(out.join("clean.csv")).unwrap());
    }
    outcome(
        outputs[0] == outputs[1] && !outputs[0].is_empty(),
        format!(
            "two runs (1 and 4 workers), {} bytes each, identical: {}",
            outputs[0].len(),
            outputs[0] == outputs[1]
        ),
    )
}

type Check = Box<dyn FnOnce(&mut Vec<String>) -> Outcome>;

fn main() {
    let mut soft = Vec::new();
    let criteria: Vec<(&str, Check)> = vec![
        ("golden metric values", Box::new(|_| criterion_1())),
        ("toy KNN reproduction", Box::new(|_| criterion_2())),
        ("metric axioms", Box::new(|_| criterion_3())),
        ("argmin equivalence", Box::new(|_| criterion_4())),
        ("noise-injection contract", Box::new(|_| criterion_5())),
        ("noise degradation", Box::new(criterion_6)),
        ("Wilcoxon oracle", Box::new(|_| criterion_7())),
        ("separable dataset", Box::new(|_| criterion_8())),
        ("determinism", Box::new(|_| criterion_9())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let o = check(&mut soft);
        failed += usize::from(!o.pass);
        println!(
            "criterion {} {:<26} {} ({:.1?}) {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            started.elapsed(),
            o.detail
        );
    }
    for line in soft {
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
