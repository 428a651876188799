use std::path::PathBuf;
use std::process::Command;

use mt_submod::graph::Graph;
use mt_submod::harness::{
    read_raw_records, run_experiment, run_experiment_on, write_outputs, write_raw_records, ExperimentConfig,
    GraphSource, ModeSelection, NamedGraph, RunMode,
};
use mt_submod::graph::Regime;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn small_graph() -> NamedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    NamedGraph {
        name: "pa-50".into(),
        graph: Graph::preferential_attachment(50, 2, &mut rng),
    }
}

fn small_config(regime: Regime) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(Vec::new(), regime, vec![1, 3, 8]);
    cfg.checkpoints = vec![200, 800];
    cfg.repetitions = 3;
    cfg.master_seed = 42;
    cfg
}

fn raw_bytes(records: &[mt_submod::harness::RawRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_raw_records(&mut buf, records).unwrap();
    buf
}

#[test]
fn same_seed_same_bytes_regardless_of_workers() {
    for regime in [Regime::Unit, Regime::RandomLinear, Regime::DegreeLinear] {
        let mut cfg = small_config(regime);
        cfg.workers = Some(1);
        let a = run_experiment_on(&[small_graph()], &cfg).unwrap();
        cfg.workers = Some(4);
        let b = run_experiment_on(&[small_graph()], &cfg).unwrap();
        assert_eq!(raw_bytes(&a.records), raw_bytes(&b.records), "{regime}");

        cfg.master_seed += 1;
        let c = run_experiment_on(&[small_graph()], &cfg).unwrap();
        assert_ne!(raw_bytes(&a.records), raw_bytes(&c.records), "{regime}");
    }
}

#[test]
fn record_layout_and_budget() {
    let cfg = small_config(Regime::Unit);
    let out = run_experiment_on(&[small_graph()], &cfg).unwrap();
    // 2 modes × 3 reps × 3 problems × 2 checkpoints
    assert_eq!(out.records.len(), 36);
    assert_eq!(out.rows.len(), 6);
    for r in &out.records {
        let cost = r.cost.unwrap();
        assert!(cost <= r.bound, "{r:?}");
    }
    // Multitasking best values never decrease across checkpoints of the same run.
    for rep in 0..3 {
        for problem in 0..3 {
            let vals: Vec<f64> = out
                .records
                .iter()
                .filter(|r| r.mode == RunMode::Multitasking && r.repetition == rep && r.problem == problem)
                .map(|r| r.best_f.unwrap())
                .collect();
            assert_eq!(vals.len(), 2);
            assert!(vals[0] <= vals[1]);
        }
    }
}

#[test]
fn multitask_checkpoints_equal_fresh_runs_with_scaled_budget() {
    use mt_submod::harness::{SeedScheme, Stream};
    use mt_submod::prelude::*;

    let g = small_graph();
    let cfg = small_config(Regime::Unit);
    let out = run_experiment_on(std::slice::from_ref(&g), &cfg).unwrap();
    let seeds = SeedScheme::new(cfg.master_seed, &g.name, cfg.regime, &cfg.bounds);
    let f = CoverageObjective::from_graph(&g.graph);
    let cs: Vec<Constraint> = cfg.bounds.iter().map(|&b| Constraint::unit(50, b)).collect();
    let k = cs.len() as u64;
    let ps = ProblemSet::multitask(&f, cs).unwrap();
    for &gen in &cfg.checkpoints {
        let seed = seeds.seed(Some(1), Stream::Multitask);
        let (_, trace) = gsemo::run(&ps, &RunConfig::new(gen * k, seed)).unwrap();
        for problem in 0..3 {
            let rec = out
                .records
                .iter()
                .find(|r| {
                    r.mode == RunMode::Multitasking && r.repetition == 1 && r.problem == problem && r.generations == gen
                })
                .unwrap();
            assert_eq!(rec.best_f, trace.records[0].best[problem].map(|b| b.f));
            assert_eq!(rec.archive_size, trace.records[0].archive_size);
        }
    }
}

#[test]
fn single_repetition_leaves_verdict_empty() {
    let mut cfg = small_config(Regime::Unit);
    cfg.repetitions = 1;
    let out = run_experiment_on(&[small_graph()], &cfg).unwrap();
    assert!(out.rows.iter().all(|r| r.verdict.is_none() && r.h.is_none() && r.std_c.is_none()));
    assert!(out.rows.iter().all(|r| r.mean_c.is_some() && r.mean_m.is_some()));
}

#[test]
fn single_mode_experiments() {
    let mut cfg = small_config(Regime::Unit);
    cfg.modes = ModeSelection::Multitasking;
    let out = run_experiment_on(&[small_graph()], &cfg).unwrap();
    assert!(out.records.iter().all(|r| r.mode == RunMode::Multitasking));
    assert!(out.rows.iter().all(|r| r.mean_c.is_none() && r.verdict.is_none()));
}

#[test]
fn shared_weights_change_the_weight_stream_only() {
    let mut cfg = small_config(Regime::RandomLinear);
    cfg.modes = ModeSelection::Classical;
    let resampled = run_experiment_on(&[small_graph()], &cfg).unwrap();
    cfg.resample_weights_per_run = false;
    let shared = run_experiment_on(&[small_graph()], &cfg).unwrap();
    assert_eq!(shared.records.len(), 18);
    assert_ne!(raw_bytes(&resampled.records), raw_bytes(&shared.records));
    for r in &shared.records {
        assert!(r.cost.unwrap() <= r.bound * 100, "{r:?}");
    }
}

#[test]
fn files_written_and_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::from_file(&fixture("../../presets/smoke.toml")).unwrap();
    let out = run_experiment(&cfg).unwrap();
    write_outputs(dir.path(), &cfg, &out.records, &out.rows).unwrap();
    let raw = std::fs::read(dir.path().join("raw_runs.csv")).unwrap();
    assert_eq!(read_raw_records(raw.as_slice()).unwrap().len(), out.records.len());
    let results = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert!(results.starts_with(
        "graph,regime,bound,generations,mean_classical,std_classical,mean_multitask,std_multitask,H,p,verdict\n"
    ));
    let meta = std::fs::read_to_string(dir.path().join("meta.txt")).unwrap();
    for key in ["generator:", "seed_derivation:", "std_convention:", "weight_sampling:"] {
        assert!(meta.contains(key), "meta lacks {key}");
    }
}

#[test]
fn missing_graph_is_reported() {
    let cfg = ExperimentConfig::new(
        vec![GraphSource {
            path: fixture("no-such-graph.mtx"),
            format: None,
            name: None,
        }],
        Regime::Unit,
        vec![1],
    );
    let err = run_experiment(&cfg).unwrap_err().to_string();
    assert!(err.contains("no-such-graph.mtx"), "{err}");
}

#[test]
fn cli_run_stats_verify() {
    let bin = env!("CARGO_BIN_EXE_mt-submod");
    let dir = tempfile::tempdir().unwrap();
    let preset = fixture("../../presets/smoke.toml");

    let status = Command::new(bin)
        .args(["run", "--config"])
        .arg(&preset)
        .args(["--workers", "2", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());

    let stats = Command::new(bin)
        .args(["stats", "--raw"])
        .arg(dir.path().join("raw_runs.csv"))
        .output()
        .unwrap();
    assert!(stats.status.success());
    let written = std::fs::read(dir.path().join("results.csv")).unwrap();
    assert_eq!(stats.stdout, written);

    let verify = Command::new(bin)
        .args(["verify", "--graph"])
        .arg(fixture("synthetic-80.txt"))
        .args(["--sample", "40", "--trials", "200"])
        .output()
        .unwrap();
    assert!(verify.status.success(), "{}", String::from_utf8_lossy(&verify.stdout));
    assert!(String::from_utf8_lossy(&verify.stdout).contains("overall: PASS"));

    let bad = Command::new(bin).args(["run", "--config", "/nonexistent.toml"]).output().unwrap();
    assert!(!bad.status.success());
}
