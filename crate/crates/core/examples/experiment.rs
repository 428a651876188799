//! A complete small experiment on a synthetic graph, written as
//! raw_runs.csv / results.csv / meta.txt.
//!
//! cargo run --release --example experiment -- [OUT_DIR]

use std::path::PathBuf;

use mt_submod::harness::{run_experiment_on, write_outputs, ExperimentConfig, NamedGraph};
use mt_submod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mt_submod::Result<()> {
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("mt-submod-experiment"));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let graph = NamedGraph {
        name: "pa-400".into(),
        graph: Graph::preferential_attachment(400, 3, &mut rng),
    };

    for regime in [Regime::Unit, Regime::RandomLinear, Regime::DegreeLinear] {
        let mut cfg = ExperimentConfig::new(Vec::new(), regime, vec![1, 5, 25, 60]);
        cfg.checkpoints = vec![2_000, 10_000];
        cfg.repetitions = 10;
        cfg.master_seed = 7;
        let result = run_experiment_on(std::slice::from_ref(&graph), &cfg)?;
        let dir = out.join(regime.as_str());
        write_outputs(&dir, &cfg, &result.records, &result.rows)?;
        println!("{regime}: {}", dir.display());
        for r in &result.rows {
            println!(
                "  B = {:>2}, G = {:>5}: classical {:>6.1}  multitask {:>6.1}  {}",
                r.bound,
                r.generations,
                r.mean_c.unwrap_or(f64::NAN),
                r.mean_m.unwrap_or(f64::NAN),
                r.verdict.map_or("", |v| v.symbol())
            );
        }
    }
    Ok(())
}
