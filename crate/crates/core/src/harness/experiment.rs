use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::report::{aggregate, RawRecord, ResultRow, RunMode};
use super::seeds::{SeedScheme, Stream};
use crate::constraint::Constraint;
use crate::error::{Error, Result};
use crate::graph::{build_constraint, parse_graph, Graph};
use crate::gsemo::{self, ProblemSet, RunConfig};
use crate::objectives::CoverageObjective;

/// A graph with the label used for reports and seed derivation.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    /// Canonically ordered: graph (config order), mode, repetition, problem, generations.
    pub records: Vec<RawRecord>,
    pub rows: Vec<ResultRow>,
}

/// Loads every graph named by `cfg` and runs the experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let graphs = cfg
        .graphs
        .iter()
        .map(|src| {
            Ok(NamedGraph {
                name: src.name(),
                graph: parse_graph(&src.path, src.format())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    run_experiment_on(&graphs, cfg)
}

#[derive(Clone, Copy, Debug)]
enum JobKind {
    Classical(usize),
    Multitask,
}

#[derive(Clone, Copy, Debug)]
struct Job {
    graph: usize,
    repetition: usize,
    kind: JobKind,
}

struct Prepared {
    name: String,
    objective: CoverageObjective,
    graph: Graph,
    seeds: SeedScheme,
}

/// Runs the experiment on graphs already in memory; `cfg.graphs` is ignored.
pub fn run_experiment_on(graphs: &[NamedGraph], cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let prepared: Vec<Prepared> = graphs
        .iter()
        .map(|g| Prepared {
            name: g.name.clone(),
            objective: CoverageObjective::from_graph(&g.graph),
            graph: g.graph.clone(),
            seeds: SeedScheme::new(cfg.master_seed, &g.name, cfg.regime, &cfg.bounds),
        })
        .collect();

    let mut jobs = Vec::new();
    for graph in 0..prepared.len() {
        for repetition in 0..cfg.repetitions {
            if cfg.modes.classical() {
                for i in 0..cfg.problem_count() {
                    jobs.push(Job {
                        graph,
                        repetition,
                        kind: JobKind::Classical(i),
                    });
                }
            }
            if cfg.modes.multitasking() {
                jobs.push(Job {
                    graph,
                    repetition,
                    kind: JobKind::Multitask,
                });
            }
        }
    }

    let execute = || {
        jobs.par_iter()
            .map(|job| run_job(&prepared[job.graph], job, cfg))
            .collect::<Result<Vec<Vec<RawRecord>>>>()
    };
    let batches = match cfg.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(execute)?,
        None => execute()?,
    };

    // par_iter().collect() keeps job order, which is already canonical;
    // the sort pins it down regardless.
    let mut records: Vec<RawRecord> = batches.into_iter().flatten().collect();
    let graph_rank = |name: &str| prepared.iter().position(|p| p.name == name).unwrap_or(usize::MAX);
    records.sort_by(|a, b| {
        (graph_rank(&a.graph), a.mode, a.repetition, a.problem, a.generations)
            .cmp(&(graph_rank(&b.graph), b.mode, b.repetition, b.problem, b.generations))
    });
    let rows = aggregate(&records);
    Ok(ExperimentOutput { records, rows })
}

fn constraints_for(p: &Prepared, cfg: &ExperimentConfig, repetition: usize) -> Result<Vec<Constraint>> {
    let weight_rep = cfg.resample_weights_per_run.then_some(repetition);
    cfg.bounds
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let seed = p.seeds.seed(weight_rep, Stream::Weights { problem: i });
            build_constraint(&p.graph, cfg.regime, b, seed)
        })
        .collect()
}

fn run_job(p: &Prepared, job: &Job, cfg: &ExperimentConfig) -> Result<Vec<RawRecord>> {
    let constraints = constraints_for(p, cfg, job.repetition)?;
    let k = constraints.len() as u64;
    let g_max = cfg.max_generations();
    let record = |mode: RunMode, problem: usize, generations: u64, rec: &gsemo::CheckpointRecord, slot: usize| {
        let best = rec.best[slot];
        RawRecord {
            graph: p.name.clone(),
            regime: cfg.regime,
            mode,
            repetition: job.repetition,
            problem,
            bound: cfg.bounds[problem],
            generations,
            best_f: best.map(|b| b.f),
            cost: best.map(|b| b.cost),
            archive_size: rec.archive_size,
        }
    };

    match job.kind {
        JobKind::Classical(i) => {
            let seed = p.seeds.seed(Some(job.repetition), Stream::Classical { problem: i });
            let ps = ProblemSet::classical(&p.objective, constraints[i].clone())?;
            let run_cfg = RunConfig::new(g_max, seed).with_checkpoints(cfg.checkpoints.clone());
            let (_, trace) = gsemo::run(&ps, &run_cfg)?;
            Ok(trace
                .records
                .iter()
                .zip(&cfg.checkpoints)
                .map(|(rec, &g)| record(RunMode::Classical, i, g, rec, 0))
                .collect())
        }
        JobKind::Multitask => {
            let seed = p.seeds.seed(Some(job.repetition), Stream::Multitask);
            let ps = ProblemSet::multitask(&p.objective, constraints)?;
            let checkpoints: Vec<u64> = cfg.checkpoints.iter().map(|g| g * k).collect();
            let run_cfg = RunConfig::new(g_max * k, seed).with_checkpoints(checkpoints);
            let (_, trace) = gsemo::run(&ps, &run_cfg)?;
            let mut out = Vec::with_capacity(trace.records.len() * ps.len());
            for i in 0..ps.len() {
                for (rec, &g) in trace.records.iter().zip(&cfg.checkpoints) {
                    out.push(record(RunMode::Multitasking, i, g, rec, i));
                }
            }
            Ok(out)
        }
    }
}
