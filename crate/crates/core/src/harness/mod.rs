//! Repeated classical-vs-multitasking experiments on coverage problems.
//!
//! A repetition solves the `k` problems `(coverage, c_i, B_i)` twice:
//! classically, with `k` independent runs of `G_max` iterations each, and
//! multitasking, with one run of `k · G_max` iterations over all `k`
//! constraints. Generation checkpoints `G` map to iteration `G` in the
//! classical runs and `k · G` in the multitasking run, so both modes spend
//! the same number of evaluations per problem.

mod config;
mod experiment;
mod report;
mod seeds;
mod verify;

pub use config::{ExperimentConfig, GraphSource, ModeSelection, DEFAULT_CHECKPOINTS, DEFAULT_REPETITIONS};
pub use experiment::{run_experiment, run_experiment_on, ExperimentOutput, NamedGraph};
pub use report::{
    aggregate, format_significant, read_raw_records, write_meta, write_outputs, write_raw_records,
    write_results, RawRecord, ResultRow, RunMode, RAW_HEADER, RESULTS_HEADER,
};
pub use seeds::{SeedScheme, Stream};
pub use verify::{verify_graph, GreedyCheck, VerifyOptions, VerifyReport};
