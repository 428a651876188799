//! CSV reports: one raw line per (mode, repetition, problem, checkpoint)
//! and one aggregated line per (graph, problem, checkpoint).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::config::ExperimentConfig;
use super::seeds::SeedScheme;
use crate::error::{Error, Result};
use crate::graph::{Regime, RANDOM_LINEAR_SCALE, RANDOM_WEIGHT_RANGE};
use crate::stats::{self, Verdict, SIGNIFICANCE};

pub const RAW_HEADER: [&str; 10] = [
    "graph",
    "regime",
    "mode",
    "repetition",
    "problem",
    "bound",
    "generations",
    "best_f",
    "cost",
    "archive_size",
];

pub const RESULTS_HEADER: [&str; 11] = [
    "graph",
    "regime",
    "bound",
    "generations",
    "mean_classical",
    "std_classical",
    "mean_multitask",
    "std_multitask",
    "H",
    "p",
    "verdict",
];

/// Significant digits for raw values, H and p.
const RAW_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RunMode {
    Classical,
    Multitasking,
}

impl RunMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RunMode::Classical => "classical",
            RunMode::Multitasking => "multitask",
        }
    }
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RunMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(RunMode::Classical),
            "multitask" => Ok(RunMode::Multitasking),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// Best feasible value for one problem at one checkpoint of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RawRecord {
    pub graph: String,
    pub regime: Regime,
    pub mode: RunMode,
    pub repetition: usize,
    /// 0-based index into the config's bounds.
    pub problem: usize,
    /// Nominal bound (before any regime scaling).
    pub bound: u64,
    /// Generations per problem; the multitasking run was at iteration `k ·` this.
    pub generations: u64,
    pub best_f: Option<f64>,
    /// Cost in computation units (random-linear costs stay scaled by 100).
    pub cost: Option<u64>,
    pub archive_size: usize,
}

/// One line of `results.csv`. Fields for a mode that was not run, or with
/// fewer than two samples, are empty.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub graph: String,
    pub regime: Regime,
    pub problem: usize,
    pub bound: u64,
    pub generations: u64,
    pub mean_c: Option<f64>,
    pub std_c: Option<f64>,
    pub mean_m: Option<f64>,
    pub std_m: Option<f64>,
    pub h: Option<f64>,
    pub p: Option<f64>,
    pub verdict: Option<Verdict>,
}

/// Groups raw records by (graph, problem, generations) and compares the
/// modes. Rows follow first appearance of the graph, then problem index,
/// then generations.
pub fn aggregate(records: &[RawRecord]) -> Vec<ResultRow> {
    #[derive(Default)]
    struct Bucket {
        regime: Option<Regime>,
        bound: u64,
        classical: Vec<f64>,
        multitask: Vec<f64>,
    }

    let mut graph_order: Vec<&str> = Vec::new();
    let mut buckets: BTreeMap<(usize, usize, u64), Bucket> = BTreeMap::new();
    for r in records {
        let gi = match graph_order.iter().position(|g| *g == r.graph) {
            Some(i) => i,
            None => {
                graph_order.push(&r.graph);
                graph_order.len() - 1
            }
        };
        let b = buckets.entry((gi, r.problem, r.generations)).or_default();
        b.regime = Some(r.regime);
        b.bound = r.bound;
        if let Some(v) = r.best_f {
            match r.mode {
                RunMode::Classical => b.classical.push(v),
                RunMode::Multitasking => b.multitask.push(v),
            }
        }
    }

    buckets
        .into_iter()
        .map(|((gi, problem, generations), b)| {
            let summary = |xs: &[f64]| {
                if xs.is_empty() {
                    (None, None)
                } else {
                    (Some(stats::mean(xs)), stats::sample_std(xs))
                }
            };
            let (mean_c, std_c) = summary(&b.classical);
            let (mean_m, std_m) = summary(&b.multitask);
            let cmp = stats::compare(&b.classical, &b.multitask).ok();
            ResultRow {
                graph: graph_order[gi].to_string(),
                regime: b.regime.expect("bucket has at least one record"),
                problem,
                bound: b.bound,
                generations,
                mean_c,
                std_c,
                mean_m,
                std_m,
                h: cmp.as_ref().map(|c| c.h),
                p: cmp.as_ref().map(|c| c.p),
                verdict: cmp.map(|c| c.verdict),
            }
        })
        .collect()
}

/// `x` rounded to `digits` significant digits, printed in plain decimal
/// notation with '.' as separator.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific notation parses");
    format!("{rounded}")
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn one_decimal(x: f64) -> String {
    format!("{x:.1}")
}

fn raw_digits(x: f64) -> String {
    format_significant(x, RAW_DIGITS)
}

pub fn write_raw_records<W: Write>(out: W, records: &[RawRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RAW_HEADER)?;
    for r in records {
        w.write_record([
            r.graph.clone(),
            r.regime.to_string(),
            r.mode.to_string(),
            r.repetition.to_string(),
            r.problem.to_string(),
            r.bound.to_string(),
            r.generations.to_string(),
            opt(r.best_f, raw_digits),
            opt(r.cost, |c| c.to_string()),
            r.archive_size.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<raw records>", e))?;
    Ok(())
}

pub fn read_raw_records<R: Read>(input: R) -> Result<Vec<RawRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(RAW_HEADER) {
        return Err(Error::Config(format!(
            "unexpected raw header '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |idx: usize| rec.get(idx).unwrap_or("");
        let bad = |what: &str| Error::Config(format!("raw record line {line}: invalid {what} '{}'", field(RAW_HEADER.iter().position(|h| *h == what).unwrap_or(0))));
        let parse_opt_f = |s: &str| -> std::result::Result<Option<f64>, ()> {
            if s.is_empty() { Ok(None) } else { s.parse().map(Some).map_err(|_| ()) }
        };
        let parse_opt_u = |s: &str| -> std::result::Result<Option<u64>, ()> {
            if s.is_empty() { Ok(None) } else { s.parse().map(Some).map_err(|_| ()) }
        };
        out.push(RawRecord {
            graph: field(0).to_string(),
            regime: field(1).parse().map_err(|_| bad("regime"))?,
            mode: field(2).parse().map_err(|_| bad("mode"))?,
            repetition: field(3).parse().map_err(|_| bad("repetition"))?,
            problem: field(4).parse().map_err(|_| bad("problem"))?,
            bound: field(5).parse().map_err(|_| bad("bound"))?,
            generations: field(6).parse().map_err(|_| bad("generations"))?,
            best_f: parse_opt_f(field(7)).map_err(|_| bad("best_f"))?,
            cost: parse_opt_u(field(8)).map_err(|_| bad("cost"))?,
            archive_size: field(9).parse().map_err(|_| bad("archive_size"))?,
        });
    }
    Ok(out)
}

pub fn write_results<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in rows {
        w.write_record([
            r.graph.clone(),
            r.regime.to_string(),
            r.bound.to_string(),
            r.generations.to_string(),
            opt(r.mean_c, one_decimal),
            opt(r.std_c, one_decimal),
            opt(r.mean_m, one_decimal),
            opt(r.std_m, one_decimal),
            opt(r.h, raw_digits),
            opt(r.p, raw_digits),
            opt(r.verdict, |v| v.symbol().to_string()),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<results>", e))?;
    Ok(())
}

/// Conventions needed to re-derive or interpret the CSV files.
pub fn write_meta<W: Write>(mut out: W, cfg: &ExperimentConfig) -> std::io::Result<()> {
    let (lo, hi) = RANDOM_WEIGHT_RANGE;
    writeln!(out, "generator: ChaCha8Rng (rand_chacha 0.9); mutation gaps from rand_distr 0.5 Geometric(1/n)")?;
    writeln!(out, "seed_derivation: {}", SeedScheme::DESCRIPTION)?;
    writeln!(out, "master_seed: {}", cfg.master_seed)?;
    writeln!(
        out,
        "budget: classical = k runs of G_max iterations; multitask = 1 run of k*G_max iterations; checkpoint G read at iteration G (classical) and k*G (multitask)"
    )?;
    writeln!(out, "init: all-zeros")?;
    writeln!(out, "std_convention: sample standard deviation (n-1 denominator)")?;
    writeln!(
        out,
        "weight_sampling: u ~ U[{lo},{hi}) continuous, c_v = ceil(u), bound x{RANDOM_LINEAR_SCALE}; independent per problem; resampled per repetition: {}",
        cfg.resample_weights_per_run
    )?;
    writeln!(out, "cost_units: raw cost column is unscaled for unit/degree-linear and x{RANDOM_LINEAR_SCALE} for random-linear; bound columns are nominal")?;
    writeln!(
        out,
        "verdict_rule: Kruskal-Wallis H (tie-corrected, chi-square df=1); significant if p <= {SIGNIFICANCE}; direction by mean rank; +* multitask better, -* classical better, = no difference"
    )?;
    writeln!(out, "formatting: results means/std 1 decimal; raw values, H and p 12 significant digits")?;
    writeln!(out, "--- config ---")?;
    write!(out, "{}", cfg.to_toml_string())
}

/// Writes `raw_runs.csv`, `results.csv` and `meta.txt` into `dir`.
pub fn write_outputs(dir: &Path, cfg: &ExperimentConfig, records: &[RawRecord], rows: &[ResultRow]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let create = |name: &str| {
        let path = dir.join(name);
        fs::File::create(&path).map_err(|e| Error::io(&path, e))
    };
    write_raw_records(std::io::BufWriter::new(create("raw_runs.csv")?), records)?;
    write_results(std::io::BufWriter::new(create("results.csv")?), rows)?;
    let meta_path = dir.join("meta.txt");
    write_meta(std::io::BufWriter::new(create("meta.txt")?), cfg).map_err(|e| Error::io(&meta_path, e))?;
    Ok(())
}
