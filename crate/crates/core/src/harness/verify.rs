//! Sanity checks for a coverage instance before spending hours on it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitstring::BitString;
use crate::constraint::Constraint;
use crate::error::Result;
use crate::graph::Graph;
use crate::objectives::{CoverageObjective, IncrementalObjective, Objective};
use crate::oracles::{self, PropertyReport, APPROX_RATIO};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Vertices in the induced subgraph used for the property check.
    pub sample_size: usize,
    /// Sampled `(A, B, x)` triples.
    pub trials: usize,
    /// Small induced subgraphs on which greedy is compared with brute force.
    pub small_instances: usize,
    /// Vertex count of those subgraphs.
    pub small_size: usize,
    /// Random single-bit moves when comparing incremental and full evaluation.
    pub incremental_steps: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            sample_size: 500,
            trials: 1000,
            small_instances: 5,
            small_size: 16,
            incremental_steps: 2000,
            seed: 0,
        }
    }
}

/// Greedy against the exact optimum on one small instance.
#[derive(Clone, Debug)]
pub struct GreedyCheck {
    pub n: usize,
    pub bound: u64,
    pub greedy: f64,
    pub optimum: f64,
}

impl GreedyCheck {
    pub fn passed(&self) -> bool {
        self.greedy + 1e-9 >= APPROX_RATIO * self.optimum
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub sampled_vertices: usize,
    pub property: PropertyReport,
    pub greedy: Vec<GreedyCheck>,
    /// Steps where the cached value disagreed with a fresh evaluation.
    pub incremental_mismatches: usize,
    pub incremental_steps: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.property.passed() && self.greedy.iter().all(GreedyCheck::passed) && self.incremental_mismatches == 0
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph: {} vertices, {} edges, max degree {}", self.vertices, self.edges, self.max_degree)?;
        writeln!(
            f,
            "submodular+monotone on {}-vertex induced subgraph: {} ({} trials, {} tight, {} violations)",
            self.sampled_vertices,
            verdict(self.property.passed()),
            self.property.trials,
            self.property.tight,
            self.property.violations.len()
        )?;
        for v in self.property.violations.iter().take(5) {
            writeln!(f, "  {:?}: A={} B={} x={} lhs={} rhs={}", v.kind, v.a, v.b, v.x, v.lhs, v.rhs)?;
        }
        for g in &self.greedy {
            writeln!(
                f,
                "greedy vs optimum (n={}, B={}): {} / {} -> {}",
                g.n,
                g.bound,
                g.greedy,
                g.optimum,
                verdict(g.passed())
            )?;
        }
        writeln!(
            f,
            "incremental evaluation: {} ({} mismatches in {} steps)",
            verdict(self.incremental_mismatches == 0),
            self.incremental_mismatches,
            self.incremental_steps
        )?;
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs the property check, greedy-vs-optimum on small induced subgraphs,
/// and incremental-vs-recompute agreement for coverage on `g`.
pub fn verify_graph(g: &Graph, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let sample = g.sample_induced(opts.sample_size, &mut rng);
    let property = oracles::check_submodular_monotone(&CoverageObjective::from_graph(&sample), opts.trials, rng.random())?;

    let small_size = opts.small_size.min(oracles::BRUTE_FORCE_LIMIT);
    let mut greedy = Vec::with_capacity(opts.small_instances);
    for _ in 0..opts.small_instances {
        let sub = g.sample_induced(small_size, &mut rng);
        let n = sub.vertex_count();
        if n == 0 {
            break;
        }
        let f = CoverageObjective::from_graph(&sub);
        let bound = rng.random_range(1..=n.min(5) as u64);
        let c = Constraint::unit(n, bound);
        let x = oracles::greedy(&f, &c)?;
        let (optimum, _) = oracles::brute_force_opt(&f, &c)?;
        greedy.push(GreedyCheck {
            n,
            bound,
            greedy: f.value(&x),
            optimum,
        });
    }

    let f = CoverageObjective::from_graph(g);
    let n = g.vertex_count();
    let mut incremental_mismatches = 0;
    let mut steps = 0;
    if n > 0 {
        let mut x = BitString::zeros(n);
        let mut state = f.init_state(&x);
        for _ in 0..opts.incremental_steps {
            let j = rng.random_range(0..n);
            if x.flip(j) {
                f.insert(&mut state, j);
            } else {
                f.remove(&mut state, j);
            }
            if f.state_value(&state) != f.value(&x) {
                incremental_mismatches += 1;
            }
            steps += 1;
        }
    }

    Ok(VerifyReport {
        vertices: n,
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        sampled_vertices: sample.vertex_count(),
        property,
        greedy,
        incremental_mismatches,
        incremental_steps: steps,
    })
}
