//! GSEMO with the classical and the multitasking fitness formulations.
//!
//! One iteration selects a uniformly random archive member, flips each bit
//! independently with probability `1/n`, evaluates the offspring and offers
//! it to the archive. Every iteration counts as one evaluation of `f`,
//! including iterations whose offspring equals its parent or is rejected.
//!
//! Offspring are evaluated through the objective's incremental cache: the
//! parent's cache is patched with the flipped bits, read, and restored.
//! Infeasible offspring skip the objective entirely since their primary
//! value is `-1` regardless of `f`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::constraint::{population_bound, Constraint};
use crate::error::{Error, Result};
use crate::objectives::{IncrementalObjective, Objective};
use crate::pareto::{ObjectiveVector, Population};

/// Primary value given to points that violate every constraint.
pub const INFEASIBLE_PRIMARY: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// One problem `(f, c, B)`.
    ClassicalSingle,
    /// `k` problems sharing `f`; a point counts as feasible if it meets any bound.
    Multitasking,
}

/// The problems `(f, c_i, B_i)` for `i = 1..k` optimized by one GSEMO run.
#[derive(Clone, Debug)]
pub struct ProblemSet<F> {
    objective: F,
    constraints: Vec<Constraint>,
    mode: Mode,
}

impl<F: Objective> ProblemSet<F> {
    pub fn new(objective: F, constraints: Vec<Constraint>, mode: Mode) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::contract("a problem set needs at least one constraint"));
        }
        if mode == Mode::ClassicalSingle && constraints.len() != 1 {
            return Err(Error::contract(format!(
                "classical mode takes exactly one constraint, got {}",
                constraints.len()
            )));
        }
        let n = objective.ground_size();
        if let Some((i, c)) = constraints.iter().enumerate().find(|(_, c)| c.len() != n) {
            return Err(Error::contract(format!(
                "constraint {i} has {} weights but the ground set has {n} elements",
                c.len()
            )));
        }
        Ok(ProblemSet {
            objective,
            constraints,
            mode,
        })
    }

    pub fn classical(objective: F, constraint: Constraint) -> Result<Self> {
        Self::new(objective, vec![constraint], Mode::ClassicalSingle)
    }

    pub fn multitask(objective: F, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new(objective, constraints, Mode::Multitasking)
    }

    pub fn objective(&self) -> &F {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of problems `k`.
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ground_size(&self) -> usize {
        self.objective.ground_size()
    }

    /// `U` if every constraint is unit or uniform-weighted.
    pub fn population_bound(&self) -> Option<usize> {
        population_bound(&self.constraints, self.ground_size()).ok()
    }

    /// Objective vector of `x` under this set's mode. `f` is evaluated at
    /// most once, and not at all when `x` violates every bound.
    pub fn fitness(&self, x: &BitString) -> Result<ObjectiveVector> {
        if x.len() != self.ground_size() {
            return Err(Error::contract(format!(
                "bit string has length {}, problem set expects {}",
                x.len(),
                self.ground_size()
            )));
        }
        let costs: Vec<u64> = self.constraints.iter().map(|c| c.cost(x)).collect();
        let primary = if self.any_feasible(&costs) {
            self.objective.value(x)
        } else {
            INFEASIBLE_PRIMARY
        };
        Ok(ObjectiveVector::new(primary, costs))
    }

    fn any_feasible(&self, costs: &[u64]) -> bool {
        costs
            .iter()
            .zip(&self.constraints)
            .any(|(&cost, c)| cost <= c.bound())
    }
}

/// `(g1, -c)` with `g1 = f(x)` if `c(x) ≤ B`, else `-1`.
pub fn fitness_classical<F: Objective>(ps: &ProblemSet<F>, x: &BitString) -> Result<ObjectiveVector> {
    if ps.mode() != Mode::ClassicalSingle {
        return Err(Error::contract("classical fitness needs a classical problem set"));
    }
    ps.fitness(x)
}

/// `(g1, -c1, ..., -ck)` with `g1 = f(x)` if some `c_i(x) ≤ B_i`, else `-1`.
pub fn fitness_multitask<F: Objective>(ps: &ProblemSet<F>, x: &BitString) -> Result<ObjectiveVector> {
    if ps.mode() != Mode::Multitasking {
        return Err(Error::contract("multitask fitness needs a multitasking problem set"));
    }
    ps.fitness(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Init {
    /// Uniformly random bit string.
    RandomUniform,
    /// `0^n`
    AllZeros,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub init: Init,
    /// Number of iterations, i.e. offspring evaluations.
    pub budget: u64,
    /// Iteration counts at which the trace is sampled; sorted, within `0..=budget`.
    pub checkpoints: Vec<u64>,
    pub seed: u64,
}

impl RunConfig {
    /// All-zeros start with a single checkpoint at the end of the budget.
    pub fn new(budget: u64, seed: u64) -> Self {
        RunConfig {
            init: Init::AllZeros,
            budget,
            checkpoints: vec![budget],
            seed,
        }
    }

    pub fn with_init(mut self, init: Init) -> Self {
        self.init = init;
        self
    }

    pub fn with_checkpoints(mut self, checkpoints: Vec<u64>) -> Self {
        self.checkpoints = checkpoints;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("checkpoints must be strictly increasing".into()));
        }
        if let Some(&last) = self.checkpoints.last() {
            if last > self.budget {
                return Err(Error::Config(format!(
                    "checkpoint {last} lies beyond the budget {}",
                    self.budget
                )));
            }
        }
        Ok(())
    }
}

/// Best feasible archive member for one problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BestFeasible {
    pub f: f64,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointRecord {
    pub iteration: u64,
    pub archive_size: usize,
    /// Indexed by problem; `None` if no member is feasible for it.
    pub best: Vec<Option<BestFeasible>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub records: Vec<CheckpointRecord>,
    /// Total offspring evaluated.
    pub evaluations: u64,
    /// Largest archive size seen at any point of the run.
    pub peak_archive_size: usize,
    /// `U`, when the constraints admit it; the run asserts `|P| ≤ U` throughout.
    pub population_bound: Option<usize>,
}

/// Archive member maximizing `f` among those feasible for problem `i`
/// (0-based). Ties go to lower `c_i`, then fewer ones, then the smaller
/// bit string.
pub fn extract_best<S, F: Objective>(
    population: &Population<S>,
    ps: &ProblemSet<F>,
    i: usize,
) -> Option<(BitString, f64)> {
    best_member(population, ps, i).map(|idx| {
        let m = population.get(idx);
        (m.x.clone(), m.fitness.primary())
    })
}

fn best_member<S, F: Objective>(population: &Population<S>, ps: &ProblemSet<F>, i: usize) -> Option<usize> {
    let bound = ps.constraints()[i].bound();
    let mut best: Option<(usize, f64, u64, usize)> = None;
    for (idx, m) in population.members().iter().enumerate() {
        let cost = m.fitness.costs()[i];
        if cost > bound {
            continue;
        }
        let f = m.fitness.primary();
        let ones = m.x.ones_count();
        let better = match best {
            None => true,
            Some((bi, bf, bc, bo)) => {
                f > bf
                    || (f == bf
                        && (cost < bc
                            || (cost == bc
                                && (ones < bo || (ones == bo && m.x < population.get(bi).x)))))
            }
        };
        if better {
            best = Some((idx, f, cost, ones));
        }
    }
    best.map(|(idx, ..)| idx)
}

fn snapshot<S, F: Objective>(population: &Population<S>, ps: &ProblemSet<F>, iteration: u64) -> CheckpointRecord {
    CheckpointRecord {
        iteration,
        archive_size: population.len(),
        best: (0..ps.len())
            .map(|i| {
                best_member(population, ps, i).map(|idx| {
                    let m = population.get(idx);
                    BestFeasible {
                        f: m.fitness.primary(),
                        cost: m.fitness.costs()[i],
                    }
                })
            })
            .collect(),
    }
}

/// Runs GSEMO on `ps` and returns the final archive and its trace.
///
/// Identical `(ps, cfg)` give bit-identical results: the generator is
/// ChaCha8 seeded from `cfg.seed`.
pub fn run<F: IncrementalObjective>(ps: &ProblemSet<F>, cfg: &RunConfig) -> Result<(Population, RunTrace)> {
    cfg.validate()?;
    let n = ps.ground_size();
    if n == 0 {
        return Err(Error::contract("GSEMO needs a nonempty ground set"));
    }
    let f = ps.objective();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // Number of untouched bits before the next flip; equivalent to n
    // independent Bernoulli(1/n) trials.
    let gap = Geometric::new(1.0 / n as f64).expect("1/n is a valid probability");
    let bound = ps.population_bound();

    let x0 = match cfg.init {
        Init::AllZeros => BitString::zeros(n),
        Init::RandomUniform => {
            let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            BitString::from_bools(&bits)
        }
    };
    let fit0 = ps.fitness(&x0)?;
    let state0 = f.init_state(&x0);
    let mut population: Population<F::State> = Population::new();
    population.insert(x0, fit0, state0);

    let mut records = Vec::with_capacity(cfg.checkpoints.len());
    let mut next_checkpoint = cfg.checkpoints.iter().copied().peekable();
    if next_checkpoint.next_if_eq(&0).is_some() {
        records.push(snapshot(&population, ps, 0));
    }

    let k = ps.len();
    let mut flips: Vec<usize> = Vec::new();
    let mut costs = vec![0u64; k];
    let mut peak = population.len();

    for t in 1..=cfg.budget {
        let parent_idx = rng.random_range(0..population.len());

        flips.clear();
        let mut pos = gap.sample(&mut rng);
        while pos < n as u64 {
            flips.push(pos as usize);
            pos += 1 + gap.sample(&mut rng);
        }

        if flips.is_empty() {
            // The offspring duplicates its parent and replaces it.
            population.move_to_back(parent_idx);
        } else {
            offer_offspring(ps, &mut population, parent_idx, &flips, &mut costs);
            peak = peak.max(population.len());
            if let Some(u) = bound {
                assert!(
                    population.len() <= u,
                    "archive size {} exceeds the population bound {u} at iteration {t}",
                    population.len()
                );
            }
        }

        if next_checkpoint.next_if_eq(&t).is_some() {
            records.push(snapshot(&population, ps, t));
        }
    }

    Ok((
        population.into_plain(),
        RunTrace {
            records,
            evaluations: cfg.budget,
            peak_archive_size: peak,
            population_bound: bound,
        },
    ))
}

fn offer_offspring<F: IncrementalObjective>(
    ps: &ProblemSet<F>,
    population: &mut Population<F::State>,
    parent_idx: usize,
    flips: &[usize],
    costs: &mut [u64],
) {
    let f = ps.objective();
    let parent = population.get_mut(parent_idx);

    costs.copy_from_slice(parent.fitness.costs());
    for (cost, c) in costs.iter_mut().zip(ps.constraints()) {
        for &j in flips {
            if parent.x.get(j) {
                *cost -= c.weight(j);
            } else {
                *cost += c.weight(j);
            }
        }
    }

    let patch = |state: &mut F::State, x: &BitString| {
        for &j in flips {
            if x.get(j) {
                f.remove(state, j);
            } else {
                f.insert(state, j);
            }
        }
    };
    let unpatch = |state: &mut F::State, x: &BitString| {
        for &j in flips.iter().rev() {
            if x.get(j) {
                f.insert(state, j);
            } else {
                f.remove(state, j);
            }
        }
    };

    let feasible = ps.any_feasible(costs);
    let primary = if feasible {
        patch(&mut parent.state, &parent.x);
        f.state_value(&parent.state)
    } else {
        INFEASIBLE_PRIMARY
    };
    let fitness = ObjectiveVector::new(primary, costs.to_vec());

    if population.is_strictly_dominated(&fitness) {
        if feasible {
            let parent = population.get_mut(parent_idx);
            unpatch(&mut parent.state, &parent.x);
        }
        return;
    }

    let parent = population.get_mut(parent_idx);
    let mut child_x = parent.x.clone();
    for &j in flips {
        child_x.flip(j);
    }
    let child_state = if feasible {
        let s = parent.state.clone();
        unpatch(&mut parent.state, &parent.x);
        s
    } else {
        let mut s = parent.state.clone();
        patch(&mut s, &parent.x);
        s
    };
    population.insert(child_x, fitness, child_state);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::objectives::{CoverageObjective, ModularObjective};

    fn path(n: usize) -> CoverageObjective {
        let edges: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        CoverageObjective::from_graph(&Graph::from_edges(n, &edges).unwrap())
    }

    #[test]
    fn classical_fitness_cases() {
        // f = modular with value 7 on {0, 1}; c = unit with B = 3.
        let f = ModularObjective::new(vec![3.0, 4.0, 1.0, 1.0, 1.0]).unwrap();
        let ps = ProblemSet::classical(f, Constraint::new(vec![1, 2, 1, 1, 1], 3)).unwrap();
        let x = BitString::from_indices(5, [0, 1]).unwrap();
        assert_eq!(fitness_classical(&ps, &x).unwrap().values(), vec![7.0, -3.0]);
        let y = BitString::from_indices(5, [0, 1, 2]).unwrap();
        assert_eq!(fitness_classical(&ps, &y).unwrap().values(), vec![-1.0, -4.0]);
        let z = fitness_classical(&ps, &BitString::zeros(5)).unwrap();
        assert_eq!(z.values(), vec![0.0, 0.0]);
        assert!(fitness_multitask(&ps, &x).is_err());
    }

    #[test]
    fn multitask_fitness_cases() {
        let f = ModularObjective::new(vec![3.0, 4.0, 0.0, 0.0]).unwrap();
        let cs = vec![
            Constraint::new(vec![1, 2, 1, 1], 4),
            Constraint::new(vec![4, 5, 1, 1], 9),
        ];
        let ps = ProblemSet::multitask(f, cs).unwrap();
        let x = BitString::from_indices(4, [0, 1]).unwrap();
        assert_eq!(fitness_multitask(&ps, &x).unwrap().values(), vec![7.0, -3.0, -9.0]);
        let y = BitString::from_indices(4, [0, 1, 2, 3]).unwrap();
        let vy = fitness_multitask(&ps, &y).unwrap().values();
        assert_eq!(vy, vec![-1.0, -5.0, -11.0]);

        let three = ProblemSet::multitask(
            ModularObjective::new(vec![1.0; 4]).unwrap(),
            vec![Constraint::unit(4, 1); 3],
        )
        .unwrap();
        assert_eq!(
            fitness_multitask(&three, &BitString::zeros(4)).unwrap().values(),
            vec![0.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn problem_set_validation() {
        let f = path(4);
        assert!(ProblemSet::new(&f, vec![], Mode::Multitasking).is_err());
        assert!(ProblemSet::new(&f, vec![Constraint::unit(4, 1); 2], Mode::ClassicalSingle).is_err());
        assert!(ProblemSet::classical(&f, Constraint::unit(5, 1)).is_err());
    }

    #[test]
    fn zero_budget_keeps_initial_point() {
        let f = path(6);
        let ps = ProblemSet::multitask(&f, vec![Constraint::unit(6, 1), Constraint::unit(6, 3)]).unwrap();
        let cfg = RunConfig::new(0, 1).with_checkpoints(vec![0]);
        let (pop, trace) = run(&ps, &cfg).unwrap();
        assert_eq!(pop.len(), 1);
        assert!(pop.get(0).x.is_zero());
        for i in 0..2 {
            assert_eq!(extract_best(&pop, &ps, i), Some((BitString::zeros(6), 0.0)));
        }
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.records[0].archive_size, 1);
    }

    #[test]
    fn invalid_checkpoints_rejected() {
        let f = path(4);
        let ps = ProblemSet::classical(&f, Constraint::unit(4, 1)).unwrap();
        assert!(run(&ps, &RunConfig::new(10, 0).with_checkpoints(vec![5, 5])).is_err());
        assert!(run(&ps, &RunConfig::new(10, 0).with_checkpoints(vec![11])).is_err());
    }

    #[test]
    fn extract_best_filters_and_breaks_ties() {
        let f = ModularObjective::new(vec![7.0, 9.0, 7.0, 0.0]).unwrap();
        let c = Constraint::new(vec![3, 6, 4, 1], 5);
        let ps = ProblemSet::classical(&f, c).unwrap();
        let mut pop = Population::new();
        let a = BitString::from_indices(4, [0]).unwrap();
        let b = BitString::from_indices(4, [1]).unwrap();
        pop.add(a.clone(), ps.fitness(&a).unwrap());
        pop.add(b.clone(), ObjectiveVector::new(9.0, vec![6]));
        assert_eq!(extract_best(&pop, &ps, 0), Some((a.clone(), 7.0)));

        // f = 7 twice with c1 in {3, 4}: incomparable thanks to c2.
        let ps2 = ProblemSet::multitask(
            &f,
            vec![Constraint::new(vec![3, 6, 4, 1], 5), Constraint::new(vec![9, 1, 2, 1], 50)],
        )
        .unwrap();
        let mut both: Population = Population::new();
        let c = BitString::from_indices(4, [2]).unwrap();
        both.add(c, ObjectiveVector::new(7.0, vec![4, 2]));
        both.add(a.clone(), ObjectiveVector::new(7.0, vec![3, 9]));
        assert_eq!(both.len(), 2);
        assert_eq!(extract_best(&both, &ps2, 0), Some((a, 7.0)));
        assert!(extract_best(&Population::<()>::new(), &ps2, 1).is_none());
    }

    #[test]
    fn run_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Graph::gnp(40, 0.1, &mut rng);
        let f = CoverageObjective::from_graph(&g);
        let ps = ProblemSet::multitask(&f, vec![Constraint::unit(40, 2), Constraint::unit(40, 6)]).unwrap();
        let cfg = RunConfig::new(3000, 99).with_checkpoints(vec![0, 100, 3000]);
        let (p1, t1) = run(&ps, &cfg).unwrap();
        let (p2, t2) = run(&ps, &cfg).unwrap();
        assert_eq!(t1, t2);
        let xs = |p: &Population| p.iter().map(|m| (m.x.clone(), m.fitness.values())).collect::<Vec<_>>();
        assert_eq!(xs(&p1), xs(&p2));
        let (_, t3) = run(&ps, &RunConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(t1.records, t3.records);
    }

    #[test]
    fn archive_fitness_matches_fresh_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Graph::gnp(30, 0.15, &mut rng);
        let f = CoverageObjective::from_graph(&g);
        let cs = vec![
            crate::graph::build_constraint(&g, crate::graph::Regime::RandomLinear, 4, 1).unwrap(),
            crate::graph::build_constraint(&g, crate::graph::Regime::DegreeLinear, 9, 0).unwrap(),
        ];
        let ps = ProblemSet::multitask(&f, cs).unwrap();
        let cfg = RunConfig::new(5000, 3).with_init(Init::RandomUniform);
        let (pop, _) = run(&ps, &cfg).unwrap();
        pop.check_invariants().unwrap();
        for m in pop.iter() {
            assert_eq!(m.fitness, ps.fitness(&m.x).unwrap());
        }
    }
}
