//! Ground truth for small instances: exhaustive optima, the marginal-gain
//! greedy, and a randomized check of monotonicity and submodularity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitstring::BitString;
use crate::constraint::Constraint;
use crate::error::{Error, Result};
use crate::objectives::{IncrementalObjective, Objective};

/// Largest ground set [`brute_force_opt`] will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// `1 - 1/e`
pub const APPROX_RATIO: f64 = 1.0 - 1.0 / std::f64::consts::E;

fn check_enumerable(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// Visits all `2^n` bit strings in Gray-code order, handing the visitor the
/// current string and its incrementally maintained value.
fn gray_walk<F, V>(f: &F, mut visit: V)
where
    F: IncrementalObjective,
    V: FnMut(&BitString, f64),
{
    let n = f.ground_size();
    let mut x = BitString::zeros(n);
    let mut state = f.init_state(&x);
    visit(&x, f.state_value(&state));
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        if x.flip(j) {
            f.insert(&mut state, j);
        } else {
            f.remove(&mut state, j);
        }
        visit(&x, f.state_value(&state));
    }
}

/// Exact maximum of `f` subject to `c`, with a maximizing witness. Among
/// equal values the witness has the lowest cost, then the fewest ones.
pub fn brute_force_opt<F: IncrementalObjective>(f: &F, c: &Constraint) -> Result<(f64, BitString)> {
    let n = f.ground_size();
    check_enumerable(n)?;
    if c.len() != n {
        return Err(Error::contract("constraint and objective disagree on n"));
    }
    let mut best: Option<(f64, u64, usize, BitString)> = None;
    gray_walk(f, |x, value| {
        let cost = c.cost(x);
        if cost > c.bound() {
            return;
        }
        let ones = x.ones_count();
        let better = match &best {
            None => true,
            Some((bv, bc, bo, _)) => {
                value > *bv || (value == *bv && (cost < *bc || (cost == *bc && ones < *bo)))
            }
        };
        if better {
            best = Some((value, cost, ones, x.clone()));
        }
    });
    let (value, _, _, witness) = best.expect("0^n is feasible for any nonnegative bound");
    Ok((value, witness))
}

/// `OPT_b` for every cardinality budget `b = 0..=max_ones`: the best value
/// over all strings with at most `b` ones.
#[derive(Clone, Debug, PartialEq)]
pub struct OptTable {
    values: Vec<f64>,
    witnesses: Vec<BitString>,
}

impl OptTable {
    /// One Gray-code pass over all `2^n` strings.
    pub fn for_cardinalities<F: IncrementalObjective>(f: &F, max_ones: usize) -> Result<Self> {
        let n = f.ground_size();
        check_enumerable(n)?;
        let top = max_ones.min(n);
        let mut exact: Vec<Option<(f64, BitString)>> = vec![None; n + 1];
        gray_walk(f, |x, value| {
            let slot = &mut exact[x.ones_count()];
            if slot.as_ref().is_none_or(|(v, _)| value > *v) {
                *slot = Some((value, x.clone()));
            }
        });
        let mut values = Vec::with_capacity(top + 1);
        let mut witnesses: Vec<BitString> = Vec::with_capacity(top + 1);
        for (b, entry) in exact.into_iter().take(top + 1).enumerate() {
            let (v, w) = entry.expect("every cardinality up to n is reachable");
            if b > 0 && values[b - 1] >= v {
                values.push(values[b - 1]);
                witnesses.push(witnesses[b - 1].clone());
            } else {
                values.push(v);
                witnesses.push(w);
            }
        }
        Ok(OptTable { values, witnesses })
    }

    /// `OPT_b`; budgets beyond the table saturate at its last entry.
    pub fn opt(&self, b: usize) -> f64 {
        self.values[b.min(self.values.len() - 1)]
    }

    pub fn witness(&self, b: usize) -> &BitString {
        &self.witnesses[b.min(self.witnesses.len() - 1)]
    }

    pub fn max_ones(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Marginal-gain greedy for a unit or uniform-weighted constraint: keep
/// adding the affordable element with the largest gain (lowest index on
/// ties) until nothing more fits. Zero-gain additions are still made.
pub fn greedy<F: IncrementalObjective>(f: &F, c: &Constraint) -> Result<BitString> {
    let weight = c.kind().uniform_weight().ok_or(Error::GreedyNotApplicable)?;
    let n = f.ground_size();
    if c.len() != n {
        return Err(Error::contract("constraint and objective disagree on n"));
    }
    let capacity = (c.bound() / weight).min(n as u64) as usize;
    let mut x = BitString::zeros(n);
    let mut state = f.init_state(&x);
    for _ in 0..capacity {
        let base = f.state_value(&state);
        let mut pick: Option<(usize, f64)> = None;
        for j in (0..n).filter(|&j| !x.get(j)) {
            f.insert(&mut state, j);
            let gain = f.state_value(&state) - base;
            f.remove(&mut state, j);
            if pick.is_none_or(|(_, g)| gain > g) {
                pick = Some((j, gain));
            }
        }
        let Some((j, _)) = pick else { break };
        x.set(j, true);
        f.insert(&mut state, j);
    }
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `f(A) > f(B)` for some `A ⊆ B`.
    Monotonicity,
    /// `f(A ∪ {x}) − f(A) < f(B ∪ {x}) − f(B)` for some `A ⊆ B`, `x ∉ B`.
    Submodularity,
}

/// A sampled triple on which `f` broke one of the properties. `lhs` should
/// have been at least `rhs`.
#[derive(Clone, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: BitString,
    pub b: BitString,
    pub x: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    pub trials: usize,
    /// Trials where the submodular inequality held with equality.
    pub tight: usize,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn tolerance(values: &[f64]) -> f64 {
    1e-9 * values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

/// Samples random chains `A ⊆ B` and an element `x ∉ B`, checking
/// `f(A) ≤ f(B)` and diminishing returns. An empty violation list is a pass.
pub fn check_submodular_monotone<F: Objective + ?Sized>(f: &F, trials: usize, seed: u64) -> Result<PropertyReport> {
    let n = f.ground_size();
    if trials == 0 {
        return Err(Error::contract("at least one trial is required"));
    }
    if n == 0 {
        return Err(Error::contract("the ground set is empty"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PropertyReport {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let density: f64 = rng.random();
        let keep: f64 = rng.random();
        let mut b = BitString::zeros(n);
        let mut a = BitString::zeros(n);
        for j in 0..n {
            if rng.random_bool(density) {
                b.set(j, true);
                if rng.random_bool(keep) {
                    a.set(j, true);
                }
            }
        }
        let outside: Vec<usize> = (0..n).filter(|&j| !b.get(j)).collect();
        let x = if outside.is_empty() {
            let j = rng.random_range(0..n);
            b.set(j, false);
            a.set(j, false);
            j
        } else {
            outside[rng.random_range(0..outside.len())]
        };

        let fa = f.value(&a);
        let fb = f.value(&b);
        let mut ax = a.clone();
        ax.set(x, true);
        let mut bx = b.clone();
        bx.set(x, true);
        let fax = f.value(&ax);
        let fbx = f.value(&bx);
        let gain_a = fax - fa;
        let gain_b = fbx - fb;
        let eps = tolerance(&[fa, fb, fax, fbx]);

        if fa > fb + eps {
            report.violations.push(Violation {
                kind: ViolationKind::Monotonicity,
                a: a.clone(),
                b: b.clone(),
                x,
                lhs: fb,
                rhs: fa,
            });
        }
        if gain_a < gain_b - eps {
            report.violations.push(Violation {
                kind: ViolationKind::Submodularity,
                a,
                b,
                x,
                lhs: gain_a,
                rhs: gain_b,
            });
        } else if (gain_a - gain_b).abs() <= eps {
            report.tight += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::objectives::{CoverageObjective, ModularObjective, SquaredCardinality};

    fn path3() -> CoverageObjective {
        CoverageObjective::from_graph(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap())
    }

    /// Plain enumeration by bitmask, independent of the Gray-code walk and
    /// of the incremental cache.
    fn naive_opt<F: Objective>(f: &F, c: &Constraint) -> f64 {
        let n = f.ground_size();
        (0u64..1 << n)
            .map(|m| BitString::from_mask(n, m))
            .filter(|x| c.is_feasible(x))
            .map(|x| f.value(&x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn path_unit_one_picks_center() {
        let (v, w) = brute_force_opt(&path3(), &Constraint::unit(3, 1)).unwrap();
        assert_eq!(v, 3.0);
        assert_eq!(w, BitString::from_indices(3, [1]).unwrap());
    }

    #[test]
    fn zero_bound_gives_empty_set() {
        let f = ModularObjective::new(vec![2.0, 5.0, 1.0]).unwrap();
        let (v, w) = brute_force_opt(&f, &Constraint::new(vec![1, 3, 2], 0)).unwrap();
        assert_eq!(v, 0.0);
        assert!(w.is_zero());
    }

    #[test]
    fn refuses_large_ground_sets() {
        let f = ModularObjective::new(vec![1.0; 25]).unwrap();
        assert!(matches!(
            brute_force_opt(&f, &Constraint::unit(25, 3)),
            Err(Error::TooLarge { n: 25, .. })
        ));
    }

    #[test]
    fn gray_code_matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1, 5, 9, 12] {
            let g = Graph::gnp(n, 0.3, &mut rng);
            let f = CoverageObjective::from_graph(&g);
            for b in 0..=4 {
                let unit = Constraint::unit(n, b);
                assert_eq!(brute_force_opt(&f, &unit).unwrap().0, naive_opt(&f, &unit));
                let weights: Vec<u64> = (0..n).map(|_| rng.random_range(1..5)).collect();
                let knap = Constraint::new(weights, 2 * b);
                let (v, w) = brute_force_opt(&f, &knap).unwrap();
                assert_eq!(v, naive_opt(&f, &knap));
                assert!(knap.is_feasible(&w));
                assert_eq!(f.value(&w), v);
            }
        }
    }

    #[test]
    fn opt_table_matches_per_bound_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = Graph::gnp(12, 0.25, &mut rng);
        let f = CoverageObjective::from_graph(&g);
        let table = OptTable::for_cardinalities(&f, 6).unwrap();
        assert_eq!(table.opt(0), 0.0);
        for b in 0..=6 {
            assert_eq!(table.opt(b), naive_opt(&f, &Constraint::unit(12, b as u64)));
            assert_eq!(f.value(table.witness(b)), table.opt(b));
            assert!(table.witness(b).ones_count() <= b);
        }
        assert!(table.values().windows(2).all(|w| w[0] <= w[1]));
        assert!(table.opt(6) <= f.value(&BitString::ones(12)));
    }

    #[test]
    fn greedy_star_and_path() {
        // Star K_{1,4} with the center at 0.
        let star = CoverageObjective::from_graph(
            &Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
        );
        let x = greedy(&star, &Constraint::unit(5, 1)).unwrap();
        assert_eq!(x, BitString::from_indices(5, [0]).unwrap());
        assert_eq!(star.value(&x), 5.0);

        let x = greedy(&path3(), &Constraint::unit(3, 2)).unwrap();
        assert_eq!(x.ones_count(), 2);
        assert!(x.get(1));
        assert_eq!(path3().value(&x), 3.0);
    }

    #[test]
    fn greedy_refuses_knapsack() {
        assert!(matches!(
            greedy(&path3(), &Constraint::new(vec![1, 2, 1], 2)),
            Err(Error::GreedyNotApplicable)
        ));
    }

    #[test]
    fn greedy_invariant_under_uniform_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let g = Graph::gnp(15, 0.2, &mut rng);
            let f = CoverageObjective::from_graph(&g);
            let c = Constraint::uniform(15, 3, 10).unwrap();
            assert_eq!(greedy(&f, &c).unwrap(), greedy(&f, &c.scaled(7)).unwrap());
        }
    }

    #[test]
    fn coverage_passes_property_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = Graph::gnp(40, 0.1, &mut rng);
        let report = check_submodular_monotone(&CoverageObjective::from_graph(&g), 1000, 1).unwrap();
        assert!(report.passed(), "{:?}", report.violations.first());
    }

    #[test]
    fn modular_is_always_tight() {
        let f = ModularObjective::new((0..20).map(|j| j as f64 * 0.5).collect()).unwrap();
        let report = check_submodular_monotone(&f, 500, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.tight, 500);
    }

    #[test]
    fn squared_cardinality_is_flagged() {
        let report = check_submodular_monotone(&SquaredCardinality { n: 12 }, 200, 3).unwrap();
        let v = report
            .violations
            .iter()
            .find(|v| v.kind == ViolationKind::Submodularity)
            .expect("supermodular fixture must be caught");
        // Gains are 2|A| + 1 < 2|B| + 1.
        assert!(v.a.is_subset_of(&v.b));
        assert!(!v.b.get(v.x));
        assert_eq!(v.lhs, 2.0 * v.a.ones_count() as f64 + 1.0);
        assert_eq!(v.rhs, 2.0 * v.b.ones_count() as f64 + 1.0);
        assert!(report
            .violations
            .iter()
            .all(|v| v.kind == ViolationKind::Submodularity));
    }
}
