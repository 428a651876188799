//! Set functions over bit strings.
//!
//! [`Objective`] is the plain evaluation interface. [`IncrementalObjective`]
//! adds a per-solution cache that can be updated one element at a time;
//! GSEMO, brute force and greedy use it to avoid recomputing from scratch.
//! The two routes must agree exactly, which the tests check.

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub trait Objective: Send + Sync {
    /// Size `n` of the ground set.
    fn ground_size(&self) -> usize;

    /// `f(x)` without a length check.
    fn value(&self, x: &BitString) -> f64;

    /// `f(x)`, rejecting strings of the wrong length.
    fn evaluate(&self, x: &BitString) -> Result<f64> {
        if x.len() != self.ground_size() {
            return Err(Error::contract(format!(
                "bit string has length {}, objective expects {}",
                x.len(),
                self.ground_size()
            )));
        }
        Ok(self.value(x))
    }

    /// `f(X ∪ {j}) − f(X)` for `j ∉ X`.
    fn marginal_gain(&self, x: &BitString, j: usize) -> Result<f64> {
        let base = self.evaluate(x)?;
        if j >= x.len() {
            return Err(Error::contract(format!("element {j} outside ground set")));
        }
        if x.get(j) {
            return Err(Error::contract(format!("element {j} already selected")));
        }
        let mut with = x.clone();
        with.set(j, true);
        Ok(self.value(&with) - base)
    }
}

pub trait IncrementalObjective: Objective {
    type State: Clone + Send;

    fn init_state(&self, x: &BitString) -> Self::State;

    fn state_value(&self, state: &Self::State) -> f64;

    /// Adds element `j` (currently absent) to the cached set.
    fn insert(&self, state: &mut Self::State, j: usize);

    /// Removes element `j` (currently present) from the cached set.
    fn remove(&self, state: &mut Self::State, j: usize);
}

impl<T: Objective + ?Sized> Objective for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, x: &BitString) -> f64 {
        (**self).value(x)
    }
}

impl<T: IncrementalObjective + ?Sized> IncrementalObjective for &T {
    type State = T::State;

    fn init_state(&self, x: &BitString) -> Self::State {
        (**self).init_state(x)
    }

    fn state_value(&self, state: &Self::State) -> f64 {
        (**self).state_value(state)
    }

    fn insert(&self, state: &mut Self::State, j: usize) {
        (**self).insert(state, j)
    }

    fn remove(&self, state: &mut Self::State, j: usize) {
        (**self).remove(state, j)
    }
}

/// Maximum coverage: `f(x) = |⋃_{x_v = 1} N[v]|` where `N[v]` is the closed
/// neighborhood of `v`.
///
/// Neighborhoods are stored as sorted index lists (CSR layout). Evaluation
/// from scratch ORs them into a word bitset and popcounts it; the
/// incremental route keeps a per-vertex cover count instead.
#[derive(Clone, Debug)]
pub struct CoverageObjective {
    offsets: Vec<usize>,
    members: Vec<u32>,
}

/// Cover counts for [`CoverageObjective`]'s incremental route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverState {
    counts: Vec<u32>,
    covered: usize,
}

impl CoverState {
    pub fn covered(&self) -> usize {
        self.covered
    }
}

impl CoverageObjective {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut members = Vec::with_capacity(n + 2 * g.edge_count());
        offsets.push(0);
        for v in 0..n {
            let nbrs = g.neighbors(v);
            // Insert v into its sorted neighbor list.
            let split = nbrs.partition_point(|&u| (u as usize) < v);
            members.extend_from_slice(&nbrs[..split]);
            members.push(v as u32);
            members.extend_from_slice(&nbrs[split..]);
            offsets.push(members.len());
        }
        CoverageObjective { offsets, members }
    }

    /// Builds directly from closed neighborhoods. Each list must contain its
    /// own vertex; lists are sorted and deduplicated here.
    pub fn from_closed_neighborhoods(sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = sets.len();
        let mut offsets = vec![0];
        let mut members = Vec::new();
        for (v, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.binary_search(&v).is_err() {
                return Err(Error::contract(format!(
                    "closed neighborhood of {v} does not contain {v}"
                )));
            }
            if let Some(&u) = set.iter().find(|&&u| u >= n) {
                return Err(Error::contract(format!("vertex {u} out of range")));
            }
            members.extend(set.into_iter().map(|u| u as u32));
            offsets.push(members.len());
        }
        Ok(CoverageObjective { offsets, members })
    }

    /// `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> &[u32] {
        &self.members[self.offsets[v]..self.offsets[v + 1]]
    }

    /// The union of the selected neighborhoods as a bit string.
    pub fn covered_set(&self, x: &BitString) -> BitString {
        let n = self.ground_size();
        let mut union = BitString::zeros(n);
        for v in x.iter_ones() {
            for &u in self.closed_neighborhood(v) {
                union.set(u as usize, true);
            }
        }
        union
    }
}

impl Objective for CoverageObjective {
    fn ground_size(&self) -> usize {
        self.offsets.len() - 1
    }

    fn value(&self, x: &BitString) -> f64 {
        self.covered_set(x).ones_count() as f64
    }
}

impl IncrementalObjective for CoverageObjective {
    type State = CoverState;

    fn init_state(&self, x: &BitString) -> CoverState {
        let mut state = CoverState {
            counts: vec![0; self.ground_size()],
            covered: 0,
        };
        for v in x.iter_ones() {
            self.insert(&mut state, v);
        }
        state
    }

    fn state_value(&self, state: &CoverState) -> f64 {
        state.covered as f64
    }

    fn insert(&self, state: &mut CoverState, j: usize) {
        for &u in self.closed_neighborhood(j) {
            let c = &mut state.counts[u as usize];
            if *c == 0 {
                state.covered += 1;
            }
            *c += 1;
        }
    }

    fn remove(&self, state: &mut CoverState, j: usize) {
        for &u in self.closed_neighborhood(j) {
            let c = &mut state.counts[u as usize];
            debug_assert!(*c > 0, "removing an element that was never inserted");
            *c -= 1;
            if *c == 0 {
                state.covered -= 1;
            }
        }
    }
}

/// Additive function `f(x) = Σ v_j x_j` with nonnegative item values.
/// Modular functions meet the submodular inequality with equality.
#[derive(Clone, Debug)]
pub struct ModularObjective {
    item_values: Vec<f64>,
}

impl ModularObjective {
    pub fn new(item_values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = item_values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::contract(format!(
                "item values must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(ModularObjective { item_values })
    }

    pub fn item_values(&self) -> &[f64] {
        &self.item_values
    }
}

impl Objective for ModularObjective {
    fn ground_size(&self) -> usize {
        self.item_values.len()
    }

    fn value(&self, x: &BitString) -> f64 {
        x.iter_ones().map(|j| self.item_values[j]).sum()
    }
}

impl IncrementalObjective for ModularObjective {
    // The selected set itself; summing in index order keeps the value
    // bit-identical to `value`.
    type State = BitString;

    fn init_state(&self, x: &BitString) -> BitString {
        x.clone()
    }

    fn state_value(&self, state: &BitString) -> f64 {
        self.value(state)
    }

    fn insert(&self, state: &mut BitString, j: usize) {
        state.set(j, true);
    }

    fn remove(&self, state: &mut BitString, j: usize) {
        state.set(j, false);
    }
}

/// `f(x) = |x|_1²`: monotone but supermodular. Exists so the property
/// checker has something to reject.
#[derive(Clone, Copy, Debug)]
pub struct SquaredCardinality {
    pub n: usize,
}

impl Objective for SquaredCardinality {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, x: &BitString) -> f64 {
        let k = x.ones_count() as f64;
        k * k
    }
}
