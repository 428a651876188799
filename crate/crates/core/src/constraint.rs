//! Linear cost constraints `c(x) = Σ w_j x_j ≤ B`.
//!
//! Weights and bounds are nonnegative integers. Real-valued costs are
//! expected to be scaled to integers before they get here, which keeps
//! every feasibility check exact.

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Shape of a constraint's weight vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Every weight is 1: the cost is the number of selected items.
    Unit,
    /// Every weight equals the same positive value `a`.
    UniformWeighted(u64),
    /// Arbitrary per-item weights.
    Knapsack,
}

impl ConstraintKind {
    pub fn is_uniform(self) -> bool {
        !matches!(self, ConstraintKind::Knapsack)
    }

    /// The shared per-item weight for unit/uniform constraints.
    pub fn uniform_weight(self) -> Option<u64> {
        match self {
            ConstraintKind::Unit => Some(1),
            ConstraintKind::UniformWeighted(a) => Some(a),
            ConstraintKind::Knapsack => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    weights: Vec<u64>,
    bound: u64,
    kind: ConstraintKind,
}

impl Constraint {
    /// Builds a constraint and classifies its kind from the weights.
    ///
    /// An all-equal weight vector is classified as unit or uniform-weighted
    /// even if it came from a "knapsack" source (e.g. degree weights on a
    /// regular graph). A vector whose weights are all equal to zero is a
    /// knapsack constraint since no positive `a` exists.
    pub fn new(weights: Vec<u64>, bound: u64) -> Self {
        let kind = match weights.first() {
            Some(&first) if first > 0 && weights.iter().all(|&w| w == first) => {
                if first == 1 {
                    ConstraintKind::Unit
                } else {
                    ConstraintKind::UniformWeighted(first)
                }
            }
            // An empty ground set carries no weights at all; treat it as unit.
            None => ConstraintKind::Unit,
            _ => ConstraintKind::Knapsack,
        };
        Constraint {
            weights,
            bound,
            kind,
        }
    }

    pub fn unit(n: usize, bound: u64) -> Self {
        Self::new(vec![1; n], bound)
    }

    pub fn uniform(n: usize, weight: u64, bound: u64) -> Result<Self> {
        if weight == 0 {
            return Err(Error::contract("uniform weight must be positive"));
        }
        Ok(Self::new(vec![weight; n], bound))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, j: usize) -> u64 {
        self.weights[j]
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    /// `c(x)`; panics in debug builds if `x` has the wrong length.
    pub fn cost(&self, x: &BitString) -> u64 {
        debug_assert_eq!(x.len(), self.weights.len());
        match self.kind {
            ConstraintKind::Unit => x.ones_count() as u64,
            ConstraintKind::UniformWeighted(a) => a * x.ones_count() as u64,
            ConstraintKind::Knapsack => x.iter_ones().map(|j| self.weights[j]).sum(),
        }
    }

    pub fn checked_cost(&self, x: &BitString) -> Result<u64> {
        if x.len() != self.weights.len() {
            return Err(Error::contract(format!(
                "bit string has length {}, constraint expects {}",
                x.len(),
                self.weights.len()
            )));
        }
        Ok(self.cost(x))
    }

    pub fn is_feasible(&self, x: &BitString) -> bool {
        self.cost(x) <= self.bound
    }

    /// Same constraint with every weight and the bound multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        Self::new(
            self.weights.iter().map(|w| w * factor).collect(),
            self.bound * factor,
        )
    }
}

/// Upper bound `U = min(max_i ⌊B_i / a_i⌋, n) + 1` on the archive size of
/// GSEMO when every constraint is unit or uniform-weighted.
pub fn population_bound(constraints: &[Constraint], n: usize) -> Result<usize> {
    let mut max_ones = 0u64;
    for (index, c) in constraints.iter().enumerate() {
        let a = c
            .kind()
            .uniform_weight()
            .ok_or(Error::BoundNotApplicable { index })?;
        max_ones = max_ones.max(c.bound() / a);
    }
    let capped = max_ones.min(n as u64) as usize;
    Ok(capped + 1)
}
