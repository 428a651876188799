//! Objective vectors, Pareto dominance and the GSEMO archive.

use std::hash::{Hash, Hasher};

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// `(g1, -c1, ..., -ck)`, all to be maximized.
///
/// The primary value is stored as `f64` and the costs as the (nonnegative)
/// integers they negate, so `values()[i + 1] == -(costs()[i] as f64)`.
#[derive(Clone, Debug)]
pub struct ObjectiveVector {
    primary: f64,
    costs: Vec<u64>,
}

impl ObjectiveVector {
    pub fn new(primary: f64, costs: Vec<u64>) -> Self {
        debug_assert!(!primary.is_nan());
        ObjectiveVector { primary, costs }
    }

    /// `g1`
    pub fn primary(&self) -> f64 {
        self.primary
    }

    /// The costs `c_i(x)`, unnegated.
    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    /// `k + 1`
    pub fn len(&self) -> usize {
        self.costs.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> Vec<f64> {
        std::iter::once(self.primary)
            .chain(self.costs.iter().map(|&c| 0.0 - c as f64))
            .collect()
    }

    /// `true` if `self ⪰ other`. Lengths must agree.
    fn weakly_dominates(&self, other: &Self) -> bool {
        self.primary >= other.primary
            && self.costs.iter().zip(&other.costs).all(|(a, b)| a <= b)
    }

    fn primary_bits(&self) -> u64 {
        // +0.0 and -0.0 compare equal, so they must hash equal.
        if self.primary == 0.0 {
            0
        } else {
            self.primary.to_bits()
        }
    }
}

impl PartialEq for ObjectiveVector {
    fn eq(&self, other: &Self) -> bool {
        self.primary == other.primary && self.costs == other.costs
    }
}

impl Eq for ObjectiveVector {}

impl Hash for ObjectiveVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.primary_bits().hash(state);
        self.costs.hash(state);
    }
}

/// Outcome of comparing `u` against `v` under maximization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `u ⪰ v` with at least one strict improvement.
    StrictlyDominates,
    /// `u == v`: weak dominance without strict dominance.
    WeaklyDominatesOnly,
    /// `u` does not weakly dominate `v`.
    None,
}

pub fn dominance(u: &ObjectiveVector, v: &ObjectiveVector) -> Result<Dominance> {
    if u.len() != v.len() {
        return Err(Error::contract(format!(
            "objective vectors of length {} and {} are not comparable",
            u.len(),
            v.len()
        )));
    }
    Ok(if !u.weakly_dominates(v) {
        Dominance::None
    } else if u == v {
        Dominance::WeaklyDominatesOnly
    } else {
        Dominance::StrictlyDominates
    })
}

#[derive(Clone, Debug)]
pub struct Member<S = ()> {
    pub x: BitString,
    pub fitness: ObjectiveVector,
    /// Per-member payload (GSEMO keeps its incremental evaluation cache here).
    pub state: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// Some member strictly dominates the candidate.
    Rejected,
    /// The candidate was added after removing `removed` weakly dominated members.
    Accepted { removed: usize },
}

impl Insertion {
    pub fn accepted(self) -> bool {
        matches!(self, Insertion::Accepted { .. })
    }
}

/// Archive of mutually nondominated search points with pairwise distinct
/// objective vectors.
///
/// Insertion follows `P ← (P \ {z | y ⪰ z}) ∪ {y}` unless some member
/// strictly dominates `y`; an offspring with an objective vector equal to a
/// member's replaces that member.
#[derive(Clone, Debug)]
pub struct Population<S = ()> {
    members: Vec<Member<S>>,
}

impl<S> Default for Population<S> {
    fn default() -> Self {
        Population {
            members: Vec::new(),
        }
    }
}

impl<S> Population<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member<S>] {
        &self.members
    }

    pub fn get(&self, index: usize) -> &Member<S> {
        &self.members[index]
    }

    pub(crate) fn get_mut(&mut self, index: usize) -> &mut Member<S> {
        &mut self.members[index]
    }

    /// Moves member `index` to the end, as happens when an offspring with an
    /// identical objective vector replaces it.
    pub(crate) fn move_to_back(&mut self, index: usize) {
        let m = self.members.remove(index);
        self.members.push(m);
    }

    pub fn iter(&self) -> impl Iterator<Item = &Member<S>> {
        self.members.iter()
    }

    /// `true` if some member strictly dominates `fitness`.
    pub fn is_strictly_dominated(&self, fitness: &ObjectiveVector) -> bool {
        self.members
            .iter()
            .any(|m| m.fitness.weakly_dominates(fitness) && m.fitness != *fitness)
    }

    pub fn insert(&mut self, x: BitString, fitness: ObjectiveVector, state: S) -> Insertion {
        if let Some(first) = self.members.first() {
            assert_eq!(
                first.fitness.len(),
                fitness.len(),
                "objective vector length changed within one population"
            );
        }
        if self.is_strictly_dominated(&fitness) {
            return Insertion::Rejected;
        }
        let before = self.members.len();
        self.members.retain(|m| !fitness.weakly_dominates(&m.fitness));
        let removed = before - self.members.len();
        self.members.push(Member { x, fitness, state });
        Insertion::Accepted { removed }
    }

    /// Drops the per-member payload.
    pub fn into_plain(self) -> Population<()> {
        Population {
            members: self
                .members
                .into_iter()
                .map(|m| Member {
                    x: m.x,
                    fitness: m.fitness,
                    state: (),
                })
                .collect(),
        }
    }

    /// Checks mutual nondominance and vector uniqueness. Quadratic; meant
    /// for tests and debugging.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if a.fitness == b.fitness {
                    return Err(Error::contract(format!(
                        "duplicate objective vector {:?}",
                        a.fitness.values()
                    )));
                }
                if a.fitness.weakly_dominates(&b.fitness) || b.fitness.weakly_dominates(&a.fitness)
                {
                    return Err(Error::contract(format!(
                        "members {:?} and {:?} are comparable",
                        a.fitness.values(),
                        b.fitness.values()
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Population<()> {
    /// Convenience insertion for archives without a payload.
    pub fn add(&mut self, x: BitString, fitness: ObjectiveVector) -> Insertion {
        self.insert(x, fitness, ())
    }
}
