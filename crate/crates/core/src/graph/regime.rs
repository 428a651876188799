//! Vertex cost regimes for max coverage.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::constraint::Constraint;
use crate::error::{Error, Result};

/// Factor applied to bounds in the random-linear regime so that weights
/// drawn from `[50, 150]` stay integral.
pub const RANDOM_LINEAR_SCALE: u64 = 100;

/// Continuous sampling interval for random-linear weights, before ceiling.
pub const RANDOM_WEIGHT_RANGE: (f64, f64) = (50.0, 150.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `c_v = 1`
    Unit,
    /// `c_v = ⌈u_v⌉`, `u_v ~ U[50, 150)`, bound scaled by 100.
    RandomLinear,
    /// `c_v = deg(v)`, bound as given.
    DegreeLinear,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Unit => "unit",
            Regime::RandomLinear => "random-linear",
            Regime::DegreeLinear => "degree-linear",
        }
    }

    /// Whether the constraint depends on the seed.
    pub fn is_random(self) -> bool {
        self == Regime::RandomLinear
    }

    /// Multiplier from the nominal bound to the bound used in computation.
    pub fn bound_scale(self) -> u64 {
        match self {
            Regime::RandomLinear => RANDOM_LINEAR_SCALE,
            _ => 1,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Regime::Unit),
            "random-linear" => Ok(Regime::RandomLinear),
            "degree-linear" => Ok(Regime::DegreeLinear),
            other => Err(Error::Config(format!("unknown regime '{other}'"))),
        }
    }
}

/// Builds the cost constraint for `regime` with nominal bound `bound`.
/// `seed` only matters for [`Regime::RandomLinear`].
pub fn build_constraint(g: &Graph, regime: Regime, bound: u64, seed: u64) -> Result<Constraint> {
    if bound == 0 {
        return Err(Error::contract("bound must be positive"));
    }
    let n = g.vertex_count();
    Ok(match regime {
        Regime::Unit => Constraint::unit(n, bound),
        Regime::RandomLinear => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (lo, hi) = RANDOM_WEIGHT_RANGE;
            let weights = (0..n)
                .map(|_| rng.random_range(lo..hi).ceil() as u64)
                .collect();
            Constraint::new(weights, bound * RANDOM_LINEAR_SCALE)
        }
        Regime::DegreeLinear => {
            Constraint::new((0..n).map(|v| g.degree(v) as u64).collect(), bound)
        }
    })
}
