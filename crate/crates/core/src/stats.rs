//! Summary statistics and the Kruskal-Wallis H test.

use std::cmp::Ordering;
use std::fmt;

use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Significance level: `p ≤ SIGNIFICANCE` counts as a difference.
pub const SIGNIFICANCE: f64 = 0.05;

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (`n − 1` denominator); `None` below two values.
pub fn sample_std(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

/// 1-based ranks with ties assigned their average rank, plus the tie
/// correction sum `Σ (t³ − t)` over tie groups.
fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end share ranks start+1..=end.
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KruskalWallis {
    /// Tie-corrected H statistic.
    pub h: f64,
    /// Upper tail of χ² with `groups − 1` degrees of freedom at `h`.
    pub p: f64,
    /// Mean pooled rank of each group, in input order.
    pub mean_ranks: Vec<f64>,
}

/// Kruskal-Wallis test over any number of groups (each of size ≥ 1, at
/// least two groups). When every pooled value is tied, `H = 0` and `p = 1`.
pub fn kruskal_wallis_groups(groups: &[&[f64]]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::contract("Kruskal-Wallis needs at least two groups"));
    }
    if groups.iter().any(|g| g.is_empty()) {
        return Err(Error::contract("Kruskal-Wallis groups must be nonempty"));
    }
    let pooled: Vec<f64> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    if pooled.iter().any(|v| v.is_nan()) {
        return Err(Error::contract("Kruskal-Wallis samples contain NaN"));
    }
    let n = pooled.len() as f64;
    let (ranks, ties) = midranks(&pooled);

    let mut offset = 0;
    let mut mean_ranks = Vec::with_capacity(groups.len());
    let mut weighted = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        weighted += r * r / g.len() as f64;
        mean_ranks.push(r / g.len() as f64);
        offset += g.len();
    }

    let correction = 1.0 - ties / (n * n * n - n);
    let (h, p) = if correction <= 0.0 {
        (0.0, 1.0)
    } else {
        let raw = 12.0 / (n * (n + 1.0)) * weighted - 3.0 * (n + 1.0);
        // Clamp rounding noise around zero.
        let h = (raw / correction).max(0.0);
        let df = (groups.len() - 1) as f64;
        let p = if h == 0.0 { 1.0 } else { gamma_ur(df / 2.0, h / 2.0) };
        (h, p)
    };
    Ok(KruskalWallis { h, p, mean_ranks })
}

/// Two-sample Kruskal-Wallis; each sample needs at least two values.
pub fn kruskal_wallis(a: &[f64], b: &[f64]) -> Result<KruskalWallis> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::contract("each sample needs at least two values"));
    }
    kruskal_wallis_groups(&[a, b])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Multitasking significantly better (`+*`).
    MultitaskingBetter,
    /// Classical significantly better (`-*`).
    ClassicalBetter,
    /// No significant difference (`=`).
    NoDifference,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::MultitaskingBetter => "+*",
            Verdict::ClassicalBetter => "-*",
            Verdict::NoDifference => "=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "+*" => Some(Verdict::MultitaskingBetter),
            "-*" | "−*" => Some(Verdict::ClassicalBetter),
            "=" => Some(Verdict::NoDifference),
            _ => None,
        }
    }

    /// The same verdict with the roles of the two samples swapped.
    pub fn mirrored(self) -> Self {
        match self {
            Verdict::MultitaskingBetter => Verdict::ClassicalBetter,
            Verdict::ClassicalBetter => Verdict::MultitaskingBetter,
            Verdict::NoDifference => Verdict::NoDifference,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonResult {
    pub mean_c: f64,
    pub std_c: f64,
    pub mean_m: f64,
    pub std_m: f64,
    pub h: f64,
    pub p: f64,
    pub verdict: Verdict,
}

/// Compares classical samples against multitasking samples (higher is
/// better). The direction of a significant result follows the mean ranks.
pub fn compare(classical: &[f64], multitask: &[f64]) -> Result<ComparisonResult> {
    let kw = kruskal_wallis(classical, multitask)?;
    let verdict = if kw.p > SIGNIFICANCE {
        Verdict::NoDifference
    } else {
        match kw.mean_ranks[1].partial_cmp(&kw.mean_ranks[0]) {
            Some(Ordering::Greater) => Verdict::MultitaskingBetter,
            Some(Ordering::Less) => Verdict::ClassicalBetter,
            _ => Verdict::NoDifference,
        }
    };
    Ok(ComparisonResult {
        mean_c: mean(classical),
        std_c: sample_std(classical).expect("checked by kruskal_wallis"),
        mean_m: mean(multitask),
        std_m: sample_std(multitask).expect("checked by kruskal_wallis"),
        h: kw.h,
        p: kw.p,
        verdict,
    })
}
