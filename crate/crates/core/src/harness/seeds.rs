use sha2::{Digest, Sha256};

use crate::graph::Regime;

/// Independent random streams within one experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    /// Random-linear weights of problem `i`.
    Weights { problem: usize },
    /// Classical GSEMO run on problem `i`.
    Classical { problem: usize },
    /// The single multitasking GSEMO run.
    Multitask,
}

/// Derives every seed of an experiment from its master seed.
///
/// A seed is the first eight bytes (little endian) of the SHA-256 digest of
///
/// ```text
/// mt-submod/seed-v1|master=<m>|graph=<name>|regime=<r>|bounds=<b1,..,bk>|rep=<r>|stream=<s>|problem=<i>
/// ```
///
/// with `rep=fixed` for weights shared across repetitions, `stream` one of
/// `weights`, `classical`, `multitask`, and `problem=none` for the
/// multitasking run.
#[derive(Clone, Debug)]
pub struct SeedScheme {
    prefix: String,
}

impl SeedScheme {
    pub const DESCRIPTION: &'static str = "sha256(\"mt-submod/seed-v1|master=<m>|graph=<name>|regime=<r>|bounds=<b1,..,bk>|rep=<r|fixed>|stream=<weights|classical|multitask>|problem=<i|none>\")[0..8] as u64 little-endian";

    pub fn new(master_seed: u64, graph: &str, regime: Regime, bounds: &[u64]) -> Self {
        let bounds = bounds.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        SeedScheme {
            prefix: format!(
                "mt-submod/seed-v1|master={master_seed}|graph={graph}|regime={regime}|bounds={bounds}"
            ),
        }
    }

    /// `repetition = None` means "shared by all repetitions".
    pub fn seed(&self, repetition: Option<usize>, stream: Stream) -> u64 {
        let rep = repetition.map_or_else(|| "fixed".to_string(), |r| r.to_string());
        let (name, problem) = match stream {
            Stream::Weights { problem } => ("weights", problem.to_string()),
            Stream::Classical { problem } => ("classical", problem.to_string()),
            Stream::Multitask => ("multitask", "none".to_string()),
        };
        let key = format!("{}|rep={rep}|stream={name}|problem={problem}", self.prefix);
        let digest = Sha256::digest(key.as_bytes());
        let mut bytes = [0u8; 8];
        bytes.copy_from_slice(&digest[..8]);
        u64::from_le_bytes(bytes)
    }
}
