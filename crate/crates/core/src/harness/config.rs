use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphFormat, Regime};

/// Generation checkpoints used when a config does not list any.
pub const DEFAULT_CHECKPOINTS: [u64; 4] = [100_000, 200_000, 500_000, 1_000_000];
pub const DEFAULT_REPETITIONS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSelection {
    Classical,
    Multitasking,
    Both,
}

impl ModeSelection {
    pub fn classical(self) -> bool {
        matches!(self, ModeSelection::Classical | ModeSelection::Both)
    }

    pub fn multitasking(self) -> bool {
        matches!(self, ModeSelection::Multitasking | ModeSelection::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSource {
    pub path: PathBuf,
    /// Defaults to detection by file extension.
    #[serde(default)]
    pub format: Option<GraphFormat>,
    /// Label used in reports and seed derivation; defaults to the file stem.
    #[serde(default)]
    pub name: Option<String>,
}

impl GraphSource {
    pub fn format(&self) -> GraphFormat {
        self.format.unwrap_or_else(|| GraphFormat::from_path(&self.path))
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            self.path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| self.path.display().to_string())
        })
    }
}

/// Experiment description, read from TOML:
///
/// ```toml
/// graphs = [{ path = "ca-GrQc.mtx" }]
/// regime = "unit"                  # unit | random-linear | degree-linear
/// bounds = [1, 12, 64, 207, 415]   # nominal bounds, one problem each
/// checkpoints = [100000, 1000000]  # generations per problem
/// repetitions = 30
/// master_seed = 1
/// modes = "both"                   # classical | multitasking | both
/// resample_weights_per_run = true
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graphs: Vec<GraphSource>,
    pub regime: Regime,
    pub bounds: Vec<u64>,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: Vec<u64>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_modes")]
    pub modes: ModeSelection,
    /// Draw fresh random-linear weights in every repetition (otherwise one
    /// draw per graph is shared by all repetitions).
    #[serde(default = "default_resample")]
    pub resample_weights_per_run: bool,
    /// Worker threads; `None` uses all cores. The CLI flag overrides it.
    #[serde(default)]
    pub workers: Option<usize>,
}

fn default_checkpoints() -> Vec<u64> {
    DEFAULT_CHECKPOINTS.to_vec()
}

fn default_repetitions() -> usize {
    DEFAULT_REPETITIONS
}

fn default_modes() -> ModeSelection {
    ModeSelection::Both
}

fn default_resample() -> bool {
    true
}

impl ExperimentConfig {
    /// A config with defaults for everything but the graphs, regime and bounds.
    pub fn new(graphs: Vec<GraphSource>, regime: Regime, bounds: Vec<u64>) -> Self {
        ExperimentConfig {
            graphs,
            regime,
            bounds,
            checkpoints: default_checkpoints(),
            repetitions: DEFAULT_REPETITIONS,
            master_seed: 0,
            modes: ModeSelection::Both,
            resample_weights_per_run: true,
            workers: None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative graph paths resolve against its directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for g in &mut cfg.graphs {
            if g.path.is_relative() {
                g.path = base.join(&g.path);
            }
        }
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_empty() {
            return Err(Error::Config("at least one bound is required".into()));
        }
        if self.bounds.contains(&0) {
            return Err(Error::Config("bounds must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.checkpoints.is_empty() {
            return Err(Error::Config("at least one checkpoint is required".into()));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("checkpoints must be strictly increasing".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        let k = self.bounds.len() as u64;
        if self.max_generations().checked_mul(k).is_none() {
            return Err(Error::Config("k · G_max overflows".into()));
        }
        Ok(())
    }

    /// `k`
    pub fn problem_count(&self) -> usize {
        self.bounds.len()
    }

    /// `G_max`
    pub fn max_generations(&self) -> u64 {
        self.checkpoints.last().copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let cfg = ExperimentConfig::from_toml_str(
            "graphs = [{ path = \"g.mtx\" }]\nregime = \"unit\"\nbounds = [1, 12]\n",
        )
        .unwrap();
        assert_eq!(cfg.checkpoints, DEFAULT_CHECKPOINTS.to_vec());
        assert_eq!(cfg.repetitions, 30);
        assert_eq!(cfg.modes, ModeSelection::Both);
        assert!(cfg.resample_weights_per_run);
        assert_eq!(cfg.graphs[0].format(), GraphFormat::MatrixMarket);
        assert_eq!(cfg.graphs[0].name(), "g");
    }

    #[test]
    fn rejects_bad_values() {
        let base = "graphs = [{ path = \"g.txt\" }]\nregime = \"degree-linear\"\n";
        for extra in [
            "bounds = []",
            "bounds = [0]",
            "bounds = [1]\nrepetitions = 0",
            "bounds = [1]\ncheckpoints = [5, 5]",
            "bounds = [1]\nunknown = 3",
            "bounds = [1]\nworkers = 0",
        ] {
            assert!(
                ExperimentConfig::from_toml_str(&format!("{base}{extra}\n")).is_err(),
                "{extra}"
            );
        }
        assert!(ExperimentConfig::from_toml_str("graphs = []\nregime = \"other\"\nbounds = [1]\n").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let mut cfg = ExperimentConfig::new(
            vec![GraphSource {
                path: "a.mtx".into(),
                format: Some(GraphFormat::EdgeList),
                name: Some("A".into()),
            }],
            Regime::RandomLinear,
            vec![3, 9],
        );
        cfg.modes = ModeSelection::Classical;
        cfg.workers = Some(2);
        assert_eq!(ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }
}
