//! Experiment configuration: a flat TOML key-value file, with command-line
//! flags taking precedence over file values.

use std::path::{Path, PathBuf};

use agemoa_core::{ProblemKind, ProblemSpec};
use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::bounds::default_max_iterations;
use crate::params::default_parameters;
use crate::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Sizes {
    One(usize),
    Many(Vec<usize>),
}

/// File representation; every key is top level.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    kind: String,
    n: Sizes,
    k: usize,
    m: Option<usize>,
    strategies: Option<Vec<Algorithm>>,
    mu: Option<usize>,
    tau: Option<u64>,
    runs: usize,
    master_seed: u64,
    max_iterations: Option<u64>,
    output: Option<PathBuf>,
}

/// One experiment: a grid of problem sizes times algorithms, each cell run
/// `runs` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub kind: ProblemKind,
    pub n: Vec<usize>,
    pub k: usize,
    /// Number of objectives; always 2 for OJZJ.
    pub m: usize,
    pub algorithms: Vec<Algorithm>,
    /// Population size; `None` selects the per-benchmark default.
    pub mu: Option<usize>,
    /// Aging threshold; `None` selects `μ/2`.
    pub tau: Option<u64>,
    pub runs: usize,
    pub master_seed: u64,
    /// Iteration cap per run; `None` selects the bound-derived default.
    pub max_iterations: Option<u64>,
    pub output: Option<PathBuf>,
}

/// Command-line values that replace file values when present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub master_seed: Option<u64>,
    pub max_iterations: Option<u64>,
    pub runs: Option<usize>,
}

/// Fully resolved parameters of one `(algorithm, n)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub spec: ProblemSpec,
    pub mu: usize,
    /// Aging threshold; `None` for the non-aging algorithms.
    pub tau: Option<u64>,
    pub max_iterations: u64,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        let kind: ProblemKind = file
            .kind
            .parse()
            .map_err(|e: agemoa_core::Error| HarnessError::Config(e.to_string()))?;
        let m = match (kind, file.m) {
            (ProblemKind::Ojzj, None) => 2,
            (ProblemKind::Mojzj, None) => {
                return Err(HarnessError::Config(
                    "mojzj needs the number of objectives m".into(),
                ))
            }
            (_, Some(m)) => m,
        };
        let config = ExperimentConfig {
            kind,
            n: match file.n {
                Sizes::One(n) => vec![n],
                Sizes::Many(ns) => ns,
            },
            k: file.k,
            m,
            algorithms: file.strategies.unwrap_or_else(|| Algorithm::ALL.to_vec()),
            mu: file.mu,
            tau: file.tau,
            runs: file.runs,
            master_seed: file.master_seed,
            max_iterations: file.max_iterations,
            output: file.output,
        };
        config.cells()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    /// Renders the configuration in the file format it is read from.
    pub fn to_toml_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("kind = \"{}\"\n", self.kind));
        let ns: Vec<String> = self.n.iter().map(ToString::to_string).collect();
        out.push_str(&format!("n = [{}]\n", ns.join(", ")));
        out.push_str(&format!("k = {}\n", self.k));
        out.push_str(&format!("m = {}\n", self.m));
        let algs: Vec<String> = self.algorithms.iter().map(|a| format!("\"{a}\"")).collect();
        out.push_str(&format!("strategies = [{}]\n", algs.join(", ")));
        if let Some(mu) = self.mu {
            out.push_str(&format!("mu = {mu}\n"));
        }
        if let Some(tau) = self.tau {
            out.push_str(&format!("tau = {tau}\n"));
        }
        out.push_str(&format!("runs = {}\n", self.runs));
        out.push_str(&format!("master_seed = {}\n", self.master_seed));
        if let Some(cap) = self.max_iterations {
            out.push_str(&format!("max_iterations = {cap}\n"));
        }
        if let Some(path) = &self.output {
            out.push_str(&format!("output = {:?}\n", path.display().to_string()));
        }
        out
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(path) = &overrides.output {
            self.output = Some(path.clone());
        }
        if let Some(seed) = overrides.master_seed {
            self.master_seed = seed;
        }
        if let Some(cap) = overrides.max_iterations {
            self.max_iterations = Some(cap);
        }
        if let Some(runs) = overrides.runs {
            self.runs = runs;
        }
    }

    /// The experiment grid in execution order: sizes in the order given,
    /// algorithms in the order given within each size.
    pub fn cells(&self) -> Result<Vec<Cell>, HarnessError> {
        if self.n.is_empty() {
            return Err(HarnessError::Config("no problem sizes given".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Config("no strategies given".into()));
        }
        if self.max_iterations == Some(0) {
            return Err(HarnessError::Config(
                "max_iterations must be positive".into(),
            ));
        }
        let mut cells = Vec::with_capacity(self.n.len() * self.algorithms.len());
        for &n in &self.n {
            let spec = ProblemSpec::new(self.kind, n, self.m, self.k)
                .map_err(|e| HarnessError::Config(e.to_string()))?;
            let (default_mu, _) = default_parameters(&spec);
            let mu = self.mu.unwrap_or(default_mu);
            if mu == 0 {
                return Err(HarnessError::Config("mu must be positive".into()));
            }
            let tau = self.tau.unwrap_or(mu as u64 / 2);
            if tau >= mu as u64 {
                return Err(HarnessError::Config(format!(
                    "aging needs tau < mu, got mu = {mu}, tau = {tau}"
                )));
            }
            let max_iterations = self
                .max_iterations
                .unwrap_or_else(|| default_max_iterations(&spec, mu, tau));
            for &algorithm in &self.algorithms {
                cells.push(Cell {
                    algorithm,
                    spec,
                    mu,
                    tau: (algorithm == Algorithm::Aging).then_some(tau),
                    max_iterations,
                });
            }
        }
        Ok(cells)
    }
}
