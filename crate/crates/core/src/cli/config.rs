use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::odeflow::FlowConfig;
use crate::symgroup::Partition;

/// Environment variable that overrides the thread count.
pub const THREADS_ENV: &str = "JACKWEIGHT_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub tau: Vec<usize>,
    pub kappa: f64,
    /// Quadrature points per angle on the coarse grid.
    pub points: usize,
    pub degree_cap: i32,
    pub flow_tol: f64,
    pub series_tol: f64,
    pub gram_tol: f64,
    pub threads: usize,
    pub seed: u64,
    pub json_out: Option<String>,
    pub csv_out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tau: vec![2, 1],
            kappa: 0.05,
            points: 96,
            degree_cap: 2,
            flow_tol: 1e-10,
            series_tol: 1e-10,
            gram_tol: 1e-2,
            threads: 1,
            seed: 1,
            json_out: None,
            csv_out: None,
        }
    }
}

/// Partial settings, from flags or from a config file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConfigLayer {
    pub tau: Option<Vec<usize>>,
    pub kappa: Option<f64>,
    pub points: Option<usize>,
    pub degree_cap: Option<i32>,
    pub flow_tol: Option<f64>,
    pub series_tol: Option<f64>,
    pub gram_tol: Option<f64>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub json_out: Option<String>,
    pub csv_out: Option<String>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }
}

impl RunConfig {
    pub fn apply(mut self, layer: &ConfigLayer) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = &layer.$f { self.$f = v.clone(); } )* };
        }
        take!(tau, kappa, points, degree_cap, flow_tol, series_tol, gram_tol, threads, seed);
        if layer.json_out.is_some() {
            self.json_out = layer.json_out.clone();
        }
        if layer.csv_out.is_some() {
            self.csv_out = layer.csv_out.clone();
        }
        self
    }

    /// Defaults, then flags, then the config file, then the thread override from the environment.
    pub fn resolve(flags: &ConfigLayer, file: Option<&ConfigLayer>, env_threads: Option<&str>) -> Result<Self> {
        let mut cfg = RunConfig::default().apply(flags);
        if let Some(f) = file {
            cfg = cfg.apply(f);
        }
        if let Some(t) = env_threads {
            cfg.threads = t
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{THREADS_ENV}={t} is not a thread count")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn partition(&self) -> Result<Partition> {
        Partition::new(self.tau.clone())
    }

    /// Rejects invalid shapes and `|κ| ≥ 1/2`; returns warnings.
    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<Vec<String>> {
        let p = self.partition()?;
        if !(self.kappa.abs() < 0.5) {
            return Err(Error::InvalidConfig(format!("|kappa| must be below 1/2, got {}", self.kappa)));
        }
        if self.points < 4 || !self.points.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!("points must be even and at least 4, got {}", self.points)));
        }
        if self.threads == 0 {
            return Err(Error::InvalidConfig("threads must be positive".into()));
        }
        for (name, v) in [("flowTol", self.flow_tol), ("seriesTol", self.series_tol), ("gramTol", self.gram_tol)] {
            if !(v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        let mut warnings = Vec::new();
        let h = p.max_hook() as f64;
        if self.kappa.abs() >= 1.0 / h {
            warnings.push(format!(
                "|kappa| = {} is not below 1/h_tau = 1/{}; positivity of H is not guaranteed",
                self.kappa.abs(),
                p.max_hook()
            ));
        }
        Ok(warnings)
    }

    pub fn flow(&self) -> FlowConfig {
        FlowConfig::with_tol(self.flow_tol)
    }

    /// Runs `f` on a pool of `threads` workers.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(pool.install(f))
    }
}
