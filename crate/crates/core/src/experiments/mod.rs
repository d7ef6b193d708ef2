//! Seeded batch experiments: deficit vs density, critical depth vs density,
//! and the variational Grover depth scaling.
//!
//! Instance seeds depend only on `(base_seed, alpha, index)`, so the same
//! ensemble is reused across depths and drivers and every depth series is
//! paired. Work is spread over the current rayon pool; results are collected
//! by index, which makes the CSV bytes independent of the worker count.

mod grover_scaling;
mod io;
mod pstar;
mod render;
pub mod svg;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{
    clauses_for_density, generate_instance, generate_unique_instance, SatInstance,
};
use crate::optimizer::OptimConfig;
use crate::rng::derive_seed;
use crate::simulator::DriverKind;
use crate::MAX_QUBITS;

pub use grover_scaling::{fit_power_law, run_grover_scaling, GroverScaling, GroverScalingRow};
pub use io::{
    read_records_csv, write_aggregates_csv, write_grover_csv, write_grover_trace_csv,
    write_pstar_csv, write_pstar_trace_csv, write_records_csv, RunManifest, AGGREGATE_HEADER,
    MANIFEST_SCHEMA_VERSION, RECORD_HEADER,
};
pub use pstar::{run_pstar_scan, PStarRow};
pub use render::{emit_density_figures, emit_grover_figures, emit_pstar_figures};
pub use sweep::{aggregate, run_density_sweep, Aggregate, DensitySweep, SweepRecord};

/// Satisfiability threshold of random 2-SAT.
pub const ALPHA_CRITICAL_2SAT: f64 = 1.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n: usize,
    pub k: usize,
    pub driver: DriverKind,
    pub depths: Vec<usize>,
    pub alphas: Vec<f64>,
    pub instances_per_point: usize,
    pub base_seed: u64,
    pub optimizer: OptimConfig,
    pub eta_threshold: f64,
    /// Depth cap for critical-depth scans.
    pub p_max: usize,
    /// Draw clauses without replacement across the instance.
    pub unique_clauses: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            n: 6,
            k: 3,
            driver: DriverKind::TransverseField,
            depths: vec![1, 2, 3],
            alphas: default_alpha_grid(),
            instances_per_point: 100,
            base_seed: 1,
            optimizer: OptimConfig::default(),
            eta_threshold: 0.95,
            p_max: 30,
            unique_clauses: false,
        }
    }
}

/// `0.25, 0.5, ..., 5.0`.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=20).map(|i| i as f64 * 0.25).collect()
}

/// Parses `start:stop:step` (inclusive, tolerant to rounding) or a comma list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid(format!("cannot parse grid `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step): (f64, f64, f64) = (
                start.trim().parse().map_err(|_| bad())?,
                stop.trim().parse().map_err(|_| bad())?,
                step.trim().parse().map_err(|_| bad())?,
            );
            if !(step > 0.0) || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|i| start + i as f64 * step).collect())
        }
        [_] => text
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .collect(),
        _ => Err(bad()),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "sweep",
                n: self.n,
                limit: MAX_QUBITS,
            });
        }
        if self.n == 0 || !(2..=3).contains(&self.k) || self.k > self.n {
            return Err(Error::invalid(format!(
                "need 2 <= k <= 3 and k <= n, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if self.instances_per_point == 0 {
            return Err(Error::invalid("instances_per_point must be at least 1"));
        }
        if self.alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(Error::invalid("densities must be finite and nonnegative"));
        }
        if !(0.0..=1.0).contains(&self.eta_threshold) {
            return Err(Error::invalid("eta threshold must lie in [0, 1]"));
        }
        self.optimizer.validate()
    }

    pub fn clauses_for(&self, alpha: f64) -> usize {
        clauses_for_density(self.n, alpha)
    }

    pub fn instance_seed(&self, alpha: f64, index: usize) -> u64 {
        derive_seed(self.base_seed, &[alpha.to_bits(), index as u64])
    }

    pub fn instance(&self, alpha: f64, index: usize) -> Result<SatInstance> {
        let seed = self.instance_seed(alpha, index);
        let m = self.clauses_for(alpha);
        if self.unique_clauses {
            generate_unique_instance(self.n, m, self.k, seed)
        } else {
            generate_instance(self.n, m, self.k, seed)
        }
    }

    /// Optimizer configuration for one instance at one depth.
    pub(crate) fn optimizer_for(&self, instance_seed: u64, p: usize) -> OptimConfig {
        OptimConfig {
            seed: derive_seed(self.optimizer.seed, &[instance_seed, p as u64]),
            warm_start: None,
            ..self.optimizer.clone()
        }
    }
}

/// Mean and standard error of the mean (sample standard deviation / sqrt(n)).
pub fn mean_sem(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}
