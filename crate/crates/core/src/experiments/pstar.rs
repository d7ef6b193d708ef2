use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_sem, SweepSpec};
use crate::error::Result;
use crate::objective::{embed, DiagonalObjective};
use crate::optimizer::{minimize, OptimConfig};
use crate::simulator::{DriverKind, ParamVector};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PStarRow {
    pub n: usize,
    pub k: usize,
    pub driver: DriverKind,
    pub alpha_target: f64,
    pub m: usize,
    /// First depth whose ensemble-mean overlap reaches the threshold.
    pub p_star: Option<usize>,
    pub p_max: usize,
    /// Ensemble-mean overlap at `p = 0, 1, ...`.
    pub mean_eta: Vec<f64>,
    pub sem_eta: Vec<f64>,
}

impl PStarRow {
    /// `p_star`, or `p_max + 1` when the threshold was never reached.
    pub fn censored_p_star(&self) -> usize {
        self.p_star.unwrap_or(self.p_max + 1)
    }
}

fn scan_alpha(spec: &SweepSpec, alpha: f64) -> Result<PStarRow> {
    let ensemble: Vec<(u64, DiagonalObjective)> = (0..spec.instances_per_point)
        .map(|i| {
            Ok((
                spec.instance_seed(alpha, i),
                embed(&spec.instance(alpha, i)?)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut warm: Vec<Option<ParamVector>> = vec![None; ensemble.len()];
    let mut row = PStarRow {
        n: spec.n,
        k: spec.k,
        driver: spec.driver,
        alpha_target: alpha,
        m: spec.clauses_for(alpha),
        p_star: None,
        p_max: spec.p_max,
        mean_eta: Vec::new(),
        sem_eta: Vec::new(),
    };
    for p in 0..=spec.p_max {
        let results = ensemble
            .par_iter()
            .zip(warm.par_iter())
            .map(|((seed, diag), w)| {
                let cfg = OptimConfig {
                    warm_start: w.clone(),
                    ..spec.optimizer_for(*seed, p)
                };
                minimize(diag, spec.driver, p, &cfg)
            })
            .collect::<Result<Vec<_>>>()?;
        let etas: Vec<f64> = results.iter().map(|r| r.overlap).collect();
        let (mean, sem) = mean_sem(&etas);
        row.mean_eta.push(mean);
        row.sem_eta.push(sem);
        warm = results.into_iter().map(|r| Some(r.best_params)).collect();
        if mean >= spec.eta_threshold {
            row.p_star = Some(p);
            break;
        }
    }
    Ok(row)
}

/// Ensemble critical depth for every density in `spec.alphas`: at each depth
/// every instance is optimized (warm-started from its previous depth) and
/// the mean ground-space overlap is compared with `spec.eta_threshold`.
pub fn run_pstar_scan(spec: &SweepSpec) -> Result<Vec<PStarRow>> {
    spec.validate()?;
    spec.alphas.iter().map(|&a| scan_alpha(spec, a)).collect()
}
