use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mean_sem, SweepSpec};
use crate::error::Result;
use crate::objective::embed;
use crate::optimizer::{minimize, OptimConfig};
use crate::simulator::{DriverKind, ParamVector};

/// One optimized (instance, depth) pair. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub k: usize,
    pub driver: DriverKind,
    pub p: usize,
    pub alpha_target: f64,
    pub m: usize,
    pub instance_seed: u64,
    pub energy: f64,
    pub ground_energy: u32,
    pub deficit: f64,
    pub overlap: f64,
    pub converged: bool,
    pub evals: usize,
}

impl SweepRecord {
    /// Realized density `m / n`.
    pub fn alpha_realized(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n: usize,
    pub k: usize,
    pub driver: DriverKind,
    pub p: usize,
    pub alpha_target: f64,
    pub mean_deficit: f64,
    pub sem_deficit: f64,
    pub mean_overlap: f64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct DensitySweep {
    pub records: Vec<SweepRecord>,
    pub aggregates: Vec<Aggregate>,
}

impl DensitySweep {
    pub fn aggregate_at(&self, alpha: f64, p: usize) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.p == p && a.alpha_target == alpha)
    }
}

fn sorted_depths(depths: &[usize]) -> Vec<usize> {
    let mut d = depths.to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

fn failed_row(spec: &SweepSpec, alpha: f64, m: usize, seed: u64, p: usize) -> SweepRecord {
    SweepRecord {
        n: spec.n,
        k: spec.k,
        driver: spec.driver,
        p,
        alpha_target: alpha,
        m,
        instance_seed: seed,
        energy: f64::NAN,
        ground_energy: 0,
        deficit: f64::NAN,
        overlap: f64::NAN,
        converged: false,
        evals: 0,
    }
}

fn sweep_instance(
    spec: &SweepSpec,
    depths: &[usize],
    alpha: f64,
    index: usize,
) -> Vec<SweepRecord> {
    let seed = spec.instance_seed(alpha, index);
    let m = spec.clauses_for(alpha);
    let run = || -> Result<Vec<SweepRecord>> {
        let inst = spec.instance(alpha, index)?;
        let diag = embed(&inst)?;
        let mut warm: Option<ParamVector> = None;
        let mut rows = Vec::with_capacity(depths.len());
        for &p in depths {
            let cfg = OptimConfig {
                warm_start: warm.take(),
                ..spec.optimizer_for(seed, p)
            };
            let r = minimize(&diag, spec.driver, p, &cfg)?;
            rows.push(SweepRecord {
                n: spec.n,
                k: spec.k,
                driver: spec.driver,
                p,
                alpha_target: alpha,
                m,
                instance_seed: seed,
                energy: r.energy,
                ground_energy: diag.ground_energy(),
                deficit: r.deficit,
                overlap: r.overlap,
                converged: r.converged,
                evals: r.evals_used,
            });
            warm = Some(r.best_params);
        }
        Ok(rows)
    };
    run().unwrap_or_else(|e| {
        log::warn!("alpha {alpha}, instance {index}: {e}");
        depths
            .iter()
            .map(|&p| failed_row(spec, alpha, m, seed, p))
            .collect()
    })
}

/// Optimizes every instance of the ensemble at every depth (warm-started in
/// increasing depth) and aggregates per `(alpha, p)`.
pub fn run_density_sweep(spec: &SweepSpec) -> Result<DensitySweep> {
    spec.validate()?;
    let depths = sorted_depths(&spec.depths);
    let tasks: Vec<(f64, usize)> = spec
        .alphas
        .iter()
        .flat_map(|&a| (0..spec.instances_per_point).map(move |i| (a, i)))
        .collect();
    let records: Vec<SweepRecord> = tasks
        .par_iter()
        .map(|&(alpha, i)| sweep_instance(spec, &depths, alpha, i))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let aggregates = aggregate(&records);
    Ok(DensitySweep {
        records,
        aggregates,
    })
}

/// Groups rows by `(n, k, driver, alpha_target, p)` in first-seen order of
/// alpha, then ascending `p`. Rows with a NaN deficit are skipped.
pub fn aggregate(records: &[SweepRecord]) -> Vec<Aggregate> {
    let mut keys: Vec<(usize, usize, DriverKind, f64)> = Vec::new();
    for r in records {
        let key = (r.n, r.k, r.driver, r.alpha_target);
        if !keys.iter().any(|k| {
            k.0 == key.0 && k.1 == key.1 && k.2 == key.2 && k.3.to_bits() == key.3.to_bits()
        }) {
            keys.push(key);
        }
    }
    let mut out = Vec::new();
    for (n, k, driver, alpha) in keys {
        let group: Vec<&SweepRecord> = records
            .iter()
            .filter(|r| {
                r.n == n
                    && r.k == k
                    && r.driver == driver
                    && r.alpha_target.to_bits() == alpha.to_bits()
                    && !r.deficit.is_nan()
            })
            .collect();
        let depths = sorted_depths(&group.iter().map(|r| r.p).collect::<Vec<_>>());
        for p in depths {
            let at_p: Vec<&&SweepRecord> = group.iter().filter(|r| r.p == p).collect();
            let deficits: Vec<f64> = at_p.iter().map(|r| r.deficit).collect();
            let overlaps: Vec<f64> = at_p.iter().map(|r| r.overlap).collect();
            let (mean_deficit, sem_deficit) = mean_sem(&deficits);
            let (mean_overlap, _) = mean_sem(&overlaps);
            out.push(Aggregate {
                n,
                k,
                driver,
                p,
                alpha_target: alpha,
                mean_deficit,
                sem_deficit,
                mean_overlap,
                count: at_p.len(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            n: 4,
            k: 2,
            depths: vec![2, 1],
            alphas: vec![0.0, 1.5],
            instances_per_point: 3,
            optimizer: OptimConfig::default().with_restarts(2),
            ..SweepSpec::default()
        }
    }

    #[test]
    fn empty_instances_have_no_deficit() {
        let spec = SweepSpec {
            alphas: vec![0.0],
            ..small_spec()
        };
        let sweep = run_density_sweep(&spec).unwrap();
        assert_eq!(sweep.records.len(), 6);
        for r in &sweep.records {
            assert_eq!(r.m, 0);
            assert_eq!(r.deficit, 0.0);
            assert!((r.overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rows_are_ordered_and_aggregated() {
        let sweep = run_density_sweep(&small_spec()).unwrap();
        assert_eq!(sweep.records.len(), 2 * 3 * 2);
        assert_eq!(sweep.records[0].p, 1);
        assert_eq!(sweep.records[1].p, 2);
        assert_eq!(
            sweep.records[1].instance_seed,
            sweep.records[0].instance_seed
        );
        assert_eq!(sweep.aggregates.len(), 4);
        let a = sweep.aggregate_at(1.5, 2).unwrap();
        assert_eq!(a.count, 3);
        assert!(sweep
            .records
            .iter()
            .all(|r| r.deficit >= -1e-9 && r.m == if r.alpha_target == 0.0 { 0 } else { 6 }));
    }
}
