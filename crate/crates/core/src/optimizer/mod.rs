//! Classical outer loop: multi-start Nelder-Mead over the `2p` QAOA angles.
//!
//! Restart 0 is the warm start (previous-depth optimum padded with a zero
//! layer) when one is supplied, restart 1 the same schedule linearly
//! interpolated onto `p` layers, and the rest are uniform in the search box
//! `gamma in [0, 2pi)`, `beta in [0, T)` with `T` the driver's beta period.
//! Every restart draws from its own sub-seed, so results do not depend on the
//! order in which parallel restarts finish.

mod nelder_mead;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use nelder_mead::{
    finite_difference_gradient, nelder_mead, NelderMeadOptions, NelderMeadResult,
};

use crate::error::{Error, Result};
use crate::objective::DiagonalObjective;
use crate::rng::{derive_seed, rng_from_seed};
use crate::simulator::{AnsatzEvaluator, DriverKind, ParamVector, GAMMA_PERIOD};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimConfig {
    pub restarts: usize,
    /// Per-restart evaluation budget; `None` means `5000 * p`.
    pub max_evals: Option<usize>,
    /// Simplex energy spread at which a restart is considered converged.
    pub tolerance: f64,
    pub seed: u64,
    pub warm_start: Option<ParamVector>,
    /// Initial simplex edge for random restarts (radians).
    pub random_step: f64,
    /// Initial simplex edge for warm / interpolated restarts (radians).
    pub warm_step: f64,
    /// Run restarts on the rayon pool.
    pub parallel: bool,
}

impl Default for OptimConfig {
    fn default() -> Self {
        OptimConfig {
            restarts: 20,
            max_evals: None,
            tolerance: 1e-8,
            seed: 0,
            warm_start: None,
            random_step: 0.5,
            warm_step: 0.1,
            parallel: true,
        }
    }
}

impl OptimConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_warm_start(mut self, warm: Option<ParamVector>) -> Self {
        self.warm_start = warm;
        self
    }

    pub fn evals_for_depth(&self, p: usize) -> usize {
        self.max_evals.unwrap_or(5000 * p.max(1))
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        if self.max_evals == Some(0) {
            return Err(Error::invalid("max_evals must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimResult {
    pub best_params: ParamVector,
    /// Best energy found (`E_g^QAOA`).
    pub energy: f64,
    /// `energy - ground_energy`.
    pub deficit: f64,
    /// Ground-space probability at `best_params`.
    pub overlap: f64,
    pub evals_used: usize,
    pub restart_index: usize,
    pub converged: bool,
}

/// Outcome of the restart loop on an abstract landscape.
#[derive(Debug, Clone)]
pub(crate) struct LandscapeMinimum {
    pub params: ParamVector,
    pub evals: usize,
    pub restart_index: usize,
    pub converged: bool,
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Runs the restart schedule against `energy_fn`, a factory producing one
/// independent evaluator per restart.
pub(crate) fn minimize_landscape<M, F>(
    p: usize,
    beta_period: f64,
    cfg: &OptimConfig,
    make_energy: M,
) -> Result<LandscapeMinimum>
where
    M: Fn() -> F + Sync,
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    if p == 0 {
        return Ok(LandscapeMinimum {
            params: ParamVector::empty(),
            evals: 1,
            restart_index: 0,
            converged: true,
        });
    }

    let mut starts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(cfg.restarts);
    if let Some(warm) = cfg.warm_start.as_ref().filter(|w| w.depth() <= p) {
        starts.push((warm.padded_to(p).to_flat(), cfg.warm_step));
        if warm.depth() >= 1 && warm.depth() < p && starts.len() < cfg.restarts {
            starts.push((warm.interpolated_to(p).to_flat(), cfg.warm_step));
        }
    }
    while starts.len() < cfg.restarts {
        let idx = starts.len() as u64;
        let mut rng = rng_from_seed(derive_seed(cfg.seed, &[idx]));
        let mut x = Vec::with_capacity(2 * p);
        x.extend((0..p).map(|_| rng.gen_range(0.0..GAMMA_PERIOD)));
        x.extend((0..p).map(|_| rng.gen_range(0.0..beta_period)));
        starts.push((x, cfg.random_step));
    }

    let budget = cfg.evals_for_depth(p);
    let run = |(x0, step): &(Vec<f64>, f64)| {
        let opts = NelderMeadOptions {
            initial_step: *step,
            f_tolerance: cfg.tolerance,
            max_evals: budget,
        };
        let mut f = make_energy();
        nelder_mead(&mut f, x0, &opts)
    };
    let runs: Vec<NelderMeadResult> = if cfg.parallel {
        starts.par_iter().map(run).collect()
    } else {
        starts.iter().map(run).collect()
    };

    let evals = runs.iter().map(|r| r.evals).sum::<usize>();
    let mut winner = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.f < runs[winner].f {
            winner = i;
        }
    }
    let best = &runs[winner];
    let (g, b) = best.x.split_at(p);
    let params = ParamVector::new(
        g.iter().map(|&v| wrap(v, GAMMA_PERIOD)).collect(),
        b.iter().map(|&v| wrap(v, beta_period)).collect(),
    )?;
    Ok(LandscapeMinimum {
        params,
        evals,
        restart_index: winner,
        converged: best.converged,
    })
}

/// Minimizes `<psi(gamma, beta)| H |psi(gamma, beta)>` at depth `p`.
pub fn minimize(
    diag: &DiagonalObjective,
    kind: DriverKind,
    p: usize,
    cfg: &OptimConfig,
) -> Result<OptimResult> {
    let proto = AnsatzEvaluator::new(diag, kind)?;
    let found = minimize_landscape(p, kind.beta_period(), cfg, || {
        let mut ev = proto.clone();
        move |x: &[f64]| ev.energy_flat(x)
    })?;
    let mut ev = proto;
    let energy = ev.energy(&found.params);
    let overlap = diag.overlap_unchecked(ev.state().amplitudes());
    Ok(OptimResult {
        deficit: energy - diag.ground_energy() as f64,
        energy,
        overlap,
        best_params: found.params,
        evals_used: found.evals,
        restart_index: found.restart_index,
        converged: found.converged,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalDepth {
    /// Smallest depth reaching the threshold, if any up to `p_max`.
    pub p_star: Option<usize>,
    /// Overlap at each scanned depth, starting with `p = 0`.
    pub eta_by_depth: Vec<f64>,
    pub results: Vec<OptimResult>,
}

/// Scans `p = 0, 1, ...` with warm starts until the optimized state's
/// ground-space overlap reaches `eta_threshold`.
pub fn critical_depth(
    diag: &DiagonalObjective,
    kind: DriverKind,
    eta_threshold: f64,
    p_max: usize,
    cfg: &OptimConfig,
) -> Result<CriticalDepth> {
    if !(eta_threshold > 0.0 && eta_threshold <= 1.0) && eta_threshold != 0.0 {
        return Err(Error::invalid(format!(
            "eta threshold {eta_threshold} outside [0, 1]"
        )));
    }
    let mut eta_by_depth = Vec::new();
    let mut results = Vec::new();
    let mut warm: Option<ParamVector> = cfg.warm_start.clone();
    for p in 0..=p_max {
        let step_cfg = OptimConfig {
            warm_start: warm.clone(),
            seed: derive_seed(cfg.seed, &[p as u64]),
            ..cfg.clone()
        };
        let r = minimize(diag, kind, p, &step_cfg)?;
        eta_by_depth.push(r.overlap);
        warm = Some(r.best_params.clone());
        let reached = r.overlap >= eta_threshold;
        results.push(r);
        if reached {
            return Ok(CriticalDepth {
                p_star: Some(p),
                eta_by_depth,
                results,
            });
        }
    }
    Ok(CriticalDepth {
        p_star: None,
        eta_by_depth,
        results,
    })
}
