//! Variational Grover search in its two-dimensional invariant subspace.
//!
//! With `V = |w><w|` and the projector driver, the ansatz never leaves
//! `span{|r>, |w>}` where `|r> = (N-1)^{-1/2} sum_{x != w} |x>`. A state is the
//! pair `(A, B)` and one layer (phase, then mixer) is a 2x2 complex matrix, so
//! the cost of a depth-`p` evaluation is independent of `N = 2^n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{minimize_landscape, OptimConfig, OptimResult};
use crate::rng::derive_seed;
use crate::simulator::{ParamVector, StateVector};
use crate::MAX_QUBITS;

/// Beta period of the projector mixer.
const BETA_PERIOD: f64 = 2.0 * PI;

/// Largest `n` accepted by the analytic model (`N` must fit in a `u64`).
pub const MAX_SEARCH_QUBITS: usize = 62;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelState {
    /// Amplitude on the uniform superposition of non-target states.
    pub a: Complex64,
    /// Amplitude on the target `|w>`.
    pub b: Complex64,
    n: usize,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SEARCH_QUBITS {
        return Err(Error::invalid(format!(
            "search register size must be in 1..={MAX_SEARCH_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

impl TwoLevelState {
    /// `|+>^n` written in the `(A, B)` basis.
    pub fn initial(n: usize) -> Result<Self> {
        check_n(n)?;
        let big_n = (1u64 << n) as f64;
        Ok(TwoLevelState {
            a: Complex64::new(((big_n - 1.0) / big_n).sqrt(), 0.0),
            b: Complex64::new(big_n.sqrt().recip(), 0.0),
            n,
        })
    }

    pub fn new(n: usize, a: Complex64, b: Complex64) -> Result<Self> {
        check_n(n)?;
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!(
                "|A|^2 + |B|^2 = {norm}, expected 1"
            )));
        }
        Ok(TwoLevelState { a, b, n })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Search-space size `N = 2^n`.
    pub fn search_size(&self) -> f64 {
        (1u64 << self.n) as f64
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    /// `1 - |B|^2`.
    pub fn energy(&self) -> f64 {
        (1.0 - self.b.norm_sqr()).max(0.0)
    }

    /// Applies `(1 + b|+><+|)(1 + a|w><w|)` with `a = e^{-i gamma} - 1`,
    /// `b = e^{-i beta} - 1`.
    pub fn step(&self, gamma: f64, beta: f64) -> Self {
        let m = layer_matrix(gamma, beta, self.search_size());
        self.apply(&m)
    }

    pub fn apply(&self, m: &Matrix2) -> Self {
        TwoLevelState {
            a: m[0][0] * self.a + m[0][1] * self.b,
            b: m[1][0] * self.a + m[1][1] * self.b,
            n: self.n,
        }
    }

    pub fn evolve(n: usize, params: &ParamVector) -> Result<Self> {
        let mut s = Self::initial(n)?;
        for (g, b) in params.layers() {
            s = s.step(g, b);
        }
        Ok(s)
    }

    /// Full `2^n` amplitude vector with the target at basis index `target`.
    pub fn to_statevector(&self, target: usize) -> Result<StateVector> {
        if self.n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "grover embedding",
                n: self.n,
                limit: MAX_QUBITS,
            });
        }
        let dim = 1usize << self.n;
        if target >= dim {
            return Err(Error::invalid(format!(
                "target {target} outside 2^{}",
                self.n
            )));
        }
        let rest = self.a / ((dim - 1) as f64).sqrt();
        let mut amps = vec![rest; dim];
        amps[target] = self.b;
        StateVector::from_amplitudes(amps)
    }
}

/// One layer restricted to the invariant subspace, derived directly from the
/// phase and mixer unitaries.
pub fn layer_matrix(gamma: f64, beta: f64, big_n: f64) -> Matrix2 {
    let one = Complex64::new(1.0, 0.0);
    let a = Complex64::from_polar(1.0, -gamma) - one;
    let b = Complex64::from_polar(1.0, -beta) - one;
    let off = (big_n - 1.0).sqrt() / big_n;
    [
        [one + b * (big_n - 1.0) / big_n, b * (a + one) * off],
        [b * off, (a + one) * (one + b / big_n)],
    ]
}

/// The layer matrix in the form
/// `[[1 + a(N-1)/N, -a(b+1)sqrt(N-1)/N], [-a sqrt(N-1)/N, (b+1)(1 + a/N)]]`
/// with `a = e^{-i gamma} - 1`, `b = e^{-i beta} - 1`.
///
/// Used as written it does not reproduce the simulator. With `gamma` and
/// `beta` exchanged it equals [`layer_matrix`] conjugated by `diag(1, -1)`,
/// i.e. the same layer expressed in the basis `(|r>, -|w>)`.
pub fn printed_layer_matrix(gamma: f64, beta: f64, big_n: f64) -> Matrix2 {
    let one = Complex64::new(1.0, 0.0);
    let a = Complex64::from_polar(1.0, -gamma) - one;
    let b = Complex64::from_polar(1.0, -beta) - one;
    let off = (big_n - 1.0).sqrt() / big_n;
    [
        [one + a * (big_n - 1.0) / big_n, -a * (b + one) * off],
        [-a * off, (b + one) * (one + a / big_n)],
    ]
}

/// Minimizes `1 - |<w|psi>|^2` over `2p` angles with the analytic recursion.
pub fn grover_minimize(n: usize, p: usize, cfg: &OptimConfig) -> Result<OptimResult> {
    check_n(n)?;
    let found = minimize_landscape(p, BETA_PERIOD, cfg, || {
        move |x: &[f64]| {
            let (g, b) = x.split_at(x.len() / 2);
            let mut s = TwoLevelState::initial(n).expect("checked n");
            for (&gi, &bi) in g.iter().zip(b) {
                s = s.step(gi, bi);
            }
            s.energy()
        }
    })?;
    let s = TwoLevelState::evolve(n, &found.params)?;
    let energy = s.energy();
    Ok(OptimResult {
        best_params: found.params,
        energy,
        deficit: energy,
        overlap: s.b.norm_sqr(),
        evals_used: found.evals,
        restart_index: found.restart_index,
        converged: found.converged,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroverScan {
    pub n: usize,
    pub p_star: Option<usize>,
    /// Optimized energy at `p = 0, 1, ...` up to `p_star` (or `p_max`).
    pub energies: Vec<f64>,
    pub results: Vec<OptimResult>,
}

/// Warm-started depth scan; stops at the first `p` with energy `<= energy_tol`.
pub fn grover_scan(
    n: usize,
    energy_tol: f64,
    p_max: usize,
    cfg: &OptimConfig,
) -> Result<GroverScan> {
    if !(energy_tol > 0.0) {
        return Err(Error::invalid("energy tolerance must be positive"));
    }
    check_n(n)?;
    let mut energies = Vec::new();
    let mut results = Vec::new();
    let mut warm = cfg.warm_start.clone();
    for p in 0..=p_max {
        let step_cfg = OptimConfig {
            warm_start: warm.clone(),
            seed: derive_seed(cfg.seed, &[n as u64, p as u64]),
            ..cfg.clone()
        };
        let r = grover_minimize(n, p, &step_cfg)?;
        energies.push(r.energy);
        warm = Some(r.best_params.clone());
        let done = r.energy <= energy_tol;
        results.push(r);
        if done {
            return Ok(GroverScan {
                n,
                p_star: Some(p),
                energies,
                results,
            });
        }
    }
    Ok(GroverScan {
        n,
        p_star: None,
        energies,
        results,
    })
}

/// Critical depth `p*` for a search over `2^n` items.
pub fn grover_pstar(
    n: usize,
    energy_tol: f64,
    p_max: usize,
    cfg: &OptimConfig,
) -> Result<Option<usize>> {
    Ok(grover_scan(n, energy_tol, p_max, cfg)?.p_star)
}
