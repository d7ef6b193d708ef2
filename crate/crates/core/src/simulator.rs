//! Depth-`p` QAOA ansatz on a dense amplitude buffer.
//!
//! One layer is `exp(-i beta H_x) exp(-i gamma V)`: the diagonal phase acts
//! first, then the driver. The transverse-field driver factorizes into one
//! `exp(-i beta sigma_x)` per qubit and is applied with bit-stride sweeps; the
//! projector driver `(|+><+|)^n` is a rank-one update.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::DiagonalObjective;
use crate::MAX_QUBITS;

/// Tolerance on `sum |psi_z|^2 - 1` for a valid state.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DriverKind {
    /// `H_x = sum_i sigma_x^(i)`.
    #[serde(rename = "x")]
    TransverseField,
    /// `H_x = (|+><+|)^{⊗n}`.
    #[serde(rename = "plus")]
    PlusProjector,
}

impl DriverKind {
    pub const ALL: [DriverKind; 2] = [DriverKind::TransverseField, DriverKind::PlusProjector];

    pub fn name(self) -> &'static str {
        match self {
            DriverKind::TransverseField => "x",
            DriverKind::PlusProjector => "plus",
        }
    }

    /// Period of the energy landscape in each `beta`.
    pub fn beta_period(self) -> f64 {
        match self {
            DriverKind::TransverseField => PI,
            DriverKind::PlusProjector => 2.0 * PI,
        }
    }
}

impl fmt::Display for DriverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DriverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" | "transverse" | "transverse-field" => Ok(DriverKind::TransverseField),
            "plus" | "projector" | "plus-projector" => Ok(DriverKind::PlusProjector),
            other => Err(Error::invalid(format!(
                "unknown driver `{other}` (expected `x` or `plus`)"
            ))),
        }
    }
}

/// Period of the energy landscape in each `gamma` (integer spectrum).
pub const GAMMA_PERIOD: f64 = 2.0 * PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl ParamVector {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::invalid(format!(
                "{} gammas but {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        Ok(ParamVector { gammas, betas })
    }

    pub fn empty() -> Self {
        ParamVector {
            gammas: Vec::new(),
            betas: Vec::new(),
        }
    }

    /// Splits a flat `[gammas.., betas..]` vector of even length.
    pub fn from_flat(x: &[f64]) -> Result<Self> {
        if !x.len().is_multiple_of(2) {
            return Err(Error::invalid(
                "flat parameter vector must have even length",
            ));
        }
        let (g, b) = x.split_at(x.len() / 2);
        Ok(ParamVector {
            gammas: g.to_vec(),
            betas: b.to_vec(),
        })
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn layers(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.gammas.iter().copied().zip(self.betas.iter().copied())
    }

    /// Appends zero-angle layers up to depth `p`; the circuit is unchanged.
    pub fn padded_to(&self, p: usize) -> Self {
        let mut out = self.clone();
        out.gammas.resize(p.max(self.depth()), 0.0);
        out.betas.resize(p.max(self.depth()), 0.0);
        out
    }

    /// Linear interpolation of the angle schedule onto `p` layers.
    pub fn interpolated_to(&self, p: usize) -> Self {
        ParamVector {
            gammas: interpolate_schedule(&self.gammas, p),
            betas: interpolate_schedule(&self.betas, p),
        }
    }
}

fn interpolate_schedule(values: &[f64], p: usize) -> Vec<f64> {
    match (values.len(), p) {
        (_, 0) => Vec::new(),
        (0, _) => vec![0.0; p],
        (1, _) => vec![values[0]; p],
        (q, _) if p == 1 => vec![values[q / 2]],
        (q, _) => (0..p)
            .map(|i| {
                let t = i as f64 * (q - 1) as f64 / (p - 1) as f64;
                let lo = t.floor() as usize;
                let hi = (lo + 1).min(q - 1);
                let w = t - lo as f64;
                values[lo] * (1.0 - w) + values[hi] * w
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; they must form a unit vector of length `2^n`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::invalid(format!(
                "length {dim} is not a power of two"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "statevector",
                n,
                limit: MAX_QUBITS,
            });
        }
        let s = StateVector { n, amps };
        if (s.norm_sqr() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid(format!(
                "state is not normalized (|psi|^2 = {})",
                s.norm_sqr()
            )));
        }
        Ok(s)
    }

    /// Computational basis state `|z>`.
    pub fn basis(n: usize, z: usize) -> Result<Self> {
        check_qubits(n)?;
        if z >= 1 << n {
            return Err(Error::invalid(format!("basis index {z} outside 2^{n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[z] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn reset_plus(&mut self) {
        let a = Complex64::new((self.dim() as f64).sqrt().recip(), 0.0);
        self.amps.iter_mut().for_each(|x| *x = a);
    }

    /// `psi_z <- exp(-i gamma E_z) psi_z`.
    pub fn apply_phase(&mut self, diag: &DiagonalObjective, gamma: f64) -> Result<()> {
        diag.check_dim(self)?;
        let mut table = Vec::new();
        phase_kernel(&mut self.amps, diag, gamma, &mut table);
        Ok(())
    }

    /// `psi <- exp(-i beta H_x) psi`.
    pub fn apply_driver(&mut self, kind: DriverKind, beta: f64) {
        match kind {
            DriverKind::TransverseField => transverse_kernel(&mut self.amps, self.n, beta),
            DriverKind::PlusProjector => projector_kernel(&mut self.amps, beta),
        }
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("need at least one qubit"));
    }
    if n > MAX_QUBITS {
        return Err(Error::ResourceLimit {
            what: "statevector",
            n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// `|+>^{⊗n}`.
pub fn plus_state(n: usize) -> Result<StateVector> {
    check_qubits(n)?;
    let mut s = StateVector {
        n,
        amps: vec![Complex64::new(0.0, 0.0); 1 << n],
    };
    s.reset_plus();
    Ok(s)
}

fn phase_kernel(
    amps: &mut [Complex64],
    diag: &DiagonalObjective,
    gamma: f64,
    table: &mut Vec<Complex64>,
) {
    // Energies are small integers, so exp(-i gamma E) comes from a lookup.
    table.clear();
    table.extend((0..=diag.max_energy()).map(|e| Complex64::from_polar(1.0, -gamma * e as f64)));
    for (a, &e) in amps.iter_mut().zip(diag.energies()) {
        *a *= table[e as usize];
    }
}

fn transverse_kernel(amps: &mut [Complex64], n: usize, beta: f64) {
    let (s, c) = beta.sin_cos();
    let dim = amps.len();
    for q in 0..n {
        let stride = 1usize << q;
        for block in (0..dim).step_by(stride << 1) {
            for i in block..block + stride {
                let a = amps[i];
                let b = amps[i + stride];
                // [[c, -i s], [-i s, c]]
                amps[i] = Complex64::new(c * a.re + s * b.im, c * a.im - s * b.re);
                amps[i + stride] = Complex64::new(c * b.re + s * a.im, c * b.im - s * a.re);
            }
        }
    }
}

fn projector_kernel(amps: &mut [Complex64], beta: f64) {
    let dim = amps.len() as f64;
    let sum: Complex64 = amps.iter().sum();
    // (e^{-i beta} - 1) <+|psi> / sqrt(N), with <+|psi> = sum / sqrt(N)
    let shift = (Complex64::from_polar(1.0, -beta) - 1.0) * sum / dim;
    amps.iter_mut().for_each(|a| *a += shift);
}

/// `prod_i U(gamma_i, beta_i) |+>^n`.
pub fn ansatz(
    diag: &DiagonalObjective,
    kind: DriverKind,
    params: &ParamVector,
) -> Result<StateVector> {
    let mut eval = AnsatzEvaluator::new(diag, kind)?;
    eval.prepare(params.gammas(), params.betas());
    Ok(eval.state().clone())
}

/// Reusable buffer for repeated ansatz evaluation against one objective.
#[derive(Debug, Clone)]
pub struct AnsatzEvaluator<'a> {
    diag: &'a DiagonalObjective,
    kind: DriverKind,
    state: StateVector,
    table: Vec<Complex64>,
}

impl<'a> AnsatzEvaluator<'a> {
    pub fn new(diag: &'a DiagonalObjective, kind: DriverKind) -> Result<Self> {
        Ok(AnsatzEvaluator {
            diag,
            kind,
            state: plus_state(diag.num_qubits().max(1))?,
            table: Vec::with_capacity(diag.max_energy() as usize + 1),
        })
    }

    pub fn kind(&self) -> DriverKind {
        self.kind
    }

    pub fn objective(&self) -> &'a DiagonalObjective {
        self.diag
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn prepare(&mut self, gammas: &[f64], betas: &[f64]) -> &StateVector {
        debug_assert_eq!(gammas.len(), betas.len());
        self.state.reset_plus();
        let n = self.state.n;
        for (&g, &b) in gammas.iter().zip(betas) {
            phase_kernel(&mut self.state.amps, self.diag, g, &mut self.table);
            match self.kind {
                DriverKind::TransverseField => transverse_kernel(&mut self.state.amps, n, b),
                DriverKind::PlusProjector => projector_kernel(&mut self.state.amps, b),
            }
        }
        &self.state
    }

    /// Energy at a flat `[gammas.., betas..]` point.
    pub fn energy_flat(&mut self, x: &[f64]) -> f64 {
        let (g, b) = x.split_at(x.len() / 2);
        self.prepare(g, b);
        self.diag.expectation_unchecked(&self.state.amps)
    }

    pub fn energy(&mut self, params: &ParamVector) -> f64 {
        self.prepare(params.gammas(), params.betas());
        self.diag.expectation_unchecked(&self.state.amps)
    }

    pub fn overlap(&mut self, params: &ParamVector) -> f64 {
        self.prepare(params.gammas(), params.betas());
        self.diag.overlap_unchecked(&self.state.amps)
    }
}
