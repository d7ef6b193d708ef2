//! Exact statevector QAOA for random MAX-2-SAT / MAX-3-SAT.
//!
//! The crate measures *reachability deficits*: the gap between the lowest
//! energy a depth-`p` QAOA circuit can prepare and the true minimum number of
//! violated clauses. It contains
//!
//! - [`instances`]: random k-SAT generation, DIMACS I/O and a brute-force
//!   MAX-SAT oracle,
//! - [`objective`]: the violated-clause diagonal of the problem Hamiltonian,
//! - [`simulator`]: the QAOA ansatz under the transverse-field or the
//!   `|+><+|` projector driver,
//! - [`optimizer`]: multi-start Nelder-Mead over the `2p` angles,
//! - [`grover`]: the two-amplitude variational Grover model,
//! - [`experiments`]: seeded sweeps producing CSV, JSON manifests and SVG.
//!
//! Bit convention used everywhere: basis index `z` stores variable `i` in bit
//! `i - 1` and a set bit means TRUE.

pub mod dimacs;
pub mod error;
pub mod experiments;
pub mod grover;
pub mod instances;
pub mod objective;
pub mod optimizer;
pub mod rng;
pub mod simulator;

pub use error::{Error, Result};
pub use grover::TwoLevelState;
pub use instances::{Clause, Density, Literal, SatInstance};
pub use objective::DiagonalObjective;
pub use optimizer::{OptimConfig, OptimResult};
pub use simulator::{DriverKind, ParamVector, StateVector};

/// Largest qubit count for which a dense amplitude buffer is allocated.
pub const MAX_QUBITS: usize = 24;
