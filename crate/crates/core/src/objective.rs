//! The problem Hamiltonian as an integer diagonal.
//!
//! Each clause is a rank-one projector onto its single violating local
//! assignment, so the Hamiltonian is diagonal in the computational basis and
//! `energies[z]` is simply the number of clauses violated by `z`. Nothing here
//! ever materializes a `2^n x 2^n` matrix.

use crate::error::{Error, Result};
use crate::instances::SatInstance;
use crate::simulator::StateVector;
use crate::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalObjective {
    n: usize,
    energies: Vec<u32>,
    ground_energy: u32,
    ground_set: Vec<usize>,
    max_energy: u32,
}

impl DiagonalObjective {
    /// Wraps an arbitrary nonnegative integer diagonal of length `2^n`.
    pub fn from_energies(n: usize, energies: Vec<u32>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "diagonal objective",
                n,
                limit: MAX_QUBITS,
            });
        }
        if energies.len() != 1 << n {
            return Err(Error::invalid(format!(
                "diagonal has {} entries, expected 2^{n}",
                energies.len()
            )));
        }
        let ground_energy = *energies.iter().min().expect("nonempty diagonal");
        let max_energy = *energies.iter().max().expect("nonempty diagonal");
        let ground_set = energies
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e == ground_energy)
            .map(|(z, _)| z)
            .collect();
        Ok(DiagonalObjective {
            n,
            energies,
            ground_energy,
            ground_set,
            max_energy,
        })
    }

    /// Single marked state: energy 0 on `target`, 1 everywhere else.
    pub fn marked_state(n: usize, target: usize) -> Result<Self> {
        if target >= 1 << n.min(usize::BITS as usize - 1) {
            return Err(Error::invalid(format!(
                "target {target} outside 2^{n} states"
            )));
        }
        let mut energies = vec![1; 1 << n];
        energies[target] = 0;
        Self::from_energies(n, energies)
    }

    /// `|w><w|` as a diagonal: energy 1 on `target`, 0 elsewhere.
    pub fn indicator(n: usize, target: usize) -> Result<Self> {
        let marked = Self::marked_state(n, target)?;
        let energies = marked.energies.iter().map(|e| 1 - e).collect();
        Self::from_energies(n, energies)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[u32] {
        &self.energies
    }

    pub fn ground_energy(&self) -> u32 {
        self.ground_energy
    }

    pub fn ground_set(&self) -> &[usize] {
        &self.ground_set
    }

    /// Ground-state degeneracy `d`.
    pub fn degeneracy(&self) -> usize {
        self.ground_set.len()
    }

    pub fn max_energy(&self) -> u32 {
        self.max_energy
    }

    pub fn is_satisfiable(&self) -> bool {
        self.ground_energy == 0
    }

    /// `<psi| H |psi>`.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        self.check_dim(psi)?;
        Ok(self.expectation_unchecked(psi.amplitudes()))
    }

    pub(crate) fn expectation_unchecked(&self, amps: &[num_complex::Complex64]) -> f64 {
        amps.iter()
            .zip(&self.energies)
            .map(|(a, &e)| a.norm_sqr() * e as f64)
            .sum()
    }

    /// Probability mass on the ground space.
    pub fn overlap(&self, psi: &StateVector) -> Result<f64> {
        self.check_dim(psi)?;
        Ok(self.overlap_unchecked(psi.amplitudes()))
    }

    pub(crate) fn overlap_unchecked(&self, amps: &[num_complex::Complex64]) -> f64 {
        let eta: f64 = self.ground_set.iter().map(|&z| amps[z].norm_sqr()).sum();
        eta.clamp(0.0, 1.0)
    }

    pub(crate) fn check_dim(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.dim() {
            return Err(Error::invalid(format!(
                "state has dimension {}, objective has {}",
                psi.dim(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Embeds `inst` with the default qubit cap.
pub fn embed(inst: &SatInstance) -> Result<DiagonalObjective> {
    embed_bounded(inst, MAX_QUBITS)
}

pub fn embed_bounded(inst: &SatInstance, max_qubits: usize) -> Result<DiagonalObjective> {
    let n = inst.num_vars();
    if n > max_qubits.min(MAX_QUBITS) {
        return Err(Error::ResourceLimit {
            what: "objective embedding",
            n,
            limit: max_qubits.min(MAX_QUBITS),
        });
    }
    let full = (1usize << n) - 1;
    let mut energies = vec![0u32; 1 << n];
    for clause in inst.clauses() {
        // The projector of a clause covers the 2^(n-k) basis states that agree
        // with its violating pattern; walk every subset of the free bits.
        let (mask, pattern) = clause.violation_pattern();
        let free = full & !mask;
        let mut sub = free;
        loop {
            energies[pattern | sub] += 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    DiagonalObjective::from_energies(n, energies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        brute_force_min_violations, generate_instance, Clause, Literal, SatInstance,
    };

    fn lit(l: i64) -> Literal {
        Literal::new(l.unsigned_abs() as u32, l < 0).unwrap()
    }

    fn inst(n: usize, clauses: &[&[i64]]) -> SatInstance {
        SatInstance::from_clauses(
            n,
            clauses
                .iter()
                .map(|c| Clause::new(c.iter().map(|&l| lit(l)).collect()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_positive_clause_penalizes_all_false() {
        let d = embed(&inst(2, &[&[1, 2]])).unwrap();
        assert_eq!(d.energies(), &[1, 0, 0, 0]);
        assert_eq!(d.ground_energy(), 0);
        assert_eq!(d.ground_set(), &[1, 2, 3]);
    }

    #[test]
    fn contradictory_units() {
        let d = embed(&inst(1, &[&[1], &[-1]])).unwrap();
        assert_eq!(d.energies(), &[1, 1]);
        assert_eq!(d.ground_energy(), 1);
        assert_eq!(d.degeneracy(), 2);
        assert!(!d.is_satisfiable());
    }

    #[test]
    fn matches_brute_force_on_generated_instance() {
        let i = generate_instance(6, 30, 3, 123).unwrap();
        let d = embed(&i).unwrap();
        let bf = brute_force_min_violations(&i).unwrap();
        assert_eq!(d.ground_energy(), bf.min_violations);
        assert_eq!(d.ground_set(), bf.minimizers.as_slice());
    }

    #[test]
    fn each_clause_penalizes_two_to_the_n_minus_k_states() {
        let i = generate_instance(7, 1, 3, 5).unwrap();
        let d = embed(&i).unwrap();
        assert_eq!(d.energies().iter().sum::<u32>(), 1 << (7 - 3));
    }

    #[test]
    fn embedding_respects_cap() {
        let i = generate_instance(10, 3, 2, 0).unwrap();
        assert!(embed_bounded(&i, 8).unwrap_err().is_resource_limit());
    }

    #[test]
    fn marked_state_diagonal() {
        let d = DiagonalObjective::marked_state(3, 5).unwrap();
        assert_eq!(d.ground_set(), &[5]);
        assert_eq!(d.energies().iter().sum::<u32>(), 7);
        assert!(DiagonalObjective::marked_state(3, 8).is_err());
        let ind = DiagonalObjective::indicator(3, 5).unwrap();
        assert_eq!(ind.energies()[5], 1);
        assert_eq!(ind.energies().iter().sum::<u32>(), 1);
    }
}
