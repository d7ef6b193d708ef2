//! Random k-SAT instances and the brute-force MAX-SAT oracle.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

pub use crate::dimacs::{parse_dimacs, write_dimacs};

/// Default enumeration bound for [`brute_force_min_violations`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

/// A variable (1-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    variable: u32,
    negated: bool,
}

impl Literal {
    pub fn new(variable: u32, negated: bool) -> Result<Self> {
        if variable == 0 {
            return Err(Error::invalid("literal variables are 1-based"));
        }
        Ok(Literal { variable, negated })
    }

    pub fn positive(variable: u32) -> Result<Self> {
        Literal::new(variable, false)
    }

    pub fn negative(variable: u32) -> Result<Self> {
        Literal::new(variable, true)
    }

    pub fn variable(self) -> u32 {
        self.variable
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// Bit of this literal's variable in a basis index.
    pub fn bit(self) -> usize {
        1usize << (self.variable - 1)
    }

    /// Truth value under the assignment encoded by basis index `z`.
    pub fn eval(self, z: usize) -> bool {
        (z & self.bit() != 0) != self.negated
    }

    /// DIMACS integer: `v` or `-v`.
    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.variable as i64)
        } else {
            self.variable as i64
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.variable)
        } else {
            write!(f, "x{}", self.variable)
        }
    }
}

/// A disjunction of literals over pairwise-distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::invalid("empty clause"));
        }
        let mut seen = HashSet::with_capacity(literals.len());
        for lit in &literals {
            if !seen.insert(lit.variable) {
                return Err(Error::invalid(format!(
                    "variable {} repeated within a clause",
                    lit.variable
                )));
            }
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn max_variable(&self) -> u32 {
        self.literals.iter().map(|l| l.variable).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, z: usize) -> bool {
        self.literals.iter().any(|l| l.eval(z))
    }

    /// `(mask, pattern)` such that the clause is violated exactly when
    /// `z & mask == pattern`.
    pub fn violation_pattern(&self) -> (usize, usize) {
        self.literals.iter().fold((0, 0), |(mask, pat), l| {
            (mask | l.bit(), if l.negated { pat | l.bit() } else { pat })
        })
    }

    fn canonical(&self) -> Vec<Literal> {
        let mut lits = self.literals.clone();
        lits.sort();
        lits
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// Exact clause density `m / n`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Density {
    pub clauses: usize,
    pub variables: usize,
}

impl Density {
    pub fn value(self) -> f64 {
        self.clauses as f64 / self.variables as f64
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.clauses as u128 * other.variables as u128
            == other.clauses as u128 * self.variables as u128
    }
}

impl Eq for Density {}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.clauses, self.variables)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    n: usize,
    k: usize,
    clauses: Vec<Clause>,
    seed: Option<u64>,
}

impl SatInstance {
    /// Builds an instance from explicit clauses. `k` is taken from the first
    /// clause (or 0 when there are none) and every clause must share it.
    pub fn from_clauses(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("an instance needs at least one variable"));
        }
        let k = clauses.first().map_or(0, Clause::width);
        for (i, c) in clauses.iter().enumerate() {
            if c.width() != k {
                return Err(Error::invalid(format!(
                    "clause {} has width {}, expected {k}",
                    i + 1,
                    c.width()
                )));
            }
            if c.max_variable() as usize > n {
                return Err(Error::invalid(format!(
                    "clause {} references variable {} > n = {n}",
                    i + 1,
                    c.max_variable()
                )));
            }
        }
        Ok(SatInstance {
            n,
            k,
            clauses,
            seed: None,
        })
    }

    /// Same as [`from_clauses`](Self::from_clauses) but with a declared
    /// width, which matters for empty instances.
    pub fn with_width(n: usize, k: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut inst = Self::from_clauses(n, clauses)?;
        if !inst.clauses.is_empty() && inst.k != k {
            return Err(Error::invalid(format!(
                "clauses have width {}, declared {k}",
                inst.k
            )));
        }
        inst.k = k;
        Ok(inst)
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clause_width(&self) -> usize {
        self.k
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn density(&self) -> Density {
        Density {
            clauses: self.clauses.len(),
            variables: self.n,
        }
    }

    /// Number of clauses violated by the assignment `z`.
    pub fn violations(&self, z: usize) -> u32 {
        self.clauses
            .iter()
            .filter(|c| !c.is_satisfied_by(z))
            .count() as u32
    }

    /// Concatenates the clause lists of two instances over the same variables.
    pub fn concat(&self, other: &SatInstance) -> Result<SatInstance> {
        if self.n != other.n {
            return Err(Error::invalid("instances have different variable counts"));
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        SatInstance::from_clauses(self.n, clauses)
    }
}

/// Clause count realizing a target density: `round(alpha * n)`.
pub fn clauses_for_density(n: usize, alpha: f64) -> usize {
    (alpha * n as f64).round().max(0.0) as usize
}

fn check_generation_args(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(2..=3).contains(&k) {
        return Err(Error::invalid(format!("k must be 2 or 3, got {k}")));
    }
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

fn random_clause<R: Rng>(rng: &mut R, n: usize, k: usize) -> Clause {
    let mut literals: Vec<Literal> = Vec::with_capacity(k);
    while literals.len() < k {
        let v = rng.gen_range(1..=n as u32);
        if literals.iter().any(|l| l.variable == v) {
            continue;
        }
        let negated: bool = rng.gen();
        literals.push(Literal {
            variable: v,
            negated,
        });
    }
    Clause { literals }
}

/// Standard random k-SAT: `m` clauses drawn independently, each over `k`
/// distinct variables with uniform polarities. Duplicate clauses may occur.
pub fn generate_instance(n: usize, m: usize, k: usize, seed: u64) -> Result<SatInstance> {
    check_generation_args(n, k)?;
    let mut rng = rng_from_seed(seed);
    let clauses = (0..m).map(|_| random_clause(&mut rng, n, k)).collect();
    Ok(SatInstance {
        n,
        k,
        clauses,
        seed: Some(seed),
    })
}

/// Like [`generate_instance`] but rejects clauses already present (as a set of
/// literals), so the instance has no duplicate clauses.
pub fn generate_unique_instance(n: usize, m: usize, k: usize, seed: u64) -> Result<SatInstance> {
    check_generation_args(n, k)?;
    let available = binomial(n, k).saturating_mul(1 << k);
    if m > available {
        return Err(Error::invalid(format!(
            "only {available} distinct {k}-clauses exist over {n} variables, {m} requested"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let c = random_clause(&mut rng, n, k);
        if seen.insert(c.canonical()) {
            clauses.push(c);
        }
    }
    Ok(SatInstance {
        n,
        k,
        clauses,
        seed: Some(seed),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub min_violations: u32,
    /// Basis indices (see crate docs for the bit convention), ascending.
    pub minimizers: Vec<usize>,
}

/// Exhaustive MAX-SAT with the default enumeration bound.
pub fn brute_force_min_violations(inst: &SatInstance) -> Result<BruteForceResult> {
    brute_force_min_violations_bounded(inst, BRUTE_FORCE_MAX_VARS)
}

pub fn brute_force_min_violations_bounded(
    inst: &SatInstance,
    max_vars: usize,
) -> Result<BruteForceResult> {
    if inst.n > max_vars {
        return Err(Error::ResourceLimit {
            what: "brute-force enumeration",
            n: inst.n,
            limit: max_vars,
        });
    }
    let mut best = u32::MAX;
    let mut minimizers = Vec::new();
    for z in 0..1usize << inst.n {
        let v = inst.violations(z);
        if v < best {
            best = v;
            minimizers.clear();
        }
        if v == best {
            minimizers.push(z);
        }
    }
    Ok(BruteForceResult {
        min_violations: best,
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: &[i64]) -> Clause {
        Clause::new(
            lits.iter()
                .map(|&l| Literal::new(l.unsigned_abs() as u32, l < 0).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn generated_instance_has_requested_shape() {
        let inst = generate_instance(6, 12, 3, 7).unwrap();
        assert_eq!(inst.num_clauses(), 12);
        assert_eq!(inst.density().value(), 2.0);
        for c in inst.clauses() {
            assert_eq!(c.width(), 3);
            let mut vars: Vec<_> = c.literals().iter().map(|l| l.variable()).collect();
            vars.sort();
            vars.dedup();
            assert_eq!(vars.len(), 3);
            assert!(vars.iter().all(|&v| (1..=6).contains(&v)));
        }
        assert_eq!(inst, generate_instance(6, 12, 3, 7).unwrap());
        assert_ne!(inst, generate_instance(6, 12, 3, 8).unwrap());
    }

    #[test]
    fn empty_instance_is_satisfied_everywhere() {
        let inst = generate_instance(6, 0, 2, 1).unwrap();
        assert_eq!(inst.density().value(), 0.0);
        let bf = brute_force_min_violations(&inst).unwrap();
        assert_eq!(bf.min_violations, 0);
        assert_eq!(bf.minimizers.len(), 64);
    }

    #[test]
    fn full_width_clause_excludes_one_assignment() {
        let inst = generate_instance(3, 1, 3, 42).unwrap();
        let violating = (0..8).filter(|&z| inst.violations(z) == 1).count();
        assert_eq!(violating, 1);
    }

    #[test]
    fn k_larger_than_n_is_rejected() {
        assert!(matches!(
            generate_instance(2, 3, 3, 0),
            Err(Error::InvalidArguments(_))
        ));
        assert!(generate_instance(0, 3, 2, 0).is_err());
        assert!(generate_instance(5, 3, 4, 0).is_err());
    }

    #[test]
    fn density_is_exact() {
        let d = |n, m| generate_instance(n, m, 2, 0).unwrap().density();
        assert_eq!(d(6, 6).value(), 1.0);
        assert_eq!(d(6, 27).value(), 4.5);
        assert_eq!(d(10, 1).value(), 0.1);
        assert_eq!(d(6, 3), d(10, 5));
        assert_ne!(d(6, 3), d(10, 6));
    }

    #[test]
    fn clauses_for_density_rounds() {
        assert_eq!(clauses_for_density(6, 2.0), 12);
        assert_eq!(clauses_for_density(6, 0.25), 2);
        assert_eq!(clauses_for_density(6, 0.75), 5);
        assert_eq!(clauses_for_density(6, 0.0), 0);
    }

    #[test]
    fn brute_force_single_clause() {
        let inst = SatInstance::from_clauses(2, vec![clause(&[1, 2])]).unwrap();
        let bf = brute_force_min_violations(&inst).unwrap();
        assert_eq!(bf.min_violations, 0);
        assert_eq!(bf.minimizers, vec![0b01, 0b10, 0b11]);
    }

    #[test]
    fn brute_force_contradictory_units() {
        let inst = SatInstance::from_clauses(1, vec![clause(&[1]), clause(&[-1])]).unwrap();
        let bf = brute_force_min_violations(&inst).unwrap();
        assert_eq!(bf.min_violations, 1);
        assert_eq!(bf.minimizers, vec![0, 1]);
    }

    #[test]
    fn brute_force_respects_bound() {
        let inst = generate_instance(8, 4, 2, 0).unwrap();
        let err = brute_force_min_violations_bounded(&inst, 6).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn clause_rejects_repeated_variable() {
        assert!(Clause::new(vec![
            Literal::positive(1).unwrap(),
            Literal::negative(1).unwrap()
        ])
        .is_err());
        assert!(Literal::new(0, false).is_err());
    }

    #[test]
    fn violation_pattern_matches_literal_evaluation() {
        let c = clause(&[1, -3, 4]);
        let (mask, pat) = c.violation_pattern();
        for z in 0..16 {
            assert_eq!(z & mask == pat, !c.is_satisfied_by(z));
        }
    }

    #[test]
    fn unique_mode_has_no_duplicates() {
        let inst = generate_unique_instance(4, 24, 2, 3).unwrap();
        let set: HashSet<_> = inst.clauses().iter().map(Clause::canonical).collect();
        assert_eq!(set.len(), 24);
        // C(4,2) * 4 = 24 is the whole clause space
        assert!(generate_unique_instance(4, 25, 2, 3).is_err());
    }

    #[test]
    fn from_clauses_checks_widths_and_range() {
        assert!(SatInstance::from_clauses(2, vec![clause(&[1, 2]), clause(&[1])]).is_err());
        assert!(SatInstance::from_clauses(2, vec![clause(&[1, 3])]).is_err());
    }
}
