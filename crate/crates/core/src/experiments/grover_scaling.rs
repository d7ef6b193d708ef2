use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::grover_scan;
use crate::optimizer::OptimConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroverScalingRow {
    pub n: usize,
    pub p_star: Option<usize>,
    /// Optimized energy at `p = 0, 1, ...`.
    pub energies: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroverScaling {
    pub energy_tol: f64,
    pub p_max: usize,
    pub rows: Vec<GroverScalingRow>,
    /// Least-squares `c` in `p* ~ N^c` over the rows that reached the
    /// tolerance (needs at least two distinct `n`).
    pub exponent: Option<f64>,
}

/// Slope and intercept of the least-squares line through `(x, y)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Critical depth and convergence trace for each register size.
pub fn run_grover_scaling(
    n_list: &[usize],
    energy_tol: f64,
    p_max: usize,
    cfg: &OptimConfig,
) -> Result<GroverScaling> {
    if n_list.is_empty() {
        return Err(Error::invalid("need at least one register size"));
    }
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let scan = grover_scan(n, energy_tol, p_max, cfg)?;
            Ok(GroverScalingRow {
                n,
                p_star: scan.p_star,
                energies: scan.energies,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| match r.p_star {
            Some(p) if p > 0 => Some((r.n as f64 * std::f64::consts::LN_2, (p as f64).ln())),
            _ => None,
        })
        .collect();
    let exponent = fit_power_law(&points).map(|(slope, _)| slope);
    Ok(GroverScaling {
        energy_tol,
        p_max,
        rows,
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_exact_power_law() {
        let pts: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0]
            .iter()
            .map(|&x| (x.ln(), (3.0 * x.sqrt()).ln()))
            .collect();
        let (slope, icpt) = fit_power_law(&pts).unwrap();
        assert!((slope - 0.5).abs() < 1e-12);
        assert!((icpt - 3f64.ln()).abs() < 1e-12);
        assert!(fit_power_law(&pts[..1]).is_none());
        assert!(fit_power_law(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }

    #[test]
    fn single_qubit_search_needs_one_layer() {
        let cfg = OptimConfig::default().with_restarts(4);
        let s = run_grover_scaling(&[1], 1e-4, 5, &cfg).unwrap();
        assert_eq!(s.rows[0].p_star, Some(1));
        assert!(s.exponent.is_none());
        assert!(run_grover_scaling(&[], 1e-4, 5, &cfg).is_err());
    }
}
