use std::fs;
use std::path::{Path, PathBuf};

use super::svg::{Chart, Point, Series};
use super::{aggregate, GroverScaling, PStarRow, SweepRecord, ALPHA_CRITICAL_2SAT};
use crate::error::Result;
use crate::simulator::DriverKind;

fn write_chart(dir: &Path, name: &str, chart: &Chart) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, chart.render())?;
    Ok(path)
}

fn groups<T, F>(items: &[T], key: F) -> Vec<(usize, usize, DriverKind)>
where
    F: Fn(&T) -> (usize, usize, DriverKind),
{
    let mut keys: Vec<(usize, usize, DriverKind)> = Vec::new();
    for it in items {
        let k = key(it);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys
}

fn reference_lines(k: usize) -> Vec<(f64, String)> {
    if k == 2 {
        vec![(ALPHA_CRITICAL_2SAT, "alpha_c = 1".into())]
    } else {
        Vec::new()
    }
}

/// Mean deficit vs density, one series per depth with standard-error bars;
/// one file per `(n, k, driver)`.
pub fn emit_density_figures(records: &[SweepRecord], dir: &Path) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        log::warn!("no sweep records; nothing to render");
        return Ok(Vec::new());
    }
    let aggs = aggregate(records);
    let mut written = Vec::new();
    for (n, k, driver) in groups(&aggs, |a| (a.n, a.k, a.driver)) {
        let mine: Vec<_> = aggs
            .iter()
            .filter(|a| a.n == n && a.k == k && a.driver == driver)
            .collect();
        let mut depths: Vec<usize> = mine.iter().map(|a| a.p).collect();
        depths.sort_unstable();
        depths.dedup();
        let series = depths
            .iter()
            .map(|&p| {
                let mut points: Vec<Point> = mine
                    .iter()
                    .filter(|a| a.p == p)
                    .map(|a| Point {
                        err: Some(a.sem_deficit),
                        ..Point::new(a.alpha_target, a.mean_deficit)
                    })
                    .collect();
                points.sort_by(|a, b| a.x.total_cmp(&b.x));
                Series {
                    label: format!("p = {p}"),
                    points,
                }
            })
            .collect();
        let chart = Chart {
            title: format!("MAX-{k}-SAT, n = {n}, driver {driver}"),
            x_label: "clause density alpha".into(),
            y_label: "mean deficit f".into(),
            series,
            vlines: reference_lines(k),
            log_y: false,
        };
        written.push(write_chart(
            dir,
            &format!("deficit_n{n}_k{k}_{driver}.svg"),
            &chart,
        )?);
    }
    Ok(written)
}

/// Ensemble critical depth vs density; censored scans are drawn hollow at
/// `p_max + 1`.
pub fn emit_pstar_figures(rows: &[PStarRow], dir: &Path) -> Result<Vec<PathBuf>> {
    if rows.is_empty() {
        log::warn!("no critical-depth rows; nothing to render");
        return Ok(Vec::new());
    }
    let mut written = Vec::new();
    for (n, k, driver) in groups(rows, |r| (r.n, r.k, r.driver)) {
        let mut points: Vec<Point> = rows
            .iter()
            .filter(|r| r.n == n && r.k == k && r.driver == driver)
            .map(|r| Point {
                censored: r.p_star.is_none(),
                ..Point::new(r.alpha_target, r.censored_p_star() as f64)
            })
            .collect();
        points.sort_by(|a, b| a.x.total_cmp(&b.x));
        let chart = Chart {
            title: format!("critical depth, MAX-{k}-SAT, n = {n}, driver {driver}"),
            x_label: "clause density alpha".into(),
            y_label: "p*".into(),
            series: vec![Series {
                label: "p*".into(),
                points,
            }],
            vlines: reference_lines(k),
            log_y: false,
        };
        written.push(write_chart(
            dir,
            &format!("pstar_n{n}_k{k}_{driver}.svg"),
            &chart,
        )?);
    }
    Ok(written)
}

/// Energy-vs-depth traces and `p*` vs `n` for the variational Grover model.
pub fn emit_grover_figures(scaling: &GroverScaling, dir: &Path) -> Result<Vec<PathBuf>> {
    if scaling.rows.is_empty() {
        log::warn!("no grover rows; nothing to render");
        return Ok(Vec::new());
    }
    let traces = Chart {
        title: "variational Grover: optimized energy vs depth".into(),
        x_label: "depth p".into(),
        y_label: "energy 1 - |B_p|^2".into(),
        series: scaling
            .rows
            .iter()
            .map(|r| Series {
                label: format!("n = {}", r.n),
                points: r
                    .energies
                    .iter()
                    .enumerate()
                    .map(|(p, &e)| Point::new(p as f64, e.max(1e-12)))
                    .collect(),
            })
            .collect(),
        log_y: true,
        ..Chart::default()
    };
    let pstar = Chart {
        title: "variational Grover: critical depth".into(),
        x_label: "n".into(),
        y_label: "p*".into(),
        series: vec![Series {
            label: "p*".into(),
            points: scaling
                .rows
                .iter()
                .map(|r| Point {
                    censored: r.p_star.is_none(),
                    ..Point::new(r.n as f64, r.p_star.unwrap_or(scaling.p_max + 1) as f64)
                })
                .collect(),
        }],
        ..Chart::default()
    };
    Ok(vec![
        write_chart(dir, "grover_energy.svg", &traces)?,
        write_chart(dir, "grover_pstar.svg", &pstar)?,
    ])
}
