//! CSV tables and the JSON run manifest.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::sweep::Aggregate;
use super::{GroverScaling, PStarRow, SweepRecord};
use crate::error::{Error, Result};
use crate::rng::RNG_IDENTITY;

pub const RECORD_HEADER: &str =
    "n,k,driver,p,alpha_target,m,instance_seed,energy,ground_energy,deficit,overlap,converged,evals";
pub const AGGREGATE_HEADER: &str =
    "n,k,driver,p,alpha_target,mean_deficit,sem_deficit,mean_overlap,count";
pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::invalid(format!("csv: {other:?}")),
    }
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_records_csv<W: Write>(out: W, records: &[SweepRecord]) -> Result<()> {
    write_rows(out, records, &RECORD_HEADER.split(',').collect::<Vec<_>>())
}

pub fn write_aggregates_csv<W: Write>(out: W, aggregates: &[Aggregate]) -> Result<()> {
    write_rows(
        out,
        aggregates,
        &AGGREGATE_HEADER.split(',').collect::<Vec<_>>(),
    )
}

pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.join(",") != RECORD_HEADER {
        return Err(Error::parse(
            1,
            format!("expected header `{RECORD_HEADER}`"),
        ));
    }
    r.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse(i + 2, e.to_string())))
        .collect()
}

#[derive(Serialize)]
struct PStarCsvRow {
    n: usize,
    k: usize,
    driver: String,
    alpha_target: f64,
    m: usize,
    p_star: Option<usize>,
    reached: bool,
    p_max: usize,
}

pub fn write_pstar_csv<W: Write>(out: W, rows: &[PStarRow]) -> Result<()> {
    let flat: Vec<PStarCsvRow> = rows
        .iter()
        .map(|r| PStarCsvRow {
            n: r.n,
            k: r.k,
            driver: r.driver.to_string(),
            alpha_target: r.alpha_target,
            m: r.m,
            p_star: r.p_star,
            reached: r.p_star.is_some(),
            p_max: r.p_max,
        })
        .collect();
    write_rows(
        out,
        &flat,
        &[
            "n",
            "k",
            "driver",
            "alpha_target",
            "m",
            "p_star",
            "reached",
            "p_max",
        ],
    )
}

pub fn write_pstar_trace_csv<W: Write>(out: W, rows: &[PStarRow]) -> Result<()> {
    let flat: Vec<(usize, usize, String, f64, usize, f64, f64)> = rows
        .iter()
        .flat_map(|r| {
            r.mean_eta
                .iter()
                .zip(&r.sem_eta)
                .enumerate()
                .map(move |(p, (&m, &s))| (r.n, r.k, r.driver.to_string(), r.alpha_target, p, m, s))
        })
        .collect();
    write_rows(
        out,
        &flat,
        &[
            "n",
            "k",
            "driver",
            "alpha_target",
            "p",
            "mean_overlap",
            "sem_overlap",
        ],
    )
}

pub fn write_grover_csv<W: Write>(out: W, scaling: &GroverScaling) -> Result<()> {
    let flat: Vec<(usize, u64, Option<usize>, bool)> = scaling
        .rows
        .iter()
        .map(|r| (r.n, 1u64 << r.n, r.p_star, r.p_star.is_some()))
        .collect();
    write_rows(out, &flat, &["n", "search_size", "p_star", "reached"])
}

pub fn write_grover_trace_csv<W: Write>(out: W, scaling: &GroverScaling) -> Result<()> {
    let flat: Vec<(usize, usize, f64)> = scaling
        .rows
        .iter()
        .flat_map(|r| {
            r.energies
                .iter()
                .enumerate()
                .map(move |(p, &e)| (r.n, p, e))
        })
        .collect();
    write_rows(out, &flat, &["n", "p", "energy"])
}

/// Everything needed to rerun an experiment bit-for-bit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub code_version: String,
    pub command: String,
    pub rng: String,
    pub spec: serde_json::Value,
    pub notes: Vec<String>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new<S: Serialize>(command: &str, spec: &S) -> Result<Self> {
        Ok(RunManifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            rng: RNG_IDENTITY.to_string(),
            spec: serde_json::to_value(spec)?,
            notes: vec![
                "energies are exact statevector expectations".into(),
                "clause count m = round(alpha * n); rows report the realized m".into(),
                "critical depth: angles minimize the energy, the ground-space overlap is measured at that optimum".into(),
                "deficits are best-found values over restarts, i.e. upper bounds on the true deficit".into(),
            ],
            outputs: Vec::new(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::DriverKind;

    fn record() -> SweepRecord {
        SweepRecord {
            n: 6,
            k: 3,
            driver: DriverKind::PlusProjector,
            p: 2,
            alpha_target: 0.25,
            m: 2,
            instance_seed: 99,
            energy: 0.125,
            ground_energy: 0,
            deficit: 0.125,
            overlap: 0.5,
            converged: true,
            evals: 42,
        }
    }

    #[test]
    fn record_csv_layout() {
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &[record()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), RECORD_HEADER);
        assert_eq!(
            lines.next().unwrap(),
            "6,3,plus,2,0.25,2,99,0.125,0,0.125,0.5,true,42"
        );
        let back = read_records_csv(text.as_bytes()).unwrap();
        assert_eq!(back, vec![record()]);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_records_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn manifest_carries_rng_identity() {
        let m = RunManifest::new("sweep", &serde_json::json!({"n": 6})).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.to_json().unwrap()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!(v["rng"].as_str().unwrap().contains("ChaCha8"));
    }
}
