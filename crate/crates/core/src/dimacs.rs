//! DIMACS CNF reading and writing.
//!
//! The writer emits `p cnf n m`, one clause per line, negated literals as
//! negative integers and a `0` terminator. Generated instances additionally
//! get a leading comment `c qaoa-reach k=<k> seed=<seed>` which the parser
//! reads back so that round trips preserve provenance.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instances::{Clause, Literal, SatInstance};

const PROVENANCE_TAG: &str = "qaoa-reach";

pub fn write_dimacs(inst: &SatInstance) -> String {
    let mut out = String::new();
    if let Some(seed) = inst.seed() {
        let _ = writeln!(
            out,
            "c {PROVENANCE_TAG} k={} seed={seed}",
            inst.clause_width()
        );
    }
    let _ = writeln!(out, "p cnf {} {}", inst.num_vars(), inst.num_clauses());
    for clause in inst.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

fn parse_provenance(comment: &str) -> (Option<usize>, Option<u64>) {
    let mut words = comment.split_whitespace();
    if words.next() != Some(PROVENANCE_TAG) {
        return (None, None);
    }
    let (mut k, mut seed) = (None, None);
    for w in words {
        if let Some(v) = w.strip_prefix("k=") {
            k = v.parse().ok();
        } else if let Some(v) = w.strip_prefix("seed=") {
            seed = v.parse().ok();
        }
    }
    (k, seed)
}

pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut declared_k = None;
    let mut seed = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut width: Option<usize> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let (k, s) = parse_provenance(rest);
                declared_k = declared_k.or(k);
                seed = seed.or(s);
                continue;
            }
        }
        if line.starts_with('%') {
            // SATLIB files end with a "%" line followed by a stray 0.
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse(
                    line_no,
                    "expected header `p cnf <vars> <clauses>`",
                ));
            }
            let n = fields[2].parse::<usize>().map_err(|_| {
                Error::parse(line_no, format!("bad variable count `{}`", fields[2]))
            })?;
            let m = fields[3]
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad clause count `{}`", fields[3])))?;
            if n == 0 {
                return Err(Error::parse(line_no, "variable count must be positive"));
            }
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(line_no, "clause before `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
            if value == 0 {
                let w = current.len();
                if w == 0 {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                match width {
                    None => width = Some(w),
                    Some(k) if k != w => {
                        return Err(Error::parse(
                            line_no,
                            format!("clause has {w} literals, earlier clauses have {k}"),
                        ))
                    }
                    _ => {}
                }
                let clause = Clause::new(std::mem::take(&mut current))
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                clauses.push(clause);
                continue;
            }
            let var = value.unsigned_abs();
            if var as usize > n {
                return Err(Error::parse(
                    line_no,
                    format!("literal {value} out of range for {n} variables"),
                ));
            }
            current.push(Literal::new(var as u32, value < 0).expect("nonzero variable"));
        }
    }

    let Some((n, m)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(
            last_line,
            "last clause is missing its 0 terminator",
        ));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    if let (Some(k), Some(w)) = (declared_k, width) {
        if k != w {
            return Err(Error::parse(
                last_line,
                format!("provenance comment declares k={k}, clauses have width {w}"),
            ));
        }
    }
    let k = width.or(declared_k).unwrap_or(0);
    let inst = SatInstance::with_width(n, k, clauses)?;
    Ok(match seed {
        Some(s) => inst.with_seed(s),
        None => inst,
    })
}
