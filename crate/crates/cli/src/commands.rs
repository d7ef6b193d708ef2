use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use log::info;
use qaoa_reach::experiments::{
    emit_density_figures, emit_grover_figures, emit_pstar_figures, parse_grid, read_records_csv,
    run_density_sweep, run_grover_scaling, run_pstar_scan, write_aggregates_csv, write_grover_csv,
    write_grover_trace_csv, write_pstar_csv, write_pstar_trace_csv, write_records_csv, RunManifest,
    SweepSpec,
};
use qaoa_reach::instances::{
    brute_force_min_violations, clauses_for_density, generate_instance, generate_unique_instance,
    parse_dimacs, write_dimacs,
};
use qaoa_reach::objective::embed;
use qaoa_reach::optimizer::minimize;
use qaoa_reach::{Error, OptimConfig, Result};
use serde::Serialize;

use crate::{EnsembleArgs, GenArgs, GroverArgs, PstarArgs, RenderArgs, SolveArgs, SweepArgs};

/// Version of the `solve --json` report layout.
const REPORT_SCHEMA_VERSION: u32 = 1;

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArguments(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

fn to_csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(buf)
}

pub fn gen(args: GenArgs) -> Result<()> {
    let m = match (args.m, args.alpha) {
        (Some(m), None) => m,
        (None, Some(alpha)) if alpha.is_finite() && alpha >= 0.0 => {
            clauses_for_density(args.n, alpha)
        }
        (None, Some(alpha)) => return Err(Error::InvalidArguments(format!("bad density {alpha}"))),
        _ => {
            return Err(Error::InvalidArguments(
                "give exactly one of --m and --alpha".into(),
            ))
        }
    };
    let inst = if args.unique_clauses {
        generate_unique_instance(args.n, m, args.k, args.seed)?
    } else {
        generate_instance(args.n, m, args.k, args.seed)?
    };
    let text = write_dimacs(&inst);
    let summary = format!(
        "n={} m={} k={} alpha={} seed={}",
        args.n,
        m,
        args.k,
        inst.density().value(),
        args.seed
    );
    match &args.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveReport {
    schema_version: u32,
    cnf: String,
    n: usize,
    m: usize,
    driver: String,
    p: usize,
    seed: u64,
    restarts: usize,
    energy: f64,
    ground_energy: u32,
    deficit: f64,
    overlap: f64,
    gammas: Vec<f64>,
    betas: Vec<f64>,
    evals: usize,
    converged: bool,
}

pub fn solve(args: SolveArgs) -> Result<()> {
    let inst = parse_dimacs(&read_input(&args.cnf)?)?;
    let diag = embed(&inst)?;
    let ground = brute_force_min_violations(&inst)?.min_violations;
    let cfg = OptimConfig::default()
        .with_restarts(args.restarts)
        .with_seed(args.seed);
    let result = minimize(&diag, args.driver, args.p, &cfg)?;
    let report = SolveReport {
        schema_version: REPORT_SCHEMA_VERSION,
        cnf: args.cnf.display().to_string(),
        n: inst.num_vars(),
        m: inst.num_clauses(),
        driver: args.driver.name().to_string(),
        p: args.p,
        seed: args.seed,
        restarts: args.restarts,
        energy: result.energy,
        ground_energy: ground,
        deficit: result.energy - f64::from(ground),
        overlap: result.overlap,
        gammas: result.best_params.gammas().to_vec(),
        betas: result.best_params.betas().to_vec(),
        evals: result.evals_used,
        converged: result.converged,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("instance       n={} m={}", report.n, report.m);
        println!("driver         {} p={}", report.driver, report.p);
        println!("energy         {:.10}", report.energy);
        println!("ground energy  {}", report.ground_energy);
        println!("deficit        {:.10}", report.deficit);
        println!("overlap        {:.10}", report.overlap);
        println!("gammas         {:?}", report.gammas);
        println!("betas          {:?}", report.betas);
        println!(
            "evaluations    {} (converged: {})",
            report.evals, report.converged
        );
    }
    Ok(())
}

fn ensemble_spec(args: &EnsembleArgs) -> Result<SweepSpec> {
    Ok(SweepSpec {
        n: args.n,
        k: args.k,
        driver: args.driver,
        alphas: parse_grid(&args.alphas)?,
        instances_per_point: args.instances,
        base_seed: args.seed,
        optimizer: OptimConfig::default()
            .with_restarts(args.restarts)
            .with_seed(args.seed),
        unique_clauses: args.unique_clauses,
        ..SweepSpec::default()
    })
}

struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        write_file(&path, bytes)?;
        self.written.push(path);
        Ok(())
    }

    fn finish(mut self, mut manifest: RunManifest, stem: &str) -> Result<()> {
        let name = format!("{stem}_manifest.json");
        self.written.push(self.dir.join(&name));
        manifest.outputs = self
            .written
            .iter()
            .map(|p| p.display().to_string())
            .collect();
        write_file(&self.dir.join(&name), manifest.to_json()?.as_bytes())?;
        for path in &self.written {
            println!("wrote {}", path.display());
        }
        Ok(())
    }
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    let spec = SweepSpec {
        depths: args.depths,
        ..ensemble_spec(&args.ensemble)?
    };
    info!(
        "density sweep: {} densities x {} instances",
        spec.alphas.len(),
        spec.instances_per_point
    );
    let result = run_density_sweep(&spec)?;
    let stem = format!("sweep_n{}_k{}_{}", spec.n, spec.k, spec.driver);
    let mut out = Outputs::new(&args.ensemble.out_dir)?;
    out.write(
        &format!("{stem}.csv"),
        &to_csv_bytes(|b| write_records_csv(b, &result.records))?,
    )?;
    out.write(
        &format!("{stem}_agg.csv"),
        &to_csv_bytes(|b| write_aggregates_csv(b, &result.aggregates))?,
    )?;
    if !args.ensemble.no_figures {
        let figs = emit_density_figures(&result.records, &out.dir)?;
        out.written.extend(figs);
    }
    out.finish(RunManifest::new("sweep", &spec)?, &stem)
}

pub fn pstar(args: PstarArgs) -> Result<()> {
    let spec = SweepSpec {
        eta_threshold: args.eta,
        p_max: args.p_max,
        ..ensemble_spec(&args.ensemble)?
    };
    let rows = run_pstar_scan(&spec)?;
    let stem = format!("pstar_n{}_k{}_{}", spec.n, spec.k, spec.driver);
    let mut out = Outputs::new(&args.ensemble.out_dir)?;
    out.write(
        &format!("{stem}.csv"),
        &to_csv_bytes(|b| write_pstar_csv(b, &rows))?,
    )?;
    out.write(
        &format!("{stem}_trace.csv"),
        &to_csv_bytes(|b| write_pstar_trace_csv(b, &rows))?,
    )?;
    if !args.ensemble.no_figures {
        let figs = emit_pstar_figures(&rows, &out.dir)?;
        out.written.extend(figs);
    }
    for row in &rows {
        let p_star = row
            .p_star
            .map_or(format!(">{}", row.p_max), |p| p.to_string());
        println!("alpha={:<6} m={:<4} p*={p_star}", row.alpha_target, row.m);
    }
    out.finish(RunManifest::new("pstar", &spec)?, &stem)
}

#[derive(Serialize)]
struct GroverSpec<'a> {
    n: &'a [usize],
    energy_tol: f64,
    p_max: usize,
    optimizer: &'a OptimConfig,
}

pub fn grover(args: GroverArgs) -> Result<()> {
    let cfg = OptimConfig::default()
        .with_restarts(args.restarts)
        .with_seed(args.seed);
    let scaling = run_grover_scaling(&args.n, args.tol, args.p_max, &cfg)?;
    let mut out = Outputs::new(&args.out_dir)?;
    out.write(
        "grover.csv",
        &to_csv_bytes(|b| write_grover_csv(b, &scaling))?,
    )?;
    out.write(
        "grover_trace.csv",
        &to_csv_bytes(|b| write_grover_trace_csv(b, &scaling))?,
    )?;
    if !args.no_figures {
        let figs = emit_grover_figures(&scaling, &out.dir)?;
        out.written.extend(figs);
    }
    println!("{:>4} {:>8} {:>6}", "n", "N", "p*");
    for row in &scaling.rows {
        let p_star = row
            .p_star
            .map_or(format!(">{}", args.p_max), |p| p.to_string());
        println!("{:>4} {:>8} {:>6}", row.n, 1u64 << row.n, p_star);
    }
    match scaling.exponent {
        Some(c) => println!("fitted p* ~ N^{c:.3}"),
        None => println!("fitted exponent unavailable (need two uncensored sizes)"),
    }
    let spec = GroverSpec {
        n: &args.n,
        energy_tol: args.tol,
        p_max: args.p_max,
        optimizer: &cfg,
    };
    out.finish(RunManifest::new("grover", &spec)?, "grover")
}

pub fn render(args: RenderArgs) -> Result<()> {
    let mut records = Vec::new();
    for path in &args.input {
        records.extend(read_records_csv(read_input(path)?.as_bytes())?);
    }
    fs::create_dir_all(&args.out)?;
    for path in emit_density_figures(&records, &args.out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
