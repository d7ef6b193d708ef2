use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaoa-reach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_uses_rounded_density_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cnf");
    let b = dir.path().join("b.cnf");
    for out in [&a, &b] {
        let o = run(&[
            "gen",
            "--n",
            "6",
            "--alpha",
            "2",
            "--k",
            "3",
            "--seed",
            "7",
            "--out",
            path(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stdout).contains("seed=7"));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.contains("p cnf 6 12"));
    assert_eq!(text, fs::read_to_string(&b).unwrap());
}

#[test]
fn gen_rejects_m_with_alpha() {
    let o = run(&["gen", "--n", "6", "--m", "6", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gen", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_depth_zero_single_clause() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("one.cnf");
    fs::write(&cnf, "p cnf 2 1\n1 -2 0\n").unwrap();
    let o = run(&["solve", "--cnf", path(&cnf), "--p", "0", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["ground_energy"], 0);
    assert!((v["energy"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn solve_contradictory_units_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("units.cnf");
    fs::write(&cnf, "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let args = [
        "solve",
        "--cnf",
        path(&cnf),
        "--p",
        "2",
        "--restarts",
        "3",
        "--seed",
        "4",
        "--json",
    ];
    let first = run(&args);
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["ground_energy"], 1);
    let energy = v["energy"].as_f64().unwrap();
    assert!((v["deficit"].as_f64().unwrap() - (energy - 1.0)).abs() < 1e-12);
    assert!((energy - 1.0).abs() < 1e-9);
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn solve_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cnf");
    fs::write(&bad, "p cnf 2 1\n1 3 0\n").unwrap();
    assert_eq!(run(&["solve", "--cnf", path(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.cnf");
    assert_eq!(
        run(&["solve", "--cnf", path(&missing)]).status.code(),
        Some(2)
    );
    let big = dir.path().join("big.cnf");
    fs::write(&big, "p cnf 30 1\n1 2 0\n").unwrap();
    assert_eq!(run(&["solve", "--cnf", path(&big)]).status.code(), Some(3));
    assert_eq!(
        run(&["solve", "--cnf", path(&bad), "--driver", "z"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_output_is_independent_of_jobs_and_renders() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for jobs in ["1", "3"] {
        let out = dir.path().join(format!("jobs{jobs}"));
        let o = run(&[
            "--jobs",
            jobs,
            "sweep",
            "--n",
            "4",
            "--k",
            "2",
            "--driver",
            "plus",
            "--depths",
            "1,2",
            "--alphas",
            "0.5:1.5:0.5",
            "--instances",
            "4",
            "--restarts",
            "2",
            "--seed",
            "3",
            "--out-dir",
            path(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        csvs.push(fs::read(out.join("sweep_n4_k2_plus.csv")).unwrap());
        let agg = fs::read_to_string(out.join("sweep_n4_k2_plus_agg.csv")).unwrap();
        assert!(agg.starts_with(
            "n,k,driver,p,alpha_target,mean_deficit,sem_deficit,mean_overlap,count\n"
        ));
        let manifest: serde_json::Value =
            serde_json::from_slice(&fs::read(out.join("sweep_n4_k2_plus_manifest.json")).unwrap())
                .unwrap();
        assert_eq!(manifest["spec"]["base_seed"], 3);
        assert!(out.join("deficit_n4_k2_plus.svg").exists());
    }
    assert_eq!(csvs[0], csvs[1]);
    let text = String::from_utf8(csvs[0].clone()).unwrap();
    assert!(text.starts_with(
        "n,k,driver,p,alpha_target,m,instance_seed,energy,ground_energy,deficit,overlap,converged,evals\n"
    ));
    assert_eq!(text.lines().count(), 1 + 3 * 4 * 2);

    let figs = dir.path().join("figs");
    let csv = dir.path().join("jobs1").join("sweep_n4_k2_plus.csv");
    let o = run(&["render", "--in", path(&csv), "--out", path(&figs)]);
    assert!(o.status.success());
    assert!(figs.join("deficit_n4_k2_plus.svg").exists());
}

#[test]
fn sweep_rejects_bad_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "sweep",
        "--alphas",
        "1:0:0.5",
        "--out-dir",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "sweep",
        "--n",
        "30",
        "--alphas",
        "1",
        "--out-dir",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn pstar_and_grover_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "pstar",
        "--n",
        "4",
        "--k",
        "2",
        "--alphas",
        "0.5",
        "--instances",
        "3",
        "--restarts",
        "2",
        "--p-max",
        "4",
        "--out-dir",
        path(dir.path()),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("pstar_n4_k2_x.csv").exists());

    let o = run(&[
        "grover",
        "--n",
        "2,3",
        "--restarts",
        "2",
        "--p-max",
        "8",
        "--out-dir",
        path(dir.path()),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("fitted"));
    assert!(dir.path().join("grover.csv").exists());
}

#[test]
fn every_command_has_help() {
    for cmd in ["gen", "solve", "sweep", "pstar", "grover", "render"] {
        let o = run(&[cmd, "--help"]);
        assert!(o.status.success(), "{cmd}");
    }
    let help = String::from_utf8(run(&["sweep", "--help"]).stdout).unwrap();
    assert!(help.contains("start:stop:step"));
}
