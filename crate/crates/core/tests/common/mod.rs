//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use num_complex::Complex64;
use qaoa_reach::SatInstance;

pub type CMatrix = Vec<Vec<Complex64>>;

/// 2-SAT decision via the implication graph: unsatisfiable iff some
/// variable shares a strongly connected component with its negation.
pub fn two_sat_satisfiable(inst: &SatInstance) -> bool {
    let n = inst.num_vars();
    let node = |var: u32, neg: bool| 2 * (var as usize - 1) + usize::from(neg);
    let mut adj = vec![Vec::new(); 2 * n];
    for c in inst.clauses() {
        let lits = c.literals();
        let (a, b) = match lits {
            [a] => (*a, *a),
            [a, b] => (*a, *b),
            _ => panic!("not a 2-SAT clause"),
        };
        // (a or b): !a -> b, !b -> a
        adj[node(a.variable(), !a.is_negated())].push(node(b.variable(), b.is_negated()));
        adj[node(b.variable(), !b.is_negated())].push(node(a.variable(), a.is_negated()));
    }
    let comp = tarjan(&adj);
    (0..n).all(|v| comp[2 * v] != comp[2 * v + 1])
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        ncomp: usize,
    }
    fn visit(s: &mut St, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on[v] = true;
        for i in 0..s.adj[v].len() {
            let w = s.adj[v][i];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            loop {
                let w = s.stack.pop().unwrap();
                s.on[w] = false;
                s.comp[w] = s.ncomp;
                if w == v {
                    break;
                }
            }
            s.ncomp += 1;
        }
    }
    let n = adj.len();
    let mut s = St {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

pub fn zeros(d: usize) -> CMatrix {
    vec![vec![Complex64::new(0.0, 0.0); d]; d]
}

pub fn identity(d: usize) -> CMatrix {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for k in 0..d {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn matvec(a: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Dense `sum_i sigma_x^(i)` on `n` qubits.
pub fn sum_sigma_x(n: usize) -> CMatrix {
    let d = 1 << n;
    let mut m = zeros(d);
    for z in 0..d {
        for q in 0..n {
            m[z ^ (1 << q)][z] += Complex64::new(1.0, 0.0);
        }
    }
    m
}

/// `exp(-i t H)` by scaling and squaring a truncated Taylor series.
pub fn expm_minus_i(h: &CMatrix, t: f64) -> CMatrix {
    let d = h.len();
    let squarings = 12;
    let scale = t / f64::from(1u32 << squarings);
    let a: CMatrix = h
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x * Complex64::new(0.0, -scale))
                .collect()
        })
        .collect();
    let mut result = identity(d);
    let mut term = identity(d);
    for k in 1..=20 {
        term = matmul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..d {
            for j in 0..d {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Naive `sum_z |psi_z|^2 E_z`, written independently of the crate.
pub fn naive_expectation(amps: &[Complex64], energies: &[u32]) -> f64 {
    let mut total = 0.0;
    for z in 0..amps.len() {
        total += (amps[z].re * amps[z].re + amps[z].im * amps[z].im) * f64::from(energies[z]);
    }
    total
}

/// Single-qubit `exp(-i beta sigma_x)` applied to every qubit through a
/// dense Kronecker product, for small `n`.
pub fn dense_transverse(n: usize, beta: f64) -> CMatrix {
    let (s, c) = beta.sin_cos();
    let one = [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ];
    let d = 1 << n;
    let mut m = zeros(d);
    for row in 0..d {
        for col in 0..d {
            let mut v = Complex64::new(1.0, 0.0);
            for q in 0..n {
                v *= one[(row >> q) & 1][(col >> q) & 1];
            }
            m[row][col] = v;
        }
    }
    m
}
