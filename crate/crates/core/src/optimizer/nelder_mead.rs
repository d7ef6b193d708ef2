//! Unconstrained Nelder-Mead simplex descent.

#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Stop once `f_max - f_min` over the simplex drops below this.
    pub f_tolerance: f64,
    pub max_evals: usize,
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` from `x0`. `x0` is always a vertex of the initial simplex,
/// so the returned value never exceeds `f(x0)`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    if dim == 0 {
        let v = eval(x0, &mut evals);
        return NelderMeadResult {
            x: Vec::new(),
            f: v,
            evals,
            converged: true,
        };
    }

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

    let mut order: Vec<usize> = (0..=dim).collect();
    let mut centroid = vec![0.0; dim];
    let mut trial = vec![0.0; dim];
    let mut trial2 = vec![0.0; dim];
    let mut converged = false;

    loop {
        // Stable sort keeps the earlier vertex first on ties, which makes the
        // walk deterministic.
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if values[worst] - values[best] < opts.f_tolerance {
            converged = true;
            break;
        }
        if evals >= opts.max_evals {
            break;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..dim] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= dim as f64);

        let along = |out: &mut Vec<f64>, coef: f64, from: &[f64], centroid: &[f64]| {
            for ((o, c), w) in out.iter_mut().zip(centroid).zip(from) {
                *o = c + coef * (c - w);
            }
        };

        along(&mut trial, REFLECT, &simplex[worst], &centroid);
        let f_reflect = eval(&trial, &mut evals);

        if f_reflect < values[best] {
            along(&mut trial2, EXPAND, &simplex[worst], &centroid);
            let f_expand = eval(&trial2, &mut evals);
            if f_expand < f_reflect {
                simplex[worst].copy_from_slice(&trial2);
                values[worst] = f_expand;
            } else {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = f_reflect;
            }
            continue;
        }
        if f_reflect < values[second_worst] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = f_reflect;
            continue;
        }

        let outside = f_reflect < values[worst];
        if outside {
            along(&mut trial2, CONTRACT, &simplex[worst], &centroid);
        } else {
            along(&mut trial2, -CONTRACT, &simplex[worst], &centroid);
        }
        let f_contract = eval(&trial2, &mut evals);
        let accept = if outside {
            f_contract <= f_reflect
        } else {
            f_contract < values[worst]
        };
        if accept {
            simplex[worst].copy_from_slice(&trial2);
            values[worst] = f_contract;
            continue;
        }

        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for (x, a) in simplex[i].iter_mut().zip(&anchor) {
                *x = a + SHRINK * (*x - a);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }

    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty simplex");
    NelderMeadResult {
        x: simplex[best].clone(),
        f: values[best],
        evals,
        converged,
    }
}

/// Central-difference gradient, for diagnostics.
pub fn finite_difference_gradient<F>(mut f: F, x: &[f64], h: f64) -> Vec<f64>
where
    F: FnMut(&[f64]) -> f64,
{
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
