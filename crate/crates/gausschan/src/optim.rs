//! Derivative-free scalar and simplex minimization used by the capacity
//! suprema and the entanglement-of-formation search.

/// Result of a simplex minimization.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Options for [`nelder_mead`].
#[derive(Debug, Clone)]
pub struct SimplexOptions {
    pub initial_step: f64,
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_evaluations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            x_tol: 1e-8,
            f_tol: 1e-10,
            max_evaluations: 20_000,
        }
    }
}

/// Standard Nelder–Mead with adaptive shrink, reflection 1, expansion 2,
/// contraction 1/2. The objective may be nonsmooth (this is what the penalty
/// terms produce), which is why no gradient-based method is used here.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    // initial simplex: x0 plus a step along each axis
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    loop {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let best = simplex[0].1;
        let worst = simplex[n].1;

        let spread: f64 = (0..n)
            .map(|i| {
                simplex
                    .iter()
                    .map(|(x, _)| x[i])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                        (lo.min(v), hi.max(v))
                    })
            })
            .map(|(lo, hi)| hi - lo)
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.f_tol && spread <= opts.x_tol {
            break;
        }
        if evals >= opts.max_evaluations {
            break;
        }

        // centroid of all but worst
        let mut centroid = vec![0.0; n];
        for (x, _) in simplex.iter().take(n) {
            for i in 0..n {
                centroid[i] += x[i] / n as f64;
            }
        }

        let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(&ai, &bi)| ai + t * (bi - ai)).collect()
        };

        let worst_x = simplex[n].0.clone();
        let reflected = lerp(&centroid, &worst_x, -1.0);
        let fr = eval(&reflected, &mut evals);

        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst_x, -2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < simplex[n].1 {
                lerp(&centroid, &worst_x, -0.5)
            } else {
                lerp(&centroid, &worst_x, 0.5)
            };
            let fc = eval(&contracted, &mut evals);
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                // shrink toward the best vertex
                let best_x = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    entry.0 = lerp(&best_x, &entry.0, 0.5);
                    entry.1 = eval(&entry.0, &mut evals);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    SimplexResult {
        x: simplex[0].0.clone(),
        value: simplex[0].1,
        evaluations: evals,
    }
}

/// Golden-section minimization of a unimodal scalar function on [lo, hi].
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > x_tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// Maximizes a scalar function on [lo, hi] by a coarse bracket over `grid`
/// points followed by golden-section refinement around the best bracket.
pub fn bracketed_max<F>(mut f: F, lo: f64, hi: f64, grid: usize, x_tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    assert!(grid >= 2 && hi > lo);
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    let xs: Vec<f64> = (0..grid)
        .map(|i| lo + (hi - lo) * i as f64 / (grid - 1) as f64)
        .collect();
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(grid - 1)];
    if a == b {
        return (xs[best_i], best_v);
    }
    let (x, neg) = golden_section_min(|x| -f(x), a, b, x_tol);
    if -neg >= best_v {
        (x, -neg)
    } else {
        (xs[best_i], best_v)
    }
}
