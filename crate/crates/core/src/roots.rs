//! Bracketing scalar root finding and derivative-free local minimization.

/// Outcome of a bracketed root search.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    /// Width of the final sign-change bracket.
    pub bracket: f64,
}

/// Stopping rule for [`brent`].
#[derive(Debug, Clone, Copy)]
pub struct RootTolerance {
    /// Stop once the bracket is narrower than this.
    pub x: f64,
    /// Stop once `|f| <= f`.
    pub f: f64,
    pub max_iterations: usize,
}

/// Brent–Dekker root search on a sign-change bracket `[a, b]` with known
/// endpoint values. The bracket is maintained at every step, so the method
/// converges for any continuous `f` with `fa * fb <= 0`.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    tol: RootTolerance,
) -> Root {
    if fa == 0.0 {
        return Root { x: a, fx: 0.0, iterations: 0, bracket: 0.0 };
    }
    if fb == 0.0 {
        return Root { x: b, fx: 0.0, iterations: 0, bracket: 0.0 };
    }
    debug_assert!(fa.signum() != fb.signum(), "brent needs a sign change");
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    let mut iterations = 0;
    loop {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let half_tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol.x;
        let m = 0.5 * (c - b);
        if m.abs() <= half_tol || fb.abs() <= tol.f || fb == 0.0 || iterations >= tol.max_iterations {
            return Root { x: b, fx: fb, iterations, bracket: (c - b).abs() };
        }
        iterations += 1;
        if e.abs() >= half_tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (half_tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > half_tol { d } else { half_tol.copysign(m) };
        fb = f(b);
    }
}

/// Minimizes `f` from `start` with the Nelder–Mead simplex method.
///
/// `scale` sets the initial simplex edge per coordinate. Returns the best
/// point and its value.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    scale: &[f64],
    f_tol: f64,
    max_evaluations: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += scale[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evaluations = n + 1;
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    while evaluations < max_evaluations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0_f64, f64::max);
        if spread.abs() <= f_tol && size <= 1e-12 {
            break;
        }
        if size <= 1e-15 {
            break;
        }
        centroid.iter_mut().for_each(|c| *c = 0.0);
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let point_at = |coef: f64, out: &mut Vec<f64>| {
            for i in 0..n {
                out[i] = centroid[i] + coef * (simplex[n][i] - centroid[i]);
            }
        };
        point_at(-1.0, &mut trial);
        let fr = f(&trial);
        evaluations += 1;
        if fr < values[0] {
            let reflected = trial.clone();
            point_at(-2.0, &mut trial);
            let fe = f(&trial);
            evaluations += 1;
            if fe < fr {
                simplex[n] = trial.clone();
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = trial.clone();
            values[n] = fr;
        } else {
            let coef = if fr < values[n] { -0.5 } else { 0.5 };
            point_at(coef, &mut trial);
            let fc = f(&trial);
            evaluations += 1;
            if fc < values[n].min(fr) {
                simplex[n] = trial.clone();
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for k in 1..=n {
                    for i in 0..n {
                        simplex[k][i] = best[i] + 0.5 * (simplex[k][i] - best[i]);
                    }
                    values[k] = f(&simplex[k]);
                    evaluations += 1;
                }
            }
        }
    }
    let best = (0..=n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    (simplex[best].clone(), values[best])
}
