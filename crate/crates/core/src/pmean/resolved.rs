//! High-accuracy p-means of smooth fields over balls, spheres and heat balls.
//!
//! A fixed node rule cannot resolve the kink of `|u - lambda|^(p-2) (u - lambda)`
//! across the level set `{u = lambda}`, which limits the discrete means of
//! [`super::p_mean_ball`] to a few digits for `p < 2` and `p = 1`. Here the
//! domain is swept by chords (meridians on the sphere) parallel to an axis,
//! normally the gradient direction. Along each chord the field is replaced by
//! its Chebyshev interpolant, the crossings with `lambda` are located, and
//! each piece between crossings is integrated with a Gauss–Jacobi rule whose
//! weight `x^(p-1)` absorbs the algebraic behaviour at the crossing. The
//! transverse directions are integrated with Gauss rules.
//!
//! For `p = inf` the extrema over the closed domain are located by sampling
//! the same chords and polishing the best samples with Nelder–Mead.

use super::{Exponent, PMeanResult, MAX_FINITE_EXPONENT};
use crate::error::{Error, Result};
use crate::geometry::{frame_with_axis, norm};
use crate::measure::gauss::{composite_gauss_legendre, gauss_jacobi_unit, gauss_legendre_on};
use crate::measure::{sphere_directions, tau_breaks, DEFAULT_TAU_MAX};
use crate::roots::{brent, nelder_mead, RootTolerance};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Node counts of the chord sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    /// Gauss nodes across the chords (the angle `beta` of the transverse radius).
    pub transverse: usize,
    /// Polynomial exactness of the rule on the transverse sphere `S^{N-2}`.
    pub azimuthal: usize,
    /// Chebyshev–Lobatto interpolation degree along a chord.
    pub interpolation: usize,
    /// Gauss–Jacobi nodes per piece between crossings.
    pub piece: usize,
    /// Gauss–Legendre nodes per heat-ball time panel.
    pub tau_per_panel: usize,
    pub tau_max: f64,
}

/// Highest refinement level accepted by [`Resolution::level`].
pub const MAX_LEVEL: usize = 4;

impl Resolution {
    pub fn level(k: usize) -> Self {
        let table = [
            (16, 16, 12, 12, 6),
            (24, 24, 16, 16, 8),
            (32, 32, 20, 20, 10),
            (48, 48, 24, 24, 12),
            (64, 64, 32, 32, 16),
        ];
        let (transverse, azimuthal, interpolation, piece, tau_per_panel) = table[k.min(MAX_LEVEL)];
        Self { transverse, azimuthal, interpolation, piece, tau_per_panel, tau_max: DEFAULT_TAU_MAX }
    }
}

impl Default for Resolution {
    fn default() -> Self {
        Self::level(1)
    }
}

#[derive(Debug, Clone, Copy)]
enum Density {
    Unit,
    /// `sin(phi)^k` with `phi = pi (s + 1) / 2`.
    SinPower(i32),
    /// `l2 s^2 + b2`, the caloric `|y|^2` along a chord.
    Quadratic {
        l2: f64,
        b2: f64,
    },
}

impl Density {
    #[inline]
    fn at(self, s: f64) -> f64 {
        match self {
            Density::Unit => 1.0,
            Density::SinPower(k) => (0.5 * PI * (s + 1.0)).sin().powi(k),
            Density::Quadratic { l2, b2 } => l2 * s * s + b2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Ball,
    Sphere,
    Heat,
}

/// One chord: unit-coordinate points `y(s)`, `s` in `[-1, 1]`.
#[derive(Debug, Clone)]
struct Chord {
    weight: f64,
    density: Density,
    /// Ball and heat: chord midpoint; sphere: the transverse direction `omega`.
    base: Vec<f64>,
    /// Chord half-length (ball, heat).
    half: f64,
    /// Heat ball: slice radius `R(tau)`, `tau` and `sigma`.
    radius: f64,
    tau: f64,
    sigma: f64,
}

struct Sweep {
    shape: Shape,
    axis: Vec<f64>,
    chords: Vec<Chord>,
    /// Chebyshev–Lobatto nodes on `[-1, 1]`, ascending.
    nodes: Vec<f64>,
    bary: Vec<f64>,
    tau_max: f64,
}

impl Sweep {
    /// Unit-coordinate point of chord `c` at parameter `s`, and its `sigma`.
    fn point(&self, c: &Chord, s: f64, out: &mut [f64]) -> f64 {
        match self.shape {
            Shape::Ball => {
                for i in 0..out.len() {
                    out[i] = c.base[i] + s * c.half * self.axis[i];
                }
                0.0
            }
            Shape::Sphere => {
                let phi = 0.5 * PI * (s + 1.0);
                let (sn, cs) = phi.sin_cos();
                for i in 0..out.len() {
                    out[i] = cs * self.axis[i] + sn * c.base[i];
                }
                0.0
            }
            Shape::Heat => {
                for i in 0..out.len() {
                    out[i] = c.radius * (c.base[i] + s * c.half * self.axis[i]);
                }
                c.sigma
            }
        }
    }

    /// Nelder–Mead coordinates of chord `c` at parameter `s`.
    fn start_params(&self, c: &Chord, s: f64) -> Vec<f64> {
        let n = self.axis.len();
        let mut y = vec![0.0; n];
        match self.shape {
            Shape::Ball | Shape::Sphere => {
                self.point(c, s, &mut y);
                y
            }
            Shape::Heat => {
                for i in 0..n {
                    y[i] = c.base[i] + s * c.half * self.axis[i];
                }
                y.push(c.tau);
                y
            }
        }
    }

    /// Maps Nelder–Mead coordinates to a point of the closed domain.
    fn params_to_point(&self, q: &[f64], out: &mut [f64]) -> f64 {
        let n = out.len();
        let len = norm(&q[..n]);
        match self.shape {
            Shape::Ball => {
                let scale = if len > 1.0 { 1.0 / len } else { 1.0 };
                for i in 0..n {
                    out[i] = q[i] * scale;
                }
                0.0
            }
            Shape::Sphere => {
                if len == 0.0 {
                    out.copy_from_slice(&self.axis);
                } else {
                    for i in 0..n {
                        out[i] = q[i] / len;
                    }
                }
                0.0
            }
            Shape::Heat => {
                let tau = q[n].clamp(0.0, self.tau_max);
                let sigma = (-tau).exp() / (4.0 * PI);
                let radius = (2.0 * n as f64 * sigma * tau).sqrt();
                let scale = radius * if len > 1.0 { 1.0 / len } else { 1.0 };
                for i in 0..n {
                    out[i] = q[i] * scale;
                }
                sigma
            }
        }
    }
}

fn chebyshev_lobatto(m: usize) -> (Vec<f64>, Vec<f64>) {
    let nodes: Vec<f64> = (0..=m).map(|k| -(PI * k as f64 / m as f64).cos()).collect();
    let bary = (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            if k == 0 || k == m {
                0.5 * sign
            } else {
                sign
            }
        })
        .collect();
    (nodes, bary)
}

#[inline]
fn barycentric(nodes: &[f64], bary: &[f64], values: &[f64], s: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..nodes.len() {
        let diff = s - nodes[k];
        if diff == 0.0 {
            return values[k];
        }
        let t = bary[k] / diff;
        num += t * values[k];
        den += t;
    }
    num / den
}

/// Transverse directions `omega` in the complement of the axis, with weights.
fn transverse_directions(frame: &[Vec<f64>], order: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = frame.len();
    let (dirs, weights) = sphere_directions(n - 1, order, None);
    let omegas = dirs
        .iter()
        .map(|d| {
            let mut w = vec![0.0; n];
            for (k, dk) in d.iter().enumerate() {
                for i in 0..n {
                    w[i] += dk * frame[k + 1][i];
                }
            }
            w
        })
        .collect();
    (omegas, weights)
}

/// Chords of the unit ball: `(midpoint, half-length, weight)` with the
/// weights of `int_B f = sum w int_{-1}^{1} f(mid + s L d) ds`.
fn ball_chords(axis: &[f64], res: &Resolution) -> Vec<(Vec<f64>, f64, f64, f64)> {
    let n = axis.len();
    if n == 1 {
        return vec![(vec![0.0], 1.0, 1.0, 0.0)];
    }
    let frame = frame_with_axis(axis);
    let (omegas, wo) = transverse_directions(&frame, res.azimuthal);
    let (betas, wb) = gauss_legendre_on(res.transverse, 0.0, 0.5 * PI);
    let mut out = Vec::with_capacity(betas.len() * omegas.len());
    for (beta, wbeta) in betas.iter().zip(&wb) {
        let (sb, cb) = beta.sin_cos();
        let w = wbeta * sb.powi(n as i32 - 2) * cb * cb;
        for (om, w_om) in omegas.iter().zip(&wo) {
            out.push((om.iter().map(|o| sb * o).collect(), cb, w * w_om, sb));
        }
    }
    out
}

fn build_sweep(shape: Shape, axis: &[f64], res: &Resolution) -> Result<Sweep> {
    let n = axis.len();
    let (nodes, bary) = chebyshev_lobatto(res.interpolation.max(2));
    let mut chords = Vec::new();
    match shape {
        Shape::Ball => {
            for (base, half, weight, _) in ball_chords(axis, res) {
                chords.push(Chord { weight, density: Density::Unit, base, half, radius: 1.0, tau: 0.0, sigma: 0.0 });
            }
        }
        Shape::Sphere => {
            if n < 2 {
                return Err(Error::UnsupportedDimension { dim: n, hint: "spheres need N >= 2" });
            }
            let frame = frame_with_axis(axis);
            let (omegas, wo) = transverse_directions(&frame, res.azimuthal);
            for (om, w) in omegas.into_iter().zip(wo) {
                chords.push(Chord {
                    weight: 0.5 * PI * w,
                    density: Density::SinPower(n as i32 - 2),
                    base: om,
                    half: 1.0,
                    radius: 1.0,
                    tau: 0.0,
                    sigma: 0.0,
                });
            }
        }
        Shape::Heat => {
            if n < 2 {
                return Err(Error::UnsupportedDimension { dim: n, hint: "heat balls need N >= 2" });
            }
            let (taus, wt) = composite_gauss_legendre(&tau_breaks(res.tau_max), res.tau_per_panel);
            let slice = ball_chords(axis, res);
            for (tau, wtau) in taus.iter().zip(&wt) {
                let sigma = (-tau).exp() / (4.0 * PI);
                let radius = (2.0 * n as f64 * sigma * tau).sqrt();
                let w_slice = wtau * radius.powi(n as i32 + 2) / sigma;
                for (base, half, w, sb) in &slice {
                    chords.push(Chord {
                        weight: w_slice * w,
                        density: Density::Quadratic { l2: half * half, b2: sb * sb },
                        base: base.clone(),
                        half: *half,
                        radius,
                        tau: *tau,
                        sigma,
                    });
                }
            }
        }
    }
    Ok(Sweep { shape, axis: axis.to_vec(), chords, nodes, bary, tau_max: res.tau_max })
}

/// Gauss–Jacobi rules for the four crossing patterns of a piece.
struct PieceRules {
    exponent: f64,
    rules: [(Vec<f64>, Vec<f64>); 4],
}

impl PieceRules {
    fn new(p: f64, n: usize) -> Self {
        let e = p - 1.0;
        let rules = [
            gauss_jacobi_unit(n, 0.0, 0.0),
            gauss_jacobi_unit(n, e, 0.0),
            gauss_jacobi_unit(n, 0.0, e),
            gauss_jacobi_unit(n, e, e),
        ];
        Self { exponent: e, rules }
    }

    #[inline]
    fn power(&self, r: f64) -> f64 {
        let e = self.exponent;
        if e == 0.0 {
            1.0
        } else if e == 1.0 {
            r
        } else if e == 2.0 {
            r * r
        } else if e == 3.0 {
            r * r * r
        } else {
            r.powf(e)
        }
    }
}

struct Evaluated {
    sweep: Sweep,
    /// Normalized chord values, `interpolation + 1` per chord.
    values: Vec<f64>,
    center: f64,
    half_range: f64,
    /// Unnormalized sample extrema and their chord/node positions.
    argmin: (usize, usize, f64),
    argmax: (usize, usize, f64),
}

fn evaluate_sweep<F: FnMut(&[f64], f64) -> f64>(sweep: Sweep, mut v: F) -> Result<Evaluated> {
    let n = sweep.axis.len();
    let m1 = sweep.nodes.len();
    let mut values = Vec::with_capacity(sweep.chords.len() * m1);
    let mut y = vec![0.0; n];
    let mut argmin = (0, 0, f64::INFINITY);
    let mut argmax = (0, 0, f64::NEG_INFINITY);
    for (ci, c) in sweep.chords.iter().enumerate() {
        for (k, &s) in sweep.nodes.iter().enumerate() {
            let sigma = sweep.point(c, s, &mut y);
            let val = v(&y, sigma);
            if !val.is_finite() {
                return Err(Error::NonFiniteValue { index: values.len() });
            }
            if val < argmin.2 {
                argmin = (ci, k, val);
            }
            if val > argmax.2 {
                argmax = (ci, k, val);
            }
            values.push(val);
        }
    }
    let center = 0.5 * (argmin.2 + argmax.2);
    let half_range = 0.5 * (argmax.2 - argmin.2);
    if half_range > 0.0 {
        values.iter_mut().for_each(|x| *x = (*x - center) / half_range);
    }
    Ok(Evaluated { sweep, values, center, half_range, argmin, argmax })
}

impl Evaluated {
    fn chord_values(&self, ci: usize) -> &[f64] {
        let m1 = self.sweep.nodes.len();
        &self.values[ci * m1..(ci + 1) * m1]
    }

    /// Crossings of the interpolant with `lambda` on `[-1, 1]`, ascending,
    /// written into `roots`.
    fn crossings(&self, vals: &[f64], lambda: f64, roots: &mut Vec<f64>) {
        roots.clear();
        let nodes = &self.sweep.nodes;
        let bary = &self.sweep.bary;
        let tol = RootTolerance { x: 4.0 * f64::EPSILON, f: 0.0, max_iterations: 100 };
        for k in 0..nodes.len() {
            let fk = vals[k] - lambda;
            if fk == 0.0 {
                if roots.last() != Some(&nodes[k]) {
                    roots.push(nodes[k]);
                }
                continue;
            }
            if k + 1 < nodes.len() {
                let fk1 = vals[k + 1] - lambda;
                if fk * fk1 < 0.0 {
                    let r = brent(|s| barycentric(nodes, bary, vals, s) - lambda, nodes[k], nodes[k + 1], fk, fk1, tol);
                    roots.push(r.x);
                }
            }
        }
    }

    /// `sum_chords w int |P - lambda|^(p-2) (P - lambda) rho ds` in normalized units.
    fn residual(&self, lambda: f64, pieces: &PieceRules, roots: &mut Vec<f64>) -> f64 {
        let nodes = &self.sweep.nodes;
        let bary = &self.sweep.bary;
        let mut total = 0.0;
        for (ci, c) in self.sweep.chords.iter().enumerate() {
            let vals = self.chord_values(ci);
            self.crossings(vals, lambda, roots);
            let mut chord = 0.0;
            let mut a = -1.0;
            let mut a_root = roots.first() == Some(&-1.0);
            let count = roots.len();
            for j in 0..=count {
                let (b, b_root) = if j < count { (roots[j], true) } else { (1.0, false) };
                let b_root = b_root || (j == count && vals[vals.len() - 1] == lambda);
                let width = b - a;
                if width > 0.0 {
                    let pattern = usize::from(a_root) + 2 * usize::from(b_root);
                    let (xs, ws) = &pieces.rules[pattern];
                    let mut sum = 0.0;
                    for (x, w) in xs.iter().zip(ws) {
                        let s = a + width * x;
                        let diff = barycentric(nodes, bary, vals, s) - lambda;
                        let mut scale = 1.0;
                        if a_root {
                            scale *= x;
                        }
                        if b_root {
                            scale *= 1.0 - x;
                        }
                        let mag = pieces.power(diff.abs() / scale);
                        let signed = if diff > 0.0 {
                            mag
                        } else if diff < 0.0 {
                            -mag
                        } else {
                            0.0
                        };
                        sum += w * signed * c.density.at(s);
                    }
                    chord += width * sum;
                }
                a = b;
                a_root = true;
            }
            total += c.weight * chord;
        }
        total
    }

    /// `(sum w int P rho, sum w int rho)` in normalized units.
    fn moments(&self, n_piece: usize) -> (f64, f64) {
        let (xs, ws) = gauss_legendre_on(n_piece, -1.0, 1.0);
        let nodes = &self.sweep.nodes;
        let bary = &self.sweep.bary;
        let mut first = 0.0;
        let mut mass = 0.0;
        for (ci, c) in self.sweep.chords.iter().enumerate() {
            let vals = self.chord_values(ci);
            for (s, w) in xs.iter().zip(&ws) {
                let rho = w * c.density.at(*s) * c.weight;
                first += rho * barycentric(nodes, bary, vals, *s);
                mass += rho;
            }
        }
        (first, mass)
    }
}

/// Gradient direction of `u` at `x` from central differences at scale `h`.
fn probe_axis<F: FnMut(&[f64]) -> f64>(mut u: F, x: &[f64], h: f64) -> Vec<f64> {
    let n = x.len();
    let mut y = x.to_vec();
    let mut g = vec![0.0; n];
    for i in 0..n {
        y[i] = x[i] + h;
        let up = u(&y);
        y[i] = x[i] - h;
        let down = u(&y);
        y[i] = x[i];
        g[i] = up - down;
    }
    if norm(&g) > 0.0 && g.iter().all(|v| v.is_finite()) {
        g
    } else {
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        e
    }
}

fn check_args(x: &[f64], eps: f64) -> Result<()> {
    if x.is_empty() {
        return Err(Error::UnsupportedDimension { dim: 0, hint: "dimension must be positive" });
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::NonPositiveRadius(eps));
    }
    Ok(())
}

fn solve_mean<F: FnMut(&[f64], f64) -> f64>(
    sweep: Sweep,
    mut v: F,
    p: Exponent,
    res: &Resolution,
) -> Result<PMeanResult> {
    let p = p.validate()?;
    let ev = evaluate_sweep(sweep, &mut v)?;
    let p = match p {
        Exponent::Finite(q) if q > MAX_FINITE_EXPONENT => {
            log::warn!("exponent {q} exceeds {MAX_FINITE_EXPONENT}; evaluating the p = inf mean instead");
            Exponent::Infinity
        }
        p => p,
    };
    if !(ev.half_range > 0.0) && !p.is_infinite() {
        return Ok(PMeanResult { mean: ev.center, residual: 0.0, iterations: 0, bracket_width: 0.0 });
    }
    match p {
        Exponent::Infinity => extrema_mean(&ev, &mut v),
        Exponent::Two => {
            let (first, mass) = ev.moments(res.piece.max(res.interpolation / 2 + 2));
            let mean = ev.center + ev.half_range * first / mass;
            Ok(PMeanResult { mean, residual: 0.0, iterations: 0, bracket_width: 0.0 })
        }
        p => {
            let pv = p.value();
            let pieces = PieceRules::new(pv, res.piece);
            let mut roots = Vec::new();
            let mut g = |l: f64| ev.residual(l, &pieces, &mut roots);
            let (mut lo, mut hi) = (-1.0, 1.0);
            let (mut glo, mut ghi) = (g(lo), g(hi));
            let mut widen = 0;
            while glo < 0.0 || ghi > 0.0 {
                widen += 1;
                if widen > 8 {
                    return Err(Error::Numerical("could not bracket the p-mean".into()));
                }
                if glo < 0.0 {
                    lo -= 0.25;
                    glo = g(lo);
                }
                if ghi > 0.0 {
                    hi += 0.25;
                    ghi = g(hi);
                }
            }
            let tol = RootTolerance { x: 1e-15, f: 0.0, max_iterations: 200 };
            let root = brent(&mut g, lo, hi, glo, ghi, tol);
            Ok(PMeanResult {
                mean: ev.center + ev.half_range * root.x,
                residual: root.fx * ev.half_range.powf(pv - 1.0),
                iterations: root.iterations,
                bracket_width: root.bracket * ev.half_range,
            })
        }
    }
}

fn extrema_mean<F: FnMut(&[f64], f64) -> f64>(ev: &Evaluated, v: &mut F) -> Result<PMeanResult> {
    let sweep = &ev.sweep;
    let n = sweep.axis.len();
    let mut y = vec![0.0; n];
    let mut polish = |ci: usize, k: usize, sign: f64, best: f64| -> f64 {
        let start = sweep.start_params(&sweep.chords[ci], sweep.nodes[k]);
        let scale = vec![0.02; start.len()];
        let (_, value) = nelder_mead(
            |q| {
                let sigma = sweep.params_to_point(q, &mut y);
                sign * v(&y, sigma)
            },
            &start,
            &scale,
            1e-16 * (1.0 + best.abs()),
            4000,
        );
        value
    };
    let lo = polish(ev.argmin.0, ev.argmin.1, 1.0, ev.argmin.2).min(ev.argmin.2);
    let hi = (-polish(ev.argmax.0, ev.argmax.1, -1.0, ev.argmax.2)).max(ev.argmax.2);
    Ok(PMeanResult { mean: 0.5 * (lo + hi), residual: 0.0, iterations: 0, bracket_width: 0.0 })
}

/// `mu_p(eps, u)(x)` over `B_eps(x)` by the chord sweep. `axis` defaults to
/// the finite-difference gradient direction at `x`.
pub fn resolved_ball_mean<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: Exponent,
    res: &Resolution,
    axis: Option<&[f64]>,
) -> Result<PMeanResult> {
    check_args(x, eps)?;
    let axis = axis.map(<[f64]>::to_vec).unwrap_or_else(|| probe_axis(|y| u(y), x, 1e-3 * eps));
    let sweep = build_sweep(Shape::Ball, &unit(&axis)?, res)?;
    let mut pt = vec![0.0; x.len()];
    solve_mean(
        sweep,
        |y, _| {
            for i in 0..pt.len() {
                pt[i] = x[i] + eps * y[i];
            }
            u(&pt)
        },
        p,
        res,
    )
}

/// The spherical p-mean over `dB_eps(x)` by the meridian sweep.
pub fn resolved_sphere_mean<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: Exponent,
    res: &Resolution,
    axis: Option<&[f64]>,
) -> Result<PMeanResult> {
    check_args(x, eps)?;
    let axis = axis.map(<[f64]>::to_vec).unwrap_or_else(|| probe_axis(|y| u(y), x, 1e-3 * eps));
    let sweep = build_sweep(Shape::Sphere, &unit(&axis)?, res)?;
    let mut pt = vec![0.0; x.len()];
    solve_mean(
        sweep,
        |y, _| {
            for i in 0..pt.len() {
                pt[i] = x[i] + eps * y[i];
            }
            u(&pt)
        },
        p,
        res,
    )
}

/// `pi_p(eps, u)(x, t)` over the heat ball `E_eps(x, t)` by the chord sweep
/// of each time slice.
pub fn resolved_heat_mean<F: Fn(&[f64], f64) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    t: f64,
    eps: f64,
    p: Exponent,
    res: &Resolution,
    axis: Option<&[f64]>,
) -> Result<PMeanResult> {
    check_args(x, eps)?;
    let axis = axis.map(<[f64]>::to_vec).unwrap_or_else(|| probe_axis(|y| u(y, t), x, 1e-3 * eps));
    let sweep = build_sweep(Shape::Heat, &unit(&axis)?, res)?;
    let mut pt = vec![0.0; x.len()];
    solve_mean(
        sweep,
        |y, sigma| {
            for i in 0..pt.len() {
                pt[i] = x[i] + eps * y[i];
            }
            u(&pt, t - eps * eps * sigma)
        },
        p,
        res,
    )
}

fn unit(axis: &[f64]) -> Result<Vec<f64>> {
    let len = norm(axis);
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::InvalidParameter("sweep axis must be a nonzero finite vector".into()));
    }
    Ok(axis.iter().map(|a| a / len).collect())
}
