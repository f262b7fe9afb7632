//! Fixed-point iteration `u <- mu_p(eps, u)` for Dirichlet problems on a
//! planar grid.
//!
//! Samples of the ball stencil that fall outside the domain read the
//! boundary data directly; samples inside are bilinear interpolants of the
//! current iterate. Both are monotone in the iterate, so each sweep is a
//! monotone, sup-nonexpansive map.

use crate::error::{Error, Result};
use crate::measure::{unit_ball_rule, unit_sphere_rule};
use crate::plaplace::SmoothField;
use crate::pmean::{p_mean_unchecked, Exponent};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Only planar grids are supported.
pub const GRID_DIMENSION: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Domain {
    Box { lower: [f64; 2], upper: [f64; 2] },
    Annulus { center: [f64; 2], inner: f64, outer: f64 },
}

impl Domain {
    pub fn contains(&self, y: &[f64]) -> bool {
        self.distance(y) == 0.0 && !self.on_edge(y)
    }

    fn on_edge(&self, y: &[f64]) -> bool {
        match self {
            Domain::Box { lower, upper } => (0..2).any(|i| y[i] == lower[i] || y[i] == upper[i]),
            Domain::Annulus { center, inner, outer } => {
                let r = (y[0] - center[0]).hypot(y[1] - center[1]);
                r == *inner || r == *outer
            }
        }
    }

    /// Euclidean distance to the closed domain.
    pub fn distance(&self, y: &[f64]) -> f64 {
        match self {
            Domain::Box { lower, upper } => {
                let dx = (lower[0] - y[0]).max(y[0] - upper[0]).max(0.0);
                let dy = (lower[1] - y[1]).max(y[1] - upper[1]).max(0.0);
                dx.hypot(dy)
            }
            Domain::Annulus { center, inner, outer } => {
                let r = (y[0] - center[0]).hypot(y[1] - center[1]);
                (inner - r).max(r - outer).max(0.0)
            }
        }
    }

    fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            Domain::Box { lower, upper } => (*lower, *upper),
            Domain::Annulus { center, outer, .. } => {
                ([center[0] - outer, center[1] - outer], [center[0] + outer, center[1] + outer])
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Domain::Box { lower, upper } => {
                (0..2).all(|i| lower[i].is_finite() && upper[i].is_finite() && lower[i] < upper[i])
            }
            Domain::Annulus { center, inner, outer } => {
                center.iter().all(|c| c.is_finite()) && *inner >= 0.0 && inner < outer && outer.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("degenerate domain {self:?}")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridProblem {
    pub domain: Domain,
    pub spacing: f64,
    pub epsilon: f64,
    pub exponent: Exponent,
    /// Dirichlet data, evaluated at time 0 wherever a sample leaves the domain.
    pub boundary: SmoothField,
    pub max_iterations: usize,
    /// Sup-norm of the update below which the iteration stops.
    pub tolerance: f64,
    /// Exactness order of the ball rule used for each mean.
    pub rule_order: usize,
}

impl GridProblem {
    /// Problem with the default coupling `eps = 4h`, rule order 6,
    /// tolerance `1e-6` and `20000` iterations.
    pub fn new(domain: Domain, spacing: f64, exponent: Exponent, boundary: SmoothField) -> Self {
        Self {
            domain,
            spacing,
            epsilon: 4.0 * spacing,
            exponent,
            boundary,
            max_iterations: 20_000,
            tolerance: 1e-6,
            rule_order: 6,
        }
    }

    pub fn echo(&self) -> ProblemEcho {
        ProblemEcho {
            domain: self.domain.clone(),
            spacing: self.spacing,
            epsilon: self.epsilon,
            exponent: self.exponent,
            boundary: self.boundary.name.clone(),
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            rule_order: self.rule_order,
        }
    }

    fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        if self.boundary.dimension != GRID_DIMENSION {
            return Err(Error::UnsupportedDimension {
                dim: self.boundary.dimension,
                hint: "the grid solver is planar",
            });
        }
        if !(self.spacing > 0.0) || !self.spacing.is_finite() {
            return Err(Error::InvalidParameter(format!("spacing must be positive, got {}", self.spacing)));
        }
        if !(self.epsilon >= 2.0 * self.spacing) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be at least twice the spacing (eps = {}, h = {})",
                self.epsilon, self.spacing
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        self.exponent.validate()?;
        Ok(())
    }
}

/// Serializable description of a [`GridProblem`]; the boundary data is named.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemEcho {
    pub domain: Domain,
    pub spacing: f64,
    pub epsilon: f64,
    pub exponent: Exponent,
    pub boundary: String,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub rule_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Interior,
    /// Outside the domain but within `eps` of it; holds boundary data.
    Strip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridNode {
    pub x: f64,
    pub y: f64,
    pub kind: NodeKind,
    pub value: f64,
    /// `u - mu_p(eps, u)` at interior nodes, 0 on the strip.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSolution {
    pub problem: ProblemEcho,
    pub nodes: Vec<GridNode>,
    pub iterations_used: usize,
    pub final_update_norm: f64,
    /// Sup-norm of each update, in iteration order.
    pub update_norms: Vec<f64>,
    pub converged: bool,
    /// Extremes of every boundary value the iteration read.
    pub boundary_min: f64,
    pub boundary_max: f64,
}

/// One sample of a stencil: `constant + sum weights[k] * u[index[k]]`.
#[derive(Debug, Clone, Copy)]
struct Tap {
    index: [u32; 4],
    weights: [f64; 4],
    constant: f64,
}

struct Grid {
    origin: [f64; 2],
    h: f64,
    shape: [usize; 2],
}

impl Grid {
    fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    fn flat(&self, i: usize, j: usize) -> usize {
        j * self.shape[0] + i
    }

    /// Bilinear interpolation taps of a point inside the grid box.
    fn bilinear(&self, y: &[f64]) -> Tap {
        let locate = |c: f64, axis: usize| {
            let s = (c - self.origin[axis]) / self.h;
            let cell = (s.floor().max(0.0) as usize).min(self.shape[axis] - 2);
            (cell, (s - cell as f64).clamp(0.0, 1.0))
        };
        let (i, fx) = locate(y[0], 0);
        let (j, fy) = locate(y[1], 1);
        Tap {
            index: [self.flat(i, j), self.flat(i + 1, j), self.flat(i, j + 1), self.flat(i + 1, j + 1)]
                .map(|k| k as u32),
            weights: [(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy), (1.0 - fx) * fy, fx * fy],
            constant: 0.0,
        }
    }
}

struct Assembled {
    grid: Grid,
    kinds: Vec<Option<NodeKind>>,
    interior: Vec<usize>,
    /// Ball taps of each interior node, `taps_per_node` at a time.
    taps: Vec<Tap>,
    taps_per_node: usize,
    /// Additional boundary-sphere taps used only for `p = inf`.
    edge_taps: Vec<Tap>,
    edge_per_node: usize,
    weights: Vec<f64>,
    initial: Vec<f64>,
    boundary_min: f64,
    boundary_max: f64,
}

fn assemble(problem: &GridProblem) -> Result<Assembled> {
    let h = problem.spacing;
    let eps = problem.epsilon;
    let (lo, hi) = problem.domain.bounds();
    let pad = (eps / h).ceil() + 1.0;
    let origin = [lo[0] - pad * h, lo[1] - pad * h];
    let shape = [0, 1].map(|a| (((hi[a] - lo[a]) / h).ceil() + 2.0 * pad) as usize + 1);
    if shape[0] * shape[1] > u32::MAX as usize {
        return Err(Error::InvalidParameter("grid too large".into()));
    }
    let grid = Grid { origin, h, shape };
    let g = |y: &[f64]| problem.boundary.eval(y, 0.0);

    let mut kinds = vec![None; shape[0] * shape[1]];
    let mut values = vec![0.0; kinds.len()];
    let mut interior = Vec::new();
    let (mut bmin, mut bmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut track = |v: f64| -> Result<f64> {
        if !v.is_finite() {
            return Err(Error::Numerical("boundary data is not finite".into()));
        }
        bmin = bmin.min(v);
        bmax = bmax.max(v);
        Ok(v)
    };
    let mut strip_sum = 0.0;
    let mut strip_count = 0usize;
    for j in 0..shape[1] {
        for i in 0..shape[0] {
            let y = grid.point(i, j);
            let k = grid.flat(i, j);
            if problem.domain.contains(&y) {
                kinds[k] = Some(NodeKind::Interior);
                interior.push(k);
            } else if problem.domain.distance(&y) <= eps + h {
                kinds[k] = Some(NodeKind::Strip);
                values[k] = track(g(&y))?;
                strip_sum += values[k];
                strip_count += 1;
            }
        }
    }
    if interior.is_empty() {
        return Err(Error::InvalidParameter("the grid has no interior nodes".into()));
    }

    let ball = unit_ball_rule(GRID_DIMENSION, problem.rule_order)?;
    let edge = if problem.exponent.is_infinite() {
        Some(unit_sphere_rule(GRID_DIMENSION, 4 * problem.rule_order)?)
    } else {
        None
    };
    let mut tap = |y: [f64; 2]| -> Result<Tap> {
        if problem.domain.contains(&y) {
            Ok(grid.bilinear(&y))
        } else {
            Ok(Tap { index: [0; 4], weights: [0.0; 4], constant: track(g(&y))? })
        }
    };
    let mut taps = Vec::with_capacity(interior.len() * ball.len());
    let mut edge_taps = Vec::new();
    for &k in &interior {
        let x = grid.point(k % shape[0], k / shape[0]);
        for z in &ball.nodes {
            taps.push(tap([x[0] + eps * z[0], x[1] + eps * z[1]])?);
        }
        if let Some(sphere) = &edge {
            for z in &sphere.nodes {
                edge_taps.push(tap([x[0] + eps * z[0], x[1] + eps * z[1]])?);
            }
        }
    }
    // Interior starts at the mean of the strip data.
    let start = strip_sum / strip_count.max(1) as f64;
    for &k in &interior {
        values[k] = start;
    }
    Ok(Assembled {
        grid,
        kinds,
        interior,
        taps,
        taps_per_node: ball.len(),
        edge_per_node: edge.as_ref().map_or(0, |s| s.len()),
        edge_taps,
        weights: ball.weights,
        initial: values,
        boundary_min: bmin,
        boundary_max: bmax,
    })
}

impl Assembled {
    fn sample(tap: &Tap, u: &[f64]) -> f64 {
        tap.constant + (0..4).map(|k| tap.weights[k] * u[tap.index[k] as usize]).sum::<f64>()
    }

    /// `mu_p(eps, u)` at the `m`-th interior node.
    fn mean_at(&self, m: usize, u: &[f64], p: Exponent, scratch: &mut Vec<f64>) -> Result<f64> {
        scratch.clear();
        let taps = &self.taps[m * self.taps_per_node..(m + 1) * self.taps_per_node];
        scratch.extend(taps.iter().map(|t| Self::sample(t, u)));
        if p.is_infinite() {
            let edge = &self.edge_taps[m * self.edge_per_node..(m + 1) * self.edge_per_node];
            let center = u[self.interior[m]];
            let (lo, hi) = scratch
                .iter()
                .copied()
                .chain(edge.iter().map(|t| Self::sample(t, u)))
                .fold((center, center), |(a, b), v| (a.min(v), b.max(v)));
            return Ok(0.5 * (lo + hi));
        }
        Ok(p_mean_unchecked(scratch, &self.weights, p)?.mean)
    }

    /// One Jacobi sweep: every interior node from the previous iterate.
    fn sweep(&self, u: &[f64], p: Exponent) -> Result<Vec<f64>> {
        self.interior
            .par_iter()
            .enumerate()
            .map_init(Vec::new, |scratch, (m, _)| self.mean_at(m, u, p, scratch))
            .collect()
    }
}

/// Iterates until the sup-norm of the update drops below the tolerance or
/// `max_iterations` sweeps have run. A non-converged run is returned with
/// `converged = false`.
pub fn solve(problem: &GridProblem) -> Result<GridSolution> {
    problem.validate()?;
    let asm = assemble(problem)?;
    let p = problem.exponent.validate()?;
    let mut u = asm.initial.clone();
    let mut update_norms = Vec::new();
    let mut converged = false;
    while update_norms.len() < problem.max_iterations {
        let next = asm.sweep(&u, p)?;
        let mut change = 0.0_f64;
        for (&k, v) in asm.interior.iter().zip(next) {
            change = change.max((v - u[k]).abs());
            u[k] = v;
        }
        update_norms.push(change);
        if change < problem.tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        log::warn!("grid iteration stopped after {} sweeps without meeting the tolerance", update_norms.len());
    }
    let residual = asm.sweep(&u, p)?;
    let mut residual_at = vec![0.0; u.len()];
    for (&k, m) in asm.interior.iter().zip(residual) {
        residual_at[k] = u[k] - m;
    }
    let shape = asm.grid.shape;
    let nodes = asm
        .kinds
        .iter()
        .enumerate()
        .filter_map(|(k, kind)| {
            kind.map(|kind| {
                let [x, y] = asm.grid.point(k % shape[0], k / shape[0]);
                GridNode { x, y, kind, value: u[k], residual: residual_at[k] }
            })
        })
        .collect();
    Ok(GridSolution {
        problem: problem.echo(),
        nodes,
        iterations_used: update_norms.len(),
        final_update_norm: update_norms.last().copied().unwrap_or(0.0),
        update_norms,
        converged,
        boundary_min: asm.boundary_min,
        boundary_max: asm.boundary_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual_sup: f64,
    pub residual_mean: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_sup: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_mean: Option<f64>,
}

/// Sup and mean of `|u - mu_p(eps, u)|` over the interior and, given an
/// exact solution, of the interior error.
pub fn residual_report(solution: &GridSolution, exact: Option<&SmoothField>) -> ResidualReport {
    let interior: Vec<&GridNode> = solution.nodes.iter().filter(|n| n.kind == NodeKind::Interior).collect();
    let count = interior.len().max(1) as f64;
    let sup_mean = |it: &mut dyn Iterator<Item = f64>| {
        let (s, m) = it.fold((0.0_f64, 0.0), |(s, m), v| (s.max(v), m + v));
        (s, m / count)
    };
    let (residual_sup, residual_mean) = sup_mean(&mut interior.iter().map(|n| n.residual.abs()));
    let errors = exact.map(|f| sup_mean(&mut interior.iter().map(|n| (n.value - f.eval(&[n.x, n.y], 0.0)).abs())));
    ResidualReport { residual_sup, residual_mean, error_sup: errors.map(|e| e.0), error_mean: errors.map(|e| e.1) }
}

#[derive(Serialize)]
struct CsvRow {
    x: f64,
    y: f64,
    kind: NodeKind,
    value: f64,
    residual: f64,
}

impl GridSolution {
    /// `x, y, kind, value, residual` per node.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for n in &self.nodes {
            w.serialize(CsvRow { x: n.x, y: n.y, kind: n.kind, value: n.value, residual: n.residual })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn interior_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Interior).map(|n| n.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Domain {
        Domain::Box { lower: [0.0, 0.0], upper: [1.0, 1.0] }
    }

    #[test]
    fn constant_boundary_settles_in_one_sweep() {
        let g = SmoothField::new("const", 2, |_, _| 3.0);
        let problem = GridProblem::new(unit_square(), 1.0 / 16.0, Exponent::Finite(3.0), g);
        let s = solve(&problem).unwrap();
        assert!(s.converged);
        assert_eq!(s.iterations_used, 1);
        assert!(s.interior_values().all(|v| v == 3.0));
    }

    #[test]
    fn affine_boundary_is_reproduced() {
        for p in [Exponent::One, Exponent::Two, Exponent::Finite(4.0), Exponent::Infinity] {
            let g = SmoothField::new("affine", 2, |y, _| 0.5 + y[0] - 2.0 * y[1]);
            let mut problem = GridProblem::new(unit_square(), 1.0 / 16.0, p, g.clone());
            problem.tolerance = 1e-9;
            let s = solve(&problem).unwrap();
            assert!(s.converged, "{p}");
            let r = residual_report(&s, Some(&g));
            assert!(r.error_sup.unwrap() < 1e-6, "{p}: {r:?}");
        }
    }

    #[test]
    fn harmonic_square_problem() {
        let g = SmoothField::new("saddle", 2, |y, _| y[0] * y[0] - y[1] * y[1]);
        let mut problem = GridProblem::new(unit_square(), 1.0 / 32.0, Exponent::Two, g.clone());
        problem.epsilon = 1.0 / 8.0;
        let s = solve(&problem).unwrap();
        assert!(s.converged);
        let r = residual_report(&s, Some(&g));
        assert!(r.error_sup.unwrap() <= 2e-2, "{r:?}");
        assert!(r.residual_sup <= problem.tolerance);
        assert!(s.interior_values().all(|v| v >= s.boundary_min && v <= s.boundary_max));
        assert!(s.update_norms.windows(2).skip(4).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn iteration_cap_is_flagged() {
        let g = SmoothField::new("saddle", 2, |y, _| y[0] * y[0] - y[1] * y[1]);
        let mut problem = GridProblem::new(unit_square(), 1.0 / 16.0, Exponent::Two, g);
        problem.max_iterations = 1;
        let s = solve(&problem).unwrap();
        assert!(!s.converged);
        assert_eq!(s.iterations_used, 1);
    }

    #[test]
    fn rejects_bad_problems() {
        let g = SmoothField::new("const", 2, |_, _| 0.0);
        let mut problem = GridProblem::new(unit_square(), 0.1, Exponent::Two, g.clone());
        problem.epsilon = 0.15;
        assert!(solve(&problem).is_err());
        let g3 = SmoothField::new("const", 3, |_, _| 0.0);
        assert!(matches!(
            solve(&GridProblem::new(unit_square(), 0.1, Exponent::Two, g3)),
            Err(Error::UnsupportedDimension { .. })
        ));
    }
}
