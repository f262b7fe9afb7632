//! Quadrature rules for the unit ball, the unit sphere and the unit heat ball.
//!
//! Every rule lives in unit coordinates. Evaluating a mean on `B_eps(x)` or
//! on the heat ball `E_eps(x, t)` goes through [`stencil`], which applies the
//! affine map `z -> x + eps z` (and `sigma -> t - eps^2 sigma` in time) and
//! leaves the weights untouched: the p-mean is invariant under that
//! rescaling, so one rule serves every radius.
//!
//! Heat-ball nodes carry `N + 1` coordinates `(z, sigma)` and the weights
//! absorb the caloric density `|z|^2 / sigma^2`, so the weights of the full
//! rule add up to `4`.

pub mod gauss;

use crate::error::{Error, Result};
use crate::geometry::{dot, frame_with_axis, norm, unit_ball_volume};
use gauss::{composite_gauss_legendre, gauss_jacobi_unit, gauss_legendre, gauss_legendre_on};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;
use std::f64::consts::PI;

/// Largest dimension served by the deterministic product rules.
pub const MAX_DETERMINISTIC_DIMENSION: usize = 6;

/// Default truncation of the heat-ball time variable `tau = -log(4 pi sigma)`.
pub const DEFAULT_TAU_MAX: f64 = 40.0;

/// Relative tail of the caloric mass beyond `tau_max` that is still accepted.
pub const HEAT_TAIL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    Ball,
    Sphere,
    HeatBall,
}

/// Extra density `|axis . y|^exponent` folded into a rule's weights.
///
/// Rules built with this weight integrate the singular kernels of the
/// `|xi . y|^(p-2)` moment identities exactly for polynomial integrands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxialWeight {
    /// Unit vector.
    pub axis: Vec<f64>,
    pub exponent: f64,
}

impl AxialWeight {
    pub fn new(axis: &[f64], exponent: f64) -> Result<Self> {
        let len = norm(axis);
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::InvalidParameter("axial weight needs a nonzero axis".into()));
        }
        if !(exponent > -1.0) || !exponent.is_finite() {
            return Err(Error::InvalidParameter(format!("axial exponent must be finite and > -1, got {exponent}")));
        }
        Ok(Self { axis: axis.iter().map(|a| a / len).collect(), exponent })
    }

    /// Whether this weight equals `|xi . y|^exponent` up to a constant factor.
    pub fn matches(&self, xi: &[f64], exponent: f64) -> bool {
        let len = norm(xi);
        if len == 0.0 || (self.exponent - exponent).abs() > 1e-14 {
            return false;
        }
        (dot(&self.axis, xi) / len).abs() > 1.0 - 1e-13
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub dimension: usize,
    pub domain_kind: DomainKind,
    /// Polynomial exactness for balls and spheres, refinement level for heat balls.
    pub order: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axial_weight: Option<AxialWeight>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `sum_i w_i f(node_i)`.
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(z, w)| w * f(z)).sum()
    }

    /// The spatial part of node `i` (drops the heat-ball time coordinate).
    pub fn space(&self, i: usize) -> &[f64] {
        &self.nodes[i][..self.dimension]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn check_dimension(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::UnsupportedDimension { dim: n, hint: "dimension too small for this domain" });
    }
    if n > MAX_DETERMINISTIC_DIMENSION {
        return Err(Error::UnsupportedDimension { dim: n, hint: "use monte_carlo_ball_rule" });
    }
    Ok(())
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidParameter("rule order must be at least 1".into()));
    }
    Ok(())
}

/// Directions and weights on `S^{n-1}`, `n >= 1`, exact for polynomials of
/// degree `<= order`. With an axial weight the density is `|axis . theta|^gamma`.
pub(crate) fn sphere_directions(n: usize, order: usize, axial: Option<&AxialWeight>) -> (Vec<Vec<f64>>, Vec<f64>) {
    if n == 1 {
        // S^0 = {-1, +1} with counting measure; |theta|^gamma = 1 there.
        return (vec![vec![-1.0], vec![1.0]], vec![1.0, 1.0]);
    }
    if let Some(aw) = axial {
        return axial_sphere_directions(n, order, aw);
    }
    match n {
        2 => {
            let mut m = order + 1;
            if m % 2 == 1 {
                m += 1;
            }
            let w = 2.0 * PI / m as f64;
            let nodes = (0..m)
                .map(|k| {
                    let phi = 2.0 * PI * k as f64 / m as f64;
                    vec![phi.cos(), phi.sin()]
                })
                .collect();
            (nodes, vec![w; m])
        }
        3 => {
            let (u, wu) = gauss_legendre(order.div_ceil(2).max(1) + usize::from(order.is_multiple_of(2)));
            let (circle, wc) = sphere_directions(2, order, None);
            let mut nodes = Vec::with_capacity(u.len() * circle.len());
            let mut weights = Vec::with_capacity(u.len() * circle.len());
            for (ui, wi) in u.iter().zip(&wu) {
                let s = (1.0 - ui * ui).sqrt();
                for (c, wc) in circle.iter().zip(&wc) {
                    nodes.push(vec![s * c[0], s * c[1], *ui]);
                    weights.push(wi * wc);
                }
            }
            (nodes, weights)
        }
        _ => {
            // theta = (sqrt(1 - u^2) omega, u) with density (1 - u^2)^((n-3)/2).
            let c = (n as f64 - 3.0) / 2.0;
            let (x, wx) = gauss_jacobi_unit(order / 2 + 1, c, c);
            let scale = 2f64.powf(2.0 * c + 1.0);
            let (inner, wi) = sphere_directions(n - 1, order, None);
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (xk, wk) in x.iter().zip(&wx) {
                let u = 2.0 * xk - 1.0;
                let s = (1.0 - u * u).max(0.0).sqrt();
                for (om, wo) in inner.iter().zip(&wi) {
                    let mut p: Vec<f64> = om.iter().map(|o| s * o).collect();
                    p.push(u);
                    nodes.push(p);
                    weights.push(scale * wk * wo);
                }
            }
            (nodes, weights)
        }
    }
}

/// Sphere rule for the density `|d . theta|^gamma` built in a frame whose
/// first axis is `d`: `theta = u d + sqrt(1 - u^2) omega`, `u = +-sqrt(x)`,
/// with Gauss–Jacobi in `x` and a plain rule for `omega` on `S^{n-2}`.
fn axial_sphere_directions(n: usize, order: usize, aw: &AxialWeight) -> (Vec<Vec<f64>>, Vec<f64>) {
    let frame = frame_with_axis(&aw.axis);
    let a = (aw.exponent - 1.0) / 2.0;
    let b = (n as f64 - 3.0) / 2.0;
    let (x, wx) = gauss_jacobi_unit(order / 2 + 1, a, b);
    let (inner, wi) = sphere_directions(n - 1, order, None);
    let mut nodes = Vec::with_capacity(2 * x.len() * inner.len());
    let mut weights = Vec::with_capacity(2 * x.len() * inner.len());
    for (xk, wk) in x.iter().zip(&wx) {
        let u = xk.sqrt();
        let s = (1.0 - xk).max(0.0).sqrt();
        for sign in [-1.0, 1.0] {
            for (om, wo) in inner.iter().zip(&wi) {
                let mut p = vec![0.0; n];
                for (i, fr) in frame.iter().enumerate() {
                    let coef = if i == 0 { sign * u } else { s * om[i - 1] };
                    for (pj, fj) in p.iter_mut().zip(fr) {
                        *pj += coef * fj;
                    }
                }
                nodes.push(p);
                weights.push(0.5 * wk * wo);
            }
        }
    }
    (nodes, weights)
}

/// Product rule on the unit ball `B_1(0)`: Gauss–Legendre in the radius
/// against a sphere rule. Exact for polynomials of total degree `<= order`.
pub fn unit_ball_rule(n: usize, order: usize) -> Result<QuadratureRule> {
    check_dimension(n, 1)?;
    check_order(order)?;
    if n == 1 {
        let (x, w) = gauss_legendre(order / 2 + 1);
        return Ok(QuadratureRule {
            dimension: 1,
            domain_kind: DomainKind::Ball,
            order,
            nodes: x.into_iter().map(|x| vec![x]).collect(),
            weights: w,
            axial_weight: None,
        });
    }
    let (r, wr) = gauss_legendre_on((order + n).div_ceil(2), 0.0, 1.0);
    let radial: Vec<(f64, f64)> = r.iter().zip(&wr).map(|(r, w)| (*r, w * r.powi(n as i32 - 1))).collect();
    Ok(ball_product(n, order, &radial, None))
}

/// Ball rule for the density `|axis . y|^exponent`.
pub fn axial_ball_rule(n: usize, order: usize, weight: AxialWeight) -> Result<QuadratureRule> {
    check_dimension(n, 2)?;
    check_order(order)?;
    if weight.axis.len() != n {
        return Err(Error::InvalidParameter("axis length differs from the dimension".into()));
    }
    // |axis . r theta|^g r^(n-1) = r^(n-1+g) |axis . theta|^g
    let (r, wr) = gauss_jacobi_unit(order / 2 + 1, n as f64 - 1.0 + weight.exponent, 0.0);
    let radial: Vec<(f64, f64)> = r.into_iter().zip(wr).collect();
    Ok(ball_product(n, order, &radial, Some(weight)))
}

fn ball_product(n: usize, order: usize, radial: &[(f64, f64)], axial: Option<AxialWeight>) -> QuadratureRule {
    let (dirs, wd) = sphere_directions(n, order, axial.as_ref());
    let mut nodes = Vec::with_capacity(radial.len() * dirs.len());
    let mut weights = Vec::with_capacity(radial.len() * dirs.len());
    for &(r, w) in radial {
        for (d, wdk) in dirs.iter().zip(&wd) {
            nodes.push(d.iter().map(|x| r * x).collect());
            weights.push(w * wdk);
        }
    }
    QuadratureRule { dimension: n, domain_kind: DomainKind::Ball, order, nodes, weights, axial_weight: axial }
}

/// Rule on the unit sphere `S^{N-1}`, `N >= 2`, exact for polynomials of
/// degree `<= order`. `N = 2` uses equispaced angles, `N = 3` Gauss–Legendre
/// in `cos(theta)` against equispaced azimuths.
pub fn unit_sphere_rule(n: usize, order: usize) -> Result<QuadratureRule> {
    check_dimension(n, 2)?;
    check_order(order)?;
    let (nodes, weights) = sphere_directions(n, order, None);
    Ok(QuadratureRule { dimension: n, domain_kind: DomainKind::Sphere, order, nodes, weights, axial_weight: None })
}

/// Sphere rule for the density `|axis . theta|^exponent`.
pub fn axial_sphere_rule(n: usize, order: usize, weight: AxialWeight) -> Result<QuadratureRule> {
    check_dimension(n, 2)?;
    check_order(order)?;
    if weight.axis.len() != n {
        return Err(Error::InvalidParameter("axis length differs from the dimension".into()));
    }
    let (nodes, weights) = sphere_directions(n, order, Some(&weight));
    Ok(QuadratureRule {
        dimension: n,
        domain_kind: DomainKind::Sphere,
        order,
        nodes,
        weights,
        axial_weight: Some(weight),
    })
}

/// Panel breaks for the heat-ball time variable `tau` on `(0, tau_max)`:
/// geometrically graded towards `tau = 0`, where non-integer powers of `tau`
/// appear, then uniform panels of width 8.
pub(crate) fn tau_breaks(tau_max: f64) -> Vec<f64> {
    let mut breaks = vec![0.0];
    let mut t = 1.0 / 64.0;
    while t < 16.0 && t < tau_max {
        breaks.push(t);
        t *= 2.0;
    }
    let mut t = 16.0;
    while t < tau_max {
        breaks.push(t);
        t += 8.0;
    }
    breaks.push(tau_max);
    breaks
}

/// Node counts `(tau per panel, radial, angular order)` of the heat rule.
fn heat_counts(n: usize, order: usize) -> (usize, usize, usize) {
    let tau = (order / 2).max(6);
    let radial = (2 * order / 3).max(8);
    let angular = if n == 2 { (8 * order / 3).max(8) - 1 } else { order.max(8) };
    (tau, radial, angular)
}

/// Relative caloric mass lost beyond `tau_max` for the density
/// `|z|^(2 + gamma) sigma^-2`: the `tau` integrand is `tau^a e^(-(a-1) tau)`
/// with `a = (N + 2 + gamma) / 2`.
pub fn heat_tail_estimate(n: usize, gamma: f64, tau_max: f64) -> f64 {
    let a = (n as f64 + 2.0 + gamma) / 2.0;
    gamma_ur(a + 1.0, (a - 1.0) * tau_max)
}

/// Rule on the unit heat ball `E = {0 < sigma < 1/(4 pi), Phi(z, sigma) > 1}`
/// with the caloric density `|z|^2 / sigma^2` folded into the weights.
///
/// Built in the variables `tau = -log(4 pi sigma)` (composite Gauss–Legendre
/// on `(0, tau_max)`), `s = |z| / R(tau)` with `R^2 = 2 N sigma tau`
/// (Gauss–Legendre on `(0, 1)`) and a sphere rule.
pub fn heat_ball_rule(n: usize, order: usize, tau_max: f64) -> Result<QuadratureRule> {
    heat_ball_rule_with(n, order, tau_max, None)
}

/// Heat-ball rule whose weights also carry `|axis . z|^exponent`.
pub fn axial_heat_ball_rule(n: usize, order: usize, tau_max: f64, weight: AxialWeight) -> Result<QuadratureRule> {
    if weight.axis.len() != n {
        return Err(Error::InvalidParameter("axis length differs from the dimension".into()));
    }
    heat_ball_rule_with(n, order, tau_max, Some(weight))
}

fn heat_ball_rule_with(n: usize, order: usize, tau_max: f64, axial: Option<AxialWeight>) -> Result<QuadratureRule> {
    check_dimension(n, 2)?;
    check_order(order)?;
    let gamma = axial.as_ref().map_or(0.0, |a| a.exponent);
    if !(tau_max >= 30.0) || !tau_max.is_finite() {
        return Err(Error::Truncation { tau_max, tail: heat_tail_estimate(n, gamma, tau_max.max(0.0)) });
    }
    let tail = heat_tail_estimate(n, gamma, tau_max);
    if tail > HEAT_TAIL_TOLERANCE {
        return Err(Error::Truncation { tau_max, tail });
    }
    let (n_tau, n_rad, ang_order) = heat_counts(n, order);
    let (taus, wtau) = composite_gauss_legendre(&tau_breaks(tau_max), n_tau);
    let (s, ws) = gauss_legendre_on(n_rad, 0.0, 1.0);
    let (dirs, wd) = sphere_directions(n, ang_order, axial.as_ref());
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(taus.len() * s.len() * dirs.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (tau, wt) in taus.iter().zip(&wtau) {
        let sigma = (-tau).exp() / (4.0 * PI);
        let radius = (2.0 * nf * sigma * tau).sqrt();
        // dsigma = sigma dtau; density |z|^(2+g) sigma^-2; dz = R^n s^(n-1) ds dS.
        let outer = wt * radius.powf(nf + 2.0 + gamma) / sigma;
        for (sk, wsk) in s.iter().zip(&ws) {
            let radial = outer * wsk * sk.powf(nf + 1.0 + gamma);
            let r = radius * sk;
            for (d, wdk) in dirs.iter().zip(&wd) {
                let mut node: Vec<f64> = d.iter().map(|x| r * x).collect();
                node.push(sigma);
                nodes.push(node);
                weights.push(radial * wdk);
            }
        }
    }
    Ok(QuadratureRule { dimension: n, domain_kind: DomainKind::HeatBall, order, nodes, weights, axial_weight: axial })
}

/// Seeded Monte Carlo rule on the unit ball with equal weights `|B_1| / count`.
pub fn monte_carlo_ball_rule(n: usize, count: usize, seed: u64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::UnsupportedDimension { dim: 0, hint: "dimension must be positive" });
    }
    if count < 1000 {
        return Err(Error::InvalidParameter(format!("Monte Carlo rule needs count >= 1000, got {count}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = unit_ball_volume(n) / count as f64;
    let mut nodes = Vec::with_capacity(count);
    for _ in 0..count {
        let mut g: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let len = norm(&g);
        let r: f64 = rng.random::<f64>().powf(1.0 / n as f64);
        g.iter_mut().for_each(|x| *x *= r / len);
        nodes.push(g);
    }
    Ok(QuadratureRule {
        dimension: n,
        domain_kind: DomainKind::Ball,
        order: 0,
        nodes,
        weights: vec![w; count],
        axial_weight: None,
    })
}

/// A rule placed at a center and radius: `x + eps z`, and for heat balls
/// `(x + eps z, t - eps^2 sigma)` (time stored as the last coordinate).
#[derive(Debug, Clone)]
pub struct EvaluationStencil<'a> {
    pub center: Vec<f64>,
    pub time: Option<f64>,
    pub radius: f64,
    pub rule: &'a QuadratureRule,
    pub evaluation_points: Vec<Vec<f64>>,
}

impl EvaluationStencil<'_> {
    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }
}

pub fn stencil<'a>(rule: &'a QuadratureRule, x: &[f64], eps: f64, t: Option<f64>) -> Result<EvaluationStencil<'a>> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::NonPositiveRadius(eps));
    }
    if x.len() != rule.dimension {
        return Err(Error::InvalidParameter(format!(
            "center has dimension {} but the rule has {}",
            x.len(),
            rule.dimension
        )));
    }
    let heat = rule.domain_kind == DomainKind::HeatBall;
    if heat != t.is_some() {
        return Err(Error::InvalidParameter("a time coordinate is required exactly for heat-ball rules".into()));
    }
    let n = rule.dimension;
    let evaluation_points = rule
        .nodes
        .iter()
        .map(|z| {
            let mut p: Vec<f64> = (0..n).map(|i| x[i] + eps * z[i]).collect();
            if let Some(t) = t {
                p.push(t - eps * eps * z[n]);
            }
            p
        })
        .collect();
    Ok(EvaluationStencil { center: x.to_vec(), time: t, radius: eps, rule, evaluation_points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_area_and_symmetry() {
        let rule = unit_ball_rule(2, 8).unwrap();
        assert!((rule.total_weight() - PI).abs() < 1e-12 * PI);
        let r = unit_ball_rule(2, 4).unwrap();
        assert!(r.integrate(|y| y[0] * y[1]).abs() < 1e-14);
    }

    #[test]
    fn ball_second_moment_in_three_dimensions() {
        let rule = unit_ball_rule(3, 6).unwrap();
        let q = rule.integrate(|y| y[0] * y[0]);
        assert!((q - 4.0 * PI / 15.0).abs() < 1e-13);
    }

    #[test]
    fn sphere_basics() {
        let c = unit_sphere_rule(2, 8).unwrap();
        assert!((c.total_weight() - 2.0 * PI).abs() < 1e-13);
        assert!(c.integrate(|y| y[0]).abs() < 1e-14);
        let s = unit_sphere_rule(3, 8).unwrap();
        assert!((s.integrate(|y| y[0] * y[0]) - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    fn sphere_abs_moment(n: usize, g: f64) -> f64 {
        // int_{S^{n-1}} |theta_1|^g
        use statrs::function::gamma::gamma;
        2.0 * PI.powf((n as f64 - 1.0) / 2.0) * gamma((g + 1.0) / 2.0) / gamma((n as f64 + g) / 2.0)
    }

    #[test]
    fn higher_dimensional_rules_are_exact() {
        use crate::geometry::unit_sphere_area;
        for n in 2..=6 {
            let s = unit_sphere_rule(n, 6).unwrap();
            assert!((s.total_weight() - unit_sphere_area(n)).abs() < 1e-12 * unit_sphere_area(n), "n={n}");
            let q = s.integrate(|y| y[0].powi(4));
            assert!((q - sphere_abs_moment(n, 4.0)).abs() < 1e-12, "n={n}");
            let q = s.integrate(|y| y[0] * y[0] * y[n - 1] * y[n - 1]);
            assert!((q - sphere_abs_moment(n, 4.0) / 3.0).abs() < 1e-12, "n={n}");
            let b = unit_ball_rule(n, 6).unwrap();
            assert!((b.total_weight() - unit_ball_volume(n)).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn axial_rules_integrate_singular_weights() {
        for n in 2..=4 {
            for g in [-0.5, 0.5, 1.0, 2.0] {
                let axis: Vec<f64> = (0..n).map(|i| 0.3 + i as f64).collect();
                let aw = AxialWeight::new(&axis, g).unwrap();
                let d = aw.axis.clone();
                let s = axial_sphere_rule(n, 8, aw.clone()).unwrap();
                assert!((s.total_weight() - sphere_abs_moment(n, g)).abs() < 1e-11, "n={n} g={g}");
                // int |d.th|^g (d.th)^2 = moment of order g + 2
                let q = s.integrate(|y| dot(&d, y).powi(2));
                assert!((q - sphere_abs_moment(n, g + 2.0)).abs() < 1e-11, "n={n} g={g}");
                let b = axial_ball_rule(n, 8, aw).unwrap();
                let exact = sphere_abs_moment(n, g + 2.0) / (n as f64 + g + 2.0);
                let q = b.integrate(|y| dot(&d, y).powi(2));
                assert!((q - exact).abs() < 1e-11, "n={n} g={g}");
            }
        }
    }

    #[test]
    fn rejects_unsupported_requests() {
        assert!(matches!(unit_ball_rule(7, 4), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(unit_sphere_rule(1, 4), Err(Error::UnsupportedDimension { .. })));
        assert!(unit_ball_rule(1, 4).is_ok());
        assert!(matches!(heat_ball_rule(2, 12, 10.0), Err(Error::Truncation { .. })));
        assert!(matches!(monte_carlo_ball_rule(3, 10, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn heat_ball_mass_and_membership() {
        let rule = heat_ball_rule(2, 24, DEFAULT_TAU_MAX).unwrap();
        assert!((rule.total_weight() - 4.0).abs() < 1e-6, "{}", rule.total_weight());
        assert!(rule.integrate(|z| z[0]).abs() < 1e-12);
        for z in &rule.nodes {
            let sigma = z[2];
            assert!(sigma > 0.0 && sigma < 1.0 / (4.0 * PI));
            let r2 = z[0] * z[0] + z[1] * z[1];
            assert!(r2 < -2.0 * 2.0 * sigma * (4.0 * PI * sigma).ln());
        }
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let a = monte_carlo_ball_rule(5, 2000, 42).unwrap();
        let b = monte_carlo_ball_rule(5, 2000, 42).unwrap();
        assert_eq!(a, b);
        assert!((a.total_weight() - unit_ball_volume(5)).abs() < 1e-12);
        assert!(a.nodes.iter().all(|z| norm(z) <= 1.0));
    }

    #[test]
    fn stencil_maps_nodes() {
        let rule = unit_ball_rule(2, 4).unwrap();
        let st = stencil(&rule, &[0.0, 0.0], 1.0, None).unwrap();
        assert_eq!(st.evaluation_points, rule.nodes);
        let st = stencil(&rule, &[1.0, 0.0], 1.0, None).unwrap();
        for (p, z) in st.evaluation_points.iter().zip(&rule.nodes) {
            assert_eq!(p[0], 1.0 + z[0]);
            assert_eq!(p[1], z[1]);
        }
        assert!(matches!(stencil(&rule, &[0.0, 0.0], 0.0, None), Err(Error::NonPositiveRadius(_))));
        assert!(stencil(&rule, &[0.0, 0.0], 1.0, Some(0.0)).is_err());
    }

    #[test]
    fn heat_stencil_time_map() {
        let rule = QuadratureRule {
            dimension: 1,
            domain_kind: DomainKind::HeatBall,
            order: 1,
            nodes: vec![vec![0.0, 1.0 / (8.0 * PI)]],
            weights: vec![1.0],
            axial_weight: None,
        };
        let st = stencil(&rule, &[0.0], 0.5, Some(1.0)).unwrap();
        assert!((st.evaluation_points[0][1] - (1.0 - 1.0 / (32.0 * PI))).abs() < 1e-15);
    }

    #[test]
    fn json_document_round_trips() {
        let rule = unit_sphere_rule(2, 3).unwrap();
        let text = rule.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["dimension", "domain_kind", "order", "nodes", "weights"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(QuadratureRule::from_json(&text).unwrap(), rule);
    }
}
