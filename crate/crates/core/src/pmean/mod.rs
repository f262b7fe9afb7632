//! Variational p-means of weighted samples and of fields over balls,
//! spheres and heat balls.
//!
//! For finite `p > 1` the mean is the unique root of the characterization
//! residual `g(lambda) = sum_i w_i |u_i - lambda|^(p-2) (u_i - lambda)`.
//! `p = 1` is the weighted median, `p = 2` the weighted average and
//! `p = inf` the midpoint of the range.

pub mod compare;
pub mod resolved;

use crate::error::{Error, Result};
use crate::measure::{stencil, DomainKind, QuadratureRule};
use crate::roots::{brent, RootTolerance};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Finite exponents above this are evaluated as `p = inf`: after
/// normalization to `[-1, 1]` the powers `|.|^(p-2)` underflow.
pub const MAX_FINITE_EXPONENT: f64 = 64.0;

const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    One,
    Two,
    Infinity,
    Finite(f64),
}

impl Exponent {
    /// Builds an exponent from a real `p >= 1`, mapping `1`, `2` and `inf`
    /// to their closed-form variants.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!("exponent must satisfy p >= 1, got {p}")));
        }
        Ok(if p == 1.0 {
            Exponent::One
        } else if p == 2.0 {
            Exponent::Two
        } else if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        })
    }

    /// Checks the `Finite` invariant (`1 < p < inf`).
    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(p) if !(p > 1.0 && p.is_finite()) => {
                Err(Error::InvalidParameter(format!("Finite exponent needs 1 < p < inf, got {p}")))
            }
            e => Ok(e),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Two => 2.0,
            Exponent::Infinity => f64::INFINITY,
            Exponent::Finite(p) => p,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinity => write!(f, "inf"),
            e => write!(f, "{}", e.value()),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "inf" | "infinity" | "oo") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = t.parse().map_err(|_| Error::InvalidParameter(format!("cannot parse exponent {s:?}")))?;
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Infinity => serializer.serialize_str("inf"),
            e => serializer.serialize_f64(e.value()),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(p) => Exponent::new(p).map_err(serde::de::Error::custom),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSamples {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedSamples {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        validate(&values, &weights)?;
        Ok(Self { values, weights })
    }

    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; values.len()];
        Self::new(values, weights)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn validate(values: &[f64], weights: &[f64]) -> Result<()> {
    if values.len() != weights.len() {
        return Err(Error::LengthMismatch { values: values.len(), weights: weights.len() });
    }
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    if let Some(index) = weights.iter().position(|w| !(*w > 0.0 && w.is_finite())) {
        return Err(Error::NonPositiveWeight { index });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PMeanResult {
    pub mean: f64,
    /// Characterization residual at `mean`, in the units of the input (0 for `p = 2, inf`).
    pub residual: f64,
    pub iterations: usize,
    pub bracket_width: f64,
}

impl PMeanResult {
    fn exact(mean: f64) -> Self {
        Self { mean, residual: 0.0, iterations: 0, bracket_width: 0.0 }
    }
}

/// `|s|^(p-2) s` with the zero-at-tie convention and fast integer paths.
#[inline]
pub(crate) fn signed_power(s: f64, p: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        s
    } else if p == 3.0 {
        s * s.abs()
    } else if p == 4.0 {
        s * s * s
    } else {
        s.abs().powf(p - 1.0).copysign(s)
    }
}

fn residual_raw(values: &[f64], weights: &[f64], p: f64, lambda: f64) -> f64 {
    if p == 1.0 {
        values
            .iter()
            .zip(weights)
            .map(|(u, w)| {
                let s = u - lambda;
                if s > 0.0 {
                    *w
                } else if s < 0.0 {
                    -w
                } else {
                    0.0
                }
            })
            .sum()
    } else {
        values.iter().zip(weights).map(|(u, w)| w * signed_power(u - lambda, p)).sum()
    }
}

/// The characterization residual `g(lambda)`; `sum w_i sign(u_i - lambda)` for `p = 1`.
pub fn char_residual(s: &WeightedSamples, p: Exponent, lambda: f64) -> Result<f64> {
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent("inf (no residual form)".into()));
    }
    let p = p.validate()?.value();
    Ok(residual_raw(&s.values, &s.weights, p, lambda))
}

/// Weighted median: balances the weight above and below. When a whole
/// interval balances, returns the midpoint of that interval.
pub fn weighted_median(s: &WeightedSamples) -> f64 {
    median_raw(&s.values, &s.weights)
}

pub(crate) fn median_raw(values: &[f64], weights: &[f64]) -> f64 {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let total: f64 = weights.iter().sum();
    let half = 0.5 * total;
    let slack = 4.0 * f64::EPSILON * total * (values.len() as f64).sqrt();
    let mut below = 0.0;
    for (k, &i) in idx.iter().enumerate() {
        below += weights[i];
        if below >= half - slack {
            if (below - half).abs() <= slack && k + 1 < idx.len() {
                return 0.5 * (values[i] + values[idx[k + 1]]);
            }
            return values[i];
        }
    }
    values[idx[idx.len() - 1]]
}

/// The p-mean of validated samples.
pub fn p_mean(s: &WeightedSamples, p: Exponent) -> Result<PMeanResult> {
    validate(&s.values, &s.weights)?;
    p_mean_unchecked(&s.values, &s.weights, p.validate()?)
}

/// [`p_mean`] on raw slices; callers guarantee valid, non-empty input.
pub(crate) fn p_mean_unchecked(values: &[f64], weights: &[f64], p: Exponent) -> Result<PMeanResult> {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    match p {
        Exponent::Two => {
            let total: f64 = weights.iter().sum();
            let m = values.iter().zip(weights).map(|(u, w)| u * w).sum::<f64>() / total;
            Ok(PMeanResult::exact(m.clamp(lo, hi)))
        }
        Exponent::Infinity => Ok(PMeanResult::exact(0.5 * (lo + hi))),
        Exponent::One => {
            let m = median_raw(values, weights);
            Ok(PMeanResult {
                mean: m,
                residual: residual_raw(values, weights, 1.0, m),
                iterations: 0,
                bracket_width: 0.0,
            })
        }
        Exponent::Finite(p) if p > MAX_FINITE_EXPONENT => {
            log::warn!("exponent {p} exceeds {MAX_FINITE_EXPONENT}; evaluating the p = inf mean instead");
            Ok(PMeanResult::exact(0.5 * (lo + hi)))
        }
        Exponent::Finite(p) => finite_root(values, weights, p, lo, hi),
    }
}

/// Root of the residual after the affine normalization of the data to `[-1, 1]`.
fn finite_root(values: &[f64], weights: &[f64], p: f64, lo: f64, hi: f64) -> Result<PMeanResult> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    if !(half > 0.0) {
        return Ok(PMeanResult::exact(center));
    }
    let scaled: Vec<f64> = values.iter().map(|u| ((u - center) / half).clamp(-1.0, 1.0)).collect();
    let total: f64 = weights.iter().sum();
    let g = |l: f64| residual_raw(&scaled, weights, p, l);
    let (ga, gb) = (g(-1.0), g(1.0));
    let tol = RootTolerance { x: 2e-14, f: 1e-12 * total * 2f64.powf(p - 1.0), max_iterations: MAX_ITERATIONS };
    let root = brent(g, -1.0, 1.0, ga, gb, tol);
    if !root.x.is_finite() {
        return Err(Error::Numerical("p-mean root search produced a non-finite value".into()));
    }
    let mean = (center + half * root.x).clamp(lo, hi);
    Ok(PMeanResult {
        mean,
        residual: root.fx * half.powf(p - 1.0),
        iterations: root.iterations,
        bracket_width: root.bracket * half,
    })
}

fn require_kind(rule: &QuadratureRule, kind: DomainKind) -> Result<()> {
    if rule.domain_kind != kind {
        return Err(Error::MismatchedRule(format!("expected a {kind:?} rule, got {:?}", rule.domain_kind)));
    }
    Ok(())
}

fn evaluate_on<F: Fn(&[f64]) -> f64 + ?Sized>(u: &F, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let values: Vec<f64> = points.iter().map(|y| u(y)).collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    Ok(values)
}

/// `mu_p(eps, u)(x)`, the p-mean of `u` over `B_eps(x)`.
///
/// For `p = inf` the extrema are also searched over `boundary`, a sphere rule
/// placed on `dB_eps(x)`, and at the center, when a boundary rule is given.
pub fn p_mean_ball<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: Exponent,
    rule: &QuadratureRule,
    boundary: Option<&QuadratureRule>,
) -> Result<PMeanResult> {
    require_kind(rule, DomainKind::Ball)?;
    let st = stencil(rule, x, eps, None)?;
    let values = evaluate_on(u, &st.evaluation_points)?;
    if let (Exponent::Infinity, Some(sphere)) = (p, boundary) {
        require_kind(sphere, DomainKind::Sphere)?;
        let mut edge = evaluate_on(u, &stencil(sphere, x, eps, None)?.evaluation_points)?;
        edge.push(u(x));
        let (lo, hi) =
            values.iter().chain(&edge).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        return Ok(PMeanResult::exact(0.5 * (lo + hi)));
    }
    p_mean_unchecked(&values, &rule.weights, p.validate()?)
}

/// The spherical p-mean of `u` over `dB_eps(x)`.
pub fn p_mean_sphere<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: Exponent,
    rule: &QuadratureRule,
) -> Result<PMeanResult> {
    require_kind(rule, DomainKind::Sphere)?;
    let st = stencil(rule, x, eps, None)?;
    let values = evaluate_on(u, &st.evaluation_points)?;
    p_mean_unchecked(&values, &rule.weights, p.validate()?)
}

/// `pi_p(eps, u)(x, t)`: the p-mean of `u(y, s)` over the heat ball
/// `E_eps(x, t)` with the caloric weights.
pub fn p_mean_heat<F: Fn(&[f64], f64) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    t: f64,
    eps: f64,
    p: Exponent,
    rule: &QuadratureRule,
) -> Result<PMeanResult> {
    require_kind(rule, DomainKind::HeatBall)?;
    let st = stencil(rule, x, eps, Some(t))?;
    let n = rule.dimension;
    let values: Vec<f64> = st.evaluation_points.iter().map(|y| u(&y[..n], y[n])).collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    p_mean_unchecked(&values, &rule.weights, p.validate()?)
}

fn extrema(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
}

/// `(N+2)/(N+p) * average + (p-2)/(2(N+p)) * (min + max)` over `B_eps(x)`,
/// with the extrema taken over the ball nodes, a boundary sphere rule and the center.
pub fn alt_mean_mpr<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: f64,
    ball: &QuadratureRule,
    sphere: &QuadratureRule,
) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::OutOfRange(format!("mpr mean needs p in (1, inf], got {p}")));
    }
    require_kind(ball, DomainKind::Ball)?;
    require_kind(sphere, DomainKind::Sphere)?;
    let inner = evaluate_on(u, &stencil(ball, x, eps, None)?.evaluation_points)?;
    let mut edge = evaluate_on(u, &stencil(sphere, x, eps, None)?.evaluation_points)?;
    edge.push(u(x));
    let (a, b) = extrema(&inner);
    let (c, d) = extrema(&edge);
    let (lo, hi) = (a.min(c), b.max(d));
    if p.is_infinite() {
        return Ok(0.5 * (lo + hi));
    }
    let avg = p_mean_unchecked(&inner, &ball.weights, Exponent::Two)?.mean;
    Ok(mpr_combination(avg, lo, hi, x.len(), p))
}

pub(crate) fn mpr_combination(avg: f64, lo: f64, hi: f64, n: usize, p: f64) -> f64 {
    let n = n as f64;
    (n + 2.0) / (n + p) * avg + 0.5 * (p - 2.0) / (n + p) * (lo + hi)
}

/// `(1/p) median + (p-1)/(2p) (min + max)` over `dB_eps(x)`.
pub fn alt_mean_hr1<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: f64,
    sphere: &QuadratureRule,
) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::OutOfRange(format!("hr1 mean needs p in [1, inf), got {p}")));
    }
    require_kind(sphere, DomainKind::Sphere)?;
    let edge = evaluate_on(u, &stencil(sphere, x, eps, None)?.evaluation_points)?;
    let med = median_raw(&edge, &sphere.weights);
    let (lo, hi) = extrema(&edge);
    Ok(med / p + (p - 1.0) / (2.0 * p) * (lo + hi))
}

/// `(2-p)/p median + 2(p-1)/p average` over `dB_eps(x)`, evaluated as written for any `p >= 1`.
pub fn alt_mean_hr2<F: Fn(&[f64]) -> f64 + ?Sized>(
    u: &F,
    x: &[f64],
    eps: f64,
    p: f64,
    sphere: &QuadratureRule,
) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::OutOfRange(format!("hr2 mean needs p in [1, inf), got {p}")));
    }
    require_kind(sphere, DomainKind::Sphere)?;
    let edge = evaluate_on(u, &stencil(sphere, x, eps, None)?.evaluation_points)?;
    let med = median_raw(&edge, &sphere.weights);
    let avg = p_mean_unchecked(&edge, &sphere.weights, Exponent::Two)?.mean;
    Ok((2.0 - p) / p * med + 2.0 * (p - 1.0) / p * avg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{unit_ball_rule, unit_sphere_rule};

    fn uniform(v: &[f64]) -> WeightedSamples {
        WeightedSamples::uniform(v.to_vec()).unwrap()
    }

    #[test]
    fn residual_examples() {
        let s = uniform(&[0.0, 1.0]);
        assert_eq!(char_residual(&s, Exponent::Finite(4.0), 0.5).unwrap(), 0.0);
        let s = uniform(&[0.0, 0.0, 1.0]);
        assert_eq!(char_residual(&s, Exponent::Finite(4.0), 0.0).unwrap(), 1.0);
        let s = uniform(&[1.0, 2.0, 3.0]);
        assert_eq!(char_residual(&s, Exponent::One, 2.0).unwrap(), 0.0);
        assert!(char_residual(&s, Exponent::Infinity, 2.0).is_err());
    }

    #[test]
    fn closed_form_means() {
        let s = uniform(&[1.0, 2.0, 3.0, 4.0, 10.0]);
        assert_eq!(p_mean(&s, Exponent::One).unwrap().mean, 3.0);
        assert_eq!(p_mean(&s, Exponent::Two).unwrap().mean, 4.0);
        assert_eq!(p_mean(&s, Exponent::Infinity).unwrap().mean, 5.5);
    }

    #[test]
    fn quartic_mean_of_three_points() {
        let s = uniform(&[0.0, 0.0, 1.0]);
        let m = p_mean(&s, Exponent::Finite(4.0)).unwrap().mean;
        // Independent check: scan |.|^4 cost on a fine grid, then compare to the closed form.
        let cost = |l: f64| 2.0 * l.powi(4) + (1.0 - l).powi(4);
        let scan = (0..=100_000).map(|k| k as f64 / 100_000.0).min_by(|a, b| cost(*a).total_cmp(&cost(*b))).unwrap();
        assert!((m - scan).abs() < 2e-5);
        assert!((m - 1.0 / (1.0 + 2f64.cbrt())).abs() < 1e-13);
    }

    #[test]
    fn median_tie_rules() {
        assert_eq!(weighted_median(&uniform(&[1.0, 2.0, 3.0])), 2.0);
        assert_eq!(weighted_median(&uniform(&[1.0, 2.0, 3.0, 4.0])), 2.5);
        let s = WeightedSamples::new(vec![0.0, 10.0], vec![3.0, 1.0]).unwrap();
        assert_eq!(weighted_median(&s), 0.0);
        // Brute-force L1 minimization: the optimal set for {1,2,3,4} is [2,3].
        let cost = |l: f64| [1.0, 2.0, 3.0, 4.0].iter().map(|u: &f64| (u - l).abs()).sum::<f64>();
        assert!((cost(2.5) - cost(2.0)).abs() < 1e-15 && cost(1.9) > cost(2.0));
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(matches!(WeightedSamples::uniform(vec![]), Err(Error::EmptySamples)));
        assert!(matches!(WeightedSamples::uniform(vec![f64::NAN]), Err(Error::NonFiniteValue { index: 0 })));
        assert!(matches!(
            WeightedSamples::new(vec![1.0, 2.0], vec![1.0, 0.0]),
            Err(Error::NonPositiveWeight { index: 1 })
        ));
        assert!(Exponent::Finite(0.5).validate().is_err());
    }

    #[test]
    fn finite_two_matches_average() {
        let s = WeightedSamples::new(vec![0.3, -1.2, 4.0, 2.2], vec![1.0, 0.5, 2.0, 0.1]).unwrap();
        let a = p_mean(&s, Exponent::Two).unwrap().mean;
        let b = p_mean(&s, Exponent::Finite(2.0)).unwrap().mean;
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn large_exponent_goes_to_midrange() {
        let s = uniform(&[0.0, 0.1, 1.0]);
        assert_eq!(p_mean(&s, Exponent::Finite(100.0)).unwrap().mean, 0.5);
    }

    #[test]
    fn exponent_parsing_and_json() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("1".parse::<Exponent>().unwrap(), Exponent::One);
        assert_eq!("2.0".parse::<Exponent>().unwrap(), Exponent::Two);
        assert_eq!("3.5".parse::<Exponent>().unwrap(), Exponent::Finite(3.5));
        assert!("0.5".parse::<Exponent>().is_err());
        assert_eq!(serde_json::to_string(&Exponent::Infinity).unwrap(), "\"inf\"");
        let e: Exponent = serde_json::from_str("4.0").unwrap();
        assert_eq!(e, Exponent::Finite(4.0));
    }

    #[test]
    fn ball_means_of_simple_fields() {
        let rule = unit_ball_rule(2, 12).unwrap();
        let sphere = unit_sphere_rule(2, 64).unwrap();
        for p in [Exponent::One, Exponent::Two, Exponent::Finite(3.0), Exponent::Infinity] {
            let m = p_mean_ball(&|_: &[f64]| 7.0, &[0.3, 0.1], 0.2, p, &rule, Some(&sphere)).unwrap();
            assert_eq!(m.mean, 7.0);
            let m =
                p_mean_ball(&|y: &[f64]| 0.6 * y[0] - 0.8 * y[1], &[0.0, 0.0], 0.5, p, &rule, Some(&sphere)).unwrap();
            assert!(m.mean.abs() < 1e-12, "{p}: {}", m.mean);
        }
        let m =
            p_mean_ball(&|y: &[f64]| y[0] * y[0] + y[1] * y[1], &[0.0, 0.0], 1.0, Exponent::Two, &rule, None).unwrap();
        assert!((m.mean - 0.5).abs() < 1e-13);
    }

    #[test]
    fn alternative_means() {
        let ball = unit_ball_rule(2, 12).unwrap();
        let sphere = unit_sphere_rule(2, 64).unwrap();
        let normsq = |y: &[f64]| y[0] * y[0] + y[1] * y[1];
        let m = alt_mean_mpr(&normsq, &[0.0, 0.0], 1.0, 4.0, &ball, &sphere).unwrap();
        assert!((m - 0.5).abs() < 1e-13);
        let m = alt_mean_mpr(&normsq, &[0.0, 0.0], 1.0, 2.0, &ball, &sphere).unwrap();
        assert!((m - 0.5).abs() < 1e-13);
        let lin = |y: &[f64]| y[0];
        for p in [1.0, 1.5, 2.0, 4.0] {
            assert!(alt_mean_hr1(&lin, &[0.0, 0.0], 1.0, p, &sphere).unwrap().abs() < 1e-12);
            assert!(alt_mean_hr2(&lin, &[0.0, 0.0], 1.0, p, &sphere).unwrap().abs() < 1e-12);
        }
        let f = |y: &[f64]| (3.0 * y[0]).sin() + y[1] * y[1];
        let med = median_raw(
            &stencil(&sphere, &[0.1, 0.0], 0.5, None)
                .unwrap()
                .evaluation_points
                .iter()
                .map(|y| f(y))
                .collect::<Vec<_>>(),
            &sphere.weights,
        );
        assert!((alt_mean_hr1(&f, &[0.1, 0.0], 0.5, 1.0, &sphere).unwrap() - med).abs() < 1e-15);
        assert!((alt_mean_hr2(&f, &[0.1, 0.0], 0.5, 1.0, &sphere).unwrap() - med).abs() < 1e-15);
        let avg = p_mean_sphere(&f, &[0.1, 0.0], 0.5, Exponent::Two, &sphere).unwrap().mean;
        assert!((alt_mean_hr2(&f, &[0.1, 0.0], 0.5, 2.0, &sphere).unwrap() - avg).abs() < 1e-15);
        assert!(alt_mean_mpr(&f, &[0.0, 0.0], 1.0, 1.0, &ball, &sphere).is_err());
    }
}
