//! Closed forms of the moment integrals behind the expansion coefficients,
//! and their comparison with quadrature.
//!
//! `C(alpha, beta)` denotes the integral of `r^(2 alpha - 1) sigma^-beta` over
//! `E_* = {0 < sigma < 1/(4 pi), 0 < r < sqrt(-2 N sigma log(4 pi sigma))}`.

use crate::error::{Error, Result};
use crate::geometry::{dot, norm, unit_sphere_area};
use crate::measure::{
    axial_ball_rule, axial_heat_ball_rule, axial_sphere_rule, heat_ball_rule, unit_ball_rule, unit_sphere_rule,
    AxialWeight, DomainKind, QuadratureRule, DEFAULT_TAU_MAX,
};
use crate::plaplace::{quadratic_form, rayleigh_quotient, trace, QuadraticProbe};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;
use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    /// Sphere ratio of `|xi.y|^(p-2) <Ay, y>` to `|xi.y|^(p-2)`.
    Int1,
    /// The same ratio over the unit ball.
    Int2,
    CAlphaBeta,
    /// Heat-ball ratio of `|xi.z|^(p-2) sigma` to `|xi.z|^(p-2)`.
    Int1Parabolic,
    /// Heat-ball ratio of `|xi.z|^(p-2) <Az, z>` to `|xi.z|^(p-2)`.
    Int2Parabolic,
}

impl FormulaId {
    pub const ALL: [FormulaId; 5] =
        [FormulaId::Int1, FormulaId::Int2, FormulaId::CAlphaBeta, FormulaId::Int1Parabolic, FormulaId::Int2Parabolic];

    fn domain(self) -> DomainKind {
        match self {
            FormulaId::Int1 => DomainKind::Sphere,
            FormulaId::Int2 => DomainKind::Ball,
            _ => DomainKind::HeatBall,
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaId::Int1 => "int1",
            FormulaId::Int2 => "int2",
            FormulaId::CAlphaBeta => "c_alpha_beta",
            FormulaId::Int1Parabolic => "int1_parabolic",
            FormulaId::Int2Parabolic => "int2_parabolic",
        })
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown formula `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OracleParameters {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hessian: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradient: Option<Vec<f64>>,
}

impl OracleParameters {
    pub fn moment(n: usize, p: f64, hessian: Vec<Vec<f64>>, gradient: Vec<f64>) -> Self {
        Self { dimension: n, p: Some(p), hessian: Some(hessian), gradient: Some(gradient), ..Self::default() }
    }

    pub fn heat_star(n: usize, alpha: f64, beta: f64) -> Self {
        Self { dimension: n, alpha: Some(alpha), beta: Some(beta), ..Self::default() }
    }

    fn p(&self) -> Result<f64> {
        self.p.ok_or_else(|| Error::InvalidParameter("formula needs p".into()))
    }

    fn matrix(&self) -> Result<(&[Vec<f64>], &[f64])> {
        match (&self.hessian, &self.gradient) {
            (Some(a), Some(xi)) => Ok((a, xi)),
            _ => Err(Error::InvalidParameter("formula needs a hessian and a gradient".into())),
        }
    }

    fn alpha_beta(&self) -> Result<(f64, f64)> {
        match (self.alpha, self.beta) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InvalidParameter("formula needs alpha and beta".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: f64,
    pub formula_id: FormulaId,
    pub parameters: OracleParameters,
}

fn check_open_range(p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::OutOfRange(format!("the moment identities hold for 1 < p < inf, got p = {p}")));
    }
    Ok(())
}

fn check_moment_args(a: &[Vec<f64>], xi: &[f64], n: usize) -> Result<()> {
    if xi.len() != n || a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter(format!("hessian and gradient must have dimension {n}")));
    }
    if !(norm(xi) > 0.0) {
        return Err(Error::ZeroGradient);
    }
    Ok(())
}

fn bracket(a: &[Vec<f64>], xi: &[f64], p: f64) -> Result<f64> {
    Ok(trace(a) + (p - 2.0) * rayleigh_quotient(a, xi)?)
}

/// `(tr A + (p-2) <A xi, xi>/|xi|^2) / (N + p - 2)`.
pub fn sphere_ratio(a: &[Vec<f64>], xi: &[f64], p: f64, n: usize) -> Result<f64> {
    check_open_range(p)?;
    check_moment_args(a, xi, n)?;
    Ok(bracket(a, xi, p)? / (n as f64 + p - 2.0))
}

/// `(tr A + (p-2) <A xi, xi>/|xi|^2) / (N + p)`.
pub fn ball_ratio(a: &[Vec<f64>], xi: &[f64], p: f64, n: usize) -> Result<f64> {
    check_open_range(p)?;
    check_moment_args(a, xi, n)?;
    Ok(bracket(a, xi, p)? / (n as f64 + p))
}

/// `C(alpha, beta) = 2^(2 beta - alpha - 3) pi^(beta - alpha - 1) N^alpha Gamma(alpha + 1) / (alpha (alpha - beta + 1)^(alpha + 1))`.
pub fn heat_star(alpha: f64, beta: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::OutOfRange(format!(
            "alpha must be positive and finite, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if !(beta < alpha + 1.0) {
        return Err(Error::OutOfRange(format!(
            "the integral diverges for beta >= alpha + 1 (alpha = {alpha}, beta = {beta})"
        )));
    }
    if n == 0 {
        return Err(Error::UnsupportedDimension { dim: 0, hint: "dimension must be positive" });
    }
    let value =
        2f64.powf(2.0 * beta - alpha - 3.0) * PI.powf(beta - alpha - 1.0) * (n as f64).powf(alpha) * gamma(alpha + 1.0)
            / (alpha * (alpha - beta + 1.0).powf(alpha + 1.0));
    if !value.is_finite() {
        return Err(Error::Numerical(format!("C({alpha}, {beta}) overflowed")));
    }
    Ok(value)
}

/// `(1 / 4 pi) ((N+p-2)/(N+p))^(1 + (N+p)/2)`.
pub fn heat_sigma_ratio(p: f64, n: usize) -> Result<f64> {
    check_open_range(p)?;
    let s = n as f64 + p;
    Ok(((s - 2.0) / s).powf(1.0 + s / 2.0) / (4.0 * PI))
}

/// `(1 / 2 pi) (N / (N+p-2)) ((N+p-2)/(N+p))^(1 + (N+p)/2) (tr A + (p-2) <A xi, xi>/|xi|^2)`.
pub fn heat_quadratic_ratio(a: &[Vec<f64>], xi: &[f64], p: f64, n: usize) -> Result<f64> {
    check_open_range(p)?;
    check_moment_args(a, xi, n)?;
    let s = n as f64 + p;
    Ok(n as f64 / (s - 2.0) * ((s - 2.0) / s).powf(1.0 + s / 2.0) / (2.0 * PI) * bracket(a, xi, p)?)
}

/// Evaluates the closed form named by `formula`.
pub fn oracle(formula: FormulaId, params: &OracleParameters) -> Result<OracleValue> {
    let n = params.dimension;
    let value = match formula {
        FormulaId::Int1 => {
            let (a, xi) = params.matrix()?;
            sphere_ratio(a, xi, params.p()?, n)?
        }
        FormulaId::Int2 => {
            let (a, xi) = params.matrix()?;
            ball_ratio(a, xi, params.p()?, n)?
        }
        FormulaId::CAlphaBeta => {
            let (alpha, beta) = params.alpha_beta()?;
            heat_star(alpha, beta, n)?
        }
        FormulaId::Int1Parabolic => heat_sigma_ratio(params.p()?, n)?,
        FormulaId::Int2Parabolic => {
            let (a, xi) = params.matrix()?;
            heat_quadratic_ratio(a, xi, params.p()?, n)?
        }
    };
    Ok(OracleValue { value, formula_id: formula, parameters: params.clone() })
}

/// The rule [`quadrature_vs_oracle`] expects for a formula: the weight
/// `|xi.y|^(p-2)` is folded into the rule unless `p = 2`.
pub fn matching_rule(formula: FormulaId, params: &OracleParameters, order: usize) -> Result<QuadratureRule> {
    let n = params.dimension;
    let axial = match formula {
        FormulaId::CAlphaBeta => None,
        FormulaId::Int1Parabolic => {
            let xi = params.gradient.clone().unwrap_or_else(|| unit_axis(n));
            axial_for(&xi, params.p()?)?
        }
        _ => axial_for(params.matrix()?.1, params.p()?)?,
    };
    match (formula.domain(), axial) {
        (DomainKind::Sphere, None) => unit_sphere_rule(n, order),
        (DomainKind::Sphere, Some(w)) => axial_sphere_rule(n, order, w),
        (DomainKind::Ball, None) => unit_ball_rule(n, order),
        (DomainKind::Ball, Some(w)) => axial_ball_rule(n, order, w),
        (DomainKind::HeatBall, None) => heat_ball_rule(n, order, DEFAULT_TAU_MAX),
        (DomainKind::HeatBall, Some(w)) => axial_heat_ball_rule(n, order, DEFAULT_TAU_MAX, w),
    }
}

fn unit_axis(n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    if n > 0 {
        e[0] = 1.0;
    }
    e
}

fn axial_for(xi: &[f64], p: f64) -> Result<Option<AxialWeight>> {
    check_open_range(p)?;
    if p == 2.0 {
        Ok(None)
    } else {
        Ok(Some(AxialWeight::new(xi, p - 2.0)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub formula_id: FormulaId,
    pub parameters: OracleParameters,
    pub rule_order: usize,
    pub rule_size: usize,
    pub quadrature: f64,
    pub oracle: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

/// Integrates the left-hand side of `formula` with `rule` and compares it
/// with the closed form. For `p != 2` the kernel `|xi.y|^(p-2)` is taken
/// from the rule's axial weight when present and evaluated pointwise
/// otherwise.
pub fn quadrature_vs_oracle(
    rule: &QuadratureRule,
    formula: FormulaId,
    params: &OracleParameters,
) -> Result<Discrepancy> {
    let n = params.dimension;
    if rule.domain_kind != formula.domain() {
        return Err(Error::MismatchedRule(format!(
            "{formula} needs a {:?} rule, got {:?}",
            formula.domain(),
            rule.domain_kind
        )));
    }
    if rule.dimension != n {
        return Err(Error::MismatchedRule(format!("rule dimension {} differs from N = {n}", rule.dimension)));
    }
    let exact = oracle(formula, params)?.value;
    let quadrature = match formula {
        FormulaId::CAlphaBeta => {
            if rule.axial_weight.is_some() {
                return Err(Error::MismatchedRule("C(alpha, beta) needs the plain caloric rule".into()));
            }
            let (alpha, beta) = params.alpha_beta()?;
            // dr dsigma dS = r^(1-N) dz dsigma = r^(-1-N) sigma^2 dnu.
            rule.integrate(|z| norm(&z[..n]).powf(2.0 * alpha - n as f64 - 2.0) * z[n].powf(2.0 - beta))
                / unit_sphere_area(n)
        }
        _ => {
            let p = params.p()?;
            let xi = match formula {
                FormulaId::Int1Parabolic => params.gradient.clone().unwrap_or_else(|| unit_axis(n)),
                _ => params.matrix()?.1.to_vec(),
            };
            let kernel = kernel(rule, &xi, p)?;
            let a = match formula {
                FormulaId::Int1Parabolic => None,
                _ => Some(params.matrix()?.0),
            };
            let (mut num, mut den) = (0.0, 0.0);
            for (z, w) in rule.nodes.iter().zip(&rule.weights) {
                let k = kernel(&z[..n]);
                let f = match a {
                    Some(a) => quadratic_form(a, &z[..n]),
                    None => z[n],
                };
                num += w * k * f;
                den += w * k;
            }
            if !(den > 0.0) || !num.is_finite() {
                return Err(Error::Numerical(format!("{formula}: kernel integral is {den}")));
            }
            num / den
        }
    };
    let abs_gap = (quadrature - exact).abs();
    Ok(Discrepancy {
        formula_id: formula,
        parameters: params.clone(),
        rule_order: rule.order,
        rule_size: rule.len(),
        quadrature,
        oracle: exact,
        abs_gap,
        rel_gap: abs_gap / exact.abs().max(f64::MIN_POSITIVE),
    })
}

type Kernel<'a> = Box<dyn Fn(&[f64]) -> f64 + 'a>;

fn kernel<'a>(rule: &QuadratureRule, xi: &'a [f64], p: f64) -> Result<Kernel<'a>> {
    match &rule.axial_weight {
        Some(w) if w.matches(xi, p - 2.0) => Ok(Box::new(|_| 1.0)),
        Some(w) => Err(Error::MismatchedRule(format!(
            "rule carries |axis.y|^{} along {:?}, formula needs |xi.y|^{} along {xi:?}",
            w.exponent,
            w.axis,
            p - 2.0
        ))),
        None if p == 2.0 => Ok(Box::new(|_| 1.0)),
        None => Ok(Box::new(move |y| dot(xi, y).abs().powf(p - 2.0))),
    }
}

/// Random `(A, xi)` pair number `index` of a seeded family: entries of `A`
/// uniform in `[-1, 1]`, `|xi|` uniform in `[0.5, 1]`.
pub fn random_pair(n: usize, seed: u64, index: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let probe = QuadraticProbe::random(n, &mut rng, false);
    (probe.hessian, probe.gradient)
}

/// Which rows the oracle check runs and at which rule orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleMatrix {
    pub dimensions: Vec<usize>,
    pub exponents: Vec<f64>,
    pub pairs: usize,
    /// Random pairs used for the heat-ball moment ratios.
    pub heat_pairs: usize,
    pub seed: u64,
    pub order: usize,
    pub heat_order: usize,
}

impl Default for OracleMatrix {
    fn default() -> Self {
        Self {
            dimensions: vec![2, 3],
            exponents: vec![1.5, 2.0, 3.0, 4.0],
            pairs: 20,
            heat_pairs: 3,
            seed: 2024,
            order: 16,
            heat_order: 24,
        }
    }
}

impl OracleMatrix {
    /// `(alpha, beta)` pairs checked for dimension `n`: the caloric mass
    /// exponents, a few fixed pairs and the exponents behind the parabolic ratios.
    pub fn golden_pairs(&self, n: usize) -> Vec<(f64, f64)> {
        let mut pairs = vec![(1.0, 1.0), (1.5, 2.0), (2.0, 2.0)];
        for &p in &self.exponents {
            let alpha = (n as f64 + p) / 2.0;
            pairs.extend([(alpha, 1.0), (alpha, 2.0), (alpha + 1.0, 2.0)]);
        }
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pairs.dedup();
        pairs
    }

    /// Every `(formula, parameters, order)` row, in a fixed order.
    pub fn rows(&self) -> Vec<(FormulaId, OracleParameters, usize)> {
        let mut rows = Vec::new();
        for &n in &self.dimensions {
            for &p in &self.exponents {
                for k in 0..self.pairs as u64 {
                    let (a, xi) = random_pair(n, self.seed, k);
                    for f in [FormulaId::Int1, FormulaId::Int2] {
                        rows.push((f, OracleParameters::moment(n, p, a.clone(), xi.clone()), self.order));
                    }
                }
            }
            for (alpha, beta) in self.golden_pairs(n) {
                rows.push((FormulaId::CAlphaBeta, OracleParameters::heat_star(n, alpha, beta), self.heat_order));
            }
            for &p in &self.exponents {
                for k in 0..self.heat_pairs as u64 {
                    let (a, xi) = random_pair(n, self.seed, k);
                    for f in [FormulaId::Int1Parabolic, FormulaId::Int2Parabolic] {
                        rows.push((f, OracleParameters::moment(n, p, a.clone(), xi.clone()), self.heat_order));
                    }
                }
            }
        }
        rows
    }

    pub fn run(&self) -> Result<Vec<Discrepancy>> {
        self.rows()
            .into_iter()
            .map(|(f, params, order)| quadrature_vs_oracle(&matching_rule(f, &params, order)?, f, &params))
            .collect()
    }
}

/// Default pass threshold of a row: 1e-8 for ball and sphere moments,
/// 1e-6 for heat-ball integrals.
pub fn threshold(formula: FormulaId) -> f64 {
    match formula {
        FormulaId::Int1 | FormulaId::Int2 => 1e-8,
        _ => 1e-6,
    }
}

#[derive(Serialize)]
struct CsvRow {
    formula: String,
    dimension: usize,
    p: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    rule_order: usize,
    rule_size: usize,
    quadrature: f64,
    oracle: f64,
    abs_gap: f64,
    rel_gap: f64,
}

/// One CSV row per discrepancy.
pub fn write_csv<W: Write>(rows: &[Discrepancy], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for d in rows {
        w.serialize(CsvRow {
            formula: d.formula_id.to_string(),
            dimension: d.parameters.dimension,
            p: d.parameters.p,
            alpha: d.parameters.alpha,
            beta: d.parameters.beta,
            rule_order: d.rule_order,
            rule_size: d.rule_size,
            quadrature: d.quadrature,
            oracle: d.oracle,
            abs_gap: d.abs_gap,
            rel_gap: d.rel_gap,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> Vec<Vec<f64>> {
        (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn closed_form_values() {
        assert!((sphere_ratio(&diag(&[1.0, 1.0]), &[1.0, 0.0], 2.0, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!((sphere_ratio(&diag(&[1.0, 2.0, 3.0]), &[1.0, 0.0, 0.0], 4.0, 3).unwrap() - 8.0 / 5.0).abs() < 1e-15);
        assert!((ball_ratio(&diag(&[1.0, 1.0]), &[1.0, 0.0], 4.0, 2).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((heat_star(1.0, 1.0, 2).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((heat_sigma_ratio(2.0, 2).unwrap() - 1.0 / (32.0 * PI)).abs() < 1e-15);
        assert!(
            (heat_quadratic_ratio(&diag(&[1.0, 1.0]), &[1.0, 0.0], 2.0, 2).unwrap() - 1.0 / (8.0 * PI)).abs() < 1e-15
        );
    }

    #[test]
    fn caloric_mass_is_four() {
        for n in 2..=5 {
            let alpha = (n as f64 + 2.0) / 2.0;
            let mass = heat_star(alpha, 2.0, n).unwrap() * unit_sphere_area(n);
            assert!((mass - 4.0).abs() < 1e-13, "n={n} mass={mass}");
        }
    }

    #[test]
    fn heat_star_matches_one_dimensional_integral() {
        // (1/2a) int_0^{1/4pi} s^-b (-2 N s log(4 pi s))^a ds after tau = -log(4 pi s).
        use crate::measure::gauss::composite_gauss_legendre;
        use crate::measure::tau_breaks;
        for (alpha, beta, n) in [(1.0, 1.0, 2), (1.5, 2.0, 3), (2.75, 2.0, 2), (1.0, 0.0, 2)] {
            let (taus, w) = composite_gauss_legendre(&tau_breaks(80.0), 16);
            let value: f64 = taus
                .iter()
                .zip(&w)
                .map(|(tau, wt)| {
                    let s = (-tau).exp() / (4.0 * PI);
                    wt * s * s.powf(-beta) * (2.0 * n as f64 * s * tau).powf(alpha) / (2.0 * alpha)
                })
                .sum();
            let exact = heat_star(alpha, beta, n).unwrap();
            assert!((value / exact - 1.0).abs() < 1e-10, "{alpha} {beta}: {value} vs {exact}");
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(heat_star(1.0, 2.0, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(heat_star(0.0, 0.0, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(sphere_ratio(&diag(&[1.0, 1.0]), &[1.0, 0.0], 1.0, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(ball_ratio(&diag(&[1.0, 1.0]), &[0.0, 0.0], 3.0, 2), Err(Error::ZeroGradient)));
        assert!(heat_sigma_ratio(f64::INFINITY, 2).is_err());
    }

    #[test]
    fn sigma_ratio_tends_to_caloric_infinity_limit() {
        let limit = 1.0 / (4.0 * PI * std::f64::consts::E);
        assert!((heat_sigma_ratio(1e4, 2).unwrap() - limit).abs() < 1e-3 * limit);
    }

    #[test]
    fn parabolic_ratios_follow_from_heat_star() {
        for n in [2, 3] {
            for p in [1.5, 3.0, 4.0] {
                let alpha = (n as f64 + p) / 2.0;
                let sigma = heat_star(alpha, 1.0, n).unwrap() / heat_star(alpha, 2.0, n).unwrap();
                assert!((sigma / heat_sigma_ratio(p, n).unwrap() - 1.0).abs() < 1e-13);
                let (a, xi) = random_pair(n, 9, 0);
                let radial = heat_star(alpha + 1.0, 2.0, n).unwrap() / heat_star(alpha, 2.0, n).unwrap();
                let q = radial * sphere_ratio(&a, &xi, p, n).unwrap();
                assert!((q - heat_quadratic_ratio(&a, &xi, p, n).unwrap()).abs() < 1e-13 * (1.0 + q.abs()));
            }
        }
    }

    #[test]
    fn sphere_and_ball_rules_reproduce_moments() {
        let (a, xi) = random_pair(2, 5, 1);
        let params = OracleParameters::moment(2, 1.5, a.clone(), xi.clone());
        let d = quadrature_vs_oracle(&matching_rule(FormulaId::Int1, &params, 16).unwrap(), FormulaId::Int1, &params)
            .unwrap();
        assert!(d.rel_gap < 1e-8, "{d:?}");
        let (a, xi) = random_pair(3, 5, 2);
        let params = OracleParameters::moment(3, 3.0, a, xi);
        let d = quadrature_vs_oracle(&matching_rule(FormulaId::Int2, &params, 16).unwrap(), FormulaId::Int2, &params)
            .unwrap();
        assert!(d.rel_gap < 1e-8, "{d:?}");
    }

    #[test]
    fn heat_rule_reproduces_golden_value() {
        let params = OracleParameters::heat_star(2, 2.0, 2.0);
        let rule = matching_rule(FormulaId::CAlphaBeta, &params, 24).unwrap();
        let d = quadrature_vs_oracle(&rule, FormulaId::CAlphaBeta, &params).unwrap();
        assert!(d.rel_gap < 1e-6, "{d:?}");
    }

    #[test]
    fn mismatched_rules_are_rejected() {
        let (a, xi) = random_pair(2, 5, 1);
        let params = OracleParameters::moment(2, 3.0, a, xi);
        let ball = unit_ball_rule(2, 8).unwrap();
        assert!(matches!(quadrature_vs_oracle(&ball, FormulaId::Int1, &params), Err(Error::MismatchedRule(_))));
        let wrong = axial_ball_rule(2, 8, AxialWeight::new(&[0.0, 1.0], 1.0).unwrap()).unwrap();
        assert!(matches!(quadrature_vs_oracle(&wrong, FormulaId::Int2, &params), Err(Error::MismatchedRule(_))));
    }

    #[test]
    fn formula_names_round_trip() {
        for f in FormulaId::ALL {
            assert_eq!(f.to_string().parse::<FormulaId>().unwrap(), f);
        }
    }
}
