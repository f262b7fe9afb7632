//! Empirical `eps^2` coefficients of the mean value expansions.
//!
//! `delta_eps = (mean(eps) - u(x)) / eps^2` is computed over a decreasing
//! sweep of radii and extrapolated to `eps -> 0`, then compared with the
//! closed-form coefficient of the normalized p-Laplacian.

use crate::error::{Error, Result};
use crate::geometry::norm;
use crate::measure::{heat_ball_rule, unit_ball_rule, unit_sphere_rule, QuadratureRule, DEFAULT_TAU_MAX};
use crate::plaplace::{
    elliptic_coefficient, parabolic_coefficient, probe_field, Geometry, QuadraticProbe, SmoothField,
};
use crate::pmean::resolved::{resolved_ball_mean, resolved_heat_mean, resolved_sphere_mean, Resolution, MAX_LEVEL};
use crate::pmean::{p_mean_ball, p_mean_heat, p_mean_sphere, Exponent};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::io::Write;

pub const DEFAULT_EPSILONS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Two successive refinements agreeing to this (absolute) tolerance in
/// `delta` at the largest radius stop the escalation.
pub const ESCALATION_TOLERANCE: f64 = 1e-8;

/// Denominator floor of `rel_error`.
pub const RELATIVE_FLOOR: f64 = 1e-12;

/// Largest discrete rule order reached by escalation.
pub const MAX_RULE_ORDER: usize = 64;

/// Which mean is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "geometry", rename_all = "snake_case")]
pub enum Setting {
    Ball,
    Sphere,
    /// The heat ball `E_eps(x, t)`.
    Heat {
        time: f64,
    },
}

impl Setting {
    pub fn elliptic(geometry: Geometry) -> Self {
        match geometry {
            Geometry::Ball => Setting::Ball,
            Geometry::Sphere => Setting::Sphere,
        }
    }

    fn time(self) -> f64 {
        match self {
            Setting::Heat { time } => time,
            _ => 0.0,
        }
    }

    /// Spatial radius of the sampled region at `eps`.
    fn reach(self, n: usize, eps: f64) -> f64 {
        match self {
            Setting::Heat { .. } => eps * (n as f64 / (2.0 * PI * E)).sqrt(),
            _ => eps,
        }
    }
}

/// How each mean of the sweep is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "engine", rename_all = "snake_case")]
pub enum Engine {
    /// The chord sweep of [`crate::pmean::resolved`] at a refinement level.
    Resolved { level: usize },
    /// A fixed product rule of the given order, as used by [`p_mean_ball`].
    Rule { order: usize },
}

impl Default for Engine {
    fn default() -> Self {
        Engine::Resolved { level: 1 }
    }
}

impl Engine {
    fn refined(self) -> Option<Self> {
        match self {
            Engine::Resolved { level } if level < MAX_LEVEL => Some(Engine::Resolved { level: level + 1 }),
            Engine::Rule { order } if order < MAX_RULE_ORDER => {
                Some(Engine::Rule { order: (order + order.div_ceil(2)).min(MAX_RULE_ORDER) })
            }
            _ => None,
        }
    }
}

/// Basis of the least-squares fit of `delta_eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtrapolationModel {
    /// `d0 + c eps`.
    Linear,
    /// `d0 + c1 eps + c2 eps^2`.
    Quadratic,
    /// `d0 + c1 eps^2 + c2 eps^4 + c3 eps^6`, truncated to the number of
    /// points minus one. The mean of a quadratic probe is even in `eps`.
    Even,
}

impl ExtrapolationModel {
    fn powers(self, points: usize) -> Vec<i32> {
        match self {
            ExtrapolationModel::Linear => vec![1],
            ExtrapolationModel::Quadratic => vec![1, 2],
            ExtrapolationModel::Even => [2, 4, 6].into_iter().take((points - 1).min(3)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub model: ExtrapolationModel,
    pub limit: f64,
    /// Coefficients of the non-constant terms, in model order.
    pub coefficients: Vec<f64>,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Least-squares fit of `deltas` against `epsilons` in the given model.
pub fn extrapolate(epsilons: &[f64], deltas: &[f64], model: ExtrapolationModel) -> Result<Extrapolation> {
    if epsilons.len() != deltas.len() {
        return Err(Error::LengthMismatch { values: deltas.len(), weights: epsilons.len() });
    }
    if epsilons.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: epsilons.len() });
    }
    check_sweep(epsilons)?;
    if let Some(index) = deltas.iter().position(|d| !d.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    let powers = model.powers(epsilons.len());
    // Columns in eps / eps_max keep the normal equations well scaled.
    let scale = epsilons[0];
    let a = DMatrix::from_fn(epsilons.len(), powers.len() + 1, |i, j| {
        if j == 0 {
            1.0
        } else {
            (epsilons[i] / scale).powi(powers[j - 1])
        }
    });
    let b = DVector::from_column_slice(deltas);
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numerical(format!("least-squares fit failed: {e}")))?;
    let resid = &a * &coef - &b;
    Ok(Extrapolation {
        model,
        limit: coef[0],
        coefficients: powers.iter().enumerate().map(|(k, &pw)| coef[k + 1] / scale.powi(pw)).collect(),
        residual: (resid.norm_squared() / epsilons.len() as f64).sqrt(),
    })
}

/// Two-point Richardson value from the two smallest radii, assuming the
/// error behaves like `eps^order`.
pub fn richardson(epsilons: &[f64], deltas: &[f64], order: i32) -> Result<f64> {
    let n = epsilons.len();
    if n < 2 || deltas.len() != n {
        return Err(Error::TooFewPoints { needed: 2, got: n.min(deltas.len()) });
    }
    let (ea, eb) = (epsilons[n - 2].powi(order), epsilons[n - 1].powi(order));
    Ok((ea * deltas[n - 1] - eb * deltas[n - 2]) / (ea - eb))
}

fn check_sweep(epsilons: &[f64]) -> Result<()> {
    if epsilons.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
        return Err(Error::InvalidParameter("sweep radii must be positive and finite".into()));
    }
    if epsilons.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter("sweep radii must be strictly decreasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub epsilons: Vec<f64>,
    /// Starting engine; refined while [`SweepSettings::escalate`] is set.
    pub engine: Engine,
    /// `None` picks [`ExtrapolationModel::Even`] for probes and
    /// [`ExtrapolationModel::Quadratic`] for general fields.
    pub model: Option<ExtrapolationModel>,
    pub escalate: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self { epsilons: DEFAULT_EPSILONS.to_vec(), engine: Engine::default(), model: None, escalate: true }
    }
}

/// What is being expanded: a quadratic probe centred at the evaluation
/// point, or a general field.
#[derive(Debug, Clone)]
pub enum Subject {
    Probe(QuadraticProbe),
    Field(SmoothField),
}

impl Subject {
    fn default_model(&self) -> ExtrapolationModel {
        match self {
            Subject::Probe(_) => ExtrapolationModel::Even,
            Subject::Field(_) => ExtrapolationModel::Quadratic,
        }
    }

    fn field(&self, x: &[f64], t: f64) -> SmoothField {
        match self {
            Subject::Probe(q) => probe_field(q, x, Some(t)),
            Subject::Field(f) => f.clone(),
        }
    }

    fn probe(&self, x: &[f64], t: f64, parabolic: bool) -> Result<QuadraticProbe> {
        match self {
            Subject::Probe(q) => Ok(q.clone()),
            Subject::Field(f) => f.probe_at(x, t, parabolic),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscalationStep {
    pub engine: Engine,
    /// `delta` at the largest radius.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    /// Residual of the model that produced `fitted_limit`.
    pub model_residual: f64,
    pub coefficients: Vec<f64>,
    /// Limit and residual of the first-order model `d0 + c eps`.
    pub linear_limit: f64,
    pub linear_residual: f64,
    pub richardson_linear: f64,
    pub richardson_even: f64,
    /// `|delta_eps|` never grows as `eps` shrinks.
    pub deltas_non_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub field: String,
    pub dimension: usize,
    pub p: Exponent,
    pub setting: Setting,
    pub x: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub means: Vec<f64>,
    pub deltas: Vec<f64>,
    pub model: ExtrapolationModel,
    pub fitted_limit: f64,
    pub theoretical: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub fit_diagnostics: FitDiagnostics,
    /// Engine used for the whole sweep after escalation.
    pub engine: Engine,
    pub escalation: Vec<EscalationStep>,
    pub escalation_converged: bool,
}

#[derive(Serialize)]
struct CsvRow {
    row: &'static str,
    epsilon: Option<f64>,
    mean: Option<f64>,
    delta: Option<f64>,
    fitted_limit: Option<f64>,
    theoretical: Option<f64>,
    abs_error: Option<f64>,
    rel_error: Option<f64>,
}

impl AsymptoticReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per radius followed by a summary row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for ((e, m), d) in self.epsilons.iter().zip(&self.means).zip(&self.deltas) {
            w.serialize(CsvRow {
                row: "point",
                epsilon: Some(*e),
                mean: Some(*m),
                delta: Some(*d),
                fitted_limit: None,
                theoretical: None,
                abs_error: None,
                rel_error: None,
            })?;
        }
        w.serialize(CsvRow {
            row: "summary",
            epsilon: None,
            mean: None,
            delta: None,
            fitted_limit: Some(self.fitted_limit),
            theoretical: Some(self.theoretical),
            abs_error: Some(self.abs_error),
            rel_error: Some(self.rel_error),
        })?;
        w.flush()?;
        Ok(())
    }
}

enum Prepared {
    Resolved(Resolution),
    Rule { main: QuadratureRule, boundary: Option<QuadratureRule> },
}

impl Prepared {
    fn new(engine: Engine, setting: Setting, n: usize, p: Exponent) -> Result<Self> {
        Ok(match engine {
            Engine::Resolved { level } => Prepared::Resolved(Resolution::level(level)),
            Engine::Rule { order } => match setting {
                Setting::Ball => Prepared::Rule {
                    main: unit_ball_rule(n, order)?,
                    boundary: if p.is_infinite() { Some(unit_sphere_rule(n, order)?) } else { None },
                },
                Setting::Sphere => Prepared::Rule { main: unit_sphere_rule(n, order)?, boundary: None },
                Setting::Heat { .. } => {
                    Prepared::Rule { main: heat_ball_rule(n, order, DEFAULT_TAU_MAX)?, boundary: None }
                }
            },
        })
    }

    fn mean(
        &self,
        field: &SmoothField,
        x: &[f64],
        setting: Setting,
        p: Exponent,
        axis: &[f64],
        eps: f64,
    ) -> Result<f64> {
        let t = setting.time();
        let u = |y: &[f64]| field.eval(y, t);
        let us = |y: &[f64], s: f64| field.eval(y, s);
        let result = match (self, setting) {
            (Prepared::Resolved(res), Setting::Ball) => resolved_ball_mean(&u, x, eps, p, res, Some(axis)),
            (Prepared::Resolved(res), Setting::Sphere) => resolved_sphere_mean(&u, x, eps, p, res, Some(axis)),
            (Prepared::Resolved(res), Setting::Heat { time }) => {
                resolved_heat_mean(&us, x, time, eps, p, res, Some(axis))
            }
            (Prepared::Rule { main, boundary }, Setting::Ball) => p_mean_ball(&u, x, eps, p, main, boundary.as_ref()),
            (Prepared::Rule { main, .. }, Setting::Sphere) => p_mean_sphere(&u, x, eps, p, main),
            (Prepared::Rule { main, .. }, Setting::Heat { time }) => p_mean_heat(&us, x, time, eps, p, main),
        }?;
        Ok(result.mean)
    }
}

struct Curve {
    means: Vec<f64>,
    deltas: Vec<f64>,
    engine: Engine,
    escalation: Vec<EscalationStep>,
    converged: bool,
}

fn sweep(field: &SmoothField, x: &[f64], p: Exponent, setting: Setting, settings: &SweepSettings) -> Result<Curve> {
    check_sweep(&settings.epsilons)?;
    if field.dimension != x.len() {
        return Err(Error::InvalidParameter(format!("field has dimension {} but x has {}", field.dimension, x.len())));
    }
    let n = x.len();
    let t = setting.time();
    field.check_ball(x, setting.reach(n, settings.epsilons[0]))?;
    let axis = field.gradient_at(x, t)?;
    if !(norm(&axis) > 0.0) {
        return Err(Error::ZeroGradient);
    }
    let center = field.eval(x, t);
    let delta = |m: f64, e: f64| (m - center) / (e * e);
    let eps_max = settings.epsilons[0];

    let mut engine = settings.engine;
    let mut prepared = Prepared::new(engine, setting, n, p)?;
    let mut first = prepared.mean(field, x, setting, p, &axis, eps_max)?;
    let mut escalation = vec![EscalationStep { engine, delta: delta(first, eps_max) }];
    let mut converged = !settings.escalate;
    while !converged {
        let Some(next) = engine.refined() else {
            log::warn!("escalation stopped at {engine:?} without two agreeing refinements");
            break;
        };
        let finer = Prepared::new(next, setting, n, p)?;
        let m = finer.mean(field, x, setting, p, &axis, eps_max)?;
        let d = delta(m, eps_max);
        let gap = (d - escalation.last().map_or(d, |s| s.delta)).abs();
        escalation.push(EscalationStep { engine: next, delta: d });
        (engine, prepared, first) = (next, finer, m);
        if gap < ESCALATION_TOLERANCE {
            converged = true;
            break;
        }
    }

    let rest: Vec<Result<f64>> =
        settings.epsilons[1..].par_iter().map(|&e| prepared.mean(field, x, setting, p, &axis, e)).collect();
    let mut means = vec![first];
    for m in rest {
        means.push(m?);
    }
    let deltas = means.iter().zip(&settings.epsilons).map(|(&m, &e)| delta(m, e)).collect();
    Ok(Curve { means, deltas, engine, escalation, converged })
}

/// `delta_eps` for each radius of `settings.epsilons`.
pub fn delta_curve(
    field: &SmoothField,
    x: &[f64],
    p: Exponent,
    setting: Setting,
    settings: &SweepSettings,
) -> Result<Vec<f64>> {
    Ok(sweep(field, x, p, setting, settings)?.deltas)
}

fn report(
    subject: &Subject,
    x: &[f64],
    p: Exponent,
    setting: Setting,
    settings: &SweepSettings,
    theoretical: impl FnOnce(&QuadraticProbe) -> Result<f64>,
) -> Result<AsymptoticReport> {
    let t = setting.time();
    let field = subject.field(x, t);
    let curve = sweep(&field, x, p, setting, settings)?;
    let theoretical = theoretical(&subject.probe(x, t, matches!(setting, Setting::Heat { .. }))?)?;
    let model = settings.model.unwrap_or(subject.default_model());
    let eps = &settings.epsilons;
    let fit = extrapolate(eps, &curve.deltas, model)?;
    let linear = extrapolate(eps, &curve.deltas, ExtrapolationModel::Linear)?;
    let abs_error = (fit.limit - theoretical).abs();
    Ok(AsymptoticReport {
        field: field.name.clone(),
        dimension: x.len(),
        p,
        setting,
        x: x.to_vec(),
        epsilons: eps.clone(),
        fit_diagnostics: FitDiagnostics {
            model_residual: fit.residual,
            coefficients: fit.coefficients.clone(),
            linear_limit: linear.limit,
            linear_residual: linear.residual,
            richardson_linear: richardson(eps, &curve.deltas, 1)?,
            richardson_even: richardson(eps, &curve.deltas, 2)?,
            deltas_non_increasing: curve.deltas.windows(2).all(|w| w[1].abs() <= w[0].abs() + 1e-12),
        },
        means: curve.means,
        deltas: curve.deltas,
        model,
        fitted_limit: fit.limit,
        theoretical,
        abs_error,
        rel_error: abs_error / theoretical.abs().max(RELATIVE_FLOOR),
        engine: curve.engine,
        escalation: curve.escalation,
        escalation_converged: curve.converged,
    })
}

/// Compares the fitted ball or sphere coefficient with `Delta_p u(x) / (2(N+p))`
/// (ball) or `Delta_p u(x) / (2(N+p-2))` (sphere).
pub fn verify_elliptic(
    subject: &Subject,
    x: &[f64],
    p: Exponent,
    geometry: Geometry,
    settings: &SweepSettings,
) -> Result<AsymptoticReport> {
    report(subject, x, p, Setting::elliptic(geometry), settings, |q| elliptic_coefficient(q, p, x.len(), geometry))
}

/// Compares the fitted heat-ball coefficient with the parabolic closed form.
pub fn verify_parabolic(
    subject: &Subject,
    x: &[f64],
    t: f64,
    p: Exponent,
    settings: &SweepSettings,
) -> Result<AsymptoticReport> {
    report(subject, x, p, Setting::Heat { time: t }, settings, |q| parabolic_coefficient(q, p, x.len()))
}

/// The sweep of a field expected to satisfy the mean value property
/// asymptotically; the theoretical coefficient is 0.
pub fn amvp_residual_sweep(
    field: &SmoothField,
    x: &[f64],
    p: Exponent,
    setting: Setting,
    settings: &SweepSettings,
) -> Result<AsymptoticReport> {
    report(&Subject::Field(field.clone()), x, p, setting, settings, |_| Ok(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_probe(n: usize) -> QuadraticProbe {
        let a = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let mut xi = vec![0.0; n];
        xi[0] = 1.0;
        QuadraticProbe::new(0.0, xi, a, 0.0).unwrap()
    }

    #[test]
    fn extrapolation_of_exact_models() {
        let eps = DEFAULT_EPSILONS;
        let constant = extrapolate(&eps, &[2.5; 4], ExtrapolationModel::Linear).unwrap();
        assert!((constant.limit - 2.5).abs() < 1e-13);
        let affine: Vec<f64> = eps.iter().map(|e| 1.0 + 3.0 * e).collect();
        let fit = extrapolate(&eps, &affine, ExtrapolationModel::Linear).unwrap();
        assert!((fit.limit - 1.0).abs() < 1e-12 && (fit.coefficients[0] - 3.0).abs() < 1e-11);
        let even: Vec<f64> = eps.iter().map(|e| 0.5 - e * e + 4.0 * e.powi(4)).collect();
        assert!((extrapolate(&eps, &even, ExtrapolationModel::Even).unwrap().limit - 0.5).abs() < 1e-12);
        assert!((richardson(&eps, &affine, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noisy_affine_data() {
        let eps = DEFAULT_EPSILONS;
        let noisy: Vec<f64> =
            eps.iter().enumerate().map(|(i, e)| 1.0 + 3.0 * e + if i % 2 == 0 { 1e-8 } else { -1e-8 }).collect();
        assert!((extrapolate(&eps, &noisy, ExtrapolationModel::Linear).unwrap().limit - 1.0).abs() < 1e-6);
    }

    #[test]
    fn extrapolation_rejects_bad_sweeps() {
        assert!(matches!(
            extrapolate(&[0.2, 0.1], &[1.0, 1.0], ExtrapolationModel::Linear),
            Err(Error::TooFewPoints { .. })
        ));
        assert!(extrapolate(&[0.1, 0.2, 0.05], &[1.0; 3], ExtrapolationModel::Linear).is_err());
    }

    #[test]
    fn identity_probe_p4_ball() {
        let r = verify_elliptic(
            &Subject::Probe(identity_probe(2)),
            &[0.0, 0.0],
            Exponent::Finite(4.0),
            Geometry::Ball,
            &SweepSettings::default(),
        )
        .unwrap();
        assert!((r.theoretical - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.rel_error < 1e-3, "{r:?}");
        assert!(r.escalation_converged);
    }

    #[test]
    fn p2_quadratic_delta_is_constant() {
        let probe = identity_probe(3);
        let field = probe_field(&probe, &[0.1, 0.2, 0.3], None);
        let d = delta_curve(&field, &[0.1, 0.2, 0.3], Exponent::Two, Setting::Ball, &SweepSettings::default()).unwrap();
        assert!(d.iter().all(|v| (v - 3.0 / 10.0).abs() < 1e-12), "{d:?}");
    }

    #[test]
    fn linear_field_has_zero_delta() {
        let field = SmoothField::new("linear", 2, |y, _| 2.0 * y[0] - y[1]);
        for p in [Exponent::One, Exponent::Finite(3.0), Exponent::Infinity] {
            for setting in [Setting::Ball, Setting::Sphere, Setting::Heat { time: 0.0 }] {
                let d = delta_curve(&field, &[0.3, 0.4], p, setting, &SweepSettings::default()).unwrap();
                assert!(d.iter().all(|v| v.abs() < 1e-8), "{p} {setting:?} {d:?}");
            }
        }
    }

    #[test]
    fn quartic_field_extrapolates_to_laplacian() {
        let field = SmoothField::new("normsq2", 2, |y, _| (y[0] * y[0] + y[1] * y[1]).powi(2));
        let r =
            amvp_residual_sweep(&field, &[1.0, 0.0], Exponent::Two, Setting::Ball, &SweepSettings::default()).unwrap();
        // Laplacian of |y|^4 is 4(N+2)|y|^2 = 16 at e1; the ball average of
        // |e1 + eps z|^4 is 1 + 2 eps^2 + eps^4 / 3 exactly.
        assert!((r.fitted_limit - 2.0).abs() < 1e-8, "{r:?}");
        for (m, e) in r.means.iter().zip(&r.epsilons) {
            assert!((m - (1.0 + 2.0 * e * e + e.powi(4) / 3.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn rule_engine_escalates() {
        let settings = SweepSettings { engine: Engine::Rule { order: 8 }, ..SweepSettings::default() };
        let r =
            verify_elliptic(&Subject::Probe(identity_probe(2)), &[0.0, 0.0], Exponent::Two, Geometry::Ball, &settings)
                .unwrap();
        assert!(r.rel_error < 1e-10);
        assert!(r.escalation.len() >= 2);
    }

    #[test]
    fn zero_gradient_is_refused() {
        let field = SmoothField::new("bowl", 2, |y, _| y[0] * y[0] + y[1] * y[1]);
        let err = delta_curve(&field, &[0.0, 0.0], Exponent::Two, Setting::Ball, &SweepSettings::default());
        assert!(matches!(err, Err(Error::ZeroGradient)));
    }

    #[test]
    fn report_csv_has_summary_row() {
        let r = verify_elliptic(
            &Subject::Probe(identity_probe(2)),
            &[0.0, 0.0],
            Exponent::Two,
            Geometry::Sphere,
            &SweepSettings::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 4 + 1);
        assert!(text.lines().last().unwrap().starts_with("summary"));
        let back: AsymptoticReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
