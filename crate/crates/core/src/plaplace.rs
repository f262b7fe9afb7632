//! The normalized p-Laplacian and the eps^2 coefficients of the ball,
//! sphere and heat-ball p-means.

use crate::error::{Error, Result};
use crate::geometry::{dot, frame_with_axis, norm};
use crate::pmean::Exponent;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Ball,
    Sphere,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Ball => "ball",
            Geometry::Sphere => "sphere",
        })
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ball" => Ok(Geometry::Ball),
            "sphere" => Ok(Geometry::Sphere),
            other => Err(Error::InvalidParameter(format!("unknown geometry {other:?}"))),
        }
    }
}

/// `q(y, s) = value + xi.(y - x) + a (s - t) + <A (y - x), y - x> / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticProbe {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<Vec<f64>>,
    pub time_slope: f64,
}

impl QuadraticProbe {
    pub fn new(value: f64, gradient: Vec<f64>, hessian: Vec<Vec<f64>>, time_slope: f64) -> Result<Self> {
        let n = gradient.len();
        if n == 0 || hessian.len() != n || hessian.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("hessian must be a square matrix matching the gradient".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if (hessian[i][j] - hessian[j][i]).abs() > 1e-14 * (1.0 + hessian[i][j].abs()) {
                    return Err(Error::InvalidParameter("hessian must be symmetric".into()));
                }
            }
        }
        Ok(Self { value, gradient, hessian, time_slope })
    }

    pub fn dimension(&self) -> usize {
        self.gradient.len()
    }

    /// Probe with entries of `A` and `a` uniform in `[-1, 1]` and `|xi|` in `[0.5, 1]`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R, parabolic: bool) -> Self {
        let mut xi: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        while norm(&xi) < 1e-3 {
            xi = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        }
        let len = norm(&xi);
        let target = rng.random_range(0.5..1.0);
        xi.iter_mut().for_each(|v| *v *= target / len);
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = rng.random_range(-1.0..1.0);
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        let time_slope = if parabolic { rng.random_range(-1.0..1.0) } else { 0.0 };
        Self { value: rng.random_range(-1.0..1.0), gradient: xi, hessian: a, time_slope }
    }
}

pub fn trace(a: &[Vec<f64>]) -> f64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn quadratic_form(a: &[Vec<f64>], v: &[f64]) -> f64 {
    a.iter().zip(v).map(|(row, vi)| vi * dot(row, v)).sum()
}

/// `<A xi, xi> / |xi|^2`.
pub fn rayleigh_quotient(a: &[Vec<f64>], xi: &[f64]) -> Result<f64> {
    let nn = dot(xi, xi);
    if !(nn > 0.0) {
        return Err(Error::ZeroGradient);
    }
    Ok(quadratic_form(a, xi) / nn)
}

/// `tr A + (p - 2) <A xi, xi> / |xi|^2`, and `<A xi, xi> / |xi|^2` for `p = inf`.
pub fn normalized_p_laplacian(a: &[Vec<f64>], xi: &[f64], p: Exponent) -> Result<f64> {
    let r = rayleigh_quotient(a, xi)?;
    Ok(match p {
        Exponent::Infinity => r,
        p => trace(a) + (p.validate()?.value() - 2.0) * r,
    })
}

fn check_dimension(probe: &QuadraticProbe, n: usize) -> Result<()> {
    if probe.dimension() != n {
        return Err(Error::InvalidParameter(format!("probe has dimension {} but N = {n}", probe.dimension())));
    }
    Ok(())
}

/// `lim (mu_p(eps, q)(x) - q(x)) / eps^2`: `Delta_p / (2(N+p))` on balls,
/// `Delta_p / (2(N+p-2))` on spheres, `<A xi, xi> / (2|xi|^2)` for `p = inf`.
pub fn elliptic_coefficient(probe: &QuadraticProbe, p: Exponent, n: usize, geometry: Geometry) -> Result<f64> {
    check_dimension(probe, n)?;
    let lap = normalized_p_laplacian(&probe.hessian, &probe.gradient, p)?;
    if p.is_infinite() {
        return Ok(0.5 * lap);
    }
    let pv = p.value();
    let denominator = match geometry {
        Geometry::Ball => 2.0 * (n as f64 + pv),
        Geometry::Sphere => 2.0 * (n as f64 + pv - 2.0),
    };
    if !(denominator > 0.0) {
        return Err(Error::OutOfRange(format!("N + p - 2 must be positive for the sphere, N = {n}, p = {pv}")));
    }
    Ok(lap / denominator)
}

/// `(1 - 2/(N+p))^(1 + (N+p)/2) / (4 pi) * (-a + N/(N+p-2) Delta_p)`, and
/// `(-a + N <A xi, xi>/|xi|^2) / (4 pi e)` for `p = inf`.
pub fn parabolic_coefficient(probe: &QuadraticProbe, p: Exponent, n: usize) -> Result<f64> {
    check_dimension(probe, n)?;
    let lap = normalized_p_laplacian(&probe.hessian, &probe.gradient, p)?;
    let a = probe.time_slope;
    let nf = n as f64;
    if p.is_infinite() {
        return Ok((-a + nf * lap) / (4.0 * PI * E));
    }
    let pv = p.value();
    if !(nf + pv - 2.0 > 0.0) {
        return Err(Error::OutOfRange(format!("N + p - 2 must be positive, N = {n}, p = {pv}")));
    }
    let s = nf + pv;
    let prefactor = (1.0 - 2.0 / s).powf(1.0 + s / 2.0) / (4.0 * PI);
    Ok(prefactor * (-a + nf / (s - 2.0) * lap))
}

/// How the `p = 1` case display relating `delta_0` and the rotated Hessian is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOneReading {
    /// `2(N+1) delta_0 = tr C - <C e1, e1>`.
    FirstPower,
    /// `2(N+1) delta_0^2 = tr C - <C e1, e1>`, solved for `delta_0 >= 0`.
    Squared,
}

/// The rotated Hessian `C = R^T A R`, where `R` is orthogonal with `R e1 = xi / |xi|`.
pub fn rotated_hessian(a: &[Vec<f64>], xi: &[f64]) -> Result<Vec<Vec<f64>>> {
    if !(norm(xi) > 0.0) {
        return Err(Error::ZeroGradient);
    }
    let frame = frame_with_axis(xi);
    let n = xi.len();
    let ar: Vec<Vec<f64>> = frame.iter().map(|col| (0..n).map(|i| dot(&a[i], col)).collect()).collect();
    Ok((0..n).map(|i| (0..n).map(|j| dot(&frame[i], &ar[j])).collect()).collect())
}

/// The `p = 1` ball coefficient computed through the rotated Hessian,
/// independently of [`normalized_p_laplacian`].
pub fn case_one_coefficient(probe: &QuadraticProbe, reading: CaseOneReading) -> Result<f64> {
    let c = rotated_hessian(&probe.hessian, &probe.gradient)?;
    let n = c.len();
    let transverse: f64 = (1..n).map(|j| c[j][j]).sum();
    let scaled = transverse / (2.0 * (n as f64 + 1.0));
    match reading {
        CaseOneReading::FirstPower => Ok(scaled),
        CaseOneReading::Squared if scaled >= 0.0 => Ok(scaled.sqrt()),
        CaseOneReading::Squared => Err(Error::Numerical("squared reading has no real solution".into())),
    }
}

type ValueFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;
type VectorFn = dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync;
type MatrixFn = dyn Fn(&[f64], f64) -> Vec<Vec<f64>> + Send + Sync;

/// A `C^2` field `u(y, s)` with optional analytic derivatives. Elliptic
/// fields ignore the time argument.
#[derive(Clone)]
pub struct SmoothField {
    pub name: String,
    pub dimension: usize,
    pub value: Arc<ValueFn>,
    pub gradient: Option<Arc<VectorFn>>,
    pub hessian: Option<Arc<MatrixFn>>,
    pub time_derivative: Option<Arc<ValueFn>>,
    /// Closed box `(lower, upper)` on which the field may be evaluated.
    pub domain: Option<(Vec<f64>, Vec<f64>)>,
}

impl fmt::Debug for SmoothField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothField")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("analytic_gradient", &self.gradient.is_some())
            .field("analytic_hessian", &self.hessian.is_some())
            .field("domain", &self.domain)
            .finish()
    }
}

impl SmoothField {
    pub fn new<F>(name: &str, dimension: usize, value: F) -> Self
    where
        F: Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            dimension,
            value: Arc::new(value),
            gradient: None,
            hessian: None,
            time_derivative: None,
            domain: None,
        }
    }

    pub fn with_gradient<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64], f64) -> Vec<f64> + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(f));
        self
    }

    pub fn with_hessian<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64], f64) -> Vec<Vec<f64>> + Send + Sync + 'static,
    {
        self.hessian = Some(Arc::new(f));
        self
    }

    pub fn with_time_derivative<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    {
        self.time_derivative = Some(Arc::new(f));
        self
    }

    pub fn with_domain(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.domain = Some((lower, upper));
        self
    }

    pub fn eval(&self, y: &[f64], t: f64) -> f64 {
        (self.value)(y, t)
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        match &self.domain {
            None => true,
            Some((lo, hi)) => y.iter().zip(lo.iter().zip(hi)).all(|(v, (a, b))| *a <= *v && *v <= *b),
        }
    }

    /// Errors unless the closed ball `B_r(x)` lies in the domain box.
    pub fn check_ball(&self, x: &[f64], r: f64) -> Result<()> {
        if let Some((lo, hi)) = &self.domain {
            for i in 0..x.len() {
                if x[i] - r < lo[i] || x[i] + r > hi[i] {
                    return Err(Error::DomainEscape(format!(
                        "ball of radius {r} around {x:?} leaves the domain of {}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn gradient_at(&self, x: &[f64], t: f64) -> Result<Vec<f64>> {
        if let Some(g) = &self.gradient {
            return Ok(g(x, t));
        }
        let scale = 1.0 + norm(x);
        let h = f64::EPSILON.cbrt() * scale;
        let coarse = fd_gradient(&*self.value, x, t, h);
        let fine = fd_gradient(&*self.value, x, t, 0.5 * h);
        check_agreement(&coarse, &fine, "gradient")?;
        Ok(fine)
    }

    /// Second-derivative differences use the step `eps^(1/4) (1 + |x|)`,
    /// which balances truncation and round-off for a second difference.
    pub fn hessian_at(&self, x: &[f64], t: f64) -> Result<Vec<Vec<f64>>> {
        if let Some(h) = &self.hessian {
            return Ok(h(x, t));
        }
        let scale = 1.0 + norm(x);
        let h = f64::EPSILON.powf(0.25) * scale;
        let coarse = fd_hessian(&*self.value, x, t, h);
        let fine = fd_hessian(&*self.value, x, t, 0.5 * h);
        check_agreement(&coarse.concat(), &fine.concat(), "hessian")?;
        Ok(fine)
    }

    pub fn time_derivative_at(&self, x: &[f64], t: f64) -> Result<f64> {
        if let Some(d) = &self.time_derivative {
            return Ok(d(x, t));
        }
        let h = f64::EPSILON.cbrt() * (1.0 + t.abs());
        let d = |h: f64| ((self.value)(x, t + h) - (self.value)(x, t - h)) / (2.0 * h);
        let (coarse, fine) = (d(h), d(0.5 * h));
        check_agreement(&[coarse], &[fine], "time derivative")?;
        Ok(fine)
    }

    /// The quadratic Taylor probe of the field at `(x, t)`.
    pub fn probe_at(&self, x: &[f64], t: f64, parabolic: bool) -> Result<QuadraticProbe> {
        let time_slope = if parabolic { self.time_derivative_at(x, t)? } else { 0.0 };
        let mut hessian = self.hessian_at(x, t)?;
        let n = hessian.len();
        for i in 0..n {
            for j in 0..i {
                let m = 0.5 * (hessian[i][j] + hessian[j][i]);
                hessian[i][j] = m;
                hessian[j][i] = m;
            }
        }
        QuadraticProbe::new(self.eval(x, t), self.gradient_at(x, t)?, hessian, time_slope)
    }
}

fn fd_gradient(f: &ValueFn, x: &[f64], t: f64, h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            y[i] = x[i] + h;
            let up = f(&y, t);
            y[i] = x[i] - h;
            let down = f(&y, t);
            y[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn fd_hessian(f: &ValueFn, x: &[f64], t: f64, h: f64) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut y = x.to_vec();
    let mut at = |di: (usize, f64), dj: (usize, f64)| {
        y.copy_from_slice(x);
        y[di.0] += di.1;
        y[dj.0] += dj.1;
        f(&y, t)
    };
    let mut hess = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = if i == j {
                (at((i, h), (i, 0.0)) - 2.0 * at((i, 0.0), (i, 0.0)) + at((i, -h), (i, 0.0))) / (h * h)
            } else {
                (at((i, h), (j, h)) - at((i, h), (j, -h)) - at((i, -h), (j, h)) + at((i, -h), (j, -h))) / (4.0 * h * h)
            };
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    hess
}

fn check_agreement(coarse: &[f64], fine: &[f64], what: &str) -> Result<()> {
    let scale = fine.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let gap = coarse.iter().zip(fine).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    if !(gap <= 1e-6 * scale) {
        return Err(Error::DerivativeCheck(format!("{what}: step-halving changed the estimate by {gap:.3e}")));
    }
    Ok(())
}

/// The probe materialized as a field centred at `(center, t0)`, with exact derivatives.
pub fn probe_field(probe: &QuadraticProbe, center: &[f64], t0: Option<f64>) -> SmoothField {
    let (p1, p2, p3) = (probe.clone(), probe.clone(), probe.clone());
    let (c1, c2) = (center.to_vec(), center.to_vec());
    let t0 = t0.unwrap_or(0.0);
    let value = move |y: &[f64], s: f64| {
        let d: Vec<f64> = y.iter().zip(&c1).map(|(a, b)| a - b).collect();
        p1.value + dot(&p1.gradient, &d) + p1.time_slope * (s - t0) + 0.5 * quadratic_form(&p1.hessian, &d)
    };
    let gradient = move |y: &[f64], _: f64| {
        let d: Vec<f64> = y.iter().zip(&c2).map(|(a, b)| a - b).collect();
        p2.gradient.iter().zip(&p2.hessian).map(|(g, row)| g + dot(row, &d)).collect()
    };
    let slope = probe.time_slope;
    SmoothField::new("probe", probe.dimension(), value)
        .with_gradient(gradient)
        .with_hessian(move |_, _| p3.hessian.clone())
        .with_time_derivative(move |_, _| slope)
}
