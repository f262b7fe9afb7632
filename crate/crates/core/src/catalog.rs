//! Named built-in test fields with analytic derivatives.
//!
//! A field is selected by `name` or `name:args`, e.g. `const:7`,
//! `linear:1,2`, `normpow:4`, `radial:4`, `probe:11`.

use crate::error::{Error, Result};
use crate::geometry::dot;
use crate::plaplace::{probe_field, QuadraticProbe, SmoothField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub arguments: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: [CatalogEntry; 9] = [
    CatalogEntry { name: "const", arguments: "c (default 1)", description: "constant c" },
    CatalogEntry { name: "linear", arguments: "xi_1,...,xi_N (default all ones)", description: "xi . y" },
    CatalogEntry {
        name: "probe",
        arguments: "seed (optional)",
        description: "quadratic probe at the origin; identity Hessian and xi = e1 without a seed, random otherwise",
    },
    CatalogEntry { name: "normsq", arguments: "", description: "|y|^2" },
    CatalogEntry { name: "normpow", arguments: "n", description: "|y|^n" },
    CatalogEntry { name: "harmonic", arguments: "", description: "y_1^2 - y_2^2, harmonic" },
    CatalogEntry {
        name: "radial",
        arguments: "p (default 4)",
        description: "|y|^((p-N)/(p-1)), log|y| for p = N, |y| for p = inf; p-harmonic away from 0",
    },
    CatalogEntry {
        name: "aronsson",
        arguments: "",
        description: "y_1^(4/3) - y_2^(4/3) on the positive quadrant (N = 2), infinity-harmonic",
    },
    CatalogEntry { name: "caloric", arguments: "", description: "|y|^2 / (2N) + t, solves the heat equation" },
];

/// A catalog field together with its quadratic probe when it is one.
#[derive(Debug, Clone)]
pub struct CatalogField {
    pub field: SmoothField,
    pub probe: Option<QuadraticProbe>,
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn bad(spec: &str, why: &str) -> Error {
    Error::InvalidParameter(format!("field `{spec}`: {why}"))
}

fn numbers(spec: &str, args: Option<&str>) -> Result<Vec<f64>> {
    match args {
        None => Ok(Vec::new()),
        Some(a) => {
            a.split(',').map(|s| s.trim().parse::<f64>().map_err(|_| bad(spec, "arguments must be numbers"))).collect()
        }
    }
}

/// `|y|^k` with analytic gradient and Hessian.
fn norm_power(name: &str, n: usize, k: f64) -> SmoothField {
    SmoothField::new(name, n, move |y, _| dot(y, y).powf(0.5 * k))
        .with_gradient(move |y, _| {
            let s = k * dot(y, y).powf(0.5 * k - 1.0);
            y.iter().map(|v| s * v).collect()
        })
        .with_hessian(move |y, _| {
            let r2 = dot(y, y);
            let s = k * r2.powf(0.5 * k - 1.0);
            (0..y.len())
                .map(|i| {
                    (0..y.len()).map(|j| s * (if i == j { 1.0 } else { 0.0 } + (k - 2.0) * y[i] * y[j] / r2)).collect()
                })
                .collect()
        })
}

/// Looks up a catalog field for dimension `n`.
pub fn field(spec: &str, n: usize) -> Result<CatalogField> {
    if n == 0 {
        return Err(bad(spec, "dimension must be positive"));
    }
    let (name, args) = match spec.split_once(':') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (spec.trim(), None),
    };
    let nums = || numbers(spec, args);
    let plain = |f: SmoothField| Ok(CatalogField { field: f, probe: None });
    match name {
        "const" => {
            let c = nums()?.first().copied().unwrap_or(1.0);
            plain(
                SmoothField::new(spec, n, move |_, _| c)
                    .with_gradient(move |_, _| vec![0.0; n])
                    .with_hessian(move |_, _| vec![vec![0.0; n]; n])
                    .with_time_derivative(|_, _| 0.0),
            )
        }
        "linear" => {
            let mut xi = nums()?;
            if xi.is_empty() {
                xi = vec![1.0; n];
            }
            if xi.len() != n {
                return Err(bad(spec, &format!("needs {n} coefficients")));
            }
            let g = xi.clone();
            plain(
                SmoothField::new(spec, n, move |y, _| dot(&xi, y))
                    .with_gradient(move |_, _| g.clone())
                    .with_hessian(move |_, _| vec![vec![0.0; n]; n])
                    .with_time_derivative(|_, _| 0.0),
            )
        }
        "probe" => {
            let probe = match nums()?.as_slice() {
                [] => {
                    let mut xi = vec![0.0; n];
                    xi[0] = 1.0;
                    QuadraticProbe::new(0.0, xi, identity(n), 0.0)?
                }
                [seed] if *seed >= 0.0 && seed.fract() == 0.0 => {
                    QuadraticProbe::random(n, &mut ChaCha8Rng::seed_from_u64(*seed as u64), true)
                }
                _ => return Err(bad(spec, "expects a single nonnegative integer seed")),
            };
            let mut field = probe_field(&probe, &vec![0.0; n], Some(0.0));
            field.name = spec.to_string();
            Ok(CatalogField { field, probe: Some(probe) })
        }
        "normsq" => plain(norm_power(spec, n, 2.0)),
        "normpow" => match nums()?.as_slice() {
            [k] if *k > 0.0 => plain(norm_power(spec, n, *k)),
            _ => Err(bad(spec, "expects one positive power")),
        },
        "harmonic" => {
            if n < 2 {
                return Err(bad(spec, "needs N >= 2"));
            }
            plain(
                SmoothField::new(spec, n, |y, _| y[0] * y[0] - y[1] * y[1])
                    .with_gradient(move |y, _| {
                        let mut g = vec![0.0; n];
                        g[0] = 2.0 * y[0];
                        g[1] = -2.0 * y[1];
                        g
                    })
                    .with_hessian(move |_, _| {
                        let mut h = vec![vec![0.0; n]; n];
                        h[0][0] = 2.0;
                        h[1][1] = -2.0;
                        h
                    }),
            )
        }
        "radial" => {
            let p = match args {
                Some("inf") => f64::INFINITY,
                _ => nums()?.first().copied().unwrap_or(4.0),
            };
            if !(p > 1.0) {
                return Err(bad(spec, "needs p > 1"));
            }
            let nf = n as f64;
            if p == nf {
                let field = SmoothField::new(spec, n, |y, _| 0.5 * dot(y, y).ln())
                    .with_gradient(|y, _| {
                        let r2 = dot(y, y);
                        y.iter().map(|v| v / r2).collect()
                    })
                    .with_hessian(|y, _| {
                        let r2 = dot(y, y);
                        (0..y.len())
                            .map(|i| {
                                (0..y.len())
                                    .map(|j| (if i == j { 1.0 } else { 0.0 } - 2.0 * y[i] * y[j] / r2) / r2)
                                    .collect()
                            })
                            .collect()
                    });
                return plain(field);
            }
            let k = if p.is_infinite() { 1.0 } else { (p - nf) / (p - 1.0) };
            plain(norm_power(spec, n, k))
        }
        "aronsson" => {
            if n != 2 {
                return Err(bad(spec, "is defined for N = 2"));
            }
            let field = SmoothField::new(spec, 2, |y, _| y[0].powf(4.0 / 3.0) - y[1].powf(4.0 / 3.0))
                .with_gradient(|y, _| vec![4.0 / 3.0 * y[0].cbrt(), -4.0 / 3.0 * y[1].cbrt()])
                .with_hessian(|y, _| {
                    vec![vec![4.0 / 9.0 / y[0].cbrt().powi(2), 0.0], vec![0.0, -4.0 / 9.0 / y[1].cbrt().powi(2)]]
                })
                .with_domain(vec![0.0, 0.0], vec![f64::INFINITY, f64::INFINITY]);
            plain(field)
        }
        "caloric" => {
            let nf = n as f64;
            plain(
                SmoothField::new(spec, n, move |y, t| dot(y, y) / (2.0 * nf) + t)
                    .with_gradient(move |y, _| y.iter().map(|v| v / nf).collect())
                    .with_hessian(move |_, _| {
                        let mut h = identity(n);
                        h.iter_mut().for_each(|r| r.iter_mut().for_each(|v| *v /= nf));
                        h
                    })
                    .with_time_derivative(|_, _| 1.0),
            )
        }
        _ => Err(bad(spec, "unknown field; see the catalog")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plaplace::normalized_p_laplacian;
    use crate::pmean::Exponent;

    #[test]
    fn every_entry_resolves() {
        for e in ENTRIES {
            let spec = if e.name == "normpow" { "normpow:3".to_string() } else { e.name.to_string() };
            let f = field(&spec, 2).unwrap();
            assert!(f.field.eval(&[0.6, 0.4], 0.5).is_finite(), "{}", e.name);
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        for spec in ["normpow:3", "radial:4", "radial:2", "radial:inf", "aronsson", "caloric", "harmonic", "probe:3"] {
            let f = field(spec, 2).unwrap().field;
            let x = [0.7, 0.5];
            let mut fd = f.clone();
            fd.gradient = None;
            fd.hessian = None;
            let (ga, gf) = (f.gradient_at(&x, 0.0).unwrap(), fd.gradient_at(&x, 0.0).unwrap());
            let (ha, hf) = (f.hessian_at(&x, 0.0).unwrap(), fd.hessian_at(&x, 0.0).unwrap());
            for i in 0..2 {
                assert!((ga[i] - gf[i]).abs() < 1e-6 * (1.0 + ga[i].abs()), "{spec}");
                for j in 0..2 {
                    assert!((ha[i][j] - hf[i][j]).abs() < 1e-6 * (1.0 + ha[i][j].abs()), "{spec}: {ha:?} vs {hf:?}");
                }
            }
        }
    }

    #[test]
    fn p_harmonic_entries_are_p_harmonic() {
        let x = [0.7, 0.5];
        for (spec, p) in [
            ("radial:4", Exponent::Finite(4.0)),
            ("radial:3", Exponent::Finite(3.0)),
            ("aronsson", Exponent::Infinity),
            ("harmonic", Exponent::Two),
        ] {
            let f = field(spec, 2).unwrap().field;
            let lap =
                normalized_p_laplacian(&f.hessian_at(&x, 0.0).unwrap(), &f.gradient_at(&x, 0.0).unwrap(), p).unwrap();
            assert!(lap.abs() < 1e-13, "{spec}: {lap}");
        }
    }

    #[test]
    fn unknown_and_malformed_specs_fail() {
        assert!(field("nope", 2).is_err());
        assert!(field("linear:1", 2).is_err());
        assert!(field("normpow", 2).is_err());
        assert!(field("aronsson", 3).is_err());
        assert!(field("probe:1.5", 2).is_err());
    }
}
