//! Experiments contrasting the variational p-mean with the explicit
//! combination means: continuity under `|z|^n`, and randomized searches for
//! monotonicity violations.

use super::{median_raw, mpr_combination, p_mean_ball, p_mean_unchecked, Exponent};
use crate::error::{Error, Result};
use crate::measure::{unit_ball_rule, unit_sphere_rule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Which mean a monotonicity search exercises. The explicit means are
/// evaluated on the samples themselves: average, median and extrema of the
/// sample set stand in for their continuous counterparts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum MeanKind {
    PMean(Exponent),
    Mpr(f64),
    Hr1(f64),
    Hr2(f64),
}

impl MeanKind {
    /// Evaluates the mean of a weighted sample set living in dimension `n`.
    pub fn evaluate(self, values: &[f64], weights: &[f64], n: usize) -> Result<f64> {
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let avg = || values.iter().zip(weights).map(|(u, w)| u * w).sum::<f64>() / weights.iter().sum::<f64>();
        match self {
            MeanKind::PMean(p) => Ok(p_mean_unchecked(values, weights, p.validate()?)?.mean),
            MeanKind::Mpr(p) if p > 1.0 => {
                Ok(if p.is_infinite() { 0.5 * (lo + hi) } else { mpr_combination(avg(), lo, hi, n, p) })
            }
            MeanKind::Hr1(p) if p >= 1.0 && p.is_finite() => {
                Ok(median_raw(values, weights) / p + (p - 1.0) / (2.0 * p) * (lo + hi))
            }
            MeanKind::Hr2(p) if p >= 1.0 && p.is_finite() => {
                Ok((2.0 - p) / p * median_raw(values, weights) + 2.0 * (p - 1.0) / p * avg())
            }
            other => Err(Error::OutOfRange(format!("{other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mean: MeanKind,
    pub dimension: usize,
    pub pairs: usize,
    pub sample_size: usize,
    pub seed: u64,
}

/// A pair `u <= v` (componentwise) with `mean(u) > mean(v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub pair_index: u64,
    pub weights: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub mean_u: f64,
    pub mean_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub pairs_tested: usize,
    pub violations: usize,
    /// The first few witnesses, in pair order.
    pub witnesses: Vec<Witness>,
}

const MAX_STORED_WITNESSES: usize = 5;

/// Draws the ordered pair with the given index. Each pair has its own
/// ChaCha stream, so any witness can be regenerated from `(seed, index)`.
pub fn sample_pair(seed: u64, index: u64, size: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let weights: Vec<f64> = (0..size).map(|_| rng.random_range(0.05..1.0)).collect();
    let u: Vec<f64> = (0..size).map(|_| rng.random_range(-1.0..1.0)).collect();
    let v = u.iter().map(|&x| if rng.random_bool(0.5) { x } else { x + rng.random_range(0.0..1.0) }).collect();
    (weights, u, v)
}

pub fn monotonicity_search(config: SearchConfig) -> Result<SearchReport> {
    if config.sample_size < 2 {
        return Err(Error::InvalidParameter("monotonicity search needs at least two samples per set".into()));
    }
    let mut violations = 0;
    let mut witnesses = Vec::new();
    for index in 0..config.pairs as u64 {
        let (weights, u, v) = sample_pair(config.seed, index, config.sample_size);
        let mean_u = config.mean.evaluate(&u, &weights, config.dimension)?;
        let mean_v = config.mean.evaluate(&v, &weights, config.dimension)?;
        if mean_u > mean_v + 1e-12 {
            violations += 1;
            if witnesses.len() < MAX_STORED_WITNESSES {
                witnesses.push(Witness { pair_index: index, weights, u, v, mean_u, mean_v });
            }
        }
    }
    Ok(SearchReport { config, pairs_tested: config.pairs, violations, witnesses })
}

/// Recomputes a stored witness from its seed and index.
pub fn replay_witness(config: &SearchConfig, witness: &Witness) -> Result<bool> {
    let (weights, u, v) = sample_pair(config.seed, witness.pair_index, config.sample_size);
    let mean_u = config.mean.evaluate(&u, &weights, config.dimension)?;
    let mean_v = config.mean.evaluate(&v, &weights, config.dimension)?;
    Ok(weights == witness.weights
        && u == witness.u
        && v == witness.v
        && mean_u == witness.mean_u
        && mean_v == witness.mean_v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContrastRow {
    pub power: u32,
    pub dimension: usize,
    /// Ball average of `|z|^n` on the unit ball.
    pub mean_two: f64,
    /// Exact value `N / (N + n)`.
    pub mean_two_exact: f64,
    /// Min-max mean of `|z|^n` on the closed unit ball.
    pub mean_inf: f64,
}

/// The continuity contrast for `u_n(z) = |z|^n` on the unit ball: the
/// average tends to 0 while the min-max mean stays at `1/2`.
pub fn continuity_contrast(power: u32, dimension: usize) -> Result<ContrastRow> {
    let order = power as usize + 2;
    let ball = unit_ball_rule(dimension, order)?;
    let sphere = unit_sphere_rule(dimension, 8)?;
    let u = |z: &[f64]| z.iter().map(|c| c * c).sum::<f64>().sqrt().powi(power as i32);
    let center = vec![0.0; dimension];
    let mean_two = p_mean_ball(&u, &center, 1.0, Exponent::Two, &ball, None)?.mean;
    let mean_inf = p_mean_ball(&u, &center, 1.0, Exponent::Infinity, &ball, Some(&sphere))?.mean;
    Ok(ContrastRow {
        power,
        dimension,
        mean_two,
        mean_two_exact: dimension as f64 / (dimension as f64 + power as f64),
        mean_inf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contrast_values() {
        let row = continuity_contrast(200, 2).unwrap();
        assert!((row.mean_two - 2.0 / 202.0).abs() < 1e-10, "{}", row.mean_two);
        assert_eq!(row.mean_inf, 0.5);
    }

    #[test]
    fn pmean_search_finds_nothing() {
        let cfg = SearchConfig {
            mean: MeanKind::PMean(Exponent::Finite(4.0)),
            dimension: 2,
            pairs: 500,
            sample_size: 6,
            seed: 3,
        };
        assert_eq!(monotonicity_search(cfg).unwrap().violations, 0);
    }

    #[test]
    fn hr2_beyond_two_is_not_monotone_and_replays() {
        let cfg = SearchConfig { mean: MeanKind::Hr2(4.0), dimension: 2, pairs: 2000, sample_size: 6, seed: 11 };
        let report = monotonicity_search(cfg).unwrap();
        assert!(report.violations > 0);
        for w in &report.witnesses {
            assert!(w.u.iter().zip(&w.v).all(|(a, b)| a <= b));
            assert!(replay_witness(&cfg, w).unwrap());
        }
    }

    #[test]
    fn sample_pairs_are_reproducible() {
        assert_eq!(sample_pair(5, 17, 4), sample_pair(5, 17, 4));
        assert_ne!(sample_pair(5, 17, 4), sample_pair(5, 18, 4));
    }
}
