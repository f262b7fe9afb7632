//! Small dense-vector helpers and reference measures.

use statrs::function::gamma::gamma;
use std::f64::consts::PI;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Lebesgue measure of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Surface measure of the unit sphere `S^{n-1}` (`2` for `n = 1`).
pub fn unit_sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Orthonormal basis of `R^n` whose first vector is `axis / |axis|`.
///
/// Uses a Householder reflection, so the remaining vectors span the
/// orthogonal complement of the axis.
pub fn frame_with_axis(axis: &[f64]) -> Vec<Vec<f64>> {
    let n = axis.len();
    let len = norm(axis);
    assert!(len > 0.0, "frame axis must be nonzero");
    let d: Vec<f64> = axis.iter().map(|a| a / len).collect();
    // Reflect e1 onto +-d: H = I - 2 v v^T / |v|^2 with v = e1 + sign(d0) d, free of cancellation.
    let sign = if d[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = d.iter().map(|x| sign * x).collect::<Vec<_>>();
    v[0] += 1.0;
    let vv = dot(&v, &v);
    let mut basis = Vec::with_capacity(n);
    for j in 0..n {
        let mut col: Vec<f64> = (0..n)
            .map(|i| {
                let id = if i == j { 1.0 } else { 0.0 };
                id - 2.0 * v[i] * v[j] / vv
            })
            .collect();
        if j == 0 {
            // H e1 = -sign * d; normalise the orientation so column 0 equals d.
            let s = if dot(&col, &d) < 0.0 { -1.0 } else { 1.0 };
            col.iter_mut().for_each(|c| *c *= s);
        }
        basis.push(col);
    }
    basis
}

/// Point on `S^{n-1}` from hyperspherical angles (`n - 1` of them).
pub fn sphere_point(angles: &[f64], out: &mut [f64]) {
    let n = out.len();
    debug_assert_eq!(angles.len() + 1, n);
    let mut s = 1.0;
    for i in 0..n - 1 {
        out[i] = s * angles[i].cos();
        s *= angles[i].sin();
    }
    out[n - 1] = s;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_measures() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(1) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn frame_is_orthonormal_with_given_axis() {
        for axis in [vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.3, -2.0, 0.5], vec![1.0, 1.0, 1.0, -1.0]] {
            let f = frame_with_axis(&axis);
            let len = norm(&axis);
            for (i, u) in f.iter().enumerate() {
                for (j, v) in f.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot(u, v) - expect).abs() < 1e-13);
                }
            }
            for (a, b) in f[0].iter().zip(&axis) {
                assert!((a - b / len).abs() < 1e-14);
            }
        }
    }
}
