//! Floating-point root finding: Aberth iteration plus cluster detection from
//! Weierstrass inclusion disks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bound::cauchy_root_bound;
use super::poly::Poly;
use super::rational::{rational_to_f64, Coeff};
use crate::error::{Error, Result};

const MAX_ITER: usize = 2000;

/// A disk containing `multiplicity` roots (counted with multiplicity).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCluster {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: usize,
}

impl RootCluster {
    pub fn overlaps(&self, other: &RootCluster) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }
}

/// Horner evaluation of `p` and `p'` together with a running rounding-error bound for `p`.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let n = coeffs.len();
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let az = z.norm();
    for a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        abs_sum = abs_sum * az + a.norm();
    }
    let err = 4.0 * (n.max(1) as f64) * f64::EPSILON * abs_sum;
    (p, dp, err)
}

pub fn eval_numeric(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// `1 + max |a_k / a_n|` in floating point.
pub fn cauchy_bound_numeric(coeffs: &[Complex64]) -> f64 {
    let Some((lc, rest)) = coeffs.split_last() else { return 1.0 };
    1.0 + rest.iter().map(|a| (a / lc).norm()).fold(0.0, f64::max)
}

fn fujiwara_bound(coeffs: &[Complex64]) -> f64 {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let mut best: f64 = 0.0;
    for k in 1..=n {
        let mut r = (coeffs[n - k] / lc).norm().powf(1.0 / k as f64);
        if k == n {
            r *= 0.5f64.powf(1.0 / n as f64);
        }
        best = best.max(r);
    }
    (2.0 * best).max(f64::MIN_POSITIVE)
}

/// Simultaneous root estimates by Aberth-Ehrlich iteration.
///
/// `phase` rotates the initial circle of guesses; retries with a different phase act
/// as random restarts. An estimate stops moving once `|p(z)|` falls under the
/// rounding-error bound of its own evaluation.
pub fn aberth(coeffs: &[Complex64], phase: f64) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = {
        let mut c = coeffs.to_vec();
        while c.last().is_some_and(|a| *a == Complex64::new(0.0, 0.0)) {
            c.pop();
        }
        c
    };
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let r = fujiwara_bound(&coeffs);
    let tau = std::f64::consts::TAU;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(r, tau * k as f64 / n as f64 + phase)).collect();
    let mut frozen = vec![false; n];
    let mut last_step = vec![f64::INFINITY; n];
    for _ in 0..MAX_ITER {
        let mut active = false;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (p, dp, err) = eval_with_derivative(&coeffs, z[i]);
            if p.norm() <= err {
                frozen[i] = true;
                last_step[i] = 0.0;
                continue;
            }
            active = true;
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let mut w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                w = ratio;
            }
            if !w.is_finite() {
                // p'(z) = 0 away from a root: nudge
                w = Complex64::new(r * 1e-3, r * 1e-3);
            }
            z[i] -= w;
            last_step[i] = w.norm();
            if w.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                frozen[i] = true;
            }
        }
        if !active {
            break;
        }
    }
    for i in 0..n {
        if !z[i].is_finite() || (!frozen[i] && last_step[i] > 1e-6 * (1.0 + z[i].norm())) {
            return Err(Error::NonConvergence { iterations: MAX_ITER });
        }
    }
    Ok(z)
}

/// Group root estimates into clusters.
///
/// Each estimate `z_i` gets the inclusion radius `n |W_i|` with the Weierstrass
/// correction `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`, where `|p(z_i)|` is
/// inflated by its rounding-error bound. Connected components of the union of the
/// disks contain as many roots as disks. Radii are floored at `tol / 2`, so
/// estimates within `tol` of each other always merge.
pub fn cluster_estimates(coeffs: &[Complex64], estimates: &[Complex64], tol: f64) -> Vec<RootCluster> {
    let n = estimates.len();
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let (p, _, err) = eval_with_derivative(coeffs, estimates[i]);
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(lc, |acc, j| acc * (estimates[i] - estimates[j]));
            let w = (p.norm() + err) / denom.norm();
            let rho = n as f64 * w;
            if rho.is_finite() { rho.max(tol / 2.0) } else { f64::INFINITY }
        })
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (estimates[i] - estimates[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
        .into_iter()
        .map(|g| {
            let center = g.iter().map(|&i| estimates[i]).sum::<Complex64>() / g.len() as f64;
            let radius = g
                .iter()
                .map(|&i| (estimates[i] - center).norm() + radii[i])
                .fold(0.0, f64::max);
            RootCluster { center, radius, multiplicity: g.len() }
        })
        .collect()
}

/// Default clustering radius: `1e-8` relative to a root bound, the smaller of the
/// Cauchy and Fujiwara bounds. The Cauchy bound alone grows with the coefficients,
/// not the roots, and can exceed the root radius by orders of magnitude.
pub fn default_cluster_tol<C: Coeff>(f: &Poly<C>) -> f64 {
    let cauchy = rational_to_f64(&cauchy_root_bound(std::slice::from_ref(f)));
    let coeffs = f.to_c64();
    if coeffs.len() < 2 {
        return 1e-8 * cauchy;
    }
    1e-8 * cauchy.min(fujiwara_bound(&coeffs).max(f64::EPSILON))
}

/// Numeric root clusters of an exact polynomial; multiplicities sum to the degree.
pub fn complex_roots_numeric<C: Coeff>(f: &Poly<C>, tol: f64) -> Result<Vec<RootCluster>> {
    complex_roots_numeric_seeded(f, tol, 0)
}

/// As [`complex_roots_numeric`], with the initial guesses rotated by a seed-derived
/// phase. A failed attempt is retried with fresh phases up to three times.
pub fn complex_roots_numeric_seeded<C: Coeff>(f: &Poly<C>, tol: f64, seed: u64) -> Result<Vec<RootCluster>> {
    if f.is_zero() {
        return Err(Error::Precondition("complex_roots_numeric of the zero polynomial".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("cluster tolerance must be positive".into()));
    }
    let coeffs = f.to_c64();
    let mut last_err = None;
    for attempt in 0..4u64 {
        let phase = 0.4 + 0.7548776662466927 * (seed.wrapping_mul(4).wrapping_add(attempt) % 1024) as f64;
        match aberth(&coeffs, phase) {
            Ok(est) => return Ok(cluster_estimates(&coeffs, &est, tol)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

/// Numeric polynomial `sum lambda_i p_i`.
pub fn linear_combination(polys: &[Vec<Complex64>], weights: &[Complex64]) -> Vec<Complex64> {
    let len = polys.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (p, w) in polys.iter().zip(weights) {
        for (k, a) in p.iter().enumerate() {
            out[k] += a * w;
        }
    }
    out
}

/// Monic numeric polynomial with the given roots.
pub fn poly_from_roots_numeric(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (k, a) in out.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        out = next;
    }
    out
}

pub fn derivative_numeric(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}
