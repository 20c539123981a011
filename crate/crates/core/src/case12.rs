//! The case `(m, n) = (1, 2)` over R: monic squarefree real polynomials, their
//! root configurations in the upper half plane, and the electric-field map.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::case21::Census;
use crate::error::{Error, Result};
use crate::exactalg::numeric::{cauchy_bound_numeric, derivative_numeric, eval_numeric, poly_from_roots_numeric};
use crate::exactalg::{
    cauchy_root_bound, complex_roots_numeric, count_distinct_real_roots, default_cluster_tol, gcd_exact, int,
    rational_from_f64, real_roots_exact, QPoly, Rational,
};
use crate::harness::random::{random_monic, trial_rng};
use crate::mapdeg::{winding_number, SpherePoint, DEFAULT_REFINEMENT_CAP};

const CENSUS_ATTEMPTS: usize = 100;

fn require_squarefree(f: &QPoly) -> Result<usize> {
    let d = f.degree().unwrap_or(0);
    if d == 0 || !f.is_monic() {
        return Err(Error::Precondition("expected a monic polynomial of positive degree".into()));
    }
    if gcd_exact(f, &f.derivative(1)).degree() != Some(0) {
        return Err(Error::NotMember("polynomial has a repeated root".into()));
    }
    Ok(d)
}

/// Number `j` of conjugate pairs of non-real roots, from an exact real-root count.
pub fn component_of_12(f: &QPoly) -> Result<usize> {
    let d = require_squarefree(f)?;
    Ok((d - count_distinct_real_roots(f)) / 2)
}

/// `prod_{k=1}^{d-2j} (z - k) * prod_{k=1}^{j} (z^2 + k^2)`.
pub fn representative_12(d: usize, j: usize) -> Result<QPoly> {
    if d == 0 || 2 * j > d {
        return Err(Error::Precondition(format!("no component with d = {d}, j = {j}")));
    }
    let reals: Vec<Rational> = (1..=(d - 2 * j) as i64).map(int).collect();
    let mut f = QPoly::from_roots(reals.iter());
    for k in 1..=j as i64 {
        f = &f * &QPoly::from_ints(&[k * k, 0, 1]);
    }
    Ok(f)
}

/// Roots of a squarefree real polynomial: `j` points in the upper half plane and
/// the sorted real roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfPlaneConfig {
    pub points: Vec<Complex64>,
    pub real_points: Vec<f64>,
}

impl HalfPlaneConfig {
    /// Numeric monic polynomial with these roots and their conjugates.
    pub fn to_polynomial(&self) -> Vec<Complex64> {
        let mut roots: Vec<Complex64> = self.real_points.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for a in &self.points {
            roots.push(*a);
            roots.push(a.conj());
        }
        poly_from_roots_numeric(&roots)
    }
}

pub fn to_configuration(f: &QPoly) -> Result<HalfPlaneConfig> {
    let j = component_of_12(f)?;
    let mut real_points = Vec::new();
    for mut r in real_roots_exact(f) {
        let w = rational_from_f64(f64::EPSILON * (1.0 + r.approx().abs()));
        r.refine_to(&w);
        real_points.push(r.approx());
    }
    let mut centers: Vec<Complex64> = complex_roots_numeric(f, default_cluster_tol(f))?
        .into_iter()
        .flat_map(|c| std::iter::repeat(c.center).take(c.multiplicity))
        .collect();
    centers.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap());
    let mut points: Vec<Complex64> = centers.into_iter().take(j).map(|z| Complex64::new(z.re, z.im.abs())).collect();
    points.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(HalfPlaneConfig { points, real_points })
}

/// `1 + sum 1 / (alpha - a_k)`, the affine chart of `[f : f + f']` for
/// `f = prod (z - a_k)`; infinity at a configuration point.
pub fn electric_field(points: &[Complex64], alpha: Complex64) -> SpherePoint {
    if points.contains(&alpha) {
        return SpherePoint::Infinity;
    }
    SpherePoint::Finite(points.iter().fold(Complex64::new(1.0, 0.0), |acc, a| acc + (alpha - a).inv()))
}

/// Degree of `alpha -> [f(alpha) : f(alpha) + f'(alpha)]`, `f = prod (z - a_k)`,
/// as the zero count of a generic combination of the two coordinates on a circle
/// enclosing all zeros.
pub fn electric_degree(points: &[Complex64]) -> Result<i64> {
    for (k, a) in points.iter().enumerate() {
        if points[..k].contains(a) {
            return Err(Error::Precondition("configuration points must be distinct".into()));
        }
    }
    let f = poly_from_roots_numeric(points);
    let df = derivative_numeric(&f);
    let g: Vec<Complex64> = f.iter().enumerate().map(|(k, c)| c + df.get(k).copied().unwrap_or_default()).collect();
    let (l0, l1) = (Complex64::from_polar(1.0, 0.7), Complex64::from_polar(0.8, 2.3));
    let section: Vec<Complex64> = f.iter().zip(&g).map(|(a, b)| l0 * a + l1 * b).collect();
    let radius = 2.0 * cauchy_bound_numeric(&section).max(cauchy_bound_numeric(&f)).max(cauchy_bound_numeric(&g));
    winding_number(|t| eval_numeric(&section, Complex64::from_polar(radius, t)), DEFAULT_REFINEMENT_CAP)
}

/// Exponent sum of a loop of unordered configurations: the winding of the squared
/// Vandermonde `prod_{i<k} (a_i - a_k)^2`, i.e. the total half-turns of all pairs.
/// Symmetric in the points, so no labelling along the loop is needed.
pub fn abelian_braid_invariant(mut config_loop: impl FnMut(f64) -> Vec<Complex64>, cap: usize) -> Result<i64> {
    winding_number(|t| squared_vandermonde(&config_loop(t)), cap)
}

/// The same invariant for a loop given by closely spaced samples.
pub fn abelian_braid_invariant_sampled(configs: &[Vec<Complex64>]) -> Result<i64> {
    let vals: Vec<Complex64> = configs.iter().map(|c| squared_vandermonde(c)).collect();
    crate::mapdeg::winding_of_polygon(&vals)
}

pub fn squared_vandermonde(points: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for i in 0..points.len() {
        for k in (i + 1)..points.len() {
            let d = points[i] - points[k];
            acc *= d * d;
        }
    }
    acc
}

/// The configuration `{1 + i, 2 + i, ..., j + i}` with the first two points
/// exchanged counterclockwise as the parameter runs over `[0, 2pi]`: the braid
/// generator `sigma_1` as a closed loop of unordered configurations.
pub fn generator_loop_12(j: usize) -> impl Fn(f64) -> Vec<Complex64> {
    move |theta: f64| {
        let mut pts: Vec<Complex64> = (1..=j).map(|k| Complex64::new(k as f64, 1.0)).collect();
        if j >= 2 {
            let c = Complex64::new(1.5, 1.0);
            let r = Complex64::from_polar(0.5, theta / 2.0);
            pts[0] = c - r;
            pts[1] = c + r;
        }
        pts
    }
}

/// Conjugate pair `+-iT` added from infinity: `f (z^2 + T^2)`.
pub fn stabilize_12(f: &QPoly, t: &Rational) -> Result<QPoly> {
    require_squarefree(f)?;
    let bound = cauchy_root_bound(std::slice::from_ref(f));
    if t <= &bound {
        return Err(Error::Precondition(format!(
            "T = {t} must exceed the root bound {bound}"
        )));
    }
    Ok(f * &QPoly::new(vec![t * t, int(0), int(1)]))
}

/// `cauchy_root_bound([f]) + 1`.
pub fn default_t_12(f: &QPoly) -> Rational {
    cauchy_root_bound(std::slice::from_ref(f)) + int(1)
}

/// Add the point `iT` to each configuration of a loop, matching [`stabilize_12`].
pub fn stabilize_config_loop(config_loop: impl Fn(f64) -> Vec<Complex64>, t: f64) -> impl Fn(f64) -> Vec<Complex64> {
    move |theta| {
        let mut pts = config_loop(theta);
        pts.push(Complex64::new(0.0, t));
        pts
    }
}

/// Random monic real polynomials of degree `d`, rejection sampled for
/// squarefreeness, tallied by `j`.
pub fn census_12(d: usize, samples: usize, seed: u64) -> Result<Census> {
    if d == 0 || samples == 0 {
        return Err(Error::Precondition("census needs d >= 1 and samples >= 1".into()));
    }
    let parts: Vec<Census> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut c = Census::default();
            for _ in 0..CENSUS_ATTEMPTS {
                match component_of_12(&random_monic(d, &mut rng)) {
                    Ok(j) => {
                        c.counts.insert(j as i64, 1);
                        return c;
                    }
                    Err(_) => c.rejected += 1,
                }
            }
            c.failed += 1;
            c
        })
        .collect();
    Ok(parts.into_iter().fold(Census::default(), Census::merge))
}

/// Points evenly spaced on a circle, for quick configuration loops.
pub fn circle_points(j: usize, center: Complex64, radius: f64) -> Vec<Complex64> {
    (0..j).map(|k| center + Complex64::from_polar(radius, TAU * k as f64 / j.max(1) as f64)).collect()
}
