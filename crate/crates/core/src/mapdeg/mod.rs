//! The natural maps into projective space and their degrees.

pub mod winding;

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::numeric::{cauchy_bound_numeric, eval_numeric, linear_combination};
use crate::exactalg::{cauchy_root_bound, gcd_exact, rational_to_f64, real_roots_exact, Coeff, Poly, QPoly};
use crate::nonres::{jet_components, require_member, SystemTuple, TupleData};

pub use winding::{
    sample_path, winding_number, winding_number_sampled, winding_of_polygon, LoopSample, DEFAULT_REFINEMENT_CAP,
};

/// Coordinates below this magnitude count as zero.
pub const ZERO_COORD: f64 = 1e-13;
/// Relative tolerance for projective equality.
pub const PROJECTIVE_TOL: f64 = 1e-9;

/// A point of complex projective space, kept as a representative vector.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|c| c.norm() < ZERO_COORD) {
            return Err(Error::InvalidInput("projective point needs a nonzero coordinate".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn conj(&self) -> ProjectivePoint {
        ProjectivePoint { coords: self.coords.iter().map(Complex64::conj).collect() }
    }

    /// Representative scaled so that the first coordinate of largest modulus is 1.
    pub fn normalized(&self) -> Vec<Complex64> {
        let k = self.pivot();
        let p = self.coords[k];
        self.coords.iter().map(|c| c / p).collect()
    }

    fn pivot(&self) -> usize {
        let mut best = 0;
        for (k, c) in self.coords.iter().enumerate() {
            if c.norm() > self.coords[best].norm() {
                best = k;
            }
        }
        best
    }

    /// Proportionality up to `rel_tol`, measured after normalizing both points at
    /// the pivot of `self`.
    pub fn approx_eq(&self, other: &ProjectivePoint, rel_tol: f64) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let k = self.pivot();
        let omax = other.coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if other.coords[k].norm() <= rel_tol * omax {
            return false;
        }
        let a = self.normalized();
        let ok = other.coords[k];
        a.iter().zip(&other.coords).all(|(x, y)| (x - y / ok).norm() <= rel_tol)
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, PROJECTIVE_TOL)
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

/// The jet vector `(F_n(f_1)(alpha), ..., F_n(f_m)(alpha))`, or all ones at infinity.
pub fn eval_natural_map(t: &SystemTuple, alpha: SpherePoint) -> Result<ProjectivePoint> {
    require_member(t)?;
    if t.degree().is_none() {
        return Err(Error::Precondition("natural map needs equal degrees".into()));
    }
    let coords = match alpha {
        SpherePoint::Infinity => vec![Complex64::new(1.0, 0.0); t.m() * t.n()],
        SpherePoint::Finite(z) => jet_vectors(t).iter().map(|p| eval_numeric(p, z)).collect(),
    };
    ProjectivePoint::new(coords)
        .map_err(|_| Error::NotMember(format!("jet vector vanishes numerically at {alpha:?}")))
}

/// Numeric coefficient vectors of all `mn` jet components.
pub fn jet_vectors(t: &SystemTuple) -> Vec<Vec<Complex64>> {
    match t.data() {
        TupleData::Real(p) => jet_components(p, t.n()).iter().map(Poly::to_c64).collect(),
        TupleData::Complex(p) => jet_components(p, t.n()).iter().map(Poly::to_c64).collect(),
    }
}

fn jet_bound(t: &SystemTuple) -> f64 {
    fn b<C: Coeff>(p: &[Poly<C>], n: usize) -> f64 {
        rational_to_f64(&cauchy_root_bound(&jet_components(p, n)))
    }
    match t.data() {
        TupleData::Real(p) => b(p, t.n()),
        TupleData::Complex(p) => b(p, t.n()),
    }
}

/// A random covector with independent components uniform in the unit disk.
pub fn random_covector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub radius: f64,
    pub samples: usize,
    pub attempts: usize,
}

/// Degree of the natural map of `t`, read off as the number of zeros of the
/// section `lambda . jet(alpha)` inside a circle that encloses all of them.
pub fn map_degree(t: &SystemTuple, lambda: &[Complex64]) -> Result<i64> {
    map_degree_report(t, lambda).map(|r| r.degree)
}

pub fn map_degree_report(t: &SystemTuple, lambda: &[Complex64]) -> Result<DegreeReport> {
    require_member(t)?;
    let d = t.degree().ok_or_else(|| Error::Precondition("map degree needs equal degrees".into()))?;
    let jets = jet_vectors(t);
    if lambda.len() != jets.len() {
        return Err(Error::InvalidInput(format!("covector has length {}, expected {}", lambda.len(), jets.len())));
    }
    let section = linear_combination(&jets, lambda);
    let top = section.get(d).map_or(0.0, |c| c.norm());
    let scale = lambda.iter().map(|l| l.norm()).fold(0.0, f64::max);
    if top <= 1e-12 * scale {
        return Err(Error::Precondition("covector is degenerate: the leading coefficient cancels".into()));
    }
    let mut radius = 2.0 * jet_bound(t).max(cauchy_bound_numeric(&section[..=d]));
    let mut last_err = None;
    for attempt in 1..=6 {
        let circle = |th: f64| eval_numeric(&section, Complex64::from_polar(radius, th));
        match winding_number_sampled(circle, DEFAULT_REFINEMENT_CAP) {
            Ok((degree, s)) => return Ok(DegreeReport { degree, radius, samples: s.len(), attempts: attempt }),
            Err(e) => last_err = Some(e),
        }
        radius *= 2.0;
    }
    Err(last_err.unwrap())
}

/// Homogenized value `p(x) cos(s)^d` with `x = tan(s)`, finite also at `s = +-pi/2`.
fn homogenized(p: &[f64], d: usize, s: f64) -> f64 {
    let (sn, cs) = s.sin_cos();
    let mut acc = 0.0;
    for (k, a) in p.iter().enumerate() {
        acc += a * sn.powi(k as i32) * cs.powi((d - k) as i32);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct Rp1Report {
    pub j: i64,
    pub samples: usize,
}

/// Degree `j` of `x -> [f_1(x) : f_2(x)]` on the compactified real line: the net
/// argument change of `f_1 + i f_2` along `x = tan(s)`, `s` from `-pi/2` to
/// `pi/2`, divided by `pi`.
pub fn rp1_degree(f1: &QPoly, f2: &QPoly) -> Result<i64> {
    rp1_degree_report(f1, f2).map(|r| r.j)
}

pub fn rp1_degree_report(f1: &QPoly, f2: &QPoly) -> Result<Rp1Report> {
    let (Some(d1), Some(d2)) = (f1.degree(), f2.degree()) else {
        return Err(Error::Precondition("rp1 degree of a zero polynomial".into()));
    };
    if d1 != d2 || d1 == 0 || !f1.is_monic() || !f2.is_monic() {
        return Err(Error::Precondition("rp1 degree needs two monic polynomials of the same positive degree".into()));
    }
    if !real_roots_exact(&gcd_exact(f1, f2)).is_empty() {
        return Err(Error::NotMember("common real root".into()));
    }
    let (p1, p2): (Vec<f64>, Vec<f64>) = (
        f1.coeffs().iter().map(rational_to_f64).collect(),
        f2.coeffs().iter().map(rational_to_f64).collect(),
    );
    let path = |s: f64| Complex64::new(homogenized(&p1, d1, s), homogenized(&p2, d1, s));
    // isolating endpoints of the real roots of f1 f2: each step then holds at most
    // one root, so one coordinate keeps its sign and no turn is missed
    let breaks: Vec<f64> = real_roots_exact(&(f1 * f2))
        .iter()
        .flat_map(|r| [r.lo(), r.hi()])
        .map(|x| rational_to_f64(x).atan())
        .collect();
    let (j, s) = winding::half_turns_with_breaks(path, -FRAC_PI_2, FRAC_PI_2, &breaks, DEFAULT_REFINEMENT_CAP)?;
    Ok(Rp1Report { j, samples: s.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cauchy_index;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn real(polys: &[&[i64]], n: usize) -> SystemTuple {
        SystemTuple::new_real(polys.iter().map(|c| q(c)).collect(), n).unwrap()
    }

    #[test]
    fn natural_map_values() {
        let t = real(&[&[0, 1], &[1, 1], &[2, 1]], 1);
        let p = eval_natural_map(&t, SpherePoint::Finite(Complex64::new(0.0, 0.0))).unwrap();
        assert_eq!(p.coords(), &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let inf = eval_natural_map(&t, SpherePoint::Infinity).unwrap();
        assert_eq!(inf, ProjectivePoint::new(vec![Complex64::new(3.0, 0.0); 3]).unwrap());
        let s = real(&[&[-1, 0, 1]], 2);
        let p = eval_natural_map(&s, SpherePoint::Finite(Complex64::new(1.0, 0.0))).unwrap();
        assert_eq!(p.coords(), &[Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)]);
        assert!(eval_natural_map(&real(&[&[0, 0, 1]], 2), SpherePoint::Infinity).is_err());
    }

    #[test]
    fn projective_equality() {
        let a = ProjectivePoint::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        let b = ProjectivePoint::new(vec![Complex64::new(0.0, 3.0), Complex64::new(-6.0, 0.0)]).unwrap();
        assert_eq!(a, b);
        let c = ProjectivePoint::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.1)]).unwrap();
        assert_ne!(a, c);
        assert!(ProjectivePoint::new(vec![Complex64::new(1e-14, 0.0)]).is_err());
    }

    #[test]
    fn degree_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cases = [
            (real(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1]], 1), 2),
            (real(&[&[-2, 0, 1]], 2), 2),
            (real(&[&[0, 1], &[1, 1], &[2, 1]], 1), 1),
        ];
        for (t, d) in cases {
            let lambda = random_covector(t.m() * t.n(), &mut rng);
            assert_eq!(map_degree(&t, &lambda).unwrap(), d);
        }
    }

    #[test]
    fn rp1_examples_match_cauchy_index() {
        let pairs = [
            (q(&[0, 1]), q(&[1, 1])),
            (q(&[0, 1]), q(&[-1, 1])),
            (q(&[1, 0, 1]), q(&[2, 0, 1])),
            (QPoly::from_ints(&[3, -4, 1]), QPoly::from_ints(&[8, -6, 1])),
        ];
        let expected = [-1, 1, 0, 2];
        for ((f1, f2), j) in pairs.iter().zip(expected) {
            assert_eq!(rp1_degree(f1, f2).unwrap(), j);
            assert_eq!(cauchy_index(f1, f2), j);
        }
    }

    #[test]
    fn rp1_rejects_common_real_root() {
        assert!(rp1_degree(&q(&[-1, 0, 1]), &q(&[-1, 1, 0]).monic()).is_err());
        assert!(rp1_degree(&q(&[-1, 0, 1]), &q(&[-3, 2, 1])).is_err());
    }
}
