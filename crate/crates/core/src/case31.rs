//! The case `(m, n) = (3, 1)` over R in the model `(f_1, u, v)` with `f_1` monic
//! of degree `d` and `deg u, deg v < d`: the circle action rotating `(u, v)`, the
//! loop `i_d`, and the splitting map `r_d`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{
    gcd_many, int, rational_from_f64, rational_to_f64, real_roots_exact, GaussianRational, QPoly, RealRoot,
    Rational,
};
use crate::mapdeg::{winding_number, winding_of_polygon};
use crate::nonres::{require_member, SystemTuple};

/// Relative accuracy of `r_tilde`, shared among its factors.
pub const R_TILDE_REL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Model31 {
    f1: QPoly,
    f2: QPoly,
    f3: QPoly,
}

impl Model31 {
    pub fn new(f1: QPoly, f2: QPoly, f3: QPoly) -> Result<Self> {
        let d = f1.degree().unwrap_or(0);
        if d == 0 || !f1.is_monic() {
            return Err(Error::InvalidInput("f1 must be monic of positive degree".into()));
        }
        for (name, p) in [("f2", &f2), ("f3", &f3)] {
            if p.degree().is_some_and(|k| k >= d) {
                return Err(Error::InvalidInput(format!("{name} must have degree below {d}")));
            }
        }
        if gcd_many([&f1, &f2, &f3]).degree() != Some(0) {
            return Err(Error::NotMember("f1, f2, f3 have a common root".into()));
        }
        Ok(Model31 { f1, f2, f3 })
    }

    pub fn f1(&self) -> &QPoly {
        &self.f1
    }

    pub fn f2(&self) -> &QPoly {
        &self.f2
    }

    pub fn f3(&self) -> &QPoly {
        &self.f3
    }

    pub fn degree(&self) -> usize {
        self.f1.degree().unwrap()
    }

    /// `f2 + i f3` at a rational point, exactly.
    pub fn g_at(&self, x: &Rational) -> GaussianRational {
        GaussianRational::new(self.f2.eval(x), self.f3.eval(x))
    }

    pub fn max_coeff_distance(&self, other: &Model31) -> f64 {
        [(&self.f1, &other.f1), (&self.f2, &other.f2), (&self.f3, &other.f3)]
            .iter()
            .map(|(a, b)| {
                let diff = *a - *b;
                diff.coeffs().iter().map(|c| rational_to_f64(c).abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

/// `(f1, f2, f3) -> (f1, f2 - f1, f3 - f1)`.
pub fn phi(t: &SystemTuple) -> Result<Model31> {
    if t.m() != 3 || t.n() != 1 {
        return Err(Error::Precondition(format!("expected (m, n) = (3, 1), got ({}, {})", t.m(), t.n())));
    }
    let p = t.real_polys().ok_or_else(|| Error::Precondition("expected real coefficients".into()))?;
    let d = t.degree().ok_or_else(|| Error::Precondition("expected equal degrees".into()))?;
    if d < 2 {
        return Err(Error::Precondition("the model needs d >= 2".into()));
    }
    require_member(t)?;
    Ok(Model31 { f1: p[0].clone(), f2: &p[1] - &p[0], f3: &p[2] - &p[0] })
}

pub fn phi_inverse(m: &Model31) -> SystemTuple {
    SystemTuple::new_real(vec![m.f1.clone(), &m.f1 + &m.f2, &m.f1 + &m.f3], 1).expect("monic of positive degree")
}

/// Rotation of `(f2, f3)` by the exact rational pair `(c, s)`, `c^2 + s^2 = 1`.
pub fn s1_act_exact(c: &Rational, s: &Rational, m: &Model31) -> Result<Model31> {
    if c * c + s * s != int(1) {
        return Err(Error::Precondition("(c, s) must lie on the unit circle".into()));
    }
    Ok(rotate(c, s, m))
}

/// Rotation by `theta` with `cos` and `sin` taken as the exact rationals of their
/// floating-point values. The matrix is invertible, so membership is preserved.
pub fn s1_act(theta: f64, m: &Model31) -> Model31 {
    let (s, c) = theta.sin_cos();
    rotate(&rational_from_f64(c), &rational_from_f64(s), m)
}

fn rotate(c: &Rational, s: &Rational, m: &Model31) -> Model31 {
    Model31 {
        f1: m.f1.clone(),
        f2: &m.f2.scale(c) - &m.f3.scale(s),
        f3: &m.f2.scale(s) + &m.f3.scale(c),
    }
}

/// A rational point of the unit circle at angle close to `theta`, via the half-angle
/// substitution `t = tan(theta/2)`, `(1 - t^2, 2t) / (1 + t^2)`.
pub fn unit_circle_rational(theta: f64) -> (Rational, Rational) {
    let mut th = theta.rem_euclid(2.0 * PI);
    if th > PI {
        th -= 2.0 * PI;
    }
    let flip = th.abs() > PI / 2.0;
    if flip {
        th -= PI.copysign(th);
    }
    let t = rational_from_f64((th / 2.0).tan());
    let den = int(1) + &t * &t;
    let c = (int(1) - &t * &t) / &den;
    let s = (int(2) * &t) / den;
    if flip {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// `i_d(e^{i theta}) = (z^d, z + cos theta, z + sin theta)`.
pub fn i_d_loop(d: usize, theta: f64) -> Result<Model31> {
    if d < 2 {
        return Err(Error::Precondition("i_d needs d >= 2".into()));
    }
    let (s, c) = theta.sin_cos();
    let f1 = QPoly::monomial(int(1), d);
    let f2 = QPoly::new(vec![rational_from_f64(c), int(1)]);
    let f3 = QPoly::new(vec![rational_from_f64(s), int(1)]);
    Model31::new(f1, f2, f3)
}

/// Evaluates `r_tilde`, caching the isolated real roots of the last `f1` seen.
#[derive(Default)]
pub struct RTilde {
    cache: Option<(QPoly, Vec<RealRoot>)>,
}

/// Upper bound for `|g'|` on `[-radius, radius]`, `g = f2 + i f3`.
fn lipschitz(m: &Model31, radius: f64) -> f64 {
    let d = m.degree();
    (1..d)
        .map(|k| {
            let a = rational_to_f64(&m.f2.coeff(k)).abs() + rational_to_f64(&m.f3.coeff(k)).abs();
            k as f64 * a * radius.powi(k as i32 - 1)
        })
        .sum()
}

impl RTilde {
    pub fn new() -> Self {
        RTilde::default()
    }

    fn roots(&mut self, f1: &QPoly) -> &mut Vec<RealRoot> {
        if self.cache.as_ref().is_none_or(|(f, _)| f != f1) {
            self.cache = Some((f1.clone(), real_roots_exact(f1)));
        }
        &mut self.cache.as_mut().unwrap().1
    }

    /// `(root, exponent)` for every real root of odd multiplicity; roots of even
    /// multiplicity cancel in pairs.
    fn signed_roots(&mut self, m: &Model31) -> Result<Vec<(usize, i32)>> {
        if m.degree() % 2 == 0 {
            return Err(Error::Precondition("r_tilde needs odd d".into()));
        }
        let roots = self.roots(&m.f1);
        let mut pos = 1;
        let mut out = Vec::new();
        for (k, r) in roots.iter().enumerate() {
            if r.multiplicity() % 2 == 1 {
                out.push((k, if pos % 2 == 1 { 1 } else { -1 }));
            }
            pos += r.multiplicity();
        }
        Ok(out)
    }

    pub fn eval(&mut self, m: &Model31) -> Result<Complex64> {
        let factors = self.signed_roots(m)?;
        let tol = R_TILDE_REL_TOL / factors.len().max(1) as f64;
        let roots = self.roots(&m.f1);
        let mut acc = Complex64::new(1.0, 0.0);
        for (k, e) in factors {
            let r = &mut roots[k];
            let g = loop {
                let mid = r.midpoint();
                let g = m.g_at(&mid);
                if r.is_exact() {
                    break g.to_c64();
                }
                let gv = g.to_c64();
                let radius = rational_to_f64(r.lo()).abs().max(rational_to_f64(r.hi()).abs());
                let err = lipschitz(m, radius) * rational_to_f64(&r.width()) / 2.0;
                if err <= tol * gv.norm() {
                    break gv;
                }
                r.bisect();
            };
            if g.norm() == 0.0 {
                return Err(Error::NotMember("f2 + i f3 vanishes at a real root of f1".into()));
            }
            acc = if e > 0 { acc * g } else { acc / g };
        }
        Ok(acc)
    }

    /// Exact value when every odd-multiplicity real root of `f1` is rational.
    pub fn eval_exact(&mut self, m: &Model31) -> Result<Option<GaussianRational>> {
        let factors = self.signed_roots(m)?;
        let roots = self.roots(&m.f1);
        let mut acc = GaussianRational::real(int(1));
        for (k, e) in factors {
            let r = &mut roots[k];
            if !r.try_make_exact() {
                return Ok(None);
            }
            let g = m.g_at(r.exact_value().unwrap());
            if g.is_zero() {
                return Err(Error::NotMember("f2 + i f3 vanishes at a real root of f1".into()));
            }
            acc = acc * g.pow_i(e);
        }
        Ok(Some(acc))
    }
}

/// `prod_j (f2(x_j) + i f3(x_j))^{(-1)^{j-1}}` over the real roots
/// `x_1 <= x_2 <= ...` of `f1`, listed with multiplicity. Defined for odd `d`.
pub fn r_tilde(m: &Model31) -> Result<Complex64> {
    RTilde::new().eval(m)
}

pub fn r_tilde_exact(m: &Model31) -> Result<Option<GaussianRational>> {
    RTilde::new().eval_exact(m)
}

/// `r_tilde / |r_tilde|`.
pub fn r_d(m: &Model31) -> Result<Complex64> {
    let r = r_tilde(m)?;
    Ok(r / r.norm())
}

/// Winding number of `theta -> r_tilde(loop(theta))` over `[0, 2pi]`.
pub fn pi1_winding(mut model_loop: impl FnMut(f64) -> Result<Model31>, refinement_cap: usize) -> Result<i64> {
    let mut ev = RTilde::new();
    let mut failure = None;
    let w = winding_number(
        |theta| match model_loop(theta).and_then(|m| ev.eval(&m)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, f64::NAN)
            }
        },
        refinement_cap,
    );
    match failure {
        Some(e) => Err(e),
        None => w,
    }
}

/// Winding of `r_tilde` along a closed loop given by samples (last joins first).
pub fn pi1_winding_sampled(samples: &[Model31]) -> Result<i64> {
    let mut ev = RTilde::new();
    let vals = samples.iter().map(|m| ev.eval(m)).collect::<Result<Vec<_>>>()?;
    winding_of_polygon(&vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::mapdeg::DEFAULT_REFINEMENT_CAP;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn phi_round_trip() {
        let t = SystemTuple::new_real(vec![q(&[0, 0, 1]), q(&[1, 0, 1]), q(&[0, 1, 1])], 1).unwrap();
        let m = phi(&t).unwrap();
        assert_eq!((m.f1(), m.f2(), m.f3()), (&q(&[0, 0, 1]), &q(&[1]), &q(&[0, 1])));
        assert_eq!(phi_inverse(&m), t);
        let lin = SystemTuple::new_real(vec![q(&[0, 1]), q(&[1, 1]), q(&[2, 1])], 1).unwrap();
        assert!(phi(&lin).is_err());
    }

    #[test]
    fn rotations() {
        let m = Model31::new(q(&[0, 0, 1]), q(&[1]), q(&[0, 1])).unwrap();
        assert_eq!(s1_act(0.0, &m), m);
        let quarter = s1_act_exact(&int(0), &int(1), &m).unwrap();
        assert_eq!((quarter.f2(), quarter.f3()), (&q(&[0, -1]), &q(&[1])));
        let (c, s) = unit_circle_rational(2.5);
        assert_eq!(&c * &c + &s * &s, int(1));
        assert!((rational_to_f64(&c) - 2.5f64.cos()).abs() < 1e-12);
        assert!((rational_to_f64(&s) - 2.5f64.sin()).abs() < 1e-12);
        assert!(s1_act_exact(&int(1), &int(1), &m).is_err());
    }

    #[test]
    fn loop_points() {
        let m = i_d_loop(3, 0.0).unwrap();
        assert_eq!((m.f1(), m.f2(), m.f3()), (&q(&[0, 0, 0, 1]), &q(&[1, 1]), &q(&[0, 1])));
        let m = i_d_loop(3, PI).unwrap();
        assert_eq!(m.f3().coeff(1), int(1));
        assert!((rational_to_f64(&m.f2().coeff(0)) + 1.0).abs() < 1e-15);
        assert!(i_d_loop(1, 0.0).is_err());
    }

    #[test]
    fn r_tilde_examples() {
        let f1 = QPoly::from_roots([int(0), int(1), int(2)].iter());
        let m = Model31::new(f1, q(&[1]), q(&[0, 1])).unwrap();
        let expect = GaussianRational::new(rat(3, 2), rat(1, 2));
        assert_eq!(r_tilde_exact(&m).unwrap(), Some(expect.clone()));
        assert!((r_tilde(&m).unwrap() - expect.to_c64()).norm() < 1e-14);
        let unit = r_d(&m).unwrap();
        assert!((unit - Complex64::new(3.0, 1.0) / 10f64.sqrt()).norm() < 1e-14);

        let m = Model31::new(q(&[0, 0, -1, 1]), q(&[1]), q(&[0, 1])).unwrap();
        assert_eq!(r_tilde_exact(&m).unwrap(), Some(GaussianRational::new(int(1), int(1))));
        assert!(r_tilde(&Model31::new(q(&[0, 0, 1]), q(&[1]), q(&[0, 1])).unwrap()).is_err());
    }

    #[test]
    fn irrational_roots_evaluate_accurately() {
        // f1 = z^3 - 2 has the single real root 2^(1/3)
        let m = Model31::new(q(&[-2, 0, 0, 1]), q(&[1, 1]), q(&[0, 0, 1])).unwrap();
        let x = 2f64.cbrt();
        let want = Complex64::new(1.0 + x, x * x);
        assert!((r_tilde(&m).unwrap() - want).norm() < 1e-9 * want.norm());
        assert_eq!(r_tilde_exact(&m).unwrap(), None);
    }

    #[test]
    fn generator_windings() {
        for d in [3, 5] {
            assert_eq!(pi1_winding(|th| i_d_loop(d, th), DEFAULT_REFINEMENT_CAP).unwrap(), 1);
            assert_eq!(pi1_winding(|th| i_d_loop(d, 2.0 * th), DEFAULT_REFINEMENT_CAP).unwrap(), 2);
            assert_eq!(pi1_winding(|_| i_d_loop(d, 0.3), DEFAULT_REFINEMENT_CAP).unwrap(), 0);
        }
        let samples: Vec<Model31> = (0..64).map(|k| i_d_loop(3, k as f64 * PI / 32.0).unwrap()).collect();
        assert_eq!(pi1_winding_sampled(&samples).unwrap(), 1);
    }
}
