//! Rational and Gaussian-rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator after each operation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact binary value of a finite float.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // numerator or denominator beyond f64 range: scale down first
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
            let num = r.numer() >> shift.max(0) as usize;
            let den = r.denom() >> shift.max(0) as usize;
            let (n, d) = (num.to_f64().unwrap_or(0.0), den.to_f64().unwrap_or(1.0));
            if d == 0.0 {
                if n.is_sign_negative() { f64::NEG_INFINITY } else { f64::INFINITY }
            } else {
                n / d
            }
        }
    }
}

/// Canonical `"p/q"` text form; integers are written with denominator 1.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`.
/// `hi = None` stands for `+inf`.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(hi) => {
            debug_assert!(lo < hi);
            if &next < hi {
                return next;
            }
            // lo and hi share the integer part fl
            let frac_lo = lo - &fl;
            let frac_hi = hi - &fl;
            let inner_lo = frac_hi.recip();
            let inner_hi = if frac_lo.is_zero() { None } else { Some(frac_lo.recip()) };
            fl + simplest_between(&inner_lo, inner_hi.as_ref()).recip()
        }
    }
}

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        GaussianRational { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow_i(&self, exp: i32) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = GaussianRational::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -self.im.clone())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        GaussianRational { re, im }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
}

/// Coefficient field for [`super::Poly`]: exact, characteristic zero, embedded in C.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// A rational upper bound on the modulus.
    fn modulus_bound(&self) -> Rational;
    fn from_rational(r: Rational) -> Self;
    fn is_real(&self) -> bool;
}

impl Coeff for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn modulus_bound(&self) -> Rational {
        self.abs()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_real(&self) -> bool {
        true
    }
}

impl Coeff for GaussianRational {
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        GaussianRational::to_c64(self)
    }
    fn modulus_bound(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }
    fn from_rational(r: Rational) -> Self {
        GaussianRational::real(r)
    }
    fn is_real(&self) -> bool {
        GaussianRational::is_real(self)
    }
}

pub(crate) fn halve(r: &Rational) -> Rational {
    r / Rational::from_integer(BigInt::from(2))
}

pub(crate) fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
