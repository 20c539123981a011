//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;

use polyspace::exactalg::{
    complex_roots_numeric, default_cluster_tol, int, rat, Coeff, GPoly, GaussianRational, Poly, QPoly, Rational,
    RootCluster,
};
use polyspace::harness::random::{random_monic, random_monic_complex, random_rational};
use polyspace::harness::Case;
use polyspace::nonres::{FieldTag, SystemTuple};

pub fn q(c: &[i64]) -> QPoly {
    QPoly::from_ints(c)
}

/// Small rational, so planted roots stay well separated from random ones.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=4))
}

pub fn small_gaussian<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    GaussianRational::new(small_rational(rng), small_rational(rng))
}

fn linear_power<C: Coeff>(alpha: &C, k: usize) -> Poly<C> {
    Poly::linear(alpha.clone()).pow(k)
}

/// Monic `(z - alpha)^mu * g` with `g` random monic of degree `d - mu`.
pub fn planted<C: Coeff>(alpha: &C, mu: usize, cofactor: Poly<C>) -> Poly<C> {
    &linear_power(alpha, mu) * &cofactor
}

/// Random tuple of shape `case`, degree `d`, in which every polynomial carries the
/// factor `(z - alpha)^{mu_k}` for its own random `mu_k` in `0..=n+1`. Membership
/// therefore varies across draws.
pub fn planted_tuple<R: Rng + ?Sized>(case: Case, d: usize, field: FieldTag, rng: &mut R) -> SystemTuple {
    let (m, n) = (case.m(), case.n());
    let top = (n + 1).min(d);
    let mus: Vec<usize> = (0..m).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..=top) }).collect();
    match field {
        FieldTag::Real => {
            let alpha = small_rational(rng);
            let polys = mus.iter().map(|&mu| planted(&alpha, mu, random_monic(d - mu, rng))).collect();
            SystemTuple::new_real(polys, n).unwrap()
        }
        FieldTag::Complex => {
            let alpha = small_gaussian(rng);
            let polys: Vec<GPoly> = mus.iter().map(|&mu| planted(&alpha, mu, random_monic_complex(d - mu, rng))).collect();
            SystemTuple::new_complex(polys, n).unwrap()
        }
    }
}

fn same_root(a: &RootCluster, b: &RootCluster) -> bool {
    (a.center - b.center).norm() <= a.radius + b.radius + 1e-6 * (1.0 + a.center.norm())
}

/// Largest `k` such that some complex number is a root of multiplicity at least `k`
/// of every polynomial, read off numeric root clusters alone.
pub fn numeric_max_common_multiplicity(t: &SystemTuple) -> usize {
    let clusters: Vec<Vec<RootCluster>> = t
        .complex_polys()
        .iter()
        .map(|p| complex_roots_numeric(p, default_cluster_tol(p)).expect("numeric roots"))
        .collect();
    let mut best = 0;
    for c in &clusters[0] {
        let k = clusters
            .iter()
            .map(|cs| cs.iter().filter(|o| same_root(c, o)).map(|o| o.multiplicity).sum::<usize>())
            .min()
            .unwrap_or(0);
        best = best.max(k);
    }
    best
}

pub fn numeric_is_member(t: &SystemTuple) -> bool {
    numeric_max_common_multiplicity(t) < t.n()
}

/// `j` distinct points in the open upper half plane.
pub fn random_upper_configuration<R: Rng + ?Sized>(j: usize, rng: &mut R) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = Vec::new();
    while pts.len() < j {
        let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0));
        if pts.iter().all(|p| (p - z).norm() > 1e-3) {
            pts.push(z);
        }
    }
    pts
}

/// Member of the (2,1) space with prescribed label, perturbed by small random
/// lower-order terms that keep the roots interlacing.
pub fn perturb_lower<R: Rng + ?Sized>(f: &QPoly, scale: i64, rng: &mut R) -> QPoly {
    let d = f.degree().unwrap();
    let mut c = f.coeffs().to_vec();
    for a in c.iter_mut().take(d) {
        *a += rat(rng.gen_range(-1..=1), scale);
    }
    QPoly::new(c)
}

/// Random real monic polynomial of degree `d`, biased toward small coefficients.
pub fn random_small_monic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> QPoly {
    let mut c: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
    c.push(int(1));
    QPoly::new(c)
}

pub fn random_lower_small<R: Rng + ?Sized>(d: usize, rng: &mut R) -> QPoly {
    QPoly::new((0..d).map(|_| small_rational(rng)).collect())
}

pub fn rational_coeffs<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Rational> {
    (0..=d).map(|_| random_rational(rng)).collect()
}

/// Result of one collision family: `f1_t = ((z - a)^2 - t^2)(z - b) q(z)` with `q`
/// free of real roots, for `t = 0` and `t = 10^-4 .. 10^-8`.
pub struct Collision {
    /// `|r_tilde(t) - r_tilde(0)|^2`, exact, in order of decreasing `t`.
    pub gaps: Vec<Rational>,
    /// `|r_tilde(t_min) - r_tilde(0)| / |r_tilde(0)|`.
    pub last_relative: f64,
    /// Numeric `r_tilde` matches the exact value within `1e-10` at every `t`.
    pub numeric_agrees: bool,
}

impl Collision {
    pub fn strictly_decreasing(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1] < w[0])
    }
}

/// One random collision family; `None` when the draw is degenerate (`a = b`, a
/// real root in `q`, or a common root of the model at some `t`).
pub fn collision_trial<R: Rng + ?Sized>(rng: &mut R) -> Option<Collision> {
    use polyspace::case31::{r_tilde, r_tilde_exact, Model31};
    use polyspace::exactalg::{rational_to_f64, real_roots_exact};

    let (a, b) = (small_rational(rng), small_rational(rng));
    if a == b {
        return None;
    }
    let pairs = rng.gen_range(0..=2);
    let mut quad = QPoly::one();
    for _ in 0..pairs {
        quad = &quad * &QPoly::new(vec![rat(rng.gen_range(1..=30), rng.gen_range(1..=3)), small_rational(rng), int(1)]);
    }
    if !real_roots_exact(&quad).is_empty() {
        return None;
    }
    let d = 3 + 2 * pairs;
    let (f2, f3) = (random_lower_small(d, rng), random_lower_small(d, rng));
    let family = |t: &Rational| {
        let merge = QPoly::new(vec![&a * &a - t * t, -(&a + &a), int(1)]);
        &(&merge * &QPoly::linear(b.clone())) * &quad
    };
    let models = std::iter::once(int(0))
        .chain((0..=4).map(|k| rat(1, 10i64.pow(4 + k))))
        .map(|t| Model31::new(family(&t), f2.clone(), f3.clone()).ok())
        .collect::<Option<Vec<_>>>()?;
    let exact: Vec<GaussianRational> =
        models.iter().map(|m| r_tilde_exact(m).unwrap().expect("all real roots rational")).collect();
    let r0 = exact[0].clone();
    let gaps: Vec<Rational> = exact[1..].iter().map(|r| (r.clone() - r0.clone()).norm_sqr()).collect();
    let last_relative = rational_to_f64(gaps.last().unwrap()).sqrt() / r0.to_c64().norm();
    let numeric_agrees = models.iter().zip(&exact).all(|(m, x)| {
        let v = r_tilde(m).unwrap();
        (v - x.to_c64()).norm() <= 1e-10 * v.norm()
    });
    Some(Collision { gaps, last_relative, numeric_agrees })
}
