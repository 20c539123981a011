//! Seeded generators for random polynomials and tuples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{int, rat, GPoly, GaussianRational, QPoly, Rational};

/// Numerators of random coefficients lie in `[-MAX_NUMER, MAX_NUMER]`.
pub const MAX_NUMER: i64 = 100;
/// Denominators of random coefficients lie in `[1, MAX_DENOM]`.
pub const MAX_DENOM: i64 = 10;

/// SplitMix64 finalizer; decorrelates `(seed, index)` pairs.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(seed, index))
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-MAX_NUMER..=MAX_NUMER), rng.gen_range(1..=MAX_DENOM))
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    GaussianRational::new(random_rational(rng), random_rational(rng))
}

/// Monic polynomial of degree `d` with random lower coefficients.
pub fn random_monic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> QPoly {
    let mut c: Vec<Rational> = (0..d).map(|_| random_rational(rng)).collect();
    c.push(int(1));
    QPoly::new(c)
}

pub fn random_monic_complex<R: Rng + ?Sized>(d: usize, rng: &mut R) -> GPoly {
    let mut c: Vec<GaussianRational> = (0..d).map(|_| random_gaussian(rng)).collect();
    c.push(GaussianRational::real(int(1)));
    GPoly::new(c)
}

/// Random polynomial of degree `< d` (possibly zero).
pub fn random_lower<R: Rng + ?Sized>(d: usize, rng: &mut R) -> QPoly {
    QPoly::new((0..d).map(|_| random_rational(rng)).collect())
}

/// Monic real polynomial with `2 * pairs` non-real roots and `d - 2 * pairs` real
/// roots, all distinct, built from random factors.
pub fn random_with_pairs<R: Rng + ?Sized>(d: usize, pairs: usize, rng: &mut R) -> QPoly {
    assert!(2 * pairs <= d);
    let mut reals: Vec<Rational> = Vec::new();
    while reals.len() < d - 2 * pairs {
        let r = random_rational(rng);
        if !reals.contains(&r) {
            reals.push(r);
        }
    }
    let mut quads: Vec<(Rational, Rational)> = Vec::new();
    while quads.len() < pairs {
        let re = random_rational(rng);
        let im = Rational::new(rng.gen_range(1..=MAX_NUMER).into(), rng.gen_range(1..=MAX_DENOM).into());
        if !quads.contains(&(re.clone(), im.clone())) {
            quads.push((re, im));
        }
    }
    let mut f = QPoly::from_roots(reals.iter());
    for (re, im) in quads {
        // (z - re)^2 + im^2
        let q = QPoly::new(vec![&re * &re + &im * &im, -(&re + &re), int(1)]);
        f = &f * &q;
    }
    f
}
