use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{Coeff, Rational};

/// `1 + max |a_k / a_lead|` over every input; every root of every input lies in `|z| < R`.
///
/// For Gaussian coefficients `|re| + |im|` stands in for the modulus, which keeps the
/// bound rational and still valid. Zero polynomials are skipped.
pub fn cauchy_root_bound<C: Coeff>(polys: &[Poly<C>]) -> Rational {
    let mut best = Rational::zero();
    for p in polys {
        let Some(lc) = p.leading() else { continue };
        let lc_bound_inv = inverse_modulus_bound(lc);
        for a in &p.coeffs()[..p.coeffs().len() - 1] {
            let r = a.modulus_bound() * lc_bound_inv.clone();
            if r > best {
                best = r;
            }
        }
    }
    best + Rational::one()
}

// upper bound on |1 / lc|
fn inverse_modulus_bound<C: Coeff>(lc: &C) -> Rational {
    (C::one() / lc.clone()).modulus_bound()
}
