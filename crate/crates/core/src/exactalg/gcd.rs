//! Subresultant polynomial remainder sequences: gcd and resultant.


use super::poly::Poly;
use super::rational::Coeff;

fn pow<C: Coeff>(base: &C, exp: usize) -> C {
    (0..exp).fold(C::one(), |acc, _| acc * base.clone())
}

/// Monic gcd via the subresultant PRS.
///
/// `gcd_exact(0, 0)` is the zero polynomial; every other input yields a monic result.
pub fn gcd_exact<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let (mut a, mut b) = if f.degree() >= g.degree() { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    let mut g_s = C::one();
    let mut h = C::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree() == Some(0) {
            return Poly::one();
        }
        a = b;
        let denom = g_s.clone() * pow(&h, delta);
        b = r.scale(&(C::one() / denom));
        g_s = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow(&g_s, delta) / pow(&h, delta - 1)
        };
    }
}

/// Monic gcd of a list; constant 1 when the list is empty.
pub fn gcd_many<'a, C: Coeff + 'a>(polys: impl IntoIterator<Item = &'a Poly<C>>) -> Poly<C> {
    let mut acc: Option<Poly<C>> = None;
    for p in polys {
        let next = match acc {
            None => p.monic(),
            Some(a) => gcd_exact(&a, p),
        };
        if next.degree() == Some(0) {
            return Poly::one();
        }
        acc = Some(next);
    }
    acc.unwrap_or_else(Poly::one)
}

/// Resultant `Res(f, g)`, computed by the subresultant algorithm with sign tracking.
pub fn resultant<C: Coeff>(f: &Poly<C>, g: &Poly<C>) -> C {
    let (Some(_), Some(_)) = (f.degree(), g.degree()) else {
        return C::zero();
    };
    let mut sign_negative = false;
    let (mut a, mut b) = (f.clone(), g.clone());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_negative = true;
        }
    }
    if b.degree() == Some(0) {
        let r = pow(b.leading().unwrap(), a.degree().unwrap());
        return if sign_negative { -r } else { r };
    }
    let mut g_s = C::one();
    let mut h = C::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = g_s.clone() * pow(&h, delta);
        b = r.scale(&(C::one() / denom));
        g_s = a.leading().unwrap().clone();
        h = if delta == 0 { h } else { pow(&g_s, delta) / pow(&h, delta - 1) };
        match b.degree() {
            None => return C::zero(),
            Some(0) => {
                // deg a >= 1 here; result is h^(1 - deg a) * lc(b)^(deg a)
                let da = a.degree().unwrap();
                let lb = b.leading().unwrap().clone();
                let res = pow(&lb, da) / pow(&h, da - 1);
                return if sign_negative { -res } else { res };
            }
            Some(_) => {}
        }
    }
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant<C: Coeff>(f: &Poly<C>) -> C {
    let Some(n) = f.degree() else {
        return C::zero();
    };
    if n == 0 {
        return C::one();
    }
    let r = resultant(f, &f.derivative(1)) / f.leading().unwrap().clone();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}
