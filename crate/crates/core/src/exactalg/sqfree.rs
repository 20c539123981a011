use super::gcd::gcd_exact;
use super::poly::Poly;
use super::rational::Coeff;

/// Yun's squarefree decomposition: monic, pairwise coprime, squarefree factors
/// `a_i` with `f = lc(f) * prod a_i^i`. Constant input yields an empty list.
pub fn squarefree_decomposition<C: Coeff>(f: &Poly<C>) -> Vec<(Poly<C>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative(1);
    let a0 = gcd_exact(&f, &df);
    let mut b = f.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = &c - &b.derivative(1);
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_exact(&b, &d);
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative(1);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic squarefree part `f / gcd(f, f')`.
pub fn squarefree_part<C: Coeff>(f: &Poly<C>) -> Poly<C> {
    if f.degree().unwrap_or(0) == 0 {
        return f.monic();
    }
    f.exact_div(&gcd_exact(f, &f.derivative(1))).monic()
}
