//! Exact real-root machinery over Q: Sturm chains, root isolation, Cauchy indices.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bound::cauchy_root_bound;
use super::poly::QPoly;
use super::rational::{halve, int, lcm_of_denominators, rational_to_f64, simplest_between, Rational};
use super::sqfree::squarefree_decomposition;

/// Where a chain is evaluated.
#[derive(Clone, Copy, Debug)]
enum At<'a> {
    NegInf,
    PosInf,
    Point(&'a Rational),
}

/// Signed remainder sequence `p0, p1, -rem(p0, p1), ...`, each member scaled by a
/// positive constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<QPoly>,
    ints: Vec<Vec<BigInt>>,
}

/// Positive multiple of `p` with coprime integer coefficients; same sign as `p`
/// everywhere.
fn integer_form(p: &QPoly) -> Vec<BigInt> {
    let den = lcm_of_denominators(p.coeffs().iter());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// Sign at `x = p/q` of the integer polynomial `c`, from
/// `q^d f(p/q) = sum c_k p^k q^(d-k)` without any rational normalization.
fn sign_at(c: &[BigInt], x: &Rational) -> i8 {
    let (p, q) = (x.numer(), x.denom());
    let Some((lead, rest)) = c.split_last() else { return 0 };
    let mut acc = lead.clone();
    let mut qpow = BigInt::one();
    for ck in rest.iter().rev() {
        qpow *= q;
        acc = acc * p + ck * &qpow;
    }
    match acc.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

fn positive_normalize(p: &QPoly) -> QPoly {
    match p.leading() {
        Some(lc) => p.scale(&lc.abs().recip()),
        None => p.clone(),
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl SturmChain {
    /// Generalized chain starting from an arbitrary pair.
    pub fn from_pair(p0: &QPoly, p1: &QPoly) -> Self {
        let mut chain = vec![positive_normalize(p0)];
        if !p1.is_zero() {
            chain.push(positive_normalize(p1));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(positive_normalize(&-&r));
        }
        let ints = chain.iter().map(integer_form).collect();
        SturmChain { chain, ints }
    }

    /// Classical Sturm chain `f, f', ...`.
    pub fn new(f: &QPoly) -> Self {
        Self::from_pair(f, &f.derivative(1))
    }

    fn variations(&self, at: At<'_>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for (p, c) in self.chain.iter().zip(&self.ints) {
            let s = match at {
                At::Point(x) => sign_at(c, x),
                At::PosInf => p.leading().map_or(0, sign_of),
                At::NegInf => {
                    let s = p.leading().map_or(0, sign_of);
                    if p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            };
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        self.variations(At::Point(x))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        self.variations(At::NegInf)
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        self.variations(At::PosInf)
    }

    /// Distinct roots of a squarefree chain head in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Number of distinct real roots of `f`.
pub fn count_distinct_real_roots(f: &QPoly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = SturmChain::new(f);
    chain.variations_at_neg_inf() - chain.variations_at_pos_inf()
}

/// Cauchy index of `p / q` over the whole real line, via the generalized Sturm theorem
/// applied to the chain `(q, p, ...)`.
pub fn cauchy_index(p: &QPoly, q: &QPoly) -> i64 {
    let chain = SturmChain::from_pair(q, p);
    chain.variations_at_neg_inf() as i64 - chain.variations_at_pos_inf() as i64
}

/// An isolated real root of a polynomial: either an exact rational value
/// (`lo == hi`) or the unique root of the squarefree `factor` in the open
/// interval `(lo, hi)`, at whose endpoints `factor` has opposite signs.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    lo: Rational,
    hi: Rational,
    multiplicity: usize,
    factor: QPoly,
    ints: Vec<BigInt>,
}

impl RealRoot {
    fn exact(x: Rational, multiplicity: usize, factor: QPoly) -> Self {
        let ints = integer_form(&factor);
        RealRoot { lo: x.clone(), hi: x, multiplicity, factor, ints }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// The squarefree factor this root belongs to.
    pub fn factor(&self) -> &QPoly {
        &self.factor
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        halve(&(&self.lo + &self.hi))
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// One bisection step; may land exactly on the root.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let s_mid = sign_at(&self.ints, &mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let s_lo = sign_at(&self.ints, &self.lo);
        if s_lo == s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Bisect until the width is at most `width` (or the root is exact).
    pub fn refine_to(&mut self, width: &Rational) {
        while !self.is_exact() && &self.width() > width {
            self.bisect();
        }
    }

    /// Snap to the exact value when the root is rational.
    ///
    /// A rational root `p/q` of the primitive integer form of `factor` has `q`
    /// dividing its leading coefficient `L`. Once the interval is narrower than
    /// `1/(2 L^2)` it contains at most one fraction with denominator `<= L`, and
    /// that fraction is the simplest rational in the interval.
    pub fn try_make_exact(&mut self) -> bool {
        if self.is_exact() {
            return true;
        }
        let lead = self.ints.last().unwrap().abs();
        let bound = Rational::new(BigInt::one(), BigInt::from(2) * &lead * &lead);
        // small denominators show up long before the worst-case width is reached
        loop {
            let cand = simplest_between(&self.lo, Some(&self.hi));
            if sign_at(&self.ints, &cand) == 0 {
                self.lo = cand.clone();
                self.hi = cand;
                return true;
            }
            if self.width() <= bound {
                return false;
            }
            for _ in 0..8 {
                self.bisect();
            }
            if self.is_exact() {
                return true;
            }
        }
    }

    fn disjoint_from(&self, other: &RealRoot) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.lo != other.lo,
            (true, false) => self.lo <= other.lo || self.lo >= other.hi,
            (false, true) => other.lo <= self.lo || other.lo >= self.hi,
            (false, false) => self.hi <= other.lo || other.hi <= self.lo,
        }
    }
}

fn isolate_squarefree(p: &QPoly, multiplicity: usize, out: &mut Vec<RealRoot>) {
    let Some(deg) = p.degree() else { return };
    if deg == 0 {
        return;
    }
    if deg == 1 {
        let root = -(p.coeff(0) / p.coeff(1));
        out.push(RealRoot::exact(root, multiplicity, p.clone()));
        return;
    }
    let chain = SturmChain::new(p);
    let ints = integer_form(p);
    let total = chain.variations_at_neg_inf() - chain.variations_at_pos_inf();
    if total == 0 {
        return;
    }
    let b = cauchy_root_bound(std::slice::from_ref(p));
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            // lo and hi are never roots here; the root is strictly inside
            out.push(RealRoot { lo, hi, multiplicity, factor: p.clone(), ints: ints.clone() });
            continue;
        }
        let mut split = halve(&(&lo + &hi));
        let mut k = 3;
        while sign_at(&ints, &split) == 0 {
            split = &lo + (&hi - &lo) / int(k);
            k += 1;
        }
        let left = chain.count_in(&lo, &split);
        stack.push((split.clone(), hi, count - left));
        stack.push((lo, split, left));
    }
}

/// Real roots of `f` with multiplicity, sorted ascending with pairwise disjoint
/// isolating data. Rational roots come back exact.
pub fn real_roots_exact(f: &QPoly) -> Vec<RealRoot> {
    let mut roots = Vec::new();
    for (factor, mult) in squarefree_decomposition(f) {
        isolate_squarefree(&factor, mult, &mut roots);
    }
    for r in &mut roots {
        r.try_make_exact();
    }
    // roots from distinct factors are distinct, so refinement separates them
    loop {
        let mut changed = false;
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                while !roots[i].disjoint_from(&roots[j]) {
                    changed = true;
                    if roots[i].width() >= roots[j].width() {
                        roots[i].bisect();
                    } else {
                        roots[j].bisect();
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    roots
}

/// Compare two disjoint isolated roots.
pub fn compare_roots(a: &RealRoot, b: &RealRoot) -> Ordering {
    a.lo.cmp(&b.lo)
}
