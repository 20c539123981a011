//! System tuples, the jet map, exact membership, conjugation and the stability
//! dimension.


use crate::error::{Error, Result};
use crate::exactalg::{gcd_many, squarefree_decomposition, Coeff, GPoly, Poly, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// Rational coefficients, the space over R.
    Real,
    /// Gaussian-rational coefficients, the space over C.
    Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TupleData {
    Real(Vec<QPoly>),
    Complex(Vec<GPoly>),
}

/// A polynomial carrying its field tag.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Real(QPoly),
    Complex(GPoly),
}

impl AnyPoly {
    pub fn degree(&self) -> Option<usize> {
        match self {
            AnyPoly::Real(p) => p.degree(),
            AnyPoly::Complex(p) => p.degree(),
        }
    }
}

/// An m-tuple of monic polynomials with multiplicity bound `n`: a candidate point
/// of `Poly^{D,m}_n`. Membership is not part of the invariant; see [`is_member`].
#[derive(Clone, Debug, PartialEq)]
pub struct SystemTuple {
    data: TupleData,
    n: usize,
}

fn validate<C: Coeff>(polys: &[Poly<C>], n: usize) -> Result<()> {
    if polys.is_empty() {
        return Err(Error::InvalidInput("polys: tuple must contain at least one polynomial".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n: multiplicity bound must be positive".into()));
    }
    if polys.len() == 1 && n == 1 {
        return Err(Error::InvalidInput("(m, n) = (1, 1) is excluded".into()));
    }
    for (k, p) in polys.iter().enumerate() {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(format!("polys[{k}]: degree must be at least 1")));
        }
        if !p.is_monic() {
            return Err(Error::InvalidInput(format!("polys[{k}]: polynomial must be monic")));
        }
    }
    Ok(())
}

impl SystemTuple {
    pub fn new_real(polys: Vec<QPoly>, n: usize) -> Result<Self> {
        validate(&polys, n)?;
        Ok(SystemTuple { data: TupleData::Real(polys), n })
    }

    pub fn new_complex(polys: Vec<GPoly>, n: usize) -> Result<Self> {
        validate(&polys, n)?;
        Ok(SystemTuple { data: TupleData::Complex(polys), n })
    }

    pub fn data(&self) -> &TupleData {
        &self.data
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        match &self.data {
            TupleData::Real(p) => p.len(),
            TupleData::Complex(p) => p.len(),
        }
    }

    pub fn field(&self) -> FieldTag {
        match self.data {
            TupleData::Real(_) => FieldTag::Real,
            TupleData::Complex(_) => FieldTag::Complex,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        match &self.data {
            TupleData::Real(p) => p.iter().map(|f| f.degree().unwrap()).collect(),
            TupleData::Complex(p) => p.iter().map(|f| f.degree().unwrap()).collect(),
        }
    }

    /// The common degree `d`, if all degrees agree.
    pub fn degree(&self) -> Option<usize> {
        let degs = self.degrees();
        degs.iter().all(|&d| d == degs[0]).then_some(degs[0])
    }

    pub fn real_polys(&self) -> Option<&[QPoly]> {
        match &self.data {
            TupleData::Real(p) => Some(p),
            TupleData::Complex(_) => None,
        }
    }

    /// All polynomials with Gaussian coefficients (real tuples are embedded).
    pub fn complex_polys(&self) -> Vec<GPoly> {
        match &self.data {
            TupleData::Real(p) => p.iter().map(QPoly::to_gaussian).collect(),
            TupleData::Complex(p) => p.clone(),
        }
    }

    /// The same tuple regarded over C.
    pub fn to_complex(&self) -> SystemTuple {
        SystemTuple { data: TupleData::Complex(self.complex_polys()), n: self.n }
    }

    /// Whether every coefficient is real (regardless of the tag).
    pub fn has_real_coefficients(&self) -> bool {
        match &self.data {
            TupleData::Real(_) => true,
            TupleData::Complex(p) => p.iter().all(GPoly::is_real),
        }
    }

    /// Real tuple with the same polynomials, when all coefficients are real.
    pub fn to_real(&self) -> Option<SystemTuple> {
        match &self.data {
            TupleData::Real(_) => Some(self.clone()),
            TupleData::Complex(p) => {
                let polys = p.iter().map(GPoly::to_rational).collect::<Option<Vec<_>>>()?;
                Some(SystemTuple { data: TupleData::Real(polys), n: self.n })
            }
        }
    }

    /// Same polynomials with a different multiplicity bound.
    pub fn with_n(&self, n: usize) -> Result<SystemTuple> {
        match &self.data {
            TupleData::Real(p) => SystemTuple::new_real(p.clone(), n),
            TupleData::Complex(p) => SystemTuple::new_complex(p.clone(), n),
        }
    }

    /// Numeric coefficient vectors, ascending.
    pub fn to_c64(&self) -> Vec<Vec<num_complex::Complex64>> {
        match &self.data {
            TupleData::Real(p) => p.iter().map(Poly::to_c64).collect(),
            TupleData::Complex(p) => p.iter().map(Poly::to_c64).collect(),
        }
    }
}

/// The jet `(f, f + f', ..., f + f^(n-1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetTuple<C: Coeff> {
    pub components: Vec<Poly<C>>,
}

pub fn jet<C: Coeff>(f: &Poly<C>, n: usize) -> JetTuple<C> {
    let mut components = Vec::with_capacity(n);
    if n > 0 {
        components.push(f.clone());
    }
    for i in 1..n {
        components.push(f + &f.derivative(i));
    }
    JetTuple { components }
}

/// All `mn` jet components of a tuple, in order `F_n(f_1), ..., F_n(f_m)`.
pub fn jet_components<C: Coeff>(polys: &[Poly<C>], n: usize) -> Vec<Poly<C>> {
    polys.iter().flat_map(|f| jet(f, n).components).collect()
}

/// Largest multiplicity in the squarefree decomposition of the common gcd.
pub fn max_common_multiplicity_of<C: Coeff>(polys: &[Poly<C>]) -> usize {
    let g = gcd_many(polys.iter());
    squarefree_decomposition(&g).iter().map(|(_, k)| *k).max().unwrap_or(0)
}

pub fn max_common_multiplicity(t: &SystemTuple) -> usize {
    match &t.data {
        TupleData::Real(p) => max_common_multiplicity_of(p),
        TupleData::Complex(p) => max_common_multiplicity_of(p),
    }
}

/// Monic gcd of all polynomials of the tuple: the witness for membership decisions.
pub fn common_gcd(t: &SystemTuple) -> AnyPoly {
    match &t.data {
        TupleData::Real(p) => AnyPoly::Real(gcd_many(p.iter())),
        TupleData::Complex(p) => AnyPoly::Complex(gcd_many(p.iter())),
    }
}

/// No common root of multiplicity `>= n`.
pub fn is_member(t: &SystemTuple) -> bool {
    max_common_multiplicity(t) < t.n
}

/// Membership through the jet characterization: the `mn` jet components have a
/// constant gcd.
pub fn is_member_jet(t: &SystemTuple) -> bool {
    fn check<C: Coeff>(polys: &[Poly<C>], n: usize) -> bool {
        gcd_many(jet_components(polys, n).iter()).degree() == Some(0)
    }
    match &t.data {
        TupleData::Real(p) => check(p, t.n),
        TupleData::Complex(p) => check(p, t.n),
    }
}

pub(crate) fn require_member(t: &SystemTuple) -> Result<()> {
    if is_member(t) {
        Ok(())
    } else {
        Err(Error::NotMember(format!(
            "common root of multiplicity {} >= n = {}",
            max_common_multiplicity(t),
            t.n
        )))
    }
}

/// Coefficient-wise complex conjugation. Real-tagged tuples are fixed.
pub fn conjugate_tuple(t: &SystemTuple) -> SystemTuple {
    match &t.data {
        TupleData::Real(_) => t.clone(),
        TupleData::Complex(p) => SystemTuple { data: TupleData::Complex(p.iter().map(Poly::conj).collect()), n: t.n },
    }
}

/// `(mn - 2)(floor(d/n) + 1) - 1`, defined for `mn >= 3`.
pub fn stability_dimension(d: u64, m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    if m * n < 3 {
        return Err(Error::Precondition(format!("stability dimension needs mn >= 3, got m = {m}, n = {n}")));
    }
    Ok((m * n - 2) * (d / n + 1) - 1)
}

/// Exact test that every jet component vanishes at `alpha`.
pub fn jet_vanishes_at<C: Coeff>(f: &Poly<C>, n: usize, alpha: &C) -> bool {
    jet(f, n).components.iter().all(|c| c.eval(alpha).is_zero())
}
