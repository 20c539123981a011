//! Sample-based certification of straight-line coefficient paths.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{cauchy_index, count_distinct_real_roots, discriminant, format_rational, int, resultant, Poly, Rational};
use crate::nonres::{is_member, SystemTuple, TupleData};

/// Parameters of the first, uniform pass are multiples of `2^-INITIAL_DEPTH`.
pub const INITIAL_DEPTH: usize = 5;

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathSample {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub member: bool,
    /// Component label where one is defined: `j` for (2,1) and (1,2).
    pub label: Option<i64>,
    /// Sign of the boundary indicator (resultant or discriminant), when defined.
    #[serde(skip)]
    indicator: Option<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// A sample is not a member.
    NonMemberSample,
    /// The resultant or discriminant changes sign, so it vanishes in between.
    IndicatorSignChange,
    /// Two member samples carry different labels.
    LabelChange,
}

/// The path leaves the space somewhere in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
}

impl Violation {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathInSpace {
    #[serde(skip)]
    pub endpoints: (SystemTuple, SystemTuple),
    pub samples: Vec<PathSample>,
    pub refinement_depth: usize,
    pub certified: bool,
    pub violations: Vec<Violation>,
}

impl PathInSpace {
    /// Labels of all member samples, in parameter order.
    pub fn labels(&self) -> Vec<i64> {
        self.samples.iter().filter(|s| s.member).filter_map(|s| s.label).collect()
    }
}

fn lerp<C: crate::exactalg::Coeff>(a: &Poly<C>, b: &Poly<C>, t: &C) -> Poly<C> {
    a + &(b - a).scale(t)
}

/// Point at parameter `t` of the straight line from `a` to `b`.
pub fn interpolate(a: &SystemTuple, b: &SystemTuple, t: &Rational) -> SystemTuple {
    match (a.data(), b.data()) {
        (TupleData::Real(p), TupleData::Real(q)) => {
            SystemTuple::new_real(p.iter().zip(q).map(|(x, y)| lerp(x, y, t)).collect(), a.n())
        }
        _ => {
            let tg = crate::exactalg::GaussianRational::real(t.clone());
            let (p, q) = (a.complex_polys(), b.complex_polys());
            SystemTuple::new_complex(p.iter().zip(&q).map(|(x, y)| lerp(x, y, &tg)).collect(), a.n())
        }
    }
    .expect("interpolation of monic tuples of equal degrees is monic")
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sample(a: &SystemTuple, b: &SystemTuple, t: Rational) -> PathSample {
    let p = interpolate(a, b, &t);
    // for monic inputs the indicator vanishes exactly off the space, so it doubles
    // as the membership test
    let (member, label, indicator) = match (p.m(), p.n(), p.real_polys()) {
        (2, 1, Some(f)) => {
            let r = sign(&resultant(&f[0], &f[1]));
            (r != 0, (r != 0).then(|| cauchy_index(&f[0], &f[1])), Some(r))
        }
        (1, 2, Some(f)) => {
            let disc = sign(&discriminant(&f[0]));
            // squarefree already known here, so count real roots directly
            let j = |f: &crate::exactalg::QPoly| (f.degree().unwrap() - count_distinct_real_roots(f)) as i64 / 2;
            (disc != 0, (disc != 0).then(|| j(&f[0])), Some(disc))
        }
        _ => (is_member(&p), None, None),
    };
    PathSample { t, member, label, indicator }
}

fn discrepancy(l: &PathSample, r: &PathSample) -> Option<ViolationKind> {
    if !(l.member && r.member) {
        return None;
    }
    if l.label != r.label {
        return Some(ViolationKind::LabelChange);
    }
    match (l.indicator, r.indicator) {
        (Some(x), Some(y)) if x * y < 0 => Some(ViolationKind::IndicatorSignChange),
        _ => None,
    }
}

/// Certify the straight line from `a` to `b`.
///
/// Samples a uniform grid of 33 parameters, then bisects every segment whose end
/// samples disagree in label or in the sign of the boundary indicator, down to
/// width `2^-depth_cap`. A non-member sample found on the way ends the search in
/// that segment. The path is certified when every sample is a member and no
/// segment was flagged. Labels are computed exactly (Cauchy index for (2,1),
/// Sturm counts for (1,2)). Between samples nothing is proved.
pub fn certify_path(a: &SystemTuple, b: &SystemTuple, depth_cap: usize) -> Result<PathInSpace> {
    if a.m() != b.m() || a.n() != b.n() || a.degrees() != b.degrees() {
        return Err(Error::Precondition("path endpoints must have the same shape".into()));
    }
    let depth_cap = depth_cap.max(INITIAL_DEPTH);
    let steps = 1i64 << INITIAL_DEPTH;
    let mut samples: Vec<PathSample> =
        (0..=steps).map(|k| sample(a, b, Rational::new(k.into(), steps.into()))).collect();
    let mut violations = Vec::new();
    let mut extra = Vec::new();
    for s in &samples {
        if !s.member {
            violations.push(Violation { kind: ViolationKind::NonMemberSample, lo: s.t.clone(), hi: s.t.clone() });
        }
    }
    for w in samples.windows(2) {
        let Some(mut kind) = discrepancy(&w[0], &w[1]) else { continue };
        let (mut lo, mut hi) = (w[0].clone(), w[1].clone());
        let mut depth = INITIAL_DEPTH;
        while depth < depth_cap {
            let mid = sample(a, b, (&lo.t + &hi.t) / int(2));
            depth += 1;
            extra.push(mid.clone());
            if !mid.member {
                kind = ViolationKind::NonMemberSample;
                lo = mid.clone();
                hi = mid;
                break;
            }
            if let Some(k) = discrepancy(&lo, &mid) {
                kind = k;
                hi = mid;
            } else if let Some(k) = discrepancy(&mid, &hi) {
                kind = k;
                lo = mid;
            } else {
                // both halves look clean; the disagreement is not localizable further
                break;
            }
        }
        violations.push(Violation { kind, lo: lo.t, hi: hi.t });
    }
    samples.extend(extra);
    samples.sort_by(|x, y| x.t.cmp(&y.t));
    samples.dedup_by(|x, y| x.t == y.t);
    let certified = violations.is_empty();
    Ok(PathInSpace { endpoints: (a.clone(), b.clone()), samples, refinement_depth: depth_cap, certified, violations })
}

/// Certify a piecewise-linear path through `vertices`; parameters are rescaled so
/// the whole path runs over `[0, 1]`.
pub fn certify_polyline(vertices: &[SystemTuple], depth_cap: usize) -> Result<PathInSpace> {
    if vertices.len() < 2 {
        return Err(Error::InvalidInput("a polyline needs at least two vertices".into()));
    }
    let pieces = int(vertices.len() as i64 - 1);
    let mut samples = Vec::new();
    let mut violations = Vec::new();
    for (k, w) in vertices.windows(2).enumerate() {
        let seg = certify_path(&w[0], &w[1], depth_cap)?;
        let offset = int(k as i64);
        let map = |t: &Rational| (&offset + t) / &pieces;
        for s in seg.samples {
            if k > 0 && s.t.is_zero() {
                continue;
            }
            samples.push(PathSample { t: map(&s.t), ..s });
        }
        for v in seg.violations {
            violations.push(Violation { kind: v.kind, lo: map(&v.lo), hi: map(&v.hi) });
        }
    }
    let certified = violations.is_empty() && samples.iter().all(|s| s.member);
    Ok(PathInSpace {
        endpoints: (vertices[0].clone(), vertices.last().unwrap().clone()),
        samples,
        refinement_depth: depth_cap.max(INITIAL_DEPTH),
        certified,
        violations,
    })
}

/// `2^-depth` as a rational.
pub fn dyadic_width(depth: usize) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::one() << depth)
}
