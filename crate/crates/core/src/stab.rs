//! Stabilization: raising the degree by adding roots from infinity.
//!
//! Each map here takes the point at infinity as an explicit parameter `T` chosen
//! beyond every relevant root bound. Since admissible `T` depend on the input,
//! these are per-input constructions, not one globally continuous map; that is
//! enough to transport invariants.

use serde::Serialize;

use crate::case12::{component_of_12, stabilize_12};
use crate::case21::component_of_21;
use crate::error::{Error, Result};
use crate::exactalg::{cauchy_root_bound, format_rational, int, QPoly, Rational};
use crate::nonres::{is_member, require_member, SystemTuple};

fn linear_at(t: &Rational) -> QPoly {
    QPoly::new(vec![-t.clone(), int(1)])
}

fn bound_31(p: &[QPoly]) -> Rational {
    let mut polys = p.to_vec();
    for k in 1..3 {
        let diff = &p[k] - &p[0];
        if !diff.is_zero() {
            polys.push(diff);
        }
    }
    cauchy_root_bound(&polys)
}

fn real_31(t: &SystemTuple) -> Result<&[QPoly]> {
    if t.m() != 3 || t.n() != 1 {
        return Err(Error::Precondition(format!("expected (m, n) = (3, 1), got ({}, {})", t.m(), t.n())));
    }
    if t.degree().is_none() {
        return Err(Error::Precondition("expected equal degrees".into()));
    }
    t.real_polys().ok_or_else(|| Error::Precondition("expected real coefficients".into()))
}

/// `(f1, f2, f3) -> ((z-T) f1, (z-T) f1 + (f2 - f1), (z-T) f1 + (f3 - f1))`: the
/// root `T` is added to `f1` in the model `(f1, f2 - f1, f3 - f1)`.
pub fn stabilize_31(t: &SystemTuple, big_t: &Rational) -> Result<SystemTuple> {
    let p = real_31(t)?;
    require_member(t)?;
    let bound = bound_31(p);
    if big_t <= &bound {
        return Err(Error::Precondition(format!("T = {big_t} must exceed the root bound {bound}")));
    }
    let g = &linear_at(big_t) * &p[0];
    let out = SystemTuple::new_real(vec![g.clone(), &g + &(&p[1] - &p[0]), &g + &(&p[2] - &p[0])], 1)?;
    assert!(is_member(&out), "stabilization left the space");
    Ok(out)
}

pub fn default_t_31(t: &SystemTuple) -> Result<Rational> {
    Ok(bound_31(real_31(t)?) + int(1))
}

/// `f_k -> (z - T) f_k` for all `k`; legal for `n >= 2`, where one new common simple
/// root is allowed.
pub fn stabilize_multiplicity(t: &SystemTuple, big_t: &Rational) -> Result<SystemTuple> {
    if t.n() < 2 {
        return Err(Error::Precondition("a common root would violate n = 1".into()));
    }
    require_member(t)?;
    let polys = t.complex_polys();
    let bound = cauchy_root_bound(&polys);
    if big_t <= &bound {
        return Err(Error::Precondition(format!("T = {big_t} must exceed the root bound {bound}")));
    }
    let out = match t.real_polys() {
        Some(p) => SystemTuple::new_real(p.iter().map(|f| &linear_at(big_t) * f).collect(), t.n())?,
        None => {
            let lin = linear_at(big_t).to_gaussian();
            SystemTuple::new_complex(polys.iter().map(|f| &lin * f).collect(), t.n())?
        }
    };
    assert!(is_member(&out), "stabilization left the space");
    Ok(out)
}

pub fn default_t_multiplicity(t: &SystemTuple) -> Rational {
    cauchy_root_bound(&t.complex_polys()) + int(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StabCase {
    #[serde(rename = "31")]
    Case31,
    #[serde(rename = "12")]
    Case12,
    Mult,
}

/// Case-tagged component label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum ComponentLabel {
    #[serde(rename = "21")]
    Case21 { j: i64 },
    /// The (3,1) space is connected.
    #[serde(rename = "31")]
    Case31,
    #[serde(rename = "12")]
    Case12 { j: usize },
    /// No component invariant is computed for other shapes.
    #[serde(rename = "none")]
    Unlabelled,
}

/// Component label of a member of any shape (unlabelled shapes give `Unlabelled`).
pub fn component_label(t: &SystemTuple) -> Result<ComponentLabel> {
    match (t.m(), t.n(), t.real_polys()) {
        (2, 1, Some(_)) => Ok(ComponentLabel::Case21 { j: component_of_21(t)? }),
        (3, 1, Some(_)) => Ok(ComponentLabel::Case31),
        (1, 2, Some(p)) => Ok(ComponentLabel::Case12 { j: component_of_12(&p[0])? }),
        _ => Ok(ComponentLabel::Unlabelled),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub input_label: ComponentLabel,
    pub output_label: ComponentLabel,
    /// `T` as `"p/q"`.
    pub t_used: String,
    pub member_in: bool,
    pub member_out: bool,
    pub degree_in: usize,
    pub degree_out: usize,
    #[serde(skip)]
    pub output: SystemTuple,
}

/// Stabilize `t` and report labels and membership before and after. `big_t`
/// defaults to the root bound plus one.
pub fn stabilize(case: StabCase, t: &SystemTuple, big_t: Option<Rational>) -> Result<StabilizationReport> {
    let member_in = is_member(t);
    let input_label = component_label(t)?;
    let (output, t_used) = match case {
        StabCase::Case31 => {
            let big_t = match big_t {
                Some(v) => v,
                None => default_t_31(t)?,
            };
            (stabilize_31(t, &big_t)?, big_t)
        }
        StabCase::Mult => {
            let big_t = big_t.unwrap_or_else(|| default_t_multiplicity(t));
            (stabilize_multiplicity(t, &big_t)?, big_t)
        }
        StabCase::Case12 => {
            if t.m() != 1 || t.n() != 2 {
                return Err(Error::Precondition("expected (m, n) = (1, 2)".into()));
            }
            let f = &t.real_polys().ok_or_else(|| Error::Precondition("expected real coefficients".into()))?[0];
            let big_t = big_t.unwrap_or_else(|| crate::case12::default_t_12(f));
            (SystemTuple::new_real(vec![stabilize_12(f, &big_t)?], 2)?, big_t)
        }
    };
    Ok(StabilizationReport {
        output_label: component_label(&output)?,
        member_out: is_member(&output),
        t_used: format_rational(&t_used),
        member_in,
        degree_in: t.degrees()[0],
        degree_out: output.degrees()[0],
        input_label,
        output,
    })
}
