//! Seeded invariant sweeps over random members of one case.
//!
//! Even-numbered trials draw members by rejection sampling on random coefficients.
//! Odd-numbered trials build members from random root data with a prescribed
//! label, so that every component is visited; their label is checked against the
//! construction. Results do not depend on thread scheduling.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::path::certify_path;
use super::random::{random_lower, random_monic, random_rational, random_with_pairs, trial_rng, MAX_NUMER};
use super::Case;
use crate::case12::{component_of_12, electric_degree, stabilize_12, to_configuration, default_t_12};
use crate::case21::{component_of_21, legal_labels_21, representative_21};
use crate::case31::{i_d_loop, phi, phi_inverse, r_tilde, s1_act, Model31};
use crate::error::Result;
use crate::exactalg::{cauchy_index, int, rat, QPoly, Rational};
use crate::mapdeg::{map_degree, random_covector, DEFAULT_REFINEMENT_CAP};
use crate::nonres::{is_member, is_member_jet, SystemTuple};
use crate::case31::pi1_winding;

/// Path checks run on every `PATH_EVERY`-th trial.
const PATH_EVERY: u64 = 25;
const PATH_DEPTH: usize = 20;
const ATTEMPTS: usize = 100;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckTally {
    pub run: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub case: Case,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    /// Label to number of trials carrying it.
    pub support: BTreeMap<i64, usize>,
    pub checks: BTreeMap<String, CheckTally>,
    /// Tolerances the checks were run with.
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Default)]
struct Outcome {
    label: Option<i64>,
    checks: Vec<(&'static str, bool)>,
}

impl Outcome {
    fn check(&mut self, name: &'static str, ok: bool) {
        self.checks.push((name, ok));
    }

    fn check_result<T>(&mut self, name: &'static str, r: Result<T>, pred: impl FnOnce(&T) -> bool) -> Option<T> {
        match r {
            Ok(v) => {
                let ok = pred(&v);
                self.check(name, ok);
                Some(v)
            }
            Err(_) => {
                self.check(name, false);
                None
            }
        }
    }
}

fn draw_member<R: Rng>(case: Case, d: usize, rng: &mut R) -> Option<SystemTuple> {
    for _ in 0..ATTEMPTS {
        let t = SystemTuple::new_real((0..case.m()).map(|_| random_monic(d, rng)).collect(), case.n()).ok()?;
        if is_member(&t) {
            return Some(t);
        }
    }
    None
}

/// Monic quadratic with no real root.
fn random_positive_quadratic<R: Rng>(rng: &mut R) -> QPoly {
    let re = random_rational(rng);
    let im = rat(rng.gen_range(1..=MAX_NUMER), rng.gen_range(1..=10));
    QPoly::new(vec![&re * &re + &im * &im, -(&re + &re), int(1)])
}

/// A (2,1) member with label `j`: `|j|` interlacing real roots per polynomial plus
/// root-free quadratics.
fn structured_21<R: Rng>(d: usize, j: i64, rng: &mut R) -> SystemTuple {
    let a = j.unsigned_abs() as usize;
    let mut roots: Vec<Rational> = Vec::new();
    while roots.len() < 2 * a {
        let r = random_rational(rng);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort();
    let (mut r1, mut r2) = (Vec::new(), Vec::new());
    for (k, r) in roots.into_iter().enumerate() {
        if (k % 2 == 0) == (j > 0) {
            r1.push(r);
        } else {
            r2.push(r);
        }
    }
    let mut f1 = QPoly::from_roots(r1.iter());
    let mut f2 = QPoly::from_roots(r2.iter());
    for _ in 0..(d - a) / 2 {
        f1 = &f1 * &random_positive_quadratic(rng);
        f2 = &f2 * &random_positive_quadratic(rng);
    }
    SystemTuple::new_real(vec![f1, f2], 1).expect("monic")
}

fn perturb<R: Rng>(t: &SystemTuple, rng: &mut R) -> SystemTuple {
    let p = t.real_polys().unwrap();
    let d = t.degree().unwrap();
    let eps = rat(1, 100_000);
    let moved = p.iter().map(|f| f + &random_lower(d, rng).scale(&eps)).collect();
    SystemTuple::new_real(moved, t.n()).unwrap()
}

fn path_checks<R: Rng>(out: &mut Outcome, t: &SystemTuple, label: i64, other: Option<SystemTuple>, rng: &mut R) {
    let near = perturb(t, rng);
    if let Ok(path) = certify_path(t, &near, PATH_DEPTH) {
        // an uncertified path proves nothing either way
        if path.certified {
            out.check("path_label_constant", path.labels().iter().all(|&j| j == label));
        }
    }
    if let Some(o) = other {
        if let Ok(path) = certify_path(t, &o, PATH_DEPTH) {
            let width = super::path::dyadic_width(PATH_DEPTH);
            out.check(
                "cross_label_violation_located",
                !path.certified && path.violations.iter().any(|v| v.width() <= width),
            );
        }
    }
}

fn common_checks<R: Rng>(out: &mut Outcome, t: &SystemTuple, d: usize, rng: &mut R) {
    out.check("jet_route_agrees", is_member_jet(t) == is_member(t));
    let lambda = random_covector(t.m() * t.n(), rng);
    out.check_result("map_degree_is_d", map_degree(t, &lambda), |&k| k == d as i64);
}

fn trial_21(d: usize, seed: u64, i: u64) -> Outcome {
    let mut rng = trial_rng(seed, i);
    let mut out = Outcome::default();
    let (t, planted) = if i % 2 == 0 {
        match draw_member(Case::C21, d, &mut rng) {
            Some(t) => (t, None),
            None => {
                out.check("member_found", false);
                return out;
            }
        }
    } else {
        let j = *legal_labels_21(d).choose(&mut rng).unwrap();
        (structured_21(d, j, &mut rng), Some(j))
    };
    let Some(j) = out.check_result("label_computed", component_of_21(&t), |_| true) else { return out };
    out.label = Some(j);
    out.check("label_legal", j.unsigned_abs() as usize <= d && (d as i64 - j) % 2 == 0);
    let p = t.real_polys().unwrap();
    out.check("label_matches_cauchy_index", cauchy_index(&p[0], &p[1]) == j);
    if let Some(pj) = planted {
        out.check("label_matches_construction", pj == j);
    }
    common_checks(&mut out, &t, d, &mut rng);
    if i % PATH_EVERY == 1 {
        let other = legal_labels_21(d).into_iter().find(|&k| k != j).map(|k| representative_21(d, k).unwrap());
        path_checks(&mut out, &t, j, other, &mut rng);
    }
    out
}

fn trial_12(d: usize, seed: u64, i: u64) -> Outcome {
    let mut rng = trial_rng(seed, i);
    let mut out = Outcome::default();
    let (t, planted) = if i % 2 == 0 {
        match draw_member(Case::C12, d, &mut rng) {
            Some(t) => (t, None),
            None => {
                out.check("member_found", false);
                return out;
            }
        }
    } else {
        let j = rng.gen_range(0..=d / 2);
        (SystemTuple::new_real(vec![random_with_pairs(d, j, &mut rng)], 2).unwrap(), Some(j))
    };
    let f = t.real_polys().unwrap()[0].clone();
    let Some(j) = out.check_result("label_computed", component_of_12(&f), |_| true) else { return out };
    out.label = Some(j as i64);
    out.check("label_legal", j <= d / 2);
    if let Some(pj) = planted {
        out.check("label_matches_construction", pj == j);
    }
    if let Some(cfg) = out.check_result("configuration", to_configuration(&f), |c| c.points.len() == j) {
        out.check_result("electric_degree_is_j", electric_degree(&cfg.points), |&k| k == j as i64);
    }
    let stab = stabilize_12(&f, &default_t_12(&f)).and_then(|g| component_of_12(&g));
    out.check_result("stabilization_increments_j", stab, |&k| k == j + 1);
    common_checks(&mut out, &t, d, &mut rng);
    if i % PATH_EVERY == 1 {
        let other = (0..=d / 2).find(|&k| k != j).map(|k| {
            SystemTuple::new_real(vec![crate::case12::representative_12(d, k).unwrap()], 2).unwrap()
        });
        path_checks(&mut out, &t, j as i64, other, &mut rng);
    }
    out
}

fn trial_31(d: usize, seed: u64, i: u64) -> Outcome {
    let mut rng = trial_rng(seed, i);
    let mut out = Outcome::default();
    let Some(t) = draw_member(Case::C31, d, &mut rng) else {
        out.check("member_found", false);
        return out;
    };
    common_checks(&mut out, &t, d, &mut rng);
    if d < 2 {
        return out;
    }
    let Some(m) = out.check_result("phi", phi(&t), |m| phi_inverse(m) == t) else { return out };
    if d % 2 == 1 {
        if let Some(r) = out.check_result("r_tilde_nonzero", r_tilde(&m), |r| r.is_finite() && r.norm() > 0.0) {
            let theta = rng.gen_range(-PI..PI);
            let rotated = r_tilde(&s1_act(theta, &m));
            let want = r * num_complex::Complex64::from_polar(1.0, theta);
            out.check_result("s1_equivariance", rotated, |v| (v - want).norm() <= 1e-9 * want.norm());
        }
        if i % PATH_EVERY == 0 {
            let orbit = pi1_winding(|th| Ok::<Model31, _>(s1_act(th, &m)), DEFAULT_REFINEMENT_CAP);
            out.check_result("orbit_winding_is_1", orbit, |&w| w == 1);
        }
    }
    out
}

fn trial_generic(case: Case, d: usize, seed: u64, i: u64) -> Outcome {
    let mut rng = trial_rng(seed, i);
    let mut out = Outcome::default();
    match draw_member(case, d, &mut rng) {
        Some(t) => common_checks(&mut out, &t, d, &mut rng),
        None => out.check("member_found", false),
    }
    out
}

/// Run `trials` seeded trials of the invariant suite for `case` at degree `d`.
pub fn invariant_sweep(case: Case, d: usize, trials: usize, seed: u64) -> Result<SweepReport> {
    if d == 0 {
        return Err(crate::error::Error::Precondition("d must be positive".into()));
    }
    let outcomes: Vec<Outcome> = (0..trials as u64)
        .into_par_iter()
        .map(|i| match case {
            Case::C21 => trial_21(d, seed, i),
            Case::C12 => trial_12(d, seed, i),
            Case::C31 => trial_31(d, seed, i),
            _ => trial_generic(case, d, seed, i),
        })
        .collect();
    let mut support = BTreeMap::new();
    let mut checks: BTreeMap<String, CheckTally> = BTreeMap::new();
    for o in outcomes {
        if let Some(j) = o.label {
            *support.entry(j).or_default() += 1;
        }
        for (name, ok) in o.checks {
            let c = checks.entry(name.to_string()).or_default();
            c.run += 1;
            c.failed += usize::from(!ok);
        }
    }
    if case == Case::C31 && d >= 3 && d % 2 == 1 {
        let w = pi1_winding(|th| i_d_loop(d, th), DEFAULT_REFINEMENT_CAP);
        let c = checks.entry("generator_loop_winding_is_1".to_string()).or_default();
        c.run += 1;
        c.failed += usize::from(w.ok() != Some(1));
    }
    if matches!(case, Case::C21) {
        let c = checks.entry("representatives_realize_labels".to_string()).or_default();
        for j in legal_labels_21(d) {
            c.run += 1;
            c.failed += usize::from(representative_21(d, j).and_then(|t| component_of_21(&t)).ok() != Some(j));
        }
    }
    let failures = checks.values().map(|c| c.failed).sum();
    let tolerances = BTreeMap::from([
        ("integer_rounding".to_string(), 0.2),
        ("r_tilde_relative".to_string(), crate::case31::R_TILDE_REL_TOL),
        ("s1_equivariance_relative".to_string(), 1e-9),
        ("path_width".to_string(), 1.0 / (1u64 << PATH_DEPTH) as f64),
    ]);
    Ok(SweepReport { case, d, trials, seed, failures, support, checks, tolerances })
}
