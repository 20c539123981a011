//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
mod common;

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use common::{
    collision_trial, numeric_is_member, perturb_lower, planted, planted_tuple, random_upper_configuration,
    small_gaussian, small_rational,
};
use polyspace::case12::{census_12, component_of_12, default_t_12, electric_degree, representative_12, stabilize_12};
use polyspace::case21::{census_21, component_of_21, legal_labels_21, representative_21};
use polyspace::case31::{i_d_loop, phi, phi_inverse, pi1_winding, r_tilde};
use polyspace::exactalg::numeric::{eval_numeric, linear_combination};
use polyspace::exactalg::{int, rat, Coeff, Poly};
use polyspace::harness::random::{random_monic, random_monic_complex, random_with_pairs, trial_rng};
use polyspace::harness::{certify_path, invariant_sweep, random_member, random_member_in, Case, ViolationKind};
use polyspace::mapdeg::winding::winding_number_sampled;
use polyspace::mapdeg::{
    eval_natural_map, jet_vectors, map_degree_report, random_covector, SpherePoint, DEFAULT_REFINEMENT_CAP,
};
use polyspace::nonres::{conjugate_tuple, is_member, is_member_jet, jet_vanishes_at, FieldTag, SystemTuple};
use polyspace::stab::stabilize_31;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(limit: Duration, elapsed: Duration) -> String {
    format!("limit {}s", limit.as_secs()) + if elapsed <= limit { "" } else { ", EXCEEDED" }
}

fn membership_triple() -> Outcome {
    let start = Instant::now();
    let rows: Vec<(bool, bool)> = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(0xACCE_0001, i);
            let case = Case::ALL[i as usize % 5];
            let field = if (i / 5) % 2 == 0 { FieldTag::Real } else { FieldTag::Complex };
            let d = rng.gen_range(1..=8);
            let t = planted_tuple(case, d, field, &mut rng);
            let gcd = is_member(&t);
            (gcd == is_member_jet(&t) && gcd == numeric_is_member(&t), gcd)
        })
        .collect();
    let elapsed = start.elapsed();
    let bad = rows.iter().filter(|r| !r.0).count();
    let members = rows.iter().filter(|r| r.1).count();
    let limit = Duration::from_secs(60);
    outcome(
        bad == 0 && elapsed <= limit,
        format!("10000 tuples, {members} members, {bad} disagreements; {}", within(limit, elapsed)),
    )
}

/// Multiplicity of `alpha` as a root of `f`, by repeated exact division.
fn multiplicity_by_division<C: Coeff>(f: &Poly<C>, alpha: &C) -> usize {
    let lin = Poly::linear(alpha.clone());
    let mut g = f.clone();
    let mut k = 0;
    loop {
        let (q, r) = g.div_rem(&lin);
        if !r.is_zero() {
            return k;
        }
        g = q;
        k += 1;
    }
}

fn jet_case<C: Coeff>(alpha: C, k: usize, n: usize, cofactor: Poly<C>) -> Option<bool> {
    if cofactor.eval(&alpha).is_zero() {
        return None;
    }
    let f = planted(&alpha, k, cofactor);
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    let mult = multiplicity_by_division(&f, &alpha);
    Some(mult == k && jet_vanishes_at(&f, n, &alpha) == (mult >= n))
}

fn jet_lemma() -> Outcome {
    let (mut done, mut bad, mut i) = (0, 0, 0u64);
    while done < 1000 {
        i += 1;
        let mut rng = trial_rng(0xACCE_0002, i);
        let (k, n, extra) = (rng.gen_range(0..=5), rng.gen_range(1..=4), rng.gen_range(0..=4));
        let r = if i % 2 == 0 {
            jet_case(small_rational(&mut rng), k, n, random_monic(extra, &mut rng))
        } else {
            jet_case(small_gaussian(&mut rng), k, n, random_monic_complex(extra, &mut rng))
        };
        if let Some(ok) = r {
            done += 1;
            bad += usize::from(!ok);
        }
    }
    outcome(bad == 0, format!("{done} planted cases over R and C, {bad} failures"))
}

const DEGREE_CASES: [Case; 4] = [Case::C21, Case::C31, Case::C12, Case::C13];

/// Raw winding of the section on the report's circle, before rounding.
fn raw_degree(t: &SystemTuple, lambda: &[Complex64], radius: f64) -> Option<f64> {
    let section = linear_combination(&jet_vectors(t), lambda);
    let circle = |th: f64| eval_numeric(&section, Complex64::from_polar(radius, th));
    winding_number_sampled(circle, DEFAULT_REFINEMENT_CAP).ok().map(|(_, s)| s.total_change() / TAU)
}

fn map_degree_check() -> Outcome {
    let start = Instant::now();
    let rows: Vec<(bool, f64)> = (0..500u64)
        .into_par_iter()
        .map(|i| {
            let case = DEGREE_CASES[i as usize % 4];
            let d = 1 + (i as usize / 4) % 8;
            let Ok(t) = random_member(case, d, 0xACCE_0003 ^ i, 200) else { return (false, f64::INFINITY) };
            let mut rng = trial_rng(0xACCE_0003, i);
            let mut worst: f64 = 0.0;
            let mut ok = true;
            for _ in 0..2 {
                let lambda = random_covector(case.m() * case.n(), &mut rng);
                match map_degree_report(&t, &lambda) {
                    Ok(r) => {
                        let raw = raw_degree(&t, &lambda, r.radius).unwrap_or(f64::INFINITY);
                        worst = worst.max((raw - raw.round()).abs());
                        ok &= r.degree == d as i64 && raw.round() == d as f64;
                    }
                    Err(_) => ok = false,
                }
            }
            (ok && worst < 0.2, worst)
        })
        .collect();
    let elapsed = start.elapsed();
    let bad = rows.iter().filter(|r| !r.0).count();
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let limit = Duration::from_secs(120);
    outcome(
        bad == 0 && elapsed <= limit,
        format!("500 members x 2 covectors, {bad} failures, max distance to integer {worst:.2e}; {}", within(limit, elapsed)),
    )
}

fn violation_located(a: &SystemTuple, b: &SystemTuple) -> bool {
    let Ok(path) = certify_path(a, b, 20) else { return false };
    !path.certified
        && path.violations.iter().any(|v| v.kind == ViolationKind::NonMemberSample || v.width() <= rat(1, 1_000_000))
}

fn perturbed_21<R: Rng>(t: &SystemTuple, rng: &mut R) -> SystemTuple {
    let p = t.real_polys().unwrap();
    SystemTuple::new_real(p.iter().map(|f| perturb_lower(f, 10_000, rng)).collect(), 1).unwrap()
}

fn census_21_check() -> Outcome {
    let mut problems = Vec::new();
    let mut paths = 0;
    for d in 1..=5usize {
        let legal = legal_labels_21(d);
        let realized: Vec<i64> =
            legal.iter().filter_map(|&j| representative_21(d, j).and_then(|t| component_of_21(&t)).ok()).collect();
        if realized != legal {
            problems.push(format!("d={d}: representatives realize {realized:?}"));
        }
        if representative_21(d, d as i64 + 2).is_ok() || representative_21(d, d as i64 - 1).is_ok() {
            problems.push(format!("d={d}: illegal representative accepted"));
        }
        let census = census_21(d, 2000, 0xACCE_0004 + d as u64);
        match census {
            Ok(c) if c.failed == 0 && c.support().iter().all(|j| legal.contains(j)) => {}
            other => problems.push(format!("d={d}: census {other:?}")),
        }
        match invariant_sweep(Case::C21, d, 2000, 0xACCE_0014 + d as u64) {
            Ok(r) if r.failures == 0 && r.support.keys().all(|j| legal.contains(j)) => {}
            Ok(r) => problems.push(format!("d={d}: sweep support {:?}, {} failures", r.support, r.failures)),
            Err(e) => problems.push(format!("d={d}: sweep error {e}")),
        }
        let mut rng = trial_rng(0xACCE_0024, d as u64);
        for (x, &ja) in legal.iter().enumerate() {
            for &jb in &legal[x + 1..] {
                for _ in 0..3 {
                    let a = perturbed_21(&representative_21(d, ja).unwrap(), &mut rng);
                    let b = perturbed_21(&representative_21(d, jb).unwrap(), &mut rng);
                    paths += 1;
                    if !violation_located(&a, &b) {
                        problems.push(format!("d={d}: path {ja} -> {jb} without located violation"));
                    }
                }
            }
        }
        // random members against each other
        let mut k = 0u64;
        let mut random_paths = 0;
        while random_paths < 20 && k < 2000 {
            k += 1;
            let a = random_member(Case::C21, d, 0xACCE_0034 ^ (k << 8) ^ d as u64, 200).unwrap();
            let b = random_member(Case::C21, d, 0xACCE_0044 ^ (k << 8) ^ d as u64, 200).unwrap();
            if component_of_21(&a).unwrap() == component_of_21(&b).unwrap() {
                continue;
            }
            random_paths += 1;
            paths += 1;
            if !violation_located(&a, &b) {
                problems.push(format!("d={d}: random cross-label path without located violation"));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("d <= 5, {paths} cross-label paths; {}", if problems.is_empty() { "ok".into() } else { problems.join("; ") }),
    )
}

fn winding_identity_31() -> Outcome {
    let mut problems = Vec::new();
    for d in [3, 5, 7] {
        match pi1_winding(|th| i_d_loop(d, th), DEFAULT_REFINEMENT_CAP) {
            Ok(1) => {}
            other => problems.push(format!("d={d}: winding {other:?}")),
        }
    }
    let (mut families, mut k, mut worst) = (0, 0u64, 0.0f64);
    while families < 100 {
        k += 1;
        let Some(c) = collision_trial(&mut trial_rng(0xACCE_0005, k)) else { continue };
        families += 1;
        worst = worst.max(c.last_relative);
        if !(c.strictly_decreasing() && c.last_relative < 1e-6 && c.numeric_agrees) {
            problems.push(format!("collision family {k}"));
        }
    }
    let zeros: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let d = [3, 5, 7][i as usize % 3];
            let r = random_member(Case::C31, d, 0xACCE_0015 ^ i, 200).and_then(|t| phi(&t)).and_then(|m| r_tilde(&m));
            !matches!(r, Ok(v) if v.is_finite() && v.norm() > 0.0)
        })
        .count();
    if zeros > 0 {
        problems.push(format!("{zeros} members with r_tilde zero or failing"));
    }
    outcome(
        problems.is_empty(),
        format!(
            "windings d=3,5,7; 100 collision families, worst relative gap {worst:.1e}; 1000 r_tilde values; {}",
            if problems.is_empty() { "ok".into() } else { problems.join("; ") }
        ),
    )
}

fn stabilization_31() -> Outcome {
    let stab = |th: f64| {
        let t = phi_inverse(&i_d_loop(3, th)?);
        let t = stabilize_31(&t, &int(10))?;
        phi(&stabilize_31(&t, &int(100))?)
    };
    let degree = stab(0.5).map(|m| m.degree());
    let winding = pi1_winding(stab, DEFAULT_REFINEMENT_CAP);
    let pass = matches!(degree, Ok(5)) && matches!(winding, Ok(1));
    outcome(pass, format!("T = 10 then 100: degree {degree:?}, winding {winding:?}"))
}

fn census_12_check() -> Outcome {
    let mut problems = Vec::new();
    for d in 1..=8usize {
        let realized: Vec<usize> =
            (0..=d / 2).filter_map(|j| representative_12(d, j).and_then(|f| component_of_12(&f)).ok()).collect();
        if realized != (0..=d / 2).collect::<Vec<_>>() || representative_12(d, d / 2 + 1).is_ok() {
            problems.push(format!("d={d}: representatives realize {realized:?}"));
        }
        match census_12(d, 1000, 0xACCE_0007 + d as u64) {
            Ok(c) if c.failed == 0 && c.support().iter().all(|&j| (0..=(d / 2) as i64).contains(&j)) => {}
            other => problems.push(format!("d={d}: census {other:?}")),
        }
    }
    let electric_bad = (0..300u64)
        .filter(|&i| {
            let j = i as usize % 7;
            let pts = random_upper_configuration(j, &mut trial_rng(0xACCE_0017, i));
            electric_degree(&pts).ok() != Some(j as i64)
        })
        .count();
    if electric_bad > 0 {
        problems.push(format!("{electric_bad} electric degrees wrong"));
    }
    let stab_bad = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = trial_rng(0xACCE_0027, i);
            let d = rng.gen_range(1..=8);
            let j = rng.gen_range(0..=d / 2);
            let f = random_with_pairs(d, j, &mut rng);
            let g = stabilize_12(&f, &default_t_12(&f));
            !(component_of_12(&f).ok() == Some(j)
                && matches!(&g, Ok(g) if g.degree() == Some(d + 2) && component_of_12(g).ok() == Some(j + 1)))
        })
        .count();
    if stab_bad > 0 {
        problems.push(format!("{stab_bad} stabilizations did not add exactly one pair"));
    }
    outcome(
        problems.is_empty(),
        format!(
            "d <= 8 labels, 300 configurations, 1000 stabilizations; {}",
            if problems.is_empty() { "ok".into() } else { problems.join("; ") }
        ),
    )
}

fn equivariance() -> Outcome {
    let bad: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let case = Case::ALL[i as usize % 5];
            let d = 1 + (i as usize / 5) % 8;
            let Ok(t) = random_member_in(case, d, FieldTag::Complex, 0xACCE_0008 ^ i, 200) else { return true };
            let mut rng = trial_rng(0xACCE_0008, i);
            let alpha = Complex64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let c = conjugate_tuple(&t);
            let pairs = [
                (SpherePoint::Finite(alpha.conj()), SpherePoint::Finite(alpha)),
                (SpherePoint::Infinity, SpherePoint::Infinity),
            ];
            !pairs.into_iter().all(|(a, b)| match (eval_natural_map(&c, a), eval_natural_map(&t, b)) {
                (Ok(x), Ok(y)) => x.approx_eq(&y.conj(), 1e-10),
                _ => false,
            })
        })
        .count();
    let fixed_bad: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&i| {
            let case = Case::ALL[i as usize % 5];
            let d = 1 + (i as usize / 5) % 8;
            let Ok(t) = random_member(case, d, 0xACCE_0018 ^ i, 200) else { return true };
            let alpha = Complex64::new(0.01 * i as f64 - 5.0, 1.3);
            let bitwise = match (
                eval_natural_map(&t, SpherePoint::Finite(alpha)),
                eval_natural_map(&t, SpherePoint::Finite(alpha.conj())),
            ) {
                (Ok(a), Ok(b)) => a.coords().iter().zip(b.coords()).all(|(x, y)| x.conj() == *y),
                _ => false,
            };
            let as_complex = t.to_complex();
            !(conjugate_tuple(&t) == t && conjugate_tuple(&as_complex) == as_complex && bitwise)
        })
        .count();
    outcome(
        bad == 0 && fixed_bad == 0,
        format!("1000 complex members, {bad} failures at 1e-10; 1000 real tuples, {fixed_bad} not exactly fixed"),
    )
}

fn determinism() -> Outcome {
    let mut mismatched = Vec::new();
    for case in Case::ALL {
        for d in [3, 4] {
            let run = || serde_json::to_string(&invariant_sweep(case, d, 100, 0xACCE_0009).unwrap()).unwrap();
            if run() != run() {
                mismatched.push(format!("sweep {case} d={d}"));
            }
        }
    }
    let c21 = || serde_json::to_string(&census_21(5, 500, 0xACCE_0019).unwrap()).unwrap();
    let c12 = || serde_json::to_string(&census_12(6, 500, 0xACCE_0019).unwrap()).unwrap();
    if c21() != c21() {
        mismatched.push("census 21".into());
    }
    if c12() != c12() {
        mismatched.push("census 12".into());
    }
    outcome(
        mismatched.is_empty(),
        format!("10 sweeps and 2 censuses re-run; {}", if mismatched.is_empty() { "byte-identical".into() } else { mismatched.join(", ") }),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("membership routes agree", membership_triple),
        ("jet lemma", jet_lemma),
        ("map degree equals d", map_degree_check),
        ("(2,1) labels and cross-label paths", census_21_check),
        ("(3,1) winding identity", winding_identity_31),
        ("(3,1) stabilization keeps the generator", stabilization_31),
        ("(1,2) labels, electric degree, stabilization", census_12_check),
        ("conjugation equivariance", equivariance),
        ("determinism", determinism),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {verdict} ({}; {:.1}s)", k + 1, o.detail, start.elapsed().as_secs_f64());
    }
    let elapsed = total.elapsed();
    println!("acceptance: {} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), elapsed.as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
