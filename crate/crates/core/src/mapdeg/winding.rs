//! Adaptive argument tracking along parametrized paths in the punctured plane.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of evaluations of one path.
pub const DEFAULT_REFINEMENT_CAP: usize = 1 << 20;

const INITIAL_SAMPLES: usize = 64;

/// An adaptively sampled path with a continuous lift of its argument.
///
/// `parameters` run from the start to the end of the parameter interval, both
/// included; for a closed loop on `[0, 2pi]` the last value repeats the first.
/// Consecutive lifted arguments differ by less than `pi/2`.
#[derive(Clone, Debug, Serialize)]
pub struct LoopSample {
    pub parameters: Vec<f64>,
    pub values: Vec<Complex64>,
    pub unwrapped_args: Vec<f64>,
}

impl LoopSample {
    /// Net change of the lifted argument.
    pub fn total_change(&self) -> f64 {
        self.unwrapped_args.last().unwrap() - self.unwrapped_args[0]
    }

    pub fn len(&self) -> usize {
        self.parameters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parameters.is_empty()
    }
}

fn checked(t: f64, v: Complex64) -> Result<Complex64> {
    if v.is_finite() && v.norm() > 0.0 {
        Ok(v)
    } else {
        Err(Error::ZeroOnLoop(t))
    }
}

/// Argument of `v1 / v0`, in `(-pi, pi]`.
pub fn arg_step(v0: Complex64, v1: Complex64) -> f64 {
    (v1 * v0.conj()).arg()
}

/// Sample `f` on `[a, b]`, bisecting every step whose argument jump reaches `pi/2`.
///
/// A step is accepted only together with its midpoint, and only when the two
/// half-steps are small and add up to the full step; this catches most steps that
/// wrap around the origin between samples.
pub fn sample_path(f: impl FnMut(f64) -> Complex64, a: f64, b: f64, cap: usize) -> Result<LoopSample> {
    sample_path_with_breaks(f, a, b, &[], cap)
}

/// As [`sample_path`], with extra parameters in `(a, b)` that are always sampled.
///
/// Breakpoints that separate the zeros of one coordinate from each other keep
/// every step inside a half plane, so no step can hide a full turn.
pub fn sample_path_with_breaks(
    mut f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    breaks: &[f64],
    cap: usize,
) -> Result<LoopSample> {
    let h = (b - a) / INITIAL_SAMPLES as f64;
    let mut grid: Vec<f64> = (1..INITIAL_SAMPLES).map(|k| a + h * k as f64).collect();
    grid.extend(breaks.iter().copied().filter(|t| (a < *t && *t < b) || (b < *t && *t < a)));
    if b < a {
        grid.sort_by(|x, y| y.total_cmp(x));
    } else {
        grid.sort_by(f64::total_cmp);
    }
    // breakpoints closer than this would only trip the minimum-step guard
    let merge = (b - a).abs() * 1e-12;
    grid.dedup_by(|x, y| (*x - *y).abs() <= merge);
    grid.retain(|t| (t - a).abs() > merge && (t - b).abs() > merge);
    grid.push(b);
    let cap = cap.max(2 * grid.len() + 1);
    let mut pending = Vec::with_capacity(grid.len());
    for &t in grid.iter().rev() {
        pending.push((t, checked(t, f(t))?));
    }
    let v0 = checked(a, f(a))?;
    let mut out = LoopSample { parameters: vec![a], values: vec![v0], unwrapped_args: vec![v0.arg()] };
    let mut evaluations = grid.len() + 1;
    let min_step = (b - a).abs() * 1e-15;
    while let Some(&(t1, v1)) = pending.last() {
        let t0 = *out.parameters.last().unwrap();
        let v0 = *out.values.last().unwrap();
        if evaluations >= cap || (t1 - t0).abs() <= min_step {
            return Err(Error::RefinementCap { cap, parameter: t0 });
        }
        let tm = 0.5 * (t0 + t1);
        let vm = checked(tm, f(tm))?;
        evaluations += 1;
        let full = arg_step(v0, v1);
        let (s0, s1) = (arg_step(v0, vm), arg_step(vm, v1));
        if full.abs() < FRAC_PI_2 && s0.abs() < FRAC_PI_2 && s1.abs() < FRAC_PI_2 && (s0 + s1 - full).abs() < 1e-9 {
            pending.pop();
            let lifted = out.unwrapped_args.last().unwrap() + s0;
            out.parameters.extend([tm, t1]);
            out.values.extend([vm, v1]);
            out.unwrapped_args.extend([lifted, lifted + s1]);
        } else {
            pending.push((tm, vm));
        }
    }
    Ok(out)
}

/// Round `x` to the nearest integer, refusing values farther than 0.2 from it.
pub fn round_winding(x: f64) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() < 0.2 {
        Ok(r as i64)
    } else {
        Err(Error::NonInteger(x))
    }
}

/// Winding number about 0 of the closed loop `theta -> f(theta)`, `theta` in `[0, 2pi]`.
pub fn winding_number(f: impl FnMut(f64) -> Complex64, refinement_cap: usize) -> Result<i64> {
    winding_number_sampled(f, refinement_cap).map(|(w, _)| w)
}

/// Winding number together with the sample it was read from.
pub fn winding_number_sampled(f: impl FnMut(f64) -> Complex64, refinement_cap: usize) -> Result<(i64, LoopSample)> {
    let s = sample_path(f, 0.0, TAU, refinement_cap)?;
    let w = round_winding(s.total_change() / TAU)?;
    Ok((w, s))
}

/// Winding number of a closed polygon given by its vertices (the last vertex joins
/// the first). Every edge must turn by less than `pi/2`; nothing is refined.
pub fn winding_of_polygon(values: &[Complex64]) -> Result<i64> {
    if values.is_empty() {
        return Err(Error::InvalidInput("empty loop".into()));
    }
    let mut total = 0.0;
    for k in 0..values.len() {
        let (v0, v1) = (values[k], values[(k + 1) % values.len()]);
        checked(k as f64, v0)?;
        let step = arg_step(v0, v1);
        if step.abs() >= FRAC_PI_2 {
            return Err(Error::Precondition(format!("loop sampled too coarsely at vertex {k}")));
        }
        total += step;
    }
    round_winding(total / TAU)
}

/// Half-turn count of an open path whose endpoint values are real multiples of
/// each other: net argument change divided by `pi`.
pub fn half_turns(f: impl FnMut(f64) -> Complex64, a: f64, b: f64, cap: usize) -> Result<(i64, LoopSample)> {
    half_turns_with_breaks(f, a, b, &[], cap)
}

pub fn half_turns_with_breaks(
    f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    breaks: &[f64],
    cap: usize,
) -> Result<(i64, LoopSample)> {
    let s = sample_path_with_breaks(f, a, b, breaks, cap)?;
    let j = round_winding(s.total_change() / PI)?;
    Ok((j, s))
}
