//! The case `(m, n) = (2, 1)` over R: pairs without a common root, classified by
//! the degree of their restriction to the real projective line.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{int, QPoly};
use crate::harness::random::{random_monic, trial_rng};
use crate::mapdeg::rp1_degree;
use crate::nonres::{require_member, SystemTuple};

/// Attempts per census sample before the sample is given up.
const CENSUS_ATTEMPTS: usize = 100;

fn real_pair(t: &SystemTuple) -> Result<(&QPoly, &QPoly)> {
    if t.m() != 2 || t.n() != 1 {
        return Err(Error::Precondition(format!("expected (m, n) = (2, 1), got ({}, {})", t.m(), t.n())));
    }
    let p = t.real_polys().ok_or_else(|| Error::Precondition("expected real coefficients".into()))?;
    if t.degree().is_none() {
        return Err(Error::Precondition("expected equal degrees".into()));
    }
    Ok((&p[0], &p[1]))
}

/// The component label `j` of a member: the real-axis degree of `[f_1 : f_2]`.
pub fn component_of_21(t: &SystemTuple) -> Result<i64> {
    let (f1, f2) = real_pair(t)?;
    require_member(t)?;
    rp1_degree(f1, f2)
}

/// An explicit member with label `j`.
///
/// `|j|` interlacing linear pairs with roots `1 < 2 < 3 < ...` carry the degree;
/// the remaining `d - |j|` is filled by powers of `z^2 + 1` and `z^2 + 2`, which
/// have no real root and contribute nothing. For negative `j` the interlacing
/// order is reversed.
pub fn representative_21(d: usize, j: i64) -> Result<SystemTuple> {
    let a = j.unsigned_abs() as usize;
    if d == 0 || a > d || (d - a) % 2 == 1 {
        return Err(Error::Precondition(format!("no component with d = {d}, j = {j}")));
    }
    let odd: Vec<_> = (1..=a as i64).map(|k| int(2 * k - 1)).collect();
    let even: Vec<_> = (1..=a as i64).map(|k| int(2 * k)).collect();
    let (g, h) = if j >= 0 {
        (QPoly::from_roots(odd.iter()), QPoly::from_roots(even.iter()))
    } else {
        (QPoly::from_roots(even.iter()), QPoly::from_roots(odd.iter()))
    };
    let c = (d - a) / 2;
    let f1 = &g * &QPoly::from_ints(&[1, 0, 1]).pow(c);
    let f2 = &h * &QPoly::from_ints(&[2, 0, 1]).pow(c);
    SystemTuple::new_real(vec![f1, f2], 1)
}

/// The legal labels `-d, -d + 2, ..., d`.
pub fn legal_labels_21(d: usize) -> Vec<i64> {
    (0..=d).map(|k| d as i64 - 2 * k as i64).rev().collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Census {
    /// Label to number of samples carrying it.
    pub counts: BTreeMap<i64, usize>,
    /// Random draws rejected because they were not members.
    pub rejected: usize,
    /// Samples for which no member was found or the label computation failed.
    pub failed: usize,
}

impl Census {
    pub fn support(&self) -> Vec<i64> {
        self.counts.keys().copied().collect()
    }

    pub(crate) fn merge(mut self, other: Census) -> Census {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.rejected += other.rejected;
        self.failed += other.failed;
        self
    }
}

/// Draw `samples` random members (monic pairs with coefficients of bounded height,
/// rejection sampled) and tally their labels.
pub fn census_21(d: usize, samples: usize, seed: u64) -> Result<Census> {
    if d == 0 || samples == 0 {
        return Err(Error::Precondition("census needs d >= 1 and samples >= 1".into()));
    }
    let parts: Vec<Census> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut c = Census::default();
            for _ in 0..CENSUS_ATTEMPTS {
                let t = SystemTuple::new_real(vec![random_monic(d, &mut rng), random_monic(d, &mut rng)], 1)
                    .expect("monic of positive degree");
                match component_of_21(&t) {
                    Ok(j) => {
                        c.counts.insert(j, 1);
                        return c;
                    }
                    Err(Error::NotMember(_)) => c.rejected += 1,
                    Err(_) => break,
                }
            }
            c.failed += 1;
            c
        })
        .collect();
    Ok(parts.into_iter().fold(Census::default(), Census::merge))
}
