//! Random members, in-space path certification and invariant sweeps.

pub mod path;
pub mod random;
pub mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nonres::{is_member, FieldTag, SystemTuple};
use random::{random_monic, random_monic_complex, trial_rng};

pub use path::{certify_path, certify_polyline, PathInSpace, PathSample, Violation, ViolationKind};
pub use sweep::{invariant_sweep, SweepReport};

/// The shape `(m, n)` of a tuple space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    C21,
    C31,
    C12,
    C13,
    C22,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::C21, Case::C31, Case::C12, Case::C13, Case::C22];

    pub fn m(self) -> usize {
        match self {
            Case::C21 | Case::C22 => 2,
            Case::C31 => 3,
            Case::C12 | Case::C13 => 1,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Case::C21 | Case::C31 => 1,
            Case::C12 | Case::C22 => 2,
            Case::C13 => 3,
        }
    }

    pub fn of(t: &SystemTuple) -> Option<Case> {
        Case::ALL.into_iter().find(|c| c.m() == t.m() && c.n() == t.n())
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.m(), self.n())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("case: unknown case {s:?}, expected one of 21, 31, 12, 13, 22")))
    }
}

impl Serialize for Case {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Rejection sampling of a real member with coefficients of bounded height.
pub fn random_member(case: Case, d: usize, seed: u64, max_attempts: usize) -> Result<SystemTuple> {
    random_member_in(case, d, FieldTag::Real, seed, max_attempts)
}

pub fn random_member_in(case: Case, d: usize, field: FieldTag, seed: u64, max_attempts: usize) -> Result<SystemTuple> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let mut rng = trial_rng(seed, 0);
    for attempt in 0..max_attempts {
        let t = match field {
            FieldTag::Real => SystemTuple::new_real((0..case.m()).map(|_| random_monic(d, &mut rng)).collect(), case.n()),
            FieldTag::Complex => {
                SystemTuple::new_complex((0..case.m()).map(|_| random_monic_complex(d, &mut rng)).collect(), case.n())
            }
        }?;
        if is_member(&t) {
            return Ok(t);
        }
        if attempt + 1 == max_attempts {
            break;
        }
    }
    Err(Error::Exhausted { attempts: max_attempts, rejected: max_attempts })
}
