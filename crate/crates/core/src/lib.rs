//! Spaces of non-resultant polynomial systems of bounded multiplicity.
//!
//! A tuple `(f_1, ..., f_m)` of monic degree-`d` polynomials belongs to
//! `Poly^{d,m}_n` when the `f_k` share no root of multiplicity `>= n`. This crate
//! tests membership exactly, evaluates the natural maps into projective space,
//! computes their degrees and winding invariants numerically, and checks the
//! component and loop invariants of the cases `(m, n) = (2, 1), (3, 1), (1, 2)`.

pub mod error;
pub mod exactalg;

pub use error::{Error, Result};
pub mod case12;
pub mod case21;
pub mod case31;
pub mod harness;
pub mod json;
pub mod mapdeg;
pub mod nonres;
pub mod stab;
