//! Exact rational and Gaussian-rational polynomial arithmetic with certified real
//! root isolation, plus a floating-point complex root finder.

pub mod bound;
pub mod gcd;
pub mod numeric;
pub mod poly;
pub mod rational;
pub mod sqfree;
pub mod sturm;

pub use bound::cauchy_root_bound;
pub use gcd::{discriminant, gcd_exact, gcd_many, resultant};
pub use numeric::{complex_roots_numeric, complex_roots_numeric_seeded, default_cluster_tol, RootCluster};
pub use poly::{GPoly, Poly, QPoly};
pub use rational::{
    format_rational, int, parse_rational, rat, rational_from_f64, rational_to_f64, simplest_between, Coeff,
    GaussianRational, Rational,
};
pub use sqfree::{squarefree_decomposition, squarefree_part};
pub use sturm::{cauchy_index, count_distinct_real_roots, real_roots_exact, RealRoot, SturmChain};
