mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{numeric_max_common_multiplicity, planted, planted_tuple, small_rational};
use polyspace::exactalg::{GPoly, GaussianRational, QPoly};
use polyspace::harness::random::{random_monic, random_monic_complex, trial_rng};
use polyspace::harness::Case;
use polyspace::json::{tuple_from_json, tuple_from_str, tuple_to_json};
use polyspace::nonres::{
    conjugate_tuple, is_member, is_member_jet, jet, jet_vanishes_at, max_common_multiplicity, stability_dimension,
    FieldTag, SystemTuple,
};

fn field_of(bit: bool) -> FieldTag {
    if bit {
        FieldTag::Complex
    } else {
        FieldTag::Real
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_routes_agree(seed in any::<u64>(), case_ix in 0usize..5, d in 1usize..=8, complex in any::<bool>()) {
        let case = Case::ALL[case_ix];
        let mut rng = trial_rng(seed, 0);
        let t = planted_tuple(case, d, field_of(complex), &mut rng);
        let exact = max_common_multiplicity(&t);
        prop_assert_eq!(numeric_max_common_multiplicity(&t), exact, "{:?}", t);
        prop_assert_eq!(is_member(&t), exact < t.n());
        prop_assert_eq!(is_member_jet(&t), is_member(&t));
    }

    // all n jet components vanish at alpha exactly when (z - alpha)^n divides f
    #[test]
    fn jet_lemma(seed in any::<u64>(), k in 0usize..=4, n in 1usize..=4, extra in 0usize..=4) {
        let mut rng = trial_rng(seed, 1);
        let alpha = small_rational(&mut rng);
        let mut g = random_monic(extra, &mut rng);
        while g.eval(&alpha) == polyspace::exactalg::int(0) {
            g = random_monic(extra, &mut rng);
        }
        let f = planted(&alpha, k, g);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(jet_vanishes_at(&f, n, &alpha), k >= n);
        let comps = jet(&f, n).components;
        prop_assert_eq!(comps.len(), n);
        prop_assert_eq!(&comps[0], &f);
    }

    #[test]
    fn membership_is_conjugation_invariant(seed in any::<u64>(), case_ix in 0usize..5, d in 1usize..=6) {
        let mut rng = trial_rng(seed, 2);
        let t = planted_tuple(Case::ALL[case_ix], d, FieldTag::Complex, &mut rng);
        let c = conjugate_tuple(&t);
        prop_assert_eq!(is_member(&t), is_member(&c));
        prop_assert_eq!(max_common_multiplicity(&t), max_common_multiplicity(&c));
        prop_assert_eq!(conjugate_tuple(&c), t);
    }

    #[test]
    fn fixed_points_are_real_tuples(seed in any::<u64>(), m in 1usize..=3, d in 1usize..=5, real in any::<bool>()) {
        let n = if m == 1 { 2 } else { 1 };
        let mut rng = trial_rng(seed, 3);
        let polys: Vec<GPoly> = (0..m)
            .map(|_| if real { random_monic(d, &mut rng).to_gaussian() } else { random_monic_complex(d, &mut rng) })
            .collect();
        let all_real = polys.iter().all(|p| p.is_real());
        let t = SystemTuple::new_complex(polys, n).unwrap();
        prop_assert_eq!(conjugate_tuple(&t) == t, all_real);
        prop_assert_eq!(t.has_real_coefficients(), all_real);
        if all_real {
            let r = t.to_real().unwrap();
            prop_assert_eq!(conjugate_tuple(&r), r);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), case_ix in 0usize..5, d in 1usize..=6, complex in any::<bool>()) {
        let mut rng = trial_rng(seed, 4);
        let t = planted_tuple(Case::ALL[case_ix], d, field_of(complex), &mut rng);
        let v = tuple_to_json(&t);
        prop_assert_eq!(tuple_from_json(&v).unwrap(), t.clone());
        prop_assert_eq!(tuple_from_str(&v.to_string()).unwrap(), t);
    }
}

#[test]
fn witness_examples() {
    let q = common::q;
    // z^2 (z - 1) and z^2 (z + 1) share z^2
    let t = SystemTuple::new_real(vec![q(&[0, 0, -1, 1]), q(&[0, 0, 1, 1])], 1).unwrap();
    assert_eq!(max_common_multiplicity(&t), 2);
    assert_eq!(numeric_max_common_multiplicity(&t), 2);
    for n in 1..=3 {
        let tn = t.with_n(n).unwrap();
        assert_eq!(is_member(&tn), n > 2);
    }
    // the all-equal linear triple has every root in common
    let diag = SystemTuple::new_real(vec![q(&[0, 1]), q(&[0, 1]), q(&[0, 1])], 1).unwrap();
    assert!(!is_member(&diag));
    // Gaussian common root i of (z - i)(z - 2) and (z - i)(z + 3)
    let i = GaussianRational::i();
    let a = GPoly::from_roots([i.clone(), GaussianRational::real(polyspace::exactalg::int(2))].iter());
    let b = GPoly::from_roots([i, GaussianRational::real(polyspace::exactalg::int(-3))].iter());
    let tc = SystemTuple::new_complex(vec![a, b], 1).unwrap();
    assert!(!is_member(&tc));
    assert!(!is_member_jet(&tc));
    assert!(is_member(&conjugate_tuple(&tc)) == is_member(&tc));
}

#[test]
fn stability_dimension_table() {
    assert_eq!(stability_dimension(7, 3, 1).unwrap(), 7);
    // (mn - 2)(floor(d/n) + 1) - 1
    for (d, m, n) in [(5u64, 2u64, 2u64), (6, 1, 3), (4, 3, 1), (9, 1, 4), (8, 2, 3)] {
        assert_eq!(stability_dimension(d, m, n).unwrap(), (m * n - 2) * (d / n + 1) - 1);
    }
    assert!(stability_dimension(5, 2, 1).is_err());
    assert!(stability_dimension(5, 1, 2).is_err());
}

#[test]
fn rejects_malformed_tuples() {
    let q = common::q;
    assert!(SystemTuple::new_real(vec![], 1).is_err());
    assert!(SystemTuple::new_real(vec![q(&[1, 2])], 1).is_err());
    assert!(SystemTuple::new_real(vec![q(&[1, 1])], 0).is_err());
    assert!(SystemTuple::new_real(vec![q(&[1]), q(&[0, 1])], 1).is_err());
    let mut rng = trial_rng(0, 0);
    let f: QPoly = random_monic(rng.gen_range(1..4), &mut rng);
    assert!(SystemTuple::new_real(vec![f.clone(), f.scale(&polyspace::exactalg::int(2))], 1).is_err());
}
