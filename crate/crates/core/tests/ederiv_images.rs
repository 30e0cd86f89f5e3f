mod common;

use common::*;
use derivimage_core::ederiv::{
    classify_case, decompose_uw, descend_in_w, ell, generic_member, generic_member_default,
    im_delta_member, normalize_affine, CaseTag, EDerivation,
};
use derivimage_core::{int, Polynomial, Rational};
use proptest::prelude::*;

fn w_strategy() -> impl Strategy<Value = Polynomial> {
    prop_oneof![
        small_rat().prop_map(Polynomial::constant),
        small_rat().prop_map(|c| Polynomial::shift(&c)),
        (small_rat(), small_rat()).prop_map(|(a, b)| Polynomial::new(vec![b, a])),
        prop::sample::select(vec![p(&[0, 0, 1]), p(&[0, 1, 1]), p(&[-1, 0, 0, 2]), p(&[1, 0, -1])]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twisted_leibniz(w in w_strategy(), f in rat_poly_up_to(4), g in rat_poly_up_to(4)) {
        let d = EDerivation::new(w);
        let (df, dg) = (d.apply(&f), d.apply(&g));
        let rhs = &(&(&df * &g) + &(&f * &dg)) - &(&df * &dg);
        prop_assert_eq!(d.apply(&(&f * &g)), rhs);
    }

    #[test]
    fn affine_normalization(a in small_rat(), b in small_rat()) {
        prop_assume!(a != int(0) && a != int(1));
        let s = normalize_affine(&a, &b).unwrap();
        // ψ φ ψ^{-1} on x: x ↦ x - s ↦ w(x) - s ↦ w(x + s) - s
        let w = Polynomial::new(vec![b, a.clone()]);
        let conj = &w.compose(&Polynomial::shift(&s)) - &Polynomial::constant(s);
        prop_assert_eq!(conj, Polynomial::monomial(a, 1));
    }

    #[test]
    fn decomposition_reconstructs(wi in 0usize..4, f in rat_poly_up_to(12)) {
        let w = [p(&[0, 0, 1]), p(&[1, 0, 1]), p(&[-1, 0, 0, 2]), p(&[0, 1, 1])][wi].clone();
        let d = w.degree().unwrap();
        let dec = decompose_uw(&w, &f).unwrap();
        prop_assert_eq!(&dec.f1 + &dec.utilde.compose(&w), f.clone());
        prop_assert!(dec.f1.support().all(|e| e % d != 0));
        prop_assert_eq!(dec.ell, dec.f1.degree().unwrap_or(0));
        // unique: decomposing the W-part again yields no U-part
        let again = decompose_uw(&w, &dec.utilde.compose(&w)).unwrap();
        prop_assert!(again.f1.is_zero());
        prop_assert_eq!(again.utilde, dec.utilde);
        if let Some(n) = f.degree() {
            prop_assert!(n >= dec.ell);
            if n % d != 0 {
                prop_assert_eq!(dec.ell, n);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn casewise_membership_agrees_with_solver(w in w_strategy(), f in rat_poly_up_to(6)) {
        let fast = im_delta_member(&w, &f);
        let slow = generic_member_default(&w, &Polynomial::one(), &f).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some(), "w = {}, f = {}", w, f);
        if let Some(u) = fast {
            prop_assert_eq!(EDerivation::new(w).apply(&u), f);
        }
    }

    #[test]
    fn images_of_images_are_members(w in w_strategy(), u in rat_poly_up_to(4)) {
        let f = EDerivation::new(w.clone()).apply(&u);
        prop_assert!(im_delta_member(&w, &f).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn no_three_consecutive_powers(wi in 0usize..3, f in nonzero_poly_up_to(8, 3)) {
        let w = [p(&[0, 0, 1]), p(&[0, 1, 1]), p(&[-1, 0, 0, 2])][wi].clone();
        let powers = [f.clone(), f.pow(2), f.pow(3)];
        let verdicts: Vec<bool> = powers
            .iter()
            .map(|g| {
                let fast = im_delta_member(&w, g).is_some();
                let slow = generic_member_default(&w, &Polynomial::one(), g).unwrap().is_some();
                assert_eq!(fast, slow);
                fast
            })
            .collect();
        prop_assert!(!verdicts.iter().all(|&v| v));
    }

    #[test]
    fn high_degree_members_respect_degree_bound(wi in 0usize..3, u in nonzero_poly_up_to(4, 3)) {
        let w = [p(&[0, 0, 1]), p(&[0, 1, 1]), p(&[-1, 0, 0, 2])][wi].clone();
        let d = w.degree().unwrap();
        let f = EDerivation::new(w.clone()).apply(&u);
        prop_assume!(!f.is_zero());
        let dec = decompose_uw(&w, &f).unwrap();
        if !dec.f1.is_zero() {
            prop_assert!(f.degree().unwrap() >= d * dec.ell);
            prop_assert!(dec.ell >= 1);
        } else {
            let (ft, ut) = descend_in_w(&w, &f, &u).unwrap().expect("f lies in Q[w]");
            prop_assert_eq!(EDerivation::new(w.clone()).apply(&ut), ft.clone());
            prop_assert!(im_delta_member(&w, &ft).is_some());
        }
    }
}

#[test]
fn scaling_by_two_on_x2_minus_1_is_not_mathieu() {
    let w = p(&[0, 2]);
    let u = p(&[-1, 0, 1]);
    let x = Polynomial::x();
    for m in 1..=20u32 {
        let even = x.pow(2 * m);
        let odd = x.pow(2 * m + 1);
        assert!(generic_member_default(&w, &u, &even).unwrap().is_some(), "m = {m}");
        assert!(generic_member_default(&w, &u, &odd).unwrap().is_none(), "m = {m}");
    }
    assert_eq!(generic_member(&w, &u, &p(&[0, 0, -3]), 3).unwrap(), Some(Polynomial::one()));
}

#[test]
fn constant_and_scaling_images_are_ideals() {
    for c in [-2i64, 0, 5] {
        let w = Polynomial::constant(int(c));
        for f in [p(&[1]), p(&[-c, 1]), p(&[c * c, 0, -1]), p(&[3, 2, 1])] {
            assert_eq!(
                im_delta_member(&w, &f).is_some(),
                Polynomial::linear_root(&int(c)).divides(&f)
            );
        }
    }
    for q in [int(2), int(-3), Rational::new(1.into(), 2.into())] {
        let w = Polynomial::monomial(q, 1);
        assert!(im_delta_member(&w, &p(&[0, 4, 0, 1])).is_some());
        assert!(im_delta_member(&w, &p(&[1, 1])).is_none());
    }
}

#[test]
fn case_tags() {
    assert_eq!(classify_case(&p(&[3])), CaseTag::ConstW(int(3)));
    assert_eq!(classify_case(&p(&[-2, 1])), CaseTag::Translation(int(-2)));
    assert_eq!(
        classify_case(&p(&[1, 2])),
        CaseTag::Scaling { q: int(2), shift: int(-1) }
    );
    assert_eq!(classify_case(&p(&[0, 0, 0, 1])), CaseTag::HighDegree(3));
    assert_eq!(ell(&p(&[0, 0, 1]), &p(&[0, 1, 0, 0, 1])).unwrap(), 1);
}
