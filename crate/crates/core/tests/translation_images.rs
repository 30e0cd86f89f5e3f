mod common;

use common::*;
use derivimage_core::bernoulli::BernoulliCache;
use derivimage_core::ederiv::generic_member;
use derivimage_core::translation::{
    conjugate_by_scaling, difference_operator, quantum_derivation, QuadraticIdealSpec,
    RootedIdeal, TranslationDelta,
};
use derivimage_core::{int, ImageShape, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |c| !c.is_zero())
}

fn quadratic(a: &Rational) -> Polynomial {
    Polynomial::new(vec![int(0), -a.clone(), int(1)])
}

fn oracle_member(c: &Rational, u: &Polynomial, f: &Polynomial) -> bool {
    let bound = (f.degree().unwrap_or(0) as i64 + 1 - u.degree().unwrap() as i64).max(0);
    generic_member(&Polynomial::shift(c), u, f, bound).unwrap().is_some()
}

/// `E_n` from `Σ_{k=0}^{n} C(n+1, k) E_k = β^n`, `E_0 = 1`.
fn e_recurrence(beta: &Rational, n: usize) -> Vec<Rational> {
    let mut e: Vec<Rational> = Vec::new();
    let mut beta_pow = Rational::one();
    for m in 0..=n {
        let mut binom = BigInt::one();
        let mut s = Rational::zero();
        for (k, ek) in e.iter().enumerate() {
            s += ek * &binom;
            binom = binom * (m + 1 - k) / (k + 1);
        }
        e.push((&beta_pow - s) / BigInt::from(m + 1));
        beta_pow *= beta;
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn monomial_reduction_confirmed_by_solver(c in nonzero_rat(), a in small_rat(), n in 0usize..=12) {
        let delta = TranslationDelta::new(c.clone()).unwrap();
        let spec = QuadraticIdealSpec::new(a.clone(), &delta);
        let mut cache = BernoulliCache::new();
        let dn = cache.d_poly(n).eval(&(&a / &c));
        let diff = &Polynomial::monomial(int(1), n) - &Polynomial::constant(dn * num_traits::pow(c.clone(), n));
        prop_assert!(oracle_member(&c, &quadratic(&a), &diff));
        prop_assert!(delta.quadratic_member(&spec, &diff, &mut cache));
    }

    #[test]
    fn criterion_agrees_with_solver(c in nonzero_rat(), a in small_rat(), f in poly_up_to(10, 3)) {
        let delta = TranslationDelta::new(c.clone()).unwrap();
        let spec = QuadraticIdealSpec::new(a.clone(), &delta);
        let mut cache = BernoulliCache::new();
        prop_assert_eq!(
            delta.quadratic_member(&spec, &f, &mut cache),
            oracle_member(&c, &quadratic(&a), &f)
        );
    }

    #[test]
    fn d_values_satisfy_e_recurrence(beta in small_rat()) {
        let mut cache = BernoulliCache::new();
        prop_assert_eq!(cache.d_values(&beta, 20), e_recurrence(&beta, 20));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unit_ratio_images_are_principal(c in nonzero_rat(), f in poly_up_to(10, 3)) {
        let delta = TranslationDelta::new(c.clone()).unwrap();
        let mut cache = BernoulliCache::new();
        for a in [c.clone(), -c.clone()] {
            let spec = QuadraticIdealSpec::new(a.clone(), &delta);
            let ImageShape::PrincipalIdeal(gen) = delta.quadratic_shape(&spec) else {
                panic!("expected a principal image for a = {a}");
            };
            let by_shape = gen.divides(&f);
            prop_assert_eq!(delta.quadratic_member(&spec, &f, &mut cache), by_shape);
            prop_assert_eq!(oracle_member(&c, &quadratic(&a), &f), by_shape);
        }
    }

    #[test]
    fn preimage_lies_in_ideal(c in nonzero_rat(), a in small_rat(), f in rat_poly_up_to(8)) {
        let delta = TranslationDelta::new(c).unwrap();
        let g = delta.preimage_full(&a, &f);
        prop_assert_eq!(delta.apply(&g), f);
        prop_assert!(Polynomial::linear_root(&a).divides(&g));
    }

    #[test]
    fn rooted_membership_agrees_with_solver(
        c in nonzero_rat(),
        roots in prop::collection::vec(-2i64..=2, 2..=3),
        lc in nonzero_rat(),
        g in poly_up_to(3, 2),
        noise in poly_up_to(4, 2),
    ) {
        let roots: Vec<Rational> = roots.into_iter().map(int).collect();
        let Ok(ideal) = RootedIdeal::new(roots, lc) else {
            return Ok(());
        };
        let delta = TranslationDelta::new(c.clone()).unwrap();
        let u = ideal.generator();
        let mut cache = BernoulliCache::new();
        let image = delta.apply(&(&u * &g));
        prop_assert!(delta.rational_rooted_member(&ideal, &image, &mut cache));
        let f = &image + &noise;
        prop_assert_eq!(
            delta.rational_rooted_member(&ideal, &f, &mut cache),
            oracle_member(&c, &u, &f)
        );
    }

    #[test]
    fn quantum_derivation_image_matches(c in nonzero_rat(), g in poly_up_to(4, 3), f in poly_up_to(6, 3)) {
        // D_h = -(1/h) δ, so D_h(I) and δI coincide as sets
        let delta = TranslationDelta::new(c.clone()).unwrap();
        let u = p(&[0, 0, 1]);
        let ug = &u * &g;
        prop_assert_eq!(quantum_derivation(&c, &ug).unwrap(), delta.as_quantum_derivation(&ug));
        let scaled = f.scale(&-c.clone());
        prop_assert_eq!(oracle_member(&c, &u, &f), oracle_member(&c, &u, &scaled));
    }
}

#[test]
fn conjugation_by_scaling_on_monomials() {
    for c in [int(1), int(-3), Rational::new(2.into(), 7.into())] {
        let delta = TranslationDelta::new(c).unwrap();
        for n in 0..=32usize {
            let xn = Polynomial::monomial(int(1), n);
            assert_eq!(conjugate_by_scaling(&delta, &xn), -difference_operator(&xn), "n = {n}");
        }
    }
}

#[test]
fn difference_of_bernoulli_polynomials() {
    let mut cache = BernoulliCache::new();
    for n in 1..=20usize {
        let expected = Polynomial::monomial(Rational::from_integer(n.into()), n - 1);
        assert_eq!(difference_operator(&cache.poly(n)), expected);
    }
}

#[test]
fn repeated_root_constants_excluded() {
    let delta = TranslationDelta::new(int(1)).unwrap();
    let ideal = RootedIdeal::new(vec![int(0), int(0)], int(1)).unwrap();
    let mut cache = BernoulliCache::new();
    assert!(!delta.rational_rooted_member(&ideal, &Polynomial::one(), &mut cache));
    assert!(RootedIdeal::new(vec![int(0)], int(1)).is_err());
}
