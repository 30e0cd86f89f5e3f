use derivimage_core::mathieu::{
    classify_exponent_set, has_multiple_ray, ms_check_truncated, radical_scan, ExponentSet,
    MsClause,
};
use derivimage_core::{int, Polynomial, Rational};
use proptest::prelude::*;

fn exponent_set() -> impl Strategy<Value = ExponentSet> {
    (1u64..=12, 0u64..=15)
        .prop_flat_map(|(m, t)| {
            (
                prop::collection::btree_set(0u64..30, 0..5),
                Just(m),
                prop::collection::btree_set(0..m, 0..=m as usize),
                Just(t),
            )
        })
        .prop_map(|(e, m, r, t)| ExponentSet::new(e, m, r, t).unwrap())
}

fn monomial(n: u64) -> Polynomial {
    Polynomial::monomial(int(1), n as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_idempotent(s in exponent_set()) {
        let again = ExponentSet::new(
            s.exceptional().iter().copied(),
            s.modulus(),
            s.residues().iter().copied(),
            s.threshold(),
        ).unwrap();
        prop_assert_eq!(&again, &s);
        for &e in s.exceptional() {
            prop_assert!(e < s.threshold() || !s.residues().contains(&(e % s.modulus())));
        }
    }

    #[test]
    fn membership_matches_definition(e in prop::collection::btree_set(0u64..30, 0..5), m in 1u64..=12, r in prop::collection::btree_set(0u64..24, 0..6), t in 0u64..=15) {
        let s = ExponentSet::new(e.clone(), m, r.clone(), t).unwrap();
        for n in 0..=(10 * m + t) {
            let direct = e.contains(&n) || (n >= t && r.iter().any(|x| x % m == n % m));
            prop_assert_eq!(s.contains(n), direct, "n = {}", n);
        }
    }

    #[test]
    fn ray_is_least_and_genuine(s in exponent_set()) {
        let limit = 4 * (s.threshold() + s.modulus()) + 40;
        let brute = (1..=s.threshold() + s.modulus())
            .find(|&d| (1..).map(|k| k * d).take_while(|&n| n <= limit + d * s.modulus()).all(|n| s.contains(n)));
        prop_assert_eq!(has_multiple_ray(&s), brute);
    }

    #[test]
    fn verdict_is_realized_by_truncated_check(s in exponent_set()) {
        let verdict = classify_exponent_set(&s);
        if verdict.clause == MsClause::NotMS {
            let d = verdict.witness.unwrap();
            let member = |f: &Polynomial| s.spans(f);
            let report = ms_check_truncated(&member, &[monomial(d)], 12, 6).unwrap();
            // a miss at some k > 6 is invisible to the truncated check
            let visible = (0..=6).any(|k| !s.contains(12 * d + k));
            prop_assert_eq!(report.has_violation(), visible);
        }
    }
}

#[test]
fn scan_controls() {
    let coeffs: Vec<Rational> = (-2..=2).map(int).collect();
    let u = Polynomial::from_ints(&[-1, 0, 1]);
    let ideal = |f: &Polynomial| u.divides(f);
    let report = radical_scan(&ideal, 2, &coeffs, 6).unwrap();
    assert!(report.survivors.contains(&u));
    assert!(report.survivors.iter().all(|f| u.divides(f)));
}
