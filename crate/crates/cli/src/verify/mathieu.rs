use derivimage_core::derivimage::lambda_member;
use derivimage_core::mathieu::{
    classify_exponent_set, classify_homogeneous, has_multiple_ray, ms_check_truncated, ExponentSet,
    MsClause,
};
use derivimage_core::{Polynomial, Rational};
use num_traits::One;
use rand::Rng;

use super::{ensure, gate, Case, Ctx, Outcome};
use crate::sampling::CaseRng;
use crate::scans;

pub const CHECK_WINDOW: u32 = 12;
pub const CHECK_MULTIPLIER_DEGREE: usize = 6;

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("mathieu.canonical-form", canonical_form),
        gate("mathieu.anchor-sets", anchor_sets),
        gate("mathieu.classifier-vs-truncated-check", classifier_vs_truncated),
        gate("mathieu.ray-iff-no-violation", ray_iff_no_violation),
        gate("mathieu.truncated-check-examples", truncated_examples),
        gate("mathieu.ideal-negative-control", negative_control),
    ]
}

fn set(exceptional: &[u64], modulus: u64, residues: &[u64], threshold: u64) -> ExponentSet {
    ExponentSet::new(exceptional.iter().copied(), modulus, residues.iter().copied(), threshold)
        .expect("nonzero modulus")
}

/// Thirty exponent sets covering every classifier branch.
pub fn curated_exponent_sets() -> Vec<(&'static str, ExponentSet)> {
    let pos = |m: u64, r: &[u64]| ExponentSet::periodic_positive(m, r.iter().copied()).expect("m > 0");
    vec![
        ("odd", set(&[], 2, &[1], 0)),
        ("at-least-2", ExponentSet::from_threshold(2)),
        ("multiples-of-3", pos(3, &[0])),
        ("one-and-multiples-of-5-beyond-10", set(&[1], 5, &[0], 11)),
        ("finite-1-2-5", ExponentSet::finite([1, 2, 5])),
        ("finite-0-1-3", ExponentSet::finite([0, 1, 3])),
        ("finite-0", ExponentSet::finite([0])),
        ("everything", ExponentSet::from_threshold(0)),
        ("positive", ExponentSet::from_threshold(1)),
        ("at-least-5", ExponentSet::from_threshold(5)),
        ("zero-and-at-least-3", set(&[0], 1, &[0], 3)),
        ("positive-even", pos(2, &[0])),
        ("not-multiple-of-3", pos(3, &[1, 2])),
        ("not-multiple-of-4", pos(4, &[1, 2, 3])),
        ("one-mod-4", pos(4, &[1])),
        ("zero-mod-4", pos(4, &[0])),
        ("zero-or-three-mod-6", set(&[], 6, &[0, 3], 0)),
        ("even-and-one", set(&[1], 2, &[0], 0)),
        ("not-multiple-of-6", pos(6, &[1, 2, 3, 4, 5])),
        ("zero-mod-12", pos(12, &[0])),
        ("units-mod-12", pos(12, &[1, 5, 7, 11])),
        ("not-four-mod-5", pos(5, &[0, 1, 2, 3])),
        ("empty", ExponentSet::finite([])),
        ("finite-3-4-10", ExponentSet::finite([3, 4, 10])),
        ("two-and-at-least-7", set(&[2], 1, &[0], 7)),
        ("one-two-and-odd-beyond-4", set(&[1, 2], 2, &[1], 5)),
        ("three-and-multiples-of-3-beyond-6", set(&[3], 3, &[0], 7)),
        ("zero-or-two-mod-3", set(&[], 3, &[0, 2], 0)),
        ("one-or-two-mod-4", pos(4, &[1, 2])),
        ("zero-and-odd", set(&[0], 2, &[1], 0)),
    ]
}

fn monomial(e: u64) -> Polynomial {
    Polynomial::monomial(Rational::one(), e as usize)
}

fn canonical_form(_: &Ctx, rng: &mut CaseRng) -> Outcome {
    for _ in 0..200 {
        let m = rng.gen_range(1..=8u64);
        let t = rng.gen_range(0..=12u64);
        let residues: Vec<u64> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..3 * m)).collect();
        let exceptional: Vec<u64> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..30)).collect();
        let s = set(&exceptional, m, &residues, t);
        let again = ExponentSet::new(
            s.exceptional().iter().copied(),
            s.modulus(),
            s.residues().iter().copied(),
            s.threshold(),
        )
        .map_err(|e| e.to_string())?;
        ensure(again == s, || format!("{s:?} not idempotent"))?;
        for n in 0..=10 * m + t {
            let direct = exceptional.contains(&n) || (n >= t && residues.iter().any(|r| r % m == n % m));
            ensure(s.contains(n) == direct, || format!("{s:?}: membership of {n}"))?;
        }
    }
    Ok("200 random sets: canonical form idempotent, membership matches the definition".into())
}

fn anchor_sets(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let sets = curated_exponent_sets();
    let get = |name: &str| &sets.iter().find(|(n, _)| *n == name).expect("curated").1;
    let odd = classify_homogeneous(get("odd"), false, false).map_err(|e| e.to_string())?;
    ensure(odd.clause == MsClause::SparseNoRay, || format!("odd: {odd:?}"))?;
    let cofinite = classify_homogeneous(get("at-least-2"), false, false).map_err(|e| e.to_string())?;
    ensure(cofinite.clause == MsClause::CofiniteNoOne, || format!("n >= 2: {cofinite:?}"))?;
    let threes = classify_homogeneous(get("multiples-of-3"), false, false).map_err(|e| e.to_string())?;
    ensure(threes.clause == MsClause::NotMS && threes.witness == Some(3), || {
        format!("multiples of 3: {threes:?}")
    })?;
    ensure(has_multiple_ray(get("odd")).is_none(), || "odd set has a ray".into())?;
    ensure(classify_homogeneous(get("odd"), true, false).is_err(), || "flags not checked".into())?;
    Ok("odd: MS; n >= 2: MS; multiples of 3: not MS with d = 3".into())
}

fn truncated_report(s: &ExponentSet) -> Result<(Vec<Polynomial>, derivimage_core::mathieu::TruncatedMsReport), String> {
    let mut candidates: Vec<Polynomial> = (0..=24).map(monomial).collect();
    if let Some(d) = classify_exponent_set(s).witness {
        if d > 24 {
            candidates.push(monomial(d));
        }
    }
    let report = ms_check_truncated(&|f| s.spans(f), &candidates, CHECK_WINDOW, CHECK_MULTIPLIER_DEGREE)
        .map_err(|e| e.to_string())?;
    Ok((candidates, report))
}

fn classifier_vs_truncated(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let sets = curated_exponent_sets();
    let mut not_ms = 0;
    for (name, s) in &sets {
        let verdict = classify_exponent_set(s);
        let (_, report) = truncated_report(s)?;
        if verdict.clause.is_ms() {
            ensure(!report.has_violation(), || format!("{name}: {verdict:?} but a violation was found"))?;
        } else {
            let d = verdict.witness.ok_or_else(|| format!("{name}: NotMS without witness"))?;
            ensure(report.violation_for(&monomial(d)), || format!("{name}: witness x^{d} not realized"))?;
            not_ms += 1;
        }
    }
    Ok(format!("{} sets, {not_ms} not MS, window {CHECK_WINDOW}, multiplier degree {CHECK_MULTIPLIER_DEGREE}", sets.len()))
}

/// On sets without 0: a ray of multiples exists iff the truncated check flags a violation.
fn ray_iff_no_violation(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut checked = 0;
    for (name, s) in curated_exponent_sets() {
        if s.contains(0) || s.is_finite() || s.is_cofinite() {
            continue;
        }
        let (_, report) = truncated_report(&s)?;
        let ray = has_multiple_ray(&s);
        ensure(ray.is_some() == report.has_violation(), || format!("{name}: ray {ray:?}"))?;
        if let Some(d) = ray {
            ensure((1..=200).all(|k| s.contains(k * d)), || format!("{name}: {d} is not a ray"))?;
        } else {
            for d in 1..=60u64 {
                ensure(!(1..=200).all(|k| s.contains(k * d)), || format!("{name}: missed ray {d}"))?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} infinite, non-cofinite sets without 0"))
}

fn truncated_examples(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let x = Polynomial::x();
    let in_ideal = |f: &Polynomial| x.divides(f);
    let r = ms_check_truncated(&in_ideal, std::slice::from_ref(&x), CHECK_WINDOW, CHECK_MULTIPLIER_DEGREE)
        .map_err(|e| e.to_string())?;
    ensure(!r.has_violation() && r.candidates[0].powers_in_v, || "ideal (x) flagged".into())?;

    let v = Polynomial::from_ints(&[-1, 0, 1]);
    let in_image = |f: &Polynomial| lambda_member(&x, &v, f).expect("nonzero operator").is_some();
    let x2 = x.pow(2);
    let r = ms_check_truncated(&in_image, std::slice::from_ref(&x2), CHECK_WINDOW, 1).map_err(|e| e.to_string())?;
    ensure(r.violation_for(&x2) && r.candidates[0].violations.contains(&1), || {
        format!("x d/dx on (x^2 - 1): {r:?}")
    })?;
    Ok("(x) with a = x: no violation; x d/dx on (x^2 - 1) with a = x^2: violation at b = x".into())
}

fn negative_control(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let r = scans::run_builtin(scans::Builtin::IdealX, 3, &scans::default_coeffs(), ctx.limits.window, ctx.cache);
    ensure(r.survivors.contains(&Polynomial::x()), || r.summary())?;
    Ok(r.summary())
}
