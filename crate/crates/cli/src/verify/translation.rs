use derivimage_core::ederiv::generic_member;
use derivimage_core::translation::{
    conjugate_by_scaling, difference_operator, quantum_derivation, QuadraticIdealSpec,
    RootedIdeal, TranslationDelta,
};
use derivimage_core::{int, ImageShape, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::{ensure, gate, report, Case, Ctx, Outcome};
use crate::sampling::{self, CaseRng};
use crate::scans;

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("translation.linear-ideal-preimage", linear_preimage),
        gate("translation.monomial-reduction-vs-solver", monomial_reduction),
        gate("translation.quadratic-criterion-vs-solver", criterion_vs_solver),
        gate("translation.d-values-recurrence", d_values_recurrence),
        gate("translation.unit-ratio-image", unit_ratio_image),
        gate("translation.negative-unit-ratio-image", negative_unit_ratio_image),
        gate("translation.rooted-ideal-vs-solver", rooted_vs_solver),
        gate("translation.quantum-derivation", quantum),
        gate("translation.scaling-conjugation", scaling_conjugation),
        gate("translation.difference-of-bernoulli", difference_of_bernoulli),
        report("translation.zero-ratio-radical-scan", zero_ratio_scan),
        report("translation.repeated-root-radical-scan", repeated_root_scan),
    ]
}

/// Exact oracle: solve `f = δ(u g)` with `deg g ≤ deg f + 1 - deg u`.
pub(crate) fn solver_member(c: &Rational, u: &Polynomial, f: &Polynomial) -> Result<bool, String> {
    let bound = (f.degree().unwrap_or(0) as i64 + 1 - u.degree().expect("nonzero") as i64).max(0);
    generic_member(&Polynomial::shift(c), u, f, bound)
        .map(|g| g.is_some())
        .map_err(|e| e.to_string())
}

fn quadratic(a: &Rational) -> Polynomial {
    Polynomial::new(vec![Rational::zero(), -a.clone(), Rational::one()])
}

fn step(rng: &mut CaseRng) -> TranslationDelta {
    TranslationDelta::new(sampling::nonzero_rational(rng, 4, 3)).expect("nonzero")
}

fn linear_preimage(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for _ in 0..ctx.limits.samples {
        let delta = step(rng);
        let a = sampling::rational(rng, 4, 3);
        let f = sampling::rational_poly(rng, ctx.limits.max_degree, 4, 3);
        let g = delta.preimage_full(&a, &f);
        ensure(delta.apply(&g) == f, || format!("c = {}, a = {a}, f = {f}", delta.c()))?;
        ensure(Polynomial::linear_root(&a).divides(&g), || format!("(x - {a}) does not divide {g}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn monomial_reduction(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut cache = ctx.cache.snapshot(14, 12);
    for _ in 0..ctx.limits.oracle_samples() {
        let delta = step(rng);
        let c = delta.c().clone();
        let a = sampling::rational(rng, 4, 3);
        let n = rng.gen_range(0..=12usize);
        let beta = &a / &c;
        let value = cache.d_poly(n).eval(&beta) * num_traits::pow(c.clone(), n);
        let diff = &Polynomial::monomial(Rational::one(), n) - &Polynomial::constant(value);
        ensure(solver_member(&c, &quadratic(&a), &diff)?, || format!("c = {c}, a = {a}, n = {n}"))?;
    }
    Ok(format!("{} samples (c, a, n <= 12)", ctx.limits.oracle_samples()))
}

fn criterion_vs_solver(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut cache = ctx.cache.snapshot(12, 10);
    let mut members = 0;
    for i in 0..ctx.limits.oracle_samples() {
        let delta = step(rng);
        let c = delta.c().clone();
        let a = sampling::rational(rng, 4, 3);
        let u = quadratic(&a);
        let f = if i % 2 == 0 {
            delta.apply(&(&u * &sampling::poly(rng, 8, -3, 3)))
        } else {
            sampling::poly(rng, 10, -3, 3)
        };
        if f.degree().is_some_and(|d| d > 10) {
            continue;
        }
        let spec = QuadraticIdealSpec::new(a.clone(), &delta);
        let fast = delta.quadratic_member(&spec, &f, &mut cache);
        ensure(fast == solver_member(&c, &u, &f)?, || format!("c = {c}, a = {a}, f = {f}"))?;
        members += fast as usize;
    }
    Ok(format!("{} samples, {members} members", ctx.limits.oracle_samples()))
}

/// `D_k(β)` against the recurrence `Σ_{k ≤ n} C(n+1, k) E_k = β^n`, `E_0 = 1`.
fn d_values_recurrence(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let n_max = 24;
    let mut cache = ctx.cache.snapshot(n_max + 2, n_max);
    for _ in 0..ctx.limits.samples / 4 {
        let beta = sampling::rational(rng, 5, 4);
        let mut e: Vec<Rational> = Vec::new();
        let mut beta_pow = Rational::one();
        for n in 0..=n_max {
            let row: Vec<BigInt> = cache.binomial_row(n + 1).to_vec();
            let s: Rational = e.iter().zip(&row).map(|(ek, b)| ek * b).sum();
            e.push((&beta_pow - s) / BigInt::from(n + 1));
            beta_pow *= &beta;
        }
        ensure(cache.d_values(&beta, n_max) == e, || format!("beta = {beta}"))?;
    }
    Ok(format!("{} values of beta, n <= {n_max}", ctx.limits.samples / 4))
}

fn ratio_image(ctx: &Ctx, rng: &mut CaseRng, sign: i64) -> Outcome {
    let mut cache = ctx.cache.snapshot(12, 10);
    for i in 0..ctx.limits.samples {
        let delta = step(rng);
        let c = delta.c().clone();
        let a = &c * int(sign);
        let spec = QuadraticIdealSpec::new(a.clone(), &delta);
        let ImageShape::PrincipalIdeal(generator) = delta.quadratic_shape(&spec) else {
            return Err(format!("a = {a}: no principal shape"));
        };
        let expected = if sign == 1 { Polynomial::x() } else { Polynomial::linear_root(&a) };
        ensure(generator == expected, || format!("generator {generator}"))?;
        let f = if i % 2 == 0 {
            &generator * &sampling::poly(rng, 8, -3, 3)
        } else {
            sampling::poly(rng, 10, -3, 3)
        };
        let by_shape = generator.divides(&f);
        ensure(delta.quadratic_member(&spec, &f, &mut cache) == by_shape, || format!("c = {c}, f = {f}"))?;
        ensure(solver_member(&c, &quadratic(&a), &f)? == by_shape, || format!("solver: c = {c}, f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn unit_ratio_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    ratio_image(ctx, rng, 1)
}

fn negative_unit_ratio_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    ratio_image(ctx, rng, -1)
}

fn rooted_vs_solver(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut cache = ctx.cache.snapshot(12, 10);
    let mut tested = 0;
    while tested < ctx.limits.samples {
        let delta = step(rng);
        let k = rng.gen_range(2..=3);
        let roots: Vec<Rational> = (0..k).map(|_| sampling::int_in(rng, -2, 2)).collect();
        let lc = sampling::nonzero_rational(rng, 3, 2);
        let Ok(ideal) = RootedIdeal::new(roots.clone(), lc) else {
            continue;
        };
        let u = ideal.generator();
        let image = delta.apply(&(&u * &sampling::poly(rng, 3, -2, 2)));
        ensure(delta.rational_rooted_member(&ideal, &image, &mut cache), || {
            format!("roots {roots:?}: constructed image element rejected")
        })?;
        let f = &image + &sampling::poly(rng, 4, -2, 2);
        let fast = delta.rational_rooted_member(&ideal, &f, &mut cache);
        ensure(fast == solver_member(delta.c(), &u, &f)?, || format!("roots {roots:?}, f = {f}"))?;
        tested += 1;
    }
    Ok(format!("{tested} samples"))
}

fn quantum(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let u = Polynomial::from_ints(&[0, 0, 1]);
    for _ in 0..ctx.limits.samples {
        let delta = step(rng);
        let h = delta.c().clone();
        let g = &u * &sampling::poly(rng, 4, -3, 3);
        let dh = quantum_derivation(&h, &g).map_err(|e| e.to_string())?;
        let direct = (&g.compose(&Polynomial::shift(&h)) - &g).scale(&h.recip());
        ensure(dh == direct, || format!("h = {h}, g = {g}"))?;
        ensure(dh == delta.as_quantum_derivation(&g), || format!("h = {h}: not -(1/h) delta"))?;
        // D_h(I) and δI agree as sets: membership is invariant under scaling by -h
        let f = sampling::poly(rng, 6, -3, 3);
        let scaled = f.scale(&-h.clone());
        ensure(solver_member(&h, &u, &f)? == solver_member(&h, &u, &scaled)?, || format!("f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn scaling_conjugation(_: &Ctx, rng: &mut CaseRng) -> Outcome {
    for _ in 0..4 {
        let delta = step(rng);
        for n in 0..=32usize {
            let xn = Polynomial::monomial(Rational::one(), n);
            ensure(conjugate_by_scaling(&delta, &xn) == -difference_operator(&xn), || {
                format!("c = {}, n = {n}", delta.c())
            })?;
        }
    }
    Ok("S^-1 delta S = -Delta on x^n, n <= 32".into())
}

fn difference_of_bernoulli(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let n_max = ctx.limits.bernoulli_max.min(32);
    let mut cache = ctx.cache.snapshot(n_max, 0);
    for n in 1..=n_max {
        let expected = Polynomial::monomial(Rational::from_integer(n.into()), n - 1);
        ensure(difference_operator(&cache.poly(n)) == expected, || format!("n = {n}"))?;
    }
    ensure(difference_operator(&Polynomial::one()).is_zero(), || "constant".into())?;
    Ok(format!("Delta B_n = n x^(n-1), n <= {n_max}"))
}

fn zero_ratio_scan(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let r = scans::run_builtin(scans::Builtin::DeltaOfX2, 3, &scans::default_coeffs(), 30, ctx.cache);
    Ok(r.summary())
}

fn repeated_root_scan(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let r = scans::run_builtin(scans::Builtin::DeltaOfX2TimesXMinus1, 3, &scans::default_coeffs(), 30, ctx.cache);
    Ok(r.summary())
}
