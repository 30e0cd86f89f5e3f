use derivimage_core::bernoulli::BernoulliCache;
use derivimage_core::{int, rat, Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ensure, gate, report, Case, Ctx, Outcome};
use crate::sampling::{self, CaseRng};
use crate::scans;

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("bernoulli.first-polynomials", first_polynomials),
        gate("bernoulli.shift-difference", shift_difference),
        gate("bernoulli.derivative", derivative),
        gate("bernoulli.binomial-sum", binomial_sum),
        gate("bernoulli.reflection", reflection),
        gate("bernoulli.unit-integral", unit_integral),
        gate("bernoulli.d-closed-form", d_closed_form),
        gate("bernoulli.d-binomial-sum", d_binomial_sum),
        gate("bernoulli.v01-span", v01_span),
        report("bernoulli.span-radical-scan", span_scan),
    ]
}

fn cache(ctx: &Ctx) -> BernoulliCache {
    let n = ctx.limits.bernoulli_max;
    ctx.cache.snapshot(n + 1, n)
}

fn from_usize(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn first_polynomials(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = BernoulliCache::new();
    let expected = [
        Polynomial::one(),
        Polynomial::new(vec![rat(-1, 2), int(1)]),
        Polynomial::new(vec![rat(1, 6), int(-1), int(1)]),
        Polynomial::new(vec![int(0), rat(1, 2), rat(-3, 2), int(1)]),
    ];
    for (n, e) in expected.iter().enumerate() {
        let got = c.poly(n);
        ensure(&got == e, || format!("B_{n}(t) = {got}, expected {e}"))?;
    }
    Ok("B_0..B_3 match".into())
}

fn shift_difference(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    let shift = Polynomial::shift(&int(1));
    for n in 1..=ctx.limits.bernoulli_max {
        let b = c.poly(n);
        let lhs = &b.compose(&shift) - &b;
        let rhs = Polynomial::monomial(from_usize(n), n - 1);
        ensure(lhs == rhs, || format!("n = {n}: {lhs} != {rhs}"))?;
    }
    Ok(format!("B_n(t+1) - B_n(t) = n t^(n-1) for 1 <= n <= {}", ctx.limits.bernoulli_max))
}

fn derivative(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 0..=ctx.limits.bernoulli_max {
        let lhs = c.poly(n + 1).derivative();
        let rhs = c.poly(n).scale(&from_usize(n + 1));
        ensure(lhs == rhs, || format!("n = {n}"))?;
    }
    Ok(format!("B_(n+1)' = (n+1) B_n for n <= {}", ctx.limits.bernoulli_max))
}

fn binomial_sum(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 0..=ctx.limits.bernoulli_max {
        let row: Vec<BigInt> = c.binomial_row(n + 1).to_vec();
        let sum = (0..=n).fold(Polynomial::zero(), |acc, k| {
            &acc + &c.poly(k).scale(&Rational::from_integer(row[k].clone()))
        });
        let rhs = Polynomial::monomial(from_usize(n + 1), n);
        ensure(sum == rhs, || format!("n = {n}: {sum}"))?;
    }
    Ok(format!("sum C(n+1,k) B_k(t) = (n+1) t^n for n <= {}", ctx.limits.bernoulli_max))
}

fn reflection(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    let minus_t = Polynomial::monomial(int(-1), 1);
    for n in 0..=ctx.limits.bernoulli_max {
        let b = c.poly(n);
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        let lhs = b.compose(&minus_t).scale(&sign);
        let extra = if n == 0 {
            Polynomial::zero()
        } else {
            Polynomial::monomial(from_usize(n), n - 1)
        };
        ensure(lhs == &b + &extra, || format!("n = {n}"))?;
    }
    Ok(format!("(-1)^n B_n(-t) = B_n(t) + n t^(n-1) for n <= {}", ctx.limits.bernoulli_max))
}

fn unit_integral(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 1..=ctx.limits.bernoulli_max {
        let v = c.poly(n).definite_integral(&int(0), &int(1));
        ensure(v.is_zero(), || format!("n = {n}: integral {v}"))?;
    }
    Ok(format!("integral over [0,1] vanishes for 1 <= n <= {}", ctx.limits.bernoulli_max))
}

fn d_closed_form(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 0..=ctx.limits.bernoulli_max {
        let numer = &c.poly(n + 1) - &Polynomial::constant(c.number(n + 1));
        let denom = Polynomial::monomial(from_usize(n + 1), 1);
        let (q, r) = numer.div_rem(&denom).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("n = {n}: remainder {r}"))?;
        ensure(&q == c.d_poly(n), || format!("n = {n}: quotient {q}"))?;
    }
    Ok(format!("quotient and closed forms of D_n agree for n <= {}", ctx.limits.bernoulli_max))
}

fn d_binomial_sum(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 0..=ctx.limits.bernoulli_max {
        let row: Vec<BigInt> = c.binomial_row(n + 1).to_vec();
        let sum = (0..=n).fold(Polynomial::zero(), |acc, k| {
            &acc + &c.d_poly(k).scale(&Rational::from_integer(row[k].clone()))
        });
        ensure(sum == Polynomial::monomial(Rational::one(), n), || format!("n = {n}: {sum}"))?;
    }
    Ok(format!("sum C(n+1,k) D_k(t) = t^n for n <= {}", ctx.limits.bernoulli_max))
}

fn v01_span(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut c = cache(ctx);
    for n in 1..=ctx.limits.bernoulli_max {
        let b = c.poly(n);
        ensure(c.in_v01(&b), || format!("B_{n} not in V01"))?;
    }
    for _ in 0..ctx.limits.samples {
        let f = sampling::rational_poly(rng, ctx.limits.max_degree, 5, 4);
        let integral_zero = f.definite_integral(&int(0), &int(1)).is_zero();
        ensure(c.in_v01(&f) == integral_zero, || format!("f = {f}"))?;
        let coords = c.v01_coords(&f);
        let rebuilt = coords
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (i, a)| &acc + &c.poly(i).scale(a));
        ensure(rebuilt == f, || format!("coordinates of {f} do not rebuild it"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn span_scan(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let r = scans::run_builtin(scans::Builtin::BernoulliSpan, 3, &scans::default_coeffs(), 8, ctx.cache);
    Ok(r.summary())
}
