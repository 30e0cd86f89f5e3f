use derivimage_core::bernoulli::clausen_staudt_primes;
use derivimage_core::qkernel::{is_prime, vp, Valuation};
use num_bigint::BigInt;

use super::{ensure, gate, Case, Ctx, Outcome};
use crate::sampling::CaseRng;

const MAX_ODD_PRIME: u64 = 53;

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("cvs.defect-is-integer", defect_is_integer),
        gate("cvs.denominator-is-prime-product", denominator),
        gate("cvs.valuation-below-p-minus-one", valuation_below),
        gate("cvs.valuation-at-p-minus-one", valuation_at),
    ]
}

fn defect_is_integer(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let max = ctx.limits.cvs_max;
    let mut c = ctx.cache.snapshot(max as usize, 0);
    for n in (2..=max).step_by(2) {
        let d = c.clausen_staudt_defect(n).map_err(|e| e.to_string())?;
        ensure(d.is_integer(), || format!("n = {n}: defect {d}"))?;
    }
    Ok(format!("B_n + sum 1/q is an integer for every even n <= {max}"))
}

fn denominator(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let max = ctx.limits.cvs_max;
    let mut c = ctx.cache.snapshot(max as usize, 0);
    for n in (2..=max).step_by(2) {
        let prod: BigInt = clausen_staudt_primes(n).into_iter().map(BigInt::from).product();
        let b = c.number(n as usize);
        ensure(b.denom() == &prod, || format!("n = {n}: denominator {}", b.denom()))?;
    }
    Ok(format!("denominator of B_n is the product of primes q with (q-1) | n, n <= {max}"))
}

fn valuation_below(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = ctx.cache.snapshot(MAX_ODD_PRIME as usize, 0);
    for p in (3..=MAX_ODD_PRIME).filter(|&p| is_prime(p)) {
        for n in 1..=(p - 2) {
            let v = vp(&c.number(n as usize), p).map_err(|e| e.to_string())?;
            let ok = match v {
                Valuation::Infinite => true,
                Valuation::Finite(k) => k >= 0,
            };
            ensure(ok, || format!("p = {p}, n = {n}: valuation {v:?}"))?;
        }
    }
    Ok(format!("nu_p(B_n) >= 0 for 1 <= n <= p-2, odd p <= {MAX_ODD_PRIME}"))
}

fn valuation_at(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let mut c = ctx.cache.snapshot(MAX_ODD_PRIME as usize, 0);
    for p in (3..=MAX_ODD_PRIME).filter(|&p| is_prime(p)) {
        let v = vp(&c.number(p as usize - 1), p).map_err(|e| e.to_string())?;
        ensure(v == Valuation::Finite(-1), || format!("p = {p}: valuation {v:?}"))?;
    }
    Ok(format!("nu_p(B_(p-1)) = -1 for odd p <= {MAX_ODD_PRIME}"))
}
