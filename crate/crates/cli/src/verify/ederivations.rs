use derivimage_core::ederiv::{
    classify_case, decompose_uw, descend_in_w, generic_member_default, im_delta_member,
    normalize_affine, CaseTag, EDerivation,
};
use derivimage_core::{int, Polynomial, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{ensure, gate, Case, Ctx, Outcome};
use crate::sampling::{self, CaseRng};

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("ederivations.twisted-leibniz", twisted_leibniz),
        gate("ederivations.case-tags", case_tags),
        gate("ederivations.affine-normalization", affine_normalization),
        gate("ederivations.evaluation-image", evaluation_image),
        gate("ederivations.identity-image-is-zero", identity_image),
        gate("ederivations.scaling-image", scaling_image),
        gate("ederivations.sign-flip-image", sign_flip_image),
        gate("ederivations.casewise-vs-solver", casewise_vs_solver),
        gate("ederivations.three-powers", three_powers),
        gate("ederivations.decomposition", decomposition),
        gate("ederivations.degree-bound", degree_bound),
        gate("ederivations.descent", descent),
        gate("ederivations.scaling-not-mathieu", scaling_not_mathieu),
    ]
}

const HIGH_DEGREE_WS: [&[i64]; 3] = [&[0, 0, 1], &[0, 1, 1], &[-1, 0, 0, 2]];

fn random_w(rng: &mut CaseRng) -> Polynomial {
    match rng.gen_range(0..4) {
        0 => Polynomial::constant(sampling::rational(rng, 5, 3)),
        1 => Polynomial::shift(&sampling::rational(rng, 5, 3)),
        2 => Polynomial::new(vec![sampling::rational(rng, 5, 3), sampling::nonzero_rational(rng, 5, 3)]),
        _ => {
            let extra: [&[i64]; 2] = [&[1, 0, -1], &[0, 0, 0, 1]];
            let all: Vec<&[i64]> = HIGH_DEGREE_WS.iter().chain(extra.iter()).copied().collect();
            Polynomial::from_ints(all[rng.gen_range(0..all.len())])
        }
    }
}

fn twisted_leibniz(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for _ in 0..ctx.limits.samples {
        let d = EDerivation::new(random_w(rng));
        let f = sampling::rational_poly(rng, 4, 4, 3);
        let g = sampling::rational_poly(rng, 4, 4, 3);
        let (df, dg) = (d.apply(&f), d.apply(&g));
        let rhs = &(&(&df * &g) + &(&f * &dg)) - &(&df * &dg);
        ensure(d.apply(&(&f * &g)) == rhs, || format!("w = {}, f = {f}, g = {g}", d.w()))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn case_tags(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let expect = [
        (Polynomial::from_ints(&[3]), CaseTag::ConstW(int(3))),
        (Polynomial::from_ints(&[-2, 1]), CaseTag::Translation(int(-2))),
        (Polynomial::from_ints(&[1, 2]), CaseTag::Scaling { q: int(2), shift: int(-1) }),
        (Polynomial::from_ints(&[0, 2]), CaseTag::Scaling { q: int(2), shift: int(0) }),
        (Polynomial::from_ints(&[0, 0, 1]), CaseTag::HighDegree(2)),
    ];
    for (w, tag) in expect {
        let got = classify_case(&w);
        ensure(got == tag, || format!("w = {w}: {got:?}"))?;
    }
    Ok("constant, translation, scaling and high-degree tags".into())
}

fn affine_normalization(_: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut done = 0;
    while done < 50 {
        let a = sampling::nonzero_rational(rng, 6, 4);
        if a.is_one() {
            continue;
        }
        let b = sampling::rational(rng, 6, 4);
        let s = normalize_affine(&a, &b).map_err(|e| e.to_string())?;
        // ψ(x) = x + s; ψ φ ψ^{-1} sends x to w(x + s) - s
        let w = Polynomial::new(vec![b.clone(), a.clone()]);
        let conj = &w.compose(&Polynomial::shift(&s)) - &Polynomial::constant(s.clone());
        ensure(conj == Polynomial::monomial(a.clone(), 1), || format!("a = {a}, b = {b}"))?;
        ensure(s == &b / (Rational::one() - &a), || format!("shift {s} for a = {a}, b = {b}"))?;
        done += 1;
    }
    Ok("50 random (a, b)".into())
}

fn evaluation_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for i in 0..ctx.limits.samples {
        let c = sampling::rational(rng, 4, 3);
        let root = Polynomial::linear_root(&c);
        let f = if i % 2 == 0 {
            &root * &sampling::poly(rng, 6, -3, 3)
        } else {
            sampling::poly(rng, ctx.limits.max_degree, -3, 3)
        };
        let w = Polynomial::constant(c.clone());
        let got = im_delta_member(&w, &f);
        ensure(got.is_some() == root.divides(&f), || format!("c = {c}, f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn identity_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let w = Polynomial::x();
    for _ in 0..ctx.limits.samples {
        let f = sampling::poly(rng, ctx.limits.max_degree, -3, 3);
        ensure(im_delta_member(&w, &f).is_some() == f.is_zero(), || format!("f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn scaling_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for i in 0..ctx.limits.samples {
        let q = loop {
            let q = sampling::nonzero_rational(rng, 5, 3);
            if !q.abs().is_one() {
                break q;
            }
        };
        let f = if i % 2 == 0 {
            &Polynomial::x() * &sampling::poly(rng, 6, -3, 3)
        } else {
            sampling::poly(rng, ctx.limits.max_degree, -3, 3)
        };
        let w = Polynomial::monomial(q.clone(), 1);
        let got = im_delta_member(&w, &f);
        ensure(got.is_some() == f.coeff(0).is_zero(), || format!("q = {q}, f = {f}"))?;
        if let Some(u) = got {
            ensure(EDerivation::new(w).apply(&u) == f, || format!("witness fails, q = {q}"))?;
        }
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn sign_flip_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let w = Polynomial::from_ints(&[0, -1]);
    for i in 0..ctx.limits.samples {
        let mut f = sampling::poly(rng, ctx.limits.max_degree, -3, 3);
        if i % 2 == 0 {
            let odd: Vec<Rational> = f
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { c.clone() } else { Rational::zero() })
                .collect();
            f = Polynomial::new(odd);
        }
        let odd_only = f.support().all(|n| n % 2 == 1);
        ensure(im_delta_member(&w, &f).is_some() == odd_only, || format!("f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn casewise_vs_solver(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut members = 0;
    for i in 0..ctx.limits.oracle_samples() {
        let w = random_w(rng);
        let delta = EDerivation::new(w.clone());
        let f = if i % 2 == 0 {
            delta.apply(&sampling::rational_poly(rng, 4, 4, 3))
        } else {
            sampling::rational_poly(rng, 6, 4, 3)
        };
        let fast = im_delta_member(&w, &f);
        let slow = generic_member_default(&w, &Polynomial::one(), &f).map_err(|e| e.to_string())?;
        ensure(fast.is_some() == slow.is_some(), || format!("w = {w}, f = {f}"))?;
        if let Some(u) = fast {
            ensure(delta.apply(&u) == f, || format!("witness fails, w = {w}, f = {f}"))?;
            members += 1;
        }
    }
    Ok(format!("{} samples, {members} members", ctx.limits.oracle_samples()))
}

fn three_powers(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut members = 0;
    for w in HIGH_DEGREE_WS.map(Polynomial::from_ints) {
        let delta = EDerivation::new(w.clone());
        let d = w.degree().expect("nonzero");
        for i in 0..ctx.limits.samples {
            // half the inputs are image elements of degree <= 8
            let f = loop {
                let f = if i % 2 == 0 {
                    delta.apply(&sampling::poly(rng, 8 / d, -3, 3))
                } else {
                    sampling::poly(rng, 8, -3, 3)
                };
                if !f.is_zero() {
                    break f;
                }
            };
            let mut all = true;
            for (k, g) in [f.clone(), f.pow(2), f.pow(3)].iter().enumerate() {
                let fast = im_delta_member(&w, g).is_some();
                let slow = generic_member_default(&w, &Polynomial::one(), g)
                    .map_err(|e| e.to_string())?
                    .is_some();
                ensure(fast == slow, || format!("w = {w}, f^{} with f = {f}", k + 1))?;
                members += (k == 0 && fast) as usize;
                all &= fast;
            }
            ensure(!all, || format!("w = {w}: f, f^2, f^3 all in the image for f = {f}"))?;
        }
    }
    Ok(format!(
        "w in {{x^2, x^2 + x, 2x^3 - 1}}, {} samples each, {members} with f in the image",
        ctx.limits.samples
    ))
}

fn decomposition(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for w in HIGH_DEGREE_WS.map(Polynomial::from_ints) {
        let d = w.degree().expect("nonzero");
        for _ in 0..ctx.limits.samples {
            let f = sampling::rational_poly(rng, 12, 4, 3);
            let dec = decompose_uw(&w, &f).map_err(|e| e.to_string())?;
            ensure(&dec.f1 + &dec.utilde.compose(&w) == f, || format!("w = {w}, f = {f}"))?;
            ensure(dec.f1.support().all(|e| e % d != 0), || format!("f1 = {}", dec.f1))?;
            let again = decompose_uw(&w, &dec.f1).map_err(|e| e.to_string())?;
            ensure(again.f1 == dec.f1 && again.utilde.is_zero(), || "not idempotent".into())?;
            if let Some(n) = f.degree() {
                ensure(n >= dec.ell, || format!("ell {} above degree", dec.ell))?;
                if n % d != 0 {
                    ensure(dec.ell == n, || format!("ell {} != deg f = {n}", dec.ell))?;
                }
            }
        }
    }
    Ok(format!("{} samples per w", ctx.limits.samples))
}

/// Members outside `Q[w]` satisfy `deg f ≥ d·ℓ(f) ≥ d`.
fn degree_bound(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut checked = 0;
    for w in HIGH_DEGREE_WS.map(Polynomial::from_ints) {
        let d = w.degree().expect("nonzero");
        let delta = EDerivation::new(w.clone());
        for _ in 0..ctx.limits.samples {
            let f = delta.apply(&sampling::nonzero_poly(rng, 5, -3, 3));
            let dec = decompose_uw(&w, &f).map_err(|e| e.to_string())?;
            if f.is_zero() || dec.f1.is_zero() {
                continue;
            }
            let n = f.degree().expect("nonzero");
            ensure(n >= d * dec.ell && dec.ell >= 1, || format!("w = {w}, f = {f}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} members outside Q[w]"))
}

/// A member `f = f̃∘w` has the member `f̃`, with preimage `f̃ + u`.
fn descent(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut checked = 0;
    for w in HIGH_DEGREE_WS.map(Polynomial::from_ints) {
        let delta = EDerivation::new(w.clone());
        for _ in 0..ctx.limits.samples {
            // u ∈ Q[w] gives f = δu ∈ Q[w]
            let inner = sampling::poly(rng, 3, -3, 3);
            let u = inner.compose(&w);
            let f = delta.apply(&u);
            let Some((ft, ut)) = descend_in_w(&w, &f, &u).map_err(|e| e.to_string())? else {
                return Err(format!("w = {w}: {f} not recognized in Q[w]"));
            };
            ensure(delta.apply(&ut) == ft, || format!("w = {w}, f = {f}"))?;
            ensure(im_delta_member(&w, &ft).is_some(), || format!("f~ = {ft}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} descents"))
}

fn scaling_not_mathieu(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let w = Polynomial::from_ints(&[0, 2]);
    let u = Polynomial::from_ints(&[-1, 0, 1]);
    let delta = EDerivation::new(w.clone());
    let x = Polynomial::x();
    for m in 1..=20u32 {
        let even = x.pow(2 * m);
        let g = generic_member_default(&w, &u, &even).map_err(|e| e.to_string())?;
        let Some(g) = g else {
            return Err(format!("x^{} not in the image", 2 * m));
        };
        ensure(delta.apply(&(&u * &g)) == even, || "witness fails".into())?;
        let odd = x.pow(2 * m + 1);
        let g = generic_member_default(&w, &u, &odd).map_err(|e| e.to_string())?;
        ensure(g.is_none(), || format!("x^{} in the image", 2 * m + 1))?;
    }
    Ok("q = 2: x^(2m) in the image and x^(2m+1) not, 1 <= m <= 20".into())
}
