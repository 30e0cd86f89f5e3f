use derivimage_core::derivimage::{
    derivation_ideal_shape, di_member, di_shape, lambda_apply, lambda_member, Derivation,
};
use derivimage_core::{int, ImageShape, Polynomial};

use super::{ensure, gate, linear_preimage, report, Case, Ctx, Outcome};
use crate::sampling::{self, CaseRng};
use crate::scans;

pub(crate) fn cases() -> Vec<Case> {
    vec![
        gate("derivations.lf-ln-predicates", predicates),
        gate("derivations.image-is-principal", image_is_principal),
        gate("derivations.ideal-image-vs-solver", ideal_image_vs_solver),
        gate("derivations.power-ideal-image", power_ideal_image),
        gate("derivations.linear-ideal-image-is-everything", linear_ideal_image),
        gate("derivations.lambda-operator", lambda_operator),
        gate("derivations.x-d-not-mathieu", x_d_not_mathieu),
        report("derivations.ideal-radical-scan", radical_scan),
    ]
}

fn predicates(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let checks = [
        (Polynomial::zero(), true, true),
        (Polynomial::from_ints(&[3]), true, true),
        (Polynomial::from_ints(&[1, 2]), true, false),
        (Polynomial::from_ints(&[0, 0, 1]), false, false),
    ];
    for (a, lf, ln) in checks {
        let d = Derivation::new(a.clone());
        ensure(d.is_lf() == lf && d.is_ln() == ln, || format!("a = {a}"))?;
    }
    Ok("LF iff deg a <= 1, LN iff a constant".into())
}

fn image_is_principal(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut members = 0;
    for i in 0..ctx.limits.samples {
        let a = sampling::nonzero_poly(rng, 3, -3, 3);
        // bias half the targets into the image
        let f = if i % 2 == 0 {
            &a * &sampling::poly(rng, 5, -3, 3)
        } else {
            sampling::poly(rng, ctx.limits.max_degree, -3, 3)
        };
        let d = Derivation::new(a.clone());
        let got = d.image_member(&f);
        ensure(got.is_some() == a.divides(&f), || format!("a = {a}, f = {f}"))?;
        if let Some(g) = got {
            ensure(d.apply(&g) == f, || format!("witness {g} fails for a = {a}, f = {f}"))?;
            members += 1;
        }
    }
    Ok(format!("{} samples, {members} members", ctx.limits.samples))
}

fn ideal_image_vs_solver(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    let mut members = 0;
    for i in 0..ctx.limits.oracle_samples() {
        let u = sampling::nonzero_poly(rng, 4, -3, 3);
        let f = if i % 3 == 0 {
            (&u * &sampling::poly(rng, 4, -3, 3)).derivative()
        } else {
            sampling::poly(rng, ctx.limits.max_degree, -3, 3)
        };
        let bound = (f.degree().unwrap_or(0) + 1).saturating_sub(u.degree().unwrap()) + 1;
        let oracle = linear_preimage(|g| (&u * g).derivative(), &f, bound);
        let got = di_member(&u, &f).map_err(|e| e.to_string())?;
        ensure(got.is_some() == oracle.is_some(), || format!("u = {u}, f = {f}"))?;
        if let Some(g) = got {
            ensure((&u * &g).derivative() == f, || format!("witness {g} fails"))?;
            members += 1;
        }
    }
    Ok(format!("{} samples, {members} members", ctx.limits.oracle_samples()))
}

fn power_ideal_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for c in [0, 1, -2] {
        let root = Polynomial::linear_root(&int(c));
        for n in 2..=6u32 {
            let u = root.pow(n);
            let generator = root.pow(n - 1);
            let shape = di_shape(&u).map_err(|e| e.to_string())?;
            ensure(shape == ImageShape::PrincipalIdeal(generator.clone()), || {
                format!("c = {c}, n = {n}: {shape:?}")
            })?;
            for i in 0..ctx.limits.samples {
                let f = if i % 2 == 0 {
                    &generator * &sampling::poly(rng, 5, -3, 3)
                } else {
                    sampling::poly(rng, ctx.limits.max_degree, -3, 3)
                };
                let got = di_member(&u, &f).map_err(|e| e.to_string())?;
                ensure(got.is_some() == generator.divides(&f), || {
                    format!("c = {c}, n = {n}, f = {f}")
                })?;
            }
        }
    }
    Ok(format!("u = (x-c)^n, n in 2..6, c in {{0, 1, -2}}, {} samples each", ctx.limits.samples))
}

fn linear_ideal_image(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for _ in 0..ctx.limits.samples {
        let u = sampling::nonzero_poly(rng, 1, -3, 3);
        let f = sampling::poly(rng, ctx.limits.max_degree, -3, 3);
        ensure(di_shape(&u).ok() == Some(ImageShape::FullAlgebra), || format!("u = {u}"))?;
        let g = di_member(&u, &f).map_err(|e| e.to_string())?;
        ensure(g.is_some(), || format!("u = {u}, f = {f}"))?;
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn lambda_operator(ctx: &Ctx, rng: &mut CaseRng) -> Outcome {
    for i in 0..ctx.limits.samples {
        let u = sampling::nonzero_poly(rng, 2, -2, 2);
        let v = sampling::nonzero_poly(rng, 3, -2, 2);
        let f = if i % 2 == 0 {
            lambda_apply(&u, &v, &sampling::poly(rng, 4, -2, 2))
        } else {
            sampling::poly(rng, 8, -2, 2)
        };
        let oracle = linear_preimage(|g| lambda_apply(&u, &v, g), &f, f.degree().unwrap_or(0) + 2);
        let got = lambda_member(&u, &v, &f).map_err(|e| e.to_string())?;
        ensure(got.is_some() == oracle.is_some(), || format!("u = {u}, v = {v}, f = {f}"))?;
        if let Some(g) = got {
            ensure(lambda_apply(&u, &v, &g) == f, || format!("witness {g} fails"))?;
        }
        // Im Λ is the image of v·Q[x] under u·d/dx
        let shape = derivation_ideal_shape(&Derivation::new(u.clone()), &v)
            .map_err(|e| e.to_string())?;
        if let ImageShape::PrincipalIdeal(gen) = shape {
            ensure(gen.divides(&f) == oracle.is_some(), || format!("shape of u = {u}, v = {v}"))?;
        }
    }
    Ok(format!("{} samples", ctx.limits.samples))
}

fn x_d_not_mathieu(_: &Ctx, _: &mut CaseRng) -> Outcome {
    let x = Polynomial::x();
    let v = Polynomial::from_ints(&[-1, 0, 1]);
    for m in 1..=20u32 {
        let even = x.pow(2 * m);
        let g = lambda_member(&x, &v, &even).map_err(|e| e.to_string())?;
        ensure(g.is_some(), || format!("x^{} not in the image", 2 * m))?;
        let odd = x.pow(2 * m + 1);
        let g = lambda_member(&x, &v, &odd).map_err(|e| e.to_string())?;
        ensure(g.is_none(), || format!("x^{} in the image", 2 * m + 1))?;
    }
    Ok("x^(2m) in V and x^(2m+1) not in V for 1 <= m <= 20".into())
}

fn radical_scan(ctx: &Ctx, _: &mut CaseRng) -> Outcome {
    let window = ctx.limits.window;
    let r = scans::run_builtin(scans::Builtin::DerivativeOfX2Minus1, 3, &scans::default_coeffs(), window, ctx.cache);
    Ok(r.summary())
}
