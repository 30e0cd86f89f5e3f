//! Derivations `D = a(x)·d/dx` of `Q[x]` and the images of ideals under them.
//!
//! Every membership routine returns a witness preimage that has already been
//! pushed back through the operator and compared with the target.

use crate::qkernel::Polynomial;
use crate::{Error, Result};

/// Closed-form description of an image subspace of `Q[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageShape {
    /// The zero subspace.
    Zero,
    /// All of `Q[x]`.
    FullAlgebra,
    /// `g·Q[x]` for the monic generator `g`.
    PrincipalIdeal(Polynomial),
    /// Not an ideal; its radical is known to be `{0}`, so it is a Mathieu
    /// subspace. Membership is still decided by the dedicated routine.
    RadicalZeroClaimed,
    /// No closed form is known.
    Unclassified,
}

impl ImageShape {
    pub fn principal(generator: &Polynomial) -> Self {
        if generator.is_zero() {
            ImageShape::Zero
        } else if generator.is_constant() {
            ImageShape::FullAlgebra
        } else {
            ImageShape::PrincipalIdeal(generator.monic())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    a: Polynomial,
}

impl Derivation {
    pub fn new(a: Polynomial) -> Self {
        Derivation { a }
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        &self.a * &f.derivative()
    }

    /// Locally finite iff `deg a ≤ 1` (the zero derivation included).
    pub fn is_lf(&self) -> bool {
        self.a.degree().is_none_or(|d| d <= 1)
    }

    /// Locally nilpotent iff `a` is constant.
    pub fn is_ln(&self) -> bool {
        self.a.is_constant()
    }

    /// Membership in `Im D = a·Q[x]`, with a preimage on success.
    pub fn image_member(&self, f: &Polynomial) -> Option<Polynomial> {
        let g = if self.a.is_zero() {
            f.is_zero().then(Polynomial::zero)?
        } else {
            f.exact_div(&self.a)?.antiderivative()
        };
        Some(verified(g, |g| self.apply(g), f))
    }
}

pub(crate) fn verified(
    witness: Polynomial,
    operator: impl FnOnce(&Polynomial) -> Polynomial,
    target: &Polynomial,
) -> Polynomial {
    let image = operator(&witness);
    assert_eq!(
        &image, target,
        "witness {witness} maps to {image}, not to {target}"
    );
    witness
}

pub fn im_derivation_member(d: &Derivation, f: &Polynomial) -> bool {
    d.image_member(f).is_some()
}

/// Decides `f ∈ ∂(u·Q[x])`.
///
/// `f = (u g)'` for some `g` iff the zero-constant antiderivative `F` of `f`
/// is congruent to a constant modulo `u`; then `g = (F - (F mod u)) / u`.
pub fn di_member(u: &Polynomial, f: &Polynomial) -> Result<Option<Polynomial>> {
    if u.is_zero() {
        return Err(Error::ZeroArgument("ideal generator u"));
    }
    let anti = f.antiderivative();
    let (g, r) = anti.div_rem(u)?;
    if !r.is_constant() {
        return Ok(None);
    }
    Ok(Some(verified(g, |g| (u * g).derivative(), f)))
}

/// Closed-form shape of `∂(u·Q[x])`.
pub fn di_shape(u: &Polynomial) -> Result<ImageShape> {
    Ok(match u.as_linear_power()? {
        Some(lp) if lp.exponent <= 1 => ImageShape::FullAlgebra,
        Some(lp) => ImageShape::PrincipalIdeal(
            Polynomial::linear_root(&lp.root).pow(lp.exponent as u32 - 1),
        ),
        None => ImageShape::RadicalZeroClaimed,
    })
}

/// Shape of `D(v·Q[x])` for `D = a·∂`.
pub fn derivation_ideal_shape(d: &Derivation, v: &Polynomial) -> Result<ImageShape> {
    if v.is_zero() {
        return Err(Error::ZeroArgument("ideal generator"));
    }
    let a = d.a();
    if a.is_zero() {
        return Ok(ImageShape::Zero);
    }
    Ok(match di_shape(v)? {
        ImageShape::FullAlgebra => ImageShape::principal(a),
        ImageShape::PrincipalIdeal(g) => ImageShape::principal(&(a * &g)),
        _ if a.is_constant() => ImageShape::RadicalZeroClaimed,
        _ => ImageShape::Unclassified,
    })
}

/// `Λ g = u·(v g)' = u·(v g' + v' g)`.
pub fn lambda_apply(u: &Polynomial, v: &Polynomial, g: &Polynomial) -> Polynomial {
    u * &(v * g).derivative()
}

/// Membership in `Im Λ = (u∂)(v·Q[x])`: `u | f` and `f/u ∈ ∂(v·Q[x])`.
pub fn lambda_member(u: &Polynomial, v: &Polynomial, f: &Polynomial) -> Result<Option<Polynomial>> {
    if u.is_zero() {
        return Err(Error::ZeroArgument("u"));
    }
    if v.is_zero() {
        return Err(Error::ZeroArgument("v"));
    }
    let Some(q) = f.exact_div(u) else {
        return Ok(None);
    };
    Ok(di_member(v, &q)?.map(|g| verified(g, |g| lambda_apply(u, v, g), f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn lf_ln_predicates() {
        assert!(Derivation::new(p(&[0, 1])).is_lf());
        assert!(!Derivation::new(p(&[0, 1])).is_ln());
        assert!(Derivation::new(p(&[3])).is_ln());
        assert!(Derivation::new(Polynomial::zero()).is_ln());
        assert!(!Derivation::new(p(&[0, 0, 1])).is_lf());
    }

    #[test]
    fn image_membership() {
        let d = Derivation::new(Polynomial::x());
        assert!(im_derivation_member(&d, &p(&[0, 0, 0, 1])));
        assert!(!im_derivation_member(&d, &Polynomial::one()));
        let d1 = Derivation::new(Polynomial::one());
        assert!(im_derivation_member(&d1, &p(&[4, -1, 9])));
        let zero = Derivation::new(Polynomial::zero());
        assert!(im_derivation_member(&zero, &Polynomial::zero()));
        assert!(!im_derivation_member(&zero, &Polynomial::x()));
    }

    #[test]
    fn di_member_examples() {
        let x2 = p(&[0, 0, 1]);
        assert_eq!(
            di_member(&x2, &Polynomial::x()).unwrap(),
            Some(Polynomial::constant(rat(1, 2)))
        );
        assert_eq!(di_member(&x2, &Polynomial::one()).unwrap(), None);
        assert_eq!(
            di_member(&p(&[-1, 0, 1]), &p(&[0, 2])).unwrap(),
            Some(Polynomial::one())
        );
        assert!(di_member(&Polynomial::zero(), &Polynomial::one()).is_err());
    }

    #[test]
    fn di_shape_examples() {
        let cube = Polynomial::linear_root(&int(1)).pow(3);
        assert_eq!(
            di_shape(&cube).unwrap(),
            ImageShape::PrincipalIdeal(Polynomial::linear_root(&int(1)).pow(2))
        );
        assert_eq!(di_shape(&p(&[-5, 1])).unwrap(), ImageShape::FullAlgebra);
        assert_eq!(di_shape(&p(&[3])).unwrap(), ImageShape::FullAlgebra);
        assert_eq!(di_shape(&p(&[-1, 0, 1])).unwrap(), ImageShape::RadicalZeroClaimed);
        assert!(di_shape(&Polynomial::zero()).is_err());
    }

    #[test]
    fn lambda_examples() {
        let x = Polynomial::x();
        assert!(lambda_member(&Polynomial::one(), &x, &p(&[0, 2])).unwrap().is_some());
        assert!(lambda_member(&x, &Polynomial::one(), &Polynomial::one()).unwrap().is_none());
        assert!(lambda_member(&x, &x, &p(&[0, 0, 2])).unwrap().is_some());
        assert_eq!(lambda_apply(&x, &x, &Polynomial::one()), p(&[0, 1]));
        assert!(lambda_member(&Polynomial::zero(), &x, &x).is_err());
        assert!(lambda_member(&x, &Polynomial::zero(), &x).is_err());
    }

    #[test]
    fn ideal_image_shapes() {
        let d = Derivation::new(p(&[2]));
        assert_eq!(
            derivation_ideal_shape(&d, &p(&[0, 0, 1])).unwrap(),
            ImageShape::PrincipalIdeal(Polynomial::x())
        );
        let xd = Derivation::new(Polynomial::x());
        assert_eq!(
            derivation_ideal_shape(&xd, &p(&[-1, 0, 1])).unwrap(),
            ImageShape::Unclassified
        );
        assert_eq!(
            derivation_ideal_shape(&xd, &p(&[0, 1])).unwrap(),
            ImageShape::PrincipalIdeal(Polynomial::x())
        );
    }
}
