//! The locally nilpotent E-derivation `δ f = f - f(x + c)`, `c ≠ 0`.
//!
//! Degree-one ideals map onto all of `Q[x]`. For `I = (x² - a x)` every
//! `x^n` is congruent to the constant `D_n(β) c^n` modulo `δI`, where
//! `β = a/c`, so membership reduces to a single rational being zero. Ideals
//! with several rational roots are handled pairwise after translating one
//! root to the origin.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bernoulli::BernoulliCache;
use crate::derivimage::{verified, ImageShape};
use crate::qkernel::{Polynomial, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationDelta {
    c: Rational,
}

impl TranslationDelta {
    pub fn new(c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroArgument("translation step c"));
        }
        Ok(TranslationDelta { c })
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        f - &f.compose(&Polynomial::shift(&self.c))
    }

    /// Some `g ∈ (x - a)·Q[x]` with `δ g = f`.
    ///
    /// Peels the top degree with `δ((x-a)^{n+1}) = -(n+1) c x^n + lower`.
    pub fn preimage_full(&self, a: &Rational, f: &Polynomial) -> Polynomial {
        let base = Polynomial::linear_root(a);
        let mut residual = f.clone();
        let mut g = Polynomial::zero();
        let mut power = base.clone();
        let mut powers: Vec<Polynomial> = Vec::new();
        while let Some(n) = residual.degree() {
            while powers.len() <= n {
                powers.push(power.clone());
                power = &power * &base;
            }
            let lead = -Rational::from_integer(BigInt::from(n + 1)) * &self.c;
            let t = residual.coeff(n) / lead;
            let term = powers[n].scale(&t);
            residual -= &self.apply(&term);
            g += &term;
        }
        verified(g, |g| self.apply(g), f)
    }

    /// The constant `Σ f_i D_i(β) c^i` congruent to `f` modulo `δ(x² - a x)`.
    pub fn reduce_mod_quadratic(
        &self,
        spec: &QuadraticIdealSpec,
        f: &Polynomial,
        cache: &mut BernoulliCache,
    ) -> Rational {
        let Some(deg) = f.degree() else {
            return Rational::zero();
        };
        let d = cache.d_values(&spec.beta, deg);
        let mut c_pow = Rational::one();
        let mut acc = Rational::zero();
        for (fi, di) in f.coeffs().iter().zip(&d) {
            if !fi.is_zero() && !di.is_zero() {
                acc += fi * di * &c_pow;
            }
            c_pow *= &self.c;
        }
        acc
    }

    pub fn quadratic_member(
        &self,
        spec: &QuadraticIdealSpec,
        f: &Polynomial,
        cache: &mut BernoulliCache,
    ) -> bool {
        self.reduce_mod_quadratic(spec, f, cache).is_zero()
    }

    /// Closed form of `δ(x² - a x)` where one is known.
    pub fn quadratic_shape(&self, spec: &QuadraticIdealSpec) -> ImageShape {
        let beta = &spec.beta;
        if beta.is_one() {
            ImageShape::PrincipalIdeal(Polynomial::x())
        } else if *beta == -Rational::one() {
            // a = -c: the image is (x + c) = (x - a)
            ImageShape::PrincipalIdeal(Polynomial::linear_root(&spec.a))
        } else if beta.is_zero() {
            ImageShape::RadicalZeroClaimed
        } else {
            ImageShape::Unclassified
        }
    }

    /// Membership in `δ(u·Q[x])` for `u = lc·∏(x - r_i)`, via the pairwise
    /// quadratic criterion on `f(x + r_i)` with `a = r_j - r_i`.
    pub fn rational_rooted_member(
        &self,
        ideal: &RootedIdeal,
        f: &Polynomial,
        cache: &mut BernoulliCache,
    ) -> bool {
        let roots = &ideal.roots;
        for (i, ri) in roots.iter().enumerate() {
            let translated = f.compose(&Polynomial::shift(ri));
            for rj in &roots[i + 1..] {
                let spec = QuadraticIdealSpec::new(rj - ri, self);
                if !self.quadratic_member(&spec, &translated, cache) {
                    return false;
                }
            }
        }
        true
    }

    /// `-(1/c)·δ`, i.e. the quantum derivation with step `h = c`.
    pub fn as_quantum_derivation(&self, f: &Polynomial) -> Polynomial {
        self.apply(f).scale(&-self.c.recip())
    }
}

/// The ideal `(x² - a x)` together with `β = a / c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticIdealSpec {
    pub a: Rational,
    pub beta: Rational,
}

impl QuadraticIdealSpec {
    pub fn new(a: Rational, delta: &TranslationDelta) -> Self {
        let beta = &a / delta.c();
        QuadraticIdealSpec { a, beta }
    }

    pub fn generator(&self) -> Polynomial {
        Polynomial::new(alloc::vec![Rational::zero(), -self.a.clone(), Rational::one()])
    }
}

/// `lc·∏(x - r_i)` with at least two rational roots, each of multiplicity ≤ 2.
///
/// The pairwise intersection of the ideals `((x - r_i)(x - r_j))` only
/// recovers the full ideal when no root is repeated more than twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedIdeal {
    roots: Vec<Rational>,
    lc: Rational,
}

impl RootedIdeal {
    pub fn new(roots: Vec<Rational>, lc: Rational) -> Result<Self> {
        if roots.len() < 2 {
            return Err(Error::DegreeTooLow { required: 2 });
        }
        if lc.is_zero() {
            return Err(Error::ZeroArgument("leading coefficient"));
        }
        if roots
            .iter()
            .any(|r| roots.iter().filter(|s| *s == r).count() > 2)
        {
            return Err(Error::Unsupported("roots of multiplicity above two"));
        }
        Ok(RootedIdeal { roots, lc })
    }

    /// Validates the root data against an explicit generator.
    pub fn from_generator(u: &Polynomial, roots: Vec<Rational>, lc: Rational) -> Result<Self> {
        let ideal = Self::new(roots, lc)?;
        if ideal.generator() != *u {
            return Err(Error::RootMismatch);
        }
        Ok(ideal)
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn generator(&self) -> Polynomial {
        self.roots
            .iter()
            .fold(Polynomial::constant(self.lc.clone()), |acc, r| {
                &acc * &Polynomial::linear_root(r)
            })
    }
}

/// `D_h f = (f(x + h) - f(x)) / h`.
pub fn quantum_derivation(h: &Rational, f: &Polynomial) -> Result<Polynomial> {
    if h.is_zero() {
        return Err(Error::ZeroArgument("step h"));
    }
    Ok((&f.compose(&Polynomial::shift(h)) - f).scale(&h.recip()))
}

/// `Δ f = f(x + 1) - f(x)`.
pub fn difference_operator(f: &Polynomial) -> Polynomial {
    &f.compose(&Polynomial::shift(&Rational::one())) - f
}

/// `S⁻¹ δ S f` for `S: x ↦ x / c`.
pub fn conjugate_by_scaling(delta: &TranslationDelta, f: &Polynomial) -> Polynomial {
    let c = delta.c();
    let s = f.compose(&Polynomial::monomial(c.recip(), 1));
    delta.apply(&s).compose(&Polynomial::monomial(c.clone(), 1))
}

/// Checks `S⁻¹ δ S = -Δ` on `1, x, ..., x^max_degree`.
pub fn scaling_conjugation_self_test(delta: &TranslationDelta, max_degree: usize) -> bool {
    (0..=max_degree).all(|n| {
        let xn = Polynomial::monomial(Rational::one(), n);
        conjugate_by_scaling(delta, &xn) == -difference_operator(&xn)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli_poly;
    use crate::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn delta(c: i64) -> TranslationDelta {
        TranslationDelta::new(int(c)).unwrap()
    }

    #[test]
    fn degree_drops_by_one() {
        let d = delta(3);
        assert_eq!(d.apply(&p(&[1, 2, 5, 1])).degree(), Some(2));
        assert!(TranslationDelta::new(int(0)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let d = delta(1);
        assert_eq!(d.preimage_full(&int(0), &Polynomial::one()), p(&[0, -1]));
        assert_eq!(
            d.preimage_full(&int(0), &Polynomial::x()),
            Polynomial::new(vec![int(0), rat(1, 2), rat(-1, 2)])
        );
        assert!(delta(-4).preimage_full(&int(7), &Polynomial::zero()).is_zero());
    }

    #[test]
    fn reduction_examples() {
        let mut cache = BernoulliCache::new();
        let d = delta(1);
        let beta_one = QuadraticIdealSpec::new(int(1), &d);
        assert_eq!(d.reduce_mod_quadratic(&beta_one, &Polynomial::x(), &mut cache), int(0));
        let some = QuadraticIdealSpec::new(rat(5, 3), &d);
        assert_eq!(d.reduce_mod_quadratic(&some, &Polynomial::one(), &mut cache), int(1));
        let beta_neg = QuadraticIdealSpec::new(int(-1), &d);
        assert_eq!(beta_neg.beta, int(-1));
        assert_eq!(d.reduce_mod_quadratic(&beta_neg, &p(&[0, 0, 1]), &mut cache), int(1));
    }

    #[test]
    fn membership_examples() {
        let mut cache = BernoulliCache::new();
        let d = delta(1);
        let one = QuadraticIdealSpec::new(int(1), &d);
        assert!(d.quadratic_member(&one, &Polynomial::x(), &mut cache));
        assert!(!d.quadratic_member(&one, &Polynomial::one(), &mut cache));
        let neg = QuadraticIdealSpec::new(int(-1), &d);
        assert!(d.quadratic_member(&neg, &p(&[1, 1]), &mut cache));
        // δ(x² + x) = -2(x + 1)
        assert_eq!(d.apply(&neg.generator()), p(&[-2, -2]));
    }

    #[test]
    fn shapes() {
        let d = delta(3);
        let shape = |a: i64| d.quadratic_shape(&QuadraticIdealSpec::new(int(a), &d));
        assert_eq!(shape(3), ImageShape::PrincipalIdeal(Polynomial::x()));
        assert_eq!(shape(-3), ImageShape::PrincipalIdeal(p(&[3, 1])));
        assert_eq!(shape(0), ImageShape::RadicalZeroClaimed);
        assert_eq!(shape(1), ImageShape::Unclassified);
    }

    #[test]
    fn rooted_ideal_examples() {
        let mut cache = BernoulliCache::new();
        let d = delta(2);
        let ideal = RootedIdeal::new(vec![int(0), int(2)], int(1)).unwrap();
        let f = d.apply(&(&ideal.generator() * &Polynomial::x()));
        assert!(d.rational_rooted_member(&ideal, &f, &mut cache));
        let double = RootedIdeal::new(vec![int(0), int(0)], int(1)).unwrap();
        assert!(!d.rational_rooted_member(&double, &Polynomial::one(), &mut cache));
        assert!(RootedIdeal::new(vec![int(0)], int(1)).is_err());
        assert!(RootedIdeal::new(vec![int(1), int(1), int(1)], int(1)).is_err());
        assert!(RootedIdeal::new(vec![int(1), int(2)], int(0)).is_err());
        assert_eq!(
            RootedIdeal::from_generator(&p(&[-1, 0, 1]), vec![int(1), int(-1)], int(1))
                .map(|i| i.generator()),
            Ok(p(&[-1, 0, 1]))
        );
        assert_eq!(
            RootedIdeal::from_generator(&p(&[-1, 0, 2]), vec![int(1), int(-1)], int(1)),
            Err(Error::RootMismatch)
        );
    }

    #[test]
    fn quantum_and_difference() {
        assert_eq!(quantum_derivation(&int(1), &p(&[0, 0, 1])), Ok(p(&[1, 2])));
        assert!(quantum_derivation(&rat(2, 3), &p(&[7])).unwrap().is_zero());
        assert_eq!(quantum_derivation(&int(2), &Polynomial::x()), Ok(Polynomial::one()));
        assert!(quantum_derivation(&int(0), &Polynomial::x()).is_err());
        assert_eq!(difference_operator(&p(&[0, 0, 1])), p(&[1, 2]));
        assert!(difference_operator(&Polynomial::one()).is_zero());
        assert_eq!(
            difference_operator(&bernoulli_poly(6)),
            Polynomial::monomial(int(6), 5)
        );
    }

    #[test]
    fn conjugation() {
        assert!(scaling_conjugation_self_test(&delta(3), 8));
        assert!(scaling_conjugation_self_test(
            &TranslationDelta::new(rat(-2, 5)).unwrap(),
            8
        ));
        let d = delta(4);
        let f = p(&[1, -3, 2]);
        assert_eq!(d.as_quantum_derivation(&f), quantum_derivation(&int(4), &f).unwrap());
    }
}
