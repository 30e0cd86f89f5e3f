use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial over the rationals.
///
/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// never zero, so the zero polynomial is the empty vector and structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

/// `scale · (x - root)^exponent`, the result of [`Polynomial::as_linear_power`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPower {
    pub root: Rational,
    pub exponent: usize,
    pub scale: Rational,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Builds a polynomial from ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Polynomial { coeffs }
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        Polynomial {
            coeffs: vec![-c.clone(), Rational::one()],
        }
    }

    /// `x + s`, the substitution used for translations.
    pub fn shift(s: &Rational) -> Self {
        Polynomial {
            coeffs: vec![s.clone(), Rational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ g`, i.e. `self(g(x))`, by Horner's scheme.
    pub fn compose(&self, g: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * g;
            acc.add_constant(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / BigInt::from(i + 1));
        }
        Polynomial { coeffs }
    }

    /// Exact `∫_lo^hi self(x) dx`.
    pub fn definite_integral(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// Euclidean division: `self = q·g + r` with `r = 0` or `deg r < deg g`.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = g.coeffs[dg].recip();
        let mut rem = self.coeffs.clone();
        let Some(df) = self.degree().filter(|&df| df >= dg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let t = &rem[k + dg] * &lc_inv;
            if t.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &t * gc;
            }
            quot[k] = t;
        }
        rem.truncate(dg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// True iff `self` divides `f`. Zero divides only zero.
    pub fn divides(&self, f: &Polynomial) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        f.div_rem(self).is_ok_and(|(_, r)| r.is_zero())
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() && g.is_zero() {
            return Err(Error::ZeroArgument("gcd operands (both)"));
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Whether `self` has a repeated root over the algebraic closure,
    /// decided by `gcd(u, u')` being nonconstant.
    pub fn has_repeated_root(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => Err(Error::DegreeTooLow { required: 1 }),
            Some(_) => Ok(!self.gcd(&self.derivative())?.is_constant()),
        }
    }

    /// Writes `self = λ·(x - c)^n` with rational `c`, if possible.
    ///
    /// Constants report `c = 0, n = 0`.
    pub fn as_linear_power(&self) -> Result<Option<LinearPower>> {
        let Some(n) = self.degree() else {
            return Err(Error::ZeroArgument("u"));
        };
        let scale = self.coeffs[n].clone();
        if n == 0 {
            return Ok(Some(LinearPower {
                root: Rational::zero(),
                exponent: 0,
                scale,
            }));
        }
        let root = -(&self.coeffs[n - 1] / &scale) / BigInt::from(n);
        let candidate = Self::linear_root(&root).pow(n as u32).scale(&scale);
        Ok((candidate == *self).then_some(LinearPower {
            root,
            exponent: n,
            scale,
        }))
    }

    fn add_constant(&mut self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
            if self.coeffs.len() == 1 && self.coeffs[0].is_zero() {
                self.coeffs.clear();
            }
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: descending powers, `c*x^n` terms joined by ` + ` / ` - `,
    /// unit coefficients elided, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if n == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

fn add_slices(a: &[Rational], b: &[Rational]) -> Polynomial {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    Polynomial::new(out)
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        add_slices(&self.coeffs, &rhs.coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (o, r) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= r;
        }
        Polynomial::new(out)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial { (&self).$m(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn b2() -> Polynomial {
        Polynomial::new(vec![rat(1, 6), int(-1), int(1)])
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn compose_examples() {
        let x1 = p(&[1, 1]);
        assert_eq!(p(&[0, 0, 1]).compose(&x1), p(&[1, 2, 1]));
        let f = p(&[3, -1, 4, 7]);
        assert_eq!(f.compose(&Polynomial::x()), f);
        // term-by-term: (x+1)^2 - (x+1) + 1/6 = x^2 + x + 1/6
        let expected = Polynomial::new(vec![rat(1, 6), int(1), int(1)]);
        assert_eq!(b2().compose(&x1), expected);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert!(p(&[5]).derivative().is_zero());
        let b3 = Polynomial::new(vec![int(0), rat(1, 2), rat(-3, 2), int(1)]);
        assert_eq!(b3.derivative(), b2().scale(&int(3)));
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(
            Polynomial::x().antiderivative(),
            Polynomial::monomial(rat(1, 2), 2)
        );
        assert!(Polynomial::zero().antiderivative().is_zero());
        let expected = Polynomial::new(vec![int(0), rat(1, 6), rat(-1, 2), rat(1, 3)]);
        let anti = b2().antiderivative();
        assert_eq!(anti, expected);
        assert_eq!(anti.derivative(), b2());
    }

    #[test]
    fn div_rem_examples() {
        assert_eq!(
            p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap(),
            (p(&[1, 1]), Polynomial::zero())
        );
        assert_eq!(
            Polynomial::x().div_rem(&p(&[0, 0, 1])).unwrap(),
            (Polynomial::zero(), Polynomial::x())
        );
        let f = p(&[1, 0, 0, 1]);
        let g = p(&[-1, 2]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, Polynomial::new(vec![rat(1, 8), rat(1, 4), rat(1, 2)]));
        assert_eq!(r, Polynomial::constant(rat(9, 8)));
        assert_eq!(&(&q * &g) + &r, f);
        assert_eq!(f.div_rem(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(
            p(&[4, 2]).gcd(&Polynomial::zero()).unwrap(),
            Polynomial::new(vec![int(2), int(1)])
        );
        assert_eq!(p(&[0, 0, -1, 1]).gcd(&p(&[0, 0, 1])).unwrap(), p(&[0, 0, 1]));
        assert!(Polynomial::zero().gcd(&Polynomial::zero()).is_err());
    }

    #[test]
    fn repeated_roots() {
        assert!(p(&[0, 0, 1]).has_repeated_root().unwrap());
        assert!(!p(&[-1, 0, 1]).has_repeated_root().unwrap());
        assert!(!p(&[1, 0, 1]).has_repeated_root().unwrap());
        assert!(p(&[7]).has_repeated_root().is_err());
        assert!(Polynomial::zero().has_repeated_root().is_err());
    }

    #[test]
    fn linear_power_examples() {
        let lp = p(&[2, -4, 2]).as_linear_power().unwrap().unwrap();
        assert_eq!((lp.root, lp.exponent, lp.scale), (int(1), 2, int(2)));
        assert_eq!(p(&[-1, 0, 1]).as_linear_power().unwrap(), None);
        let lp = p(&[7]).as_linear_power().unwrap().unwrap();
        assert_eq!((lp.root, lp.exponent, lp.scale), (int(0), 0, int(7)));
        assert!(Polynomial::zero().as_linear_power().is_err());
    }

    #[test]
    fn canonical_display() {
        assert_eq!(b2().to_string(), "x^2 - x + 1/6");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::monomial(rat(-3, 2), 3).to_string(), "-3/2*x^3");
        assert_eq!(p(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2*x");
    }

    #[test]
    fn definite_integral_of_shifted_linear() {
        let f = Polynomial::new(vec![rat(-1, 2), int(1)]);
        assert!(f.definite_integral(&int(0), &int(1)).is_zero());
    }
}
