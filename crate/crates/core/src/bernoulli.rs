//! Bernoulli numbers `B_n`, Bernoulli polynomials `B_n(t)` and the family
//! `D_n(t) = (B_{n+1}(t) - B_{n+1}) / ((n+1) t)`.
//!
//! Numbers come from the integer-binomial recurrence
//! `Σ_{k=0}^{n} C(n+1, k) B_k = 0` (n ≥ 1, `B_0 = 1`), which keeps everything
//! exact without power-series machinery.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::qkernel::{is_prime, Polynomial, Rational};
use crate::{Error, Result};

/// Append-only table of Bernoulli data.
///
/// Every table is a prefix of an infinite sequence: extending it never
/// changes an entry that is already present. Sharing across threads is done
/// by wrapping the cache in a lock (or by cloning a pre-warmed cache per
/// worker); the values themselves are fully determined by their index.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    numbers: Vec<Rational>,
    pascal: Vec<Vec<BigInt>>,
    d_polys: Vec<Polynomial>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            numbers: vec![Rational::one()],
            pascal: vec![vec![BigInt::one()]],
            d_polys: Vec::new(),
        }
    }

    /// Number of Bernoulli numbers currently stored.
    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    fn extend_pascal(&mut self, n: usize) {
        while self.pascal.len() <= n {
            let prev = self.pascal.last().expect("row 0 always present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            self.pascal.push(row);
        }
    }

    /// Row `n` of Pascal's triangle.
    pub fn binomial_row(&mut self, n: usize) -> &[BigInt] {
        self.extend_pascal(n);
        &self.pascal[n]
    }

    pub fn binomial(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.binomial_row(n)[k].clone()
    }

    /// `B_0, ..., B_n`.
    pub fn numbers(&mut self, n: usize) -> &[Rational] {
        self.extend_pascal(n + 1);
        while self.numbers.len() <= n {
            let m = self.numbers.len();
            let row = &self.pascal[m + 1];
            let mut sum = Rational::zero();
            for (k, b) in self.numbers.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * &row[k];
                }
            }
            // C(m+1, m) = m + 1
            let next = -sum / BigInt::from(m + 1);
            self.numbers.push(next);
        }
        &self.numbers[..=n]
    }

    pub fn number(&mut self, n: usize) -> Rational {
        self.numbers(n)[n].clone()
    }

    /// `B_n(t) = Σ_k C(n, k) B_k t^{n-k}`.
    pub fn poly(&mut self, n: usize) -> Polynomial {
        self.numbers(n);
        let row = &self.pascal[n];
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, b) in self.numbers[..=n].iter().enumerate() {
            coeffs[n - k] = b * &row[k];
        }
        Polynomial::new(coeffs)
    }

    /// `D_n(t) = 1/(n+1) Σ_{i=0}^{n} C(n+1, i) B_i t^{n-i}`.
    ///
    /// Computed by the closed form and checked once against the exact
    /// quotient `(B_{n+1}(t) - B_{n+1}) / ((n+1) t)`.
    pub fn d_poly(&mut self, n: usize) -> &Polynomial {
        while self.d_polys.len() <= n {
            let k = self.d_polys.len();
            let d = self.d_poly_closed_form(k);
            let by_division = self.d_poly_by_division(k);
            assert_eq!(d, by_division, "D_{k} closed form disagrees with the quotient form");
            self.d_polys.push(d);
        }
        &self.d_polys[n]
    }

    fn d_poly_closed_form(&mut self, n: usize) -> Polynomial {
        self.numbers(n + 1);
        let row = &self.pascal[n + 1];
        let norm = BigInt::from(n + 1);
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, b) in self.numbers[..=n].iter().enumerate() {
            coeffs[n - i] = b * &row[i] / &norm;
        }
        Polynomial::new(coeffs)
    }

    fn d_poly_by_division(&mut self, n: usize) -> Polynomial {
        let numerator = &self.poly(n + 1) - &Polynomial::constant(self.number(n + 1));
        let denominator = Polynomial::monomial(Rational::from_integer(BigInt::from(n + 1)), 1);
        let (q, r) = numerator
            .div_rem(&denominator)
            .expect("divisor is nonzero");
        assert!(r.is_zero(), "B_{}(t) - B_{} is not divisible by t", n + 1, n + 1);
        q
    }

    /// `D_0(β), ..., D_n(β)`.
    pub fn d_values(&mut self, beta: &Rational, n: usize) -> Vec<Rational> {
        self.d_poly(n);
        self.d_polys[..=n].iter().map(|d| d.eval(beta)).collect()
    }

    /// Coordinates of `f` in the basis `B_0(x), B_1(x), ...`.
    pub fn v01_coords(&mut self, f: &Polynomial) -> Vec<Rational> {
        let Some(deg) = f.degree() else {
            return Vec::new();
        };
        let mut residual = f.clone();
        let mut coords = vec![Rational::zero(); deg + 1];
        for i in (0..=deg).rev() {
            let c = residual.coeff(i);
            if !c.is_zero() {
                residual -= &self.poly(i).scale(&c);
                coords[i] = c;
            }
        }
        debug_assert!(residual.is_zero());
        coords
    }

    /// Whether `∫_0^1 f = 0`, read off as a vanishing `B_0` coordinate.
    pub fn in_v01(&mut self, f: &Polynomial) -> bool {
        self.v01_coords(f).first().is_none_or(Zero::is_zero)
    }

    /// `B_n + Σ_{q prime, (q-1) | n} 1/q` for even `n ≥ 2`.
    pub fn clausen_staudt_defect(&mut self, n: u64) -> Result<Rational> {
        if n < 2 || n % 2 == 1 {
            return Err(Error::InvalidIndex(n));
        }
        let mut defect = self.number(n as usize);
        for q in clausen_staudt_primes(n) {
            defect += Rational::new(BigInt::one(), BigInt::from(q));
        }
        Ok(defect)
    }
}

/// Primes `q` with `(q - 1) | n`, ascending.
pub fn clausen_staudt_primes(n: u64) -> Vec<u64> {
    let mut divisors: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            divisors.push(d);
            if d != n / d {
                divisors.push(n / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    divisors
        .into_iter()
        .map(|d| d + 1)
        .filter(|&q| is_prime(q))
        .collect()
}

pub fn bernoulli_number(n: usize) -> Rational {
    BernoulliCache::new().number(n)
}

pub fn bernoulli_poly(n: usize) -> Polynomial {
    BernoulliCache::new().poly(n)
}

pub fn d_poly(n: usize) -> Polynomial {
    BernoulliCache::new().d_poly(n).clone()
}

pub fn clausen_staudt_defect(n: u64) -> Result<Rational> {
    BernoulliCache::new().clausen_staudt_defect(n)
}

pub fn v01_coords(f: &Polynomial) -> Vec<Rational> {
    BernoulliCache::new().v01_coords(f)
}

pub fn in_v01(f: &Polynomial) -> bool {
    BernoulliCache::new().in_v01(f)
}
