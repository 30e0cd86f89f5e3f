//! Seeded sampling of test inputs.
//!
//! One 64-bit seed drives every run; each case draws from its own stream,
//! derived from the seed and the case id, so cases can run in any order.

use derivimage_core::{Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CaseRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a of the id folded into the seed.
pub fn case_seed(seed: u64, id: &str) -> u64 {
    let h = id
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix64(seed ^ h)
}

pub fn case_rng(seed: u64, id: &str) -> CaseRng {
    CaseRng::seed_from_u64(case_seed(seed, id))
}

pub fn int_in(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.gen_range(lo..=hi).into())
}

/// `n/d` with `n ∈ [-num, num]`, `d ∈ [1, den]`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn nonzero_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    loop {
        let r = rational(rng, num, den);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Degree drawn uniformly from `0..=max_degree`, integer coefficients in
/// `[lo, hi]`. May be zero.
pub fn poly(rng: &mut impl Rng, max_degree: usize, lo: i64, hi: i64) -> Polynomial {
    let deg = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=deg).map(|_| int_in(rng, lo, hi)).collect())
}

pub fn nonzero_poly(rng: &mut impl Rng, max_degree: usize, lo: i64, hi: i64) -> Polynomial {
    loop {
        let p = poly(rng, max_degree, lo, hi);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Rational coefficients `n/d`, `|n| ≤ num`, `d ≤ den`.
pub fn rational_poly(rng: &mut impl Rng, max_degree: usize, num: i64, den: i64) -> Polynomial {
    let deg = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=deg).map(|_| rational(rng, num, den)).collect())
}
