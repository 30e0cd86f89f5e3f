#![allow(dead_code)]

use derivimage_core::qkernel::{solve_linear, Matrix};
use derivimage_core::{int, Polynomial, Rational};
use proptest::prelude::*;

pub fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn poly_up_to(deg: usize, range: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-range..=range, 0..=deg + 1).prop_map(|c| Polynomial::from_ints(&c))
}

pub fn nonzero_poly_up_to(deg: usize, range: i64) -> impl Strategy<Value = Polynomial> {
    poly_up_to(deg, range).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn rat_poly_up_to(deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rat(), 0..=deg + 1).prop_map(Polynomial::new)
}

/// Solves `L(g) = f` over `deg g ≤ bound` for a linear operator `L`, by
/// building its matrix on the monomial basis. Independent of every library
/// membership routine; only the generic solver is shared.
pub fn linear_preimage(
    op: impl Fn(&Polynomial) -> Polynomial,
    f: &Polynomial,
    bound: usize,
) -> Option<Polynomial> {
    let cols: Vec<Polynomial> = (0..=bound)
        .map(|i| op(&Polynomial::monomial(int(1), i)))
        .collect();
    let rows = cols
        .iter()
        .chain(std::iter::once(f))
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0)
        + 1;
    let mut m = Matrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rows {
            m.set(i, j, col.coeff(i));
        }
    }
    let b: Vec<Rational> = (0..rows).map(|i| f.coeff(i)).collect();
    let g = Polynomial::new(solve_linear(&m, &b).unwrap().solution()?.to_vec());
    assert_eq!(&op(&g), f);
    Some(g)
}
