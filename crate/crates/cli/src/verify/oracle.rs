use derivimage_core::qkernel::{solve_linear, Matrix};
use derivimage_core::{Polynomial, Rational};
use num_traits::One;

/// Some `g` with `deg g ≤ bound` and `op(g) = f`, by solving the matrix of
/// the linear map `op` on the monomial basis.
pub fn linear_preimage(
    op: impl Fn(&Polynomial) -> Polynomial,
    f: &Polynomial,
    bound: usize,
) -> Option<Polynomial> {
    let cols: Vec<Polynomial> = (0..=bound)
        .map(|i| op(&Polynomial::monomial(Rational::one(), i)))
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
        for (i, c) in col.coeffs().iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    let b: Vec<Rational> = (0..rows).map(|i| f.coeff(i)).collect();
    let outcome = solve_linear(&m, &b).expect("dimensions agree by construction");
    let g = Polynomial::new(outcome.solution()?.to_vec());
    assert_eq!(&op(&g), f, "solver returned a non-solution");
    Some(g)
}
