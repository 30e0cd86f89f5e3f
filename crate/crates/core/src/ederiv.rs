//! E-derivations `δ = I - φ` of `Q[x]`, where `φ` substitutes `x ↦ w(x)`.
//!
//! The substitution falls into exactly one of four cases (constant `w`,
//! translation, scaling, degree ≥ 2); general affine maps are conjugated to a
//! pure scaling first. Membership in `Im δ` is decided per case, and
//! [`generic_member`] decides membership in `δ(u·Q[x])` for any `u` by an
//! exact linear solve.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::derivimage::verified;
use crate::qkernel::{solve_linear, Matrix, Polynomial, Rational};
use crate::translation::TranslationDelta;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EDerivation {
    w: Polynomial,
}

impl EDerivation {
    pub fn new(w: Polynomial) -> Self {
        EDerivation { w }
    }

    pub fn w(&self) -> &Polynomial {
        &self.w
    }

    /// `f - f∘w`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        f - &f.compose(&self.w)
    }

    pub fn case(&self) -> CaseTag {
        classify_case(&self.w)
    }
}

/// Which of the four substitution families `w` belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag {
    /// `w = c` (including `w = 0`).
    ConstW(Rational),
    /// `w = x + c`.
    Translation(Rational),
    /// `w = q x + b` with `q ∉ {0, 1}`. Conjugating by `x ↦ x + shift`
    /// turns the substitution into `x ↦ q x`; `shift = 0` for pure scalings.
    Scaling { q: Rational, shift: Rational },
    /// `deg w = d ≥ 2`.
    HighDegree(usize),
}

pub fn classify_case(w: &Polynomial) -> CaseTag {
    match w.degree() {
        None => CaseTag::ConstW(Rational::zero()),
        Some(0) => CaseTag::ConstW(w.coeff(0)),
        Some(1) => {
            let (a, b) = (w.coeff(1), w.coeff(0));
            if a.is_one() {
                CaseTag::Translation(b)
            } else {
                let shift = normalize_affine(&a, &b).expect("a is neither 0 nor 1");
                CaseTag::Scaling { q: a, shift }
            }
        }
        Some(d) => CaseTag::HighDegree(d),
    }
}

/// Shift `s = b / (1 - a)` such that conjugating `x ↦ a x + b` by
/// `ψ: x ↦ x + s` gives `x ↦ a x`.
pub fn normalize_affine(a: &Rational, b: &Rational) -> Result<Rational> {
    if a.is_zero() || a.is_one() {
        return Err(Error::DegenerateAffine);
    }
    let s = b / (Rational::one() - a);
    // ψ φ ψ⁻¹ (x) = w(x + s) - s
    let w = Polynomial::new(alloc::vec![b.clone(), a.clone()]);
    let conjugated = &w.compose(&Polynomial::shift(&s)) - &Polynomial::constant(s.clone());
    assert_eq!(conjugated, Polynomial::monomial(a.clone(), 1));
    Ok(s)
}

/// Membership in `Im δ` for `δ = I - φ`, `φ(x) = w`; returns a preimage.
pub fn im_delta_member(w: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let delta = EDerivation::new(w.clone());
    let witness = match classify_case(w) {
        CaseTag::ConstW(c) => f.eval(&c).is_zero().then(|| f.clone())?,
        CaseTag::Translation(c) if c.is_zero() => f.is_zero().then(Polynomial::zero)?,
        CaseTag::Translation(c) => TranslationDelta::new(c)
            .expect("c is nonzero")
            .preimage_full(&Rational::zero(), f),
        CaseTag::Scaling { q, shift } => {
            let centered = f.compose(&Polynomial::shift(&shift));
            scaling_preimage(&q, &centered)?.compose(&Polynomial::shift(&-shift))
        }
        CaseTag::HighDegree(d) => high_degree_preimage(w, d, f)?,
    };
    Some(verified(witness, |u| delta.apply(u), f))
}

/// Preimage under `u ↦ u(x) - u(q x)`, which scales `x^n` by `1 - q^n`.
fn scaling_preimage(q: &Rational, f: &Polynomial) -> Option<Polynomial> {
    if q.is_one() {
        return f.is_zero().then(Polynomial::zero);
    }
    let mut qn = Rational::one();
    let mut coeffs = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let factor = Rational::one() - &qn;
        qn *= q;
        if factor.is_zero() {
            // n = 0, or n even when q = -1
            if !c.is_zero() {
                return None;
            }
            coeffs.push(Rational::zero());
        } else {
            coeffs.push(c / factor);
        }
    }
    Some(Polynomial::new(coeffs))
}

/// Triangular solve in the basis `δ(x^j) = x^j - w^j`, which has degree `d·j`.
fn high_degree_preimage(w: &Polynomial, d: usize, f: &Polynomial) -> Option<Polynomial> {
    let Some(deg) = f.degree() else {
        return Some(Polynomial::zero());
    };
    if deg == 0 || deg % d != 0 {
        return None;
    }
    let lc = w.leading_coeff().expect("deg w ≥ 2");
    let delta = EDerivation::new(w.clone());
    let mut residual = f.clone();
    let mut u = alloc::vec![Rational::zero(); deg / d + 1];
    let mut lc_pow = Rational::one();
    let lc_pows: Vec<Rational> = (0..=deg / d)
        .map(|_| {
            let cur = lc_pow.clone();
            lc_pow *= lc;
            cur
        })
        .collect();
    for j in (1..=deg / d).rev() {
        let target = residual.coeff(d * j);
        if target.is_zero() {
            continue;
        }
        let uj = -target / &lc_pows[j];
        residual -= &delta.apply(&Polynomial::monomial(uj.clone(), j));
        u[j] = uj;
    }
    residual.is_zero().then(|| Polynomial::new(u))
}

/// `f = f1 + utilde∘w` with `f1` supported on exponents not divisible by `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub f1: Polynomial,
    pub utilde: Polynomial,
    /// `deg f1`, or 0 when `f1 = 0`.
    pub ell: usize,
}

pub fn decompose_uw(w: &Polynomial, f: &Polynomial) -> Result<Decomposition> {
    let d = match w.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::DegreeTooLow { required: 2 }),
    };
    let lc = w.leading_coeff().expect("nonzero").clone();
    let mut residual = f.clone();
    let mut f1 = Vec::new();
    let mut utilde = Vec::new();
    while let Some(n) = residual.degree() {
        let top = residual.coeff(n);
        if n % d == 0 {
            let k = n / d;
            let t = &top / num_traits::pow(lc.clone(), k);
            residual -= &w.pow(k as u32).scale(&t);
            set(&mut utilde, k, t);
        } else {
            residual -= &Polynomial::monomial(top.clone(), n);
            set(&mut f1, n, top);
        }
    }
    let f1 = Polynomial::new(f1);
    let ell = f1.degree().unwrap_or(0);
    Ok(Decomposition {
        f1,
        utilde: Polynomial::new(utilde),
        ell,
    })
}

fn set(v: &mut Vec<Rational>, i: usize, c: Rational) {
    if v.len() <= i {
        v.resize(i + 1, Rational::zero());
    }
    v[i] = c;
}

pub fn ell(w: &Polynomial, f: &Polynomial) -> Result<usize> {
    decompose_uw(w, f).map(|dec| dec.ell)
}

/// For `f = δ(u)` lying in `Q[w]`, say `f = f̃∘w`, returns `(f̃, ũ)` with
/// `ũ = f̃ + u` and `δ(ũ) = f̃`. `None` when `f ∉ Q[w]`.
pub fn descend_in_w(
    w: &Polynomial,
    f: &Polynomial,
    u: &Polynomial,
) -> Result<Option<(Polynomial, Polynomial)>> {
    let dec = decompose_uw(w, f)?;
    if !dec.f1.is_zero() {
        return Ok(None);
    }
    let delta = EDerivation::new(w.clone());
    assert_eq!(&delta.apply(u), f, "u is not a preimage of f");
    let ftilde = dec.utilde;
    let utilde = &ftilde + u;
    let utilde = verified(utilde, |g| delta.apply(g), &ftilde);
    Ok(Some((ftilde, utilde)))
}

/// Degree bound for [`generic_member`] from degree bookkeeping of each case.
pub fn default_gdeg_bound(w: &Polynomial, u: &Polynomial, f: &Polynomial) -> i64 {
    let (Some(df), Some(du)) = (f.degree(), u.degree()) else {
        return 0;
    };
    let (df, du) = (df as i64, du as i64);
    let bound = match classify_case(w) {
        CaseTag::Translation(c) if c.is_zero() => 0,
        CaseTag::Translation(_) => df + 1 - du,
        CaseTag::HighDegree(d) => df / d as i64 - du,
        CaseTag::Scaling { .. } | CaseTag::ConstW(_) => df - du + 2,
    };
    bound.max(0)
}

/// Decides `f ∈ δ(u·Q[x])` by solving `f = u g - (u∘w)(g∘w)` for `g` with
/// `deg g ≤ gdeg_bound`. Returns the (verified) `g`.
pub fn generic_member(
    w: &Polynomial,
    u: &Polynomial,
    f: &Polynomial,
    gdeg_bound: i64,
) -> Result<Option<Polynomial>> {
    if u.is_zero() {
        return Err(Error::ZeroArgument("ideal generator u"));
    }
    if gdeg_bound < 0 {
        return Err(Error::NegativeBound(gdeg_bound));
    }
    if f.is_zero() {
        return Ok(Some(Polynomial::zero()));
    }
    let delta = EDerivation::new(w.clone());
    let unknowns = gdeg_bound as usize + 1;
    let columns: Vec<Polynomial> = (0..unknowns)
        .map(|i| delta.apply(&(u * &Polynomial::monomial(Rational::one(), i))))
        .collect();
    let rows = columns
        .iter()
        .chain(core::iter::once(f))
        .filter_map(Polynomial::degree)
        .max()
        .unwrap_or(0)
        + 1;
    let mut a = Matrix::zeros(rows, unknowns);
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.coeffs().iter().enumerate() {
            a.set(i, j, c.clone());
        }
    }
    let b: Vec<Rational> = (0..rows).map(|i| f.coeff(i)).collect();
    let outcome = solve_linear(&a, &b)?;
    Ok(outcome.solution().map(|sol| {
        let g = Polynomial::new(sol.to_vec());
        verified(g, |g| delta.apply(&(u * g)), f)
    }))
}

/// [`generic_member`] with [`default_gdeg_bound`].
pub fn generic_member_default(
    w: &Polynomial,
    u: &Polynomial,
    f: &Polynomial,
) -> Result<Option<Polynomial>> {
    generic_member(w, u, f, default_gdeg_bound(w, u, f))
}

/// Whether `q` has finite multiplicative order in `Q^*` (only `±1`).
pub fn is_rational_root_of_unity(q: &Rational) -> bool {
    q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn apply_examples() {
        let d = EDerivation::new(p(&[1, 1]));
        assert_eq!(d.apply(&p(&[0, 0, 1])), p(&[-1, -2]));
        assert!(d.apply(&p(&[9])).is_zero());
        let scale = EDerivation::new(p(&[0, 3]));
        assert_eq!(scale.apply(&p(&[0, 0, 0, 1])), p(&[0, 0, 0, -26]));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_case(&p(&[3])), CaseTag::ConstW(int(3)));
        assert_eq!(classify_case(&Polynomial::zero()), CaseTag::ConstW(int(0)));
        assert_eq!(classify_case(&p(&[-2, 1])), CaseTag::Translation(int(-2)));
        assert_eq!(
            classify_case(&p(&[1, 2])),
            CaseTag::Scaling { q: int(2), shift: int(-1) }
        );
        assert_eq!(
            classify_case(&p(&[0, -1])),
            CaseTag::Scaling { q: int(-1), shift: int(0) }
        );
        assert_eq!(classify_case(&p(&[0, 1, 5])), CaseTag::HighDegree(2));
    }

    #[test]
    fn affine_normalization() {
        assert_eq!(normalize_affine(&int(2), &int(1)), Ok(int(-1)));
        assert_eq!(normalize_affine(&int(-1), &int(0)), Ok(int(0)));
        assert_eq!(normalize_affine(&int(3), &int(4)), Ok(int(-2)));
        assert_eq!(normalize_affine(&int(1), &int(4)), Err(Error::DegenerateAffine));
        assert_eq!(normalize_affine(&int(0), &int(4)), Err(Error::DegenerateAffine));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(im_delta_member(&p(&[5]), &p(&[-5, 1])), Some(p(&[-5, 1])));
        assert_eq!(
            im_delta_member(&p(&[0, 2]), &p(&[0, 0, 0, 1])),
            Some(Polynomial::monomial(rat(-1, 7), 3))
        );
        let x2 = p(&[0, 0, 1]);
        assert_eq!(im_delta_member(&x2, &p(&[0, 1, -1])), Some(Polynomial::x()));
        assert_eq!(im_delta_member(&x2, &x2), None);
        // q = -1 keeps only odd exponents
        assert!(im_delta_member(&p(&[0, -1]), &p(&[0, 3, 0, 1])).is_some());
        assert!(im_delta_member(&p(&[0, -1]), &p(&[0, 3, 1])).is_none());
        // w = 2x + 1 fixes -1, so images vanish there
        assert!(im_delta_member(&p(&[1, 2]), &p(&[1, 1])).is_some());
        assert!(im_delta_member(&p(&[1, 2]), &p(&[0, 1])).is_none());
        // identity map has zero image
        assert!(im_delta_member(&Polynomial::x(), &Polynomial::one()).is_none());
        assert!(im_delta_member(&Polynomial::x(), &Polynomial::zero()).is_some());
        // translations are onto
        assert!(im_delta_member(&p(&[3, 1]), &p(&[7, 0, 2])).is_some());
    }

    #[test]
    fn decomposition_examples() {
        let x2 = p(&[0, 0, 1]);
        let dec = decompose_uw(&x2, &p(&[0, 0, 1, 1])).unwrap();
        assert_eq!(dec, Decomposition { f1: p(&[0, 0, 0, 1]), utilde: p(&[0, 1]), ell: 3 });
        let dec = decompose_uw(&x2, &p(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(dec, Decomposition { f1: Polynomial::zero(), utilde: p(&[0, 0, 1]), ell: 0 });
        let dec = decompose_uw(&p(&[1, 0, 1]), &x2).unwrap();
        assert_eq!(dec, Decomposition { f1: Polynomial::zero(), utilde: p(&[-1, 1]), ell: 0 });
        assert!(decompose_uw(&p(&[0, 1]), &x2).is_err());
    }

    #[test]
    fn ell_examples() {
        let x2 = p(&[0, 0, 1]);
        assert_eq!(ell(&x2, &p(&[0, 0, 0, 0, 0, 1])), Ok(5));
        assert_eq!(ell(&x2, &p(&[0, 0, 0, 0, 1])), Ok(0));
        assert_eq!(ell(&x2, &p(&[0, 1, 0, 0, 1])), Ok(1));
    }

    #[test]
    fn generic_membership_examples() {
        let x1 = p(&[1, 1]);
        let x = Polynomial::x();
        assert_eq!(
            generic_member_default(&x1, &x, &Polynomial::one()).unwrap(),
            Some(p(&[-1]))
        );
        assert_eq!(
            generic_member_default(&x1, &p(&[0, 0, 1]), &Polynomial::one()).unwrap(),
            None
        );
        let u = p(&[-1, 0, 1]);
        let w = p(&[0, 2]);
        assert_eq!(generic_member_default(&w, &u, &x).unwrap(), None);
        assert_eq!(
            generic_member_default(&w, &u, &p(&[0, 0, -3])).unwrap(),
            Some(Polynomial::one())
        );
        assert!(generic_member(&w, &u, &x, -1).is_err());
        assert!(generic_member(&w, &Polynomial::zero(), &x, 2).is_err());
    }

    #[test]
    fn descend_constructs_witness() {
        let w = p(&[0, 1, 1]);
        let u = p(&[0, 0, 1]).compose(&w);
        let delta = EDerivation::new(w.clone());
        let f = delta.apply(&u);
        let (ftilde, utilde) = descend_in_w(&w, &f, &u).unwrap().unwrap();
        assert_eq!(ftilde.compose(&w), f);
        assert_eq!(delta.apply(&utilde), ftilde);
    }
}
