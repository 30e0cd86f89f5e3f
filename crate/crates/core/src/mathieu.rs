//! Homogeneous Mathieu subspaces of `Q[x]` and empirical radical checks.
//!
//! A homogeneous subspace is a span of monomials, so it is identified with
//! its exponent set. Every set handled here is eventually periodic, which
//! makes the "contains a full ray `dℕ⁺`" condition decidable.
//!
//! The truncated checks ([`ms_check_truncated`], [`radical_scan`]) only look at
//! finitely many powers. They falsify and regress; they never certify.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::qkernel::{Polynomial, Rational};
use crate::{Error, Result};

/// `{n < T : n ∈ exceptional} ∪ {n ≥ T : n mod M ∈ residues or n ∈ exceptional}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    exceptional: BTreeSet<u64>,
    modulus: u64,
    residues: BTreeSet<u64>,
    threshold: u64,
}

impl ExponentSet {
    /// Canonicalizes: residues are reduced mod `modulus`, and exceptional
    /// points already covered by the periodic part are dropped.
    pub fn new(
        exceptional: impl IntoIterator<Item = u64>,
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        threshold: u64,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroArgument("modulus"));
        }
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        let exceptional = exceptional
            .into_iter()
            .filter(|&n| n < threshold || !residues.contains(&(n % modulus)))
            .collect();
        Ok(ExponentSet {
            exceptional,
            modulus,
            residues,
            threshold,
        })
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        Self::new(elements, 1, [], 0).expect("modulus 1")
    }

    /// `{n ≥ start}`.
    pub fn from_threshold(start: u64) -> Self {
        Self::new([], 1, [0], start).expect("modulus 1")
    }

    /// Positive `n` with `n mod modulus ∈ residues`.
    pub fn periodic_positive(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new([], modulus, residues, 1)
    }

    pub fn exceptional(&self) -> &BTreeSet<u64> {
        &self.exceptional
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn contains(&self, n: u64) -> bool {
        if self.exceptional.contains(&n) {
            return true;
        }
        n >= self.threshold && self.residues.contains(&(n % self.modulus))
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    /// Contains every `n ≥ N` for some `N`.
    pub fn is_cofinite(&self) -> bool {
        self.residues.len() as u64 == self.modulus
    }

    /// Equals all of `ℕ`.
    pub fn is_everything(&self) -> bool {
        self.is_cofinite() && (0..self.threshold).all(|n| self.contains(n))
    }

    /// Whether every exponent in the support of `f` is in the set. This is
    /// membership in the spanned homogeneous subspace.
    pub fn spans(&self, f: &Polynomial) -> bool {
        f.support().all(|n| self.contains(n as u64))
    }
}

/// Least `d ≥ 1` with `d, 2d, 3d, ... ∈ S`, if any.
///
/// For `m d ≥ T` the residues `m d mod M` sweep exactly the multiples of
/// `gcd(d, M)`; below `T` only finitely many multiples need checking. Any
/// multiple of `M` clearing the threshold is a ray when `0` is a residue, so
/// the search stops at `T + M`.
pub fn has_multiple_ray(s: &ExponentSet) -> Option<u64> {
    if !s.residues.contains(&0) {
        return None;
    }
    let m = s.modulus;
    (1..=s.threshold + m).find(|&d| {
        let g = d.gcd(&m);
        (0..m).step_by(g as usize).all(|r| s.residues.contains(&r))
            && (1..)
                .map(|k| k * d)
                .take_while(|&n| n < s.threshold)
                .all(|n| s.contains(n))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsClause {
    /// `V = Q[x]`.
    Full,
    /// Finite-dimensional and `1 ∉ V`.
    FiniteDimNoOne,
    /// `1 ∉ V` and `V ⊇ (x^N)`.
    CofiniteNoOne,
    /// Infinite, not cofinite, `1 ∉ V`, no ray of multiples.
    SparseNoRay,
    NotMS,
}

impl MsClause {
    pub fn is_ms(self) -> bool {
        self != MsClause::NotMS
    }
}

/// Classification of a homogeneous subspace.
///
/// For `NotMS`, `witness = Some(d)` names `a = x^d` with every power inside
/// `V` while some `a^m b` leaves it for all large `m`. `d = 0` is the case
/// `1 ∈ V ≠ Q[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsVerdict {
    pub clause: MsClause,
    pub witness: Option<u64>,
}

pub fn classify_homogeneous(
    s: &ExponentSet,
    contains_constants: bool,
    finite_dim: bool,
) -> Result<MsVerdict> {
    if finite_dim != s.is_finite() {
        return Err(Error::InconsistentFlags("finite_dim disagrees with the exponent set"));
    }
    if contains_constants != s.contains(0) {
        return Err(Error::InconsistentFlags("contains_constants disagrees with the exponent set"));
    }
    let verdict = |clause, witness| Ok(MsVerdict { clause, witness });
    if contains_constants {
        return if s.is_everything() {
            verdict(MsClause::Full, None)
        } else {
            verdict(MsClause::NotMS, Some(0))
        };
    }
    if finite_dim {
        return verdict(MsClause::FiniteDimNoOne, None);
    }
    if s.is_cofinite() {
        return verdict(MsClause::CofiniteNoOne, None);
    }
    match has_multiple_ray(s) {
        None => verdict(MsClause::SparseNoRay, None),
        Some(d) => verdict(MsClause::NotMS, Some(d)),
    }
}

/// [`classify_homogeneous`] with the flags read off the set.
pub fn classify_exponent_set(s: &ExponentSet) -> MsVerdict {
    classify_homogeneous(s, s.contains(0), s.is_finite()).expect("flags derived from the set")
}

/// Outcome for one candidate `a` of [`ms_check_truncated`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCheck {
    pub candidate: Polynomial,
    /// `a^m ∈ V` for every `m` in the window.
    pub powers_in_v: bool,
    /// `(k, m)`: `a^{m'} x^k ∈ V` for all `m ≤ m' ≤ window`, `m` least.
    pub stable_from: Vec<(usize, u32)>,
    /// Exponents `k` with `a^window x^k ∉ V`.
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedMsReport {
    pub power_window: u32,
    pub multiplier_degree: usize,
    pub candidates: Vec<CandidateCheck>,
}

impl TruncatedMsReport {
    pub fn has_violation(&self) -> bool {
        self.candidates.iter().any(|c| !c.violations.is_empty())
    }

    pub fn violation_for(&self, candidate: &Polynomial) -> bool {
        self.candidates
            .iter()
            .any(|c| &c.candidate == candidate && !c.violations.is_empty())
    }
}

/// Empirical Mathieu-subspace check over a finite window of powers.
pub fn ms_check_truncated(
    member: &dyn Fn(&Polynomial) -> bool,
    candidates: &[Polynomial],
    power_window: u32,
    multiplier_degree: usize,
) -> Result<TruncatedMsReport> {
    if power_window < 2 {
        return Err(Error::InvalidIndex(power_window as u64));
    }
    let candidates = candidates
        .iter()
        .map(|a| check_candidate(member, a, power_window, multiplier_degree))
        .collect();
    Ok(TruncatedMsReport {
        power_window,
        multiplier_degree,
        candidates,
    })
}

fn check_candidate(
    member: &dyn Fn(&Polynomial) -> bool,
    a: &Polynomial,
    window: u32,
    multiplier_degree: usize,
) -> CandidateCheck {
    let powers: Vec<Polynomial> = core::iter::successors(Some(a.clone()), |p| Some(p * a))
        .take(window as usize)
        .collect();
    let powers_in_v = powers.iter().all(member);
    let mut check = CandidateCheck {
        candidate: a.clone(),
        powers_in_v,
        stable_from: Vec::new(),
        violations: Vec::new(),
    };
    if !powers_in_v {
        return check;
    }
    for k in 0..=multiplier_degree {
        let b = Polynomial::monomial(Rational::from_integer(1.into()), k);
        // walk down from the top of the window while membership holds
        let mut least = None;
        for (idx, p) in powers.iter().enumerate().rev() {
            if member(&(p * &b)) {
                least = Some(idx as u32 + 1);
            } else {
                break;
            }
        }
        match least {
            Some(m) => check.stable_from.push((k, m)),
            None => check.violations.push(k),
        }
    }
    check
}

/// All nonzero polynomials of degree ≤ `deg_bound` with coefficients from
/// `coeff_samples`, in lexicographic order of the ascending coefficient list.
pub fn enumerate_candidates(deg_bound: usize, coeff_samples: &[Rational]) -> Vec<Polynomial> {
    let k = coeff_samples.len();
    if k == 0 {
        return Vec::new();
    }
    let len = deg_bound + 1;
    let mut idx = alloc::vec![0usize; len];
    let mut out = Vec::new();
    loop {
        let f = Polynomial::new(idx.iter().map(|&i| coeff_samples[i].clone()).collect());
        if !f.is_zero() {
            out.push(f);
        }
        let mut pos = 0;
        loop {
            if pos == len {
                return dedup_sorted(out);
            }
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn dedup_sorted(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = alloc::collections::BTreeSet::new();
    v.retain(|p| seen.insert(alloc::format!("{p}")));
    v
}

/// Whether `f^m ∈ V` for every `1 ≤ m ≤ window`.
pub fn survives(member: &dyn Fn(&Polynomial) -> bool, f: &Polynomial, window: u32) -> bool {
    let mut power = f.clone();
    for m in 1..=window {
        if !member(&power) {
            return false;
        }
        if m < window {
            power = &power * f;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalScanReport {
    pub tested: usize,
    pub power_window: u32,
    pub survivors: Vec<Polynomial>,
}

/// Reports every enumerated `f` whose first `power_window` powers all lie in
/// `V`. A radical-zero subspace should yield no survivors.
pub fn radical_scan(
    member: &dyn Fn(&Polynomial) -> bool,
    deg_bound: usize,
    coeff_samples: &[Rational],
    power_window: u32,
) -> Result<RadicalScanReport> {
    if power_window < 1 {
        return Err(Error::InvalidIndex(0));
    }
    let candidates = enumerate_candidates(deg_bound, coeff_samples);
    let survivors = candidates
        .iter()
        .filter(|f| survives(member, f, power_window))
        .cloned()
        .collect();
    Ok(RadicalScanReport {
        tested: candidates.len(),
        power_window,
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn odd() -> ExponentSet {
        ExponentSet::periodic_positive(2, [1]).unwrap()
    }

    fn multiples_of(d: u64) -> ExponentSet {
        ExponentSet::periodic_positive(d, [0]).unwrap()
    }

    #[test]
    fn membership_and_canonical_form() {
        let s = ExponentSet::new([1, 4, 6, 30], 5, [0, 7], 10).unwrap();
        assert_eq!(s.residues().iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        // 30 ≡ 0 is covered by the periodic part
        assert_eq!(s.exceptional().iter().copied().collect::<Vec<_>>(), vec![1, 4, 6]);
        assert!(s.contains(4) && s.contains(12) && s.contains(15) && !s.contains(5));
        let again = ExponentSet::new(
            s.exceptional().iter().copied(),
            s.modulus(),
            s.residues().iter().copied(),
            s.threshold(),
        )
        .unwrap();
        assert_eq!(again, s);
        assert!(ExponentSet::new([], 0, [], 0).is_err());
    }

    #[test]
    fn ray_examples() {
        assert_eq!(has_multiple_ray(&ExponentSet::from_threshold(1)), Some(1));
        assert_eq!(has_multiple_ray(&odd()), None);
        assert_eq!(has_multiple_ray(&multiples_of(3)), Some(3));
        // {1} ∪ {15, 20, 25, ...}
        let s = ExponentSet::new([1], 5, [0], 11).unwrap();
        assert_eq!(has_multiple_ray(&s), Some(15));
        assert_eq!(has_multiple_ray(&ExponentSet::finite([1, 2, 3])), None);
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(
            classify_homogeneous(&odd(), false, false).unwrap(),
            MsVerdict { clause: MsClause::SparseNoRay, witness: None }
        );
        assert_eq!(
            classify_homogeneous(&ExponentSet::from_threshold(2), false, false).unwrap(),
            MsVerdict { clause: MsClause::CofiniteNoOne, witness: None }
        );
        assert_eq!(
            classify_homogeneous(&multiples_of(3), false, false).unwrap(),
            MsVerdict { clause: MsClause::NotMS, witness: Some(3) }
        );
        assert_eq!(
            classify_exponent_set(&ExponentSet::from_threshold(0)).clause,
            MsClause::Full
        );
        assert_eq!(
            classify_exponent_set(&ExponentSet::finite([0, 2])),
            MsVerdict { clause: MsClause::NotMS, witness: Some(0) }
        );
        assert_eq!(
            classify_exponent_set(&ExponentSet::finite([2, 5])).clause,
            MsClause::FiniteDimNoOne
        );
        assert!(classify_homogeneous(&odd(), true, false).is_err());
        assert!(classify_homogeneous(&odd(), false, true).is_err());
    }

    #[test]
    fn truncated_check_on_ideal() {
        let member = |f: &Polynomial| Polynomial::x().divides(f);
        let report = ms_check_truncated(&member, &[Polynomial::x()], 6, 3).unwrap();
        assert!(!report.has_violation());
        assert!(report.candidates[0].powers_in_v);
        assert!(ms_check_truncated(&member, &[], 1, 3).is_err());
    }

    #[test]
    fn truncated_check_flags_even_span() {
        let evens = ExponentSet::periodic_positive(2, [0]).unwrap();
        let member = |f: &Polynomial| evens.spans(f);
        let x2 = Polynomial::monomial(int(1), 2);
        let report = ms_check_truncated(&member, &[x2.clone()], 8, 2).unwrap();
        assert!(report.violation_for(&x2));
        assert_eq!(report.candidates[0].violations, vec![1]);
    }

    #[test]
    fn enumeration_counts() {
        let coeffs: Vec<Rational> = (-2..=2).map(int).collect();
        assert_eq!(enumerate_candidates(3, &coeffs).len(), 624);
        assert_eq!(enumerate_candidates(0, &coeffs).len(), 4);
    }

    #[test]
    fn scan_negative_control() {
        let member = |f: &Polynomial| Polynomial::x().divides(f);
        let coeffs: Vec<Rational> = (-1..=1).map(int).collect();
        let report = radical_scan(&member, 1, &coeffs, 5).unwrap();
        assert!(report.survivors.contains(&Polynomial::x()));
        assert_eq!(report.survivors.len(), 2);
    }
}
