//! Radical falsification scans over named subspaces.

use std::cell::RefCell;

use derivimage_core::bernoulli::BernoulliCache;
use derivimage_core::derivimage::di_member;
use derivimage_core::mathieu::{enumerate_candidates, survives, ExponentSet};
use derivimage_core::translation::{QuadraticIdealSpec, RootedIdeal, TranslationDelta};
use derivimage_core::{int, Polynomial, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::SharedBernoulliCache;
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `d/dx` applied to `(x² - 1)·Q[x]`.
    DerivativeOfX2Minus1,
    /// `f ↦ f - f(x+1)` applied to `x²·Q[x]`.
    DeltaOfX2,
    /// `f ↦ f - f(x+1)` applied to `x²(x - 1)·Q[x]`.
    DeltaOfX2TimesXMinus1,
    /// `span{B_1, B_2, B_3}`.
    BernoulliSpan,
    /// The ideal `x·Q[x]`; `x` must survive.
    IdealX,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::DerivativeOfX2Minus1,
        Builtin::DeltaOfX2,
        Builtin::DeltaOfX2TimesXMinus1,
        Builtin::BernoulliSpan,
        Builtin::IdealX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::DerivativeOfX2Minus1 => "d-ideal-x2-minus-1",
            Builtin::DeltaOfX2 => "delta-ideal-x2",
            Builtin::DeltaOfX2TimesXMinus1 => "delta-ideal-x2-x-minus-1",
            Builtin::BernoulliSpan => "bernoulli-span-1-2-3",
            Builtin::IdealX => "ideal-x",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Builtin(Builtin),
    /// Span of the monomials with exponent in the set.
    Homogeneous(ExponentSet),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Builtin(b) => b.name().to_string(),
            Target::Homogeneous(s) => {
                serde_json::to_string(&json::ExponentSetJson::from(s)).expect("plain struct")
            }
        }
    }

    pub fn member(&self, f: &Polynomial, cache: &mut BernoulliCache) -> bool {
        let delta = || TranslationDelta::new(int(1)).expect("nonzero step");
        match self {
            Target::Builtin(Builtin::DerivativeOfX2Minus1) => {
                let u = Polynomial::from_ints(&[-1, 0, 1]);
                di_member(&u, f).expect("nonzero generator").is_some()
            }
            Target::Builtin(Builtin::DeltaOfX2) => {
                let d = delta();
                let spec = QuadraticIdealSpec::new(Rational::zero(), &d);
                d.quadratic_member(&spec, f, cache)
            }
            Target::Builtin(Builtin::DeltaOfX2TimesXMinus1) => {
                let ideal = RootedIdeal::new(vec![int(0), int(0), int(1)], int(1))
                    .expect("valid roots");
                delta().rational_rooted_member(&ideal, f, cache)
            }
            Target::Builtin(Builtin::BernoulliSpan) => {
                f.degree().is_none_or(|d| d <= 3) && cache.in_v01(f)
            }
            Target::Builtin(Builtin::IdealX) => Polynomial::x().divides(f),
            Target::Homogeneous(s) => s.spans(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub target: String,
    pub max_degree: usize,
    pub coeffs: Vec<Rational>,
    pub window: u32,
    pub tested: usize,
    pub survivors: Vec<Polynomial>,
}

impl ScanOutcome {
    pub fn summary(&self) -> String {
        let shown: Vec<String> = self.survivors.iter().take(5).map(ToString::to_string).collect();
        format!(
            "{}: {} candidates, window {}, {} survivors{}",
            self.target,
            self.tested,
            self.window,
            self.survivors.len(),
            if shown.is_empty() { String::new() } else { format!(" [{}]", shown.join("; ")) }
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target,
            "max_degree": self.max_degree,
            "coeffs": self.coeffs.iter().map(json::rat).collect::<Vec<_>>(),
            "window": self.window,
            "tested": self.tested,
            "survivor_count": self.survivors.len(),
            "survivors": self.survivors.iter().map(json::poly).collect::<Vec<_>>(),
        })
    }
}

pub fn default_coeffs() -> Vec<Rational> {
    (-2..=2).map(int).collect()
}

/// Reports every candidate whose first `window` powers lie in the target.
/// Survivors keep the enumeration order.
pub fn scan(
    target: &Target,
    candidates: &[Polynomial],
    window: u32,
    shared: &SharedBernoulliCache,
) -> Vec<Polynomial> {
    let top = candidates.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let need = top * window as usize + 1;
    candidates
        .par_iter()
        .map_init(
            || RefCell::new(shared.snapshot(need + 1, need)),
            |cell, f| survives(&|g| target.member(g, &mut cell.borrow_mut()), f, window),
        )
        .zip(candidates.par_iter())
        .filter_map(|(keep, f)| keep.then(|| f.clone()))
        .collect()
}

pub fn run(
    target: &Target,
    max_degree: usize,
    coeffs: &[Rational],
    window: u32,
    shared: &SharedBernoulliCache,
) -> ScanOutcome {
    let candidates = enumerate_candidates(max_degree, coeffs);
    let survivors = scan(target, &candidates, window, shared);
    ScanOutcome {
        target: target.label(),
        max_degree,
        coeffs: coeffs.to_vec(),
        window,
        tested: candidates.len(),
        survivors,
    }
}

pub fn run_builtin(
    b: Builtin,
    max_degree: usize,
    coeffs: &[Rational],
    window: u32,
    shared: &SharedBernoulliCache,
) -> ScanOutcome {
    run(&Target::Builtin(b), max_degree, coeffs, window, shared)
}
