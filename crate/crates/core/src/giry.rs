//! The Giry monad restricted to finitely supported inputs.
//!
//! `P(X)` is a simplex and is never materialized. A point of `P(P(X))` is
//! represented by a [`MixMeasure`]: finitely many probability measures on `X`
//! with positive weights summing to one. One level up, [`MixMixMeasure`] stands
//! for a finitely supported element of `P(P(P(X)))`. Every integral over
//! `P(X)` that the monad structure needs becomes a finite weighted sum, so all
//! of the laws below are checked with exact equality.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::finspace::{FinSpace, MeasurableMap, MeasurableSet};
use crate::measure::{dirac, dirac_at_atom, integrate, pushforward, MeasureError, RationalMeasure, RealObservable};
use crate::report::LawCheck;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GiryError {
    #[error("NonPositiveWeight: mixture weight {0} must be positive")]
    NonPositiveWeight(Rational),
    #[error("NotNormalized: mixture weights sum to {total}, not 1")]
    NotNormalized { total: Rational },
    #[error("NotProbability: support measure has total mass {total}")]
    NotProbability { total: Rational },
    #[error("SpaceMismatch: {0}")]
    SpaceMismatch(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

fn merge_and_sort<T, K: Ord>(entries: Vec<(T, Rational)>, key: impl Fn(&T) -> K) -> (Vec<T>, Vec<Rational>)
where
    T: PartialEq,
{
    let mut merged: Vec<(T, Rational)> = Vec::with_capacity(entries.len());
    for (item, w) in entries {
        match merged.iter_mut().find(|(seen, _)| *seen == item) {
            Some((_, acc)) => *acc += w,
            None => merged.push((item, w)),
        }
    }
    merged.sort_by_cached_key(|(item, _)| key(item));
    merged.into_iter().unzip()
}

fn check_weights<'a>(weights: impl Iterator<Item = &'a Rational>) -> Result<(), GiryError> {
    let mut total = Rational::zero();
    for w in weights {
        if !w.is_positive() {
            return Err(GiryError::NonPositiveWeight(w.clone()));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(GiryError::NotNormalized { total });
    }
    Ok(())
}

/// A finitely supported probability measure on `P(X)`.
///
/// Support entries are distinct and sorted by weight vector; equal entries
/// passed to [`MixMeasure::new`] are merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixMeasure {
    base: FinSpace,
    support: Vec<RationalMeasure>,
    weights: Vec<Rational>,
}

impl MixMeasure {
    pub fn new(base: &FinSpace, entries: Vec<(RationalMeasure, Rational)>) -> Result<MixMeasure, GiryError> {
        for (m, _) in &entries {
            if m.space() != base {
                return Err(GiryError::SpaceMismatch(format!(
                    "support measure on {} in a mixture over {}",
                    m.space().name(),
                    base.name()
                )));
            }
            if !m.is_probability() {
                return Err(GiryError::NotProbability { total: m.total() });
            }
        }
        check_weights(entries.iter().map(|(_, w)| w))?;
        Ok(MixMeasure::canonical(base, entries))
    }

    fn canonical(base: &FinSpace, entries: Vec<(RationalMeasure, Rational)>) -> MixMeasure {
        let (support, weights) = merge_and_sort(entries, |m| m.weights().to_vec());
        MixMeasure { base: base.clone(), support, weights }
    }

    /// The point mass `δ_P`, i.e. the unit of the monad at `P(X)`.
    pub fn point(p: &RationalMeasure) -> MixMeasure {
        MixMeasure { base: p.space().clone(), support: vec![p.clone()], weights: vec![Rational::one()] }
    }

    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn support(&self) -> &[RationalMeasure] {
        &self.support
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RationalMeasure, &Rational)> {
        self.support.iter().zip(&self.weights)
    }

    fn sort_key(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.entries().map(|(m, w)| (m.weights().to_vec(), w.clone())).collect()
    }
}

/// A finitely supported probability measure on `P(P(X))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixMixMeasure {
    base: FinSpace,
    support: Vec<MixMeasure>,
    weights: Vec<Rational>,
}

impl MixMixMeasure {
    pub fn new(base: &FinSpace, entries: Vec<(MixMeasure, Rational)>) -> Result<MixMixMeasure, GiryError> {
        if let Some((m, _)) = entries.iter().find(|(m, _)| m.base() != base) {
            return Err(GiryError::SpaceMismatch(format!(
                "mixture over {} inside a second-level mixture over {}",
                m.base().name(),
                base.name()
            )));
        }
        check_weights(entries.iter().map(|(_, w)| w))?;
        let (support, weights) = merge_and_sort(entries, MixMeasure::sort_key);
        Ok(MixMixMeasure { base: base.clone(), support, weights })
    }

    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    pub fn support(&self) -> &[MixMeasure] {
        &self.support
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MixMeasure, &Rational)> {
        self.support.iter().zip(&self.weights)
    }
}

/// Component of the unit at `X`: `x ↦ δ_x`.
pub fn giry_unit(space: &FinSpace, x: &str) -> Result<RationalMeasure, GiryError> {
    Ok(dirac(space, x)?)
}

/// `α⁻¹(i_F⁻¹(B))`, the preimage under the unit of the set of measures whose
/// value on `F` lies in a Borel set `B`.
///
/// Only whether `B` contains 0 and whether it contains 1 matters, because
/// `δ_x(F)` takes no other values. The result is always measurable.
pub fn unit_preimage_case(f_set: &MeasurableSet, b_contains_0: bool, b_contains_1: bool) -> MeasurableSet {
    let space = f_set.space();
    match (b_contains_0, b_contains_1) {
        (false, true) => f_set.clone(),
        (true, false) => f_set.complement(),
        (true, true) => MeasurableSet::full(space),
        (false, false) => MeasurableSet::empty(space),
    }
}

/// `P(f)` on a measure: the pushforward.
pub fn giry_map(m: &RationalMeasure, f: &MeasurableMap) -> Result<RationalMeasure, GiryError> {
    Ok(pushforward(m, f)?)
}

/// `P(P(f))` on a mixture: push every support measure forward, merging
/// entries that collide.
pub fn giry_map_mix(mix: &MixMeasure, f: &MeasurableMap) -> Result<MixMeasure, GiryError> {
    if mix.base() != f.dom() {
        return Err(GiryError::SpaceMismatch("mixture is not over the map's domain".into()));
    }
    let entries = mix
        .entries()
        .map(|(m, w)| Ok((pushforward(m, f)?, w.clone())))
        .collect::<Result<Vec<_>, GiryError>>()?;
    Ok(MixMeasure::canonical(f.cod(), entries))
}

/// Multiplication `E(π')(F) = ∫ P(F) π'(dP)`: the barycenter `Σ wᵢ·Pᵢ`.
pub fn giry_mult(mix: &MixMeasure) -> RationalMeasure {
    let mut out = vec![Rational::zero(); mix.base.atom_count()];
    for (m, w) in mix.entries() {
        for (slot, p) in out.iter_mut().zip(m.weights()) {
            *slot += w * p;
        }
    }
    RationalMeasure::from_parts_unchecked(&mix.base, out)
}

/// `ξ_θ(P) = ∫ θ dP`, an observable on `P(X)`.
pub fn xi(theta: &RealObservable, p: &RationalMeasure) -> Result<Rational, GiryError> {
    Ok(integrate(theta, p)?)
}

/// `P(η_X)(P)`: the image of `P` under `x ↦ δ_x`, which is the mixture
/// `Σ_A P(A)·δ_{x_A}` over atoms of positive mass, with `x_A` the first point
/// of atom `A`. Any other choice of representative gives the same Dirac
/// measure.
pub fn dirac_mixture(p: &RationalMeasure) -> MixMeasure {
    let space = p.space();
    let entries = p.support().map(|a| (dirac_at_atom(space, a), p.weight(a).clone())).collect();
    MixMeasure::canonical(space, entries)
}

/// `E_{P(X)}(π'')`: flattens a second-level mixture into a mixture.
pub fn flatten(mm: &MixMixMeasure) -> MixMeasure {
    let entries = mm
        .entries()
        .flat_map(|(mix, v)| mix.entries().map(move |(m, w)| (m.clone(), v * w)))
        .collect();
    MixMeasure::canonical(&mm.base, entries)
}

/// `P(E_X)(π'')`: replaces every support mixture by its barycenter.
pub fn map_mult(mm: &MixMixMeasure) -> MixMeasure {
    let entries = mm.entries().map(|(mix, v)| (giry_mult(mix), v.clone())).collect();
    MixMeasure::canonical(&mm.base, entries)
}

#[derive(Debug, Clone)]
pub struct MonadLawReport {
    pub left_unit: LawCheck,
    pub right_unit: LawCheck,
    pub associativity: LawCheck,
}

impl MonadLawReport {
    pub fn passed(&self) -> bool {
        self.left_unit.passed() && self.right_unit.passed() && self.associativity.passed()
    }
}

/// Runs the three monad laws on each sample.
///
/// The unit laws are checked on every first-level measure reachable from a
/// sample: the support of each mixture and each mixture's barycenter.
/// Associativity is checked on the sample itself:
/// `E(E_{P(X)}(π'')) = E(P(E)(π''))`.
pub fn check_monad_laws(samples: &[MixMixMeasure]) -> MonadLawReport {
    let mut report = MonadLawReport {
        left_unit: LawCheck::new("left-unit"),
        right_unit: LawCheck::new("right-unit"),
        associativity: LawCheck::new("assoc"),
    };
    for (s, mm) in samples.iter().enumerate() {
        let measures = mm
            .support()
            .iter()
            .flat_map(|mix| mix.support().iter().cloned().chain(std::iter::once(giry_mult(mix))));
        for p in measures {
            let left = giry_mult(&MixMeasure::point(&p));
            report.left_unit.record(left == p, || format!("sample #{s}: E(delta_P) = {left:?} != P = {p:?}"));
            let right = giry_mult(&dirac_mixture(&p));
            report.right_unit.record(right == p, || format!("sample #{s}: E(P(delta)(P)) = {right:?} != P = {p:?}"));
        }
        let lhs = giry_mult(&flatten(mm));
        let rhs = giry_mult(&map_mult(mm));
        report
            .associativity
            .record(lhs == rhs, || format!("sample #{s}: E(E_P(pi)) = {lhs:?} != E(P(E)(pi)) = {rhs:?}"));
    }
    report
}

/// `P(f)(δ_x) = δ_{f(x)}` for each sample point.
pub fn check_unit_naturality<S: AsRef<str>>(f: &MeasurableMap, points: &[S]) -> Result<LawCheck, GiryError> {
    let mut check = LawCheck::new("unit-naturality");
    for x in points {
        let x = x.as_ref();
        let lhs = pushforward(&dirac(f.dom(), x)?, f)?;
        let fx = f.apply(x).expect("dirac already validated the point");
        let rhs = dirac(f.cod(), fx)?;
        check.record(lhs == rhs, || format!("x = {x}: P(f)(delta_x) = {lhs:?} != delta_f(x) = {rhs:?}"));
    }
    Ok(check)
}

/// `E_Y(P(P(f))(π')) = P(f)(E_X(π'))` for each sample mixture.
pub fn check_mult_naturality(f: &MeasurableMap, mixes: &[MixMeasure]) -> Result<LawCheck, GiryError> {
    let mut check = LawCheck::new("mult-naturality");
    for (i, mix) in mixes.iter().enumerate() {
        let lhs = giry_mult(&giry_map_mix(mix, f)?);
        let rhs = pushforward(&giry_mult(mix), f)?;
        check.record(lhs == rhs, || format!("mixture #{i}: {lhs:?} != {rhs:?}"));
    }
    Ok(check)
}
