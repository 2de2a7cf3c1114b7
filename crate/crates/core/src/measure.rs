//! Exact rational measures on finite spaces.
//!
//! A measure is a nonnegative weight per atom. Its value on a measurable set is
//! the sum of the weights of the atoms it contains, so additivity holds by
//! construction.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::finspace::{FinSpace, MeasurableMap, MeasurableSet, SpaceError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("NegativeWeight: weight {weight} on atom {{{atom}}} is negative")]
    NegativeWeight { atom: String, weight: Rational },
    #[error("NotNormalized: probability weights sum to {total}, not 1")]
    NotNormalized { total: Rational },
    #[error("ArityMismatch: expected {expected} weights, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("SpaceMismatch: {0}")]
    SpaceMismatch(String),
    #[error("ZeroTotalMass: cannot normalize a measure of total mass 0")]
    ZeroTotalMass,
    #[error("NotProbability: measure has total mass {total}")]
    NotProbability { total: Rational },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Whether a measure is merely finite or a probability measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Finite,
    Probability,
}

/// A finite measure on a [`FinSpace`] with exact rational atom weights.
///
/// The kind is derived from the weights: a measure of total mass exactly 1 is
/// a probability measure.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMeasure {
    space: FinSpace,
    weights: Vec<Rational>,
}

fn mismatch(what: &str, a: &FinSpace, b: &FinSpace) -> MeasureError {
    MeasureError::SpaceMismatch(format!("{what}: {} vs {}", a.name(), b.name()))
}

impl RationalMeasure {
    pub fn new(space: &FinSpace, weights: Vec<Rational>, kind: MeasureKind) -> Result<RationalMeasure, MeasureError> {
        if weights.len() != space.atom_count() {
            return Err(MeasureError::ArityMismatch { expected: space.atom_count(), found: weights.len() });
        }
        if let Some((a, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(MeasureError::NegativeWeight { atom: space.label_of_atom(a), weight: w.clone() });
        }
        let m = RationalMeasure { space: space.clone(), weights };
        if kind == MeasureKind::Probability && !m.total().is_one() {
            return Err(MeasureError::NotNormalized { total: m.total() });
        }
        Ok(m)
    }

    pub fn probability(space: &FinSpace, weights: Vec<Rational>) -> Result<RationalMeasure, MeasureError> {
        RationalMeasure::new(space, weights, MeasureKind::Probability)
    }

    pub fn finite(space: &FinSpace, weights: Vec<Rational>) -> Result<RationalMeasure, MeasureError> {
        RationalMeasure::new(space, weights, MeasureKind::Finite)
    }

    /// Uniform over atoms (not over points).
    pub fn uniform_over_atoms(space: &FinSpace) -> RationalMeasure {
        let n = space.atom_count();
        let w = Rational::new(1.into(), n.into());
        RationalMeasure { space: space.clone(), weights: vec![w; n] }
    }

    pub(crate) fn from_parts_unchecked(space: &FinSpace, weights: Vec<Rational>) -> RationalMeasure {
        debug_assert_eq!(weights.len(), space.atom_count());
        RationalMeasure { space: space.clone(), weights }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn kind(&self) -> MeasureKind {
        if self.total().is_one() {
            MeasureKind::Probability
        } else {
            MeasureKind::Finite
        }
    }

    pub fn is_probability(&self) -> bool {
        self.kind() == MeasureKind::Probability
    }

    pub fn measure_of(&self, set: &MeasurableSet) -> Result<Rational, MeasureError> {
        if set.space() != &self.space {
            return Err(mismatch("set and measure live on different spaces", set.space(), &self.space));
        }
        Ok(set.atom_indices().map(|a| &self.weights[a]).sum())
    }

    /// Value on the set with the given members, which must be a union of atoms.
    pub fn measure_of_labels<S: AsRef<str>>(&self, members: &[S]) -> Result<Rational, MeasureError> {
        self.measure_of(&MeasurableSet::new(&self.space, members)?)
    }

    /// `c · μ`.
    pub fn scaled(&self, c: &Rational) -> Result<RationalMeasure, MeasureError> {
        RationalMeasure::finite(&self.space, self.weights.iter().map(|w| w * c).collect())
    }

    /// Atoms of positive mass.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(|(_, w)| w.is_positive()).map(|(a, _)| a)
    }
}

impl fmt::Debug for RationalMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (a, w) in self.weights.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}={}", self.space.label_of_atom(a), w)?;
        }
        write!(f, "]")
    }
}

/// A real-valued function constant on atoms, hence measurable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealObservable {
    space: FinSpace,
    values: Vec<Rational>,
}

impl RealObservable {
    pub fn new(space: &FinSpace, values: Vec<Rational>) -> Result<RealObservable, MeasureError> {
        if values.len() != space.atom_count() {
            return Err(MeasureError::ArityMismatch { expected: space.atom_count(), found: values.len() });
        }
        Ok(RealObservable { space: space.clone(), values })
    }

    pub fn constant(space: &FinSpace, c: Rational) -> RealObservable {
        RealObservable { space: space.clone(), values: vec![c; space.atom_count()] }
    }

    /// The indicator function `1_F`.
    pub fn indicator(set: &MeasurableSet) -> RealObservable {
        let space = set.space();
        let values = (0..space.atom_count())
            .map(|a| if set.contains_atom(a) { Rational::one() } else { Rational::zero() })
            .collect();
        RealObservable { space: space.clone(), values }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value_on_atom(&self, atom: usize) -> &Rational {
        &self.values[atom]
    }

    pub fn value_at(&self, point: &str) -> Option<&Rational> {
        self.space.point_index(point).map(|i| &self.values[self.space.atom_of(i)])
    }
}

/// The Dirac measure `δ_x`: mass 1 on the atom containing `x`.
pub fn dirac(space: &FinSpace, x: &str) -> Result<RationalMeasure, MeasureError> {
    let i = space.point_index(x).ok_or_else(|| SpaceError::UnknownPoint(x.to_string()))?;
    Ok(dirac_at_atom(space, space.atom_of(i)))
}

pub(crate) fn dirac_at_atom(space: &FinSpace, atom: usize) -> RationalMeasure {
    let mut weights = vec![Rational::zero(); space.atom_count()];
    weights[atom] = Rational::one();
    RationalMeasure { space: space.clone(), weights }
}

/// Image measure `m ∘ f⁻¹` on the codomain of `f`.
pub fn pushforward(m: &RationalMeasure, f: &MeasurableMap) -> Result<RationalMeasure, MeasureError> {
    if m.space() != f.dom() {
        return Err(mismatch("pushforward: measure is not on the map's domain", m.space(), f.dom()));
    }
    let mut weights = vec![Rational::zero(); f.cod().atom_count()];
    for (a, w) in m.weights.iter().enumerate() {
        weights[f.image_atom(a)] += w;
    }
    Ok(RationalMeasure { space: f.cod().clone(), weights })
}

/// `∫ θ dm`, an exact finite sum over atoms.
pub fn integrate(theta: &RealObservable, m: &RationalMeasure) -> Result<Rational, MeasureError> {
    if theta.space() != m.space() {
        return Err(mismatch("integrate: observable and measure differ in space", theta.space(), m.space()));
    }
    Ok(theta.values.iter().zip(&m.weights).map(|(t, w)| t * w).sum())
}

/// `q ≪ p`: every atom that is `p`-null is `q`-null.
pub fn absolutely_continuous(q: &RationalMeasure, p: &RationalMeasure) -> Result<bool, MeasureError> {
    if q.space() != p.space() {
        return Err(mismatch("absolute continuity across spaces", q.space(), p.space()));
    }
    Ok(p.weights.iter().zip(&q.weights).all(|(pw, qw)| !pw.is_zero() || qw.is_zero()))
}

/// Smallest `M` with `p_dom(f⁻¹(A)) ≤ M · p_cod(A)` for every measurable `A`
/// of the codomain, or `None` when no finite `M` exists.
///
/// Checking codomain atoms suffices: for a union of atoms the ratio of sums
/// never exceeds the largest atom ratio. The result is 0 only when `p_dom`
/// vanishes on every preimage, in which case every positive `M` works.
pub fn bounded_constant(
    f: &MeasurableMap,
    p_dom: &RationalMeasure,
    p_cod: &RationalMeasure,
) -> Result<Option<Rational>, MeasureError> {
    if p_dom.space() != f.dom() {
        return Err(mismatch("bounded_constant: domain measure", p_dom.space(), f.dom()));
    }
    if p_cod.space() != f.cod() {
        return Err(mismatch("bounded_constant: codomain measure", p_cod.space(), f.cod()));
    }
    let image = pushforward(p_dom, f)?;
    let mut best = Rational::zero();
    for (pulled, target) in image.weights.iter().zip(&p_cod.weights) {
        if target.is_zero() {
            if !pulled.is_zero() {
                return Ok(None);
            }
        } else {
            let ratio = pulled / target;
            if ratio > best {
                best = ratio;
            }
        }
    }
    Ok(Some(best))
}

/// `(1/μ(X)) μ`.
pub fn normalize(m: &RationalMeasure) -> Result<RationalMeasure, MeasureError> {
    let total = m.total();
    if total.is_zero() {
        return Err(MeasureError::ZeroTotalMass);
    }
    Ok(RationalMeasure { space: m.space.clone(), weights: m.weights.iter().map(|w| w / &total).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn coarse() -> FinSpace {
        FinSpace::new("X", ["a", "b", "c"], vec![vec!["a"], vec!["b", "c"]]).unwrap()
    }

    #[test]
    fn make_measure_examples() {
        let x = coarse();
        let p = RationalMeasure::probability(&x, vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert!(p.is_probability());
        assert_eq!(
            RationalMeasure::probability(&x, vec![rat(1, 2), rat(1, 3)]).unwrap_err(),
            MeasureError::NotNormalized { total: rat(5, 6) }
        );
        let m = RationalMeasure::finite(&x, vec![rat(2, 1), rat(3, 1)]).unwrap();
        assert_eq!(m.total(), rat(5, 1));
        assert_eq!(m.kind(), MeasureKind::Finite);
        assert!(matches!(
            RationalMeasure::finite(&x, vec![rat(1, 1)]),
            Err(MeasureError::ArityMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            RationalMeasure::finite(&x, vec![rat(-1, 1), rat(1, 1)]),
            Err(MeasureError::NegativeWeight { .. })
        ));
    }

    #[test]
    fn measure_of_examples() {
        let x = coarse();
        let m = RationalMeasure::probability(&x, vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(m.measure_of_labels(&["b", "c"]).unwrap(), rat(2, 3));
        assert_eq!(m.measure_of(&MeasurableSet::empty(&x)).unwrap(), rat(0, 1));
        assert_eq!(m.measure_of_labels(&["a", "b", "c"]).unwrap(), rat(1, 1));
        assert!(matches!(
            m.measure_of_labels(&["b"]),
            Err(MeasureError::Space(SpaceError::NotMeasurable(_)))
        ));
    }

    #[test]
    fn dirac_examples() {
        let d = FinSpace::discrete("D", ["a", "b", "c"]);
        assert_eq!(dirac(&d, "a").unwrap().weights(), &[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let x = coarse();
        let delta_b = dirac(&x, "b").unwrap();
        assert_eq!(delta_b.weights(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(dirac(&x, "a").unwrap().measure_of_labels(&["b", "c"]).unwrap(), rat(0, 1));
        assert!(dirac(&x, "q").is_err());
    }

    #[test]
    fn pushforward_examples() {
        let d = FinSpace::discrete("D", ["a", "b", "c"]);
        let e = FinSpace::discrete("E", ["u", "v"]);
        let m = RationalMeasure::probability(&d, vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(pushforward(&m, &MeasurableMap::identity(&d)).unwrap(), m);
        let f = MeasurableMap::new("f", &d, &e, [("a", "u"), ("b", "u"), ("c", "v")]).unwrap();
        let image = pushforward(&m, &f).unwrap();
        assert_eq!(image.weights(), &[rat(3, 4), rat(1, 4)]);
        assert!(pushforward(&image, &f).is_err());
    }

    #[test]
    fn integrate_examples() {
        let x = coarse();
        let p = RationalMeasure::probability(&x, vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(integrate(&RealObservable::constant(&x, rat(1, 1)), &p).unwrap(), rat(1, 1));
        let theta = RealObservable::new(&x, vec![rat(5, 1), rat(-7, 2)]).unwrap();
        assert_eq!(integrate(&theta, &dirac(&x, "c").unwrap()).unwrap(), rat(-7, 2));
        let ab = FinSpace::discrete("AB", ["a", "b"]);
        let theta = RealObservable::new(&ab, vec![rat(2, 1), rat(4, 1)]).unwrap();
        let half = RationalMeasure::uniform_over_atoms(&ab);
        assert_eq!(integrate(&theta, &half).unwrap(), rat(3, 1));
        assert!(integrate(&theta, &p).is_err());
    }

    #[test]
    fn absolute_continuity_examples() {
        let ab = FinSpace::discrete("AB", ["a", "b"]);
        let p = RationalMeasure::uniform_over_atoms(&ab);
        let q = RationalMeasure::probability(&ab, vec![rat(0, 1), rat(1, 1)]).unwrap();
        assert!(absolutely_continuous(&p, &p).unwrap());
        assert!(absolutely_continuous(&q, &p).unwrap());
        assert!(!absolutely_continuous(&p, &q).unwrap());
    }

    #[test]
    fn bounded_constant_examples() {
        let x = coarse();
        let p = RationalMeasure::probability(&x, vec![rat(1, 3), rat(2, 3)]).unwrap();
        let id = MeasurableMap::identity(&x);
        assert_eq!(bounded_constant(&id, &p, &p).unwrap(), Some(rat(1, 1)));
        let point_mass = RationalMeasure::probability(&x, vec![rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(bounded_constant(&id, &p, &point_mass).unwrap(), None);
        assert_eq!(bounded_constant(&id, &point_mass, &p).unwrap(), Some(rat(3, 1)));
    }

    #[test]
    fn normalize_examples() {
        let ab = FinSpace::discrete("AB", ["a", "b"]);
        let m = RationalMeasure::finite(&ab, vec![rat(2, 1), rat(3, 1)]).unwrap();
        let n = normalize(&m).unwrap();
        assert_eq!(n.weights(), &[rat(2, 5), rat(3, 5)]);
        assert_eq!(normalize(&n).unwrap(), n);
        let zero = RationalMeasure::finite(&ab, vec![rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(normalize(&zero).unwrap_err(), MeasureError::ZeroTotalMass);
    }

    #[test]
    fn normalization_transports_bounds() {
        let x = FinSpace::discrete("X", ["a", "b", "c"]);
        let y = FinSpace::discrete("Y", ["u", "v"]);
        let f = MeasurableMap::new("f", &x, &y, [("a", "u"), ("b", "v"), ("c", "v")]).unwrap();
        let mu = RationalMeasure::finite(&x, vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        let nu = RationalMeasure::finite(&y, vec![rat(4, 1), rat(1, 1)]).unwrap();
        let m = bounded_constant(&f, &mu, &nu).unwrap().unwrap();
        let m1 = bounded_constant(&f, &normalize(&mu).unwrap(), &normalize(&nu).unwrap()).unwrap().unwrap();
        // ν(Y)/μ(X) · M is a valid bound, and here it is also the minimal one
        assert_eq!(m1, nu.total() / mu.total() * m);
    }
}
