//! Seeded random generators for spaces, measures, maps, kernels and mixtures.
//!
//! All generators draw from a caller-supplied RNG, so a fixed seed gives a
//! fixed sample. Weights are small rationals and about one atom in four gets
//! weight zero, so null atoms show up often.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::finspace::{FinSpace, MeasurableMap};
use crate::giry::{MixMeasure, MixMixMeasure};
use crate::kernel::StochKernel;
use crate::measure::{RationalMeasure, RealObservable};
use crate::Rational;

/// The RNG used by the law suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A space with `atoms` atoms, each holding one to three points named
/// `<prefix>0`, `<prefix>1`, ...
pub fn space<R: Rng>(rng: &mut R, name: &str, prefix: &str, atoms: usize) -> FinSpace {
    let mut points = Vec::new();
    let mut blocks = Vec::new();
    for _ in 0..atoms {
        let size = rng.gen_range(1..=3);
        let block: Vec<String> = (points.len()..points.len() + size).map(|i| format!("{prefix}{i}")).collect();
        points.extend(block.iter().cloned());
        blocks.push(block);
    }
    FinSpace::new(name, points, blocks).expect("blocks partition the points")
}

/// Nonnegative weights with at least one positive entry.
fn raw_weights<R: Rng>(rng: &mut R, n: usize, sparse: bool) -> Vec<u32> {
    loop {
        let w: Vec<u32> = (0..n).map(|_| if sparse && rng.gen_ratio(1, 4) { 0 } else { rng.gen_range(1..=6) }).collect();
        if w.iter().any(|&x| x > 0) {
            return w;
        }
    }
}

/// Nonnegative rationals summing to one.
pub fn probability_vector<R: Rng>(rng: &mut R, n: usize, sparse: bool) -> Vec<Rational> {
    let w = raw_weights(rng, n, sparse);
    let total: u32 = w.iter().sum();
    w.into_iter().map(|x| Rational::new(x.into(), total.into())).collect()
}

pub fn probability<R: Rng>(rng: &mut R, space: &FinSpace) -> RationalMeasure {
    RationalMeasure::probability(space, probability_vector(rng, space.atom_count(), true)).expect("normalized")
}

/// Probability measure with every atom charged.
pub fn full_support_probability<R: Rng>(rng: &mut R, space: &FinSpace) -> RationalMeasure {
    RationalMeasure::probability(space, probability_vector(rng, space.atom_count(), false)).expect("normalized")
}

/// Finite measure with weights in `{0, 1/2, 1, ..., 3}`.
pub fn finite_measure<R: Rng>(rng: &mut R, space: &FinSpace) -> RationalMeasure {
    let w = raw_weights(rng, space.atom_count(), true);
    RationalMeasure::finite(space, w.into_iter().map(|x| Rational::new(x.into(), 2.into())).collect()).expect("nonnegative")
}

pub fn observable<R: Rng>(rng: &mut R, space: &FinSpace) -> RealObservable {
    let values = (0..space.atom_count()).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())).collect();
    RealObservable::new(space, values).expect("one value per atom")
}

/// A uniformly random measurable map: each domain atom picks a codomain atom
/// and each of its points picks a point of that atom.
pub fn measurable_map<R: Rng>(rng: &mut R, name: &str, dom: &FinSpace, cod: &FinSpace) -> MeasurableMap {
    let mut graph = vec![0; dom.len()];
    for a in 0..dom.atom_count() {
        let target = cod.atom(rng.gen_range(0..cod.atom_count()));
        for &p in dom.atom(a) {
            graph[p] = target[rng.gen_range(0..target.len())];
        }
    }
    MeasurableMap::from_graph(name, dom, cod, graph).expect("constant on atoms")
}

pub fn kernel<R: Rng>(rng: &mut R, dom: &FinSpace, cod: &FinSpace) -> StochKernel {
    let rows = (0..dom.atom_count()).map(|_| probability_vector(rng, cod.atom_count(), true)).collect();
    StochKernel::new(dom, cod, rows).expect("rows are probability vectors")
}

/// A mixture with one to `max_support` entries.
pub fn mix<R: Rng>(rng: &mut R, space: &FinSpace, max_support: usize) -> MixMeasure {
    let k = rng.gen_range(1..=max_support);
    let weights = probability_vector(rng, k, false);
    let entries = weights.into_iter().map(|w| (probability(rng, space), w)).collect();
    MixMeasure::new(space, entries).expect("valid mixture")
}

/// A second-level mixture with one to `max_support` entries at each level.
pub fn mix_mix<R: Rng>(rng: &mut R, space: &FinSpace, max_support: usize) -> MixMixMeasure {
    let k = rng.gen_range(1..=max_support);
    let weights = probability_vector(rng, k, false);
    let entries = weights.into_iter().map(|w| (mix(rng, space, max_support), w)).collect();
    MixMixMeasure::new(space, entries).expect("valid mixture")
}
