//! Finite measurable spaces.
//!
//! A σ-algebra on a finite point set is determined by its atoms, the minimal
//! nonempty measurable sets, which form a partition of the points. Every type
//! here stores that partition and nothing else; measurable sets are unions of
//! atoms and measurable maps are functions that send each domain atom into a
//! single codomain atom.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the number of candidate maps a brute-force universal
/// property check will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("Overlap: point '{0}' appears in more than one atom")]
    Overlap(String),
    #[error("MissingPoint: point '{0}' is not covered by any atom")]
    MissingPoint(String),
    #[error("UnknownPoint: atom mentions unknown point '{0}'")]
    UnknownPoint(String),
    #[error("EmptyAtom: atom list contains an empty atom")]
    EmptyAtom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("{0}")]
    Partition(#[from] PartitionError),
    #[error("UnknownPoint: unknown point '{0}'")]
    UnknownPoint(String),
    #[error("MismatchedPoints: partitions are over different point sets")]
    MismatchedPoints,
    #[error("DomainMismatch: {0}")]
    DomainMismatch(String),
    #[error("NotMeasurable: set {{{0}}} is not a union of atoms")]
    NotMeasurable(String),
    #[error("MapNotMeasurable: map '{map}' is not measurable: the preimage of atom {{{atom}}} splits a domain atom")]
    MapNotMeasurable { map: String, atom: String },
    #[error("NotTotal: map '{map}' has no value at point '{point}'")]
    NotTotal { map: String, point: String },
    #[error("DuplicateAssignment: map '{map}' assigns point '{point}' twice")]
    DuplicateAssignment { map: String, point: String },
    #[error("ExplosionGuard: enumeration of {candidates} candidate maps exceeds the cap of {cap}")]
    ExplosionGuard { candidates: String, cap: u128 },
}

/// A partition of a finite, lexicographically ordered point set.
///
/// Blocks are sorted internally and ordered by their smallest member, so two
/// partitions of the same set are equal exactly when they have the same blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    points: Vec<String>,
    blocks: Vec<Vec<String>>,
}

impl Partition {
    pub fn new<P, B, S>(points: P, blocks: B) -> Result<Partition, PartitionError>
    where
        P: IntoIterator<Item = S>,
        B: IntoIterator,
        B::Item: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: BTreeSet<String> = points.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        let mut canonical = Vec::new();
        for block in blocks {
            let block: BTreeSet<String> = block.into_iter().map(Into::into).collect();
            if block.is_empty() {
                return Err(PartitionError::EmptyAtom);
            }
            for p in &block {
                if !points.contains(p) {
                    return Err(PartitionError::UnknownPoint(p.clone()));
                }
                if !seen.insert(p.clone()) {
                    return Err(PartitionError::Overlap(p.clone()));
                }
            }
            canonical.push(block.into_iter().collect::<Vec<_>>());
        }
        if let Some(missing) = points.iter().find(|p| !seen.contains(*p)) {
            return Err(PartitionError::MissingPoint(missing.clone()));
        }
        canonical.sort();
        Ok(Partition { points: points.into_iter().collect(), blocks: canonical })
    }

    /// The partition into singletons.
    pub fn discrete<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Partition {
        let points: BTreeSet<String> = points.into_iter().map(Into::into).collect();
        let blocks = points.iter().map(|p| vec![p.clone()]).collect();
        Partition { points: points.into_iter().collect(), blocks }
    }

    /// The one-block partition, i.e. the trivial σ-algebra.
    pub fn trivial<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Partition {
        let points: Vec<String> = points
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let blocks = if points.is_empty() { vec![] } else { vec![points.clone()] };
        Partition { points, blocks }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block_of(&self) -> HashMap<&str, usize> {
        let mut map = HashMap::new();
        for (i, block) in self.blocks.iter().enumerate() {
            for p in block {
                map.insert(p.as_str(), i);
            }
        }
        map
    }
}

struct SpaceInner {
    name: String,
    points: Vec<String>,
    atoms: Vec<Vec<usize>>,
    atom_of: Vec<usize>,
    index: HashMap<String, usize>,
}

/// A finite measurable space `(X, F_X)`, with `F_X` given by its atoms.
///
/// Cloning is cheap. Equality compares points and atoms; the name is a label
/// only.
#[derive(Clone)]
pub struct FinSpace(Arc<SpaceInner>);

impl FinSpace {
    pub fn new<P, B, S>(name: impl Into<String>, points: P, atoms: B) -> Result<FinSpace, SpaceError>
    where
        P: IntoIterator<Item = S>,
        B: IntoIterator,
        B::Item: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(FinSpace::from_partition(name, Partition::new(points, atoms)?))
    }

    pub fn from_partition(name: impl Into<String>, partition: Partition) -> FinSpace {
        let Partition { points, blocks } = partition;
        let index: HashMap<String, usize> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut atom_of = vec![0; points.len()];
        let atoms: Vec<Vec<usize>> = blocks
            .iter()
            .enumerate()
            .map(|(a, block)| {
                let mut idx: Vec<usize> = block.iter().map(|p| index[p]).collect();
                idx.sort_unstable();
                for &i in &idx {
                    atom_of[i] = a;
                }
                idx
            })
            .collect();
        FinSpace(Arc::new(SpaceInner { name: name.into(), points, atoms, atom_of, index }))
    }

    /// Every point is its own atom.
    pub fn discrete<S: Into<String>>(name: impl Into<String>, points: impl IntoIterator<Item = S>) -> FinSpace {
        FinSpace::from_partition(name, Partition::discrete(points))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Same space under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> FinSpace {
        FinSpace::from_partition(name, self.partition())
    }

    pub fn points(&self) -> &[String] {
        &self.0.points
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.points.is_empty()
    }

    pub fn atom_count(&self) -> usize {
        self.0.atoms.len()
    }

    /// Point indices of atom `a`, ascending.
    pub fn atom(&self, a: usize) -> &[usize] {
        &self.0.atoms[a]
    }

    pub fn atom_labels(&self, a: usize) -> Vec<&str> {
        self.0.atoms[a].iter().map(|&i| self.0.points[i].as_str()).collect()
    }

    pub fn atom_of(&self, point: usize) -> usize {
        self.0.atom_of[point]
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn point(&self, i: usize) -> &str {
        &self.0.points[i]
    }

    /// Canonical representative of an atom: its first point.
    pub fn representative(&self, a: usize) -> usize {
        self.0.atoms[a][0]
    }

    pub fn partition(&self) -> Partition {
        Partition {
            points: self.0.points.clone(),
            blocks: (0..self.atom_count())
                .map(|a| self.atom_labels(a).into_iter().map(String::from).collect())
                .collect(),
        }
    }

    /// Finds the atom whose members are exactly `labels`.
    pub fn find_atom<S: AsRef<str>>(&self, labels: &[S]) -> Option<usize> {
        let first = self.point_index(labels.first()?.as_ref())?;
        let a = self.atom_of(first);
        let mut want: Vec<usize> = Vec::with_capacity(labels.len());
        for l in labels {
            want.push(self.point_index(l.as_ref())?);
        }
        want.sort_unstable();
        want.dedup();
        (want == self.0.atoms[a]).then_some(a)
    }

    /// Number of measurable sets, `2^atoms`.
    pub fn sigma_algebra_size(&self) -> u128 {
        1u128 << self.atom_count()
    }

    /// Every measurable set, enumerated by atom bitmask.
    ///
    /// Panics if the space has 64 or more atoms.
    pub fn events(&self) -> impl Iterator<Item = MeasurableSet> + '_ {
        let n = self.atom_count();
        assert!(n < 64, "cannot enumerate the events of a space with {n} atoms");
        (0..(1u64 << n)).map(move |mask| MeasurableSet {
            space: self.clone(),
            atoms: (0..n).map(|a| mask >> a & 1 == 1).collect(),
        })
    }

    pub fn label_of_atom(&self, a: usize) -> String {
        self.atom_labels(a).join(",")
    }
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.points == other.0.points && self.0.atoms == other.0.atoms)
    }
}

impl Eq for FinSpace {}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace({} ", self.name())?;
        for a in 0..self.atom_count() {
            write!(f, "{{{}}}", self.label_of_atom(a))?;
        }
        write!(f, ")")
    }
}

/// An element of the σ-algebra of a [`FinSpace`], stored as an atom mask.
#[derive(Clone, PartialEq, Eq)]
pub struct MeasurableSet {
    space: FinSpace,
    atoms: Vec<bool>,
}

impl MeasurableSet {
    pub fn new<S: AsRef<str>>(space: &FinSpace, members: &[S]) -> Result<MeasurableSet, SpaceError> {
        let mut inside = vec![false; space.len()];
        for m in members {
            let i = space
                .point_index(m.as_ref())
                .ok_or_else(|| SpaceError::UnknownPoint(m.as_ref().to_string()))?;
            inside[i] = true;
        }
        let mut atoms = vec![false; space.atom_count()];
        for (a, slot) in atoms.iter_mut().enumerate() {
            let pts = space.atom(a);
            let hit = pts.iter().filter(|&&i| inside[i]).count();
            if hit != 0 && hit != pts.len() {
                let mut labels: Vec<&str> = members.iter().map(AsRef::as_ref).collect();
                labels.sort_unstable();
                labels.dedup();
                return Err(SpaceError::NotMeasurable(labels.join(",")));
            }
            *slot = hit != 0;
        }
        Ok(MeasurableSet { space: space.clone(), atoms })
    }

    pub fn from_atoms(space: &FinSpace, atoms: impl IntoIterator<Item = usize>) -> MeasurableSet {
        let mut mask = vec![false; space.atom_count()];
        for a in atoms {
            mask[a] = true;
        }
        MeasurableSet { space: space.clone(), atoms: mask }
    }

    pub fn empty(space: &FinSpace) -> MeasurableSet {
        MeasurableSet { space: space.clone(), atoms: vec![false; space.atom_count()] }
    }

    pub fn full(space: &FinSpace) -> MeasurableSet {
        MeasurableSet { space: space.clone(), atoms: vec![true; space.atom_count()] }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn contains_atom(&self, a: usize) -> bool {
        self.atoms[a]
    }

    pub fn contains(&self, point: &str) -> bool {
        self.space
            .point_index(point)
            .is_some_and(|i| self.atoms[self.space.atom_of(i)])
    }

    pub fn atom_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter().enumerate().filter(|(_, &b)| b).map(|(a, _)| a)
    }

    pub fn members(&self) -> Vec<&str> {
        let mut out: Vec<usize> =
            self.atom_indices().flat_map(|a| self.space.atom(a).iter().copied()).collect();
        out.sort_unstable();
        out.into_iter().map(|i| self.space.point(i)).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.atoms.iter().any(|&b| b)
    }

    pub fn complement(&self) -> MeasurableSet {
        MeasurableSet { space: self.space.clone(), atoms: self.atoms.iter().map(|b| !b).collect() }
    }

    pub fn union(&self, other: &MeasurableSet) -> MeasurableSet {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &MeasurableSet) -> MeasurableSet {
        self.zip(other, |a, b| a && b)
    }

    pub fn is_disjoint(&self, other: &MeasurableSet) -> bool {
        self.intersection(other).is_empty()
    }

    fn zip(&self, other: &MeasurableSet, op: impl Fn(bool, bool) -> bool) -> MeasurableSet {
        assert_eq!(self.space, other.space, "set operation across different spaces");
        MeasurableSet {
            space: self.space.clone(),
            atoms: self.atoms.iter().zip(&other.atoms).map(|(&a, &b)| op(a, b)).collect(),
        }
    }
}

impl fmt::Debug for MeasurableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().join(","))
    }
}

/// A measurable function between finite spaces, stored as a point-index graph.
///
/// Equality ignores the name.
#[derive(Clone)]
pub struct MeasurableMap {
    name: String,
    dom: FinSpace,
    cod: FinSpace,
    graph: Vec<usize>,
}

impl MeasurableMap {
    pub fn new<'a>(
        name: impl Into<String>,
        dom: &FinSpace,
        cod: &FinSpace,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<MeasurableMap, SpaceError> {
        let name = name.into();
        let mut graph = vec![None; dom.len()];
        for (from, to) in pairs {
            let i = dom.point_index(from).ok_or_else(|| SpaceError::UnknownPoint(from.to_string()))?;
            let j = cod.point_index(to).ok_or_else(|| SpaceError::UnknownPoint(to.to_string()))?;
            if graph[i].replace(j).is_some() {
                return Err(SpaceError::DuplicateAssignment { map: name, point: from.to_string() });
            }
        }
        let graph = graph
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| SpaceError::NotTotal { map: name.clone(), point: dom.point(i).to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MeasurableMap::from_graph(name, dom, cod, graph)
    }

    /// Builds a map from a point-index graph, checking totality and measurability.
    pub fn from_graph(
        name: impl Into<String>,
        dom: &FinSpace,
        cod: &FinSpace,
        graph: Vec<usize>,
    ) -> Result<MeasurableMap, SpaceError> {
        let name = name.into();
        if graph.len() != dom.len() {
            let point = dom.points().get(graph.len()).cloned().unwrap_or_default();
            return Err(SpaceError::NotTotal { map: name, point });
        }
        if let Some(&bad) = graph.iter().find(|&&j| j >= cod.len()) {
            return Err(SpaceError::UnknownPoint(format!("#{bad}")));
        }
        if let Some(b) = first_split_atom(&graph, dom, cod) {
            return Err(SpaceError::MapNotMeasurable { map: name, atom: cod.label_of_atom(b) });
        }
        Ok(MeasurableMap { name, dom: dom.clone(), cod: cod.clone(), graph })
    }

    pub fn identity(space: &FinSpace) -> MeasurableMap {
        MeasurableMap {
            name: format!("id_{}", space.name()),
            dom: space.clone(),
            cod: space.clone(),
            graph: (0..space.len()).collect(),
        }
    }

    pub fn constant(name: impl Into<String>, dom: &FinSpace, cod: &FinSpace, value: &str) -> Result<MeasurableMap, SpaceError> {
        let j = cod.point_index(value).ok_or_else(|| SpaceError::UnknownPoint(value.to_string()))?;
        MeasurableMap::from_graph(name, dom, cod, vec![j; dom.len()])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> MeasurableMap {
        self.name = name.into();
        self
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, point: &str) -> Option<&str> {
        self.dom.point_index(point).map(|i| self.cod.point(self.graph[i]))
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.graph[i]
    }

    /// The codomain atom that receives domain atom `a`.
    pub fn image_atom(&self, a: usize) -> usize {
        self.cod.atom_of(self.graph[self.dom.representative(a)])
    }

    pub fn preimage(&self, set: &MeasurableSet) -> MeasurableSet {
        assert_eq!(set.space(), &self.cod, "preimage of a set outside the codomain");
        MeasurableSet::from_atoms(
            &self.dom,
            (0..self.dom.atom_count()).filter(|&a| set.contains_atom(self.image_atom(a))),
        )
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MeasurableMap) -> Result<MeasurableMap, SpaceError> {
        if first.cod != self.dom {
            return Err(SpaceError::DomainMismatch(format!(
                "cannot compose {} after {}: codomain {} differs from domain {}",
                self.name,
                first.name,
                first.cod.name(),
                self.dom.name()
            )));
        }
        Ok(MeasurableMap {
            name: format!("{}_o_{}", self.name, first.name),
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            graph: first.graph.iter().map(|&j| self.graph[j]).collect(),
        })
    }

    /// The graph as label pairs in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.graph.iter().enumerate().map(|(i, &j)| (self.dom.point(i), self.cod.point(j)))
    }
}

impl PartialEq for MeasurableMap {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.graph == other.graph
    }
}

impl Eq for MeasurableMap {}

impl fmt::Debug for MeasurableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} [", self.name, self.dom.name(), self.cod.name())?;
        for (k, (x, y)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "]")
    }
}

fn first_split_atom(graph: &[usize], dom: &FinSpace, cod: &FinSpace) -> Option<usize> {
    for a in 0..dom.atom_count() {
        let pts = dom.atom(a);
        let target = cod.atom_of(graph[pts[0]]);
        if let Some(&p) = pts.iter().find(|&&p| cod.atom_of(graph[p]) != target) {
            return Some(cod.atom_of(graph[p]));
        }
    }
    None
}

/// Whether the point-index function `graph` is measurable from `dom` to `cod`.
///
/// The preimage of every codomain atom is a union of domain atoms exactly when
/// each domain atom lands inside one codomain atom. Malformed graphs are not
/// measurable.
pub fn is_measurable(graph: &[usize], dom: &FinSpace, cod: &FinSpace) -> bool {
    graph.len() == dom.len()
        && graph.iter().all(|&j| j < cod.len())
        && first_split_atom(graph, dom, cod).is_none()
}

/// Coarsest partition of `points` whose σ-algebra contains every generator.
///
/// Two points share a block iff they lie in exactly the same generators.
pub fn sigma_closure<S: AsRef<str>>(points: &[S], generators: &[Vec<S>]) -> Result<Partition, SpaceError> {
    let universe: BTreeSet<&str> = points.iter().map(AsRef::as_ref).collect();
    let gens: Vec<BTreeSet<&str>> = generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|p| {
                    let p = p.as_ref();
                    if universe.contains(p) {
                        Ok(p)
                    } else {
                        Err(SpaceError::UnknownPoint(p.to_string()))
                    }
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let mut classes: BTreeMap<Vec<bool>, Vec<&str>> = BTreeMap::new();
    for &p in &universe {
        let signature = gens.iter().map(|g| g.contains(p)).collect();
        classes.entry(signature).or_default().push(p);
    }
    Ok(Partition::new(universe.iter().copied(), classes.into_values())
        .expect("signature classes always partition the point set"))
}

/// `σ(g) ⊆ σ(f)`: every block of `g` is a union of blocks of `f`.
pub fn is_sub_sigma_algebra(g: &Partition, f: &Partition) -> Result<bool, SpaceError> {
    if g.points != f.points {
        return Err(SpaceError::MismatchedPoints);
    }
    let g_block = g.block_of();
    Ok(f.blocks.iter().all(|block| {
        let first = g_block[block[0].as_str()];
        block.iter().all(|p| g_block[p.as_str()] == first)
    }))
}

/// Label of the product point `(x, y)`.
pub fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// The product `X × Y` in the category of measurable spaces, with projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: FinSpace,
    pub p1: MeasurableMap,
    pub p2: MeasurableMap,
    left: FinSpace,
    right: FinSpace,
    // pair_index[i][j] = product point index of (x_i, y_j)
    pair_index: Vec<Vec<usize>>,
}

impl Product {
    pub fn left(&self) -> &FinSpace {
        &self.left
    }

    pub fn right(&self) -> &FinSpace {
        &self.right
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        self.pair_index[i][j]
    }
}

pub fn product_space(x: &FinSpace, y: &FinSpace) -> Product {
    let mut points = Vec::with_capacity(x.len() * y.len());
    for xp in x.points() {
        for yp in y.points() {
            points.push(pair_label(xp, yp));
        }
    }
    let mut blocks = Vec::with_capacity(x.atom_count() * y.atom_count());
    for a in 0..x.atom_count() {
        for b in 0..y.atom_count() {
            let mut block = Vec::new();
            for xp in x.atom_labels(a) {
                for yp in y.atom_labels(b) {
                    block.push(pair_label(xp, yp));
                }
            }
            blocks.push(block);
        }
    }
    let space = FinSpace::new(format!("{}_x_{}", x.name(), y.name()), points, blocks)
        .expect("rectangles over two partitions partition the product");
    let pair_index: Vec<Vec<usize>> = x
        .points()
        .iter()
        .map(|xp| {
            y.points()
                .iter()
                .map(|yp| space.point_index(&pair_label(xp, yp)).expect("pair point"))
                .collect()
        })
        .collect();
    let mut g1 = vec![0; space.len()];
    let mut g2 = vec![0; space.len()];
    for (i, row) in pair_index.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            g1[k] = i;
            g2[k] = j;
        }
    }
    let p1 = MeasurableMap::from_graph("p1", &space, x, g1).expect("first projection is measurable");
    let p2 = MeasurableMap::from_graph("p2", &space, y, g2).expect("second projection is measurable");
    Product { space, p1, p2, left: x.clone(), right: y.clone(), pair_index }
}

/// The mediating map `z ↦ (f(z), g(z))` into a product.
pub fn pairing(f: &MeasurableMap, g: &MeasurableMap, product: &Product) -> Result<MeasurableMap, SpaceError> {
    if f.dom != g.dom {
        return Err(SpaceError::DomainMismatch(format!(
            "pairing needs a common domain, got {} and {}",
            f.dom.name(),
            g.dom.name()
        )));
    }
    if f.cod != product.left || g.cod != product.right {
        return Err(SpaceError::DomainMismatch(format!(
            "pairing of {} and {} does not target {}",
            f.name,
            g.name,
            product.space.name()
        )));
    }
    let graph = f.graph.iter().zip(&g.graph).map(|(&i, &j)| product.pair_index[i][j]).collect();
    MeasurableMap::from_graph(format!("pair_{}_{}", f.name, g.name), &f.dom, &product.space, graph)
}

/// Outcome of enumerating every candidate mediating map into a product.
#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub candidates: u128,
    pub measurable: u128,
    pub mediating: u128,
    pub witness: Option<MeasurableMap>,
    pub witness_is_pairing: bool,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.mediating == 1 && self.witness_is_pairing
    }
}

/// Counts the measurable `h: Z → X×Y` with `p1∘h = f` and `p2∘h = g`.
pub fn check_product_universal(
    x: &FinSpace,
    y: &FinSpace,
    z: &FinSpace,
    f: &MeasurableMap,
    g: &MeasurableMap,
    cap: u128,
) -> Result<UniversalReport, SpaceError> {
    if f.dom != *z || g.dom != *z || f.cod != *x || g.cod != *y {
        return Err(SpaceError::DomainMismatch(format!(
            "universal check expects f: {} -> {} and g: {} -> {}",
            z.name(),
            x.name(),
            z.name(),
            y.name()
        )));
    }
    let product = product_space(x, y);
    let base = product.space.len() as u128;
    let candidates = u32::try_from(z.len())
        .ok()
        .and_then(|e| base.checked_pow(e))
        .filter(|&c| c <= cap)
        .ok_or_else(|| SpaceError::ExplosionGuard {
            candidates: format!("{}^{}", base, z.len()),
            cap,
        })?;
    let expected = pairing(f, g, &product)?;
    let mut report = UniversalReport {
        candidates,
        measurable: 0,
        mediating: 0,
        witness: None,
        witness_is_pairing: false,
    };
    if base == 0 && !z.is_empty() {
        return Ok(report);
    }
    let mut graph = vec![0usize; z.len()];
    'outer: loop {
        if is_measurable(&graph, z, &product.space) {
            report.measurable += 1;
            let commutes = graph.iter().enumerate().all(|(k, &h)| {
                product.p1.graph[h] == f.graph[k] && product.p2.graph[h] == g.graph[k]
            });
            if commutes {
                report.mediating += 1;
                let h = MeasurableMap::from_graph("h", z, &product.space, graph.clone())?;
                report.witness_is_pairing = h == expected;
                report.witness = Some(h);
            }
        }
        for slot in graph.iter_mut() {
            *slot += 1;
            if (*slot as u128) < base {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(report)
}
