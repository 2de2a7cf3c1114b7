use std::collections::{BTreeMap, HashMap, HashSet};

use crate::finspace::{is_measurable, FinSpace, MeasurableMap, SpaceError};
use crate::measure::{bounded_constant, RationalMeasure};
use crate::Rational;

use super::{Arrow, CategoryError, FinCategory, FinFunctor};

/// A finite category whose arrows are measurable maps, composed as functions.
#[derive(Debug, Clone)]
pub struct MapCategory {
    pub category: FinCategory,
    /// The underlying space of each object.
    pub spaces: Vec<FinSpace>,
    /// The underlying map of each arrow.
    pub maps: Vec<MeasurableMap>,
}

impl MapCategory {
    fn arrow_by_graph(&self, dom: usize, cod: usize, graph: &[usize]) -> Option<usize> {
        self.category.hom(dom, cod).into_iter().find(|&a| self.maps[a].graph() == graph)
    }
}

/// Closes `generators` under composition and adds identities.
///
/// Each generator is `(arrow name, domain object, codomain object, map)`.
/// Arrows are identified by `(domain, codomain, graph)`, so a generator equal
/// to an identity or to an earlier arrow is merged into it. New composites are
/// named `g_o_f`.
pub fn map_category(
    name: impl Into<String>,
    objects: &[(String, FinSpace)],
    generators: &[(String, String, String, MeasurableMap)],
) -> Result<MapCategory, CategoryError> {
    let object_index = |o: &str| {
        objects.iter().position(|(n, _)| n == o).ok_or_else(|| CategoryError::UnknownObject(o.to_string()))
    };
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut maps: Vec<MeasurableMap> = Vec::new();
    let mut by_graph: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut names: HashSet<String> = HashSet::new();

    let mut add = |name: String, dom: usize, cod: usize, map: MeasurableMap, arrows: &mut Vec<Arrow>, maps: &mut Vec<MeasurableMap>| {
        let key = (dom, cod, map.graph().to_vec());
        if let Some(&existing) = by_graph.get(&key) {
            return (existing, false);
        }
        let mut unique = name.clone();
        let mut k = 2;
        while !names.insert(unique.clone()) {
            unique = format!("{name}_{k}");
            k += 1;
        }
        let idx = arrows.len();
        arrows.push(Arrow { name: unique.clone(), dom, cod });
        maps.push(map.with_name(unique));
        by_graph.insert(key, idx);
        (idx, true)
    };

    let mut ids = Vec::new();
    for (o, (oname, space)) in objects.iter().enumerate() {
        let (idx, _) = add(format!("id_{oname}"), o, o, MeasurableMap::identity(space), &mut arrows, &mut maps);
        ids.push(idx);
    }
    for (aname, dom, cod, map) in generators {
        let (d, c) = (object_index(dom)?, object_index(cod)?);
        if map.dom() != &objects[d].1 || map.cod() != &objects[c].1 {
            return Err(SpaceError::DomainMismatch(format!("{aname} is not a map {dom} -> {cod}")).into());
        }
        add(aname.clone(), d, c, map.clone(), &mut arrows, &mut maps);
    }

    let mut comp = BTreeMap::new();
    let mut grew = true;
    while grew {
        grew = false;
        let n = arrows.len();
        for f in 0..n {
            for g in 0..n {
                if arrows[f].cod != arrows[g].dom || comp.contains_key(&(g, f)) {
                    continue;
                }
                let composite = maps[g].after(&maps[f])?;
                let label = format!("{}_o_{}", arrows[g].name, arrows[f].name);
                let (h, new) = add(label, arrows[f].dom, arrows[g].cod, composite, &mut arrows, &mut maps);
                comp.insert((g, f), h);
                grew |= new;
            }
        }
    }
    let category =
        FinCategory::from_tables(name, objects.iter().map(|(n, _)| n.clone()).collect(), arrows, ids, comp)?;
    Ok(MapCategory { category, spaces: objects.iter().map(|(_, s)| s.clone()).collect(), maps })
}

/// Every measurable map `dom → cod`, in lexicographic order of graphs.
///
/// Fails with `ExplosionGuard` if `|cod|^|dom|` exceeds `cap`.
pub fn all_measurable_maps(dom: &FinSpace, cod: &FinSpace, cap: u128) -> Result<Vec<MeasurableMap>, SpaceError> {
    let total = (cod.len() as u128).checked_pow(dom.len() as u32);
    if total.map_or(true, |t| t > cap) {
        return Err(SpaceError::ExplosionGuard { candidates: format!("{}^{}", cod.len(), dom.len()), cap });
    }
    let mut out = Vec::new();
    let mut graph = vec![0usize; dom.len()];
    loop {
        if is_measurable(&graph, dom, cod) {
            let name = format!("{}_to_{}_{}", dom.name(), cod.name(), out.len());
            out.push(MeasurableMap::from_graph(name, dom, cod, graph.clone())?);
        }
        let mut i = graph.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            graph[i] += 1;
            if graph[i] < cod.len() {
                break;
            }
            graph[i] = 0;
        }
    }
}

/// The full subcategory of measurable spaces on `objects`: every measurable
/// map between every pair.
pub fn set_fragment(name: impl Into<String>, objects: &[(String, FinSpace)], cap: u128) -> Result<MapCategory, CategoryError> {
    let mut generators = Vec::new();
    for (dname, dom) in objects {
        for (cname, cod) in objects {
            for map in all_measurable_maps(dom, cod, cap)? {
                generators.push((format!("{dname}_{cname}_{}", generators.len()), dname.clone(), cname.clone(), map));
            }
        }
    }
    map_category(name, objects, &generators)
}

/// A finite fragment of the category of measure spaces and bounded maps.
#[derive(Debug, Clone)]
pub struct CpsFragment {
    /// Bounded maps closed under composition, with identities.
    pub fragment: MapCategory,
    pub measures: Vec<RationalMeasure>,
    /// Minimal bounding constant of each arrow of `fragment`.
    pub bounds: Vec<Option<Rational>>,
    /// The closure of all supplied maps, bounded or not.
    pub ambient: MapCategory,
    /// Whether every hom-set of `fragment` equals the corresponding hom-set of `ambient`.
    pub full: bool,
    /// Supplied maps that were dropped as unbounded.
    pub dropped: Vec<String>,
}

impl CpsFragment {
    /// The inclusion of the fragment into the closure of all supplied maps.
    pub fn inclusion(&self) -> Result<FinFunctor, CategoryError> {
        let src = &self.fragment.category;
        let object_pairs: Vec<(&str, &str)> = src.objects().iter().map(|o| (o.as_str(), o.as_str())).collect();
        let mut arrow_pairs = Vec::new();
        for (i, a) in src.arrows().iter().enumerate() {
            let target = self
                .ambient
                .arrow_by_graph(a.dom, a.cod, self.fragment.maps[i].graph())
                .ok_or_else(|| CategoryError::MalformedMap(format!("{} has no counterpart", a.name)))?;
            arrow_pairs.push((a.name.as_str(), self.ambient.category.arrow(target).name.as_str()));
        }
        FinFunctor::new("incl", src, &self.ambient.category, object_pairs, arrow_pairs)
    }
}

/// Keeps the supplied maps that admit a bounding constant, closes them under
/// composition and adds identities.
///
/// Objects are named measures, so one space may carry several objects.
/// Measures may be finite; probability measures give the probability case.
pub fn cps_fragment(
    name: impl Into<String>,
    objects: &[(String, RationalMeasure)],
    maps: &[(String, String, String, MeasurableMap)],
) -> Result<CpsFragment, CategoryError> {
    let name = name.into();
    let measure_of = |o: &str| {
        objects.iter().find(|(n, _)| n == o).map(|(_, m)| m).ok_or_else(|| CategoryError::UnknownObject(o.to_string()))
    };
    let spaces: Vec<(String, FinSpace)> = objects.iter().map(|(n, m)| (n.clone(), m.space().clone())).collect();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for entry in maps {
        let (aname, dom, cod, map) = entry;
        match bounded_constant(map, measure_of(dom)?, measure_of(cod)?)? {
            Some(_) => kept.push(entry.clone()),
            None => dropped.push(aname.clone()),
        }
    }
    let ambient = map_category(format!("{name}_all"), &spaces, maps)?;
    let fragment = map_category(name, &spaces, &kept)?;
    let measures: Vec<RationalMeasure> = objects.iter().map(|(_, m)| m.clone()).collect();
    let bounds = fragment
        .category
        .arrows()
        .iter()
        .zip(&fragment.maps)
        .map(|(a, m)| bounded_constant(m, &measures[a.dom], &measures[a.cod]))
        .collect::<Result<_, _>>()?;
    let n = objects.len();
    let full = (0..n).all(|a| (0..n).all(|b| fragment.category.hom(a, b).len() == ambient.category.hom(a, b).len()));
    Ok(CpsFragment { fragment, measures, bounds, ambient, full, dropped })
}
