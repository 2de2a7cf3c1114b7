//! Explicit finite categories and law checkers for functors and natural
//! transformations.
//!
//! A [`FinCategory`] is a table: objects, typed arrows, one identity per
//! object and a composition entry for every composable pair. Nothing is
//! assumed about the table; [`validate_category`] reports every violated law.

mod chi;
mod maps;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::finspace::SpaceError;
use crate::measure::MeasureError;

pub use chi::{chi_category, chi_leq, ChiObject};
pub use maps::{all_measurable_maps, cps_fragment, map_category, set_fragment, CpsFragment, MapCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("MalformedTable: {0}")]
    MalformedTable(String),
    #[error("UnknownObject: {0}")]
    UnknownObject(String),
    #[error("UnknownArrow: {0}")]
    UnknownArrow(String),
    #[error("DuplicateName: {0}")]
    DuplicateName(String),
    #[error("NotPreorder: {0}")]
    NotPreorder(String),
    #[error("AmbientMismatch: {0}")]
    AmbientMismatch(String),
    #[error("MalformedMap: {0}")]
    MalformedMap(String),
    #[error("MalformedComponents: {0}")]
    MalformedComponents(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category given by explicit tables.
///
/// `comp[(g, f)]` is `g∘f`. Structural equality ignores the category name.
#[derive(Debug, Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows && self.ids == other.ids && self.comp == other.comp
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    pub fn builder(name: impl Into<String>) -> CategoryBuilder {
        CategoryBuilder { name: name.into(), ..CategoryBuilder::default() }
    }

    /// Builds a category from index tables, checking only that the
    /// composition table is total on composable pairs and defined nowhere else.
    pub fn from_tables(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        ids: Vec<usize>,
        comp: BTreeMap<(usize, usize), usize>,
    ) -> Result<FinCategory, CategoryError> {
        let c = FinCategory { name: name.into(), objects, arrows, ids, comp };
        c.check_tables()?;
        Ok(c)
    }

    fn check_tables(&self) -> Result<(), CategoryError> {
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(o.as_str()) {
                return Err(CategoryError::DuplicateName(format!("object {o}")));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(CategoryError::DuplicateName(format!("arrow {}", a.name)));
            }
            if a.dom >= self.objects.len() || a.cod >= self.objects.len() {
                return Err(CategoryError::MalformedTable(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        if self.ids.len() != self.objects.len() || self.ids.iter().any(|&i| i >= self.arrows.len()) {
            return Err(CategoryError::MalformedTable("identity table must name one arrow per object".into()));
        }
        for (&(g, f), &h) in &self.comp {
            if g >= self.arrows.len() || f >= self.arrows.len() || h >= self.arrows.len() {
                return Err(CategoryError::MalformedTable("composition table refers to an unknown arrow".into()));
            }
            if self.arrows[f].cod != self.arrows[g].dom {
                return Err(CategoryError::MalformedTable(format!(
                    "composite {} . {} given for a non-composable pair",
                    self.arrows[g].name, self.arrows[f].name
                )));
            }
        }
        for (f, fa) in self.arrows.iter().enumerate() {
            for (g, ga) in self.arrows.iter().enumerate() {
                if fa.cod == ga.dom && !self.comp.contains_key(&(g, f)) {
                    return Err(CategoryError::MalformedTable(format!("missing composite {} . {}", ga.name, fa.name)));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn identity(&self, object: usize) -> usize {
        self.ids[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.ids
    }

    /// `g∘f`, if the table has an entry for the pair.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn composition_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.comp
    }

    /// Arrows from `a` to `b`, in declaration order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].dom == a && self.arrows[i].cod == b).collect()
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        self.ids.contains(&arrow)
    }
}

/// Builder for [`FinCategory`] by name.
///
/// Identities default to `id_<object>`. Composites with an identity are filled
/// in automatically unless given explicitly.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    arrows: Vec<(String, String, String)>,
    ids: Vec<(String, String)>,
    comps: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn object(mut self, name: impl Into<String>) -> Self {
        self.objects.push(name.into());
        self
    }

    pub fn objects<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.objects.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn arrow(mut self, name: impl Into<String>, dom: impl Into<String>, cod: impl Into<String>) -> Self {
        self.arrows.push((name.into(), dom.into(), cod.into()));
        self
    }

    /// Names the identity of `object` instead of the default `id_<object>`.
    pub fn identity(mut self, object: impl Into<String>, arrow: impl Into<String>) -> Self {
        self.ids.push((object.into(), arrow.into()));
        self
    }

    /// Declares `g∘f = h`.
    pub fn compose(mut self, g: impl Into<String>, f: impl Into<String>, h: impl Into<String>) -> Self {
        self.comps.push((g.into(), f.into(), h.into()));
        self
    }

    pub fn build(self) -> Result<FinCategory, CategoryError> {
        let object_index = |name: &str, objects: &[String]| {
            objects.iter().position(|o| o == name).ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
        };
        let mut id_names: Vec<String> = self.objects.iter().map(|o| format!("id_{o}")).collect();
        for (obj, arrow) in &self.ids {
            id_names[object_index(obj, &self.objects)?] = arrow.clone();
        }
        let mut arrows: Vec<Arrow> =
            id_names.iter().enumerate().map(|(o, name)| Arrow { name: name.clone(), dom: o, cod: o }).collect();
        for (name, dom, cod) in &self.arrows {
            arrows.push(Arrow {
                name: name.clone(),
                dom: object_index(dom, &self.objects)?,
                cod: object_index(cod, &self.objects)?,
            });
        }
        let ids: Vec<usize> = (0..self.objects.len()).collect();
        let arrow_index = |name: &str| {
            arrows.iter().position(|a| a.name == name).ok_or_else(|| CategoryError::UnknownArrow(name.to_string()))
        };
        let mut comp = BTreeMap::new();
        for (g, f, h) in &self.comps {
            let key = (arrow_index(g)?, arrow_index(f)?);
            if comp.insert(key, arrow_index(h)?).is_some() {
                return Err(CategoryError::MalformedTable(format!("composite {g} . {f} given twice")));
            }
        }
        for (f, a) in arrows.iter().enumerate() {
            comp.entry((ids[a.cod], f)).or_insert(f);
            comp.entry((f, ids[a.dom])).or_insert(f);
        }
        FinCategory::from_tables(self.name, self.objects, arrows, ids, comp)
    }
}

/// One failed law instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// Every violation found by a checker; empty means the structure is lawful.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, law: &'static str, witness: String) {
        self.violations.push(Violation { law, witness });
    }
}

pub fn validate_category(c: &FinCategory) -> ViolationReport {
    let mut report = ViolationReport::default();
    let name = |i: usize| c.arrows[i].name.as_str();
    for (o, &id) in c.ids.iter().enumerate() {
        let a = &c.arrows[id];
        if a.dom != o || a.cod != o {
            report.push("identity-typing", format!("{} is not an endomorphism of {}", a.name, c.objects[o]));
        }
    }
    for (&(g, f), &h) in &c.comp {
        let (fa, ga, ha) = (&c.arrows[f], &c.arrows[g], &c.arrows[h]);
        if ha.dom != fa.dom || ha.cod != ga.cod {
            report.push(
                "composite-typing",
                format!(
                    "{} . {} = {} : {} -> {}, expected {} -> {}",
                    ga.name, fa.name, ha.name, c.objects[ha.dom], c.objects[ha.cod], c.objects[fa.dom], c.objects[ga.cod]
                ),
            );
        }
    }
    for (f, a) in c.arrows.iter().enumerate() {
        let left = c.compose(c.ids[a.cod], f);
        if left != Some(f) {
            report.push("left-identity", format!("{} . {} != {}", name(c.ids[a.cod]), a.name, a.name));
        }
        let right = c.compose(f, c.ids[a.dom]);
        if right != Some(f) {
            report.push("right-identity", format!("{} . {} != {}", a.name, name(c.ids[a.dom]), a.name));
        }
    }
    let mut from: Vec<Vec<usize>> = vec![Vec::new(); c.objects.len()];
    for (i, a) in c.arrows.iter().enumerate() {
        from[a.dom].push(i);
    }
    for (f, fa) in c.arrows.iter().enumerate() {
        for &g in &from[fa.cod] {
            for &h in &from[c.arrows[g].cod] {
                let lhs = c.compose(g, f).and_then(|gf| c.compose(h, gf));
                let rhs = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                if lhs.is_none() || lhs != rhs {
                    report.push(
                        "associativity",
                        format!("{h} . ({g} . {f}) != ({h} . {g}) . {f}", h = name(h), g = name(g), f = name(f)),
                    );
                }
            }
        }
    }
    report
}

/// The thin category of a preorder: one arrow `leq(x,y)` from `x` to `y`
/// exactly when `x ≤ y`.
pub fn preorder_category<S: AsRef<str>>(
    name: impl Into<String>,
    elements: &[S],
    leq: impl Fn(usize, usize) -> bool,
) -> Result<FinCategory, CategoryError> {
    let n = elements.len();
    let label = |i: usize| elements[i].as_ref();
    let matrix: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
    if let Some(x) = (0..n).find(|&x| !matrix[x][x]) {
        return Err(CategoryError::NotPreorder(format!("not reflexive at {}", label(x))));
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| matrix[x][y]) {
            if let Some(z) = (0..n).find(|&z| matrix[y][z] && !matrix[x][z]) {
                return Err(CategoryError::NotPreorder(format!(
                    "not transitive: {x} <= {y} and {y} <= {z} but not {x} <= {z}",
                    x = label(x),
                    y = label(y),
                    z = label(z)
                )));
            }
        }
    }
    let objects: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
    let mut arrows = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for x in 0..n {
        for y in 0..n {
            if matrix[x][y] {
                index[x][y] = arrows.len();
                arrows.push(Arrow { name: format!("leq({},{})", label(x), label(y)), dom: x, cod: y });
            }
        }
    }
    let ids = (0..n).map(|x| index[x][x]).collect();
    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| matrix[x][y]) {
            for z in (0..n).filter(|&z| matrix[y][z]) {
                comp.insert((index[y][z], index[x][y]), index[x][z]);
            }
        }
    }
    FinCategory::from_tables(name, objects, arrows, ids, comp)
}

/// Same objects, arrows reversed, composition `f^op∘g^op = (g∘f)^op`.
/// Arrow names are kept; the category name toggles an `_op` suffix so that
/// taking the opposite twice returns the original exactly.
pub fn opposite_category(c: &FinCategory) -> FinCategory {
    let name = match c.name.strip_suffix("_op") {
        Some(base) => base.to_string(),
        None => format!("{}_op", c.name),
    };
    let arrows = c.arrows.iter().map(|a| Arrow { name: a.name.clone(), dom: a.cod, cod: a.dom }).collect();
    let comp = c.comp.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
    FinCategory { name, objects: c.objects.clone(), arrows, ids: c.ids.clone(), comp }
}

/// The inverse of `f`, found by searching `hom(cod f, dom f)`.
pub fn is_isomorphism(c: &FinCategory, f: &str) -> Result<Option<String>, CategoryError> {
    let fi = c.arrow_index(f).ok_or_else(|| CategoryError::UnknownArrow(f.to_string()))?;
    let a = &c.arrows[fi];
    let inverse = c.hom(a.cod, a.dom).into_iter().find(|&g| {
        c.compose(g, fi) == Some(c.ids[a.dom]) && c.compose(fi, g) == Some(c.ids[a.cod])
    });
    Ok(inverse.map(|g| c.arrows[g].name.clone()))
}

/// Objects with exactly one arrow to (initial) or from (terminal) every object.
pub fn find_initial_terminal(c: &FinCategory) -> (Vec<String>, Vec<String>) {
    let n = c.objects.len();
    let mut count = vec![vec![0usize; n]; n];
    for a in &c.arrows {
        count[a.dom][a.cod] += 1;
    }
    let initial = (0..n).filter(|&i| (0..n).all(|b| count[i][b] == 1)).map(|i| c.objects[i].clone()).collect();
    let terminal = (0..n).filter(|&t| (0..n).all(|b| count[b][t] == 1)).map(|t| c.objects[t].clone()).collect();
    (initial, terminal)
}

/// A functor given by its object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    name: String,
    src: FinCategory,
    dst: FinCategory,
    ob: Vec<usize>,
    ar: Vec<usize>,
}

impl FinFunctor {
    /// Identities of `src` that are left unmapped go to the identity of the
    /// image object. Every other object and arrow must be mapped exactly once.
    pub fn new<'a>(
        name: impl Into<String>,
        src: &FinCategory,
        dst: &FinCategory,
        objects: impl IntoIterator<Item = (&'a str, &'a str)>,
        arrows: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<FinFunctor, CategoryError> {
        let name = name.into();
        let ob = fill_map(
            &name,
            "object",
            src.objects.len(),
            objects,
            |s| src.object_index(s),
            |t| dst.object_index(t),
            |i| src.objects[i].clone(),
        )?;
        let mut given: Vec<Option<usize>> = vec![None; src.arrows.len()];
        for (s, t) in arrows {
            let si = src.arrow_index(s).ok_or_else(|| CategoryError::MalformedMap(format!("{name}: unknown source arrow {s}")))?;
            let ti = dst.arrow_index(t).ok_or_else(|| CategoryError::MalformedMap(format!("{name}: unknown target arrow {t}")))?;
            if given[si].replace(ti).is_some() {
                return Err(CategoryError::MalformedMap(format!("{name}: arrow {s} mapped twice")));
            }
        }
        for (o, &id) in src.ids.iter().enumerate() {
            given[id].get_or_insert(dst.ids[ob[o]]);
        }
        let ar = given
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| CategoryError::MalformedMap(format!("{name}: arrow {} is not mapped", src.arrows[i].name))))
            .collect::<Result<_, _>>()?;
        Ok(FinFunctor { name, src: src.clone(), dst: dst.clone(), ob, ar })
    }

    pub fn identity(c: &FinCategory) -> FinFunctor {
        FinFunctor {
            name: format!("id_{}", c.name),
            src: c.clone(),
            dst: c.clone(),
            ob: (0..c.objects.len()).collect(),
            ar: (0..c.arrows.len()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn src(&self) -> &FinCategory {
        &self.src
    }

    pub fn dst(&self) -> &FinCategory {
        &self.dst
    }

    pub fn object_image(&self, object: usize) -> usize {
        self.ob[object]
    }

    pub fn arrow_image(&self, arrow: usize) -> usize {
        self.ar[arrow]
    }

    fn same_maps(&self, other: &FinFunctor) -> bool {
        self.src == other.src && self.dst == other.dst && self.ob == other.ob && self.ar == other.ar
    }
}

fn fill_map<'a>(
    owner: &str,
    kind: &str,
    len: usize,
    pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    src_index: impl Fn(&str) -> Option<usize>,
    dst_index: impl Fn(&str) -> Option<usize>,
    src_name: impl Fn(usize) -> String,
) -> Result<Vec<usize>, CategoryError> {
    let mut out: Vec<Option<usize>> = vec![None; len];
    for (s, t) in pairs {
        let si = src_index(s).ok_or_else(|| CategoryError::MalformedMap(format!("{owner}: unknown source {kind} {s}")))?;
        let ti = dst_index(t).ok_or_else(|| CategoryError::MalformedMap(format!("{owner}: unknown target {kind} {t}")))?;
        if out[si].replace(ti).is_some() {
            return Err(CategoryError::MalformedMap(format!("{owner}: {kind} {s} mapped twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| CategoryError::MalformedMap(format!("{owner}: {kind} {} is not mapped", src_name(i)))))
        .collect()
}

pub fn check_functor(func: &FinFunctor) -> ViolationReport {
    let mut report = ViolationReport::default();
    let (src, dst) = (&func.src, &func.dst);
    for (f, a) in src.arrows.iter().enumerate() {
        let image = &dst.arrows[func.ar[f]];
        if image.dom != func.ob[a.dom] || image.cod != func.ob[a.cod] {
            report.push(
                "functor-typing",
                format!(
                    "{}({}) = {} : {} -> {}, expected {} -> {}",
                    func.name,
                    a.name,
                    image.name,
                    dst.objects[image.dom],
                    dst.objects[image.cod],
                    dst.objects[func.ob[a.dom]],
                    dst.objects[func.ob[a.cod]]
                ),
            );
        }
    }
    for (o, &id) in src.ids.iter().enumerate() {
        if func.ar[id] != dst.ids[func.ob[o]] {
            report.push(
                "functor-identity",
                format!("{}({}) = {} != {}", func.name, src.arrows[id].name, dst.arrows[func.ar[id]].name, dst.arrows[dst.ids[func.ob[o]]].name),
            );
        }
    }
    for (&(g, f), &gf) in &src.comp {
        let image = dst.compose(func.ar[g], func.ar[f]);
        if image != Some(func.ar[gf]) {
            report.push(
                "functor-composition",
                format!(
                    "{n}({g} . {f}) != {n}({g}) . {n}({f})",
                    n = func.name,
                    g = src.arrows[g].name,
                    f = src.arrows[f].name
                ),
            );
        }
    }
    report
}

/// A natural transformation `F ⇒ G` given by one component per object of
/// the common source category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinNatTrans {
    name: String,
    from: FinFunctor,
    to: FinFunctor,
    components: Vec<usize>,
}

impl FinNatTrans {
    pub fn new<'a>(
        name: impl Into<String>,
        from: &FinFunctor,
        to: &FinFunctor,
        components: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<FinNatTrans, CategoryError> {
        let name = name.into();
        if from.src != to.src || from.dst != to.dst {
            return Err(CategoryError::MalformedComponents(format!(
                "{name}: {} and {} do not share source and target categories",
                from.name, to.name
            )));
        }
        let (src, dst) = (&from.src, &from.dst);
        let components = fill_map(&name, "component", src.objects.len(), components, |s| src.object_index(s), |t| dst.arrow_index(t), |i| src.objects[i].clone())
            .map_err(|e| match e {
                CategoryError::MalformedMap(m) => CategoryError::MalformedComponents(m),
                other => other,
            })?;
        Ok(FinNatTrans { name, from: from.clone(), to: to.clone(), components })
    }

    /// `1_F`, with components `1_{F(A)}`.
    pub fn identity(func: &FinFunctor) -> FinNatTrans {
        FinNatTrans {
            name: format!("id_{}", func.name),
            from: func.clone(),
            to: func.clone(),
            components: func.ob.iter().map(|&o| func.dst.ids[o]).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn from(&self) -> &FinFunctor {
        &self.from
    }

    pub fn to(&self) -> &FinFunctor {
        &self.to
    }

    pub fn component(&self, object: usize) -> usize {
        self.components[object]
    }
}

pub fn check_nat_trans(t: &FinNatTrans) -> ViolationReport {
    let mut report = ViolationReport::default();
    let (src, dst) = (&t.from.src, &t.from.dst);
    for (o, &alpha) in t.components.iter().enumerate() {
        let a = &dst.arrows[alpha];
        if a.dom != t.from.ob[o] || a.cod != t.to.ob[o] {
            report.push(
                "component-typing",
                format!(
                    "{}_{} = {} : {} -> {}, expected {} -> {}",
                    t.name,
                    src.objects[o],
                    a.name,
                    dst.objects[a.dom],
                    dst.objects[a.cod],
                    dst.objects[t.from.ob[o]],
                    dst.objects[t.to.ob[o]]
                ),
            );
        }
    }
    for (f, a) in src.arrows.iter().enumerate() {
        let lhs = dst.compose(t.components[a.cod], t.from.ar[f]);
        let rhs = dst.compose(t.to.ar[f], t.components[a.dom]);
        if lhs.is_none() || lhs != rhs {
            report.push(
                "naturality",
                format!(
                    "square for {f}: {n}_{b} . {F}({f}) != {G}({f}) . {n}_{a}",
                    f = a.name,
                    n = t.name,
                    a = src.objects[a.dom],
                    b = src.objects[a.cod],
                    F = t.from.name,
                    G = t.to.name
                ),
            );
        }
    }
    report
}

/// `(β∘α)_A = β_A∘α_A`, for `α: F ⇒ G` and `β: G ⇒ H`.
pub fn vertical_compose(beta: &FinNatTrans, alpha: &FinNatTrans) -> Result<FinNatTrans, CategoryError> {
    if !alpha.to.same_maps(&beta.from) {
        return Err(CategoryError::MalformedComponents(format!(
            "{} ends at {} but {} starts at {}",
            alpha.name, alpha.to.name, beta.name, beta.from.name
        )));
    }
    let dst = &alpha.from.dst;
    let components = alpha
        .components
        .iter()
        .zip(&beta.components)
        .map(|(&a, &b)| {
            dst.compose(b, a).ok_or_else(|| {
                CategoryError::MalformedComponents(format!("{} . {} is undefined", dst.arrows[b].name, dst.arrows[a].name))
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(FinNatTrans {
        name: format!("{}_o_{}", beta.name, alpha.name),
        from: alpha.from.clone(),
        to: beta.to.clone(),
        components,
    })
}

/// The category with one object `*` and only its identity.
pub fn category_one() -> FinCategory {
    FinCategory::builder("1").object("*").build().expect("static table")
}

/// `A → B`.
pub fn category_two() -> FinCategory {
    FinCategory::builder("2").objects(["A", "B"]).arrow("f", "A", "B").build().expect("static table")
}

/// `A → B → C` together with the composite `h = g∘f`.
pub fn category_three() -> FinCategory {
    FinCategory::builder("3")
        .objects(["A", "B", "C"])
        .arrow("f", "A", "B")
        .arrow("g", "B", "C")
        .arrow("h", "A", "C")
        .compose("g", "f", "h")
        .build()
        .expect("static table")
}
