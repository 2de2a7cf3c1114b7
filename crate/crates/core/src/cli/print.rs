//! Canonical declaration syntax for every workspace object.

use std::fmt::Write;

use crate::fincat::{ChiObject, FinCategory, FinFunctor, FinNatTrans};
use crate::finspace::{FinSpace, MeasurableMap};
use crate::giry::{MixMeasure, MixMixMeasure};
use crate::kernel::StochKernel;
use crate::measure::{RationalMeasure, RealObservable};
use crate::Rational;

/// Lowest terms, denominator dropped when it is 1, sign on the numerator.
pub fn rational(r: &Rational) -> String {
    r.to_string()
}

fn atom(space: &FinSpace, a: usize) -> String {
    format!("{{{}}}", space.label_of_atom(a))
}

fn weighted_atoms(space: &FinSpace, weights: &[Rational], sep: &str) -> String {
    weights.iter().enumerate().map(|(a, w)| format!("{}={}", atom(space, a), rational(w))).collect::<Vec<_>>().join(sep)
}

pub fn space(s: &FinSpace) -> String {
    let atoms: Vec<String> = (0..s.atom_count()).map(|a| atom(s, a)).collect();
    format!("space {} {{ points = {}; atoms = {}; }}", s.name(), s.points().join(", "), atoms.join(" "))
}

/// `[{a}=1/3, {b,c}=2/3]`
pub fn measure_literal(m: &RationalMeasure) -> String {
    format!("[{}]", weighted_atoms(m.space(), m.weights(), ", "))
}

pub fn measure(name: &str, m: &RationalMeasure) -> String {
    let finite = if m.is_probability() { "" } else { " finite" };
    format!("measure {name} on {}{finite} {{ {}; }}", m.space().name(), weighted_atoms(m.space(), m.weights(), "; "))
}

pub fn map(f: &MeasurableMap) -> String {
    let body: String = f.pairs().map(|(x, y)| format!(" {x} -> {y};")).collect();
    format!("map {} : {} -> {} {{{body} }}", f.name(), f.dom().name(), f.cod().name())
}

pub fn kernel(name: &str, k: &StochKernel) -> String {
    let mut body = String::new();
    for (a, row) in k.rows().iter().enumerate() {
        write!(body, " {}: {};", atom(k.dom(), a), weighted_atoms(k.cod(), row, ", ")).unwrap();
    }
    format!("kernel {name} : {} ~> {} {{{body} }}", k.dom().name(), k.cod().name())
}

pub fn observable(name: &str, o: &RealObservable) -> String {
    format!("observable {name} on {} {{ {}; }}", o.space().name(), weighted_atoms(o.space(), o.values(), "; "))
}

/// `[[{a}=1, {b}=0]=1/2, [{a}=0, {b}=1]=1/2]`
pub fn mix_literal(m: &MixMeasure) -> String {
    let entries: Vec<String> = m.entries().map(|(p, w)| format!("{}={}", measure_literal(p), rational(w))).collect();
    format!("[{}]", entries.join(", "))
}

pub fn mix(name: &str, m: &MixMeasure) -> String {
    let body: String = m.entries().map(|(p, w)| format!(" {}={};", measure_literal(p), rational(w))).collect();
    format!("mix {name} on {} {{{body} }}", m.base().name())
}

pub fn mix2(name: &str, mm: &MixMixMeasure) -> String {
    let body: String = mm.entries().map(|(m, w)| format!(" {}={};", mix_literal(m), rational(w))).collect();
    format!("mix2 {name} on {} {{{body} }}", mm.base().name())
}

pub fn chi(name: &str, c: &ChiObject) -> String {
    let atoms: Vec<String> = c.sub_atoms().blocks().iter().map(|b| format!("{{{}}}", b.join(","))).collect();
    format!(
        "chi {name} on {} {{ atoms = {}; measure = {}; }}",
        c.ambient().name(),
        atoms.join(" "),
        measure_literal(c.measure())
    )
}

/// Identities keep their default name `id_<object>` unless stated, and
/// composites with an identity that the parser fills in are omitted.
pub fn category(c: &FinCategory) -> String {
    let mut body = format!(" objects = {};", c.objects().join(", "));
    for (o, &id) in c.identities().iter().enumerate() {
        let name = &c.arrow(id).name;
        if *name != format!("id_{}", c.objects()[o]) {
            write!(body, " id {} = {name};", c.objects()[o]).unwrap();
        }
    }
    for a in c.arrows().iter().enumerate().filter(|(i, _)| !c.is_identity(*i)).map(|(_, a)| a) {
        write!(body, " arrow {} : {} -> {};", a.name, c.objects()[a.dom], c.objects()[a.cod]).unwrap();
    }
    for (&(g, f), &h) in c.composition_table() {
        let implied = (c.is_identity(g) && h == f) || (c.is_identity(f) && h == g);
        if !implied {
            write!(body, " comp {} . {} = {};", c.arrow(g).name, c.arrow(f).name, c.arrow(h).name).unwrap();
        }
    }
    format!("category {} {{{body} }}", c.name())
}

pub fn functor(f: &FinFunctor) -> String {
    let (src, dst) = (f.src(), f.dst());
    let mut body = String::new();
    for (o, name) in src.objects().iter().enumerate() {
        write!(body, " ob {name} -> {};", dst.objects()[f.object_image(o)]).unwrap();
    }
    for (a, arrow) in src.arrows().iter().enumerate() {
        write!(body, " ar {} -> {};", arrow.name, dst.arrow(f.arrow_image(a)).name).unwrap();
    }
    format!("functor {} : {} -> {} {{{body} }}", f.name(), src.name(), dst.name())
}

pub fn nattrans(t: &FinNatTrans) -> String {
    let src = t.from().src();
    let dst = t.from().dst();
    let body: String =
        src.objects().iter().enumerate().map(|(o, name)| format!(" {name}: {};", dst.arrow(t.component(o)).name)).collect();
    format!("nattrans {} : {} => {} {{{body} }}", t.name(), t.from().name(), t.to().name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rational_format() {
        assert_eq!(rational(&rat(-2, 6)), "-1/3");
        assert_eq!(rational(&rat(4, 2)), "2");
        assert_eq!(rational(&rat(0, 5)), "0");
    }

    #[test]
    fn space_and_measure_format() {
        let x = FinSpace::new("X", ["a", "b", "c"], vec![vec!["a"], vec!["b", "c"]]).unwrap();
        assert_eq!(space(&x), "space X { points = a, b, c; atoms = {a} {b,c}; }");
        let p = RationalMeasure::probability(&x, vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(measure("P", &p), "measure P on X { {a}=1/3; {b,c}=2/3; }");
        let mu = RationalMeasure::finite(&x, vec![rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(measure("mu", &mu), "measure mu on X finite { {a}=1; {b,c}=2; }");
    }
}
