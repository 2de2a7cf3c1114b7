use crate::fincat::{ChiObject, FinCategory, FinFunctor, FinNatTrans};
use crate::finspace::{FinSpace, MeasurableMap};
use crate::giry::{MixMeasure, MixMixMeasure};
use crate::kernel::StochKernel;
use crate::measure::{RationalMeasure, RealObservable};

use super::print;

/// Named objects of one kind, in declaration order.
#[derive(Debug, Clone)]
pub struct Registry<T> {
    entries: Vec<(String, T)>,
}

impl<T> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: Vec::new() }
    }
}

impl<T> Registry<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn insert(&mut self, name: String, value: T) {
        self.entries.push((name, value));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Space,
    Measure,
    Map,
    Kernel,
    Observable,
    Mix,
    Mix2,
    Chi,
    Category,
    Functor,
    NatTrans,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Space => "space",
            Kind::Measure => "measure",
            Kind::Map => "map",
            Kind::Kernel => "kernel",
            Kind::Observable => "observable",
            Kind::Mix => "mix",
            Kind::Mix2 => "mix2",
            Kind::Chi => "chi",
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::NatTrans => "nattrans",
        }
    }
}

/// Every object declared in a file, validated at load time.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub spaces: Registry<FinSpace>,
    pub measures: Registry<RationalMeasure>,
    pub maps: Registry<MeasurableMap>,
    pub kernels: Registry<StochKernel>,
    pub observables: Registry<RealObservable>,
    pub mixes: Registry<MixMeasure>,
    pub mix2s: Registry<MixMixMeasure>,
    pub chis: Registry<ChiObject>,
    pub categories: Registry<FinCategory>,
    pub functors: Registry<FinFunctor>,
    pub nattrans: Registry<FinNatTrans>,
    order: Vec<(Kind, String)>,
}

impl Workspace {
    pub fn contains(&self, kind: Kind, name: &str) -> bool {
        match kind {
            Kind::Space => self.spaces.contains(name),
            Kind::Measure => self.measures.contains(name),
            Kind::Map => self.maps.contains(name),
            Kind::Kernel => self.kernels.contains(name),
            Kind::Observable => self.observables.contains(name),
            Kind::Mix => self.mixes.contains(name),
            Kind::Mix2 => self.mix2s.contains(name),
            Kind::Chi => self.chis.contains(name),
            Kind::Category => self.categories.contains(name),
            Kind::Functor => self.functors.contains(name),
            Kind::NatTrans => self.nattrans.contains(name),
        }
    }

    pub(crate) fn record(&mut self, kind: Kind, name: &str) {
        self.order.push((kind, name.to_string()));
    }

    /// Declarations in their original order.
    pub fn declarations(&self) -> &[(Kind, String)] {
        &self.order
    }

    /// Canonical text of one declaration.
    pub fn declaration_text(&self, kind: Kind, name: &str) -> Option<String> {
        Some(match kind {
            Kind::Space => print::space(self.spaces.get(name)?),
            Kind::Measure => print::measure(name, self.measures.get(name)?),
            Kind::Map => print::map(self.maps.get(name)?),
            Kind::Kernel => print::kernel(name, self.kernels.get(name)?),
            Kind::Observable => print::observable(name, self.observables.get(name)?),
            Kind::Mix => print::mix(name, self.mixes.get(name)?),
            Kind::Mix2 => print::mix2(name, self.mix2s.get(name)?),
            Kind::Chi => print::chi(name, self.chis.get(name)?),
            Kind::Category => print::category(self.categories.get(name)?),
            Kind::Functor => print::functor(self.functors.get(name)?),
            Kind::NatTrans => print::nattrans(self.nattrans.get(name)?),
        })
    }

    /// The whole workspace in canonical declaration syntax, one declaration
    /// per line. Parsing the result gives back an equal workspace.
    pub fn to_text(&self) -> String {
        self.order
            .iter()
            .map(|(kind, name)| self.declaration_text(*kind, name).expect("recorded declarations exist") + "\n")
            .collect()
    }
}
