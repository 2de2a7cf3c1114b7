use crate::finspace::{is_sub_sigma_algebra, FinSpace, Partition};
use crate::measure::{absolutely_continuous, MeasureError, RationalMeasure};

use super::{preorder_category, CategoryError, FinCategory};

/// An object of the χ category: a sub-σ-algebra of a fixed ambient space
/// together with a probability measure on the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiObject {
    ambient: FinSpace,
    sub_atoms: Partition,
    measure: RationalMeasure,
}

impl ChiObject {
    pub fn new(ambient: &FinSpace, sub_atoms: Partition, measure: RationalMeasure) -> Result<ChiObject, CategoryError> {
        if measure.space() != ambient {
            return Err(CategoryError::AmbientMismatch(format!(
                "measure lives on {}, not on {}",
                measure.space().name(),
                ambient.name()
            )));
        }
        if !measure.is_probability() {
            return Err(MeasureError::NotProbability { total: measure.total() }.into());
        }
        if !is_sub_sigma_algebra(&sub_atoms, &ambient.partition())? {
            return Err(CategoryError::AmbientMismatch(format!(
                "atoms {:?} do not generate a sub-sigma-algebra of {}",
                sub_atoms.blocks(),
                ambient.name()
            )));
        }
        Ok(ChiObject { ambient: ambient.clone(), sub_atoms, measure })
    }

    pub fn ambient(&self) -> &FinSpace {
        &self.ambient
    }

    pub fn sub_atoms(&self) -> &Partition {
        &self.sub_atoms
    }

    pub fn measure(&self) -> &RationalMeasure {
        &self.measure
    }
}

/// `V ≤_χ U`: the σ-algebra of `V` is contained in that of `U` and the
/// measure of `U` is absolutely continuous with respect to that of `V`.
pub fn chi_leq(v: &ChiObject, u: &ChiObject) -> Result<bool, CategoryError> {
    if v.ambient != u.ambient {
        return Err(CategoryError::AmbientMismatch(format!(
            "{} and {} are different ambient spaces",
            v.ambient.name(),
            u.ambient.name()
        )));
    }
    Ok(is_sub_sigma_algebra(&v.sub_atoms, &u.sub_atoms)? && absolutely_continuous(&u.measure, &v.measure)?)
}

/// The thin category on `objs` ordered by [`chi_leq`].
pub fn chi_category(ambient: &FinSpace, objs: &[(String, ChiObject)]) -> Result<FinCategory, CategoryError> {
    if let Some((name, _)) = objs.iter().find(|(_, o)| o.ambient != *ambient) {
        return Err(CategoryError::AmbientMismatch(format!("{name} is not over {}", ambient.name())));
    }
    let n = objs.len();
    let mut matrix = vec![vec![false; n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = chi_leq(&objs[i].1, &objs[j].1)?;
        }
    }
    let names: Vec<&str> = objs.iter().map(|(n, _)| n.as_str()).collect();
    preorder_category(format!("chi_{}", ambient.name()), &names, |i, j| matrix[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;
    use crate::rat;

    fn x4() -> FinSpace {
        FinSpace::discrete("X", ["a", "b", "c", "d"])
    }

    fn obj(space: &FinSpace, blocks: Vec<Vec<&str>>, w: [i64; 4]) -> ChiObject {
        let m = RationalMeasure::probability(space, w.iter().map(|&n| rat(n, 4)).collect()).unwrap();
        ChiObject::new(space, Partition::new(space.points().iter().map(String::as_str), blocks).unwrap(), m).unwrap()
    }

    #[test]
    fn reflexive_and_refinement() {
        let x = x4();
        let coarse = obj(&x, vec![vec!["a", "b"], vec!["c", "d"]], [1, 1, 1, 1]);
        let fine = obj(&x, vec![vec!["a"], vec!["b"], vec!["c"], vec!["d"]], [2, 0, 2, 0]);
        assert!(chi_leq(&coarse, &coarse).unwrap());
        assert!(chi_leq(&coarse, &fine).unwrap());
        assert!(!chi_leq(&fine, &coarse).unwrap());
    }

    #[test]
    fn mutually_singular_measures_have_no_arrows() {
        let x = x4();
        let p = obj(&x, vec![vec!["a", "b", "c", "d"]], [4, 0, 0, 0]);
        let q = obj(&x, vec![vec!["a", "b", "c", "d"]], [0, 4, 0, 0]);
        let c = chi_category(&x, &[("P".into(), p), ("Q".into(), q)]).unwrap();
        assert_eq!(c.arrows().len(), 2);
        assert!(validate_category(&c).is_valid());
    }

    #[test]
    fn single_object() {
        let x = x4();
        let p = obj(&x, vec![vec!["a", "b", "c", "d"]], [1, 1, 1, 1]);
        let c = chi_category(&x, &[("V".into(), p)]).unwrap();
        assert_eq!(c.arrows().len(), 1);
        assert_eq!(c.arrow(0).name, "leq(V,V)");
    }

    #[test]
    fn rejects_foreign_objects() {
        let x = x4();
        let y = FinSpace::discrete("Y", ["a", "b", "c", "d"]).renamed("Y");
        let coarse = FinSpace::new("Z", ["a", "b", "c", "d"], vec![vec!["a", "b"], vec!["c", "d"]]).unwrap();
        let m = RationalMeasure::uniform_over_atoms(&coarse);
        let fine = Partition::discrete(["a", "b", "c", "d"]);
        assert!(matches!(ChiObject::new(&coarse, fine, m), Err(CategoryError::AmbientMismatch(_))));
        let p = obj(&x, vec![vec!["a", "b", "c", "d"]], [1, 1, 1, 1]);
        // same points and atoms: equal as spaces regardless of name
        assert!(chi_leq(&p, &obj(&y, vec![vec!["a", "b", "c", "d"]], [1, 1, 1, 1])).unwrap());
        let other = FinSpace::discrete("W", ["a", "b"]);
        let q = ChiObject::new(&other, Partition::trivial(["a", "b"]), RationalMeasure::uniform_over_atoms(&other)).unwrap();
        assert!(matches!(chi_leq(&p, &q), Err(CategoryError::AmbientMismatch(_))));
    }
}
