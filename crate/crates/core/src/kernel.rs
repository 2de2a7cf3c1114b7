//! Stochastic kernels between finite spaces.
//!
//! A kernel `T: X ~> Y` assigns to each point of `X` a probability measure on
//! `Y`, and `T(·, F)` must be measurable for every event `F`. On a finite space
//! that second condition forces `T` to be constant on the atoms of `X`, so a
//! kernel is stored as one probability row per domain atom: a row-stochastic
//! matrix over atoms.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::finspace::{FinSpace, MeasurableMap, MeasurableSet, SpaceError};
use crate::measure::{MeasureError, RationalMeasure};
use crate::report::LawCheck;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("RowNotNormalized: row for atom {{{atom}}} sums to {total}, not 1")]
    RowNotNormalized { atom: String, total: Rational },
    #[error("NegativeWeight: row {{{atom}}} has negative weight {weight}")]
    NegativeWeight { atom: String, weight: Rational },
    #[error("ArityMismatch: {0}")]
    ArityMismatch(String),
    #[error("SpaceMismatch: {0}")]
    SpaceMismatch(String),
    #[error("NotProbability: input measure has total mass {total}")]
    NotProbability { total: Rational },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct StochKernel {
    dom: FinSpace,
    cod: FinSpace,
    rows: Vec<Vec<Rational>>,
}

impl StochKernel {
    /// Validates one probability row per domain atom, one weight per codomain atom.
    pub fn new(dom: &FinSpace, cod: &FinSpace, rows: Vec<Vec<Rational>>) -> Result<StochKernel, KernelError> {
        if rows.len() != dom.atom_count() {
            return Err(KernelError::ArityMismatch(format!(
                "expected {} rows, got {}",
                dom.atom_count(),
                rows.len()
            )));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != cod.atom_count() {
                return Err(KernelError::ArityMismatch(format!(
                    "row {{{}}} has {} entries, expected {}",
                    dom.label_of_atom(a),
                    row.len(),
                    cod.atom_count()
                )));
            }
            if let Some(w) = row.iter().find(|w| w.is_negative()) {
                return Err(KernelError::NegativeWeight { atom: dom.label_of_atom(a), weight: w.clone() });
            }
            let total: Rational = row.iter().sum();
            if !total.is_one() {
                return Err(KernelError::RowNotNormalized { atom: dom.label_of_atom(a), total });
            }
        }
        Ok(StochKernel { dom: dom.clone(), cod: cod.clone(), rows })
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `T_x` for any `x` in domain atom `atom`.
    pub fn row(&self, atom: usize) -> RationalMeasure {
        RationalMeasure::from_parts_unchecked(&self.cod, self.rows[atom].clone())
    }

    /// `T(x, F)`.
    pub fn eval(&self, x: &str, set: &MeasurableSet) -> Result<Rational, KernelError> {
        let i = self.dom.point_index(x).ok_or_else(|| SpaceError::UnknownPoint(x.to_string()))?;
        if set.space() != &self.cod {
            return Err(KernelError::SpaceMismatch("event is not on the kernel's codomain".into()));
        }
        let row = &self.rows[self.dom.atom_of(i)];
        Ok(set.atom_indices().map(|b| &row[b]).sum())
    }
}

impl fmt::Debug for StochKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~> {} ", self.dom.name(), self.cod.name())?;
        f.debug_list().entries(self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())).finish()
    }
}

/// `δ_f`: the 0/1 kernel sending `x` to the Dirac measure at `f(x)`.
pub fn det_kernel(f: &MeasurableMap) -> StochKernel {
    let rows = (0..f.dom().atom_count())
        .map(|a| {
            let target = f.image_atom(a);
            (0..f.cod().atom_count())
                .map(|b| if b == target { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    StochKernel { dom: f.dom().clone(), cod: f.cod().clone(), rows }
}

/// The characteristic kernel `Id(x, F) = 1_F(x)`.
pub fn identity_kernel(space: &FinSpace) -> StochKernel {
    det_kernel(&MeasurableMap::identity(space))
}

/// `U ∘ T`, with `(U∘T)(x, C) = Σ_B T(x, B) · U(B, C)` over atoms `B` of the
/// middle space.
pub fn compose_kernels(u: &StochKernel, t: &StochKernel) -> Result<StochKernel, KernelError> {
    if t.cod != u.dom {
        return Err(KernelError::SpaceMismatch(format!(
            "cannot compose: {} ~> {} then {} ~> {}",
            t.dom.name(),
            t.cod.name(),
            u.dom.name(),
            u.cod.name()
        )));
    }
    let width = u.cod.atom_count();
    let rows = t
        .rows
        .iter()
        .map(|trow| {
            let mut out = vec![Rational::zero(); width];
            for (tb, urow) in trow.iter().zip(&u.rows) {
                if tb.is_zero() {
                    continue;
                }
                for (slot, uc) in out.iter_mut().zip(urow) {
                    *slot += tb * uc;
                }
            }
            out
        })
        .collect();
    Ok(StochKernel { dom: t.dom.clone(), cod: u.cod.clone(), rows })
}

/// Pushes a probability measure through a kernel: `(T♯m)(B) = Σ_A m(A)·T(A, B)`.
pub fn kleisli_apply(t: &StochKernel, m: &RationalMeasure) -> Result<RationalMeasure, KernelError> {
    if m.space() != &t.dom {
        return Err(KernelError::SpaceMismatch("measure is not on the kernel's domain".into()));
    }
    if !m.is_probability() {
        return Err(KernelError::NotProbability { total: m.total() });
    }
    let mut out = vec![Rational::zero(); t.cod.atom_count()];
    for (w, row) in m.weights().iter().zip(&t.rows) {
        if w.is_zero() {
            continue;
        }
        for (slot, r) in out.iter_mut().zip(row) {
            *slot += w * r;
        }
    }
    Ok(RationalMeasure::from_parts_unchecked(&t.cod, out))
}

impl From<MeasureError> for KernelError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Space(s) => KernelError::Space(s),
            other => KernelError::SpaceMismatch(other.to_string()),
        }
    }
}

/// Category laws of Stoch over a finite collection of kernels.
#[derive(Debug, Clone)]
pub struct StochLawReport {
    pub associativity: LawCheck,
    pub left_identity: LawCheck,
    pub right_identity: LawCheck,
}

impl StochLawReport {
    pub fn passed(&self) -> bool {
        self.associativity.passed() && self.left_identity.passed() && self.right_identity.passed()
    }
}

/// Checks `V∘(U∘T) = (V∘U)∘T` on every composable triple drawn from `kernels`,
/// and `Id∘T = T = T∘Id` on every kernel.
pub fn check_stoch_laws(kernels: &[StochKernel]) -> StochLawReport {
    let mut report = StochLawReport {
        associativity: LawCheck::new("associativity"),
        left_identity: LawCheck::new("left-identity"),
        right_identity: LawCheck::new("right-identity"),
    };
    for (i, t) in kernels.iter().enumerate() {
        let left = compose_kernels(&identity_kernel(&t.cod), t).expect("identity is composable");
        report.left_identity.record(left == *t, || format!("Id o T != T for kernel #{i}"));
        let right = compose_kernels(t, &identity_kernel(&t.dom)).expect("identity is composable");
        report.right_identity.record(right == *t, || format!("T o Id != T for kernel #{i}"));
    }
    for (i, t) in kernels.iter().enumerate() {
        for (j, u) in kernels.iter().enumerate().filter(|(_, u)| u.dom == t.cod) {
            let ut = compose_kernels(u, t).expect("checked composable");
            for (k, v) in kernels.iter().enumerate().filter(|(_, v)| v.dom == u.cod) {
                let lhs = compose_kernels(v, &ut).expect("checked composable");
                let vu = compose_kernels(v, u).expect("checked composable");
                let rhs = compose_kernels(&vu, t).expect("checked composable");
                report
                    .associativity
                    .record(lhs == rhs, || format!("V o (U o T) != (V o U) o T for kernels #{k}, #{j}, #{i}"));
            }
        }
    }
    report
}
