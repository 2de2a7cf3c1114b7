//! Finite probability spaces, stochastic kernels and the Giry monad, with
//! exact rational arithmetic and exhaustive law checking.

pub mod cli;
pub mod fincat;
pub mod finspace;
pub mod giry;
pub mod kernel;
pub mod measure;
pub mod report;
pub mod sample;

pub use finspace::{FinSpace, MeasurableMap, MeasurableSet, Partition};
pub use giry::{MixMeasure, MixMixMeasure};
pub use kernel::StochKernel;
pub use measure::{RationalMeasure, RealObservable};
pub use report::LawCheck;

/// Exact rational scalar used for every weight, mass and observable value.
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`]. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `n`, `-n`, `n/d` or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().ok()?;
        let d: num_bigint::BigInt = d.trim().parse().ok()?;
        if d == num_bigint::BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: num_bigint::BigInt = format!("{int_digits}{frac}").parse().ok()?;
        let scale = num_bigint::BigInt::from(10).pow(frac.len() as u32);
        let value = Rational::new(digits, scale);
        return Some(if negative { -value } else { value });
    }
    let n: num_bigint::BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/giry.md")]
    mod giry {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
