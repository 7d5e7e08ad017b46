//! Fuzzy subsets of finite ordered groupoids.
//!
//! The crate provides exact sup-min composition of fuzzy subsets, deciders for
//! the pointwise (`f(x) >= f(x*x)`) and lattice (`g∘g ⪯ f` implies `g ⪯ f`)
//! notions of fuzzy semiprimeness, exhaustive small-model search, and exact
//! reproductions of two classical examples on infinite carriers.
//!
//! ```
//! use std::sync::Arc;
//! use fuzzy_semiprime::{dsl, is_semiprime_def1, is_semiprime_def2};
//!
//! let doc = dsl::parse(
//!     "groupoid G { elements: a b order: a<=b mul: a*a=b, a*b=b, b*a=b, b*b=b }
//!      fuzzy f on G { a: 0, b: 1 }",
//! )
//! .unwrap();
//! let f = &doc.fuzzy("f").unwrap().subset;
//! assert!(!is_semiprime_def1(f).holds);
//! assert!(is_semiprime_def2(f).holds);
//! ```

pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod fuzzy;
pub mod gallery;
pub mod grade;
pub mod report;
pub mod search;
pub mod semiprime;
pub mod structure;

pub use error::{Error, Result};
pub use fuzzy::FuzzySubset;
pub use grade::Grade;
pub use semiprime::{
    crisp_semiprime, def2_bruteforce, def2_threshold, default_oracle_grid, has_property_a,
    is_semiprime_def1, is_semiprime_def2, Checker, Witness, WitnessReport,
};
pub use structure::{validate, Element, FiniteOrderedGroupoid, RawTables, ValidationReport};
