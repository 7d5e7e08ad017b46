//! Fuzzy subsets of a finite ordered groupoid and their sup-min product.

use std::fmt;
use std::ops::Index;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::structure::{bits, Element, FiniteOrderedGroupoid};

/// A total map from the elements of a structure into `[0,1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FuzzySubset {
    structure: Arc<FiniteOrderedGroupoid>,
    grades: Vec<Grade>,
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.structure.labels().iter().zip(&self.grades))
            .finish()
    }
}

impl fmt::Display for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .structure
            .labels()
            .iter()
            .zip(&self.grades)
            .map(|(l, g)| format!("{l}: {g}"))
            .collect();
        write!(f, "{{ {} }}", parts.join(", "))
    }
}

impl Index<Element> for FuzzySubset {
    type Output = Grade;

    fn index(&self, x: Element) -> &Grade {
        &self.grades[x.0]
    }
}

impl FuzzySubset {
    pub fn new(structure: Arc<FiniteOrderedGroupoid>, grades: Vec<Grade>) -> Result<Self> {
        if grades.len() != structure.len() {
            return Err(Error::Usage(format!(
                "fuzzy subset has {} grades for {} elements",
                grades.len(),
                structure.len()
            )));
        }
        Ok(FuzzySubset { structure, grades })
    }

    pub fn constant(structure: Arc<FiniteOrderedGroupoid>, value: Grade) -> Self {
        let grades = vec![value; structure.len()];
        FuzzySubset { structure, grades }
    }

    pub fn zero(structure: Arc<FiniteOrderedGroupoid>) -> Self {
        Self::constant(structure, Grade::ZERO)
    }

    /// `x_lambda`: `lambda` at `x`, zero elsewhere.
    pub fn fuzzy_point(
        structure: Arc<FiniteOrderedGroupoid>,
        x: Element,
        lambda: Grade,
    ) -> Result<Self> {
        check_element(&structure, x)?;
        let mut f = Self::zero(structure);
        f.grades[x.0] = lambda;
        Ok(f)
    }

    /// `f_A`: one on `members`, zero elsewhere.
    pub fn characteristic(structure: Arc<FiniteOrderedGroupoid>, members: &[Element]) -> Result<Self> {
        let mut f = Self::zero(structure);
        for &x in members {
            check_element(&f.structure, x)?;
            f.grades[x.0] = Grade::ONE;
        }
        Ok(f)
    }

    pub fn structure(&self) -> &Arc<FiniteOrderedGroupoid> {
        &self.structure
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn into_grades(self) -> Vec<Grade> {
        self.grades
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    fn same_structure(&self, other: &FuzzySubset) -> Result<()> {
        if Arc::ptr_eq(&self.structure, &other.structure) || self.structure == other.structure {
            Ok(())
        } else {
            Err(Error::Usage("fuzzy subsets live on different structures".into()))
        }
    }

    /// Sup-min product: `(f∘g)(a)` is the largest `min(f(x), g(y))` over
    /// pairs with `a <= x*y`, or zero when there is no such pair.
    pub fn compose(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.same_structure(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &FuzzySubset) -> FuzzySubset {
        let s = &*self.structure;
        let n = s.len();
        // best product value landing exactly on each element
        let mut exact = vec![Grade::ZERO; n];
        for x in 0..n {
            let fx = self.grades[x];
            if fx.is_zero() {
                continue;
            }
            for y in 0..n {
                let v = fx.min(other.grades[y]);
                let p = s.mul_index(x, y);
                if v > exact[p] {
                    exact[p] = v;
                }
            }
        }
        let grades = s
            .elements()
            .map(|a| {
                bits(s.up_mask(a))
                    .map(|p| exact[p])
                    .max()
                    .unwrap_or(Grade::ZERO)
            })
            .collect();
        FuzzySubset {
            structure: self.structure.clone(),
            grades,
        }
    }

    /// `f∘f`.
    pub fn square(&self) -> FuzzySubset {
        self.compose_unchecked(self)
    }

    /// Pointwise order: `f(x) <= g(x)` for every element.
    pub fn leq(&self, other: &FuzzySubset) -> Result<bool> {
        self.same_structure(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &FuzzySubset) -> bool {
        self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    /// First element where `self` exceeds `other`.
    pub(crate) fn first_excess(&self, other: &FuzzySubset) -> Option<Element> {
        self.grades
            .iter()
            .zip(&other.grades)
            .position(|(a, b)| a > b)
            .map(Element)
    }

    /// Sorted distinct grades taken by this subset.
    pub fn distinct_grades(&self) -> Vec<Grade> {
        let mut g = self.grades.clone();
        g.sort();
        g.dedup();
        g
    }
}

fn check_element(s: &FiniteOrderedGroupoid, x: Element) -> Result<()> {
    if x.0 < s.len() {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "element index {} out of range for {} elements",
            x.0,
            s.len()
        )))
    }
}
