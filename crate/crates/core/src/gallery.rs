//! Exact reproductions of two examples that live on infinite carriers:
//!
//! * the naturals `{2, 3, 4, ...}` under multiplication with the step grade
//!   `f(2) = 0`, `f(x) = 1` for `x > 2`, which is lattice-semiprime but not
//!   pointwise semiprime;
//! * the real interval `[0,1]` under multiplication with `f` the identity,
//!   which is pointwise semiprime but breaks condition (a).
//!
//! The first is handled through a finite window `{2, ..., N}` with `f` in
//! closed form; the second through a rational sample with products evaluated
//! exactly.

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::report::ElementNames;
use crate::semiprime::{Checker, Witness, WitnessReport};
use crate::structure::{Element, FiniteOrderedGroupoid};

/// The window `{2, ..., N}` of the naturals with the step grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem4Window {
    bound: u64,
}

impl Theorem4Window {
    pub const SMALLEST_BOUND: u64 = 4;

    pub fn new(bound: u64) -> Result<Self> {
        if bound < Self::SMALLEST_BOUND {
            return Err(Error::Usage(format!("window bound {bound} is below 4")));
        }
        if bound > u64::from(u32::MAX) {
            return Err(Error::Usage(format!("window bound {bound} is too large")));
        }
        Ok(Theorem4Window { bound })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `f(2) = 0`, `f(x) = 1` for `x > 2`.
    pub fn grade(x: u64) -> Grade {
        debug_assert!(x >= 2);
        if x == 2 {
            Grade::ZERO
        } else {
            Grade::ONE
        }
    }

    fn element(x: u64) -> Element {
        Element((x - 2) as usize)
    }

    /// Pointwise semiprimeness over the window. `f(x*x)` is evaluated in
    /// closed form, so every `x` in the window is checked.
    pub fn def1_report(&self) -> WitnessReport {
        let witness = (2..=self.bound).find_map(|x| {
            let (fx, fxx) = (Self::grade(x), Self::grade(x * x));
            (fx < fxx).then(|| Witness::Square {
                x: Self::element(x),
                xx: Self::element(x * x),
                fx,
                fxx,
            })
        });
        match witness {
            Some(w) => WitnessReport::fails(Checker::Theorem4Def1, w),
            None => WitnessReport::holds(Checker::Theorem4Def1),
        }
    }

    /// The fuzzy-point criterion `f(x) >= min{ f(a) : 2 <= a <= x*x }` at
    /// every `x` whose square stays inside the window.
    pub fn def2_report(&self) -> WitnessReport {
        let witness = (2..=self.max_checked()).find_map(|x| {
            let lambda = min_grade((2..=x * x).map(Self::grade));
            let fx = Self::grade(x);
            (fx < lambda).then(|| Witness::FuzzyPoint {
                x: Self::element(x),
                lambda,
                fx,
            })
        });
        match witness {
            Some(w) => WitnessReport::fails(Checker::Theorem4Def2Window, w),
            None => WitnessReport::holds(Checker::Theorem4Def2Window),
        }
    }

    /// Largest `x` with `x*x <= N`.
    pub fn max_checked(&self) -> u64 {
        let mut r = (self.bound as f64).sqrt() as u64;
        while r * r > self.bound {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= self.bound {
            r += 1;
        }
        r
    }

    /// The window as a finite ordered semigroup: usual order, products
    /// saturated at `N` (`x*y = min(xy, N)`). Needs `N <= 65`.
    pub fn saturated_structure(&self) -> Result<FiniteOrderedGroupoid> {
        let n = self.bound;
        let values: Vec<u64> = (2..=n).collect();
        let labels = values.iter().map(u64::to_string).collect();
        let mul = values
            .iter()
            .map(|&x| values.iter().map(|&y| ((x * y).min(n) - 2) as usize).collect())
            .collect();
        let chain: Vec<(usize, usize)> = (1..values.len()).map(|i| (i - 1, i)).collect();
        FiniteOrderedGroupoid::from_order_pairs(labels, mul, &chain)
    }

    /// Plain-text account of both checks.
    pub fn transcript(&self) -> Vec<String> {
        let mut lines = vec![
            format!("carrier: {{2, ..., {}}} with the usual product and order", self.bound),
            "f(2) = 0, f(x) = 1 for x > 2".to_string(),
        ];
        match &self.def1_report().witness {
            Some(Witness::Square { fx, fxx, .. }) => {
                lines.push(format!("pointwise semiprime: fails at x = 2, f(2) = {fx} < f(4) = {fxx}"))
            }
            _ => lines.push("pointwise semiprime: holds".to_string()),
        }
        let upto = self.max_checked();
        let verdict = if self.def2_report().holds { "holds" } else { "fails" };
        lines.push(format!(
            "fuzzy-point criterion f(x) >= min{{f(a) : 2 <= a <= x*x}} for 2 <= x <= {upto}: {verdict}"
        ));
        lines.push(
            "x = 2: min{f(2), f(3), f(4)} = 0 <= f(2); x > 2: f(x) = 1 bounds every grade".to_string(),
        );
        lines.push(format!(
            "scope: checked per element for x*x <= {}, not a machine proof over every g on the infinite carrier",
            self.bound
        ));
        lines
    }
}

impl ElementNames for Theorem4Window {
    fn element_name(&self, e: Element) -> String {
        (e.0 as u64 + 2).to_string()
    }
}

/// Minimum of a nonempty sequence of grades, stopping early at zero.
fn min_grade(grades: impl Iterator<Item = Grade>) -> Grade {
    let mut best = Grade::ONE;
    for g in grades {
        if g < best {
            best = g;
            if best.is_zero() {
                break;
            }
        }
    }
    best
}

/// `def1` on the window: fails at 2 with `f(2) = 0`, `f(4) = 1`.
pub fn theorem4_def1_fails(window: &Theorem4Window) -> WitnessReport {
    window.def1_report()
}

/// The windowed fuzzy-point criterion for `{2, ..., bound}`.
pub fn theorem4_def2_holds(bound: u64) -> Result<WitnessReport> {
    Ok(Theorem4Window::new(bound)?.def2_report())
}

/// A rational sample of `[0,1]` with the identity grade `f(x) = x`.
///
/// `points` holds the base sample followed by any squares not already in it,
/// so every witness element has a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remark6 {
    base: usize,
    points: Vec<Grade>,
}

impl Default for Remark6 {
    fn default() -> Self {
        let g = |p, q| Grade::new(p, q).expect("sample point in [0,1]");
        Remark6::new(vec![
            Grade::ZERO,
            g(1, 10),
            g(1, 9),
            g(1, 6),
            g(1, 4),
            g(1, 3),
            g(1, 2),
            Grade::ONE,
        ])
    }
}

impl Remark6 {
    pub fn new(sample: Vec<Grade>) -> Self {
        let base = sample.len();
        let mut points = sample;
        for i in 0..base {
            let sq = points[i] * points[i];
            if !points.contains(&sq) {
                points.push(sq);
            }
        }
        Remark6 { base, points }
    }

    pub fn sample(&self) -> &[Grade] {
        &self.points[..self.base]
    }

    fn position(&self, v: Grade) -> Element {
        Element(self.points.iter().position(|&p| p == v).expect("point in sample"))
    }

    /// `f(x) >= f(x*x)` at every sample point; the product is exact.
    pub fn def1_report(&self) -> WitnessReport {
        let witness = self.sample().iter().find_map(|&x| {
            let xx = x * x;
            (x < xx).then(|| Witness::Square {
                x: self.position(x),
                xx: self.position(xx),
                fx: x,
                fxx: xx,
            })
        });
        match witness {
            Some(w) => WitnessReport::fails(Checker::Remark6Def1, w),
            None => WitnessReport::holds(Checker::Remark6Def1),
        }
    }

    /// Condition (a) at one triple: it fails when `a <= x*y` and
    /// `min(f(x*x), f(y*y)) > f(a)`.
    pub fn property_a_at(&self, a: Grade, x: Grade, y: Grade) -> WitnessReport {
        let (xx, yy) = (x * x, y * y);
        if a <= x * y && xx.min(yy) > a {
            WitnessReport::fails(
                Checker::Remark6PropertyA,
                Witness::Triple {
                    a: self.position(a),
                    x: self.position(x),
                    y: self.position(y),
                    fa: a,
                    fxx: xx,
                    fyy: yy,
                },
            )
        } else {
            WitnessReport::holds(Checker::Remark6PropertyA)
        }
    }

    /// Condition (a) at `a = 1/10`, `x = 1/2`, `y = 1/3`.
    pub fn property_a_report(&self) -> WitnessReport {
        let g = |p, q| Grade::new(p, q).expect("in range");
        self.property_a_at(g(1, 10), g(1, 2), g(1, 3))
    }

    pub fn check(&self) -> (WitnessReport, WitnessReport) {
        (self.def1_report(), self.property_a_report())
    }

    pub fn transcript(&self) -> Vec<String> {
        let sample: Vec<String> = self.sample().iter().map(Grade::to_string).collect();
        let mut lines = vec![
            format!("sample of [0,1]: {{{}}}, f(x) = x", sample.join(", ")),
            format!(
                "pointwise semiprime on the sample (x*x <= x): {}",
                if self.def1_report().holds { "holds" } else { "fails" }
            ),
        ];
        match &self.property_a_report().witness {
            Some(Witness::Triple { fa, fxx, fyy, .. }) => {
                let m = (*fxx).min(*fyy);
                lines.push(format!("1/10 <= 1/6 = 1/2 * 1/3, min{{f(1/4), f(1/9)}} = min{{{fxx}, {fyy}}} = {m}"));
                lines.push(format!(
                    "{m} > {fa} since {} * {} > {} * {}: condition (a) fails",
                    m.numer(),
                    fa.denom(),
                    fa.numer(),
                    m.denom()
                ));
            }
            _ => lines.push("condition (a) holds at (1/10, 1/2, 1/3)".to_string()),
        }
        lines
    }
}

impl ElementNames for Remark6 {
    fn element_name(&self, e: Element) -> String {
        self.points[e.0].to_string()
    }
}

/// Pointwise semiprimeness and condition (a) for the identity on `[0,1]`.
pub fn remark6_check() -> (WitnessReport, WitnessReport) {
    Remark6::default().check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzySubset;
    use crate::semiprime::{is_semiprime_def1, is_semiprime_def2};
    use std::sync::Arc;

    #[test]
    fn step_function_pointwise_witness_is_two() {
        for n in [4, 5, 17, 1000] {
            let w = Theorem4Window::new(n).unwrap();
            let r = theorem4_def1_fails(&w);
            assert!(!r.holds);
            match r.witness.unwrap() {
                Witness::Square { x, xx, fx, fxx } => {
                    assert_eq!(w.element_name(x), "2");
                    assert_eq!(w.element_name(xx), "4");
                    assert_eq!((fx, fxx), (Grade::ZERO, Grade::ONE));
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn step_function_fuzzy_point_window() {
        assert!(Theorem4Window::new(3).is_err());
        assert!(theorem4_def2_holds(4).unwrap().holds);
        assert!(theorem4_def2_holds(1000).unwrap().holds);
        assert_eq!(Theorem4Window::new(1000).unwrap().max_checked(), 31);
        assert_eq!(Theorem4Window::new(16).unwrap().max_checked(), 4);
        assert_eq!(Theorem4Window::new(15).unwrap().max_checked(), 3);
    }

    #[test]
    fn saturated_window_agrees_with_closed_form() {
        for n in 4..=20 {
            let w = Theorem4Window::new(n).unwrap();
            let s = Arc::new(w.saturated_structure().unwrap());
            assert!(s.is_associative());
            let f = FuzzySubset::new(s.clone(), (2..=n).map(Theorem4Window::grade).collect()).unwrap();
            assert_eq!(is_semiprime_def1(&f).witness, w.def1_report().witness);
            assert!(is_semiprime_def2(&f).holds);
        }
    }

    #[test]
    fn rational_sample_values() {
        let r = Remark6::default();
        let (d1, pa) = r.check();
        assert!(d1.holds);
        assert!(!pa.holds);
        match pa.witness.unwrap() {
            Witness::Triple { a, x, y, fa, fxx, fyy } => {
                assert_eq!(r.element_name(a), "1/10");
                assert_eq!(r.element_name(x), "1/2");
                assert_eq!(r.element_name(y), "1/3");
                assert_eq!(fa.to_string(), "1/10");
                assert_eq!(fxx.to_string(), "1/4");
                assert_eq!(fyy.to_string(), "1/9");
            }
            other => panic!("unexpected witness {other:?}"),
        }
        // squares of 0 and 1 are fixed points
        assert_eq!(Grade::ZERO * Grade::ZERO, Grade::ZERO);
        assert_eq!(Grade::ONE * Grade::ONE, Grade::ONE);
    }

    #[test]
    fn rational_sample_triple_that_satisfies_a() {
        let r = Remark6::default();
        let g = |p, q| Grade::new(p, q).unwrap();
        // 1/3 is not below 1/2 * 1/2 = 1/4, so the implication is vacuous
        assert!(r.property_a_at(g(1, 3), g(1, 2), g(1, 2)).holds);
    }
}
