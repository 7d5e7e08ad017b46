//! Deciders for the two notions of fuzzy semiprimeness, the condition that
//! makes them coincide, and crisp semiprimeness.
//!
//! The pointwise notion asks `f(x) >= f(x*x)` for every `x`. The lattice
//! notion asks that every fuzzy subset `g` with `g∘g ⪯ f` satisfies `g ⪯ f`.
//! The latter is decided through fuzzy points: a violating `g` can always be
//! shrunk to `x_λ` with `λ = g(x)`, and `x_λ∘x_λ` equals `λ` exactly on the
//! down-set of `x*x`. So `f` is semiprime in the lattice sense iff
//! `f(x) >= min{ f(a) : a <= x*x }` for all `x`. [`def2_bruteforce`] checks the
//! same property by enumerating every `g` over a finite grid.

use std::sync::Arc;

use crate::enumerate::{enumerate_fuzzy, MAX_ORACLE_CANDIDATES};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzySubset;
use crate::grade::Grade;
use crate::structure::{Element, FiniteOrderedGroupoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Checker {
    Def1,
    Def2,
    Def2Bruteforce,
    PropertyA,
    CrispSemiprime,
    Associativity,
    Theorem4Def1,
    Theorem4Def2Window,
    Remark6Def1,
    Remark6PropertyA,
}

impl Checker {
    pub fn name(self) -> &'static str {
        match self {
            Checker::Def1 => "def1",
            Checker::Def2 => "def2",
            Checker::Def2Bruteforce => "def2-bruteforce",
            Checker::PropertyA => "property-a",
            Checker::CrispSemiprime => "crisp-semiprime",
            Checker::Associativity => "compose-associativity",
            Checker::Theorem4Def1 => "theorem4-def1",
            Checker::Theorem4Def2Window => "theorem4-def2-window",
            Checker::Remark6Def1 => "remark6-def1",
            Checker::Remark6PropertyA => "remark6-property-a",
        }
    }
}

/// Concrete evidence that a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `f(x) < f(x*x)`.
    Square {
        x: Element,
        xx: Element,
        fx: Grade,
        fxx: Grade,
    },
    /// The fuzzy point `x_λ` satisfies `x_λ∘x_λ ⪯ f` while `λ > f(x)`.
    FuzzyPoint { x: Element, lambda: Grade, fx: Grade },
    /// `g∘g ⪯ f` but `g(x) > f(x)`.
    Subset { g: Vec<Grade>, x: Element },
    /// `a <= x*y` and `min(f(x*x), f(y*y)) > f(a)`.
    Triple {
        a: Element,
        x: Element,
        y: Element,
        fa: Grade,
        fxx: Grade,
        fyy: Grade,
    },
    /// `x*x` is in the set but `x` is not.
    Crisp { x: Element, xx: Element },
    /// `(f∘g)∘h` and `f∘(g∘h)` differ at `a`.
    Composition { a: Element, left: Grade, right: Grade },
}

impl Witness {
    /// Re-evaluates the defining condition against `f` by direct computation.
    /// Crisp and composition witnesses need more context and always return
    /// false here.
    pub fn reproduces(&self, f: &FuzzySubset) -> bool {
        let s = f.structure();
        let n = s.len();
        let in_range = |e: &Element| e.0 < n;
        match self {
            Witness::Square { x, xx, fx, fxx } => {
                in_range(x)
                    && s.square(*x) == *xx
                    && f[*x] == *fx
                    && f[*xx] == *fxx
                    && fx < fxx
            }
            Witness::FuzzyPoint { x, lambda, fx } => {
                if !in_range(x) || f[*x] != *fx {
                    return false;
                }
                let point = FuzzySubset::fuzzy_point(s.clone(), *x, *lambda).unwrap();
                point.square().leq_unchecked(f) && !point.leq_unchecked(f)
            }
            Witness::Subset { g, x } => {
                let Ok(g) = FuzzySubset::new(s.clone(), g.clone()) else {
                    return false;
                };
                in_range(x) && g.square().leq_unchecked(f) && g[*x] > f[*x]
            }
            Witness::Triple {
                a,
                x,
                y,
                fa,
                fxx,
                fyy,
            } => {
                [a, x, y].into_iter().all(in_range)
                    && s.leq(*a, s.mul(*x, *y))
                    && f[*a] == *fa
                    && f[s.square(*x)] == *fxx
                    && f[s.square(*y)] == *fyy
                    && (*fxx).min(*fyy) > *fa
            }
            Witness::Crisp { .. } | Witness::Composition { .. } => false,
        }
    }
}

/// Result of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessReport {
    pub checker: Checker,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl WitnessReport {
    pub fn holds(checker: Checker) -> Self {
        WitnessReport {
            checker,
            holds: true,
            witness: None,
        }
    }

    pub fn fails(checker: Checker, witness: Witness) -> Self {
        WitnessReport {
            checker,
            holds: false,
            witness: Some(witness),
        }
    }

    fn from_first(checker: Checker, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fails(checker, w),
            None => Self::holds(checker),
        }
    }
}

/// Pointwise semiprimeness: `f(x) >= f(x*x)` for all `x`.
pub fn is_semiprime_def1(f: &FuzzySubset) -> WitnessReport {
    let s = f.structure();
    let witness = s.elements().find_map(|x| {
        let xx = s.square(x);
        (f[x] < f[xx]).then(|| Witness::Square {
            x,
            xx,
            fx: f[x],
            fxx: f[xx],
        })
    });
    WitnessReport::from_first(Checker::Def1, witness)
}

/// `min{ f(a) : a <= x*x }`, the largest `λ` with `x_λ∘x_λ ⪯ f`.
pub fn def2_threshold(f: &FuzzySubset, x: Element) -> Grade {
    let s = f.structure();
    s.down_set(s.square(x))
        .map(|a| f[a])
        .min()
        .expect("down-set contains x*x")
}

/// Lattice semiprimeness, decided through fuzzy points.
pub fn is_semiprime_def2(f: &FuzzySubset) -> WitnessReport {
    let s = f.structure();
    let witness = s.elements().find_map(|x| {
        let lambda = def2_threshold(f, x);
        (f[x] < lambda).then(|| Witness::FuzzyPoint { x, lambda, fx: f[x] })
    });
    WitnessReport::from_first(Checker::Def2, witness)
}

/// `{0} ∪ grades(f) ∪ {1}`, sorted.
pub fn default_oracle_grid(f: &FuzzySubset) -> Vec<Grade> {
    let mut grid = f.distinct_grades();
    grid.push(Grade::ZERO);
    grid.push(Grade::ONE);
    grid.sort();
    grid.dedup();
    grid
}

/// Lattice semiprimeness by exhaustive search over every `g` with grades in
/// `grid`. Returns the first violating `g` in mixed-radix order.
pub fn def2_bruteforce(f: &FuzzySubset, grid: &[Grade]) -> Result<WitnessReport> {
    if let Some(missing) = f.grades().iter().find(|g| !grid.contains(g)) {
        return Err(Error::Usage(format!("oracle grid lacks grade {missing} of f")));
    }
    let witness = enumerate_fuzzy(f.structure(), grid, MAX_ORACLE_CANDIDATES)?
        .filter(|g| !g.leq_unchecked(f))
        .find(|g| g.square().leq_unchecked(f))
        .map(|g| {
            let x = g.first_excess(f).expect("g is not below f");
            Witness::Subset {
                g: g.into_grades(),
                x,
            }
        });
    Ok(WitnessReport::from_first(Checker::Def2Bruteforce, witness))
}

/// The condition `a <= x*y  =>  min(f(x*x), f(y*y)) <= f(a)`.
pub fn has_property_a(f: &FuzzySubset) -> WitnessReport {
    let s = f.structure();
    let sq: Vec<Grade> = s.elements().map(|x| f[s.square(x)]).collect();
    let mut witness = None;
    'scan: for a in s.elements() {
        for x in s.elements() {
            for y in s.elements() {
                if !s.leq(a, s.mul(x, y)) {
                    continue;
                }
                let m = sq[x.0].min(sq[y.0]);
                if m > f[a] {
                    witness = Some(Witness::Triple {
                        a,
                        x,
                        y,
                        fa: f[a],
                        fxx: sq[x.0],
                        fyy: sq[y.0],
                    });
                    break 'scan;
                }
            }
        }
    }
    WitnessReport::from_first(Checker::PropertyA, witness)
}

/// Crisp semiprimeness of `members`: `x*x` in the set forces `x` in the set.
pub fn crisp_semiprime(s: &Arc<FiniteOrderedGroupoid>, members: &[Element]) -> Result<WitnessReport> {
    let mut inside = vec![false; s.len()];
    for &m in members {
        *inside
            .get_mut(m.0)
            .ok_or_else(|| Error::Usage(format!("element index {} out of range", m.0)))? = true;
    }
    let witness = s.elements().find_map(|x| {
        let xx = s.square(x);
        (inside[xx.0] && !inside[x.0]).then_some(Witness::Crisp { x, xx })
    });
    Ok(WitnessReport::from_first(Checker::CrispSemiprime, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures::{chain_constant, singleton};
    use crate::structure::letter_labels;

    fn g(s: &str) -> Grade {
        s.parse().unwrap()
    }

    fn fz(s: &Arc<FiniteOrderedGroupoid>, grades: &[&str]) -> FuzzySubset {
        FuzzySubset::new(s.clone(), grades.iter().map(|t| g(t)).collect()).unwrap()
    }

    fn discrete_constant_b() -> Arc<FiniteOrderedGroupoid> {
        Arc::new(FiniteOrderedGroupoid::discrete(letter_labels(2), vec![vec![1, 1], vec![1, 1]]).unwrap())
    }

    #[test]
    fn def1_examples() {
        let s = Arc::new(chain_constant(1));
        assert!(is_semiprime_def1(&FuzzySubset::constant(s.clone(), g("2/5"))).holds);
        let f = fz(&s, &["0", "1"]);
        let r = is_semiprime_def1(&f);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(
            w,
            Witness::Square {
                x: Element(0),
                xx: Element(1),
                fx: Grade::ZERO,
                fxx: Grade::ONE
            }
        );
        assert!(w.reproduces(&f));
    }

    #[test]
    fn thresholds() {
        let d = discrete_constant_b();
        let f = fz(&d, &["1/3", "2/3"]);
        // discrete order: the down-set of x*x is {x*x}
        for x in d.elements() {
            assert_eq!(def2_threshold(&f, x), f[d.square(x)]);
        }
        let s = Arc::new(chain_constant(1));
        assert_eq!(def2_threshold(&fz(&s, &["0", "1"]), Element(0)), Grade::ZERO);
    }

    #[test]
    fn def2_examples() {
        // chain a<b, constant b: lattice-semiprime but not pointwise
        let s = Arc::new(chain_constant(1));
        let f = fz(&s, &["0", "1"]);
        assert!(is_semiprime_def2(&f).holds);
        assert!(!is_semiprime_def1(&f).holds);
        assert!(def2_bruteforce(&f, &[Grade::ZERO, Grade::ONE]).unwrap().holds);

        // same table, discrete order: fails with a_1
        let d = discrete_constant_b();
        let f = fz(&d, &["0", "1"]);
        let r = is_semiprime_def2(&f);
        let w = r.witness.clone().unwrap();
        assert_eq!(
            w,
            Witness::FuzzyPoint {
                x: Element(0),
                lambda: Grade::ONE,
                fx: Grade::ZERO
            }
        );
        assert!(w.reproduces(&f));
    }

    #[test]
    fn bruteforce_examples() {
        let one = Arc::new(singleton());
        for v in ["0", "1"] {
            let f = fz(&one, &[v]);
            assert_eq!(
                def2_bruteforce(&f, &[Grade::ZERO, Grade::ONE]).unwrap().holds,
                is_semiprime_def2(&f).holds
            );
        }
        let d = discrete_constant_b();
        let f = fz(&d, &["0", "1"]);
        let r = def2_bruteforce(&f, &[Grade::ZERO, Grade::ONE]).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(
            w,
            Witness::Subset {
                g: vec![Grade::ONE, Grade::ZERO],
                x: Element(0)
            }
        );
        assert!(w.reproduces(&f));
    }

    #[test]
    fn bruteforce_rejects_bad_grids() {
        let s = Arc::new(chain_constant(1));
        let f = fz(&s, &["1/2", "1"]);
        assert!(matches!(def2_bruteforce(&f, &[Grade::ZERO, Grade::ONE]), Err(Error::Usage(_))));
        assert_eq!(default_oracle_grid(&f), vec![Grade::ZERO, g("1/2"), Grade::ONE]);
    }

    #[test]
    fn property_a_examples() {
        let s = Arc::new(chain_constant(1));
        assert!(has_property_a(&FuzzySubset::constant(s, g("3/7"))).holds);
        assert!(has_property_a(&fz(&Arc::new(singleton()), &["1/2"])).holds);
        // chain a<b with constant b, f=(0,1): a <= a*a and min(f(b), f(b)) = 1 > 0
        let s = Arc::new(chain_constant(1));
        let f = fz(&s, &["0", "1"]);
        let r = has_property_a(&f);
        let w = r.witness.unwrap();
        assert!(matches!(w, Witness::Triple { a: Element(0), x: Element(0), y: Element(0), .. }));
        assert!(w.reproduces(&f));
    }

    #[test]
    fn crisp_examples() {
        let s = Arc::new(chain_constant(1));
        let all: Vec<Element> = s.elements().collect();
        assert!(crisp_semiprime(&s, &all).unwrap().holds);
        assert!(crisp_semiprime(&s, &[]).unwrap().holds);
        let r = crisp_semiprime(&s, &[Element(1)]).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Crisp {
                x: Element(0),
                xx: Element(1)
            })
        );
        assert!(crisp_semiprime(&s, &[Element(5)]).is_err());
    }

    #[test]
    fn zero_threshold_never_violates() {
        let s = Arc::new(chain_constant(1));
        let f = FuzzySubset::zero(s);
        assert!(is_semiprime_def2(&f).holds);
        assert!(def2_bruteforce(&f, &[Grade::ZERO, Grade::ONE]).unwrap().holds);
    }
}
