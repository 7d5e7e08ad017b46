//! Exhaustive scans over small ordered groupoids and fuzzy subsets, looking
//! for counterexamples to implications between the notions of semiprimeness,
//! or for examples that separate them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::enumerate::{enumerate_fuzzy, enumerate_structures, fuzzy_count, MAX_ENUMERATION_SIZE};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzySubset;
use crate::grade::Grade;
use crate::semiprime::{
    has_property_a, is_semiprime_def1, is_semiprime_def2, Checker, Witness, WitnessReport,
};
use crate::structure::FiniteOrderedGroupoid;

/// Default candidate budget for [`SearchTask`].
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// Structures handed to the worker pool at a time.
const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    /// `f` is lattice-semiprime but not pointwise semiprime.
    Def2NotDef1,
    /// `f` breaks condition (a).
    PropertyAViolations,
    /// `(f∘g)∘h != f∘(g∘h)` on a non-associative structure.
    NonassocCompose,
    /// Condition (a) and lattice semiprimeness hold but pointwise fails.
    Theorem5Scan,
    /// Pointwise semiprimeness holds but lattice semiprimeness fails.
    Theorem4Scan,
}

impl Goal {
    pub const ALL: [Goal; 5] = [
        Goal::Def2NotDef1,
        Goal::PropertyAViolations,
        Goal::NonassocCompose,
        Goal::Theorem5Scan,
        Goal::Theorem4Scan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Goal::Def2NotDef1 => "def2-not-def1",
            Goal::PropertyAViolations => "property-a-violations",
            Goal::NonassocCompose => "nonassoc-compose",
            Goal::Theorem5Scan => "theorem5-scan",
            Goal::Theorem4Scan => "theorem4-scan",
        }
    }

    /// Re-derives the goal predicate for a reported hit from scratch.
    pub fn confirms(self, found: &Found) -> bool {
        let s = &found.structure;
        let f = match found.subsets.first() {
            Some(f) if Arc::ptr_eq(f.structure(), s) || **f.structure() == **s => f,
            _ => return false,
        };
        let d1 = || is_semiprime_def1(f).holds;
        let d2 = || is_semiprime_def2(f).holds;
        let pa = || has_property_a(f).holds;
        match self {
            Goal::Def2NotDef1 => d2() && !d1(),
            Goal::PropertyAViolations => !pa(),
            Goal::Theorem5Scan => pa() && d2() && !d1(),
            Goal::Theorem4Scan => d1() && !d2(),
            Goal::NonassocCompose => match &found.subsets[..] {
                [f, g, h] => {
                    !s.is_associative()
                        && f.compose(g).and_then(|fg| fg.compose(h)).ok()
                            != g.compose(h).and_then(|gh| f.compose(&gh)).ok()
                }
                _ => false,
            },
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Goal::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Goal::ALL.iter().map(|g| g.name()).collect();
                Error::Usage(format!("unknown goal `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTask {
    pub max_n: usize,
    pub grade_grid: Vec<Grade>,
    pub goal: Goal,
    /// Maximum number of candidates examined.
    pub budget: u128,
}

impl SearchTask {
    pub fn new(max_n: usize, grade_grid: Vec<Grade>, goal: Goal, budget: u128) -> Result<Self> {
        let mut grade_grid = grade_grid;
        grade_grid.sort();
        grade_grid.dedup();
        if !(1..=MAX_ENUMERATION_SIZE).contains(&max_n) {
            return Err(Error::Usage(format!(
                "--max-n must lie in 1..={MAX_ENUMERATION_SIZE}"
            )));
        }
        if !grade_grid.contains(&Grade::ZERO) || !grade_grid.contains(&Grade::ONE) {
            return Err(Error::Usage("grade grid must contain 0 and 1".into()));
        }
        if budget == 0 {
            return Err(Error::Usage("budget must be positive".into()));
        }
        Ok(SearchTask {
            max_n,
            grade_grid,
            goal,
            budget,
        })
    }

    fn candidates_for(&self, s: &FiniteOrderedGroupoid) -> u128 {
        match self.goal {
            Goal::NonassocCompose if s.is_associative() => 0,
            Goal::NonassocCompose => fuzzy_count(3 * s.len(), self.grade_grid.len()),
            _ => fuzzy_count(s.len(), self.grade_grid.len()),
        }
    }
}

/// A hit: the structure, the fuzzy subsets involved (`[f]`, or `[f, g, h]`
/// for [`Goal::NonassocCompose`]) and the report explaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found {
    pub structure: Arc<FiniteOrderedGroupoid>,
    pub subsets: Vec<FuzzySubset>,
    pub report: WitnessReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub examined: u128,
    pub found: Vec<Found>,
    /// True iff the whole space within the size and grid bounds was scanned.
    pub exhausted: bool,
}

/// Runs `task` over every structure with at most `max_n` elements.
///
/// Work is split across threads per structure, but the result is always in
/// canonical order and the same for repeated runs.
pub fn run_search(task: &SearchTask) -> Result<SearchResult> {
    let mut structures = enumerate_structures(task.max_n)?;
    let mut remaining = task.budget;
    let mut examined = 0u128;
    let mut found = Vec::new();
    let mut truncated = false;
    loop {
        let mut batch = Vec::with_capacity(CHUNK);
        while batch.len() < CHUNK && remaining > 0 {
            let Some(s) = structures.next() else { break };
            let want = task.candidates_for(&s);
            let limit = want.min(remaining);
            remaining -= limit;
            if limit < want {
                truncated = true;
            }
            batch.push((Arc::new(s), limit));
        }
        if batch.is_empty() {
            break;
        }
        let results: Vec<(u128, Vec<Found>)> = batch
            .into_par_iter()
            .map(|(s, limit)| scan_structure(task, s, limit))
            .collect();
        for (n, hits) in results {
            examined += n;
            found.extend(hits);
        }
        if remaining == 0 {
            break;
        }
    }
    // budget may run out exactly at the end of the space
    if remaining == 0 && !truncated && structures.next().is_some() {
        truncated = true;
    }
    Ok(SearchResult {
        examined,
        found,
        exhausted: !truncated,
    })
}

fn scan_structure(task: &SearchTask, s: Arc<FiniteOrderedGroupoid>, limit: u128) -> (u128, Vec<Found>) {
    if limit == 0 {
        return (0, Vec::new());
    }
    if task.goal == Goal::NonassocCompose {
        return scan_nonassoc(task, s, limit);
    }
    let subsets = enumerate_fuzzy(&s, &task.grade_grid, u128::MAX)
        .expect("grid is nonempty")
        .take(limit as usize);
    let mut examined = 0;
    let mut hits = Vec::new();
    for f in subsets {
        examined += 1;
        let report = match task.goal {
            Goal::Def2NotDef1 => {
                let d1 = is_semiprime_def1(&f);
                (!d1.holds && is_semiprime_def2(&f).holds).then_some(d1)
            }
            Goal::PropertyAViolations => Some(has_property_a(&f)).filter(|r| !r.holds),
            Goal::Theorem4Scan => {
                if is_semiprime_def1(&f).holds {
                    Some(is_semiprime_def2(&f)).filter(|r| !r.holds)
                } else {
                    None
                }
            }
            Goal::Theorem5Scan => {
                let d1 = is_semiprime_def1(&f);
                (!d1.holds && has_property_a(&f).holds && is_semiprime_def2(&f).holds)
                    .then_some(d1)
            }
            Goal::NonassocCompose => unreachable!(),
        };
        if let Some(report) = report {
            hits.push(Found {
                structure: s.clone(),
                subsets: vec![f],
                report,
            });
        }
    }
    (examined, hits)
}

/// Reports the first non-associative triple on `s`, if any.
fn scan_nonassoc(task: &SearchTask, s: Arc<FiniteOrderedGroupoid>, limit: u128) -> (u128, Vec<Found>) {
    let all: Vec<FuzzySubset> = enumerate_fuzzy(&s, &task.grade_grid, u128::MAX)
        .expect("grid is nonempty")
        .collect();
    let mut examined = 0u128;
    for f in &all {
        for g in &all {
            let fg = f.compose_unchecked(g);
            for h in &all {
                if examined == limit {
                    return (examined, Vec::new());
                }
                examined += 1;
                let left = fg.compose_unchecked(h);
                let right = f.compose_unchecked(&g.compose_unchecked(h));
                if let Some(a) = s.elements().find(|&a| left[a] != right[a]) {
                    let report = WitnessReport::fails(
                        Checker::Associativity,
                        Witness::Composition {
                            a,
                            left: left[a],
                            right: right[a],
                        },
                    );
                    let found = Found {
                        structure: s.clone(),
                        subsets: vec![f.clone(), g.clone(), h.clone()],
                        report,
                    };
                    return (examined, vec![found]);
                }
            }
        }
    }
    (examined, Vec::new())
}
