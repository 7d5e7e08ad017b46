//! Finite ordered groupoids: a multiplication table together with a partial
//! order that the multiplication respects on both sides.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest carrier accepted by [`FiniteOrderedGroupoid`].
pub const MAX_ELEMENTS: usize = 64;

/// An element of a structure, identified by its index. Labels are only used
/// for presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Unvalidated input tables. `mul[x][y]` is the index of `x*y` and
/// `leq[x][y]` states `x <= y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    pub labels: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    /// `a <= b` implies `a*c <= b*c`.
    RightCompatibility,
    /// `a <= b` implies `c*a <= c*b`.
    LeftCompatibility,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::RightCompatibility => "right-compatibility",
            Axiom::LeftCompatibility => "left-compatibility",
        }
    }
}

/// One failed axiom and the elements exhibiting the failure.
///
/// Witness layout: reflexivity `[a]`, antisymmetry `[a, b]`, transitivity
/// `[a, b, c]` with `a<=b<=c`, compatibility `[a, b, c]` with `a<=b` and `c`
/// the multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Element>,
}

impl Violation {
    /// Re-evaluates the axiom at the witness; true iff it is really violated.
    pub fn reproduces(&self, raw: &RawTables) -> bool {
        let leq = |x: usize, y: usize| raw.leq[x][y];
        let mul = |x: usize, y: usize| raw.mul[x][y];
        let w: Vec<usize> = self.witness.iter().map(|e| e.0).collect();
        match (self.axiom, w.as_slice()) {
            (Axiom::Reflexivity, &[a]) => !leq(a, a),
            (Axiom::Antisymmetry, &[a, b]) => a != b && leq(a, b) && leq(b, a),
            (Axiom::Transitivity, &[a, b, c]) => leq(a, b) && leq(b, c) && !leq(a, c),
            (Axiom::RightCompatibility, &[a, b, c]) => leq(a, b) && !leq(mul(a, c), mul(b, c)),
            (Axiom::LeftCompatibility, &[a, b, c]) => leq(a, b) && !leq(mul(c, a), mul(c, b)),
            _ => false,
        }
    }

    /// Human-readable form using the given labels.
    pub fn describe(&self, labels: &[String]) -> String {
        let names: Vec<&str> = self.witness.iter().map(|e| labels[e.0].as_str()).collect();
        format!("{} fails at ({})", self.axiom.name(), names.join(", "))
    }
}

/// Outcome of [`validate`]; holds at most one witness per violated axiom
/// (the lexicographically first).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| {
                let idx: Vec<String> = v.witness.iter().map(|e| e.0.to_string()).collect();
                format!("{} at ({})", v.axiom.name(), idx.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn check_shape(raw: &RawTables) -> Result<()> {
    let n = raw.labels.len();
    if n == 0 {
        return Err(Error::Structural("structure has no elements".into()));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::Structural(format!(
            "{n} elements exceeds the bound of {MAX_ELEMENTS}"
        )));
    }
    let mut seen = HashSet::new();
    for label in &raw.labels {
        if label.is_empty() {
            return Err(Error::Structural("empty element label".into()));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::Structural(format!("duplicate element label `{label}`")));
        }
    }
    if raw.mul.len() != n || raw.mul.iter().any(|row| row.len() != n) {
        return Err(Error::Structural(format!("multiplication table is not {n}x{n}")));
    }
    if raw.leq.len() != n || raw.leq.iter().any(|row| row.len() != n) {
        return Err(Error::Structural(format!("order relation is not {n}x{n}")));
    }
    for (x, row) in raw.mul.iter().enumerate() {
        for (y, &p) in row.iter().enumerate() {
            if p >= n {
                return Err(Error::Structural(format!(
                    "product {x}*{y} = {p} is out of range 0..{n}"
                )));
            }
        }
    }
    Ok(())
}

/// Checks the ordered-groupoid axioms on raw tables.
///
/// Malformed tables are an `Err`; axiom failures are reported in the returned
/// [`ValidationReport`].
pub fn validate(raw: &RawTables) -> Result<ValidationReport> {
    check_shape(raw)?;
    let n = raw.labels.len();
    let leq = &raw.leq;
    let mul = &raw.mul;
    let mut report = ValidationReport::default();
    let mut push = |axiom, witness: &[usize]| {
        report.violations.push(Violation {
            axiom,
            witness: witness.iter().map(|&i| Element(i)).collect(),
        })
    };

    if let Some(a) = (0..n).find(|&a| !leq[a][a]) {
        push(Axiom::Reflexivity, &[a]);
    }
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    if let Some((a, b)) = pairs().find(|&(a, b)| a != b && leq[a][b] && leq[b][a]) {
        push(Axiom::Antisymmetry, &[a, b]);
    }
    let triples = || pairs().flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)));
    if let Some((a, b, c)) = triples().find(|&(a, b, c)| leq[a][b] && leq[b][c] && !leq[a][c]) {
        push(Axiom::Transitivity, &[a, b, c]);
    }
    if let Some((a, b, c)) =
        triples().find(|&(a, b, c)| leq[a][b] && !leq[mul[a][c]][mul[b][c]])
    {
        push(Axiom::RightCompatibility, &[a, b, c]);
    }
    if let Some((a, b, c)) =
        triples().find(|&(a, b, c)| leq[a][b] && !leq[mul[c][a]][mul[c][b]])
    {
        push(Axiom::LeftCompatibility, &[a, b, c]);
    }
    Ok(report)
}

/// Reflexive-transitive closure of a relation given as a boolean matrix.
pub fn reflexive_transitive_closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = rel.len();
    let mut out: Vec<Vec<bool>> = rel.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if out[i][k] {
                for j in 0..n {
                    if out[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

/// A validated finite ordered groupoid. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteOrderedGroupoid {
    labels: Vec<String>,
    /// Row-major `n*n` product table.
    mul: Vec<u8>,
    /// `up[a]` has bit `b` set iff `a <= b`.
    up: Vec<u64>,
    /// `down[b]` has bit `a` set iff `a <= b`.
    down: Vec<u64>,
}

impl fmt::Debug for FiniteOrderedGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteOrderedGroupoid")
            .field("labels", &self.labels)
            .field("mul", &self.mul_rows())
            .field("up", &self.up)
            .finish()
    }
}

impl FiniteOrderedGroupoid {
    /// Validates `raw` and builds the structure.
    pub fn new(raw: RawTables) -> Result<Self> {
        let report = validate(&raw)?;
        if !report.ok() {
            return Err(Error::Axioms(report));
        }
        let n = raw.labels.len();
        let mul = raw
            .mul
            .iter()
            .flat_map(|row| row.iter().map(|&p| p as u8))
            .collect();
        let mut up = vec![0u64; n];
        let mut down = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if raw.leq[a][b] {
                    up[a] |= 1 << b;
                    down[b] |= 1 << a;
                }
            }
        }
        Ok(FiniteOrderedGroupoid {
            labels: raw.labels,
            mul,
            up,
            down,
        })
    }

    /// Builds a structure whose order is the reflexive-transitive closure of
    /// the listed `(lower, upper)` pairs.
    pub fn from_order_pairs(
        labels: Vec<String>,
        mul: Vec<Vec<usize>>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Structural(format!("order pair ({a}, {b}) out of range")));
            }
            rel[a][b] = true;
        }
        let leq = reflexive_transitive_closure(&rel);
        Self::new(RawTables { labels, mul, leq })
    }

    /// A groupoid with the discrete order (`x <= y` iff `x == y`).
    pub fn discrete(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_order_pairs(labels, mul, &[])
    }

    /// Enumeration fast path. `up` must be a partial order compatible with
    /// `mul`; only checked in debug builds.
    pub(crate) fn from_parts(labels: Vec<String>, mul: Vec<u8>, up: Vec<u64>) -> Self {
        let n = labels.len();
        let mut down = vec![0u64; n];
        for (a, &row) in up.iter().enumerate() {
            for (b, d) in down.iter_mut().enumerate() {
                if row >> b & 1 == 1 {
                    *d |= 1 << a;
                }
            }
        }
        let s = FiniteOrderedGroupoid {
            labels,
            mul,
            up,
            down,
        };
        debug_assert!(validate(&s.to_raw()).map(|r| r.ok()).unwrap_or(false));
        s
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.len()).map(Element)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Element) -> &str {
        &self.labels[e.0]
    }

    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(Element)
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        Element(self.mul[x.0 * self.len() + y.0] as usize)
    }

    #[inline]
    pub(crate) fn mul_index(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.len() + y] as usize
    }

    /// `x*x`.
    #[inline]
    pub fn square(&self, x: Element) -> Element {
        self.mul(x, x)
    }

    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.up[a.0] >> b.0 & 1 == 1
    }

    /// Bitmask of `{a : a <= b}`.
    #[inline]
    pub fn down_mask(&self, b: Element) -> u64 {
        self.down[b.0]
    }

    /// Bitmask of `{b : a <= b}`.
    #[inline]
    pub fn up_mask(&self, a: Element) -> u64 {
        self.up[a.0]
    }

    /// The elements below or equal to `b`, ascending.
    pub fn down_set(&self, b: Element) -> impl Iterator<Item = Element> {
        bits(self.down[b.0]).map(Element)
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.len())
            .map(|row| row.iter().map(|&p| p as usize).collect())
            .collect()
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n)
            .map(|a| (0..n).map(|b| self.up[a] >> b & 1 == 1).collect())
            .collect()
    }

    pub fn to_raw(&self) -> RawTables {
        RawTables {
            labels: self.labels.clone(),
            mul: self.mul_rows(),
            leq: self.leq_matrix(),
        }
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True iff `(x*y)*z == x*(y*z)` for all elements.
    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul_index(x, y);
                (0..n).all(|z| self.mul_index(xy, z) == self.mul_index(x, self.mul_index(y, z)))
            })
        })
    }

    /// The element above every other one, when it exists.
    pub fn greatest_element(&self) -> Option<Element> {
        let all = if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        };
        self.elements().find(|&e| self.down[e.0] == all)
    }

    /// `{(x, y) : a <= x*y}` in row-major order.
    pub fn pairs_above(&self, a: Element) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.leq(a, self.mul(x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Labels `a`, `b`, ... used for enumerated and generated structures.
pub fn letter_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Two-element chain `a < b` with every product equal to `c`.
    pub fn chain_constant(c: usize) -> FiniteOrderedGroupoid {
        FiniteOrderedGroupoid::from_order_pairs(
            letter_labels(2),
            vec![vec![c, c], vec![c, c]],
            &[(0, 1)],
        )
        .unwrap()
    }

    pub fn singleton() -> FiniteOrderedGroupoid {
        FiniteOrderedGroupoid::discrete(letter_labels(1), vec![vec![0]]).unwrap()
    }
}
