//! Exhaustive enumeration of small labeled ordered groupoids and of fuzzy
//! subsets over a finite grade grid.
//!
//! Orders are produced in lexicographic order of their relation matrices,
//! tables in row-major lexicographic order, and fuzzy subsets in mixed-radix
//! order with the first element most significant.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySubset;
use crate::grade::Grade;
use crate::structure::{bits, letter_labels, FiniteOrderedGroupoid};

/// Largest carrier for which orders and tables are enumerated.
pub const MAX_ENUMERATION_SIZE: usize = 4;

/// Cap on `|grid|^n` for the brute-force lattice-semiprime oracle.
pub const MAX_ORACLE_CANDIDATES: u128 = 10_000_000;

/// A partial order on `0..n`, stored as up-set bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderRelation {
    up: Vec<u64>,
}

impl OrderRelation {
    /// Accepts a full relation matrix and checks the partial-order axioms.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if n == 0 || n > 64 || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Structural("order relation must be n x n with 1 <= n <= 64".into()));
        }
        let up = leq
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u64, |m, (b, &v)| if v { m | 1 << b } else { m })
            })
            .collect();
        let rel = OrderRelation { up };
        if rel.is_partial_order() {
            Ok(rel)
        } else {
            Err(Error::Usage("relation is not a partial order".into()))
        }
    }

    fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            self.leq(a, a)
                && (0..n).all(|b| {
                    (a == b || !(self.leq(a, b) && self.leq(b, a)))
                        && (!self.leq(a, b) || self.up[b] & !self.up[a] == 0)
                })
        })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.leq(a, b)).collect()).collect()
    }

    fn down(&self, b: usize) -> u64 {
        (0..self.len())
            .filter(|&a| self.leq(a, b))
            .fold(0, |m, a| m | 1 << a)
    }
}

fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_ENUMERATION_SIZE).contains(&n) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "enumeration size {n} outside 1..={MAX_ENUMERATION_SIZE}"
        )))
    }
}

/// Every partial order on `n` labeled elements, each exactly once.
pub fn enumerate_posets(n: usize) -> Result<Vec<OrderRelation>> {
    check_size(n)?;
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let k = cells.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let mut up: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        for (i, &(a, b)) in cells.iter().enumerate() {
            // first cell is the most significant bit
            if mask >> (k - 1 - i) & 1 == 1 {
                up[a] |= 1 << b;
            }
        }
        let rel = OrderRelation { up };
        if rel.is_partial_order() {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Backtracking generator of every multiplication table compatible with a
/// fixed order. Cells are filled row-major; each new cell is checked against
/// the compatibility constraints it shares with earlier cells.
pub struct CompatibleTables {
    order: OrderRelation,
    down: Vec<u64>,
    labels: Vec<String>,
    n: usize,
    vals: Vec<i16>,
    pos: usize,
    done: bool,
}

impl CompatibleTables {
    fn consistent(&self, p: usize, v: usize) -> bool {
        let n = self.n;
        let (x, y) = (p / n, p % n);
        let filled = |q: usize| (q < p).then(|| self.vals[q] as usize);
        let leq = |a: usize, b: usize| self.order.leq(a, b);
        // right multiplication by y, left factor compared with x
        for b in bits(self.order.up[x] & !(1 << x)) {
            if let Some(w) = filled(b * n + y) {
                if !leq(v, w) {
                    return false;
                }
            }
        }
        for a in bits(self.down[x] & !(1 << x)) {
            if let Some(w) = filled(a * n + y) {
                if !leq(w, v) {
                    return false;
                }
            }
        }
        // left multiplication by x, right factor compared with y
        for b in bits(self.order.up[y] & !(1 << y)) {
            if let Some(w) = filled(x * n + b) {
                if !leq(v, w) {
                    return false;
                }
            }
        }
        for a in bits(self.down[y] & !(1 << y)) {
            if let Some(w) = filled(x * n + a) {
                if !leq(w, v) {
                    return false;
                }
            }
        }
        true
    }

    fn build(&self) -> FiniteOrderedGroupoid {
        FiniteOrderedGroupoid::from_parts(
            self.labels.clone(),
            self.vals.iter().map(|&v| v as u8).collect(),
            self.order.up.clone(),
        )
    }
}

impl Iterator for CompatibleTables {
    type Item = FiniteOrderedGroupoid;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let total = self.n * self.n;
        if self.pos == total {
            self.pos -= 1;
        }
        loop {
            let p = self.pos;
            let mut v = (self.vals[p] + 1) as usize;
            while v < self.n && !self.consistent(p, v) {
                v += 1;
            }
            if v < self.n {
                self.vals[p] = v as i16;
                self.pos += 1;
                if self.pos == total {
                    return Some(self.build());
                }
                self.vals[self.pos] = -1;
            } else {
                self.vals[p] = -1;
                if p == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
            }
        }
    }
}

/// Every multiplication table compatible with `order`, with pruning.
pub fn enumerate_compatible_multiplications(order: &OrderRelation) -> CompatibleTables {
    let n = order.len();
    CompatibleTables {
        down: (0..n).map(|b| order.down(b)).collect(),
        labels: letter_labels(n),
        order: order.clone(),
        n,
        vals: vec![-1; n * n],
        pos: 0,
        done: false,
    }
}

/// Baseline for [`enumerate_compatible_multiplications`]: builds all `n^(n*n)`
/// tables and keeps those that pass full validation. Limited to `n <= 3`.
pub fn filter_compatible_multiplications(order: &OrderRelation) -> Result<Vec<FiniteOrderedGroupoid>> {
    let n = order.len();
    if n > 3 {
        return Err(Error::Usage("naive table filter is limited to n <= 3".into()));
    }
    let leq = order.to_matrix();
    let cells = n * n;
    let mut out = Vec::new();
    let mut digits = vec![0usize; cells];
    loop {
        let mul = digits.chunks(n).map(|r| r.to_vec()).collect();
        let raw = crate::structure::RawTables {
            labels: letter_labels(n),
            mul,
            leq: leq.clone(),
        };
        if let Ok(s) = FiniteOrderedGroupoid::new(raw) {
            out.push(s);
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All ordered groupoids with `1..=max_n` elements: orders first, then
/// tables, both in canonical order.
pub fn enumerate_structures(max_n: usize) -> Result<impl Iterator<Item = FiniteOrderedGroupoid>> {
    check_size(max_n)?;
    let mut orders = Vec::new();
    for n in 1..=max_n {
        orders.extend(enumerate_posets(n)?);
    }
    Ok(orders
        .into_iter()
        .flat_map(|o| enumerate_compatible_multiplications(&o)))
}

/// Mixed-radix walk over all fuzzy subsets with grades in a grid.
pub struct FuzzySubsets {
    structure: Arc<FiniteOrderedGroupoid>,
    grid: Vec<Grade>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for FuzzySubsets {
    type Item = FuzzySubset;

    fn next(&mut self) -> Option<FuzzySubset> {
        if self.done {
            return None;
        }
        let grades = self.digits.iter().map(|&d| self.grid[d]).collect();
        let out = FuzzySubset::new(self.structure.clone(), grades).expect("one grade per element");
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.grid.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// `|grid|^n`, saturating.
pub fn fuzzy_count(n: usize, grid_len: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(grid_len as u128))
}

/// Every fuzzy subset of `structure` with grades in `grid`, each exactly
/// once. Fails when `|grid|^n` exceeds `budget`.
pub fn enumerate_fuzzy(
    structure: &Arc<FiniteOrderedGroupoid>,
    grid: &[Grade],
    budget: u128,
) -> Result<FuzzySubsets> {
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    if grid.is_empty() {
        return Err(Error::Usage("grade grid is empty".into()));
    }
    let required = fuzzy_count(structure.len(), grid.len());
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(FuzzySubsets {
        digits: vec![0; structure.len()],
        structure: structure.clone(),
        grid,
        done: false,
    })
}

/// A random partial order: a random linear extension with random extra
/// comparabilities, then transitively closed.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> OrderRelation {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel[perm[i]][perm[j]] = true;
            }
        }
    }
    let closed = crate::structure::reflexive_transitive_closure(&rel);
    OrderRelation::from_matrix(&closed).expect("closure of an acyclic relation")
}

/// A random ordered groupoid on `n <= 64` elements.
///
/// The order comes from [`random_order`]; the table is found by randomized
/// backtracking, restarting when a search runs too long.
pub fn random_ordered_groupoid<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteOrderedGroupoid {
    assert!((1..=64).contains(&n), "random structures need 1 <= n <= 64");
    let density = [0.0, 0.2, 0.5, 1.0][rng.gen_range(0..4)];
    let order = random_order(rng, n, density);
    let mut tables = enumerate_compatible_multiplications(&order);
    loop {
        if let Some(mul) = random_table(rng, &mut tables, 20_000) {
            return FiniteOrderedGroupoid::from_parts(
                letter_labels(n),
                mul.into_iter().map(|v| v as u8).collect(),
                order.up.clone(),
            );
        }
    }
}

fn random_table<R: Rng + ?Sized>(
    rng: &mut R,
    t: &mut CompatibleTables,
    step_limit: usize,
) -> Option<Vec<usize>> {
    let n = t.n;
    let total = n * n;
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(total);
    let mut steps = 0;
    t.vals.iter_mut().for_each(|v| *v = -1);
    let mut p = 0;
    let fresh = |rng: &mut R| {
        let mut c: Vec<usize> = (0..n).collect();
        c.shuffle(rng);
        c
    };
    choices.push(fresh(rng));
    while p < total {
        steps += 1;
        if steps > step_limit {
            return None;
        }
        match choices[p].pop() {
            Some(v) if t.consistent(p, v) => {
                t.vals[p] = v as i16;
                p += 1;
                if p < total {
                    choices.push(fresh(rng));
                }
            }
            Some(_) => {}
            None => {
                choices.pop();
                t.vals[p] = -1;
                p = p.checked_sub(1)?;
            }
        }
    }
    Some(t.vals.iter().map(|&v| v as usize).collect())
}
