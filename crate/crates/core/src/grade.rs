//! Exact membership grades in the closed unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("grade denominator is zero")]
    ZeroDenominator,
    #[error("grade out of [0,1]: {0}")]
    OutOfRange(String),
    #[error("malformed grade `{0}`")]
    Malformed(String),
}

/// A rational number `p/q` with `0 <= p <= q`, always stored in lowest terms.
///
/// Because the representation is canonical, derived equality and hashing are
/// exact value equality. Ordering compares by integer cross-multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grade {
    num: u64,
    den: u64,
}

impl Grade {
    pub const ZERO: Grade = Grade { num: 0, den: 1 };
    pub const ONE: Grade = Grade { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, GradeError> {
        if den == 0 {
            return Err(GradeError::ZeroDenominator);
        }
        if num > den {
            return Err(GradeError::OutOfRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Grade {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

impl Default for Grade {
    fn default() -> Self {
        Grade::ZERO
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.num) * u128::from(other.den);
        let rhs = u128::from(other.num) * u128::from(self.den);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The product of two grades stays in `[0,1]`.
///
/// Panics if the reduced denominator does not fit in `u64`.
impl Mul for Grade {
    type Output = Grade;

    fn mul(self, rhs: Grade) -> Grade {
        // cross-reduce first so small operands never overflow
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = (self.num / g1.max(1)) * (rhs.num / g2.max(1));
        let den = (self.den / g2.max(1))
            .checked_mul(rhs.den / g1.max(1))
            .expect("grade denominator overflow");
        if num == 0 {
            Grade::ZERO
        } else {
            Grade { num, den }
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    /// Accepts `p` or `p/q` with unsigned decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(GradeError::Malformed(s.to_string()));
            }
            t.parse::<u64>()
                .map_err(|_| GradeError::Malformed(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => Grade::new(parse(p)?, parse(q)?),
            None => Grade::new(parse(s)?, 1),
        }
    }
}

/// Parses a comma-separated list of grades such as `0,1/2,1`.
///
/// The result is sorted ascending with duplicates removed.
pub fn parse_grid(spec: &str) -> Result<Vec<Grade>, GradeError> {
    let mut grid = spec
        .split(',')
        .map(str::parse)
        .collect::<Result<Vec<Grade>, _>>()?;
    grid.sort();
    grid.dedup();
    Ok(grid)
}
