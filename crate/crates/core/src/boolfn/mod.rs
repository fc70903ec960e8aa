//! Boolean and rational-valued functions on the hypercube.
//!
//! Inputs are bitstrings `x = x1 ... xn` stored as `&[u8]` with entries 0/1.
//! Throughout the crate the table index of `x` is `sum_i x_i * 2^(n-i)`, so
//! variable 1 is the most significant bit.

mod conj;
pub(crate) mod cube;
mod dnf;
pub mod text;
mod width;

pub use conj::{all_conjunctions, Conjunction, Literal};
pub use dnf::{CnfFormula, DnfFormula};
pub use width::{
    c0_cnf, c0_width, c1_dnf, c1_width, c1_width_bounded, uc1_width, Uc1, DEFAULT_EXHAUSTIVE_BOUND,
    UC1_EXACT_BOUND,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest arity for which a table is materialized.
pub const MAX_TABLE_ARITY: usize = 24;

pub fn index_of(x: &[u8]) -> usize {
    x.iter().fold(0, |acc, &b| (acc << 1) | (b as usize & 1))
}

pub fn bits_of(idx: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((idx >> (n - 1 - i)) & 1) as u8).collect()
}

pub fn bitstring(x: &[u8]) -> String {
    x.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn parse_bits(s: &str) -> Option<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

fn check_arity(n: usize) -> Result<()> {
    if n > MAX_TABLE_ARITY {
        return Err(Error::Resource(format!(
            "arity {n} exceeds table bound {MAX_TABLE_ARITY}"
        )));
    }
    Ok(())
}

/// A boolean function on `{0,1}^n` given by its full truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruthTable {
    arity: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, values: Vec<bool>) -> Result<Self> {
        check_arity(arity)?;
        if values.len() != 1 << arity {
            return Err(Error::InputArity {
                expected: 1 << arity,
                got: values.len(),
            });
        }
        Ok(TruthTable { arity, values })
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[u8]) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let values = (0..1usize << arity).map(|i| f(&bits_of(i, arity))).collect();
        Ok(TruthTable { arity, values })
    }

    pub fn from_index_fn(arity: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_arity(arity)?;
        Ok(TruthTable {
            arity,
            values: (0..1usize << arity).map(f).collect(),
        })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::from_index_fn(arity, |_| value)
    }

    pub fn and(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |x| x.iter().all(|&b| b == 1))
    }

    pub fn or(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |x| x.contains(&1))
    }

    pub fn xor(arity: usize) -> Result<Self> {
        Self::from_fn(arity, |x| x.iter().filter(|&&b| b == 1).count() % 2 == 1)
    }

    /// The one-variable identity function.
    pub fn identity() -> Self {
        TruthTable {
            arity: 1,
            values: vec![false, true],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    #[inline]
    pub fn at(&self, idx: usize) -> bool {
        self.values[idx]
    }

    pub fn eval(&self, x: &[u8]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::InputArity {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.values[index_of(x)])
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable {
            arity: self.arity,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| i)
    }

    pub fn count_ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    /// `f^or(xy) = f(x) or f(y)` on `2n` variables; `x` is the high-order block.
    pub fn or_compose(&self) -> Result<TruthTable> {
        let n = self.arity;
        check_arity(2 * n)?;
        let values = (0..1usize << (2 * n))
            .map(|i| self.values[i >> n] || self.values[i & ((1 << n) - 1)])
            .collect();
        Ok(TruthTable {
            arity: 2 * n,
            values,
        })
    }

    pub fn to_real(&self) -> RealTable {
        RealTable {
            arity: self.arity,
            values: self
                .values
                .iter()
                .map(|&v| if v { Rational::one() } else { Rational::zero() })
                .collect(),
        }
    }
}

/// `f^or` of a boolean function; see [`TruthTable::or_compose`].
pub fn or_compose_fn(f: &TruthTable) -> Result<TruthTable> {
    f.or_compose()
}

/// A rational-valued function on `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealTable {
    arity: usize,
    #[serde(with = "rational::serde_rational_vec")]
    values: Vec<Rational>,
}

impl RealTable {
    pub fn new(arity: usize, values: Vec<Rational>) -> Result<Self> {
        check_arity(arity)?;
        if values.len() != 1 << arity {
            return Err(Error::InputArity {
                expected: 1 << arity,
                got: values.len(),
            });
        }
        Ok(RealTable { arity, values })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, idx: usize) -> &Rational {
        &self.values[idx]
    }

    /// `a + b*f` pointwise; `1+f` and `2-f` are the two shapes used for certificates.
    pub fn affine(f: &TruthTable, a: &Rational, b: &Rational) -> RealTable {
        RealTable {
            arity: f.arity(),
            values: f
                .values()
                .iter()
                .map(|&v| if v { a + b } else { a.clone() })
                .collect(),
        }
    }

    /// `<self, other> = sum_x self(x) other(x)`.
    pub fn inner(&self, other: &RealTable) -> Rational {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// The boolean function this table equals, when all entries are 0 or 1.
    pub fn as_boolean(&self) -> Option<TruthTable> {
        let values = self
            .values
            .iter()
            .map(|v| {
                if v.is_zero() {
                    Some(false)
                } else if v.is_one() {
                    Some(true)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<bool>>>()?;
        Some(TruthTable {
            arity: self.arity,
            values,
        })
    }

    /// `max_x |self(x) - other(x)|`.
    pub fn max_abs_diff(&self, other: &RealTable) -> Rational {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}
