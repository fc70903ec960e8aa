use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A variable (0-based) together with its polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Whether the literal holds when the variable takes `bit`.
    #[inline]
    pub fn holds(self, bit: u8) -> bool {
        (bit != 0) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { '+' } else { '-' };
        write!(f, "{sign}{}", self.var + 1)
    }
}

/// A conjunction of literals over distinct variables, i.e. a subcube.
///
/// Literals are kept sorted by variable; the empty conjunction is the
/// constant-1 function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Conjunction {
    literals: Vec<Literal>,
}

impl Conjunction {
    pub fn top() -> Self {
        Conjunction::default()
    }

    /// Builds a conjunction; repeated literals are merged and a variable
    /// appearing with both polarities is rejected.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var == w[1].var {
                return Err(Error::Domain(format!(
                    "variable {} appears with both polarities",
                    w[0].var + 1
                )));
            }
        }
        Ok(Conjunction { literals: lits })
    }

    /// The conjunction fixing exactly the variables in `vars` to their values in `x`.
    pub fn from_assignment(vars: impl IntoIterator<Item = usize>, x: &[u8]) -> Self {
        let mut literals: Vec<Literal> = vars
            .into_iter()
            .map(|v| Literal {
                var: v,
                positive: x[v] != 0,
            })
            .collect();
        literals.sort();
        literals.dedup();
        Conjunction { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn is_top(&self) -> bool {
        self.literals.is_empty()
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.literals.last().map(|l| l.var)
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.literals
            .binary_search_by_key(&var, |l| l.var)
            .ok()
            .map(|i| self.literals[i].positive)
    }

    /// Evaluates on a bitstring; variables beyond `x.len()` are an error of the caller.
    pub fn eval(&self, x: &[u8]) -> bool {
        self.literals.iter().all(|l| l.holds(x[l.var]))
    }

    /// Evaluates on the input with table index `idx` over `n` variables.
    #[inline]
    pub fn eval_index(&self, idx: usize, n: usize) -> bool {
        self.literals
            .iter()
            .all(|l| l.holds(((idx >> (n - 1 - l.var)) & 1) as u8))
    }

    /// Two subcubes intersect iff no variable is fixed to opposite values.
    pub fn consistent_with(&self, other: &Conjunction) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.literals, &other.literals);
        while i < a.len() && j < b.len() {
            match a[i].var.cmp(&b[j].var) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i].positive != b[j].positive {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    /// Conjunction of two conjunctions, `None` when contradictory.
    pub fn and(&self, other: &Conjunction) -> Option<Conjunction> {
        if !self.consistent_with(other) {
            return None;
        }
        let mut literals = self.literals.clone();
        literals.extend_from_slice(&other.literals);
        literals.sort();
        literals.dedup();
        Some(Conjunction { literals })
    }

    /// Renames every variable `v` to `v + offset`.
    pub fn shifted(&self, offset: usize) -> Conjunction {
        Conjunction {
            literals: self
                .literals
                .iter()
                .map(|l| Literal {
                    var: l.var + offset,
                    positive: l.positive,
                })
                .collect(),
        }
    }

    /// `(care, value)` bit masks over table indices of an `n`-variable input.
    pub fn index_masks(&self, n: usize) -> (usize, usize) {
        let mut care = 0;
        let mut value = 0;
        for l in &self.literals {
            let bit = 1 << (n - 1 - l.var);
            care |= bit;
            if l.positive {
                value |= bit;
            }
        }
        (care, value)
    }

    /// Inverse of [`Conjunction::index_masks`].
    pub fn from_index_masks(care: usize, value: usize, n: usize) -> Conjunction {
        let literals = (0..n)
            .filter(|&v| care >> (n - 1 - v) & 1 == 1)
            .map(|v| Literal {
                var: v,
                positive: value >> (n - 1 - v) & 1 == 1,
            })
            .collect();
        Conjunction { literals }
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "true");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All conjunctions of width at most `d` over `n` variables, ordered by
/// width and then lexicographically by literal list.
pub fn all_conjunctions(n: usize, d: usize) -> Vec<Conjunction> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for w in 0..=d.min(n) {
        for vars in (0..n).combinations(w) {
            for signs in 0..(1usize << w) {
                let literals = vars
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Literal {
                        var: v,
                        positive: signs >> (w - 1 - i) & 1 == 1,
                    })
                    .collect();
                out.push(Conjunction { literals });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_contradiction() {
        assert!(Conjunction::new([Literal::pos(0), Literal::neg(0)]).is_err());
        let c = Conjunction::new([Literal::pos(2), Literal::neg(0), Literal::pos(2)]).unwrap();
        assert_eq!(c.width(), 2);
        assert_eq!(c.to_string(), "-1 +3");
    }

    #[test]
    fn masks_round_trip() {
        let c = Conjunction::new([Literal::pos(0), Literal::neg(2)]).unwrap();
        let (care, value) = c.index_masks(3);
        assert_eq!((care, value), (0b101, 0b100));
        assert_eq!(Conjunction::from_index_masks(care, value, 3), c);
        assert!(c.eval_index(0b110, 3));
        assert!(!c.eval_index(0b111, 3));
    }

    #[test]
    fn conjunction_count() {
        // sum_j C(n,j) 2^j
        assert_eq!(all_conjunctions(4, 4).len(), 81);
        assert_eq!(all_conjunctions(3, 1).len(), 7);
        assert_eq!(all_conjunctions(2, 0), vec![Conjunction::top()]);
    }
}
