use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Conjunction, TruthTable};
use crate::error::{Error, Result};

fn check_vars(arity: usize, terms: &[Conjunction]) -> Result<()> {
    for t in terms {
        if let Some(v) = t.max_var() {
            if v >= arity {
                return Err(Error::Domain(format!(
                    "literal on variable {} exceeds arity {arity}",
                    v + 1
                )));
            }
        }
    }
    Ok(())
}

/// `C_1 or ... or C_m` over `arity` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DnfFormula {
    arity: usize,
    terms: Vec<Conjunction>,
}

impl DnfFormula {
    pub fn new(arity: usize, terms: Vec<Conjunction>) -> Result<Self> {
        check_vars(arity, &terms)?;
        Ok(DnfFormula { arity, terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Conjunction] {
        &self.terms
    }

    pub fn width(&self) -> usize {
        self.terms.iter().map(Conjunction::width).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[u8]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::InputArity {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.terms.iter().any(|t| t.eval(x)))
    }

    /// At most one term is satisfied by any input. Decided pairwise: two terms
    /// can fire together iff their literal sets are contradiction-free.
    pub fn is_unambiguous(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, a)| {
            self.terms[i + 1..]
                .iter()
                .all(|b| !a.consistent_with(b))
        })
    }

    /// Same formula with duplicate terms removed (first occurrence kept).
    pub fn dedup(&self) -> DnfFormula {
        let mut seen = BTreeSet::new();
        let terms = self
            .terms
            .iter()
            .filter(|t| seen.insert((*t).clone()))
            .cloned()
            .collect();
        DnfFormula {
            arity: self.arity,
            terms,
        }
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let n = self.arity;
        TruthTable::from_index_fn(n, |i| self.terms.iter().any(|t| t.eval_index(i, n)))
    }

    /// Number of satisfied terms per input, in table order.
    pub fn satisfied_counts(&self) -> Vec<usize> {
        let n = self.arity;
        (0..1usize << n)
            .map(|i| self.terms.iter().filter(|t| t.eval_index(i, n)).count())
            .collect()
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dnf {}", self.arity)?;
        for t in &self.terms {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `K_1 and ... and K_m`; each clause is stored as its literal set and read
/// as the disjunction of those literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    arity: usize,
    clauses: Vec<Conjunction>,
}

impl CnfFormula {
    pub fn new(arity: usize, clauses: Vec<Conjunction>) -> Result<Self> {
        check_vars(arity, &clauses)?;
        Ok(CnfFormula { arity, clauses })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn clauses(&self) -> &[Conjunction] {
        &self.clauses
    }

    pub fn width(&self) -> usize {
        self.clauses.iter().map(Conjunction::width).max().unwrap_or(0)
    }

    fn clause_holds(c: &Conjunction, x: &[u8]) -> bool {
        c.literals().iter().any(|l| l.holds(x[l.var]))
    }

    pub fn eval(&self, x: &[u8]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::InputArity {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| Self::clause_holds(c, x)))
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let n = self.arity;
        TruthTable::from_fn(n, |x| self.clauses.iter().all(|c| Self::clause_holds(c, x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Literal;

    fn conj(lits: &[i32]) -> Conjunction {
        Conjunction::new(lits.iter().map(|&l| {
            if l > 0 {
                Literal::pos(l as usize - 1)
            } else {
                Literal::neg((-l) as usize - 1)
            }
        }))
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let d = DnfFormula::new(1, vec![conj(&[1])]).unwrap();
        assert!(d.eval(&[1]).unwrap());
        let d = DnfFormula::new(2, vec![conj(&[1, -2])]).unwrap();
        assert!(!d.eval(&[1, 1]).unwrap());
        let d = DnfFormula::new(2, vec![conj(&[1]), conj(&[-1, 2])]).unwrap();
        assert!(d.eval(&[0, 1]).unwrap());
        assert_eq!(
            d.eval(&[0]),
            Err(Error::InputArity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn unambiguity_examples() {
        assert!(DnfFormula::new(2, vec![conj(&[1]), conj(&[-1, 2])])
            .unwrap()
            .is_unambiguous());
        assert!(!DnfFormula::new(2, vec![conj(&[1]), conj(&[2])])
            .unwrap()
            .is_unambiguous());
        assert!(DnfFormula::new(2, vec![]).unwrap().is_unambiguous());
    }

    #[test]
    fn variable_range_checked() {
        assert!(DnfFormula::new(2, vec![conj(&[3])]).is_err());
    }

    #[test]
    fn cnf_eval() {
        // (x1 or x2) and (not x1 or not x2) is XOR
        let c = CnfFormula::new(2, vec![conj(&[1, 2]), conj(&[-1, -2])]).unwrap();
        assert_eq!(c.to_truth_table().unwrap(), TruthTable::xor(2).unwrap());
        assert_eq!(c.width(), 2);
    }
}
