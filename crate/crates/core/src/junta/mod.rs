//! Conical juntas: nonnegative combinations of conjunctions.
//!
//! The approximate nonnegative degree `deg+_eps(f)` is the least width of a
//! conical junta within `eps` of `f` pointwise; [`approx_nonneg_degree_lp`]
//! computes the optimal error at a fixed width exactly, together with a
//! primal junta and a dual certificate of equal value.

mod lp;
pub mod text;
mod transforms;

pub use lp::{
    approx_nonneg_degree, approx_nonneg_degree_lp, approx_nonneg_degree_lp_bounded, verify_dual_certificate, DualCertificate,
    DualVerdict, LpResult, LpStatus, Rejection, DEFAULT_LP_ARITY_BOUND,
};
pub use transforms::{
    check_tensor_identities, or_shift_junta, power_junta, powering_error, powering_exponent,
    tensor_certificate, TensorChecks,
};

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::boolfn::{bits_of, Conjunction, DnfFormula, RealTable};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `sum_i w_i C_i` with `w_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicalJunta {
    arity: usize,
    terms: Vec<(Rational, Conjunction)>,
}

impl ConicalJunta {
    pub fn new(arity: usize, terms: Vec<(Rational, Conjunction)>) -> Result<Self> {
        for (w, c) in &terms {
            if w.is_negative() {
                return Err(Error::Domain(format!(
                    "negative weight {} on {c}",
                    rational::format(w)
                )));
            }
            if c.max_var().is_some_and(|v| v >= arity) {
                return Err(Error::Domain(format!("term {c} exceeds arity {arity}")));
            }
        }
        Ok(ConicalJunta { arity, terms })
    }

    pub fn zero(arity: usize) -> Self {
        ConicalJunta {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn constant(arity: usize, w: Rational) -> Result<Self> {
        Self::new(arity, vec![(w, Conjunction::top())])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Rational, Conjunction)] {
        &self.terms
    }

    /// Maximum width over terms with a nonzero weight.
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .filter(|(w, _)| !w.is_zero())
            .map(|(_, c)| c.width())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[u8]) -> Result<Rational> {
        if x.len() != self.arity {
            return Err(Error::InputArity {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(_, c)| c.eval(x))
            .map(|(w, _)| w.clone())
            .sum())
    }

    pub fn eval_index(&self, idx: usize) -> Rational {
        self.terms
            .iter()
            .filter(|(_, c)| c.eval_index(idx, self.arity))
            .map(|(w, _)| w.clone())
            .sum()
    }

    pub fn to_table(&self) -> RealTable {
        let values = (0..1usize << self.arity).map(|i| self.eval_index(i)).collect();
        RealTable::new(self.arity, values).expect("arity checked at construction")
    }

    /// Merges equal conjunctions, drops zero weights, sorts by conjunction.
    pub fn normalized(&self) -> ConicalJunta {
        let mut acc: BTreeMap<Conjunction, Rational> = BTreeMap::new();
        for (w, c) in &self.terms {
            *acc.entry(c.clone()).or_insert_with(Rational::zero) += w;
        }
        let mut terms: Vec<(Rational, Conjunction)> = acc
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, w)| (w, c))
            .collect();
        terms.sort_by(|a, b| (a.1.width(), &a.1).cmp(&(b.1.width(), &b.1)));
        ConicalJunta {
            arity: self.arity,
            terms,
        }
    }

    pub fn plus(&self, other: &ConicalJunta) -> ConicalJunta {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ConicalJunta {
            arity: self.arity.max(other.arity),
            terms,
        }
        .normalized()
    }

    pub fn scaled(&self, s: &Rational) -> Result<ConicalJunta> {
        if s.is_negative() {
            return Err(Error::Domain("negative scale".into()));
        }
        Ok(ConicalJunta {
            arity: self.arity,
            terms: self.terms.iter().map(|(w, c)| (w * s, c.clone())).collect(),
        }
        .normalized())
    }

    /// Pointwise product, multiplied out; contradictory products vanish.
    pub fn times(&self, other: &ConicalJunta) -> ConicalJunta {
        let mut acc: BTreeMap<Conjunction, Rational> = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some(c) = c1.and(c2) {
                    *acc.entry(c).or_insert_with(Rational::zero) += w1 * w2;
                }
            }
        }
        ConicalJunta {
            arity: self.arity.max(other.arity),
            terms: acc.into_iter().map(|(c, w)| (w, c)).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, k: u32) -> ConicalJunta {
        let mut result = ConicalJunta::constant(self.arity, Rational::one()).expect("top term");
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        result
    }

    /// Whether the junta equals `target` on every input.
    pub fn computes(&self, target: &RealTable) -> bool {
        target.arity() == self.arity
            && (0..1usize << self.arity).all(|i| &self.eval_index(i) == target.at(i))
    }

    /// `max_x |junta(x) - target(x)|`.
    pub fn max_error(&self, target: &RealTable) -> Result<Rational> {
        if target.arity() != self.arity {
            return Err(Error::InputArity {
                expected: self.arity,
                got: target.arity(),
            });
        }
        Ok((0..1usize << self.arity)
            .map(|i| (self.eval_index(i) - target.at(i)).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    /// Values on all inputs as bitstrings; used by reports.
    pub fn value_rows(&self) -> Vec<(Vec<u8>, Rational)> {
        (0..1usize << self.arity)
            .map(|i| (bits_of(i, self.arity), self.eval_index(i)))
            .collect()
    }
}

/// The 0/1-weighted junta `sum_i C_i` of an unambiguous DNF.
pub fn junta_from_unambiguous_dnf(d: &DnfFormula) -> Result<ConicalJunta> {
    if !d.is_unambiguous() {
        return Err(Error::Precondition("DNF is ambiguous".into()));
    }
    ConicalJunta::new(
        d.arity(),
        d.terms()
            .iter()
            .map(|c| (Rational::one(), c.clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Literal, TruthTable};
    use crate::rational::{int, ratio};

    fn lit(v: usize) -> Conjunction {
        Conjunction::new([Literal::pos(v)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let h = ConicalJunta::new(1, vec![(int(1), lit(0))]).unwrap();
        assert_eq!(h.eval(&[1]).unwrap(), int(1));
        let h = ConicalJunta::new(2, vec![(ratio(2, 3), lit(0)), (ratio(2, 3), lit(1))]).unwrap();
        assert_eq!(h.eval(&[1, 1]).unwrap(), ratio(4, 3));
        let z = ConicalJunta::zero(3);
        assert!((0..8).all(|i| z.eval_index(i).is_zero()));
        assert!(h.eval(&[1]).is_err());
    }

    #[test]
    fn rejects_negative_weight() {
        assert!(ConicalJunta::new(1, vec![(int(-1), lit(0))]).is_err());
    }

    #[test]
    fn from_unambiguous_dnf() {
        let or2 = DnfFormula::new(
            2,
            vec![
                lit(0),
                Conjunction::new([Literal::neg(0), Literal::pos(1)]).unwrap(),
            ],
        )
        .unwrap();
        let j = junta_from_unambiguous_dnf(&or2).unwrap();
        assert_eq!(j.degree(), 2);
        assert!(j.computes(&TruthTable::or(2).unwrap().to_real()));
        assert_eq!(
            junta_from_unambiguous_dnf(&DnfFormula::new(2, vec![]).unwrap()).unwrap(),
            ConicalJunta::zero(2)
        );
        let amb = DnfFormula::new(2, vec![lit(0), lit(1)]).unwrap();
        assert!(matches!(junta_from_unambiguous_dnf(&amb), Err(Error::Precondition(_))));
    }

    #[test]
    fn product_multiplies_pointwise() {
        let a = ConicalJunta::new(2, vec![(int(2), lit(0)), (ratio(1, 3), Conjunction::top())]).unwrap();
        let b = ConicalJunta::new(
            2,
            vec![
                (int(1), Conjunction::new([Literal::neg(0)]).unwrap()),
                (ratio(1, 2), lit(1)),
            ],
        )
        .unwrap();
        let p = a.times(&b);
        for i in 0..4 {
            assert_eq!(p.eval_index(i), a.eval_index(i) * b.eval_index(i));
        }
        let cube = a.pow(3);
        for i in 0..4 {
            let v = a.eval_index(i);
            assert_eq!(cube.eval_index(i), &v * &v * &v);
        }
    }
}
