use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ConicalJunta;
use crate::boolfn::cube::CubeIndexer;
use crate::boolfn::{all_conjunctions, Conjunction, RealTable};
use crate::error::{Error, Result};
use crate::lp::{self as simplex, DEFAULT_MAX_ENTRIES};
use crate::rational::{self, Rational};

/// Largest arity accepted by [`approx_nonneg_degree_lp`].
pub const DEFAULT_LP_ARITY_BOUND: usize = 8;

/// Largest arity whose certificates are checked through a full subcube table.
const CUBE_TABLE_ARITY: usize = 12;

/// Signed function on `{0,1}^n` tested against all conjunctions of width at most `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub arity: usize,
    pub degree: usize,
    #[serde(with = "rational::serde_rational_vec")]
    pub values: Vec<Rational>,
}

impl DualCertificate {
    pub fn new(arity: usize, degree: usize, values: Vec<Rational>) -> Result<Self> {
        if arity > crate::boolfn::MAX_TABLE_ARITY || values.len() != 1 << arity {
            return Err(Error::InputArity {
                expected: 1usize.checked_shl(arity as u32).unwrap_or(usize::MAX),
                got: values.len(),
            });
        }
        Ok(DualCertificate {
            arity,
            degree,
            values,
        })
    }

    pub fn zero(arity: usize, degree: usize) -> Self {
        DualCertificate {
            arity,
            degree,
            values: vec![Rational::zero(); 1 << arity],
        }
    }

    /// `sum_x |phi(x)|`.
    pub fn norm(&self) -> Rational {
        self.values.iter().map(Signed::abs).sum()
    }

    pub fn inner(&self, f: &RealTable) -> Rational {
        self.values.iter().zip(f.values()).map(|(a, b)| a * b).sum()
    }

    pub fn inner_conjunction(&self, c: &Conjunction) -> Rational {
        (0..self.values.len())
            .filter(|&i| c.eval_index(i, self.arity))
            .map(|i| self.values[i].clone())
            .sum()
    }

    /// First conjunction of width at most `degree` with positive correlation.
    pub fn violated_conjunction(&self) -> Result<Option<(Conjunction, Rational)>> {
        let n = self.arity;
        if n <= CUBE_TABLE_ARITY {
            let ix = CubeIndexer::new(n);
            let sums = ix.fill(|x| self.values[x].clone(), |a, b| a + b);
            return Ok(all_conjunctions(n, self.degree).into_iter().find_map(|c| {
                let s = &sums[ix.id_of(&c)];
                s.is_positive().then(|| (c, s.clone()))
            }));
        }
        let count: usize = (0..=self.degree.min(n))
            .map(|w| rational::binomial(n as u64, w as u64) as usize * (1 << w))
            .sum();
        if count.saturating_mul(1 << n) > 1 << 32 {
            return Err(Error::Resource(format!(
                "certificate check over {count} conjunctions on {n} variables"
            )));
        }
        Ok(all_conjunctions(n, self.degree).into_iter().find_map(|c| {
            let s = self.inner_conjunction(&c);
            s.is_positive().then_some((c, s))
        }))
    }

    /// `norm <= 1` and `<phi, C> <= 0` for every conjunction of width at most `degree`.
    pub fn is_feasible(&self) -> Result<bool> {
        Ok(self.norm() <= Rational::one() && self.violated_conjunction()?.is_none())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
}

/// Optimal error of the width-`d` LP with matching primal and dual witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub optimum: Rational,
    pub primal: ConicalJunta,
    pub dual: DualCertificate,
    pub status: LpStatus,
}

#[derive(Serialize, Deserialize)]
struct LpRecord {
    optimum: String,
    status: LpStatus,
    primal_witness: JuntaRecord,
    dual_witness: DualCertificate,
}

#[derive(Serialize, Deserialize)]
struct JuntaRecord {
    arity: usize,
    terms: Vec<(String, String)>,
}

impl LpResult {
    /// `{optimum, status, primal_witness, dual_witness}`; conjunctions use the junta text syntax.
    pub fn to_json(&self) -> serde_json::Value {
        let rec = LpRecord {
            optimum: rational::format(&self.optimum),
            status: self.status,
            primal_witness: JuntaRecord {
                arity: self.primal.arity(),
                terms: self
                    .primal
                    .terms()
                    .iter()
                    .map(|(w, c)| (rational::format(w), c.to_string()))
                    .collect(),
            },
            dual_witness: self.dual.clone(),
        };
        serde_json::to_value(rec).expect("plain record")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LpResult> {
        let rec: LpRecord = serde_json::from_value(v.clone())
            .map_err(|e| Error::parse(1, format!("LP record: {e}")))?;
        let optimum = rational::parse(&rec.optimum)
            .ok_or_else(|| Error::parse(1, format!("bad optimum {:?}", rec.optimum)))?;
        let mut terms = Vec::new();
        for (w, c) in &rec.primal_witness.terms {
            let w = rational::parse(w).ok_or_else(|| Error::parse(1, format!("bad weight {w:?}")))?;
            let text = format!("junta {}\n{} {}", rec.primal_witness.arity, rational::format(&w), c);
            let parsed = super::text::parse_junta(&text)?;
            terms.extend(parsed.terms().iter().cloned());
        }
        let dual = DualCertificate::new(rec.dual_witness.arity, rec.dual_witness.degree, rec.dual_witness.values)?;
        Ok(LpResult {
            optimum,
            primal: ConicalJunta::new(rec.primal_witness.arity, terms)?,
            dual,
            status: rec.status,
        })
    }
}

/// Exact optimum of `min eps  s.t.  |sum_C w_C C(x) - f(x)| <= eps, w >= 0` over
/// conjunctions of width at most `d`; a `d` above the arity admits every conjunction.
pub fn approx_nonneg_degree_lp(f: &RealTable, d: usize) -> Result<LpResult> {
    approx_nonneg_degree_lp_bounded(f, d, DEFAULT_LP_ARITY_BOUND, DEFAULT_MAX_ENTRIES)
}

pub fn approx_nonneg_degree_lp_bounded(
    f: &RealTable,
    d: usize,
    arity_bound: usize,
    max_entries: usize,
) -> Result<LpResult> {
    let n = f.arity();
    if n > arity_bound {
        return Err(Error::Resource(format!(
            "LP arity {n} exceeds bound {arity_bound}"
        )));
    }
    let d = d.min(n);
    let conjs = all_conjunctions(n, d);
    let basis: Vec<Vec<Rational>> = (0..1usize << n)
        .map(|x| {
            conjs
                .iter()
                .map(|c| {
                    if c.eval_index(x, n) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let fit = simplex::linf_fit(&basis, f.values(), max_entries)?;
    let primal = ConicalJunta::new(
        n,
        fit.weights
            .into_iter()
            .zip(conjs)
            .filter(|(w, _)| !w.is_zero())
            .collect(),
    )?
    .normalized();
    let dual = DualCertificate::new(n, d, fit.dual)?;
    let result = LpResult {
        optimum: fit.error,
        primal,
        dual,
        status: LpStatus::Optimal,
    };
    // independent recheck through the junta and certificate APIs
    if result.primal.max_error(f)? != result.optimum
        || result.dual.inner(f) != result.optimum
        || !result.dual.is_feasible()?
    {
        return Err(Error::Internal("LP witnesses disagree with optimum".into()));
    }
    Ok(result)
}

/// Least `d` whose LP optimum is at most `eps`, with the LP at that width.
pub fn approx_nonneg_degree(f: &RealTable, eps: &Rational) -> Result<(usize, LpResult)> {
    if eps.is_negative() {
        return Err(Error::Parameter("error must be nonnegative".into()));
    }
    for d in 0..=f.arity() {
        let r = approx_nonneg_degree_lp(f, d)?;
        if &r.optimum <= eps {
            return Ok((d, r));
        }
    }
    Err(Error::Domain(format!(
        "no conical junta approximates within {} (negative values?)",
        rational::format(eps)
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Arity { certificate: usize, function: usize },
    Norm(Rational),
    Conjunction(Conjunction, Rational),
    Value(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualVerdict {
    /// Certifies `deg+_delta(f) > degree`; carries `<phi, f>`.
    Accept(Rational),
    Reject(Rejection),
}

impl DualVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, DualVerdict::Accept(_))
    }
}

impl std::fmt::Display for DualVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DualVerdict::Accept(v) => write!(f, "accept (value {})", rational::format(v)),
            DualVerdict::Reject(Rejection::Arity {
                certificate,
                function,
            }) => write!(f, "reject: arity {certificate} vs {function}"),
            DualVerdict::Reject(Rejection::Norm(v)) => {
                write!(f, "reject: norm {} > 1", rational::format(v))
            }
            DualVerdict::Reject(Rejection::Conjunction(c, v)) => {
                write!(f, "reject: <phi, {c}> = {} > 0", rational::format(v))
            }
            DualVerdict::Reject(Rejection::Value(v)) => {
                write!(f, "reject: value {} not above delta", rational::format(v))
            }
        }
    }
}

/// Checks norm, every conjunction constraint, and `<phi, f> > delta`, in that order.
pub fn verify_dual_certificate(
    phi: &DualCertificate,
    f: &RealTable,
    delta: &Rational,
) -> Result<DualVerdict> {
    if phi.arity != f.arity() {
        return Ok(DualVerdict::Reject(Rejection::Arity {
            certificate: phi.arity,
            function: f.arity(),
        }));
    }
    let norm = phi.norm();
    if norm > Rational::one() {
        return Ok(DualVerdict::Reject(Rejection::Norm(norm)));
    }
    if let Some((c, v)) = phi.violated_conjunction()? {
        return Ok(DualVerdict::Reject(Rejection::Conjunction(c, v)));
    }
    let value = phi.inner(f);
    if &value > delta {
        Ok(DualVerdict::Accept(value))
    } else {
        Ok(DualVerdict::Reject(Rejection::Value(value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Literal, TruthTable};
    use crate::rational::{int, ratio};

    fn or2() -> RealTable {
        TruthTable::or(2).unwrap().to_real()
    }

    #[test]
    fn or2_exact_at_width_two() {
        let r = approx_nonneg_degree_lp(&or2(), 2).unwrap();
        assert_eq!(r.optimum, int(0));
        assert!(r.primal.computes(&or2()));
    }

    #[test]
    fn or2_width_one_is_one_quarter() {
        // hand-built pair: every width-1 conjunction has C(00)+C(11) = C(01)+C(10),
        // so phi = (-1/4, 1/4, 1/4, -1/4) is orthogonal to all of them
        let hand_dual =
            DualCertificate::new(2, 1, vec![ratio(-1, 4), ratio(1, 4), ratio(1, 4), ratio(-1, 4)]).unwrap();
        assert!(hand_dual.is_feasible().unwrap());
        assert_eq!(hand_dual.inner(&or2()), ratio(1, 4));
        let hand_primal = ConicalJunta::new(
            2,
            vec![
                (ratio(5, 8), Conjunction::new([Literal::pos(0)]).unwrap()),
                (ratio(5, 8), Conjunction::new([Literal::pos(1)]).unwrap()),
                (ratio(1, 8), Conjunction::new([Literal::neg(0)]).unwrap()),
                (ratio(1, 8), Conjunction::new([Literal::neg(1)]).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(hand_primal.max_error(&or2()).unwrap(), ratio(1, 4));

        let r = approx_nonneg_degree_lp(&or2(), 1).unwrap();
        assert_eq!(r.optimum, ratio(1, 4));
        // restricted to positive literals the best is 1/3
        let sym = ConicalJunta::new(
            2,
            vec![
                (ratio(2, 3), Conjunction::new([Literal::pos(0)]).unwrap()),
                (ratio(2, 3), Conjunction::new([Literal::pos(1)]).unwrap()),
            ],
        )
        .unwrap();
        assert_eq!(sym.max_error(&or2()).unwrap(), ratio(1, 3));
        let v = verify_dual_certificate(&r.dual, &or2(), &ratio(1, 5)).unwrap();
        assert_eq!(v, DualVerdict::Accept(ratio(1, 4)));
        let v = verify_dual_certificate(&r.dual, &or2(), &ratio(1, 4)).unwrap();
        assert!(!v.is_accept());
    }

    #[test]
    fn and2_constant_half() {
        let r = approx_nonneg_degree_lp(&TruthTable::and(2).unwrap().to_real(), 0).unwrap();
        assert_eq!(r.optimum, ratio(1, 2));
        assert_eq!(r.primal.terms(), &[(ratio(1, 2), Conjunction::top())]);
    }

    #[test]
    fn rejects_large_norm_and_zero_value() {
        let phi = DualCertificate::new(1, 0, vec![int(-1), int(-1)]).unwrap();
        assert!(matches!(
            verify_dual_certificate(&phi, &TruthTable::identity().to_real(), &int(0)).unwrap(),
            DualVerdict::Reject(Rejection::Norm(_))
        ));
        let z = DualCertificate::zero(2, 1);
        assert!(matches!(
            verify_dual_certificate(&z, &or2(), &int(0)).unwrap(),
            DualVerdict::Reject(Rejection::Value(_))
        ));
    }

    #[test]
    fn positive_conjunction_rejected() {
        let phi = DualCertificate::new(1, 1, vec![ratio(-1, 4), ratio(1, 2)]).unwrap();
        let v = verify_dual_certificate(&phi, &TruthTable::identity().to_real(), &int(0)).unwrap();
        assert!(matches!(v, DualVerdict::Reject(Rejection::Conjunction(..))));
    }

    #[test]
    fn least_degree_search() {
        let (d, r) = approx_nonneg_degree(&or2(), &ratio(1, 3)).unwrap();
        assert_eq!((d, r.optimum), (1, ratio(1, 4)));
        let (d, _) = approx_nonneg_degree(&or2(), &ratio(1, 5)).unwrap();
        assert_eq!(d, 2);
        let (d, _) = approx_nonneg_degree(&or2(), &ratio(1, 2)).unwrap();
        assert_eq!(d, 0);
    }

    #[test]
    fn arity_bound_is_a_resource_error() {
        let f = TruthTable::and(9).unwrap().to_real();
        assert!(matches!(approx_nonneg_degree_lp(&f, 1), Err(Error::Resource(_))));
    }

    #[test]
    fn json_round_trip() {
        let r = approx_nonneg_degree_lp(&or2(), 1).unwrap();
        let v = r.to_json();
        assert_eq!(v["optimum"], "1/4");
        assert_eq!(LpResult::from_json(&v).unwrap(), r);
    }
}
