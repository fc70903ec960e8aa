use num_traits::{One, Signed};

use super::{ConicalJunta, DualCertificate};
use crate::boolfn::cube::CubeIndexer;
use crate::boolfn::{all_conjunctions, RealTable, TruthTable};
use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Interval, Rational};

/// Bits of precision for the enclosure of `ln(1+delta)/k`.
const LN_PRECISION_BITS: u32 = 64;

/// Largest combined arity `2n` handled by [`check_tensor_identities`].
const TENSOR_CHECK_ARITY: usize = 12;

/// `phi_or(x, y) = -phi(x) phi(y)` on `2n` variables with `x` in the high half.
pub fn tensor_certificate(phi: &DualCertificate) -> Result<DualCertificate> {
    if !phi.is_feasible()? {
        return Err(Error::Precondition(
            "certificate is not dual feasible at its degree".into(),
        ));
    }
    let n = phi.arity;
    if 2 * n > crate::boolfn::MAX_TABLE_ARITY {
        return Err(Error::Resource(format!("tensor square of arity {n}")));
    }
    let mut values = Vec::with_capacity(1 << (2 * n));
    for a in &phi.values {
        for b in &phi.values {
            values.push(-(a * b));
        }
    }
    DualCertificate::new(2 * n, phi.degree, values)
}

/// Outcome of the three exact checks on a tensor certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorChecks {
    /// `||phi_or|| = ||phi||^2 <= 1`.
    pub norm: bool,
    /// `<phi_or, C> = -<phi, C1><phi, C2> <= 0` for every conjunction of width at most the degree.
    pub sign: bool,
    /// `<phi_or, f_or> = <phi, -f><phi, 2-f>`, `<phi, -f> >= <phi, 2-f>`, and the value exceeds `eps^2`.
    pub value: bool,
    pub or_value: Rational,
}

impl TensorChecks {
    pub fn all(&self) -> bool {
        self.norm && self.sign && self.value
    }
}

pub fn check_tensor_identities(
    phi: &DualCertificate,
    phi_or: &DualCertificate,
    f: &TruthTable,
    eps: &Rational,
) -> Result<TensorChecks> {
    let n = phi.arity;
    if f.arity() != n || phi_or.arity != 2 * n {
        return Err(Error::InputArity {
            expected: n,
            got: f.arity(),
        });
    }
    if 2 * n > TENSOR_CHECK_ARITY {
        return Err(Error::Resource(format!("tensor checks on {} variables", 2 * n)));
    }
    let norm_phi = phi.norm();
    let norm = phi_or.norm() == &norm_phi * &norm_phi && norm_phi <= Rational::one();

    let small = CubeIndexer::new(n);
    let big = CubeIndexer::new(2 * n);
    let sums = small.fill(|x| phi.values[x].clone(), |a, b| a + b);
    let big_sums = big.fill(|x| phi_or.values[x].clone(), |a, b| a + b);
    let low = (1usize << n) - 1;
    let sign = all_conjunctions(2 * n, phi_or.degree).iter().all(|c| {
        let (care, value) = c.index_masks(2 * n);
        let s = &big_sums[big.id(care, value)];
        let s1 = &sums[small.id(care >> n, value >> n)];
        let s2 = &sums[small.id(care & low, value & low)];
        *s == -(s1 * s2) && !s.is_positive()
    });

    let minus_f = RealTable::affine(f, &int(0), &int(-1));
    let two_minus_f = RealTable::affine(f, &int(2), &int(-1));
    let a = phi.inner(&minus_f);
    let b = phi.inner(&two_minus_f);
    let or_value = phi_or.inner(&f.or_compose()?.to_real());
    let value = or_value == &a * &b && a >= b && or_value > eps * eps;
    Ok(TensorChecks {
        norm,
        sign,
        value,
        or_value,
    })
}

/// Least `k` with `(3/4)^k <= delta`, for `0 < delta < 1/2`.
pub fn powering_exponent(delta: &Rational) -> Result<u32> {
    if !delta.is_positive() || delta >= &ratio(1, 2) {
        return Err(Error::Parameter(format!(
            "delta must lie in (0, 1/2), got {}",
            rational::format(delta)
        )));
    }
    let q = ratio(3, 4);
    let mut p = Rational::one();
    let mut k = 0u32;
    while &p > delta {
        p *= &q;
        k += 1;
    }
    Ok(k)
}

/// Enclosure of `ln(1+delta)/k` with `k` from [`powering_exponent`].
pub fn powering_error(delta: &Rational) -> Result<Interval> {
    let k = powering_exponent(delta)?;
    let ln = rational::ln_interval(&(Rational::one() + delta), LN_PRECISION_BITS)?;
    Ok(ln.div_int(u64::from(k)))
}

/// `((g + eps)/2)^k` multiplied out, with `k` from [`powering_exponent`].
///
/// With `f` supplied, `g` must approximate `1+f` within `eps` and the result is
/// checked to approximate `f` within `delta`.
pub fn power_junta(
    g: &ConicalJunta,
    eps: &Rational,
    delta: &Rational,
    f: Option<&TruthTable>,
) -> Result<ConicalJunta> {
    let k = powering_exponent(delta)?;
    let bound = powering_error(delta)?;
    if eps.is_negative() || eps > &bound.hi {
        return Err(Error::Parameter(format!(
            "eps {} outside [0, ln(1+delta)/{k}]",
            rational::format(eps)
        )));
    }
    if let Some(f) = f {
        let target = RealTable::affine(f, &int(1), &int(1));
        if &g.max_error(&target)? > eps {
            return Err(Error::Precondition(format!(
                "junta does not approximate 1+f within {}",
                rational::format(eps)
            )));
        }
    }
    let half = ratio(1, 2);
    let shifted = g
        .scaled(&half)?
        .plus(&ConicalJunta::constant(g.arity(), eps * &half)?);
    let out = shifted.pow(k);
    if let Some(f) = f {
        if &out.max_error(&f.to_real())? > delta {
            return Err(Error::Internal("powered junta misses delta".into()));
        }
    }
    Ok(out)
}

/// `(h(x) + h(y))/2 + 1/4` on `2n` variables, for `h` computing `f` exactly.
pub fn or_shift_junta(h: &ConicalJunta, f: &TruthTable) -> Result<ConicalJunta> {
    if h.arity() != f.arity() || !h.computes(&f.to_real()) {
        return Err(Error::Precondition(
            "junta does not compute the boolean function".into(),
        ));
    }
    let n = h.arity();
    let half = ratio(1, 2);
    let mut terms = Vec::with_capacity(2 * h.terms().len() + 1);
    for (w, c) in h.terms() {
        terms.push((w * &half, c.clone()));
        terms.push((w * &half, c.shifted(n)));
    }
    terms.push((ratio(1, 4), crate::boolfn::Conjunction::top()));
    Ok(ConicalJunta::new(2 * n, terms)?.normalized())
}
