//! Exact rational helpers shared by the LP, certificate and matrix code.
//!
//! Rationals are printed as `p/q` (or `p` when the denominator is one) and
//! parsed from the same syntax. Logarithms, the only transcendental quantity
//! the crate needs, are enclosed in rational intervals with outward rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Snaps a float to the nearest rational with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn snap(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Divides by a positive integer.
    pub fn div_int(&self, k: u64) -> Interval {
        let k = Rational::from_integer(BigInt::from(k));
        Interval {
            lo: &self.lo / &k,
            hi: &self.hi / &k,
        }
    }

    pub fn scale_int(&self, k: u64) -> Interval {
        let k = Rational::from_integer(BigInt::from(k));
        Interval {
            lo: &self.lo * &k,
            hi: &self.hi * &k,
        }
    }

    /// Rounds the endpoints outward onto the dyadic grid `2^-bits`.
    pub fn outward(&self, bits: u32) -> Interval {
        let scale = BigInt::one() << bits;
        let s = Rational::from_integer(scale.clone());
        let lo = (&self.lo * &s).floor();
        let hi = (&self.hi * &s).ceil();
        Interval {
            lo: lo / &s,
            hi: hi / &s,
        }
    }

    pub fn display(&self) -> String {
        format!("[{}, {}]", format(&self.lo), format(&self.hi))
    }
}

/// Encloses `ln(x)` for rational `x > 0`, with width below `2^-precision_bits`.
pub fn ln_interval(x: &Rational, precision_bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive {}", format(x))));
    }
    let two = int(2);
    // x = y * 2^shift with y in [1/2, 2)
    let mut y = x.clone();
    let mut shift: i64 = 0;
    while y >= two {
        y /= &two;
        shift += 1;
    }
    let half = ratio(1, 2);
    while y < half {
        y *= &two;
        shift -= 1;
    }
    let ln_y = atanh_series(&y, precision_bits + 8);
    if shift == 0 {
        return Ok(ln_y.outward(precision_bits + 4));
    }
    let ln2 = atanh_series(&two, precision_bits + 8 + 64 - (shift.unsigned_abs().leading_zeros()));
    let s = int(shift);
    let (l2lo, l2hi) = if shift > 0 {
        (&ln2.lo * &s, &ln2.hi * &s)
    } else {
        (&ln2.hi * &s, &ln2.lo * &s)
    };
    Ok(Interval {
        lo: ln_y.lo + l2lo,
        hi: ln_y.hi + l2hi,
    }
    .outward(precision_bits + 4))
}

/// `ln(y) = 2 atanh(z)` with `z = (y-1)/(y+1)`; for `y` in `[1/2, 2]`, `|z| <= 1/3`.
fn atanh_series(y: &Rational, bits: u32) -> Interval {
    let one = Rational::one();
    let z = (y - &one) / (y + &one);
    if z.is_zero() {
        return Interval {
            lo: Rational::zero(),
            hi: Rational::zero(),
        };
    }
    let negative = z.is_negative();
    let z = z.abs();
    let z2 = &z * &z;
    let tol = Rational::new(BigInt::one(), BigInt::one() << bits);
    let mut sum = Rational::zero();
    let mut power = z.clone();
    let mut j: i64 = 0;
    loop {
        sum += &power / int(2 * j + 1);
        power *= &z2;
        j += 1;
        // tail of 2*sum_{i>=j} z^{2i+1}/(2i+1) is at most 2 z^{2j+1} / ((2j+1)(1-z^2))
        let tail = int(2) * &power / (int(2 * j + 1) * (&one - &z2));
        if tail < tol {
            let lo = int(2) * &sum;
            let hi = &lo + tail;
            return if negative {
                Interval { lo: -hi, hi: -lo }
            } else {
                Interval { lo, hi }
            };
        }
    }
}

/// Smallest integer `>= x`.
pub fn ceil_to_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod serde_rational {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::Rational;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("2/4"), Some(ratio(1, 2)));
        assert_eq!(parse("-3"), Some(int(-3)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&int(7)), "7");
    }

    #[test]
    fn ln_encloses_float_value() {
        for (num, den) in [(21i64, 20i64), (36, 1), (225, 1), (1, 7), (2, 1), (1, 1)] {
            let x = ratio(num, den);
            let iv = ln_interval(&x, 60).unwrap();
            let f = (num as f64 / den as f64).ln();
            assert!(to_f64(&iv.lo) <= f + 1e-12 && f - 1e-12 <= to_f64(&iv.hi), "{num}/{den}");
            assert!(iv.width() < ratio(1, 1 << 50));
        }
        assert!(ln_interval(&int(0), 10).is_err());
    }

    #[test]
    fn snap_recovers_small_fractions() {
        assert_eq!(snap(0.6666666667, 100), ratio(2, 3));
        assert_eq!(snap(-0.25, 100), ratio(-1, 4));
        assert_eq!(snap(3.0, 10), int(3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
    }
}
