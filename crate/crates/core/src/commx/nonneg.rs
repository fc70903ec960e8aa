use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{partition_number, rational_rank, CommMatrix, RectangleMeasure, Rectangle};
use crate::error::{Error, Result};
use crate::lp::{linf_fit, DEFAULT_MAX_ENTRIES};
use crate::rational::{self, ratio, Rational};

/// Seed of the multiplicative-update initialization.
pub const NMF_SEED: u64 = 0x6e6d_665f_7365_6564;
pub const NMF_MAX_ITERATIONS: usize = 10_000;
const ALTERNATING_ROUNDS: usize = 40;
const SNAP_DENOMINATOR: u64 = 1 << 10;

/// Pairs `(u_i, v_i)` of a factorization.
pub type Factors = Vec<(Vec<Rational>, Vec<Rational>)>;

/// `M = sum_i u_i v_i^T` with nonnegative `u_i` (over rows) and `v_i` (over columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonnegFactorization {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "factor_serde")]
    pub factors: Factors,
}

mod factor_serde {
    use super::Rational;
    use crate::rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Factor {
        u: Vec<String>,
        v: Vec<String>,
    }

    pub fn serialize<S: Serializer>(
        f: &[(Vec<Rational>, Vec<Rational>)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let out: Vec<Factor> = f
            .iter()
            .map(|(u, v)| Factor {
                u: u.iter().map(rational::format).collect(),
                v: v.iter().map(rational::format).collect(),
            })
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<super::Factors, D::Error> {
        let parse = |v: &[String]| -> Result<Vec<Rational>, D::Error> {
            v.iter()
                .map(|t| {
                    rational::parse(t)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
                })
                .collect()
        };
        Vec::<Factor>::deserialize(d)?
            .iter()
            .map(|f| Ok((parse(&f.u)?, parse(&f.v)?)))
            .collect()
    }
}

impl NonnegFactorization {
    pub fn new(rows: usize, cols: usize, factors: Factors) -> Result<Self> {
        for (u, v) in &factors {
            if u.len() != rows || v.len() != cols {
                return Err(Error::Parameter("factor length mismatch".into()));
            }
            if u.iter().chain(v).any(Signed::is_negative) {
                return Err(Error::Domain("negative factor entry".into()));
            }
        }
        Ok(NonnegFactorization {
            rows,
            cols,
            factors,
        })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.factors.iter().map(|(u, v)| &u[i] * &v[j]).sum()
    }

    pub fn reconstruct(&self) -> CommMatrix {
        CommMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j))
            .expect("dimensions of an existing factorization")
    }

    /// `max |M - sum u v^T|`.
    pub fn max_error(&self, m: &CommMatrix) -> Result<Rational> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return Err(Error::Parameter("factorization shape differs from matrix".into()));
        }
        Ok((0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| (self.entry(i, j) - m.get(i, j)).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    pub fn reconstructs(&self, m: &CommMatrix) -> bool {
        self.max_error(m).is_ok_and(|e| e.is_zero())
    }

    /// Indicator vectors of the rectangles.
    pub fn from_rectangles(rows: usize, cols: usize, rects: &[Rectangle]) -> Self {
        let indicator = |n: usize, idx: &[usize]| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); n];
            for &i in idx {
                v[i] = Rational::one();
            }
            v
        };
        NonnegFactorization {
            rows,
            cols,
            factors: rects
                .iter()
                .map(|r| (indicator(rows, &r.rows), indicator(cols, &r.cols)))
                .collect(),
        }
    }

    /// One factor `e_i (row i)^T` per nonzero row.
    pub fn by_rows(m: &CommMatrix) -> Self {
        let factors = (0..m.rows())
            .filter(|&i| m.row(i).iter().any(|v| !v.is_zero()))
            .map(|i| {
                let mut u = vec![Rational::zero(); m.rows()];
                u[i] = Rational::one();
                (u, m.row(i).to_vec())
            })
            .collect();
        NonnegFactorization {
            rows: m.rows(),
            cols: m.cols(),
            factors,
        }
    }

    pub fn transposed(&self) -> Self {
        NonnegFactorization {
            rows: self.cols,
            cols: self.rows,
            factors: self.factors.iter().map(|(u, v)| (v.clone(), u.clone())).collect(),
        }
    }
}

/// `lower <= rank+(M) <= upper`, with a factorization of size `upper`.
#[derive(Debug, Clone)]
pub struct NonnegRankBounds {
    pub lower: usize,
    pub upper: usize,
    pub witness: NonnegFactorization,
    /// The partition search result when `M` is boolean.
    pub partition: Option<RectangleMeasure>,
}

pub fn nonneg_rank_bounds(m: &CommMatrix) -> Result<NonnegRankBounds> {
    if !m.is_nonnegative() {
        return Err(Error::Domain("matrix has a negative entry".into()));
    }
    let lower = rational_rank(m);
    let mut best = NonnegFactorization::by_rows(m);
    let by_cols = NonnegFactorization::by_rows(&m.transpose()).transposed();
    if by_cols.rank() < best.rank() {
        best = by_cols;
    }
    let mut partition = None;
    if m.is_boolean() {
        let p = partition_number(m)?;
        if p.upper < best.rank() {
            best = NonnegFactorization::from_rectangles(m.rows(), m.cols(), &p.witness);
        }
        partition = Some(p);
    }
    if lower < best.rank() {
        if let Some(f) = approx_nonneg_rank_upper(m, &Rational::zero(), lower, &[])? {
            best = f;
        }
    }
    debug_assert!(best.reconstructs(m));
    Ok(NonnegRankBounds {
        lower,
        upper: best.rank(),
        witness: best,
        partition,
    })
}

/// Searches for `N` with `rank+(N) <= r` and `|M - N| <= eps` entrywise.
///
/// Supplied `hints` are checked first; then the trivial factorizations; then
/// alternating exact max-norm fits from several starts. A returned factorization
/// is verified exactly; `None` certifies nothing.
pub fn approx_nonneg_rank_upper(
    m: &CommMatrix,
    eps: &Rational,
    r: usize,
    hints: &[NonnegFactorization],
) -> Result<Option<NonnegFactorization>> {
    if eps.is_negative() {
        return Err(Error::Parameter("eps must be nonnegative".into()));
    }
    let fits = |f: &NonnegFactorization| f.rank() <= r && f.max_error(m).is_ok_and(|e| &e <= eps);
    if let Some(h) = hints.iter().find(|h| fits(h)) {
        return Ok(Some(h.clone()));
    }
    let empty = NonnegFactorization::new(m.rows(), m.cols(), Vec::new())?;
    let trivial = [
        empty,
        NonnegFactorization::by_rows(m),
        NonnegFactorization::by_rows(&m.transpose()).transposed(),
    ];
    if let Some(t) = trivial.iter().find(|t| fits(t)) {
        return Ok(Some(t.clone()));
    }
    if r == 0 || m.rows() == 0 || m.cols() == 0 {
        return Ok(None);
    }
    for start in starts(m, r) {
        if let Some(f) = alternate(m, eps, start)? {
            if fits(&f) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

/// Initial left factors: all-ones, the heaviest columns of `M`, and multiplicative updates.
fn starts(m: &CommMatrix, r: usize) -> Vec<Vec<Vec<Rational>>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut ones = vec![vec![Rational::zero(); r]; rows];
    for row in &mut ones {
        row[0] = Rational::one();
        for (k, v) in row.iter_mut().enumerate().skip(1) {
            *v = ratio(1, (k + 1) as i64);
        }
    }
    out.push(ones);
    let mut order: Vec<usize> = (0..cols).collect();
    let weight = |j: usize| -> Rational { (0..rows).map(|i| m.get(i, j).clone()).sum() };
    order.sort_by_key(|&j| std::cmp::Reverse(weight(j)));
    out.push(
        (0..rows)
            .map(|i| {
                (0..r)
                    .map(|k| order.get(k).map_or_else(Rational::zero, |&j| m.get(i, j).clone()))
                    .collect()
            })
            .collect(),
    );
    let (w, _) = mu_nmf(m, r, NMF_SEED, NMF_MAX_ITERATIONS);
    out.push(
        w.iter()
            .map(|row| row.iter().map(|&x| rational::snap(x.max(0.0), SNAP_DENOMINATOR)).collect())
            .collect(),
    );
    out
}

/// Best nonnegative `x` with `basis x ~ target` in the max norm, column by column.
fn fit_columns(
    basis: &[Vec<Rational>],
    targets: impl Iterator<Item = Vec<Rational>>,
) -> Result<(Vec<Vec<Rational>>, Rational)> {
    let mut worst = Rational::zero();
    let mut sols = Vec::new();
    for t in targets {
        let fit = linf_fit(basis, &t, DEFAULT_MAX_ENTRIES)?;
        if fit.error > worst {
            worst = fit.error;
        }
        sols.push(fit.weights);
    }
    Ok((sols, worst))
}

fn snap_all(v: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    v.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.denom() <= &num_bigint::BigInt::from(SNAP_DENOMINATOR) {
                        x.clone()
                    } else {
                        rational::snap(rational::to_f64(x).max(0.0), SNAP_DENOMINATOR)
                    }
                })
                .collect()
        })
        .collect()
}

/// Alternates exact column fits (left factor fixed) and row fits (right factor fixed).
fn alternate(m: &CommMatrix, eps: &Rational, start: Vec<Vec<Rational>>) -> Result<Option<NonnegFactorization>> {
    let (rows, cols) = (m.rows(), m.cols());
    let r = start.first().map_or(0, Vec::len);
    let mut u = start;
    let mut best: Option<(Rational, NonnegFactorization)> = None;
    for _ in 0..ALTERNATING_ROUNDS {
        // v[j] = weights for column j
        let (v, err) = fit_columns(&u, (0..cols).map(|j| (0..rows).map(|i| m.get(i, j).clone()).collect()))?;
        let f = assemble(rows, cols, r, &u, &v)?;
        let improved = best.as_ref().is_none_or(|(e, _)| &err < e);
        if improved {
            best = Some((err.clone(), f));
        }
        if &err <= eps || !improved {
            break;
        }
        let vb = snap_all(&v);
        let (urows, err2) = fit_columns(&vb, (0..rows).map(|i| m.row(i).to_vec()))?;
        let f = assemble(rows, cols, r, &urows, &vb)?;
        if best.as_ref().is_none_or(|(e, _)| &err2 < e) {
            best = Some((err2.clone(), f));
        }
        if &err2 <= eps {
            break;
        }
        u = snap_all(&urows);
    }
    Ok(best.and_then(|(e, f)| (&e <= eps).then_some(f)))
}

/// `u[i][k]`, `v[j][k]` into factors `k`.
fn assemble(
    rows: usize,
    cols: usize,
    r: usize,
    u: &[Vec<Rational>],
    v: &[Vec<Rational>],
) -> Result<NonnegFactorization> {
    let factors = (0..r)
        .map(|k| {
            (
                (0..rows).map(|i| u[i][k].clone()).collect(),
                (0..cols).map(|j| v[j][k].clone()).collect(),
            )
        })
        .collect();
    NonnegFactorization::new(rows, cols, factors)
}

/// Lee-Seung multiplicative updates for `M ~ W H` in the Frobenius norm.
pub fn mu_nmf(m: &CommMatrix, r: usize, seed: u64, iterations: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let (rows, cols) = (m.rows(), m.cols());
    let a: Vec<Vec<f64>> = m
        .entries()
        .iter()
        .map(|row| row.iter().map(rational::to_f64).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: Vec<Vec<f64>> = (0..rows).map(|_| (0..r).map(|_| rng.gen_range(0.1..1.0)).collect()).collect();
    let mut h: Vec<Vec<f64>> = (0..r).map(|_| (0..cols).map(|_| rng.gen_range(0.1..1.0)).collect()).collect();
    const TINY: f64 = 1e-12;
    let mut last = f64::INFINITY;
    for it in 0..iterations {
        // H <- H * (W^T A) / (W^T W H)
        for k in 0..r {
            for j in 0..cols {
                let num: f64 = (0..rows).map(|i| w[i][k] * a[i][j]).sum();
                let den: f64 = (0..rows)
                    .map(|i| w[i][k] * (0..r).map(|l| w[i][l] * h[l][j]).sum::<f64>())
                    .sum();
                h[k][j] *= num / (den + TINY);
            }
        }
        // W <- W * (A H^T) / (W H H^T)
        for i in 0..rows {
            for k in 0..r {
                let num: f64 = (0..cols).map(|j| a[i][j] * h[k][j]).sum();
                let den: f64 = (0..cols)
                    .map(|j| (0..r).map(|l| w[i][l] * h[l][j]).sum::<f64>() * h[k][j])
                    .sum();
                w[i][k] *= num / (den + TINY);
            }
        }
        if it % 50 == 49 {
            let obj: f64 = (0..rows)
                .flat_map(|i| (0..cols).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let d = a[i][j] - (0..r).map(|l| w[i][l] * h[l][j]).sum::<f64>();
                    d * d
                })
                .sum();
            if last - obj < 1e-12 * (1.0 + obj) {
                break;
            }
            last = obj;
        }
    }
    (w, h)
}

/// `G((x,x'),(y,y')) = (F(x,y) + F(x',y'))/2 + 1/4` with the `2r+1` factors
/// built from a factorization of `F` with `r` factors.
pub fn approx_or_matrix(
    f: &CommMatrix,
    fact: &NonnegFactorization,
) -> Result<(CommMatrix, NonnegFactorization)> {
    f.require_boolean()?;
    if !fact.reconstructs(f) {
        return Err(Error::Precondition(
            "factorization does not reconstruct the matrix".into(),
        ));
    }
    let (r, c) = (f.rows(), f.cols());
    let half = ratio(1, 2);
    let mut factors = Vec::with_capacity(2 * fact.rank() + 1);
    for (u, v) in &fact.factors {
        factors.push((
            (0..r * r).map(|i| &u[i / r] * &half).collect(),
            (0..c * c).map(|j| v[j / c].clone()).collect(),
        ));
        factors.push((
            (0..r * r).map(|i| &u[i % r] * &half).collect(),
            (0..c * c).map(|j| v[j % c].clone()).collect(),
        ));
    }
    factors.push((vec![ratio(1, 4); r * r], vec![Rational::one(); c * c]));
    let witness = NonnegFactorization::new(r * r, c * c, factors)?;
    let quarter = ratio(1, 4);
    let or = super::or_matrix(f)?;
    let g = CommMatrix::new(
        or.row_labels.clone(),
        or.col_labels.clone(),
        (0..r * r)
            .map(|i| {
                (0..c * c)
                    .map(|j| (f.get(i / r, j / c) + f.get(i % r, j % c)) * &half + &quarter)
                    .collect()
            })
            .collect(),
    )?;
    if !witness.reconstructs(&g) {
        return Err(Error::Internal("or-approximation witness mismatch".into()));
    }
    Ok((g, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commx::or_matrix;
    use crate::rational::int;

    #[test]
    fn bounds_examples() {
        let b = nonneg_rank_bounds(&CommMatrix::identity(4).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
        let b = nonneg_rank_bounds(&CommMatrix::ones(3, 5).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));
        let b = nonneg_rank_bounds(&CommMatrix::co_identity(3).unwrap()).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        assert!(b.witness.reconstructs(&CommMatrix::co_identity(3).unwrap()));
        let neg = CommMatrix::from_rows(vec![vec![int(-1)]]).unwrap();
        assert!(matches!(nonneg_rank_bounds(&neg), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_matrix_bounds() {
        // rank 1 with fractional entries
        let m = CommMatrix::from_fn(3, 3, |i, j| ratio(((i + 1) * (j + 1)) as i64, 4)).unwrap();
        let b = nonneg_rank_bounds(&m).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));
        assert!(b.witness.reconstructs(&m));
    }

    #[test]
    fn approximate_identity() {
        let i2 = CommMatrix::identity(2).unwrap();
        let f = approx_nonneg_rank_upper(&i2, &ratio(1, 2), 1, &[]).unwrap().unwrap();
        assert_eq!(f.rank(), 1);
        assert!(f.max_error(&i2).unwrap() <= ratio(1, 2));
        assert!(approx_nonneg_rank_upper(&i2, &int(0), 1, &[]).unwrap().is_none());
        assert!(approx_nonneg_rank_upper(&i2, &int(-1), 1, &[]).is_err());
    }

    #[test]
    fn or_approximation() {
        let i2 = CommMatrix::identity(2).unwrap();
        let fact = NonnegFactorization::by_rows(&i2);
        let (g, w) = approx_or_matrix(&i2, &fact).unwrap();
        assert_eq!(w.rank(), 5);
        assert!(w.reconstructs(&g));
        let or = or_matrix(&i2).unwrap();
        assert!(g.max_abs_diff(&or).unwrap() <= ratio(1, 4));
        // (x,x') = (1,1), (y,y') = (1,1): both copies are 1
        assert_eq!(g.get(3, 3), &ratio(5, 4));
        let hint = approx_nonneg_rank_upper(&or, &ratio(1, 4), 5, std::slice::from_ref(&w)).unwrap();
        assert_eq!(hint, Some(w));

        let j = CommMatrix::ones(2, 2).unwrap();
        let (g, w) = approx_or_matrix(&j, &NonnegFactorization::from_rectangles(2, 2, &[Rectangle::new(vec![0, 1], vec![0, 1])])).unwrap();
        assert_eq!(w.rank(), 3);
        assert!(g.entries().iter().flatten().all(|v| v == &ratio(5, 4)));
        assert!(approx_or_matrix(&i2, &NonnegFactorization::by_rows(&j)).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = NonnegFactorization::by_rows(&CommMatrix::identity(2).unwrap());
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"u\":[\"1\",\"0\"]"));
        let back: NonnegFactorization = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
