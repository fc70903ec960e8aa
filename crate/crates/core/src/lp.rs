//! Dense exact-rational simplex.
//!
//! Solves `max p.y  s.t.  A y <= c, y >= 0` with `c >= 0`, so the slack
//! basis is feasible from the start and no phase one is needed. The
//! optimal multipliers of the rows come back alongside `y`; they solve the
//! dual `min c.z  s.t.  A^T z >= p, z >= 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Tableau entry cap (`rows * columns`) before a resource error is raised.
pub const DEFAULT_MAX_ENTRIES: usize = 8_000_000;

const BLAND_AFTER: usize = 5_000;
const MAX_PIVOTS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    /// Optimal `y`.
    pub primal: Vec<Rational>,
    /// Optimal row multipliers `z`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

/// `a` is given row-wise: `a[i][j]` multiplies `y_j` in constraint `i`.
pub fn maximize(
    a: &[Vec<Rational>],
    c: &[Rational],
    p: &[Rational],
    max_entries: usize,
) -> Result<LpSolution> {
    let m = a.len();
    let n = p.len();
    if c.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::Parameter("inconsistent LP dimensions".into()));
    }
    if c.iter().any(Signed::is_negative) {
        return Err(Error::Parameter("right-hand side must be nonnegative".into()));
    }
    let width = n + m + 1;
    if (m + 1).saturating_mul(width) > max_entries {
        return Err(Error::Resource(format!(
            "LP tableau {}x{} exceeds {max_entries} entries",
            m + 1,
            width
        )));
    }

    // row 0 holds reduced costs; column n+m holds the right-hand side
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    let mut obj = vec![Rational::zero(); width];
    for (j, pj) in p.iter().enumerate() {
        obj[j] = -pj;
    }
    t.push(obj);
    for (i, row) in a.iter().enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        r.push(c[i].clone());
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut pivots = 0;
    loop {
        let bland = pivots >= BLAND_AFTER;
        let entering = if bland {
            (0..n + m).find(|&j| t[0][j].is_negative())
        } else {
            (0..n + m)
                .filter(|&j| t[0][j].is_negative())
                .min_by(|&x, &y| t[0][x].cmp(&t[0][y]).then(x.cmp(&y)))
        };
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, Rational)> = None;
        for i in 1..=m {
            let aij = &t[i][col];
            if !aij.is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / aij;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i - 1] < basis[*li - 1]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Internal("LP unbounded".into()));
        };
        pivot(&mut t, row, col);
        basis[row - 1] = col;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::Resource("simplex pivot limit reached".into()));
        }
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            primal[b] = t[i + 1][rhs].clone();
        }
    }
    let dual = (0..m).map(|i| t[0][n + i].clone()).collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: t[0][rhs].clone(),
        primal,
        dual,
        pivots,
    })
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = Rational::one() / &t[row][col];
    let nz: Vec<usize> = (0..t[row].len()).filter(|&j| !t[row][j].is_zero()).collect();
    for &j in &nz {
        t[row][j] *= &inv;
    }
    let pivot_row: Vec<(usize, Rational)> = nz.iter().map(|&j| (j, t[row][j].clone())).collect();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (j, v) in &pivot_row {
            r[*j] -= &factor * v;
        }
    }
}

/// Best nonnegative combination of basis columns in the max norm.
#[derive(Debug, Clone)]
pub struct LinfFit {
    /// `min_w max_x |target_x - sum_k basis[x][k] w_k|`.
    pub error: Rational,
    pub weights: Vec<Rational>,
    /// Optimal dual witness `phi` over points: `sum |phi| <= 1`,
    /// `sum_x phi_x basis[x][k] <= 0` for all `k`, and `<phi, target> = error`.
    pub dual: Vec<Rational>,
}

/// Solves `min t  s.t.  |target_x - sum_k basis[x][k] w_k| <= t, w >= 0`
/// through its dual, then checks both witnesses and strong duality exactly.
pub fn linf_fit(basis: &[Vec<Rational>], target: &[Rational], max_entries: usize) -> Result<LinfFit> {
    let points = target.len();
    if basis.len() != points {
        return Err(Error::Parameter("basis and target disagree on point count".into()));
    }
    let k = basis.first().map_or(0, Vec::len);
    if basis.iter().any(|r| r.len() != k) {
        return Err(Error::Parameter("ragged basis".into()));
    }
    // y = (beta_0..beta_{X-1}, alpha_0..alpha_{X-1}), phi = beta - alpha
    let mut a = Vec::with_capacity(k + 1);
    a.push(vec![Rational::one(); 2 * points]);
    for col in 0..k {
        let mut row = Vec::with_capacity(2 * points);
        row.extend(basis.iter().map(|b| b[col].clone()));
        row.extend(basis.iter().map(|b| -&b[col]));
        a.push(row);
    }
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = Rational::one();
    let mut p = Vec::with_capacity(2 * points);
    p.extend(target.iter().cloned());
    p.extend(target.iter().map(|v| -v));

    let sol = maximize(&a, &c, &p, max_entries)?;
    let error = sol.dual[0].clone();
    let weights: Vec<Rational> = sol.dual[1..].to_vec();
    let dual: Vec<Rational> = (0..points)
        .map(|x| &sol.primal[x] - &sol.primal[points + x])
        .collect();

    // exact checks of both witnesses
    let achieved = (0..points)
        .map(|x| {
            let approx: Rational = (0..k).map(|j| &basis[x][j] * &weights[j]).sum();
            (&target[x] - approx).abs()
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let value: Rational = dual.iter().zip(target).map(|(d, t)| d * t).sum();
    let norm: Rational = dual.iter().map(Signed::abs).sum();
    let dual_ok = norm <= Rational::one()
        && (0..k).all(|j| {
            let s: Rational = (0..points).map(|x| &dual[x] * &basis[x][j]).sum();
            !s.is_positive()
        });
    if weights.iter().any(Signed::is_negative) || achieved != error || value != error || !dual_ok {
        return Err(Error::Internal(format!(
            "strong duality check failed (primal {achieved}, dual {value}, reported {error})"
        )));
    }
    Ok(LinfFit {
        error,
        weights,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn small_max_problem() {
        // max 3y0 + 2y1 s.t. y0 + y1 <= 4, y0 + 3y1 <= 6, y0 <= 3
        let a = vec![
            vec![int(1), int(1)],
            vec![int(1), int(3)],
            vec![int(1), int(0)],
        ];
        let c = vec![int(4), int(6), int(3)];
        let p = vec![int(3), int(2)];
        let s = maximize(&a, &c, &p, DEFAULT_MAX_ENTRIES).unwrap();
        assert_eq!(s.value, int(11));
        assert_eq!(s.primal, vec![int(3), int(1)]);
        // dual value equals primal value
        let dv: Rational = s.dual.iter().zip(&c).map(|(z, c)| z * c).sum();
        assert_eq!(dv, int(11));
    }

    #[test]
    fn linf_fit_constant() {
        // best constant for {0,0,0,1} is 1/2
        let basis = vec![vec![int(1)]; 4];
        let target = vec![int(0), int(0), int(0), int(1)];
        let fit = linf_fit(&basis, &target, DEFAULT_MAX_ENTRIES).unwrap();
        assert_eq!(fit.error, ratio(1, 2));
        assert_eq!(fit.weights, vec![ratio(1, 2)]);
    }

    #[test]
    fn resource_cap() {
        let basis = vec![vec![int(1)]; 4];
        let target = vec![int(0); 4];
        assert!(matches!(linf_fit(&basis, &target, 10), Err(Error::Resource(_))));
    }
}
