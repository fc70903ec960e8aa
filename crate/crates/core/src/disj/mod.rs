//! Sparse set disjointness `Disj(n, k)`.
//!
//! A pair `(S, T)` of `k`-subsets of `{1..n}` is encoded as the word
//! `<S><T>` of length `2n`, where letter `i` of `<S>` is 1 iff `i` is in `S`.
//! Sets are also handled as bitmasks with element `i` on bit `i - 1`.

mod family;
mod nfa;

pub use family::{
    parse_family, sample_separating_sets, sample_separating_sets_with, separation_ell, SeparatingFamily,
    DEFAULT_MAX_ATTEMPTS, MAX_PAIRS,
};
pub use nfa::{build_complement_nfa, build_disj_nfa};

use crate::boolfn::bitstring;
use crate::commx::{rational_rank, CommMatrix, MAX_MATRIX_ENTRIES};
use crate::error::{Error, Result};
use crate::rational::binomial;

/// Largest universe handled with bitmasks.
pub const MAX_UNIVERSE: usize = 62;

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::Parameter(format!("universe size {n} exceeds {MAX_UNIVERSE}")));
    }
    if k > n {
        return Err(Error::Parameter(format!("set size {k} exceeds universe size {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPair {
    n: usize,
    k: usize,
    s: u64,
    t: u64,
}

fn mask_of(n: usize, k: usize, elems: &[usize]) -> Result<u64> {
    let mut m = 0u64;
    for &e in elems {
        if e == 0 || e > n {
            return Err(Error::Parameter(format!("element {e} outside 1..={n}")));
        }
        m |= 1 << (e - 1);
    }
    if m.count_ones() as usize != k {
        return Err(Error::Parameter(format!("set {elems:?} does not have {k} elements")));
    }
    Ok(m)
}

fn elems_of(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

impl SetPair {
    /// Elements are 1-based.
    pub fn new(n: usize, k: usize, s: &[usize], t: &[usize]) -> Result<Self> {
        check_nk(n, k)?;
        Ok(SetPair {
            n,
            k,
            s: mask_of(n, k, s)?,
            t: mask_of(n, k, t)?,
        })
    }

    pub fn from_masks(n: usize, k: usize, s: u64, t: u64) -> Result<Self> {
        check_nk(n, k)?;
        let full = (1u64 << n) - 1;
        if s & !full != 0 || t & !full != 0 || s.count_ones() as usize != k || t.count_ones() as usize != k {
            return Err(Error::Parameter("masks are not k-subsets of the universe".into()));
        }
        Ok(SetPair { n, k, s, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> Vec<usize> {
        elems_of(self.s)
    }

    pub fn t(&self) -> Vec<usize> {
        elems_of(self.t)
    }

    pub fn masks(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    pub fn is_disjoint(&self) -> bool {
        self.s & self.t == 0
    }
}

fn characteristic(n: usize, m: u64) -> impl Iterator<Item = u8> {
    (0..n).map(move |i| (m >> i & 1) as u8)
}

pub fn encode_pair(p: &SetPair) -> Vec<u8> {
    characteristic(p.n, p.s).chain(characteristic(p.n, p.t)).collect()
}

/// All `k`-subsets of `{1..n}` as masks in colex order.
pub fn k_subsets(n: usize, k: usize) -> Result<Vec<u64>> {
    check_nk(n, k)?;
    let count = binomial(n as u64, k as u64);
    if count as usize > MAX_MATRIX_ENTRIES {
        return Err(Error::Resource(format!("{count} subsets")));
    }
    let mut out = Vec::with_capacity(count as usize);
    if k == 0 {
        out.push(0);
        return Ok(out);
    }
    let mut m: u64 = (1 << k) - 1;
    while m < 1 << n {
        out.push(m);
        // next mask with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    Ok(out)
}

/// Rows and columns are the `k`-subsets in colex order, labelled by their characteristic vectors.
pub fn disj_matrix(n: usize, k: usize) -> Result<CommMatrix> {
    let sets = k_subsets(n, k)?;
    if sets.len().saturating_mul(sets.len()) > MAX_MATRIX_ENTRIES {
        return Err(Error::Resource(format!("{0}x{0} disjointness matrix", sets.len())));
    }
    let mut m = CommMatrix::from_bool_fn(sets.len(), sets.len(), |i, j| sets[i] & sets[j] == 0)?;
    let labels: Vec<String> = sets
        .iter()
        .map(|&s| bitstring(&characteristic(n, s).collect::<Vec<_>>()))
        .collect();
    m.row_labels = labels.clone();
    m.col_labels = labels;
    Ok(m)
}

/// Rank of the disjointness matrix, a lower bound on the states of any UFA for `<Disj(n, k)>`.
pub fn ufa_size_lower_bound(n: usize, k: usize) -> Result<usize> {
    Ok(rational_rank(&disj_matrix(n, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commx::CommMatrix;

    #[test]
    fn encodings() {
        let p = SetPair::new(3, 1, &[1], &[3]).unwrap();
        assert_eq!(encode_pair(&p), vec![1, 0, 0, 0, 0, 1]);
        assert!(p.is_disjoint());
        let p = SetPair::new(3, 1, &[1], &[1]).unwrap();
        assert_eq!(encode_pair(&p), vec![1, 0, 0, 1, 0, 0]);
        assert!(!p.is_disjoint());
        let p = SetPair::new(4, 2, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(encode_pair(&p), vec![1, 1, 0, 0, 0, 0, 1, 1]);
        assert_eq!(p.t(), vec![3, 4]);
        assert!(SetPair::new(3, 2, &[1], &[2, 3]).is_err());
        assert!(SetPair::new(3, 1, &[4], &[1]).is_err());
        assert!(SetPair::new(3, 4, &[], &[]).is_err());
    }

    #[test]
    fn colex_order() {
        assert_eq!(k_subsets(4, 2).unwrap(), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(k_subsets(3, 0).unwrap(), vec![0]);
        assert_eq!(k_subsets(3, 3).unwrap(), vec![0b111]);
        for n in 0..10 {
            for k in 0..=n {
                let s = k_subsets(n, k).unwrap();
                assert_eq!(s.len() as u64, binomial(n as u64, k as u64));
                assert!(s.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn matrix_examples() {
        let m = disj_matrix(4, 1).unwrap();
        assert_eq!(m.entries(), CommMatrix::co_identity(4).unwrap().entries());
        assert_eq!(m.row_labels[0], "1000");
        assert_eq!(ufa_size_lower_bound(4, 1).unwrap(), 4);
        assert_eq!(ufa_size_lower_bound(4, 2).unwrap(), 6);
        assert_eq!(ufa_size_lower_bound(6, 2).unwrap(), 15);
        for n in 1..5 {
            let m = disj_matrix(n, n).unwrap();
            assert_eq!((m.rows(), m.cols()), (1, 1));
            assert_eq!(ufa_size_lower_bound(n, n).unwrap(), 0);
        }
    }

    #[test]
    fn rank_is_full_when_sets_fit() {
        for n in 1..8u64 {
            for k in 0..=n / 2 {
                assert_eq!(
                    ufa_size_lower_bound(n as usize, k as usize).unwrap() as u64,
                    binomial(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }
}
