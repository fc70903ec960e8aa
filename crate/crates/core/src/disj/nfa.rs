//! The two automata of the disjointness upper bound.
//!
//! `A1` accepts exactly the encodings of disjoint pairs and no word of any
//! other length. `A2` accepts every word except those encodings: all lengths
//! other than `2n`, malformed words of length `2n`, and intersecting pairs.

use super::{check_nk, SeparatingFamily};
use crate::automata::{Nfa, BINARY};
use crate::error::{Error, Result};

#[derive(Default)]
struct Builder {
    states: usize,
    trans: Vec<(usize, u8, usize)>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
}

impl Builder {
    fn block(&mut self, size: usize) -> usize {
        let first = self.states;
        self.states += size;
        first
    }

    fn both(&mut self, p: usize, q: usize) {
        self.trans.push((p, 0, q));
        self.trans.push((p, 1, q));
    }

    fn finish(self) -> Result<Nfa> {
        Ok(Nfa::binary(self.states, self.trans, self.initial, self.accepting)?.trim())
    }
}

/// Counts ones over `n` letters (saturating at `k + 1`) and accepts after exactly `n` letters unless the count is `k`.
fn miscount(b: &mut Builder, n: usize, k: usize, start: usize, sink: usize) {
    let id = |pos: usize, c: usize| start + pos * (k + 2) + c;
    for pos in 0..n {
        for c in 0..k + 2 {
            b.trans.push((id(pos, c), 0, id(pos + 1, c)));
            b.trans.push((id(pos, c), 1, id(pos + 1, (c + 1).min(k + 1))));
        }
    }
    for c in (0..k + 2).filter(|&c| c != k) {
        b.accepting.push(id(n, c));
        b.both(id(n, c), sink);
    }
}

/// NFA for the words that are not encodings of disjoint pairs of `k`-subsets of `{1..n}`.
pub fn build_complement_nfa(n: usize, k: usize) -> Result<Nfa> {
    check_nk(n, k)?;
    let mut b = Builder::default();
    let sink = b.block(1);
    b.accepting.push(sink);
    b.both(sink, sink);

    // every length other than 2n
    let len = b.block(2 * n + 2);
    b.initial.push(len);
    for j in 0..=2 * n {
        b.both(len + j, len + j + 1);
    }
    b.both(len + 2 * n + 1, len + 2 * n + 1);
    b.accepting.extend((0..2 * n + 2).filter(|&j| j != 2 * n).map(|j| len + j));

    // first half has the wrong number of ones
    let first = b.block((n + 1) * (k + 2));
    b.initial.push(first);
    miscount(&mut b, n, k, first, sink);

    // second half has the wrong number of ones
    let skip = b.block(n);
    let second = b.block((n + 1) * (k + 2));
    for j in 0..n {
        b.both(skip + j, if j + 1 < n { skip + j + 1 } else { second });
    }
    b.initial.push(if n > 0 { skip } else { second });
    miscount(&mut b, n, k, second, sink);

    // guess i with letters i and n + i both 1
    if n > 0 {
        let pre = b.block(n);
        let gap = b.block(n);
        b.initial.push(pre);
        for j in 0..n {
            if j + 1 < n {
                b.both(pre + j, pre + j + 1);
                b.both(gap + j, gap + j + 1);
            }
            b.trans.push((pre + j, 1, gap));
        }
        b.trans.push((gap + n - 1, 1, sink));
    }
    b.finish()
}

/// NFA for the encodings of disjoint pairs: guess `Z_i`, then check `S ⊆ Z_i`, `T ∩ Z_i = ∅` and both sizes.
pub fn build_disj_nfa(n: usize, k: usize, family: &SeparatingFamily) -> Result<Nfa> {
    check_nk(n, k)?;
    if family.n() != n || family.k() != k {
        return Err(Error::Parameter(format!(
            "family is for ({}, {}), not ({n}, {k})",
            family.n(),
            family.k()
        )));
    }
    if !family.is_verified() {
        return Err(Error::Precondition("separating family is not verified".into()));
    }
    let mut b = Builder::default();
    let per = (2 * n + 1) * (k + 1);
    for &z in family.sets() {
        let start = b.block(per);
        let id = |pos: usize, c: usize| start + pos * (k + 1) + c;
        b.initial.push(id(0, 0));
        b.accepting.push(id(2 * n, k));
        for pos in 0..2 * n {
            let second = pos >= n;
            let elem = if second { pos - n } else { pos };
            let one_ok = (z >> elem & 1 == 1) != second;
            for c in 0..=k {
                // the count restarts at the half boundary, after exactly k ones
                let (from_c, to_c) = if pos == n {
                    if c > 0 {
                        continue;
                    }
                    (k, 0)
                } else {
                    (c, c)
                };
                b.trans.push((id(pos, from_c), 0, id(pos + 1, to_c)));
                if one_ok && to_c < k {
                    b.trans.push((id(pos, from_c), 1, id(pos + 1, to_c + 1)));
                }
            }
        }
    }
    let a = b.finish()?;
    debug_assert_eq!(a.alphabet(), BINARY);
    Ok(a)
}
