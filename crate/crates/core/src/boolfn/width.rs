//! Exact certificate widths `C1`, `C0` and unambiguous width `UC1`.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::cube::CubeIndexer;
use super::{CnfFormula, Conjunction, DnfFormula, TruthTable};
use crate::error::{Error, Result};

/// Arity bound for the exhaustive certificate search.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 12;

/// Arity bound for the exact `UC1` search; above it a greedy bound is returned.
pub const UC1_EXACT_BOUND: usize = 5;

/// Care masks over table-index bits, by increasing size and then
/// lexicographically by variable list.
fn masks_by_size(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(1 << n);
    for w in 0..=n {
        for vars in (0..n).combinations(w) {
            out.push(vars.iter().fold(0, |m, &v| m | 1 << (n - 1 - v)));
        }
    }
    out
}

struct Containment {
    ix: CubeIndexer,
    inside: Vec<bool>,
    masks: Vec<usize>,
}

impl Containment {
    fn new(f: &TruthTable) -> Self {
        let ix = CubeIndexer::new(f.arity());
        let inside = ix.fill(|x| f.at(x), |a, b| *a && *b);
        Containment {
            ix,
            inside,
            masks: masks_by_size(f.arity()),
        }
    }

    fn contained(&self, care: usize, value: usize) -> bool {
        self.inside[self.ix.id(care, value)]
    }

    /// Smallest care mask whose subcube through `x` lies inside the 1-set.
    fn min_certificate(&self, x: usize) -> usize {
        *self
            .masks
            .iter()
            .find(|&&m| self.contained(m, x & m))
            .expect("the full mask always certifies a 1-input")
    }
}

fn check_bound(f: &TruthTable, bound: usize) -> Result<()> {
    if f.arity() > bound {
        return Err(Error::Resource(format!(
            "arity {} exceeds exhaustive-search bound {bound}",
            f.arity()
        )));
    }
    Ok(())
}

/// `C1(f)`: the largest, over 1-inputs, of the smallest certificate width.
pub fn c1_width(f: &TruthTable) -> Result<usize> {
    c1_width_bounded(f, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn c1_width_bounded(f: &TruthTable, bound: usize) -> Result<usize> {
    check_bound(f, bound)?;
    let c = Containment::new(f);
    Ok(f
        .ones()
        .map(|x| c.min_certificate(x).count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// A DNF of width `C1(f)` made of the chosen minimal certificates.
pub fn c1_dnf(f: &TruthTable) -> Result<DnfFormula> {
    check_bound(f, DEFAULT_EXHAUSTIVE_BOUND)?;
    let n = f.arity();
    let c = Containment::new(f);
    let terms: BTreeSet<Conjunction> = f
        .ones()
        .map(|x| {
            let m = c.min_certificate(x);
            Conjunction::from_index_masks(m, x & m, n)
        })
        .collect();
    DnfFormula::new(n, terms.into_iter().collect())
}

/// `C0(f) = C1(not f)`.
pub fn c0_width(f: &TruthTable) -> Result<usize> {
    c1_width(&f.complement())
}

/// A CNF of width `C0(f)`: the negated certificates of `not f`.
pub fn c0_cnf(f: &TruthTable) -> Result<CnfFormula> {
    let d = c1_dnf(&f.complement())?;
    let clauses = d
        .terms()
        .iter()
        .map(|t| Conjunction::new(t.literals().iter().map(|l| l.negated())))
        .collect::<Result<Vec<_>>>()?;
    CnfFormula::new(f.arity(), clauses)
}

/// Result of the unambiguous-width computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uc1 {
    pub width: usize,
    /// `false` when `width` is only an upper bound (greedy, `n > UC1_EXACT_BOUND`).
    pub exact: bool,
    /// An unambiguous DNF of width `width` computing `f`.
    pub witness: DnfFormula,
}

/// `UC1(f)`: least `k` such that `f^-1(1)` partitions into subcubes of width
/// `<= k`. Exact for `n <= 5` by exact-cover search; above that a greedy
/// disjoint cover gives an upper bound and `exact` is `false`.
pub fn uc1_width(f: &TruthTable) -> Uc1 {
    let n = f.arity();
    if f.count_ones() == 0 {
        return Uc1 {
            width: 0,
            exact: true,
            witness: DnfFormula::new(n, vec![]).expect("empty dnf"),
        };
    }
    if n <= UC1_EXACT_BOUND {
        uc1_exact(f)
    } else if n <= DEFAULT_EXHAUSTIVE_BOUND {
        uc1_greedy(f)
    } else {
        let terms = f
            .ones()
            .map(|x| Conjunction::from_index_masks((1 << n) - 1, x, n))
            .collect();
        Uc1 {
            width: n,
            exact: false,
            witness: DnfFormula::new(n, terms).expect("minterms in range"),
        }
    }
}

struct Cube {
    care: usize,
    value: usize,
    width: usize,
    points: u64,
}

fn uc1_exact(f: &TruthTable) -> Uc1 {
    let n = f.arity();
    let c = Containment::new(f);
    let mut cubes = Vec::new();
    for &care in &c.masks {
        // value ranges over subsets of care, in increasing order
        let mut value = 0usize;
        loop {
            if c.contained(care, value) {
                let points = (0..1usize << n)
                    .filter(|x| x & care == value)
                    .fold(0u64, |m, x| m | 1 << x);
                cubes.push(Cube {
                    care,
                    value,
                    width: care.count_ones() as usize,
                    points,
                });
            }
            if value == care {
                break;
            }
            value = (value.wrapping_sub(care)) & care;
        }
    }
    let ones = f.ones().fold(0u64, |m, x| m | 1 << x);
    let lower = c1_width(f).expect("arity within bound");
    for k in lower..=n {
        let options: Vec<&Cube> = cubes.iter().filter(|cb| cb.width <= k).collect();
        let mut chosen = Vec::new();
        if exact_cover(ones, &options, &mut chosen) {
            let mut terms: Vec<Conjunction> = chosen
                .iter()
                .map(|&i| Conjunction::from_index_masks(options[i].care, options[i].value, n))
                .collect();
            terms.sort();
            return Uc1 {
                width: k,
                exact: true,
                witness: DnfFormula::new(n, terms).expect("cubes in range"),
            };
        }
    }
    unreachable!("points always partition the 1-set")
}

/// Algorithm X over point bitmasks, branching on the most constrained point.
fn exact_cover(uncovered: u64, options: &[&Cube], chosen: &mut Vec<usize>) -> bool {
    if uncovered == 0 {
        return true;
    }
    let mut best: Option<(usize, u32)> = None;
    let mut rest = uncovered;
    while rest != 0 {
        let p = rest.trailing_zeros();
        rest &= rest - 1;
        let count = options
            .iter()
            .filter(|o| o.points >> p & 1 == 1 && o.points & !uncovered == 0)
            .count();
        if count == 0 {
            return false;
        }
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, p));
        }
    }
    let (_, p) = best.expect("uncovered is nonempty");
    for (i, o) in options.iter().enumerate() {
        if o.points >> p & 1 == 1 && o.points & !uncovered == 0 {
            chosen.push(i);
            if exact_cover(uncovered & !o.points, options, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn uc1_greedy(f: &TruthTable) -> Uc1 {
    let n = f.arity();
    let c = Containment::new(f);
    let mut chosen: Vec<Conjunction> = Vec::new();
    for x in f.ones() {
        let point = Conjunction::from_index_masks((1 << n) - 1, x, n);
        if chosen.iter().any(|t| t.consistent_with(&point)) {
            continue;
        }
        let cube = c
            .masks
            .iter()
            .filter(|&&m| c.contained(m, x & m))
            .map(|&m| Conjunction::from_index_masks(m, x & m, n))
            .find(|cand| chosen.iter().all(|t| !t.consistent_with(cand)))
            .expect("the point itself is always available");
        chosen.push(cube);
    }
    let width = chosen.iter().map(Conjunction::width).max().unwrap_or(0);
    Uc1 {
        width,
        exact: false,
        witness: DnfFormula::new(n, chosen).expect("cubes in range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn c1_examples() {
        assert_eq!(c1_width(&TruthTable::and(3).unwrap()).unwrap(), 3);
        assert_eq!(c1_width(&TruthTable::or(3).unwrap()).unwrap(), 1);
        assert_eq!(c1_width(&TruthTable::xor(2).unwrap()).unwrap(), 2);
        assert_eq!(c1_width(&TruthTable::constant(3, false).unwrap()).unwrap(), 0);
        assert_eq!(c1_width(&TruthTable::constant(3, true).unwrap()).unwrap(), 0);
    }

    #[test]
    fn c1_respects_bound() {
        let f = TruthTable::and(4).unwrap();
        assert!(matches!(c1_width_bounded(&f, 3), Err(Error::Resource(_))));
    }

    #[test]
    fn uc1_examples() {
        let and2 = uc1_width(&TruthTable::and(2).unwrap());
        assert_eq!((and2.width, and2.exact), (2, true));
        // OR2: 1-inputs {01,10,11}; no width-1 cube pair is disjoint and covers them
        let or2 = uc1_width(&TruthTable::or(2).unwrap());
        assert_eq!((or2.width, or2.exact), (2, true));
        let one = uc1_width(&TruthTable::constant(3, true).unwrap());
        assert_eq!(one.width, 0);
        assert_eq!(one.witness.terms(), &[Conjunction::top()]);
    }

    #[test]
    fn uc1_or2_matches_enumeration_of_partitions() {
        // Oracle: every family of pairwise-disjoint subcubes inside OR2's 1-set.
        let f = TruthTable::or(2).unwrap();
        let cubes: Vec<Conjunction> = crate::boolfn::all_conjunctions(2, 2)
            .into_iter()
            .filter(|c| (0..4).all(|i| !c.eval_index(i, 2) || f.at(i)))
            .collect();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << cubes.len()) {
            let fam: Vec<&Conjunction> = (0..cubes.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &cubes[i])
                .collect();
            let counts: Vec<usize> = (0..4)
                .map(|x| fam.iter().filter(|c| c.eval_index(x, 2)).count())
                .collect();
            if (0..4).all(|x| counts[x] == f.at(x) as usize) {
                best = best.min(fam.iter().map(|c| c.width()).max().unwrap_or(0));
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn greedy_is_flagged_bound() {
        let f = TruthTable::or(6).unwrap();
        let u = uc1_width(&f);
        assert!(!u.exact);
        assert!(u.witness.is_unambiguous());
        assert_eq!(u.witness.to_truth_table().unwrap(), f);
        assert!(u.width >= c1_width(&f).unwrap());
    }

    fn table(n: usize) -> impl Strategy<Value = TruthTable> {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |v| TruthTable::new(n, v).unwrap())
    }

    proptest! {
        #[test]
        fn c0_is_c1_of_complement(f in (1usize..=8).prop_flat_map(table)) {
            let cnf = c0_cnf(&f).unwrap();
            prop_assert_eq!(cnf.to_truth_table().unwrap(), f.clone());
            prop_assert_eq!(cnf.width(), c0_width(&f).unwrap());
            prop_assert_eq!(c0_width(&f).unwrap(), c1_width(&f.complement()).unwrap());
        }

        #[test]
        fn c1_witness_computes_f(f in (1usize..=7).prop_flat_map(table)) {
            let d = c1_dnf(&f).unwrap();
            prop_assert_eq!(d.to_truth_table().unwrap(), f.clone());
            prop_assert_eq!(d.width(), c1_width(&f).unwrap());
        }

        #[test]
        fn uc1_witness_is_unambiguous_and_dominates_c1(f in (1usize..=5).prop_flat_map(table)) {
            let u = uc1_width(&f);
            prop_assert!(u.exact);
            prop_assert!(u.witness.is_unambiguous());
            prop_assert_eq!(u.witness.to_truth_table().unwrap(), f.clone());
            prop_assert_eq!(u.witness.width(), u.width);
            prop_assert!(u.width >= c1_width(&f).unwrap());
        }
    }
}
