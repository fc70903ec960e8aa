//! Gadgets, decision trees, and block composition `F = f o g^n`.
//!
//! A gadget on `b + b` bits reads Alice's block first: its variables
//! `0..b` are `x` and `b..2b` are `y`. In a composed function on `2bn` bits,
//! bit `j` of Alice's block `i` is variable `i*b + j` and the matching Bob bit
//! is `bn + i*b + j`.

mod compose;
pub mod text;

pub use compose::{compose_dnf, compose_function, ComposedFunction};

use crate::boolfn::cube::CubeIndexer;
use crate::boolfn::{bits_of, Conjunction, DnfFormula, Literal, TruthTable};
use crate::error::{Error, Result};

/// Largest block size accepted for gadgets.
pub const MAX_GADGET_BITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Query {
        var: usize,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn eval(&self, x: &[u8]) -> bool {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Query { var, zero, one } => {
                if x[*var] == 1 {
                    one.eval(x)
                } else {
                    zero.eval(x)
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            DecisionTree::Leaf(_) => None,
            DecisionTree::Query { var, zero, one } => {
                Some((*var).max(zero.max_var().unwrap_or(0)).max(one.max_var().unwrap_or(0)))
            }
        }
    }

    /// Root-to-leaf paths as conjunctions, zero branch first.
    pub fn leaves(&self) -> Vec<(Conjunction, bool)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(&mut path, &mut out);
        out
    }

    fn collect(&self, path: &mut Vec<Literal>, out: &mut Vec<(Conjunction, bool)>) {
        match self {
            DecisionTree::Leaf(v) => {
                // a variable queried twice on one path makes the leaf unreachable or redundant
                if let Ok(c) = Conjunction::new(path.iter().copied()) {
                    out.push((c, *v));
                }
            }
            DecisionTree::Query { var, zero, one } => {
                path.push(Literal::neg(*var));
                zero.collect(path, out);
                path.pop();
                path.push(Literal::pos(*var));
                one.collect(path, out);
                path.pop();
            }
        }
    }

    /// Queries variables `0..n` in order down to depth `n`.
    pub fn full(f: &TruthTable) -> DecisionTree {
        fn build(f: &TruthTable, var: usize, prefix: usize) -> DecisionTree {
            if var == f.arity() {
                return DecisionTree::Leaf(f.at(prefix));
            }
            DecisionTree::Query {
                var,
                zero: Box::new(build(f, var + 1, prefix << 1)),
                one: Box::new(build(f, var + 1, prefix << 1 | 1)),
            }
        }
        build(f, 0, 0)
    }

    /// A minimum-depth tree; ties go to the lowest variable.
    pub fn optimal(f: &TruthTable) -> DecisionTree {
        let n = f.arity();
        let ix = CubeIndexer::new(n);
        // (has a 0, has a 1) per subcube
        let seen = ix.fill(|x| (!f.at(x), f.at(x)), |a, b| (a.0 || b.0, a.1 || b.1));
        let size = ix.size();
        let mut depth = vec![0usize; size];
        let mut choice = vec![usize::MAX; size];
        let mut pow = vec![1usize; n];
        for p in 1..n {
            pow[p] = pow[p - 1] * 3;
        }
        for id in 0..size {
            if !(seen[id].0 && seen[id].1) {
                continue;
            }
            let mut best = usize::MAX;
            // digit p is variable n-1-p; scan variables in increasing order
            for p in (0..n).rev() {
                if id / pow[p] % 3 != 2 {
                    continue;
                }
                let d = 1 + depth[id - 2 * pow[p]].max(depth[id - pow[p]]);
                if d < best {
                    best = d;
                    choice[id] = p;
                }
            }
            depth[id] = best;
        }
        fn build(id: usize, n: usize, seen: &[(bool, bool)], choice: &[usize], pow: &[usize]) -> DecisionTree {
            if !(seen[id].0 && seen[id].1) {
                return DecisionTree::Leaf(seen[id].1);
            }
            let p = choice[id];
            DecisionTree::Query {
                var: n - 1 - p,
                zero: Box::new(build(id - 2 * pow[p], n, seen, choice, pow)),
                one: Box::new(build(id - pow[p], n, seen, choice, pow)),
            }
        }
        build(size - 1, n, &seen, &choice, &pow)
    }
}

/// `g : {0,1}^b x {0,1}^b -> {0,1}` with a decision tree of depth at most `2b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    bits: usize,
    table: TruthTable,
    tree: DecisionTree,
}

impl Gadget {
    /// Without a tree, the full-depth tree is used.
    pub fn new(bits: usize, table: TruthTable, tree: Option<DecisionTree>) -> Result<Self> {
        if bits == 0 || bits > MAX_GADGET_BITS {
            return Err(Error::Parameter(format!(
                "gadget block size must be in 1..={MAX_GADGET_BITS}"
            )));
        }
        if table.arity() != 2 * bits {
            return Err(Error::InputArity {
                expected: 2 * bits,
                got: table.arity(),
            });
        }
        let tree = tree.unwrap_or_else(|| DecisionTree::full(&table));
        if tree.depth() > 2 * bits || tree.max_var().is_some_and(|v| v >= 2 * bits) {
            return Err(Error::Parameter("decision tree too deep or out of range".into()));
        }
        if (0..1usize << (2 * bits)).any(|i| tree.eval(&bits_of(i, 2 * bits)) != table.at(i)) {
            return Err(Error::Parameter("decision tree disagrees with table".into()));
        }
        Ok(Gadget { bits, table, tree })
    }

    /// Same table with a minimum-depth tree.
    pub fn with_optimal_tree(&self) -> Gadget {
        Gadget {
            bits: self.bits,
            table: self.table.clone(),
            tree: DecisionTree::optimal(&self.table),
        }
    }

    /// `<x, y> mod 2`; for `b = 1` this is AND.
    pub fn inner_product(bits: usize) -> Result<Self> {
        let table = TruthTable::from_fn(2 * bits, |v| {
            (0..bits).filter(|&i| v[i] == 1 && v[bits + i] == 1).count() % 2 == 1
        })?;
        Gadget::new(bits, table, None)
    }

    pub fn xor() -> Self {
        Gadget::new(1, TruthTable::xor(2).expect("small"), None).expect("valid gadget")
    }

    pub fn and() -> Self {
        Gadget::new(1, TruthTable::and(2).expect("small"), None).expect("valid gadget")
    }

    pub fn constant(bits: usize, value: bool) -> Result<Self> {
        let table = TruthTable::constant(2 * bits, value)?;
        Gadget::new(bits, table, Some(DecisionTree::Leaf(value)))
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn tree(&self) -> &DecisionTree {
        &self.tree
    }

    pub fn eval(&self, x: &[u8], y: &[u8]) -> Result<bool> {
        if x.len() != self.bits || y.len() != self.bits {
            return Err(Error::InputArity {
                expected: self.bits,
                got: x.len().max(y.len()),
            });
        }
        Ok(self.table.at(crate::boolfn::index_of(x) << self.bits | crate::boolfn::index_of(y)))
    }
}

/// Unambiguous DNFs for `g` and `not g`, one term per leaf of the tree.
pub fn tree_to_unambiguous_dnfs(g: &Gadget) -> (DnfFormula, DnfFormula) {
    let n = 2 * g.bits;
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (c, v) in g.tree.leaves() {
        if v {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    (
        DnfFormula::new(n, pos).expect("leaf variables are gadget variables"),
        DnfFormula::new(n, neg).expect("leaf variables are gadget variables"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::c1_width;

    fn lit(v: usize, p: bool) -> Literal {
        if p {
            Literal::pos(v)
        } else {
            Literal::neg(v)
        }
    }

    fn conj(ls: &[(usize, bool)]) -> Conjunction {
        Conjunction::new(ls.iter().map(|&(v, p)| lit(v, p))).unwrap()
    }

    #[test]
    fn xor_dnf() {
        let (d, nd) = tree_to_unambiguous_dnfs(&Gadget::xor());
        assert_eq!(d.terms(), &[conj(&[(0, false), (1, true)]), conj(&[(0, true), (1, false)])]);
        assert_eq!(d.width(), 2);
        assert!(d.is_unambiguous() && nd.is_unambiguous());
        assert_eq!(d.to_truth_table().unwrap(), TruthTable::xor(2).unwrap());
        assert_eq!(nd.to_truth_table().unwrap(), TruthTable::xor(2).unwrap().complement());
    }

    #[test]
    fn and_with_optimal_tree() {
        let g = Gadget::and().with_optimal_tree();
        assert_eq!(g.tree().depth(), 2);
        let (d, nd) = tree_to_unambiguous_dnfs(&g);
        assert_eq!(d.terms(), &[conj(&[(0, true), (1, true)])]);
        assert_eq!(nd.terms(), &[conj(&[(0, false)]), conj(&[(0, true), (1, false)])]);
    }

    #[test]
    fn constant_gadget() {
        let (d, nd) = tree_to_unambiguous_dnfs(&Gadget::constant(2, false).unwrap());
        assert!(d.terms().is_empty());
        assert_eq!(nd.terms(), &[Conjunction::top()]);
    }

    #[test]
    fn inner_product_b1_is_and() {
        assert_eq!(Gadget::inner_product(1).unwrap().table(), Gadget::and().table());
        let ip2 = Gadget::inner_product(2).unwrap();
        assert!(ip2.eval(&[1, 0], &[1, 1]).unwrap());
        assert!(!ip2.eval(&[1, 1], &[1, 1]).unwrap());
        assert_eq!(ip2.tree().depth(), 4);
    }

    #[test]
    fn optimal_depth_matches_brute_force() {
        // depth of the best tree is at least the certificate width
        for seed in 0..64u64 {
            let f = TruthTable::from_index_fn(3, |i| (seed >> i) & 1 == 1).unwrap();
            let t = DecisionTree::optimal(&f);
            assert!((0..8).all(|i| t.eval(&bits_of(i, 3)) == f.at(i)));
            assert!(t.depth() <= 3);
            assert!(t.depth() >= c1_width(&f).unwrap().max(crate::boolfn::c0_width(&f).unwrap()));
            assert_eq!(t.depth(), brute_depth(&f, &mut vec![None; 3]));
        }
    }

    fn brute_depth(f: &TruthTable, fixed: &mut Vec<Option<u8>>) -> usize {
        let n = f.arity();
        let vals: Vec<bool> = (0..1usize << n)
            .filter(|&i| {
                let b = bits_of(i, n);
                (0..n).all(|v| fixed[v].is_none_or(|x| x == b[v]))
            })
            .map(|i| f.at(i))
            .collect();
        if vals.iter().all(|&v| v == vals[0]) {
            return 0;
        }
        let mut best = usize::MAX;
        for v in 0..n {
            if fixed[v].is_some() {
                continue;
            }
            fixed[v] = Some(0);
            let a = brute_depth(f, fixed);
            fixed[v] = Some(1);
            let b = brute_depth(f, fixed);
            fixed[v] = None;
            best = best.min(1 + a.max(b));
        }
        best
    }

    #[test]
    fn bad_trees_rejected() {
        let t = TruthTable::and(2).unwrap();
        assert!(Gadget::new(1, t.clone(), Some(DecisionTree::Leaf(false))).is_err());
        assert!(Gadget::new(2, t, None).is_err());
    }
}
