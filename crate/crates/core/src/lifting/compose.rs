use std::collections::BTreeSet;

use super::{tree_to_unambiguous_dnfs, Gadget};
use crate::boolfn::{bits_of, Conjunction, DnfFormula, Literal, TruthTable, MAX_TABLE_ARITY};
use crate::commx::CommMatrix;
use crate::error::{Error, Result};

/// `F(x, y) = f(g(x_1, y_1), ..., g(x_n, y_n))`, evaluated on demand.
#[derive(Debug, Clone)]
pub struct ComposedFunction {
    outer: TruthTable,
    gadget: Gadget,
}

pub fn compose_function(f: &TruthTable, g: &Gadget, n: usize) -> Result<ComposedFunction> {
    if f.arity() != n {
        return Err(Error::InputArity {
            expected: n,
            got: f.arity(),
        });
    }
    Ok(ComposedFunction {
        outer: f.clone(),
        gadget: g.clone(),
    })
}

impl ComposedFunction {
    pub fn outer(&self) -> &TruthTable {
        &self.outer
    }

    pub fn gadget(&self) -> &Gadget {
        &self.gadget
    }

    pub fn blocks(&self) -> usize {
        self.outer.arity()
    }

    /// Bits per party, `bn`.
    pub fn side_bits(&self) -> usize {
        self.gadget.bits() * self.blocks()
    }

    pub fn eval(&self, x: &[u8], y: &[u8]) -> Result<bool> {
        let m = self.side_bits();
        if x.len() != m || y.len() != m {
            return Err(Error::InputArity {
                expected: m,
                got: if x.len() != m { x.len() } else { y.len() },
            });
        }
        let b = self.gadget.bits();
        let z: Vec<u8> = (0..self.blocks())
            .map(|i| {
                self.gadget
                    .eval(&x[i * b..(i + 1) * b], &y[i * b..(i + 1) * b])
                    .map(u8::from)
            })
            .collect::<Result<_>>()?;
        self.outer.eval(&z)
    }

    /// On the concatenation `x y`.
    pub fn eval_joint(&self, w: &[u8]) -> Result<bool> {
        let m = self.side_bits();
        if w.len() != 2 * m {
            return Err(Error::InputArity {
                expected: 2 * m,
                got: w.len(),
            });
        }
        self.eval(&w[..m], &w[m..])
    }

    fn eval_index(&self, x: usize, y: usize) -> bool {
        let m = self.side_bits();
        self.eval(&bits_of(x, m), &bits_of(y, m)).expect("lengths match")
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let m = self.side_bits();
        if 2 * m > MAX_TABLE_ARITY {
            return Err(Error::Resource(format!("table on {} bits", 2 * m)));
        }
        TruthTable::from_index_fn(2 * m, |i| self.eval_index(i >> m, i & ((1 << m) - 1)))
    }

    /// `2^{bn} x 2^{bn}` matrix with Alice's input on the rows.
    pub fn to_matrix(&self) -> Result<CommMatrix> {
        let m = self.side_bits();
        if 2 * m > MAX_TABLE_ARITY {
            return Err(Error::Resource(format!("matrix on {m}+{m} bits")));
        }
        let mut out = CommMatrix::from_bool_fn(1 << m, 1 << m, |x, y| self.eval_index(x, y))?;
        let labels: Vec<String> = (0..1usize << m)
            .map(|i| crate::boolfn::bitstring(&bits_of(i, m)))
            .collect();
        out.row_labels = labels.clone();
        out.col_labels = labels;
        Ok(out)
    }
}

/// Moves a gadget conjunction onto block `i` of a composed function with `n` blocks.
fn place(c: &Conjunction, b: usize, n: usize, i: usize) -> Conjunction {
    let lits = c.literals().iter().map(|l| {
        let var = if l.var < b {
            i * b + l.var
        } else {
            b * n + i * b + (l.var - b)
        };
        if l.positive {
            Literal::pos(var)
        } else {
            Literal::neg(var)
        }
    });
    Conjunction::new(lits).expect("blocks of one gadget copy are consistent")
}

/// Substitutes the tree DNFs of `g` and `not g` for the literals of `d_f` and multiplies out.
pub fn compose_dnf(d_f: &DnfFormula, g: &Gadget) -> Result<DnfFormula> {
    if !d_f.is_unambiguous() {
        return Err(Error::Precondition("outer DNF is ambiguous".into()));
    }
    let (pos, neg) = tree_to_unambiguous_dnfs(g);
    let (b, n) = (g.bits(), d_f.arity());
    let mut terms: Vec<Conjunction> = Vec::new();
    let mut seen = BTreeSet::new();
    for term in d_f.terms() {
        let mut partial = vec![Conjunction::top()];
        for l in term.literals() {
            let sub = if l.positive { &pos } else { &neg };
            let placed: Vec<Conjunction> = sub.terms().iter().map(|c| place(c, b, n, l.var)).collect();
            partial = partial
                .iter()
                .flat_map(|p| placed.iter().filter_map(move |c| p.and(c)))
                .collect();
        }
        for c in partial {
            if seen.insert(c.clone()) {
                terms.push(c);
            }
        }
    }
    DnfFormula::new(2 * b * n, terms)
}
