use std::io::{Read, Write};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::automata::{all_words, FiniteLanguageView};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest number of entries materialized in one matrix.
pub const MAX_MATRIX_ENTRIES: usize = 1 << 24;

/// Rational matrix with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    #[serde(with = "rows_serde")]
    entries: Vec<Vec<Rational>>,
}

mod rows_serde {
    use super::Rational;
    use crate::rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(rational::format).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|t| {
                        rational::parse(t)
                            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_size(rows: usize, cols: usize) -> Result<()> {
    if rows.saturating_mul(cols) > MAX_MATRIX_ENTRIES {
        return Err(Error::Resource(format!("{rows}x{cols} matrix")));
    }
    Ok(())
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl CommMatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len()
            || entries.iter().any(|r| r.len() != col_labels.len())
        {
            return Err(Error::Parameter("matrix is not rectangular".into()));
        }
        Ok(CommMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    /// Rows and columns labelled by their indices.
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        Self::new(numbered(entries.len()), numbered(cols), entries)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Result<Self> {
        check_size(rows, cols)?;
        let entries = (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect();
        Self::new(numbered(rows), numbered(cols), entries)
    }

    pub fn from_bool_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_fn(rows, cols, |i, j| {
            if f(i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Parses rows of `0`/`1` characters.
    pub fn from_bit_rows(rows: &[&str]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(Rational::zero()),
                        '1' => Ok(Rational::one()),
                        _ => Err(Error::Parameter(format!("bad bit {c:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Self::from_rows(entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_bool_fn(n, n, |i, j| i == j)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_bool_fn(rows, cols, |_, _| true)
    }

    /// `J - I`.
    pub fn co_identity(n: usize) -> Result<Self> {
        Self::from_bool_fn(n, n, |i, j| i != j)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_boolean(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|v| v.is_zero() || v.is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().flatten().all(|v| !v.is_negative())
    }

    pub fn is_one(&self, i: usize, j: usize) -> bool {
        self.entries[i][j].is_one()
    }

    pub fn transpose(&self) -> CommMatrix {
        let entries = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        CommMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    pub(crate) fn require_boolean(&self) -> Result<()> {
        if self.is_boolean() {
            Ok(())
        } else {
            Err(Error::Domain("matrix is not boolean".into()))
        }
    }

    /// `max |self - other|` over entries.
    pub fn max_abs_diff(&self, other: &CommMatrix) -> Result<Rational> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::Parameter("matrix shapes differ".into()));
        }
        Ok(self
            .entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    /// CSV with a header row of column labels and a leading label column.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Resource(format!("csv: {e}"));
        let mut header = vec![String::new()];
        header.extend(self.col_labels.iter().cloned());
        wr.write_record(&header).map_err(io)?;
        for (label, row) in self.row_labels.iter().zip(&self.entries) {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().map(rational::format));
            wr.write_record(&rec).map_err(io)?;
        }
        wr.flush()
            .map_err(|e| Error::Resource(format!("csv: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn read_csv<R: Read>(r: R) -> Result<CommMatrix> {
        let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(r);
        let mut records = rd.records();
        let header = records
            .next()
            .ok_or_else(|| Error::parse(1, "empty csv"))?
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let col_labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let (mut row_labels, mut entries) = (Vec::new(), Vec::new());
        for (i, rec) in records.enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
            if rec.len() != col_labels.len() + 1 {
                return Err(Error::parse(line, "row length differs from header"));
            }
            row_labels.push(rec[0].to_string());
            entries.push(
                rec.iter()
                    .skip(1)
                    .map(|t| {
                        rational::parse(t.trim())
                            .ok_or_else(|| Error::parse(line, format!("bad entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        CommMatrix::new(row_labels, col_labels, entries)
    }
}

/// The `|Sigma|^m1 x |Sigma|^m2` matrix of `[xy in L]`, rows and columns labelled by the words.
pub fn matrix_of_language(view: &FiniteLanguageView, m1: usize, m2: usize) -> Result<CommMatrix> {
    if m1 + m2 != view.length {
        return Err(Error::Parameter(format!(
            "split {m1}+{m2} does not match length {}",
            view.length
        )));
    }
    let a = &view.automaton;
    let sigma = a.alphabet_size();
    let xs = all_words(sigma, m1)?;
    let ys = all_words(sigma, m2)?;
    check_size(xs.len(), ys.len())?;
    let label = |w: &Vec<u8>| -> String { w.iter().map(|&s| a.alphabet()[usize::from(s)]).collect() };
    let mut entries = Vec::with_capacity(xs.len());
    for x in &xs {
        let from = a.reach(x)?;
        let row = ys
            .iter()
            .map(|y| {
                let s = y.iter().fold(from.clone(), |s, &c| a.step(&s, c));
                if (0..a.num_states()).any(|q| s[q] && a.is_accepting(q)) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        entries.push(row);
    }
    CommMatrix::new(xs.iter().map(label).collect(), ys.iter().map(label).collect(), entries)
}

/// `F_or((x,x'),(y,y')) = F(x,y) or F(x',y')`, row `(x,x')` at index `x*|X| + x'`.
pub fn or_matrix(f: &CommMatrix) -> Result<CommMatrix> {
    f.require_boolean()?;
    let (r, c) = (f.rows(), f.cols());
    check_size(r * r, c * c)?;
    let pair = |labels: &[String]| -> Vec<String> {
        labels
            .iter()
            .flat_map(|a| labels.iter().map(move |b| format!("{a}|{b}")))
            .collect()
    };
    let entries = (0..r * r)
        .map(|i| {
            (0..c * c)
                .map(|j| {
                    if f.is_one(i / r, j / c) || f.is_one(i % r, j % c) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    CommMatrix::new(pair(&f.row_labels), pair(&f.col_labels), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Nfa, BINARY};
    use crate::rational::ratio;

    #[test]
    fn language_matrices() {
        let eq = Nfa::binary(4, [(0, 0, 1), (0, 1, 2), (1, 0, 3), (2, 1, 3)], [0], [3]).unwrap();
        let m = matrix_of_language(&FiniteLanguageView::new(eq, 2), 1, 1).unwrap();
        assert_eq!(m.entries(), CommMatrix::identity(2).unwrap().entries());
        assert_eq!(m.row_labels, vec!["0", "1"]);
        let e = Nfa::empty(BINARY.to_vec()).unwrap();
        let z = matrix_of_language(&FiniteLanguageView::new(e, 2), 1, 1).unwrap();
        assert!(z.entries().iter().flatten().all(Zero::is_zero));
        let u = Nfa::universal(BINARY.to_vec()).unwrap();
        let o = matrix_of_language(&FiniteLanguageView::new(u, 2), 1, 1).unwrap();
        assert_eq!(o.entries(), CommMatrix::ones(2, 2).unwrap().entries());
    }

    #[test]
    fn or_matrix_examples() {
        let z = CommMatrix::from_bit_rows(&["0"]).unwrap();
        assert_eq!(or_matrix(&z).unwrap().entries(), z.entries());
        let i2 = CommMatrix::identity(2).unwrap();
        let o = or_matrix(&i2).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = r / 2 == c / 2 || r % 2 == c % 2;
                assert_eq!(o.is_one(r, c), expect);
            }
        }
        // fixing x' = y' = 0 leaves a row of ones; x' = 0, y' = 1 leaves F
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(o.is_one(x * 2, y * 2 + 1), i2.is_one(x, y));
            }
        }
        assert!(or_matrix(&CommMatrix::from_rows(vec![vec![ratio(1, 2)]]).unwrap()).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let m = CommMatrix::from_rows(vec![vec![ratio(1, 2), ratio(0, 1)], vec![ratio(-3, 4), ratio(5, 1)]])
            .unwrap();
        let s = m.to_csv_string();
        assert_eq!(s, ",0,1\n0,1/2,0\n1,-3/4,5\n");
        assert_eq!(CommMatrix::read_csv(s.as_bytes()).unwrap(), m);
        assert!(CommMatrix::read_csv(",a\nr,x\n".as_bytes()).is_err());
        assert!(CommMatrix::read_csv(",a,b\nr,1\n".as_bytes()).is_err());
    }
}
