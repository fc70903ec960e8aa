//! Gadget text format.
//!
//! ```text
//! gadget 1
//! 0001
//! (x1 0 (y1 0 1))
//! ```
//!
//! The second line is the truth table on `x1..xb y1..yb` in index order. The
//! optional third line is a decision tree: a leaf `0`/`1` or `(var zero one)`.

use super::{DecisionTree, Gadget};
use crate::boolfn::parse_bits;
use crate::boolfn::text::{content_lines, parse_header, parse_usize};
use crate::boolfn::TruthTable;
use crate::error::{Error, Result};

pub fn parse_gadget(s: &str) -> Result<Gadget> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "gadget")?;
    if args.len() != 1 {
        return Err(Error::parse(line, "expected `gadget <b>`"));
    }
    let b = parse_usize(line, &args[0], "block size")?;
    if b == 0 || b > super::MAX_GADGET_BITS {
        return Err(Error::parse(line, format!("block size {b} out of range")));
    }
    let (tl, bits) = lines
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing truth table"))?;
    let bits = parse_bits(bits).ok_or_else(|| Error::parse(tl, "bitstring expected"))?;
    if bits.len() != 1 << (2 * b) {
        return Err(Error::parse(tl, format!("table needs {} bits", 1 << (2 * b))));
    }
    let table = TruthTable::new(2 * b, bits.iter().map(|&v| v == 1).collect())?;
    let tree = match lines.next() {
        Some((l, text)) => {
            let toks = tokenize(text);
            let mut pos = 0;
            let t = parse_tree(l, &toks, &mut pos, b)?;
            if pos != toks.len() {
                return Err(Error::parse(l, "trailing tokens after tree"));
            }
            if let Some((l2, _)) = lines.next() {
                return Err(Error::parse(l2, "trailing content"));
            }
            Some(t)
        }
        None => None,
    };
    Gadget::new(b, table, tree).map_err(|e| Error::parse(line, e.to_string()))
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn parse_var(l: usize, tok: &str, b: usize) -> Result<usize> {
    let (off, rest) = match tok.as_bytes().first() {
        Some(b'x') => (0, &tok[1..]),
        Some(b'y') => (b, &tok[1..]),
        _ => return Err(Error::parse(l, format!("bad variable {tok:?}"))),
    };
    let i = parse_usize(l, rest, "variable")?;
    if i == 0 || i > b {
        return Err(Error::parse(l, format!("variable {tok} out of range")));
    }
    Ok(off + i - 1)
}

fn parse_tree(l: usize, toks: &[String], pos: &mut usize, b: usize) -> Result<DecisionTree> {
    let tok = toks
        .get(*pos)
        .ok_or_else(|| Error::parse(l, "unexpected end of tree"))?;
    *pos += 1;
    match tok.as_str() {
        "0" => Ok(DecisionTree::Leaf(false)),
        "1" => Ok(DecisionTree::Leaf(true)),
        "(" => {
            let var_tok = toks
                .get(*pos)
                .ok_or_else(|| Error::parse(l, "unexpected end of tree"))?;
            let var = parse_var(l, var_tok, b)?;
            *pos += 1;
            let zero = parse_tree(l, toks, pos, b)?;
            let one = parse_tree(l, toks, pos, b)?;
            if toks.get(*pos).map(String::as_str) != Some(")") {
                return Err(Error::parse(l, "expected `)`"));
            }
            *pos += 1;
            Ok(DecisionTree::Query {
                var,
                zero: Box::new(zero),
                one: Box::new(one),
            })
        }
        other => Err(Error::parse(l, format!("unexpected token {other:?}"))),
    }
}

fn format_tree(t: &DecisionTree, b: usize) -> String {
    match t {
        DecisionTree::Leaf(v) => u8::from(*v).to_string(),
        DecisionTree::Query { var, zero, one } => {
            let name = if *var < b {
                format!("x{}", var + 1)
            } else {
                format!("y{}", var - b + 1)
            };
            format!("({name} {} {})", format_tree(zero, b), format_tree(one, b))
        }
    }
}

pub fn format_gadget(g: &Gadget) -> String {
    let bits: String = g
        .table()
        .values()
        .iter()
        .map(|&v| if v { '1' } else { '0' })
        .collect();
    format!("gadget {}\n{bits}\n{}\n", g.bits(), format_tree(g.tree(), g.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "gadget 1\n0001\n(x1 0 (y1 0 1))\n";
        let g = parse_gadget(text).unwrap();
        assert_eq!(g.tree().depth(), 2);
        assert_eq!(format_gadget(&g), text);
        let full = parse_gadget("gadget 1\n0110\n").unwrap();
        assert_eq!(parse_gadget(&format_gadget(&full)).unwrap(), full);
    }

    #[test]
    fn errors() {
        assert!(parse_gadget("gadget 1\n011\n").is_err());
        assert!(parse_gadget("gadget 1\n0001\n(x1 0 1)\n").is_err());
        assert!(parse_gadget("gadget 1\n0001\n(z1 0 1)\n").is_err());
        assert!(parse_gadget("gadget 1\n0001\n(x1 0 (y1 0 1)\n").is_err());
    }
}
