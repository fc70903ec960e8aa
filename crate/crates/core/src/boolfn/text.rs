//! Text formats for truth tables and DNFs.
//!
//! ```text
//! tt 2 0111
//! ```
//!
//! ```text
//! dnf 2
//! +1
//! -1 +2
//! ```
//!
//! Literals are 1-based; a line `true` is the empty conjunction. Blank lines
//! and lines starting with `#` are ignored.

use super::{parse_bits, Conjunction, DnfFormula, Literal, TruthTable};
use crate::error::{Error, Result};

pub(crate) fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_header(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    keyword: &str,
) -> Result<(usize, Vec<String>)> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing `{keyword}` header")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected `{keyword}` header")));
    }
    Ok((line, parts.map(str::to_string).collect()))
}

pub(crate) fn parse_usize(line: usize, s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {s:?}")))
}

pub fn parse_truth_table(s: &str) -> Result<TruthTable> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "tt")?;
    if args.len() != 2 {
        return Err(Error::parse(line, "expected `tt <n> <bits>`"));
    }
    let n = parse_usize(line, &args[0], "arity")?;
    let bits = parse_bits(&args[1]).ok_or_else(|| Error::parse(line, "bitstring expected"))?;
    if n > super::MAX_TABLE_ARITY || bits.len() != 1 << n {
        return Err(Error::parse(
            line,
            format!("bitstring has length {}, expected 2^{n}", bits.len()),
        ));
    }
    if let Some((l, _)) = lines.next() {
        return Err(Error::parse(l, "trailing content"));
    }
    TruthTable::new(n, bits.into_iter().map(|b| b == 1).collect())
}

pub fn format_truth_table(f: &TruthTable) -> String {
    let bits: String = f
        .values()
        .iter()
        .map(|&v| if v { '1' } else { '0' })
        .collect();
    format!("tt {} {}\n", f.arity(), bits)
}

pub(crate) fn parse_literal(line: usize, tok: &str, arity: usize) -> Result<Literal> {
    let (positive, rest) = match tok.as_bytes().first() {
        Some(b'+') => (true, &tok[1..]),
        Some(b'-') => (false, &tok[1..]),
        _ => return Err(Error::parse(line, format!("literal {tok:?} needs a sign"))),
    };
    let v: usize = parse_usize(line, rest, "variable")?;
    if v == 0 || v > arity {
        return Err(Error::parse(line, format!("variable {v} out of range 1..={arity}")));
    }
    Ok(Literal { var: v - 1, positive })
}

pub(crate) fn parse_conjunction<'a>(
    line: usize,
    toks: impl Iterator<Item = &'a str>,
    arity: usize,
) -> Result<Conjunction> {
    let toks: Vec<&str> = toks.collect();
    if toks == ["true"] {
        return Ok(Conjunction::top());
    }
    let lits = toks
        .iter()
        .map(|t| parse_literal(line, t, arity))
        .collect::<Result<Vec<_>>>()?;
    Conjunction::new(lits).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn parse_dnf(s: &str) -> Result<DnfFormula> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "dnf")?;
    if args.len() != 1 {
        return Err(Error::parse(line, "expected `dnf <n>`"));
    }
    let n = parse_usize(line, &args[0], "arity")?;
    let terms = lines
        .map(|(l, text)| parse_conjunction(l, text.split_whitespace(), n))
        .collect::<Result<Vec<_>>>()?;
    DnfFormula::new(n, terms)
}

pub fn format_dnf(d: &DnfFormula) -> String {
    d.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table_round_trip() {
        let f = parse_truth_table("tt 2 0111\n").unwrap();
        assert_eq!(f, TruthTable::or(2).unwrap());
        assert_eq!(format_truth_table(&f), "tt 2 0111\n");
    }

    #[test]
    fn truth_table_errors_carry_line() {
        assert!(matches!(parse_truth_table("tt 2 011"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_truth_table("# c\ntx 1 01"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_truth_table("tt 1 0a").is_err());
        assert!(parse_truth_table("").is_err());
    }

    #[test]
    fn dnf_round_trip() {
        let text = "dnf 2\n+1\n-1 +2\ntrue\n";
        let d = parse_dnf(text).unwrap();
        assert_eq!(d.terms().len(), 3);
        assert!(d.terms()[2].is_top());
        assert_eq!(format_dnf(&d), text);
        assert!(parse_dnf("dnf 2\n+3\n").is_err());
        assert!(parse_dnf("dnf 2\n+1 -1\n").is_err());
        assert!(parse_dnf("dnf 2\n1\n").is_err());
    }
}
