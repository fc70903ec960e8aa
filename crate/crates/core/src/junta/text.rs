//! Text formats for juntas and dual certificates.
//!
//! ```text
//! junta 2
//! 2/3 +1
//! 2/3 +2
//! ```
//!
//! ```text
//! cert 1 0
//! -1/2 1/2
//! ```
//!
//! Certificate values are listed in index order and may span any number of lines.

use super::{ConicalJunta, DualCertificate};
use crate::boolfn::text::{content_lines, parse_conjunction, parse_header, parse_usize};
use crate::error::{Error, Result};
use crate::rational;

pub fn parse_junta(s: &str) -> Result<ConicalJunta> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "junta")?;
    if args.len() != 1 {
        return Err(Error::parse(line, "expected `junta <n>`"));
    }
    let n = parse_usize(line, &args[0], "arity")?;
    let mut terms = Vec::new();
    for (l, text) in lines {
        let mut toks = text.split_whitespace();
        let w = toks.next().unwrap_or_default();
        let w = rational::parse(w).ok_or_else(|| Error::parse(l, format!("bad weight {w:?}")))?;
        terms.push((w, parse_conjunction(l, toks, n)?));
    }
    ConicalJunta::new(n, terms).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn format_junta(h: &ConicalJunta) -> String {
    let mut out = format!("junta {}\n", h.arity());
    for (w, c) in h.terms() {
        out.push_str(&format!("{} {c}\n", rational::format(w)));
    }
    out
}

pub fn parse_certificate(s: &str) -> Result<DualCertificate> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "cert")?;
    if args.len() != 2 {
        return Err(Error::parse(line, "expected `cert <n> <d>`"));
    }
    let n = parse_usize(line, &args[0], "arity")?;
    let d = parse_usize(line, &args[1], "degree")?;
    let mut values = Vec::new();
    for (l, text) in lines {
        for tok in text.split_whitespace() {
            values.push(
                rational::parse(tok).ok_or_else(|| Error::parse(l, format!("bad value {tok:?}")))?,
            );
        }
    }
    DualCertificate::new(n, d, values).map_err(|e| Error::parse(line, e.to_string()))
}

/// Eight values per line.
pub fn format_certificate(phi: &DualCertificate) -> String {
    let mut out = format!("cert {} {}\n", phi.arity, phi.degree);
    for chunk in phi.values.chunks(8) {
        let row: Vec<String> = chunk.iter().map(rational::format).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn junta_round_trip() {
        let text = "junta 2\n2/3 +1\n2/3 +2\n1/4 true\n";
        let h = parse_junta(text).unwrap();
        assert_eq!(h.eval(&[1, 1]).unwrap(), ratio(19, 12));
        assert_eq!(format_junta(&h), text);
    }

    #[test]
    fn junta_errors() {
        assert!(parse_junta("junta 2\n-1 +1\n").is_err());
        assert!(parse_junta("junta 2\n1 +3\n").is_err());
        assert!(parse_junta("junta 2\nx +1\n").is_err());
        assert!(parse_junta("cert 2\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let phi = parse_certificate("cert 1 0\n-1/2\n1/2\n").unwrap();
        assert_eq!(phi.values, vec![ratio(-1, 2), ratio(1, 2)]);
        assert_eq!(parse_certificate(&format_certificate(&phi)).unwrap(), phi);
        assert!(parse_certificate("cert 2 0\n1 2 3\n").is_err());
    }
}
