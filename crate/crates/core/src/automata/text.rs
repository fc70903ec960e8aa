//! Automaton text format.
//!
//! ```text
//! nfa 3 01
//! init 0
//! acc 2
//! trans 0 0 1
//! trans 1 1 2
//! ```
//!
//! The header gives the state count and the alphabet as a string of symbol
//! characters. Written files list `init`, `acc` and `trans` lines in sorted order.

use super::Nfa;
use crate::boolfn::text::{content_lines, parse_header, parse_usize};
use crate::error::{Error, Result};

pub fn parse_nfa(s: &str) -> Result<Nfa> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "nfa")?;
    if args.len() != 2 {
        return Err(Error::parse(line, "expected `nfa <states> <alphabet>`"));
    }
    let n = parse_usize(line, &args[0], "state count")?;
    let alphabet: Vec<char> = args[1].chars().collect();
    let mut seen = alphabet.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != alphabet.len() {
        return Err(Error::parse(line, "alphabet has repeated symbols"));
    }
    let state = |l: usize, tok: &str| -> Result<usize> {
        let q = parse_usize(l, tok, "state")?;
        if q >= n {
            return Err(Error::parse(l, format!("state {q} out of range 0..{n}")));
        }
        Ok(q)
    };
    let (mut initial, mut accepting, mut transitions) = (Vec::new(), Vec::new(), Vec::new());
    for (l, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["init", q] => initial.push(state(l, q)?),
            ["acc", q] => accepting.push(state(l, q)?),
            ["trans", p, a, q] => {
                let mut chars = a.chars();
                let sym = match (chars.next(), chars.next()) {
                    (Some(c), None) => alphabet
                        .iter()
                        .position(|&x| x == c)
                        .ok_or_else(|| Error::parse(l, format!("symbol {c:?} not in alphabet")))?,
                    _ => return Err(Error::parse(l, format!("bad symbol {a:?}"))),
                };
                transitions.push((state(l, p)?, sym as u8, state(l, q)?));
            }
            _ => return Err(Error::parse(l, format!("unrecognized line {text:?}"))),
        }
    }
    Nfa::new(n, alphabet, transitions, initial, accepting)
}

pub fn format_nfa(a: &Nfa) -> String {
    let alphabet: String = a.alphabet().iter().collect();
    let mut out = format!("nfa {} {alphabet}\n", a.num_states());
    for q in a.initial() {
        out.push_str(&format!("init {q}\n"));
    }
    for q in a.accepting() {
        out.push_str(&format!("acc {q}\n"));
    }
    for (p, s, q) in a.transitions() {
        out.push_str(&format!("trans {p} {} {q}\n", a.alphabet()[usize::from(s)]));
    }
    out
}

/// One word per line, symbols written with the alphabet characters.
pub fn format_words(a: &Nfa, words: &[Vec<u8>]) -> String {
    let mut out = String::new();
    for w in words {
        out.extend(w.iter().map(|&s| a.alphabet()[usize::from(s)]));
        out.push('\n');
    }
    out
}
