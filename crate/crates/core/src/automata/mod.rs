//! Finite automata over small alphabets, restricted to fixed-length slices.
//!
//! Symbols are indices into the alphabet, so over the binary alphabet a word
//! is the same `&[u8]` bitstring used for boolean functions.

mod ops;
mod padded;
mod rect;
pub mod text;
mod unambiguous;

pub use ops::{
    determinize, disjoint_union, dnf_to_ufa, fixed_length_complement,
    fixed_length_complement_report, length_counter_dfa, product_intersect, random_nfa,
    ComplementReport, DEFAULT_SUBSET_CAP,
};
pub use padded::build_padded_pair;
pub use rect::{nfa_to_cover, ufa_to_partition};
pub use unambiguous::is_unambiguous_nfa;

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest number of words enumerated from one slice.
pub const MAX_ENUMERATION: usize = 1 << 24;

pub const BINARY: [char; 2] = ['0', '1'];

/// `(Q, Sigma, delta, I, F)` with `Q = 0..num_states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Vec<char>,
    /// `delta[q][a]`: sorted successors.
    delta: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(
        num_states: usize,
        alphabet: Vec<char>,
        transitions: impl IntoIterator<Item = (usize, u8, usize)>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if alphabet.is_empty() || alphabet.len() > usize::from(u8::MAX) {
            return Err(Error::Parameter("alphabet must have 1..=255 symbols".into()));
        }
        let sigma = alphabet.len();
        let mut delta = vec![vec![Vec::new(); sigma]; num_states];
        let state = |q: usize| {
            if q < num_states {
                Ok(q)
            } else {
                Err(Error::Parameter(format!("state {q} out of range 0..{num_states}")))
            }
        };
        for (p, a, q) in transitions {
            let p = state(p)?;
            let q = state(q)?;
            if usize::from(a) >= sigma {
                return Err(Error::Alphabet {
                    symbol: a,
                    alphabet: sigma as u8,
                });
            }
            delta[p][usize::from(a)].push(q);
        }
        for row in &mut delta {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let initial: BTreeSet<usize> = initial.into_iter().map(state).collect::<Result<_>>()?;
        let mut acc = vec![false; num_states];
        for q in accepting {
            acc[state(q)?] = true;
        }
        Ok(Nfa {
            alphabet,
            delta,
            initial: initial.into_iter().collect(),
            accepting: acc,
        })
    }

    pub fn binary(
        num_states: usize,
        transitions: impl IntoIterator<Item = (usize, u8, usize)>,
        initial: impl IntoIterator<Item = usize>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        Nfa::new(num_states, BINARY.to_vec(), transitions, initial, accepting)
    }

    /// One looping accepting state: every word.
    pub fn universal(alphabet: Vec<char>) -> Result<Self> {
        let sigma = alphabet.len();
        Nfa::new(1, alphabet, (0..sigma).map(|a| (0, a as u8, 0)), [0], [0])
    }

    /// No states at all.
    pub fn empty(alphabet: Vec<char>) -> Result<Self> {
        Nfa::new(0, alphabet, [], [], [])
    }

    /// Chain accepting exactly `w`.
    pub fn word(alphabet: Vec<char>, w: &[u8]) -> Result<Self> {
        Nfa::new(
            w.len() + 1,
            alphabet,
            w.iter().enumerate().map(|(i, &a)| (i, a, i + 1)),
            [0],
            [w.len()],
        )
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn successors(&self, q: usize, a: u8) -> &[usize] {
        &self.delta[q][usize::from(a)]
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// All `(p, a, q)`, sorted.
    pub fn transitions(&self) -> Vec<(usize, u8, usize)> {
        let mut out = Vec::with_capacity(self.num_transitions());
        for (p, row) in self.delta.iter().enumerate() {
            for (a, succ) in row.iter().enumerate() {
                out.extend(succ.iter().map(|&q| (p, a as u8, q)));
            }
        }
        out
    }

    /// Exactly one initial state and at most one successor per symbol.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|s| s.len() <= 1)
    }

    /// Deterministic with exactly one successor per symbol.
    pub fn is_complete_dfa(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|s| s.len() == 1)
    }

    pub(crate) fn check_word(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&a| usize::from(a) >= self.alphabet.len()) {
            Some(&a) => Err(Error::Alphabet {
                symbol: a,
                alphabet: self.alphabet.len() as u8,
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.len() as u8,
                other.alphabet.len() as u8,
            ));
        }
        Ok(())
    }

    /// States reachable from `from` on `a`.
    pub fn step(&self, from: &[bool], a: u8) -> Vec<bool> {
        let mut next = vec![false; self.num_states()];
        for (q, _) in from.iter().enumerate().filter(|(_, &b)| b) {
            for &r in &self.delta[q][usize::from(a)] {
                next[r] = true;
            }
        }
        next
    }

    pub fn initial_set(&self) -> Vec<bool> {
        let mut s = vec![false; self.num_states()];
        for &q in &self.initial {
            s[q] = true;
        }
        s
    }

    /// States reached from the initial states on `w`.
    pub fn reach(&self, w: &[u8]) -> Result<Vec<bool>> {
        self.check_word(w)?;
        Ok(w.iter().fold(self.initial_set(), |s, &a| self.step(&s, a)))
    }

    /// States from which some run on `w` ends in an accepting state.
    pub fn co_reach(&self, w: &[u8]) -> Result<Vec<bool>> {
        self.check_word(w)?;
        let mut s = self.accepting.clone();
        for &a in w.iter().rev() {
            s = (0..self.num_states())
                .map(|q| self.delta[q][usize::from(a)].iter().any(|&r| s[r]))
                .collect();
        }
        Ok(s)
    }

    pub fn accepts(&self, w: &[u8]) -> Result<bool> {
        Ok(self
            .reach(w)?
            .iter()
            .zip(&self.accepting)
            .any(|(&r, &f)| r && f))
    }

    /// Number of accepting runs on `w`, saturating.
    pub fn count_accepting_runs(&self, w: &[u8]) -> Result<u128> {
        self.check_word(w)?;
        let mut counts = vec![0u128; self.num_states()];
        for &q in &self.initial {
            counts[q] = 1;
        }
        for &a in w {
            let mut next = vec![0u128; self.num_states()];
            for (q, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                for &r in &self.delta[q][usize::from(a)] {
                    next[r] = next[r].saturating_add(c);
                }
            }
            counts = next;
        }
        Ok(counts
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &f)| f)
            .fold(0u128, |acc, (&c, _)| acc.saturating_add(c)))
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = self.initial_set();
        let mut stack = self.initial.clone();
        while let Some(q) = stack.pop() {
            for succ in &self.delta[q] {
                for &r in succ {
                    if !seen[r] {
                        seen[r] = true;
                        stack.push(r);
                    }
                }
            }
        }
        seen
    }

    fn backward_reachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for (p, row) in self.delta.iter().enumerate() {
            for succ in row {
                for &q in succ {
                    preds[q].push(p);
                }
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Reachable and co-reachable states.
    pub fn live_states(&self) -> Vec<bool> {
        let f = self.forward_reachable();
        let b = self.backward_reachable();
        f.iter().zip(&b).map(|(&x, &y)| x && y).collect()
    }

    pub fn num_live_states(&self) -> usize {
        self.live_states().iter().filter(|&&b| b).count()
    }

    /// Keeps only the given states, renumbered in increasing order.
    pub fn restrict(&self, keep: &[bool]) -> Nfa {
        let mut new_id = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                new_id[q] = next;
                next += 1;
            }
        }
        let delta = (0..self.num_states())
            .filter(|&q| keep[q])
            .map(|q| {
                self.delta[q]
                    .iter()
                    .map(|succ| {
                        succ.iter()
                            .filter(|&&r| keep[r])
                            .map(|&r| new_id[r])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: self
                .initial
                .iter()
                .filter(|&&q| keep[q])
                .map(|&q| new_id[q])
                .collect(),
            accepting: (0..self.num_states())
                .filter(|&q| keep[q])
                .map(|q| self.accepting[q])
                .collect(),
        }
    }

    /// Removes unreachable and dead states; the language is unchanged.
    pub fn trim(&self) -> Nfa {
        self.restrict(&self.live_states())
    }

    /// Distance from the initial states for trimmed automata of a
    /// length-homogeneous language; `None` if some state has two depths.
    pub fn depths(&self) -> Option<Vec<Option<usize>>> {
        let mut depth = vec![None; self.num_states()];
        let mut frontier: Vec<usize> = self.initial.clone();
        for &q in &frontier {
            depth[q] = Some(0);
        }
        let mut d = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &q in &frontier {
                for succ in &self.delta[q] {
                    for &r in succ {
                        match depth[r] {
                            None => {
                                depth[r] = Some(d + 1);
                                next.push(r);
                            }
                            Some(e) if e != d + 1 => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
            frontier = next;
            d += 1;
        }
        Some(depth)
    }

    pub fn enumerate_language(&self, m: usize) -> Result<Vec<Vec<u8>>> {
        enumerate_language(self, m)
    }
}

fn words_bound(sigma: usize, m: usize) -> Result<usize> {
    let mut total = 1usize;
    for _ in 0..m {
        total = total.saturating_mul(sigma);
    }
    if total > MAX_ENUMERATION {
        return Err(Error::Resource(format!(
            "{sigma}^{m} words exceed enumeration bound {MAX_ENUMERATION}"
        )));
    }
    Ok(total)
}

/// The length-`m` slice of `L(a)` in lexicographic order.
pub fn enumerate_language(a: &Nfa, m: usize) -> Result<Vec<Vec<u8>>> {
    words_bound(a.alphabet_size(), m)?;
    let co: Vec<Vec<bool>> = {
        // co[j][q]: q reaches acceptance in exactly j more symbols
        let mut co = vec![a.accepting.clone()];
        for _ in 0..m {
            let prev = co.last().expect("nonempty");
            let cur = (0..a.num_states())
                .map(|q| a.delta[q].iter().flatten().any(|&r| prev[r]))
                .collect();
            co.push(cur);
        }
        co
    };
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(m);
    fn dfs(
        a: &Nfa,
        co: &[Vec<bool>],
        m: usize,
        set: Vec<bool>,
        word: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let left = m - word.len();
        if !set.iter().zip(&co[left]).any(|(&s, &c)| s && c) {
            return;
        }
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for sym in 0..a.alphabet_size() as u8 {
            let next = a.step(&set, sym);
            word.push(sym);
            dfs(a, co, m, next, word, out);
            word.pop();
        }
    }
    dfs(a, &co, m, a.initial_set(), &mut word, &mut out);
    Ok(out)
}

/// All words of length `m` over `sigma` symbols in lexicographic order.
pub fn all_words(sigma: usize, m: usize) -> Result<Vec<Vec<u8>>> {
    let total = words_bound(sigma, m)?;
    Ok((0..total)
        .map(|mut i| {
            let mut w = vec![0u8; m];
            for slot in w.iter_mut().rev() {
                *slot = (i % sigma) as u8;
                i /= sigma;
            }
            w
        })
        .collect())
}

/// The length-`m` slice of an automaton's language.
#[derive(Debug, Clone)]
pub struct FiniteLanguageView {
    pub automaton: Nfa,
    pub length: usize,
}

impl FiniteLanguageView {
    pub fn new(automaton: Nfa, length: usize) -> Self {
        FiniteLanguageView { automaton, length }
    }

    pub fn contains(&self, w: &[u8]) -> Result<bool> {
        Ok(w.len() == self.length && self.automaton.accepts(w)?)
    }

    pub fn words(&self) -> Result<Vec<Vec<u8>>> {
        enumerate_language(&self.automaton, self.length)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a01() -> Nfa {
        Nfa::word(BINARY.to_vec(), &[0, 1]).unwrap()
    }

    #[test]
    fn accepts_examples() {
        let u = Nfa::universal(BINARY.to_vec()).unwrap();
        assert!(u.accepts(&[]).unwrap() && u.accepts(&[1, 0, 1]).unwrap());
        assert!(a01().accepts(&[0, 1]).unwrap());
        assert!(!a01().accepts(&[1, 0]).unwrap());
        let no_init = Nfa::binary(1, [(0, 0, 0)], [], [0]).unwrap();
        assert!(!no_init.accepts(&[0]).unwrap());
        assert!(matches!(a01().accepts(&[2]), Err(Error::Alphabet { .. })));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(a01().enumerate_language(2).unwrap(), vec![vec![0, 1]]);
        let u = Nfa::universal(BINARY.to_vec()).unwrap();
        assert_eq!(u.enumerate_language(0).unwrap(), vec![Vec::<u8>::new()]);
        assert!(Nfa::empty(BINARY.to_vec()).unwrap().enumerate_language(3).unwrap().is_empty());
        assert_eq!(u.enumerate_language(3).unwrap(), all_words(2, 3).unwrap());
        assert!(matches!(u.enumerate_language(30), Err(Error::Resource(_))));
    }

    #[test]
    fn trim_removes_dead_states() {
        // 0 -0-> 1 (accepting), 0 -1-> 2 (dead), 3 unreachable
        let a = Nfa::binary(4, [(0, 0, 1), (0, 1, 2), (3, 0, 1)], [0], [1]).unwrap();
        let t = a.trim();
        assert_eq!(t.num_states(), 2);
        assert_eq!(t.enumerate_language(1).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn run_counting() {
        let two_paths = Nfa::binary(3, [(0, 1, 1), (0, 1, 2)], [0], [1, 2]).unwrap();
        assert_eq!(two_paths.count_accepting_runs(&[1]).unwrap(), 2);
        assert_eq!(two_paths.count_accepting_runs(&[0]).unwrap(), 0);
    }
}
