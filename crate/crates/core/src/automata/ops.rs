use std::collections::HashMap;

use rand::Rng;

use super::{Nfa, BINARY};
use crate::boolfn::DnfFormula;
use crate::error::{Error, Result};

/// Largest number of subset-states built by [`determinize`].
pub const DEFAULT_SUBSET_CAP: usize = 1 << 20;

/// States `(p, q)` numbered `p * |Q_B| + q`; no pruning, so `|Q| = |Q_A| |Q_B|`.
pub fn product_intersect(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let nb = b.num_states();
    let sigma = a.alphabet_size();
    let mut transitions = Vec::new();
    for p in 0..a.num_states() {
        for q in 0..nb {
            for s in 0..sigma as u8 {
                for &p2 in a.successors(p, s) {
                    for &q2 in b.successors(q, s) {
                        transitions.push((p * nb + q, s, p2 * nb + q2));
                    }
                }
            }
        }
    }
    let initial: Vec<usize> = a
        .initial()
        .iter()
        .flat_map(|&p| b.initial().iter().map(move |&q| p * nb + q))
        .collect();
    let accepting: Vec<usize> = a
        .accepting()
        .iter()
        .flat_map(|&p| b.accepting().into_iter().map(move |q| p * nb + q))
        .collect();
    Nfa::new(
        a.num_states() * nb,
        a.alphabet().to_vec(),
        transitions,
        initial,
        accepting,
    )
}

/// States of `a` followed by the states of `b`, shifted by `|Q_A|`.
pub fn disjoint_union(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let off = a.num_states();
    let transitions = a
        .transitions()
        .into_iter()
        .chain(b.transitions().into_iter().map(|(p, s, q)| (p + off, s, q + off)));
    let initial = a
        .initial()
        .iter()
        .copied()
        .chain(b.initial().iter().map(|&q| q + off))
        .collect::<Vec<_>>();
    let accepting = a
        .accepting()
        .into_iter()
        .chain(b.accepting().into_iter().map(|q| q + off))
        .collect::<Vec<_>>();
    Nfa::new(off + b.num_states(), a.alphabet().to_vec(), transitions, initial, accepting)
}

/// Complete DFA over the reachable subsets (the empty subset included); state 0 is initial.
pub fn determinize(a: &Nfa, cap: usize) -> Result<Nfa> {
    let sigma = a.alphabet_size();
    let start: Vec<usize> = a.initial().to_vec();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    ids.insert(start, 0);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for s in 0..sigma as u8 {
            let mut next: Vec<usize> = subsets[i]
                .iter()
                .flat_map(|&q| a.successors(q, s).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= cap {
                        return Err(Error::Resource(format!(
                            "subset construction exceeds {cap} states"
                        )));
                    }
                    let id = subsets.len();
                    ids.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            transitions.push((i, s, id));
        }
        i += 1;
    }
    let accepting: Vec<usize> = subsets
        .iter()
        .enumerate()
        .filter(|(_, set)| set.iter().any(|&q| a.is_accepting(q)))
        .map(|(id, _)| id)
        .collect();
    Nfa::new(subsets.len(), a.alphabet().to_vec(), transitions, [0], accepting)
}

/// Complete DFA with states `0..=m+1`: position counters `0..=m` and an overflow sink `m+1`;
/// accepts exactly the words of length `m`.
pub fn length_counter_dfa(alphabet: Vec<char>, m: usize) -> Result<Nfa> {
    let sigma = alphabet.len();
    let transitions = (0..=m + 1).flat_map(move |c| {
        (0..sigma as u8).map(move |s| (c, s, if c <= m { c + 1 } else { m + 1 }))
    });
    Nfa::new(m + 2, alphabet, transitions, [0], [m])
}

/// Sizes along the complement construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementReport {
    pub subset_states: usize,
    /// Length counter including its sink.
    pub counter_states: usize,
    pub product_states: usize,
    pub pruned_states: usize,
}

/// DFA for `Sigma^m \ L(a)`: determinize, complement, intersect with the
/// length counter, prune.
pub fn fixed_length_complement(a: &Nfa, m: usize) -> Result<Nfa> {
    Ok(fixed_length_complement_report(a, m, DEFAULT_SUBSET_CAP)?.0)
}

pub fn fixed_length_complement_report(
    a: &Nfa,
    m: usize,
    cap: usize,
) -> Result<(Nfa, ComplementReport)> {
    let d = determinize(a, cap)?;
    let flipped: Vec<usize> = (0..d.num_states()).filter(|&q| !d.is_accepting(q)).collect();
    let comp = Nfa::new(d.num_states(), d.alphabet().to_vec(), d.transitions(), [0], flipped)?;
    let counter = length_counter_dfa(a.alphabet().to_vec(), m)?;
    let product = product_intersect(&comp, &counter)?;
    let pruned = product.trim();
    let report = ComplementReport {
        subset_states: d.num_states(),
        counter_states: counter.num_states(),
        product_states: product.num_states(),
        pruned_states: pruned.num_states(),
    };
    Ok((pruned, report))
}

/// One chain per distinct term; state `t * (m+1) + i` has read `i` bits of term `t`.
pub fn dnf_to_ufa(d: &DnfFormula, m: usize) -> Result<Nfa> {
    if d.arity() != m {
        return Err(Error::InputArity {
            expected: d.arity(),
            got: m,
        });
    }
    let d = d.dedup();
    let mut transitions = Vec::new();
    for (t, term) in d.terms().iter().enumerate() {
        let base = t * (m + 1);
        for i in 0..m {
            for bit in 0..2u8 {
                if term.get(i).is_none_or(|v| v == (bit == 1)) {
                    transitions.push((base + i, bit, base + i + 1));
                }
            }
        }
    }
    let k = d.terms().len();
    let a = Nfa::binary(
        k * (m + 1),
        transitions,
        (0..k).map(|t| t * (m + 1)),
        (0..k).map(|t| t * (m + 1) + m),
    )?;
    Ok(a.trim())
}

/// Each transition present with probability `edge_prob`; at least one initial state.
pub fn random_nfa<R: Rng>(rng: &mut R, num_states: usize, edge_prob: f64) -> Result<Nfa> {
    let mut transitions = Vec::new();
    for p in 0..num_states {
        for s in 0..2u8 {
            for q in 0..num_states {
                if rng.gen_bool(edge_prob) {
                    transitions.push((p, s, q));
                }
            }
        }
    }
    let mut initial: Vec<usize> = (0..num_states).filter(|_| rng.gen_bool(0.3)).collect();
    if initial.is_empty() && num_states > 0 {
        initial.push(rng.gen_range(0..num_states));
    }
    let accepting: Vec<usize> = (0..num_states).filter(|_| rng.gen_bool(0.4)).collect();
    Nfa::new(num_states, BINARY.to_vec(), transitions, initial, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{all_words, is_unambiguous_nfa};
    use crate::boolfn::{Conjunction, Literal};

    fn bin() -> Vec<char> {
        BINARY.to_vec()
    }

    fn lang(a: &Nfa, m: usize) -> Vec<Vec<u8>> {
        a.enumerate_language(m).unwrap()
    }

    #[test]
    fn product_and_union_examples() {
        let u = Nfa::universal(bin()).unwrap();
        let w01 = Nfa::word(bin(), &[0, 1]).unwrap();
        let w10 = Nfa::word(bin(), &[1, 0]).unwrap();
        assert_eq!(lang(&product_intersect(&u, &w01).unwrap(), 2), vec![vec![0, 1]]);
        let two = Nfa::binary(2, [(0, 0, 1), (1, 1, 0)], [0], [1]).unwrap();
        assert_eq!(product_intersect(&w01, &two).unwrap().num_states(), 6);
        let un = disjoint_union(&w01, &w10).unwrap();
        assert_eq!(lang(&un, 2), vec![vec![0, 1], vec![1, 0]]);
        assert!(is_unambiguous_nfa(&un));
        let ternary = Nfa::universal(vec!['a', 'b', 'c']).unwrap();
        assert!(matches!(product_intersect(&u, &ternary), Err(Error::AlphabetMismatch(..))));
    }

    #[test]
    fn complement_examples() {
        let w01 = Nfa::word(bin(), &[0, 1]).unwrap();
        let c = fixed_length_complement(&w01, 2).unwrap();
        assert_eq!(lang(&c, 2), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert!(c.is_deterministic());
        let e = Nfa::empty(bin()).unwrap();
        assert_eq!(lang(&fixed_length_complement(&e, 1).unwrap(), 1), all_words(2, 1).unwrap());
        let u = Nfa::universal(bin()).unwrap();
        let c = fixed_length_complement(&u, 2).unwrap();
        assert_eq!(c.num_states(), 0);
        // only length-m words survive
        let c = fixed_length_complement(&w01, 2).unwrap();
        assert!(lang(&c, 1).is_empty() && lang(&c, 3).is_empty());
    }

    #[test]
    fn complement_report_counts_sink() {
        let w01 = Nfa::word(bin(), &[0, 1]).unwrap();
        let (_, r) = fixed_length_complement_report(&w01, 2, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(r.counter_states, 4);
        assert_eq!(r.product_states, r.subset_states * 4);
        assert!(r.pruned_states <= r.product_states);
        assert!(matches!(
            fixed_length_complement_report(&w01, 2, 2),
            Err(Error::Resource(_))
        ));
        let counter = length_counter_dfa(bin(), 3).unwrap();
        assert!(counter.is_complete_dfa());
        assert_eq!(counter.num_states(), 5);
        assert_eq!(counter.trim().num_states(), 4);
    }

    #[test]
    fn dnf_to_ufa_examples() {
        let x1 = Conjunction::new([Literal::pos(0)]).unwrap();
        let nx1x2 = Conjunction::new([Literal::neg(0), Literal::pos(1)]).unwrap();
        let d = DnfFormula::new(2, vec![x1.clone(), nx1x2]).unwrap();
        let a = dnf_to_ufa(&d, 2).unwrap();
        assert!(a.num_states() <= 6);
        assert_eq!(lang(&a, 2), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(is_unambiguous_nfa(&a));
        let e = dnf_to_ufa(&DnfFormula::new(3, vec![]).unwrap(), 3).unwrap();
        assert!(lang(&e, 3).is_empty());
        let x1x2 = Conjunction::new([Literal::pos(0), Literal::pos(1)]).unwrap();
        let single = dnf_to_ufa(&DnfFormula::new(2, vec![x1x2]).unwrap(), 2).unwrap();
        assert_eq!(single.num_states(), 3);
        assert!(single.is_deterministic());
        assert!(dnf_to_ufa(&d, 3).is_err());
        // duplicates are removed before building
        let dup = DnfFormula::new(2, vec![x1.clone(), x1]).unwrap();
        assert!(is_unambiguous_nfa(&dnf_to_ufa(&dup, 2).unwrap()));
    }
}
