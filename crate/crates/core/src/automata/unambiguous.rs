use super::Nfa;

/// No word has two distinct accepting runs.
///
/// Searches the self-product over `(p, q, diverged)`; the automaton is
/// ambiguous iff some diverged pair of accepting states is reachable.
pub fn is_unambiguous_nfa(a: &Nfa) -> bool {
    let a = a.trim();
    let n = a.num_states();
    let id = |p: usize, q: usize, flag: bool| (p * n + q) * 2 + usize::from(flag);
    let mut seen = vec![false; n * n * 2];
    let mut stack = Vec::new();
    for &i in a.initial() {
        for &j in a.initial() {
            let s = (i, j, i != j);
            if !seen[id(s.0, s.1, s.2)] {
                seen[id(s.0, s.1, s.2)] = true;
                stack.push(s);
            }
        }
    }
    while let Some((p, q, flag)) = stack.pop() {
        if flag && a.is_accepting(p) && a.is_accepting(q) {
            return false;
        }
        for s in 0..a.alphabet_size() as u8 {
            for &p2 in a.successors(p, s) {
                for &q2 in a.successors(q, s) {
                    let f2 = flag || p2 != q2;
                    let k = id(p2, q2, f2);
                    if !seen[k] {
                        seen[k] = true;
                        stack.push((p2, q2, f2));
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{all_words, length_counter_dfa, random_nfa, BINARY};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dfa_is_unambiguous() {
        assert!(is_unambiguous_nfa(&length_counter_dfa(BINARY.to_vec(), 4).unwrap()));
    }

    #[test]
    fn parallel_copies_are_ambiguous() {
        let a = crate::automata::Nfa::binary(
            4,
            [(0, 0, 1), (1, 1, 2), (0, 0, 3), (3, 1, 2)],
            [0],
            [2],
        )
        .unwrap();
        assert!(!is_unambiguous_nfa(&a));
        let two_starts = crate::automata::Nfa::binary(1, [(0, 1, 0)], [0, 0], [0]).unwrap();
        assert!(is_unambiguous_nfa(&two_starts));
    }

    #[test]
    fn agrees_with_run_counting() {
        // brute force up to length 8 suffices for a few states: a shortest
        // ambiguous word has length below 2 n^2
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_nfa(&mut rng, 2, 0.35).unwrap();
            let brute = (0..=8).all(|m| {
                all_words(2, m)
                    .unwrap()
                    .iter()
                    .all(|w| a.count_accepting_runs(w).unwrap() <= 1)
            });
            assert_eq!(is_unambiguous_nfa(&a), brute, "{a:?}");
        }
    }
}
