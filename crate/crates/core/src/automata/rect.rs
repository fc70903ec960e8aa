use super::{all_words, is_unambiguous_nfa, Nfa};
use crate::commx::Rectangle;
use crate::error::{Error, Result};

/// For each state `q`: the `x` of length `m1` reaching `q` times the `y` of length
/// `m2` leading from `q` to acceptance; empty rectangles are dropped.
///
/// Rows and columns are word indices, most significant symbol first.
pub fn nfa_to_cover(a: &Nfa, m1: usize, m2: usize) -> Result<Vec<Rectangle>> {
    let sigma = a.alphabet_size();
    let n = a.num_states();
    let mut rows = vec![Vec::new(); n];
    for (i, x) in all_words(sigma, m1)?.iter().enumerate() {
        for (q, _) in a.reach(x)?.iter().enumerate().filter(|(_, &b)| b) {
            rows[q].push(i);
        }
    }
    let mut cols = vec![Vec::new(); n];
    for (j, y) in all_words(sigma, m2)?.iter().enumerate() {
        for (q, _) in a.co_reach(y)?.iter().enumerate().filter(|(_, &b)| b) {
            cols[q].push(j);
        }
    }
    Ok(rows
        .into_iter()
        .zip(cols)
        .map(|(r, c)| Rectangle::new(r, c))
        .filter(|r| !r.is_empty())
        .collect())
}

/// [`nfa_to_cover`] for an unambiguous automaton, with pairwise disjointness checked.
pub fn ufa_to_partition(a: &Nfa, m1: usize, m2: usize) -> Result<Vec<Rectangle>> {
    if !is_unambiguous_nfa(a) {
        return Err(Error::Precondition("automaton is ambiguous".into()));
    }
    let rects = nfa_to_cover(a, m1, m2)?;
    for (i, r) in rects.iter().enumerate() {
        if let Some(j) = rects[i + 1..].iter().position(|s| r.intersects(s)) {
            return Err(Error::Internal(format!(
                "rectangles {i} and {} overlap in an unambiguous automaton",
                i + 1 + j
            )));
        }
    }
    Ok(rects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::BINARY;

    fn equality() -> Nfa {
        // 0 -a-> 1+a, 1+a -a-> 3
        Nfa::binary(4, [(0, 0, 1), (0, 1, 2), (1, 0, 3), (2, 1, 3)], [0], [3]).unwrap()
    }

    #[test]
    fn universal_gives_one_full_rectangle() {
        let u = Nfa::universal(BINARY.to_vec()).unwrap();
        let r = nfa_to_cover(&u, 1, 1).unwrap();
        assert_eq!(r, vec![Rectangle::new(vec![0, 1], vec![0, 1])]);
    }

    #[test]
    fn equality_midpoints() {
        let r = ufa_to_partition(&equality(), 1, 1).unwrap();
        assert_eq!(
            r,
            vec![Rectangle::new(vec![0], vec![0]), Rectangle::new(vec![1], vec![1])]
        );
    }

    #[test]
    fn single_word() {
        let a = Nfa::word(BINARY.to_vec(), &[1, 0, 1]).unwrap();
        assert_eq!(
            ufa_to_partition(&a, 2, 1).unwrap(),
            vec![Rectangle::new(vec![2], vec![1])]
        );
    }

    #[test]
    fn ambiguous_rejected() {
        let a = Nfa::binary(3, [(0, 1, 1), (0, 1, 2)], [0], [1, 2]).unwrap();
        assert!(matches!(ufa_to_partition(&a, 1, 0), Err(Error::Precondition(_))));
        assert_eq!(nfa_to_cover(&a, 1, 0).unwrap().len(), 2);
    }
}
