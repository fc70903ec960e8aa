use super::{is_unambiguous_nfa, Nfa};
use crate::error::{Error, Result};

/// UFAs for `L1 = {x x' y y' : F(x,y) = 1}` and `L2 = {x x' y y' : F(x',y') = 1}`,
/// where `|x| = |x'| = m1`, `|y| = |y'| = m2` and `a_f` recognizes `F`.
///
/// Every live state of a trimmed automaton for a length-`(m1+m2)` language has
/// a unique depth. States at depth `m1` are followed by a chain that skips the
/// padding block while remembering them; the remaining padding is a shared chain.
/// `L1` has at most `|Q| + b*m1 + m2` states and `L2` at most `m1 + |Q| + b*m2`,
/// with `b` the number of states at depth `m1`.
pub fn build_padded_pair(a_f: &Nfa, m1: usize, m2: usize) -> Result<(Nfa, Nfa)> {
    if !is_unambiguous_nfa(a_f) {
        return Err(Error::Precondition("automaton is ambiguous".into()));
    }
    let a = a_f.trim();
    let depth: Vec<usize> = match a.depths() {
        Some(d) => d.into_iter().map(|d| d.expect("trimmed states are reachable")).collect(),
        None => {
            return Err(Error::Precondition(
                "language is not length-homogeneous".into(),
            ))
        }
    };
    let total = m1 + m2;
    if a.accepting().iter().any(|&f| depth[f] != total) {
        return Err(Error::Precondition(format!(
            "automaton accepts words of length other than {total}"
        )));
    }
    Ok((
        padded(&a, &depth, m1, m2, false)?.trim(),
        padded(&a, &depth, m1, m2, true)?.trim(),
    ))
}

fn padded(a: &Nfa, depth: &[usize], m1: usize, m2: usize, second: bool) -> Result<Nfa> {
    let n = a.num_states();
    let sigma = a.alphabet_size() as u8;
    let boundary: Vec<usize> = (0..n).filter(|&q| depth[q] == m1).collect();
    // head skips x (second copy), mid skips x' or y, tail skips y' (first copy)
    let (head, mid, tail) = if second { (m1, m2, 0) } else { (0, m1, m2) };
    let orig = |q: usize| head + q;
    let skip = |bi: usize, j: usize| head + n + bi * mid + (j - 1);
    let tail_state = |j: usize| head + n + boundary.len() * mid + (j - 1);
    let num_states = head + n + boundary.len() * mid + tail;

    let mut transitions = Vec::new();
    let chain = |from: usize, to: usize, t: &mut Vec<(usize, u8, usize)>| {
        t.extend((0..sigma).map(|s| (from, s, to)));
    };
    for j in 1..head {
        chain(j - 1, j, &mut transitions);
    }
    let mut initial = Vec::new();
    if head > 0 {
        initial.push(0);
        for &i in a.initial() {
            transitions.extend((0..sigma).map(|s| (head - 1, s, orig(i))));
        }
    } else {
        initial.extend(a.initial().iter().map(|&i| orig(i)));
    }

    let copy = |from: usize, q: usize, t: &mut Vec<(usize, u8, usize)>| {
        for s in 0..sigma {
            t.extend(a.successors(q, s).iter().map(|&r| (from, s, orig(r))));
        }
    };
    // node where the automaton resumes after the mid skip
    let mut resume: Vec<usize> = (0..n).map(orig).collect();
    for (bi, &q) in boundary.iter().enumerate() {
        if mid > 0 {
            chain(orig(q), skip(bi, 1), &mut transitions);
            for j in 2..=mid {
                chain(skip(bi, j - 1), skip(bi, j), &mut transitions);
            }
            resume[q] = skip(bi, mid);
        }
    }
    for (q, &from) in resume.iter().enumerate() {
        copy(from, q, &mut transitions);
    }

    let mut accepting = Vec::new();
    for f in a.accepting() {
        if tail > 0 {
            chain(resume[f], tail_state(1), &mut transitions);
        } else {
            accepting.push(resume[f]);
        }
    }
    if tail > 0 {
        for j in 2..=tail {
            chain(tail_state(j - 1), tail_state(j), &mut transitions);
        }
        if !a.accepting().is_empty() {
            accepting.push(tail_state(tail));
        }
    }
    Nfa::new(num_states, a.alphabet().to_vec(), transitions, initial, accepting)
}
