//! Exact rectangle cover and partition numbers by branch and bound.
//!
//! Both searches run on the matrix with duplicate rows and columns merged and
//! lines without target entries removed; witnesses are mapped back to the
//! original indices afterwards.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{rational_rank, CommMatrix, Rectangle};
use crate::error::Result;

/// Largest collapsed side handled by the exact searches.
pub const MAX_SEARCH_SIDE: usize = 64;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;
const MAX_MAXIMAL_RECTANGLES: usize = 200_000;
const MAX_CANDIDATES_PER_NODE: usize = 1 << 16;
const MAX_MEMO: usize = 1 << 22;

/// `lower <= optimum <= upper`; the witness has `upper` rectangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleMeasure {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<Rectangle>,
    pub nodes: u64,
}

impl RectangleMeasure {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.upper)
    }

    /// `log2` of the upper end, the logarithmic measure of a cover or partition.
    pub fn log2(&self) -> f64 {
        (self.upper as f64).log2()
    }
}

/// Target cells as row bitmasks over merged rows and columns.
struct Grid {
    rows: Vec<u64>,
    row_class: Vec<Vec<usize>>,
    col_class: Vec<Vec<usize>>,
}

impl Grid {
    fn to_rectangle(&self, rows: u64, cols: u64) -> Rectangle {
        let pick = |mask: u64, class: &[Vec<usize>]| -> Vec<usize> {
            bits(mask).flat_map(|i| class[i].iter().copied()).collect()
        };
        Rectangle::new(pick(rows, &self.row_class), pick(cols, &self.col_class))
    }

    fn compatible(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.rows[a.0] >> b.1 & 1 == 1 && self.rows[b.0] >> a.1 & 1 == 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn classes<K: Eq + std::hash::Hash + Clone>(keys: &[K], skip: impl Fn(&K) -> bool) -> (Vec<K>, Vec<Vec<usize>>) {
    let mut index: HashMap<K, usize> = HashMap::new();
    let (mut reps, mut members) = (Vec::new(), Vec::<Vec<usize>>::new());
    for (i, k) in keys.iter().enumerate() {
        if skip(k) {
            continue;
        }
        let id = *index.entry(k.clone()).or_insert_with(|| {
            reps.push(k.clone());
            members.push(Vec::new());
            reps.len() - 1
        });
        members[id].push(i);
    }
    (reps, members)
}

/// `None` when the merged matrix exceeds [`MAX_SEARCH_SIDE`].
fn collapse(m: &CommMatrix, target: bool) -> Result<Option<Grid>> {
    m.require_boolean()?;
    let t: Vec<Vec<bool>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.is_one(i, j) == target).collect())
        .collect();
    let (row_reps, row_class) = classes(&t, |r| !r.contains(&true));
    let cols: Vec<Vec<bool>> = (0..m.cols())
        .map(|j| row_reps.iter().map(|r| r[j]).collect())
        .collect();
    let (col_reps, col_class) = classes(&cols, |c| !c.contains(&true));
    if row_reps.len() > MAX_SEARCH_SIDE || col_reps.len() > MAX_SEARCH_SIDE {
        return Ok(None);
    }
    let rows = (0..row_reps.len())
        .map(|i| {
            col_reps
                .iter()
                .enumerate()
                .filter(|(_, c)| c[i])
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    Ok(Some(Grid {
        rows,
        row_class,
        col_class,
    }))
}

/// One rectangle per distinct nonzero row: valid for both covers and partitions.
fn row_witness(m: &CommMatrix, target: bool) -> Vec<Rectangle> {
    let mut by_pattern: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    for i in 0..m.rows() {
        let cols: Vec<usize> = (0..m.cols()).filter(|&j| m.is_one(i, j) == target).collect();
        if cols.is_empty() {
            continue;
        }
        by_pattern
            .entry(cols.clone())
            .or_insert_with(|| {
                order.push(cols.clone());
                Vec::new()
            })
            .push(i);
    }
    order
        .into_iter()
        .map(|cols| Rectangle::new(by_pattern[&cols].clone(), cols))
        .collect()
}

fn fallback(m: &CommMatrix, target: bool) -> RectangleMeasure {
    let witness = row_witness(m, target);
    RectangleMeasure {
        lower: usize::from(!witness.is_empty()),
        upper: witness.len(),
        witness,
        nodes: 0,
    }
}

/// Greedy set of target cells, pairwise not in any common monochromatic rectangle.
fn fooling_bound(g: &Grid, avail: &[u64]) -> usize {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (r, &mask) in avail.iter().enumerate() {
        for c in bits(mask) {
            if chosen.iter().all(|&p| !g.compatible(p, (r, c))) {
                chosen.push((r, c));
            }
        }
    }
    chosen.len()
}

/// Rank over GF(2); it never exceeds the rational rank.
fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// `Cov_b(M)`: fewest `b`-monochromatic rectangles covering all `b`-entries.
pub fn cover_number(m: &CommMatrix, b: bool) -> Result<RectangleMeasure> {
    cover_number_budget(m, b, DEFAULT_NODE_BUDGET)
}

pub fn cover_number_budget(m: &CommMatrix, b: bool, budget: u64) -> Result<RectangleMeasure> {
    let Some(g) = collapse(m, b)? else {
        return Ok(fallback(m, b));
    };
    if g.rows.is_empty() {
        return Ok(RectangleMeasure {
            lower: 0,
            upper: 0,
            witness: Vec::new(),
            nodes: 0,
        });
    }
    // maximal rectangles: closed column sets and all rows containing them
    let mut closed: HashSet<u64> = HashSet::new();
    let mut list: Vec<u64> = Vec::new();
    for &r in &g.rows {
        let mut fresh = vec![r];
        fresh.extend(list.iter().map(|&s| s & r).filter(|&x| x != 0));
        for x in fresh {
            if closed.insert(x) {
                list.push(x);
                if list.len() > MAX_MAXIMAL_RECTANGLES {
                    return Ok(fallback(m, b));
                }
            }
        }
    }
    let mut rects: Vec<(u64, u64)> = list
        .iter()
        .map(|&cols| {
            let rows = g
                .rows
                .iter()
                .enumerate()
                .filter(|(_, &r)| r & cols == cols)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            (rows, cols)
        })
        .collect();
    rects.sort_by(|a, b| {
        let sa = a.0.count_ones() * a.1.count_ones();
        let sb = b.0.count_ones() * b.1.count_ones();
        sb.cmp(&sa).then(a.cmp(b))
    });

    let mut search = CoverSearch {
        g: &g,
        rects: &rects,
        best: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.best = search.greedy();
    let root_lower = fooling_bound(&g, &g.rows);
    let mut chosen = Vec::new();
    let uncovered = g.rows.clone();
    search.run(&uncovered, &mut chosen, root_lower);
    let lower = if search.exhausted { root_lower } else { search.best.len() };
    let witness = search
        .best
        .iter()
        .map(|&i| g.to_rectangle(rects[i].0, rects[i].1))
        .collect();
    Ok(RectangleMeasure {
        lower,
        upper: search.best.len(),
        witness,
        nodes: search.nodes,
    })
}

struct CoverSearch<'a> {
    g: &'a Grid,
    rects: &'a [(u64, u64)],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CoverSearch<'_> {
    fn apply(&self, uncovered: &[u64], i: usize) -> Vec<u64> {
        let (rows, cols) = self.rects[i];
        uncovered
            .iter()
            .enumerate()
            .map(|(r, &u)| if rows >> r & 1 == 1 { u & !cols } else { u })
            .collect()
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.g.rows.clone();
        let mut out = Vec::new();
        while uncovered.iter().any(|&u| u != 0) {
            let gain = |i: usize| -> u32 {
                let (rows, cols) = self.rects[i];
                bits(rows).map(|r| (uncovered[r] & cols).count_ones()).sum()
            };
            let best = (0..self.rects.len())
                .max_by(|&a, &b| gain(a).cmp(&gain(b)).then(b.cmp(&a)))
                .expect("rectangles cover every cell");
            uncovered = self.apply(&uncovered, best);
            out.push(best);
        }
        out
    }

    fn run(&mut self, uncovered: &[u64], chosen: &mut Vec<usize>, root_lower: usize) {
        if self.best.len() <= root_lower {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(r) = uncovered.iter().position(|&u| u != 0) else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        if chosen.len() + fooling_bound(self.g, uncovered) >= self.best.len() {
            return;
        }
        let c = uncovered[r].trailing_zeros() as usize;
        for i in 0..self.rects.len() {
            let (rows, cols) = self.rects[i];
            if rows >> r & 1 == 0 || cols >> c & 1 == 0 {
                continue;
            }
            let next = self.apply(uncovered, i);
            chosen.push(i);
            self.run(&next, chosen, root_lower);
            chosen.pop();
            if self.exhausted || self.best.len() <= root_lower {
                return;
            }
        }
    }
}

/// `Par_1(M)`: fewest pairwise disjoint 1-monochromatic rectangles covering all 1-entries.
pub fn partition_number(m: &CommMatrix) -> Result<RectangleMeasure> {
    partition_number_budget(m, DEFAULT_NODE_BUDGET)
}

pub fn partition_number_budget(m: &CommMatrix, budget: u64) -> Result<RectangleMeasure> {
    let Some(g) = collapse(m, true)? else {
        let mut fb = fallback(m, true);
        fb.lower = fb.lower.max(rational_rank(m));
        return Ok(fb);
    };
    let rank = rational_rank(m);
    let trivial: Vec<(u64, u64)> = g
        .rows
        .iter()
        .enumerate()
        .map(|(i, &cols)| (1u64 << i, cols))
        .collect();
    let mut search = PartitionSearch {
        g: &g,
        best: trivial,
        nodes: 0,
        budget,
        exhausted: false,
        root_lower: rank.max(fooling_bound(&g, &g.rows)),
        memo: HashMap::new(),
    };
    let mut chosen = Vec::new();
    let avail = g.rows.clone();
    search.run(&avail, &mut chosen);
    let lower = if search.exhausted {
        search.root_lower
    } else {
        search.best.len()
    };
    let witness = search
        .best
        .iter()
        .map(|&(rows, cols)| g.to_rectangle(rows, cols))
        .collect();
    Ok(RectangleMeasure {
        lower,
        upper: search.best.len(),
        witness,
        nodes: search.nodes,
    })
}

struct PartitionSearch<'a> {
    g: &'a Grid,
    best: Vec<(u64, u64)>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    root_lower: usize,
    /// fewest rectangles seen reaching a remaining-cell state
    memo: HashMap<Vec<u64>, usize>,
}

impl PartitionSearch<'_> {
    fn run(&mut self, avail: &[u64], chosen: &mut Vec<(u64, u64)>) {
        if self.best.len() <= self.root_lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(r) = avail.iter().position(|&u| u != 0) else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        let rest = &avail[r..];
        let lb = fooling_bound(self.g, avail).max(gf2_rank(rest));
        if chosen.len() + lb >= self.best.len() {
            return;
        }
        match self.memo.get(avail) {
            Some(&d) if d <= chosen.len() => return,
            _ => {
                if self.memo.len() < MAX_MEMO {
                    self.memo.insert(avail.to_vec(), chosen.len());
                }
            }
        }
        let Some(cands) = candidates(avail, r) else {
            self.exhausted = true;
            return;
        };
        for (rows, cols) in cands {
            let next: Vec<u64> = avail
                .iter()
                .enumerate()
                .map(|(i, &u)| if rows >> i & 1 == 1 { u & !cols } else { u })
                .collect();
            chosen.push((rows, cols));
            self.run(&next, chosen);
            chosen.pop();
            if self.exhausted || self.best.len() <= self.root_lower {
                return;
            }
        }
    }
}

/// Rectangles of available cells containing the first available cell `(r, c)`,
/// largest first; rows above `r` are exhausted so only rows `>= r` take part.
fn candidates(avail: &[u64], r: usize) -> Option<Vec<(u64, u64)>> {
    let s = avail[r];
    let c = s.trailing_zeros();
    let others = s & !(1u64 << c);
    let mut out = Vec::new();
    let mut sub = others;
    loop {
        let cols = sub | 1u64 << c;
        let extra_rows = avail
            .iter()
            .enumerate()
            .skip(r + 1)
            .filter(|(_, &u)| u & cols == cols)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        let mut rsub = extra_rows;
        loop {
            out.push((rsub | 1u64 << r, cols));
            if out.len() > MAX_CANDIDATES_PER_NODE {
                return None;
            }
            if rsub == 0 {
                break;
            }
            rsub = (rsub - 1) & extra_rows;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
    out.sort_by(|a, b| {
        let sa = a.0.count_ones() * a.1.count_ones();
        let sb = b.0.count_ones() * b.1.count_ones();
        sb.cmp(&sa).then(a.cmp(b))
    });
    Some(out)
}

/// Whether `rects` are `b`-monochromatic and cover every `b`-entry.
pub fn is_cover(m: &CommMatrix, b: bool, rects: &[Rectangle]) -> bool {
    let mono = rects.iter().all(|r| {
        r.rows.iter().all(|&i| i < m.rows())
            && r.cols.iter().all(|&j| j < m.cols())
            && r.cells().all(|(i, j)| m.is_one(i, j) == b)
    });
    mono && (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| m.is_one(i, j) != b || rects.iter().any(|r| r.contains(i, j)))
    })
}

/// [`is_cover`] for `b = 1` with pairwise disjoint rectangles.
pub fn is_partition(m: &CommMatrix, rects: &[Rectangle]) -> bool {
    is_cover(m, true, rects)
        && rects
            .iter()
            .enumerate()
            .all(|(i, a)| rects[i + 1..].iter().all(|b| !a.intersects(b)))
}
