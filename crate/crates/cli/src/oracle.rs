//! Brute-force references used by the reproduction suites.
//!
//! These deliberately share no code with the searches in `ufalab::commx` and
//! `ufalab::boolfn`: rectangles are enumerated as cell bitmasks and optima
//! come from memoized recursion over the set of cells still to be handled.

use std::collections::HashMap;

/// A boolean matrix with at most 32 cells, cell `(i, j)` on bit `i * cols + j`.
#[derive(Debug, Clone, Copy)]
pub struct SmallMatrix {
    pub rows: usize,
    pub cols: usize,
    pub ones: u32,
}

impl SmallMatrix {
    pub fn new(rows: usize, cols: usize, ones: u32) -> Self {
        assert!(rows * cols <= 32);
        SmallMatrix { rows, cols, ones }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.ones >> (i * self.cols + j) & 1 == 1
    }

    fn all(&self) -> u32 {
        if self.rows * self.cols == 32 {
            u32::MAX
        } else {
            (1u32 << (self.rows * self.cols)) - 1
        }
    }

    pub fn complement(&self) -> SmallMatrix {
        SmallMatrix::new(self.rows, self.cols, !self.ones & self.all())
    }

    /// Every nonempty combinatorial rectangle inside `target`.
    fn rectangles_in(&self, target: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for rs in 1u32..1 << self.rows {
            for cs in 1u32..1 << self.cols {
                let mut mask = 0u32;
                for i in (0..self.rows).filter(|i| rs >> i & 1 == 1) {
                    for j in (0..self.cols).filter(|j| cs >> j & 1 == 1) {
                        mask |= 1 << (i * self.cols + j);
                    }
                }
                if mask & !target == 0 {
                    out.push(mask);
                }
            }
        }
        out
    }
}

fn solve(left: u32, rects: &[u32], disjoint: bool, memo: &mut HashMap<u32, usize>) -> usize {
    if left == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&left) {
        return v;
    }
    let cell = left & left.wrapping_neg();
    let mut best = usize::MAX;
    for &r in rects.iter().filter(|&&r| r & cell != 0) {
        if disjoint && r & !left != 0 {
            continue;
        }
        let v = solve(left & !r, rects, disjoint, memo);
        best = best.min(v.saturating_add(1));
    }
    memo.insert(left, best);
    best
}

/// Fewest rectangles inside the `value`-cells whose union is all `value`-cells.
pub fn min_cover(m: &SmallMatrix, value: bool) -> usize {
    let m = if value { *m } else { m.complement() };
    let rects = m.rectangles_in(m.ones);
    solve(m.ones, &rects, false, &mut HashMap::new())
}

/// Fewest pairwise disjoint rectangles partitioning the 1-cells.
pub fn min_partition(m: &SmallMatrix) -> usize {
    let rects = m.rectangles_in(m.ones);
    solve(m.ones, &rects, true, &mut HashMap::new())
}

/// Least `k` such that every `x` with `f(x) = value` has `k` coordinates forcing the value.
pub fn certificate_width(n: usize, table: &[bool], value: bool) -> usize {
    let mut worst = 0;
    for x in (0..1usize << n).filter(|&x| table[x] == value) {
        let best = (0..1usize << n)
            .filter(|&s| (0..1usize << n).all(|y| (y ^ x) & s != 0 || table[y] == value))
            .map(|s| s.count_ones() as usize)
            .min()
            .expect("all coordinates always force");
        worst = worst.max(best);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // J - I on 3x3
        let mut ones = 0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    ones |= 1 << (i * 3 + j);
                }
            }
        }
        let m = SmallMatrix::new(3, 3, ones);
        assert_eq!(min_partition(&m), 3);
        assert_eq!(min_cover(&m, true), 3);
        assert_eq!(min_cover(&m, false), 3);
        let i2 = SmallMatrix::new(2, 2, 0b1001);
        assert_eq!(min_cover(&i2, false), 2);
        assert_eq!(min_partition(&SmallMatrix::new(2, 2, 0)), 0);
        assert_eq!(min_partition(&SmallMatrix::new(2, 2, 0b1111)), 1);
        let s = SmallMatrix::new(2, 3, 0b110_011);
        assert_eq!(min_cover(&s, true), 2);
        assert_eq!(min_partition(&s), 2);
    }

    #[test]
    fn certificate_widths() {
        // OR of two bits: indices 00,01,10,11
        let or = [false, true, true, true];
        assert_eq!(certificate_width(2, &or, true), 1);
        assert_eq!(certificate_width(2, &or, false), 2);
        let xor = [false, true, true, false];
        assert_eq!(certificate_width(2, &xor, true), 2);
    }
}
