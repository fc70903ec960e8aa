//! Tables indexed by subcubes of `{0,1}^n`.
//!
//! A subcube is a ternary word: digit `p` (weight `3^p`) describes table-index
//! bit `p` and is 0, 1, or 2 (free). Values over all `3^n` subcubes are
//! filled in one pass by splitting on the lowest free digit.

use super::Conjunction;

pub(crate) struct CubeIndexer {
    n: usize,
    /// `spread[m] = sum_{p in m} 3^p`
    spread: Vec<usize>,
}

impl CubeIndexer {
    pub fn new(n: usize) -> Self {
        let mut spread = vec![0usize; 1 << n];
        let mut pow = 1usize;
        for p in 0..n {
            let bit = 1usize << p;
            for m in bit..(bit << 1) {
                spread[m] = spread[m - bit] + pow;
            }
            pow *= 3;
        }
        CubeIndexer { n, spread }
    }

    pub fn size(&self) -> usize {
        3usize.pow(self.n as u32)
    }

    /// Cube fixing the index bits in `care` to their values in `value`.
    #[inline]
    pub fn id(&self, care: usize, value: usize) -> usize {
        let full = (1usize << self.n) - 1;
        self.spread[value & care] + 2 * self.spread[full & !care]
    }

    pub fn id_of(&self, c: &Conjunction) -> usize {
        let (care, value) = c.index_masks(self.n);
        self.id(care, value)
    }

    /// Fills a table over all subcubes from point values and a merge of the two halves.
    pub fn fill<T: Clone>(
        &self,
        point: impl Fn(usize) -> T,
        merge: impl Fn(&T, &T) -> T,
    ) -> Vec<T> {
        let size = self.size();
        let mut out: Vec<T> = Vec::with_capacity(size);
        for id in 0..size {
            let mut rest = id;
            let mut pow = 1usize;
            let mut x = 0usize;
            let mut free = None;
            for p in 0..self.n {
                let d = rest % 3;
                rest /= 3;
                match d {
                    2 => {
                        free = Some(pow);
                        break;
                    }
                    1 => x |= 1 << p,
                    _ => {}
                }
                pow *= 3;
            }
            let v = match free {
                None => point(x),
                Some(pw) => merge(&out[id - 2 * pw], &out[id - pw]),
            };
            out.push(v);
        }
        out
    }
}
