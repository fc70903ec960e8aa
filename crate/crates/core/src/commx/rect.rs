use serde::{Deserialize, Serialize};

/// `rows x cols`, both sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Rectangle {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Rectangle { rows, cols }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols.is_empty()
    }

    pub fn size(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.rows.binary_search(&r).is_ok() && self.cols.binary_search(&c).is_ok()
    }

    pub fn intersects(&self, other: &Rectangle) -> bool {
        !self.is_empty()
            && !other.is_empty()
            && sorted_meet(&self.rows, &other.rows)
            && sorted_meet(&self.cols, &other.cols)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .flat_map(move |&r| self.cols.iter().map(move |&c| (r, c)))
    }
}

fn sorted_meet(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_and_cells() {
        let a = Rectangle::new(vec![2, 0], vec![1]);
        let b = Rectangle::new(vec![1, 2], vec![1, 3]);
        let c = Rectangle::new(vec![1], vec![0]);
        assert_eq!(a.rows, vec![0, 2]);
        assert!(a.intersects(&b));
        assert!(!a.intersects(&c));
        assert_eq!(b.cells().count(), 4);
        assert!(b.contains(2, 3));
        assert!(Rectangle::new(vec![], vec![1]).is_empty());
    }
}
