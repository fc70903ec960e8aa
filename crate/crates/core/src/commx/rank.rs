use num_bigint::BigInt;
use num_traits::Zero;

use super::CommMatrix;
use crate::rational::{self, Rational};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rational_rank(m: &CommMatrix) -> usize {
    rank_of_rows(m.entries())
}

pub fn rank_of_rows(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = rational::lcm_of_denominators(row.iter());
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            for j in col + 1..ncols {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        assert_eq!(rational_rank(&CommMatrix::identity(4).unwrap()), 4);
        assert_eq!(rational_rank(&CommMatrix::ones(4, 3).unwrap()), 1);
        assert_eq!(rational_rank(&CommMatrix::co_identity(4).unwrap()), 4);
        assert_eq!(rational_rank(&CommMatrix::from_bit_rows(&["00", "00"]).unwrap()), 0);
        let m = vec![
            vec![ratio(1, 2), int(1), int(3)],
            vec![int(1), int(2), int(6)],
            vec![int(0), ratio(1, 3), int(1)],
        ];
        assert_eq!(rank_of_rows(&m), 2);
    }

    #[test]
    fn matches_gaussian_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let rows: Vec<Vec<Rational>> = (0..5)
                .map(|_| (0..4).map(|_| int(rng.gen_range(-2..=2))).collect())
                .collect();
            assert_eq!(rank_of_rows(&rows), gauss_rank(rows.clone()));
        }
    }

    fn gauss_rank(mut a: Vec<Vec<Rational>>) -> usize {
        let mut rank = 0;
        for col in 0..a[0].len() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank {
                    let f = &a[i][col] / &a[rank][col];
                    for j in 0..a[0].len() {
                        let v = &f * &a[rank][j];
                        a[i][j] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
