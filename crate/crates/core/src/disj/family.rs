//! Random separating families.
//!
//! `Z` separates `(S, T)` when `S ⊆ Z` and `Z ∩ T = ∅`. Sets are drawn
//! element by element from a ChaCha8 stream, one fair bit per element.
//!
//! ```text
//! zfamily 4 1 12 7
//! 1010
//! 0110
//! ...
//! ```
//!
//! Each line after the header is a set, character `j` standing for element `j`.

use std::thread;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_nk, k_subsets};
use crate::boolfn::text::{content_lines, parse_header, parse_usize};
use crate::error::{Error, Result};
use crate::rational::{binomial, ceil_to_int, int, ln_interval};

pub const DEFAULT_MAX_ATTEMPTS: u32 = 32;

/// Largest number of `(S, T)` pairs checked exhaustively.
pub const MAX_PAIRS: u64 = 1 << 26;

/// `ceil(4^k ln(C(n,k)^2))`, at least 1.
pub fn separation_ell(n: usize, k: usize) -> Result<usize> {
    check_nk(n, k)?;
    let c = binomial(n as u64, k as u64);
    let scale = BigInt::from(1u8) << (2 * k);
    let sq = int(c as i64) * int(c as i64);
    for bits in [64u32, 128, 256, 512] {
        let ln = ln_interval(&sq, bits)?;
        let lo = ceil_to_int(&(&ln.lo * &scale));
        let hi = ceil_to_int(&(&ln.hi * &scale));
        if lo == hi {
            let v = lo
                .to_usize()
                .ok_or_else(|| Error::Resource("family size overflows".into()))?;
            return Ok(v.max(1));
        }
    }
    Err(Error::Internal("could not resolve the ceiling".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingFamily {
    n: usize,
    k: usize,
    sets: Vec<u64>,
    seed: u64,
    attempts: u32,
    verified: bool,
}

impl SeparatingFamily {
    /// An unverified family; `sets` are masks with element `i` on bit `i - 1`.
    pub fn new(n: usize, k: usize, sets: Vec<u64>, seed: u64) -> Result<Self> {
        check_nk(n, k)?;
        if sets.iter().any(|&z| n < 64 && z >> n != 0) {
            return Err(Error::Parameter("set outside the universe".into()));
        }
        Ok(SeparatingFamily {
            n,
            k,
            sets,
            seed,
            attempts: 0,
            verified: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    /// Seed of the draw that produced the sets.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Draws used by the sampler, 0 for families built by hand or parsed.
    pub fn attempts(&self) -> u32 {
        self.attempts
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Index of some set separating `(s, t)`.
    pub fn separator(&self, s: u64, t: u64) -> Option<usize> {
        self.sets.iter().position(|&z| s & !z == 0 && z & t == 0)
    }

    /// First disjoint pair of `k`-sets no member separates.
    pub fn find_unseparated(&self) -> Result<Option<(u64, u64)>> {
        let subsets = k_subsets(self.n, self.k)?;
        let pairs = (subsets.len() as u64).saturating_mul(subsets.len() as u64);
        if pairs > MAX_PAIRS {
            return Err(Error::Resource(format!("{pairs} pairs to verify")));
        }
        let workers = thread::available_parallelism().map_or(1, |w| w.get()).min(subsets.len().max(1));
        let chunk = subsets.len().div_ceil(workers).max(1);
        let found = thread::scope(|scope| {
            let handles: Vec<_> = subsets
                .chunks(chunk)
                .map(|rows| {
                    let subsets = &subsets;
                    scope.spawn(move || {
                        rows.iter().find_map(|&s| {
                            subsets
                                .iter()
                                .find(|&&t| s & t == 0 && self.separator(s, t).is_none())
                                .map(|&t| (s, t))
                        })
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification worker panicked"))
                .collect::<Vec<_>>()
        });
        Ok(found.into_iter().flatten().next())
    }

    /// Checks separation of every disjoint pair and records the outcome.
    pub fn verify(&mut self) -> Result<bool> {
        self.verified = self.find_unseparated()?.is_none();
        Ok(self.verified)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("zfamily {} {} {} {}\n", self.n, self.k, self.ell(), self.seed);
        for &z in &self.sets {
            out.extend((0..self.n).map(|i| if z >> i & 1 == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }
}

fn draw(n: usize, ell: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..ell)
        .map(|_| (0..n).fold(0u64, |z, i| if rng.gen::<bool>() { z | 1 << i } else { z }))
        .collect()
}

/// Samples `separation_ell(n, k)` sets, retrying with `seed + 1, seed + 2, ...`.
pub fn sample_separating_sets(n: usize, k: usize, seed: u64) -> Result<SeparatingFamily> {
    sample_separating_sets_with(n, k, seed, None, DEFAULT_MAX_ATTEMPTS)
}

pub fn sample_separating_sets_with(
    n: usize,
    k: usize,
    seed: u64,
    ell: Option<usize>,
    max_attempts: u32,
) -> Result<SeparatingFamily> {
    check_nk(n, k)?;
    let c = binomial(n as u64, k as u64);
    if c.saturating_mul(c) > MAX_PAIRS {
        return Err(Error::Resource(format!("{c}^2 pairs to verify")));
    }
    let ell = match ell {
        Some(l) => l,
        None => separation_ell(n, k)?,
    };
    for attempt in 0..max_attempts {
        let s = seed.wrapping_add(u64::from(attempt));
        let mut fam = SeparatingFamily::new(n, k, draw(n, ell, s), s)?;
        if fam.verify()? {
            fam.attempts = attempt + 1;
            return Ok(fam);
        }
    }
    Err(Error::ProbabilisticFailure {
        attempts: max_attempts,
        ell,
    })
}

/// The parsed family is unverified.
pub fn parse_family(s: &str) -> Result<SeparatingFamily> {
    let mut lines = content_lines(s);
    let (line, args) = parse_header(&mut lines, "zfamily")?;
    if args.len() != 4 {
        return Err(Error::parse(line, "expected `zfamily <n> <k> <ell> <seed>`"));
    }
    let n = parse_usize(line, &args[0], "universe size")?;
    let k = parse_usize(line, &args[1], "set size")?;
    let ell = parse_usize(line, &args[2], "family size")?;
    let seed: u64 = args[3]
        .parse()
        .map_err(|_| Error::parse(line, format!("bad seed {:?}", args[3])))?;
    check_nk(n, k).map_err(|e| Error::parse(line, e.to_string()))?;
    let mut sets = Vec::with_capacity(ell);
    for (l, text) in lines {
        if text.len() != n {
            return Err(Error::parse(l, format!("set needs {n} characters")));
        }
        let mut z = 0u64;
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => z |= 1 << i,
                _ => return Err(Error::parse(l, "bitstring expected")),
            }
        }
        sets.push(z);
    }
    if sets.len() != ell {
        return Err(Error::parse(line, format!("header announces {ell} sets, found {}", sets.len())));
    }
    SeparatingFamily::new(n, k, sets, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_values() {
        assert_eq!(separation_ell(4, 1).unwrap(), 12);
        assert_eq!(separation_ell(4, 2).unwrap(), 58);
        assert_eq!(separation_ell(6, 2).unwrap(), 87);
        assert_eq!(separation_ell(5, 0).unwrap(), 1);
        assert_eq!(separation_ell(3, 3).unwrap(), 1);
        // against floating point away from integers
        for (n, k) in [(8, 2), (10, 3), (16, 4)] {
            let c = binomial(n, k) as f64;
            let f = 4f64.powi(k as i32) * (c * c).ln();
            assert_eq!(separation_ell(n as usize, k as usize).unwrap(), f.ceil() as usize);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_separating_sets(6, 2, 11).unwrap();
        let b = sample_separating_sets(6, 2, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.is_verified());
        assert!(a.attempts() >= 1 && a.attempts() <= DEFAULT_MAX_ATTEMPTS);
        assert_eq!(a.ell(), 87);
        assert_eq!(draw(6, 87, a.seed()), a.sets());
    }

    #[test]
    fn large_instances_refused_before_drawing() {
        assert!(matches!(sample_separating_sets(20, 10, 0), Err(Error::Resource(_))));
    }

    #[test]
    fn failure_reports_budget() {
        // one set never separates both (S,T) and (T,S)
        let e = sample_separating_sets_with(4, 1, 3, Some(1), 5).unwrap_err();
        assert_eq!(e, Error::ProbabilisticFailure { attempts: 5, ell: 1 });
    }

    #[test]
    fn verification_finds_gaps() {
        let mut f = SeparatingFamily::new(3, 1, vec![0b001, 0b010], 0).unwrap();
        assert!(!f.verify().unwrap());
        assert_eq!(f.find_unseparated().unwrap(), Some((0b100, 0b001)));
        let mut g = SeparatingFamily::new(3, 1, vec![0b001, 0b010, 0b100], 0).unwrap();
        assert!(g.verify().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let f = sample_separating_sets(4, 1, 5).unwrap();
        let text = f.to_text();
        assert!(text.starts_with(&format!("zfamily 4 1 12 {}\n", f.seed())));
        let mut g = parse_family(&text).unwrap();
        assert!(!g.is_verified());
        assert!(g.verify().unwrap());
        assert_eq!(g.sets(), f.sets());
        assert!(parse_family("zfamily 4 1 2 0\n1000\n").is_err());
        assert!(parse_family("zfamily 4 1 1 0\n100\n").is_err());
        assert!(parse_family("zfamily 4 5 0 0\n").is_err());
    }
}
