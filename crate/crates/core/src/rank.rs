//! Bijective ranking of `S_n` onto `0..n!`.
//!
//! Ranks are lexicographic Lehmer codes, so rank order is the lexicographic
//! order of one-line notation and the identity has rank 0. Both directions
//! are `O(n)`: ranking counts smaller used values with a popcount, and
//! unranking selects the k-th free value with a byte-wise select table.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Version stamp for reports; bump if the rank order ever changes.
pub const CODEC_VERSION: &str = "lehmer-lex/1";

/// Largest degree whose factorial fits in a `u64`.
pub const MAX_DEGREE: usize = 20;

const FACTORIALS: [u64; MAX_DEGREE + 1] = {
    let mut f = [1u64; MAX_DEGREE + 1];
    let mut k = 1;
    while k <= MAX_DEGREE {
        f[k] = f[k - 1] * k as u64;
        k += 1;
    }
    f
};

// SELECT_IN_BYTE[b][r] = index of the r-th set bit of b (8 if absent).
const SELECT_IN_BYTE: [[u8; 8]; 256] = {
    let mut table = [[8u8; 8]; 256];
    let mut b = 0;
    while b < 256 {
        let mut r = 0;
        let mut bit = 0;
        while bit < 8 {
            if b & (1 << bit) != 0 {
                table[b][r] = bit as u8;
                r += 1;
            }
            bit += 1;
        }
        b += 1;
    }
    table
};

pub fn factorial(n: usize) -> Option<u64> {
    FACTORIALS.get(n).copied()
}

#[inline]
fn below(v: u8) -> u32 {
    (1u32 << v) - 1
}

/// Position of the `r`-th (0-based) set bit of `mask`.
#[inline]
fn select(mask: u32, mut r: u32) -> u8 {
    for byte_idx in 0..4 {
        let byte = ((mask >> (8 * byte_idx)) & 0xff) as usize;
        let count = byte.count_ones();
        if r < count {
            return 8 * byte_idx as u8 + SELECT_IN_BYTE[byte][r as usize];
        }
        r -= count;
    }
    unreachable!("select past the last set bit")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCodec {
    n: usize,
}

impl RankCodec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { n, max: MAX_DEGREE });
        }
        Ok(RankCodec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n!`, the number of ranks.
    pub fn size(&self) -> u64 {
        FACTORIALS[self.n]
    }

    pub fn version(&self) -> &'static str {
        CODEC_VERSION
    }

    pub fn rank(&self, p: &Permutation) -> Result<u64> {
        if p.n() != self.n {
            return Err(Error::DegreeMismatch {
                left: p.n(),
                right: self.n,
            });
        }
        let mut buf = [0u8; MAX_DEGREE];
        for (dst, &v) in buf.iter_mut().zip(p.zero_based()) {
            *dst = v as u8;
        }
        Ok(self.rank_values(&buf[..self.n]))
    }

    pub fn unrank(&self, k: u64) -> Result<Permutation> {
        if k >= self.size() {
            return Err(Error::RankOutOfRange { rank: k, n: self.n });
        }
        let mut buf = [0u8; MAX_DEGREE];
        self.unrank_values(k, &mut buf[..self.n]);
        Ok(Permutation::from_zero_based(
            buf[..self.n].iter().map(|&v| v as usize).collect(),
        ))
    }

    /// Rank of 0-based one-line values.
    #[inline]
    pub(crate) fn rank_values(&self, values: &[u8]) -> u64 {
        let n = self.n;
        let mut used = 0u32;
        let mut rank = 0u64;
        for (k, &v) in values.iter().enumerate() {
            let digit = v as u32 - (used & below(v)).count_ones();
            rank += digit as u64 * FACTORIALS[n - 1 - k];
            used |= 1 << v;
        }
        rank
    }

    #[inline]
    pub(crate) fn unrank_values(&self, mut k: u64, out: &mut [u8]) {
        let n = self.n;
        let mut free = below(n as u8);
        for (pos, slot) in out.iter_mut().enumerate() {
            let f = FACTORIALS[n - 1 - pos];
            let digit = (k / f) as u32;
            k %= f;
            let v = select(free, digit);
            free &= !(1 << v);
            *slot = v;
        }
    }
}

/// An unranked permutation with the side tables needed to rank any
/// position swap of it in `O(j - i)` instead of `O(n)`.
pub(crate) struct LehmerState {
    n: usize,
    rank: u64,
    values: [u8; MAX_DEGREE],
    digits: [u8; MAX_DEGREE],
    // right[k] = set of values at positions > k
    right: [u32; MAX_DEGREE],
}

impl LehmerState {
    pub(crate) fn new(n: usize) -> Self {
        LehmerState {
            n,
            rank: 0,
            values: [0; MAX_DEGREE],
            digits: [0; MAX_DEGREE],
            right: [0; MAX_DEGREE],
        }
    }

    pub(crate) fn load(&mut self, rank: u64) {
        let n = self.n;
        self.rank = rank;
        let mut k = rank;
        let mut free = below(n as u8);
        for pos in 0..n {
            let f = FACTORIALS[n - 1 - pos];
            let digit = (k / f) as u32;
            k %= f;
            let v = select(free, digit);
            free &= !(1 << v);
            self.values[pos] = v;
            self.digits[pos] = digit as u8;
        }
        let mut acc = 0u32;
        for pos in (0..n).rev() {
            self.right[pos] = acc;
            acc |= 1 << self.values[pos];
        }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn values(&self) -> &[u8] {
        &self.values[..self.n]
    }

    /// Rank of the permutation with positions `i < j` (0-based) swapped.
    #[inline]
    pub(crate) fn swapped_rank(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < j && j < self.n);
        let n = self.n;
        let a = self.values[i];
        let b = self.values[j];
        let mut delta: i64 = 0;

        let new_i = (self.right[i] & below(b)).count_ones() as i64 + (a < b) as i64;
        delta += (new_i - self.digits[i] as i64) * FACTORIALS[n - 1 - i] as i64;

        for k in i + 1..j {
            let v = self.values[k];
            let change = (a < v) as i64 - (b < v) as i64;
            if change != 0 {
                delta += change * FACTORIALS[n - 1 - k] as i64;
            }
        }

        let new_j = (self.right[j] & below(a)).count_ones() as i64;
        delta += (new_j - self.digits[j] as i64) * FACTORIALS[n - 1 - j] as i64;

        (self.rank as i64 + delta) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn identity_has_rank_zero() {
        for n in 1..=MAX_DEGREE {
            let codec = RankCodec::new(n).unwrap();
            assert_eq!(codec.rank(&Permutation::identity(n)).unwrap(), 0);
            assert_eq!(codec.rank(&Permutation::reverse(n)).unwrap(), codec.size() - 1);
        }
    }

    #[test]
    fn exhaustive_round_trip_s5() {
        let codec = RankCodec::new(5).unwrap();
        for k in 0..codec.size() {
            let p = codec.unrank(k).unwrap();
            assert_eq!(codec.rank(&p).unwrap(), k);
        }
    }

    #[test]
    fn ranks_of_s4_are_exactly_0_to_23() {
        let codec = RankCodec::new(4).unwrap();
        let mut ranks = HashSet::new();
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    for d in 1..=4 {
                        if let Ok(p) = Permutation::new(vec![a, b, c, d]) {
                            ranks.insert(codec.rank(&p).unwrap());
                        }
                    }
                }
            }
        }
        assert_eq!(ranks, (0..24).collect());
    }

    #[test]
    fn bijection_up_to_six_and_lexicographic() {
        for n in 1..=6 {
            let codec = RankCodec::new(n).unwrap();
            let mut prev: Option<Vec<usize>> = None;
            let mut seen = HashSet::new();
            for k in 0..codec.size() {
                let p = codec.unrank(k).unwrap();
                assert!(seen.insert(p.clone()));
                let line = p.one_line();
                if let Some(prev) = prev {
                    assert!(prev < line);
                }
                prev = Some(line);
            }
            assert_eq!(seen.len() as u64, codec.size());
        }
    }

    #[test]
    fn out_of_range_and_degree_errors() {
        let codec = RankCodec::new(4).unwrap();
        assert_eq!(codec.unrank(24).unwrap_err(), Error::RankOutOfRange { rank: 24, n: 4 });
        assert!(codec.rank(&Permutation::identity(5)).is_err());
        assert!(RankCodec::new(21).is_err());
        assert!(RankCodec::new(0).is_err());
    }

    #[test]
    fn select_finds_each_set_bit() {
        let mask = 0b1011_0000_0000_0101_0010u32;
        let bits: Vec<u8> = (0..32).filter(|b| mask & (1 << b) != 0).collect();
        for (r, &b) in bits.iter().enumerate() {
            assert_eq!(select(mask, r as u32), b);
        }
    }

    #[test]
    fn swapped_rank_matches_full_rank_exhaustively() {
        for n in 2..=6 {
            let codec = RankCodec::new(n).unwrap();
            let mut state = LehmerState::new(n);
            for k in 0..codec.size() {
                state.load(k);
                for i in 0..n {
                    for j in i + 1..n {
                        let mut v = state.values().to_vec();
                        v.swap(i, j);
                        assert_eq!(state.swapped_rank(i, j), codec.rank_values(&v));
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip_large_degrees(n in 1usize..=MAX_DEGREE, seed in any::<u64>()) {
                let codec = RankCodec::new(n).unwrap();
                let k = seed % codec.size();
                let p = codec.unrank(k).unwrap();
                prop_assert_eq!(codec.rank(&p).unwrap(), k);
            }

            #[test]
            fn swapped_rank_large_degrees(n in 2usize..=MAX_DEGREE, seed in any::<u64>(), a in 0usize..MAX_DEGREE, b in 0usize..MAX_DEGREE) {
                let codec = RankCodec::new(n).unwrap();
                let (i, j) = (a % n, b % n);
                prop_assume!(i != j);
                let (i, j) = (i.min(j), i.max(j));
                let mut state = LehmerState::new(n);
                state.load(seed % codec.size());
                let mut v = state.values().to_vec();
                v.swap(i, j);
                prop_assert_eq!(state.swapped_rank(i, j), codec.rank_values(&v));
            }
        }
    }
}
