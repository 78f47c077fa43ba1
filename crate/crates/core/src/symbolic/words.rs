//! Dense indexing of the words `eta^r * x_1 ... x_k` of a fixed degree
//! `k - r`, with letters stored as discrete logs. Words are grouped by `r`;
//! within a level the letters are read as a base `q - 1` numeral, first
//! letter most significant.

use serde::Serialize;

use super::Theory;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct WordIndex {
    pub theory: Theory,
    pub degree: i64,
    pub r_min: u32,
    pub r_max: u32,
    pub base: u64,
    offsets: Vec<usize>,
    total: usize,
}

/// Smallest eta power available in degree `n`.
pub fn eta_floor(theory: Theory, n: i64) -> u32 {
    match theory {
        Theory::KM => 0,
        _ => (-n).max(0) as u32,
    }
}

impl WordIndex {
    /// Levels `r_min ..= max(r_min + eta_max, letter_floor - n)`: the top
    /// level always carries at least `letter_floor` letters.
    pub fn new(theory: Theory, base: u64, n: i64, eta_max: u32, letter_floor: u32, cap: usize) -> Result<Self> {
        let r_min = eta_floor(theory, n);
        let r_max = match theory {
            Theory::KM => 0,
            _ => (r_min + eta_max).max((letter_floor as i64 - n).max(0) as u32),
        };
        let mut offsets = Vec::new();
        let mut total = 0usize;
        if theory != Theory::KM || n >= 0 {
            for r in r_min..=r_max {
                offsets.push(total);
                let k = n + r as i64;
                let count = (base as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
                if total as u128 + count > cap as u128 {
                    let count = usize::try_from(total as u128 + count).unwrap_or(usize::MAX);
                    return Err(Error::TruncationOverflow { count, cap });
                }
                total += count as usize;
            }
        }
        Ok(WordIndex { theory, degree: n, r_min, r_max, base, offsets, total })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn letters_at(&self, r: u32) -> usize {
        (self.degree + r as i64) as usize
    }

    pub fn contains_level(&self, r: u32) -> bool {
        !self.offsets.is_empty() && (self.r_min..=self.r_max).contains(&r)
    }

    /// Offset of level `r`; the caller guarantees `contains_level(r)`.
    pub fn offset(&self, r: u32) -> usize {
        self.offsets[(r - self.r_min) as usize]
    }

    pub fn index(&self, r: u32, letters: &[u32]) -> Option<usize> {
        if !self.contains_level(r) || letters.len() != self.letters_at(r) {
            return None;
        }
        let mut v = 0usize;
        for &l in letters {
            if l as u64 >= self.base {
                return None;
            }
            v = v * self.base as usize + l as usize;
        }
        Some(self.offset(r) + v)
    }

    pub fn word(&self, i: usize) -> (u32, Vec<u32>) {
        let lvl = self.offsets.partition_point(|&o| o <= i) - 1;
        let r = self.r_min + lvl as u32;
        let k = self.letters_at(r);
        let mut v = i - self.offsets[lvl];
        let mut letters = vec![0u32; k];
        for slot in letters.iter_mut().rev() {
            *slot = (v % self.base as usize) as u32;
            v /= self.base as usize;
        }
        (r, letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let w = WordIndex::new(Theory::MWK, 6, -1, 2, 0, 1000).unwrap();
        assert_eq!(w.len(), 1 + 6 + 36);
        let w = WordIndex::new(Theory::MWK, 6, -1, 1, 2, 1000).unwrap();
        assert_eq!(w.r_max, 3);
        for i in 0..w.len() {
            let (r, l) = w.word(i);
            assert_eq!(w.index(r, &l), Some(i));
        }
        assert!(WordIndex::new(Theory::WK, 6, 3, 3, 0, 1000).is_err());
        assert!(WordIndex::new(Theory::KM, 6, -1, 0, 4, 10).unwrap().is_empty());
    }
}
