//! Fixed-length bit strings used as search points.
//!
//! Bit `j` set means ground-set element `j` is selected. The length is fixed
//! at construction; every mutating operation keeps it.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    /// The all-zeros string `0^n`.
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// The all-ones string `1^n`.
    pub fn ones(len: usize) -> Self {
        let mut x = Self::zeros(len);
        for w in x.words.iter_mut() {
            *w = u64::MAX;
        }
        x.clear_tail();
        x
    }

    /// Builds a string of length `len` with the given positions set.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Result<Self> {
        let mut x = Self::zeros(len);
        for j in indices {
            if j >= len {
                return Err(Error::contract(format!(
                    "index {j} out of range for bit string of length {len}"
                )));
            }
            x.set(j, true);
        }
        Ok(x)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut x = Self::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b {
                x.set(j, true);
            }
        }
        x
    }

    /// Lowest `len` bits of `mask`; handy for enumerating small ground sets.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "from_mask supports at most 64 bits");
        let mut x = Self::zeros(len);
        if len > 0 {
            x.words[0] = mask;
            x.clear_tail();
        }
        x
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        self.words[j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        debug_assert!(j < self.len);
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.words[j / WORD_BITS] |= mask;
        } else {
            self.words[j / WORD_BITS] &= !mask;
        }
    }

    /// Flips bit `j` and returns its new value.
    #[inline]
    pub fn flip(&mut self, j: usize) -> bool {
        debug_assert!(j < self.len);
        self.words[j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
        self.get(j)
    }

    /// `|x|_1`
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    /// `true` if every bit set in `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitString) -> bool {
        self.len == other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_count_tracks_sets_and_flips() {
        let mut x = BitString::zeros(130);
        assert_eq!(x.ones_count(), 0);
        x.set(0, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.ones_count(), 3);
        assert!(!x.flip(64));
        assert_eq!(x.ones_count(), 2);
        assert_eq!(x.iter_ones().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(x.len(), 130);
    }

    #[test]
    fn ones_has_no_stray_tail_bits() {
        let x = BitString::ones(70);
        assert_eq!(x.ones_count(), 70);
        assert_eq!(BitString::from_mask(3, u64::MAX).ones_count(), 3);
    }

    #[test]
    fn from_indices_rejects_out_of_range() {
        assert!(BitString::from_indices(4, [1, 3]).is_ok());
        assert!(matches!(
            BitString::from_indices(4, [4]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn subset_relation() {
        let a = BitString::from_indices(10, [1, 2]).unwrap();
        let b = BitString::from_indices(10, [1, 2, 7]).unwrap();
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(BitString::zeros(10).is_subset_of(&a));
    }

    #[test]
    fn display_is_bit_order() {
        let x = BitString::from_indices(5, [0, 3]).unwrap();
        assert_eq!(x.to_string(), "10010");
    }
}
