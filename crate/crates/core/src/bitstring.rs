//! Fixed-length bit strings packed into 64-bit words.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A genotype `x ∈ {0,1}^n`. The length is fixed at construction.
///
/// Bits beyond `len` in the last word are always zero, so derived equality,
/// ordering and hashing only depend on the visible bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: alloc::vec![0; words_for(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self {
            words: alloc::vec![u64::MAX; words_for(len)],
            len,
        };
        s.clear_tail();
        s
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        s
    }

    /// Uniformly random string: one `u64` draw per storage word.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = Self {
            words: (0..words_for(len)).map(|_| rng.gen::<u64>()).collect(),
            len,
        };
        s.clear_tail();
        s
    }

    /// String of length `len` whose first `ones` positions are set.
    pub fn with_leading_ones(len: usize, ones: usize) -> Self {
        let mut s = Self::zeros(len);
        for i in 0..ones.min(len) {
            s.set(i, true);
        }
        s
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
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// `|x|_1`
    #[inline]
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|x|_0`
    #[inline]
    pub fn zeros_count(&self) -> usize {
        self.len - self.ones_count()
    }

    /// Number of set bits in the half-open position range.
    pub fn ones_in(&self, range: Range<usize>) -> usize {
        assert!(range.start <= range.end && range.end <= self.len);
        let mut count = 0;
        let mut i = range.start;
        while i < range.end {
            let word = i / WORD_BITS;
            let offset = i % WORD_BITS;
            let take = (WORD_BITS - offset).min(range.end - i);
            let mask = if take == WORD_BITS {
                u64::MAX
            } else {
                ((1u64 << take) - 1) << offset
            };
            count += (self.words[word] & mask).count_ones() as usize;
            i += take;
        }
        count
    }

    pub fn complement(&self) -> Self {
        let mut s = Self {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        s.clear_tail();
        s
    }

    /// Bitwise XOR with a flip mask of the same length.
    pub fn xor(&self, mask: &BitString) -> Result<Self> {
        if mask.len != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: mask.len,
            });
        }
        Ok(Self {
            words: self
                .words
                .iter()
                .zip(&mask.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            len: self.len,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
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

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Parses strings of `0`/`1`; whitespace and `_` are ignored as separators.
impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '_' => {}
                _ => {
                    return Err(Error::InvalidSpec(alloc::format!(
                        "unexpected character {c:?} in bit string"
                    )))
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }
}
