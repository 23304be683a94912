//! Word-packed binary vectors.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A binary vector of fixed length packed into `u64` words, bit `i` of the
/// vector at bit `i % 64` of word `i / 64`. Padding bits are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    words: Vec<u64>,
}

/// Gray image of a codeword (concatenated-halves layout).
pub type GrayWord = BitWord;

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Wraps raw words; padding bits beyond `len` must be clear.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len));
        let w = Self { len, words };
        debug_assert!(w.padding_clear());
        w
    }

    fn padding_clear(&self) -> bool {
        match (self.len % 64, self.words.last()) {
            (0, _) | (_, None) => true,
            (r, Some(&last)) => last >> r == 0,
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        popcount(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitWord) {
        debug_assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    pub fn try_xor_assign(&mut self, other: &BitWord) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        self.xor_assign(other);
        Ok(())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitWord) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    /// Indices of set bits, increasing.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        ones(&self.words)
    }

    /// Lowercase hex of the bits in order, four bits per digit with bit 0 as
    /// the most significant bit of the first digit.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for chunk in 0..self.len.div_ceil(4) {
            let mut nibble = 0u8;
            for j in 0..4 {
                let i = chunk * 4 + j;
                nibble = nibble << 1 | (i < self.len && self.get(i)) as u8;
            }
            write!(out, "{nibble:x}").unwrap();
        }
        out
    }
}

/// `support(y) ⊆ support(x)` on raw packed words.
#[inline]
pub fn covers_words(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).all(|(a, b)| b & !a == 0)
}

#[inline]
pub fn popcount(words: &[u64]) -> u32 {
    words.iter().map(|w| w.count_ones()).sum()
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Set-bit positions of a packed word slice.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                wi * 64 + b
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut w = BitWord::zeros(130);
        assert!(w.is_zero());
        w.set(0, true);
        w.set(64, true);
        w.set(129, true);
        assert_eq!(w.weight(), 3);
        assert_eq!(w.support().collect::<Vec<_>>(), vec![0, 64, 129]);
        w.set(64, false);
        assert!(!w.get(64));
        assert_eq!(w.weight(), 2);
    }

    #[test]
    fn hex_layout() {
        let w = BitWord::from_bits([true, false, false, false, false, true, true]);
        assert_eq!(w.to_hex(), "86");
    }

    #[test]
    fn mismatched_xor_rejected() {
        let mut a = BitWord::zeros(10);
        assert!(matches!(
            a.try_xor_assign(&BitWord::zeros(11)),
            Err(Error::LengthMismatch {
                left: 10,
                right: 11
            })
        ));
    }

    proptest! {
        #[test]
        fn from_bits_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
            let w = BitWord::from_bits(bits.iter().copied());
            prop_assert_eq!(w.len(), bits.len());
            prop_assert!(w.padding_clear());
            for (i, &b) in bits.iter().enumerate() {
                prop_assert_eq!(w.get(i), b);
            }
            prop_assert_eq!(w.weight() as usize, bits.iter().filter(|&&b| b).count());
        }

        #[test]
        fn covers_is_subset(a in proptest::collection::vec(any::<bool>(), 70),
                            b in proptest::collection::vec(any::<bool>(), 70)) {
            let x = BitWord::from_bits(a.iter().copied());
            let y = BitWord::from_bits(b.iter().copied());
            let subset = a.iter().zip(&b).all(|(&p, &q)| !q || p);
            prop_assert_eq!(covers_words(x.words(), y.words()), subset);
        }
    }
}
