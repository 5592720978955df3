use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORDS_PER_BLOCK: usize = 8;

/// Plain bitvector with a block-sampled rank directory. Positions are 1-based.
#[derive(Clone, PartialEq, Eq)]
pub struct RankSelectBitVector {
    len: usize,
    words: Vec<u64>,
    /// Ones before each block of `WORDS_PER_BLOCK` words.
    block_ones: Vec<usize>,
}

impl RankSelectBitVector {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        let mut block_ones = Vec::with_capacity(words.len() / WORDS_PER_BLOCK + 1);
        let mut acc = 0;
        for chunk in words.chunks(WORDS_PER_BLOCK) {
            block_ones.push(acc);
            acc += chunk.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        }
        block_ones.push(acc);
        RankSelectBitVector { len, words, block_ones }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        *self.block_ones.last().unwrap()
    }

    pub fn count(&self, bit: bool) -> usize {
        if bit {
            self.count_ones()
        } else {
            self.len - self.count_ones()
        }
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(Error::Query(format!("position {i} outside 1..{}", self.len)));
        }
        let p = i - 1;
        Ok(self.words[p / 64] >> (p % 64) & 1 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|p| self.words[p / 64] >> (p % 64) & 1 == 1)
    }

    fn rank1(&self, i: usize) -> usize {
        let (w, b) = (i / 64, i % 64);
        let block = w / WORDS_PER_BLOCK;
        let mut r = self.block_ones[block];
        for word in &self.words[block * WORDS_PER_BLOCK..w] {
            r += word.count_ones() as usize;
        }
        if b > 0 {
            r += (self.words[w] & ((1u64 << b) - 1)).count_ones() as usize;
        }
        r
    }

    /// Occurrences of `bit` among positions `1..=i`.
    pub fn rank(&self, i: usize, bit: bool) -> Result<usize> {
        if i > self.len {
            return Err(Error::Query(format!("rank position {i} beyond length {}", self.len)));
        }
        let ones = self.rank1(i);
        Ok(if bit { ones } else { i - ones })
    }

    /// Position of the `j`-th occurrence of `bit`.
    pub fn select(&self, j: usize, bit: bool) -> Result<usize> {
        if j == 0 || j > self.count(bit) {
            return Err(Error::Query(format!("select({j}) with {} occurrences", self.count(bit))));
        }
        let before_block = |b: usize| {
            let ones = self.block_ones[b];
            if bit {
                ones
            } else {
                b * WORDS_PER_BLOCK * 64 - ones
            }
        };
        // Last block whose prefix count is below j.
        let (mut lo, mut hi) = (0, self.block_ones.len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before_block(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = j - before_block(lo);
        for w in lo * WORDS_PER_BLOCK..self.words.len() {
            let word = if bit { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if c >= remaining {
                let mut word = word;
                for _ in 1..remaining {
                    word &= word - 1;
                }
                return Ok(w * 64 + word.trailing_zeros() as usize + 1);
            }
            remaining -= c;
        }
        unreachable!("select target lies within the vector")
    }

    /// Bits in the ASCII 0/1 form.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Size of the raw payload plus the rank directory, in bits.
    pub fn size_in_bits(&self) -> usize {
        self.words.len() * 64 + self.block_ones.len() * usize::BITS as usize
    }
}

impl FromStr for RankSelectBitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format(format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(bits))
    }
}

impl fmt::Debug for RankSelectBitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankSelectBitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for RankSelectBitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}
