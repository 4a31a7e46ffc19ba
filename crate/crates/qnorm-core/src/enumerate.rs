//! Dense indexing of bounded-length words, used by the exhaustive sweeps.
//!
//! Words of a fixed length are packed big-endian (the first letter is the
//! most significant digit), so ascending index order is lexicographic order
//! by letter index. That makes "first witness" deterministic everywhere.

use crate::words::{Letter, Word};

/// All words of one exact length over an alphabet of size `n`.
#[derive(Debug, Clone, Copy)]
pub struct Stratum {
    n: usize,
    len: usize,
    count: usize,
}

impl Stratum {
    pub fn new(alphabet_size: usize, len: usize) -> Self {
        assert!(alphabet_size > 0);
        let count = alphabet_size
            .checked_pow(len as u32)
            .expect("stratum too large to index");
        Stratum {
            n: alphabet_size,
            len,
            count,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn index(&self, w: &Word) -> usize {
        debug_assert_eq!(w.len(), self.len);
        w.iter().fold(0, |acc, l| acc * self.n + l.index())
    }

    pub fn word(&self, mut idx: usize) -> Word {
        let mut letters = vec![Letter(0); self.len];
        for k in (0..self.len).rev() {
            letters[k] = Letter((idx % self.n) as u16);
            idx /= self.n;
        }
        Word::from_letters(&letters)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.count).map(move |i| self.word(i))
    }
}

/// All words of length at most `max_len`, indexed by (length, lexicographic).
#[derive(Debug, Clone)]
pub struct Space {
    n: usize,
    offsets: Vec<usize>, // offsets[l] = index of the first length-l word
    total: usize,
}

impl Space {
    pub fn new(alphabet_size: usize, max_len: usize) -> Self {
        assert!(alphabet_size > 0);
        let mut offsets = Vec::with_capacity(max_len + 2);
        let mut total = 0usize;
        let mut stratum = 1usize;
        for _ in 0..=max_len {
            offsets.push(total);
            total = total.checked_add(stratum).expect("space too large");
            stratum = stratum
                .checked_mul(alphabet_size)
                .expect("space too large");
        }
        offsets.push(total);
        Space {
            n: alphabet_size,
            offsets,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max_len(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn index(&self, w: &Word) -> usize {
        let l = w.len();
        debug_assert!(l <= self.max_len());
        self.offsets[l] + w.iter().fold(0, |acc, x| acc * self.n + x.index())
    }

    pub fn word(&self, idx: usize) -> Word {
        let l = match self.offsets.binary_search(&idx) {
            Ok(mut k) => {
                // idx is the first word of some length; equal offsets occur
                // only for the degenerate repeated final entry
                while k + 1 < self.offsets.len() && self.offsets[k + 1] == idx {
                    k += 1;
                }
                k.min(self.max_len())
            }
            Err(k) => k - 1,
        };
        let mut rem = idx - self.offsets[l];
        let mut letters = vec![Letter(0); l];
        for k in (0..l).rev() {
            letters[k] = Letter((rem % self.n) as u16);
            rem /= self.n;
        }
        Word::from_letters(&letters)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.total).map(move |i| self.word(i))
    }
}
