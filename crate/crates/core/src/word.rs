//! Fixed-length words over a small integer alphabet.

use crate::error::{Error, Result};

/// A fixed-length sequence of symbols drawn from `{0..A-1}`.
///
/// Binary words (`A = 2`) double as vectors over GF(2); symbol values above
/// 1 appear for channels with larger output alphabets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    /// All-zero word of length `n`.
    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// True if every symbol is strictly below `alphabet`.
    pub fn fits_alphabet(&self, alphabet: usize) -> bool {
        self.0.iter().all(|&s| (s as usize) < alphabet)
    }

    /// Binary word from the low `n` bits of `value`; bit `i` becomes symbol `i`.
    pub fn from_bits(value: u64, n: usize) -> Self {
        Word((0..n).map(|i| ((value >> i) & 1) as u8).collect())
    }

    /// Packs a binary word back into a `u64` (requires `len <= 64`, symbols `< 2`).
    pub fn to_bits(&self) -> u64 {
        debug_assert!(self.len() <= 64 && self.fits_alphabet(2));
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &s)| acc | ((s as u64) << i))
    }

    /// Rank of this word in the lexicographic enumeration of `alphabet^n`
    /// (symbol `i` is the digit of weight `alphabet^i`).
    pub fn to_rank(&self, alphabet: usize) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0u64, |acc, &s| acc * alphabet as u64 + s as u64)
    }

    pub fn from_rank(mut rank: u64, alphabet: usize, n: usize) -> Self {
        let mut symbols = Vec::with_capacity(n);
        for _ in 0..n {
            symbols.push((rank % alphabet as u64) as u8);
            rank /= alphabet as u64;
        }
        Word(symbols)
    }

    /// Number of non-zero symbols (Hamming weight for binary words).
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    /// Hamming distance; lengths must match.
    pub fn distance(&self, other: &Word) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Componentwise XOR for binary words.
    pub fn xor(&self, other: &Word) -> Word {
        debug_assert_eq!(self.len(), other.len());
        Word(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Componentwise complement for binary words.
    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|&s| s ^ 1).collect())
    }

    /// One hex digit per symbol (alphabet up to 16), symbol 0 first.
    pub fn to_hex(&self) -> String {
        self.0
            .iter()
            .map(|&s| char::from_digit(s as u32, 16).expect("symbol < 16"))
            .collect()
    }

    pub fn from_hex(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| {
                c.to_digit(16)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::domain(format!("invalid hex symbol {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Word({})", self.to_hex())
    }
}
