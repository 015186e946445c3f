use std::fmt;

use crate::error::{Error, Result};

/// Largest supported input arity; a table then holds 65,536 bits.
pub const MAX_ARITY: usize = 16;

/// The output column of an `n`-ary Boolean function.
///
/// Bit `v` holds `f(v)`, where the assignment `v` gives `x_1` as its
/// least-significant bit, `x_2` as the next bit, and so on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

const INPUT_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl TruthTable {
    fn check_arity(n: usize) -> Result<()> {
        if n > MAX_ARITY {
            return Err(Error::Capacity(format!(
                "arity {n} exceeds the supported maximum of {MAX_ARITY}"
            )));
        }
        Ok(())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::check_arity(n)?;
        Ok(TruthTable {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut t = Self::zero(n)?;
        t.words.iter_mut().for_each(|w| *w = u64::MAX);
        t.normalize();
        Ok(t)
    }

    /// The projection onto input `x_j` (1-based).
    pub fn input(n: usize, j: usize) -> Result<Self> {
        let mut t = Self::zero(n)?;
        if j == 0 || j > n {
            return Err(Error::InvalidCircuit(format!(
                "input x{j} out of range for arity {n}"
            )));
        }
        let bit = j - 1;
        for (w, word) in t.words.iter_mut().enumerate() {
            *word = if bit < 6 {
                INPUT_PATTERNS[bit]
            } else if (w >> (bit - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        t.normalize();
        Ok(t)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut t = Self::zero(n)?;
        for v in 0..(1u32 << n) {
            if f(v) {
                t.set(v, true);
            }
        }
        Ok(t)
    }

    /// Builds a table of arity `n <= 6` from the low `2^n` bits of `word`.
    pub fn from_word(n: usize, word: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Capacity(format!(
                "a single word holds at most 6 inputs, got {n}"
            )));
        }
        let mut t = TruthTable {
            n,
            words: vec![word],
        };
        t.normalize();
        Ok(t)
    }

    fn normalize(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.n);
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Number of rows, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, v: u32) -> bool {
        let v = v as usize;
        (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    pub fn set(&mut self, v: u32, value: bool) {
        let v = v as usize;
        let mask = 1u64 << (v & 63);
        if value {
            self.words[v >> 6] |= mask;
        } else {
            self.words[v >> 6] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn xor_assign(&mut self, other: &TruthTable) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn and_assign(&mut self, other: &TruthTable) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn not_assign(&mut self) {
        self.words.iter_mut().for_each(|w| *w = !*w);
        self.normalize();
    }

    /// Renders as `tt n=<n> <bits>` with row 0 first.
    pub fn to_text(&self) -> String {
        let mut s = format!("tt n={} ", self.n);
        s.extend((0..self.len() as u32).map(|v| if self.get(v) { '1' } else { '0' }));
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let line = text.trim();
        let rest = line
            .strip_prefix("tt")
            .ok_or_else(|| Error::parse(1, 1, "expected `tt`"))?;
        let rest = rest.trim_start();
        let rest = rest
            .strip_prefix("n=")
            .ok_or_else(|| Error::parse(1, 4, "expected `n=`"))?;
        let (num, bits) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(1, 6, "expected bit string after arity"))?;
        let n: usize = num
            .parse()
            .map_err(|_| Error::parse(1, 6, format!("bad arity `{num}`")))?;
        let bits = bits.trim();
        let mut t = Self::zero(n)?;
        if bits.len() != t.len() {
            return Err(Error::parse(
                1,
                line.len() - bits.len() + 1,
                format!("expected {} bits, found {}", t.len(), bits.len()),
            ));
        }
        let offset = line.len() - bits.len();
        for (v, c) in bits.chars().enumerate() {
            match c {
                '0' => {}
                '1' => t.set(v as u32, true),
                other => {
                    return Err(Error::parse(
                        1,
                        offset + v + 1,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
