//! Binary and ternary words.
//!
//! Both types parse from and print to compact literals: `"0110"` for binary
//! words and `"0?1?"` for ternary words, with `?` marking an erasure.

use std::fmt;
use std::ops::{Deref, DerefMut};
use std::str::FromStr;

use crate::error::Error;

/// A symbol of the error-and-erasure channel alphabet {0, ?, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Ternary {
    Zero = 0,
    One = 1,
    Erasure = 2,
}

impl Ternary {
    #[inline]
    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Ternary::Zero
        } else {
            Ternary::One
        }
    }

    #[inline]
    pub fn is_erasure(self) -> bool {
        self == Ternary::Erasure
    }

    /// The bit value, or `None` for an erasure.
    #[inline]
    pub fn bit(self) -> Option<u8> {
        match self {
            Ternary::Zero => Some(0),
            Ternary::One => Some(1),
            Ternary::Erasure => None,
        }
    }

    /// True when the symbol is the (non-erased) bit `b`.
    #[inline]
    pub fn is_bit(self, b: u8) -> bool {
        self as u8 == b
    }

    pub fn to_char(self) -> char {
        match self {
            Ternary::Zero => '0',
            Ternary::One => '1',
            Ternary::Erasure => '?',
        }
    }
}

impl TryFrom<char> for Ternary {
    type Error = Error;

    fn try_from(c: char) -> Result<Self, Error> {
        match c {
            '0' => Ok(Ternary::Zero),
            '1' => Ok(Ternary::One),
            '?' => Ok(Ternary::Erasure),
            other => Err(Error::Literal(format!("invalid ternary symbol {other:?}"))),
        }
    }
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A length-n word over {0, 1}, one byte per bit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    /// Wraps bits; every byte is reduced to its least significant bit.
    pub fn new(mut bits: Vec<u8>) -> Self {
        bits.iter_mut().for_each(|b| *b &= 1);
        BinaryWord(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BinaryWord(vec![0; n])
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn hamming_distance(&self, other: &[u8]) -> usize {
        hamming(&self.0, other)
    }

    pub fn to_ternary(&self) -> TernaryWord {
        TernaryWord(self.0.iter().map(|&b| Ternary::from_bit(b)).collect())
    }
}

impl Deref for BinaryWord {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl DerefMut for BinaryWord {
    fn deref_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }
}

impl From<Vec<u8>> for BinaryWord {
    fn from(v: Vec<u8>) -> Self {
        BinaryWord::new(v)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Literal(format!("invalid bit {other:?}"))),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(BinaryWord)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A length-n word over {0, ?, 1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TernaryWord(Vec<Ternary>);

impl TernaryWord {
    pub fn new(symbols: Vec<Ternary>) -> Self {
        TernaryWord(symbols)
    }

    pub fn erased(n: usize) -> Self {
        TernaryWord(vec![Ternary::Erasure; n])
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        TernaryWord(bits.iter().map(|&b| Ternary::from_bit(b)).collect())
    }

    pub fn into_inner(self) -> Vec<Ternary> {
        self.0
    }

    pub fn erasure_count(&self) -> usize {
        count_erasures(&self.0)
    }

    /// The bits of an erasure-free word.
    pub fn to_binary(&self) -> Option<BinaryWord> {
        self.0
            .iter()
            .map(|s| s.bit())
            .collect::<Option<Vec<u8>>>()
            .map(BinaryWord)
    }
}

impl Deref for TernaryWord {
    type Target = [Ternary];
    fn deref(&self) -> &[Ternary] {
        &self.0
    }
}

impl DerefMut for TernaryWord {
    fn deref_mut(&mut self) -> &mut [Ternary] {
        &mut self.0
    }
}

impl From<Vec<Ternary>> for TernaryWord {
    fn from(v: Vec<Ternary>) -> Self {
        TernaryWord(v)
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(Ternary::try_from)
            .collect::<Result<Vec<_>, _>>()
            .map(TernaryWord)
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

#[inline]
pub fn count_erasures(y: &[Ternary]) -> usize {
    y.iter().filter(|s| s.is_erasure()).count()
}

#[inline]
pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        let y: TernaryWord = "0?1?10".parse().unwrap();
        assert_eq!(y.erasure_count(), 2);
        assert_eq!(y.to_string(), "0?1?10");
        assert!(y.to_binary().is_none());
        let b: BinaryWord = "0110".parse().unwrap();
        assert_eq!(b.weight(), 2);
        assert_eq!(b.to_ternary().to_binary().unwrap(), b);
    }

    #[test]
    fn bad_literal() {
        assert!("01x".parse::<TernaryWord>().is_err());
        assert!("01?".parse::<BinaryWord>().is_err());
    }
}
