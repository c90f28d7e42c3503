//! Binary (±1) sequences and their plain-text representation.
//!
//! A sequence `(f_0, ..., f_{l-1})` is identified with the polynomial
//! `f(z) = f_0 + f_1 z + ... + f_{l-1} z^{l-1}`. The text format writes one
//! sequence per line using `+` and `-`; lines starting with `#` are comments.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("a binary sequence must have at least one term")]
    Empty,
    #[error("term {index} is {value}, expected +1 or -1")]
    InvalidTerm { index: usize, value: i64 },
    #[error("line {line}: unexpected character {ch:?} (only '+' and '-' are allowed)")]
    InvalidChar { line: usize, ch: char },
    #[error("expected {expected} sequence(s), found {found}")]
    Arity { expected: usize, found: usize },
}

/// A finite sequence of terms in {+1, -1}, never empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence(Vec<i8>);

impl BinarySequence {
    pub fn new(terms: Vec<i8>) -> Result<Self, SequenceError> {
        if terms.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some((index, &v)) = terms.iter().enumerate().find(|(_, &v)| v != 1 && v != -1) {
            return Err(SequenceError::InvalidTerm {
                index,
                value: v as i64,
            });
        }
        Ok(BinarySequence(terms))
    }

    /// Builds a sequence from any iterator of ±1 integers.
    pub fn from_signs<I>(signs: I) -> Result<Self, SequenceError>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut terms = Vec::new();
        for (index, v) in signs.into_iter().enumerate() {
            match v {
                1 => terms.push(1),
                -1 => terms.push(-1),
                value => return Err(SequenceError::InvalidTerm { index, value }),
            }
        }
        Self::new(terms)
    }

    /// Term `j` is `-1` when bit `j` of `mask` is set, `+1` otherwise.
    pub fn from_mask(mask: u64, len: usize) -> Result<Self, SequenceError> {
        if len == 0 {
            return Err(SequenceError::Empty);
        }
        assert!(len <= 64, "mask sequences are limited to 64 terms");
        Ok(BinarySequence(
            (0..len)
                .map(|j| if (mask >> j) & 1 == 1 { -1 } else { 1 })
                .collect(),
        ))
    }

    /// Inverse of [`BinarySequence::from_mask`]; `None` beyond 64 terms.
    pub fn to_mask(&self) -> Option<u64> {
        if self.0.len() > 64 {
            return None;
        }
        Some(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &t)| t < 0)
                .fold(0u64, |m, (j, _)| m | (1 << j)),
        )
    }

    /// Constant `+1` sequence of length `len` (panics on zero length).
    pub fn ones(len: usize) -> Self {
        assert!(len > 0, "length must be positive");
        BinarySequence(vec![1; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, j: usize) -> i8 {
        self.0[j]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = i8> + '_ {
        self.0.iter().copied()
    }

    pub fn negated(&self) -> Self {
        BinarySequence(self.0.iter().map(|&t| -t).collect())
    }

    /// Coefficient reversal, i.e. the reciprocal polynomial `f*(z)`.
    pub fn reversed(&self) -> Self {
        BinarySequence(self.0.iter().rev().copied().collect())
    }

    /// Elementwise product of two equal-length sequences.
    pub fn pointwise(&self, other: &BinarySequence) -> Option<Self> {
        (self.len() == other.len())
            .then(|| BinarySequence(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&t| t as i64).sum()
    }

    pub(crate) fn from_vec_unchecked(terms: Vec<i8>) -> Self {
        debug_assert!(!terms.is_empty() && terms.iter().all(|&t| t == 1 || t == -1));
        BinarySequence(terms)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &t in &self.0 {
            f.write_str(if t > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({self})")
    }
}

impl FromStr for BinarySequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_line(s.trim(), 1)
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<BinarySequence, SequenceError> {
    let mut terms = Vec::with_capacity(line.len());
    for ch in line.chars() {
        match ch {
            '+' => terms.push(1),
            '-' => terms.push(-1),
            _ => return Err(SequenceError::InvalidChar { line: lineno, ch }),
        }
    }
    BinarySequence::new(terms)
}

/// Parses every sequence in a text file. Blank lines and `#` comments are skipped.
pub fn parse_sequences(text: &str) -> Result<Vec<BinarySequence>, SequenceError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| parse_line(l, n))
        .collect()
}

/// Parses a pair file: exactly two non-comment lines.
pub fn parse_pair(text: &str) -> Result<(BinarySequence, BinarySequence), SequenceError> {
    let mut seqs = parse_sequences(text)?;
    if seqs.len() != 2 {
        return Err(SequenceError::Arity {
            expected: 2,
            found: seqs.len(),
        });
    }
    let g = seqs.pop().unwrap();
    let f = seqs.pop().unwrap();
    Ok((f, g))
}

/// Writes sequences in the text format, one per line, after optional comment lines.
pub fn format_sequences<'a, I>(comments: &[&str], seqs: I) -> String
where
    I: IntoIterator<Item = &'a BinarySequence>,
{
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for s in seqs {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_bad_terms() {
        assert_eq!(BinarySequence::new(vec![]), Err(SequenceError::Empty));
        assert_eq!(
            BinarySequence::new(vec![1, 0, -1]),
            Err(SequenceError::InvalidTerm { index: 1, value: 0 })
        );
        assert!(BinarySequence::from_signs([1, -1, 2]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s: BinarySequence = "++-+-".parse().unwrap();
        assert_eq!(s.terms(), &[1, 1, -1, 1, -1]);
        assert_eq!(s.to_string(), "++-+-");
        assert_eq!(s.reversed().to_string(), "-+-++");
        assert_eq!(s.negated().to_string(), "--+-+");
    }

    #[test]
    fn pair_file_skips_comments() {
        let text = "# golay pair\n++\n\n# second\n+-\n";
        let (f, g) = parse_pair(text).unwrap();
        assert_eq!(f.to_string(), "++");
        assert_eq!(g.to_string(), "+-");
        assert_eq!(
            parse_pair("++\n"),
            Err(SequenceError::Arity {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_pair("++\n+x\n"),
            Err(SequenceError::InvalidChar { line: 2, ch: 'x' })
        );
    }

    #[test]
    fn mask_conversion() {
        let s = BinarySequence::from_mask(0b1000, 4).unwrap();
        assert_eq!(s.to_string(), "+++-");
        assert_eq!(s.to_mask(), Some(0b1000));
    }
}
