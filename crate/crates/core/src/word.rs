//! Words in the simple reflections, with 1-based letters.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("letter {0:?} is not a positive integer")]
    BadLetter(String),
}

/// A sequence of generator indices `s_{i_1} ... s_{i_t}`, letters `>= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Letters at the given 1-based positions.
    pub fn subword(&self, positions: &[usize]) -> Self {
        Self(positions.iter().map(|&p| self.0[p - 1]).collect())
    }

    /// Parses `"1 2 3 2 1"`, `"1,2,3"`, `"s1s2s3s2s1"` or `"s1 s2"`.
    /// The empty string and `"e"` both denote the empty word.
    pub fn parse(text: &str) -> Result<Self, WordParseError> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Self::empty());
        }
        let mut letters = Vec::new();
        let mut chars = t.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() || c == ',' {
                chars.next();
                continue;
            }
            if c == 's' || c == 'S' {
                chars.next();
                match chars.peek() {
                    Some(&(_, d)) if d.is_ascii_digit() => {}
                    Some(&(p, d)) => return Err(WordParseError::UnexpectedChar(d, p)),
                    None => return Err(WordParseError::BadLetter("s".into())),
                }
            } else if !c.is_ascii_digit() {
                return Err(WordParseError::UnexpectedChar(c, pos));
            }
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            let letter: usize = digits
                .parse()
                .map_err(|_| WordParseError::BadLetter(digits.clone()))?;
            if letter == 0 {
                return Err(WordParseError::BadLetter(digits));
            }
            letters.push(letter);
        }
        Ok(Self(letters))
    }
}

impl FromStr for Word {
    type Err = WordParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_formats() {
        assert_eq!(
            Word::parse("1 2 3 2 1").unwrap().letters(),
            &[1, 2, 3, 2, 1]
        );
        assert_eq!(
            Word::parse("s1s2s3s2s1").unwrap().letters(),
            &[1, 2, 3, 2, 1]
        );
        assert_eq!(Word::parse(" s10 s2 ").unwrap().letters(), &[10, 2]);
        assert_eq!(Word::parse("1,2").unwrap().letters(), &[1, 2]);
        assert!(Word::parse("").unwrap().is_empty());
        assert!(Word::parse("e").unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("0"),
            Err(WordParseError::BadLetter(_))
        ));
        assert!(matches!(
            Word::parse("1 x"),
            Err(WordParseError::UnexpectedChar('x', 2))
        ));
        assert!(matches!(
            Word::parse("s"),
            Err(WordParseError::BadLetter(_))
        ));
        assert!(matches!(
            Word::parse("ss1"),
            Err(WordParseError::UnexpectedChar('s', 1))
        ));
        assert!(matches!(
            Word::parse("99999999999999999999999"),
            Err(WordParseError::BadLetter(_))
        ));
    }

    #[test]
    fn display_roundtrip() {
        let w = Word::new(vec![1, 2, 3, 2]);
        assert_eq!(w.to_string(), "s1s2s3s2");
        assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
        assert_eq!(Word::empty().to_string(), "e");
    }
}
