//! Words in labeled generators, e.g. `a^-1 b^{-1} a b` or `abab^-1`.
//!
//! A label is one ASCII letter optionally followed by digits or `_digits`
//! (`a`, `x1`, `g_2`), so juxtaposed single letters read as separate
//! letters. `1` and the empty string denote the empty word.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character `{0}` in word")]
    Unexpected(char),
    #[error("bad exponent in word: {0}")]
    BadExponent(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<(String, i64)>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_syllables<S: Into<String>>(syllables: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut w = Word::new();
        for (label, exp) in syllables {
            w.push(label, exp);
        }
        w
    }

    /// Appends `label^exp`, merging with a trailing syllable on the same label.
    pub fn push(&mut self, label: impl Into<String>, exp: i64) {
        let label = label.into();
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == label {
                last.1 += exp;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((label, exp));
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `a^3` as three.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|(l, e)| (l.clone(), -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (l, e) in &other.syllables {
            w.push(l.clone(), *e);
        }
        w
    }

    pub fn parse(text: &str) -> Result<Word, WordError> {
        let chars: Vec<char> = text.chars().collect();
        let mut word = Word::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' {
                // explicit identity
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(WordError::Unexpected(c));
            }
            let mut label = String::from(c);
            i += 1;
            if i + 1 < chars.len() && chars[i] == '_' && chars[i + 1].is_ascii_digit() {
                label.push('_');
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                label.push(chars[i]);
                i += 1;
            }
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let braced = i < chars.len() && chars[i] == '{';
                if braced {
                    i += 1;
                }
                let start = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                exp = digits
                    .parse()
                    .map_err(|_| WordError::BadExponent(digits.clone()))?;
                if braced {
                    if i >= chars.len() || chars[i] != '}' {
                        return Err(WordError::BadExponent(format!("unclosed brace after `{digits}`")));
                    }
                    i += 1;
                }
            }
            word.push(label, exp);
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, (label, exp)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *exp == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}
