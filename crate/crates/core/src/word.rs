use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator `x_k` or its inverse; `generator` is 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// `+k` / `-k` with `k` 1-based.
    pub fn signed(self) -> i64 {
        let k = self.generator as i64 + 1;
        if self.inverse {
            -k
        } else {
            k
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word over `x_1..x_n` and their inverses. No free reduction is applied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        Word(vec![Letter::new(k)])
    }

    /// Positive word from 0-based generator indices.
    pub fn from_generators(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&k| Letter::new(k)).collect())
    }

    /// From 1-based signed indices, e.g. `[1, 2, -3]`.
    pub fn from_signed(letters: &[i64]) -> Result<Self> {
        letters
            .iter()
            .map(|&s| match s {
                0 => Err(Error::InvalidInput("generator index 0 in word".into())),
                s => Ok(Letter {
                    generator: (s.unsigned_abs() - 1) as usize,
                    inverse: s < 0,
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Self {
        Word(self.0.iter().copied().cycle().take(self.len() * k).collect())
    }

    /// `a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// `h w h⁻¹`
    pub fn conjugate(&self, h: &Word) -> Self {
        h.concat(self).concat(&h.inverse())
    }

    /// Exponent sum.
    pub fn augmentation(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|l| l.generator >= n) {
            Some(l) => Err(Error::IndexOutOfRange {
                index: l.signed(),
                n,
            }),
            None => Ok(()),
        }
    }

    /// `x_1 x_2 x_3^-1` style.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("x_{}^-1", l.generator + 1)
                } else {
                    format!("x_{}", l.generator + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    /// Whitespace-separated signed 1-based indices; the empty word prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.signed().to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signed = s
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad word token {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_signed(&signed)
    }
}
