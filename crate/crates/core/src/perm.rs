//! Permutations of `X = {0, .., n-1}`.
//!
//! Points are 0-based inside the library. The 1-based one-line and cycle
//! notations only appear at the text boundary (`from_one_line`,
//! `parse_cycles`, `Display`).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting repeats and
    /// out-of-range entries.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (x, &y) in images.iter().enumerate() {
            if y >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {} of point {} is out of range 1..={}",
                    y + 1,
                    x + 1,
                    n
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::MalformedPermutation(format!(
                    "index {} appears more than once",
                    y + 1
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let images = one_line
            .iter()
            .map(|&y| {
                y.checked_sub(1).ok_or_else(|| {
                    Error::MalformedPermutation("entries are 1-based; found 0".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    /// Parses 1-based cycle notation on `n` points: `"(1,2,4,3)"`,
    /// `"(1 3)(2 4)"`, `"()"` or `"id"`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut images: Vec<usize> = (0..n).collect();
        if text.is_empty() || text == "id" || text == "()" {
            return Ok(Permutation { images });
        }
        let mut touched = vec![false; n];
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::MalformedPermutation(format!("unclosed cycle in {text:?}")))?;
            let cycle = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                    _ => Err(Error::MalformedPermutation(format!(
                        "bad cycle entry {t:?} for n = {n}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &cycle {
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::MalformedPermutation(format!(
                        "point {} repeated in {text:?}",
                        p + 1
                    )));
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    /// `sigma ∘ self ∘ sigma⁻¹`, the same permutation on relabeled points.
    pub fn conjugate_by(&self, sigma: &Self) -> Self {
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[sigma.apply(x)] = sigma.apply(self.apply(x));
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// All permutations of `n` points in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            wrote = true;
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.one_line())
    }
}
