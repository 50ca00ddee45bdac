use std::collections::BTreeSet;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::solution::Solution;

/// `x_a x_b = x_c x_d` with `(a,b) < (c,d)`; indices 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Relation {
    pub lhs: (usize, usize),
    pub rhs: (usize, usize),
}

impl Relation {
    pub fn new(a: (usize, usize), b: (usize, usize)) -> Self {
        let (lhs, rhs) = if a <= b { (a, b) } else { (b, a) };
        Relation { lhs, rhs }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x_{} x_{} = x_{} x_{}",
            self.lhs.0 + 1,
            self.lhs.1 + 1,
            self.rhs.0 + 1,
            self.rhs.1 + 1
        )
    }
}

/// Defining relations `xy = g_x(y) f_y(x)` with trivial and mirrored duplicates removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Relation>,
}

impl Presentation {
    /// First 16 hex digits of the SHA-256 of the rendered text.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_string().as_bytes());
        hex::encode(&hash[..8])
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn emit_presentation(s: &Solution) -> Presentation {
    let n = s.size();
    let mut set = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            let image = s.apply(x, y);
            if image != (x, y) {
                set.insert(Relation::new((x, y), image));
            }
        }
    }
    Presentation {
        generators: n,
        relations: set.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_n2_is_free_abelian() {
        let p = emit_presentation(&Solution::trivial(2));
        assert_eq!(p.to_string(), "x_1 x_2 = x_2 x_1\n");
    }

    #[test]
    fn klein_bottle() {
        let p = emit_presentation(&fixtures::klein());
        assert_eq!(p.to_string(), "x_1 x_1 = x_2 x_2\n");
    }

    #[test]
    fn n4_example_has_six_relations() {
        let p = emit_presentation(&fixtures::example_n4());
        assert_eq!(p.relations.len(), 6);
        assert_eq!(
            p.to_string(),
            "x_1 x_1 = x_2 x_2\n\
             x_1 x_2 = x_3 x_3\n\
             x_1 x_3 = x_4 x_1\n\
             x_2 x_1 = x_4 x_4\n\
             x_2 x_4 = x_3 x_2\n\
             x_3 x_4 = x_4 x_3\n"
        );
        assert_eq!(p.digest().len(), 16);
    }
}
