//! The faithful embedding `Φ: G(X,S) → Sym(X) ⋉ Z^X`, `Φ(x) = (f_x⁻¹, t_x)`.
//!
//! Conventions, fixed in this one place:
//!
//! * permutation parts multiply as functions, right factor first:
//!   `perm(ab) = perm(a) ∘ perm(b)`, so `x ↦ f_x⁻¹` is a left action;
//! * an element acting via `p` moves coordinate `x` to coordinate `p(x)`
//!   (`t_x ↦ t_{p(x)}`);
//! * `(α, w)(β, v) = (α∘β, β⁻¹•w + v)`, i.e. `π(ab) = b⁻¹•π(a) + π(b)`.
//!
//! With these, `(f_x⁻¹, t_x)(f_y⁻¹, t_y) = (f_x⁻¹f_y⁻¹, t_{f_y(x)} + t_y)`.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Coord;
use crate::solution::Solution;
use crate::word::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<T> {
    perm: Permutation,
    vec: Vec<T>,
}

impl<T: Coord> Element<T> {
    pub fn identity(n: usize) -> Self {
        Element {
            perm: Permutation::identity(n),
            vec: vec![T::zero(); n],
        }
    }

    pub fn new(perm: Permutation, vec: Vec<T>) -> Result<Self> {
        if perm.degree() != vec.len() {
            return Err(Error::DimensionMismatch {
                left: perm.degree(),
                right: vec.len(),
            });
        }
        Ok(Element { perm, vec })
    }

    /// `Φ(x) = (f_x⁻¹, t_x)`.
    pub fn generator(s: &Solution, x: usize) -> Self {
        let mut vec = vec![T::zero(); s.size()];
        vec[x] = T::one();
        Element {
            perm: s.f_inv(x).clone(),
            vec,
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// The bijective 1-cocycle `π`.
    pub fn cocycle(&self) -> &[T] {
        &self.vec
    }

    /// `ε`, the coordinate sum of `π`.
    pub fn augmentation(&self) -> Result<T> {
        self.vec
            .iter()
            .try_fold(T::zero(), |acc, v| acc.checked_add(v))
            .ok_or(Error::Overflow)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.vec.iter().all(|v| v.is_zero())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        // (β⁻¹•w)[y] = w[β(y)]
        let vec = (0..self.dim())
            .map(|y| {
                self.vec[other.perm.apply(y)]
                    .checked_add(&other.vec[y])
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element {
            perm: self.perm.compose(&other.perm),
            vec,
        })
    }

    /// `(α, w)⁻¹ = (α⁻¹, −α•w)`.
    pub fn invert(&self) -> Result<Self> {
        let mut vec = vec![T::zero(); self.dim()];
        for (x, w) in self.vec.iter().enumerate() {
            vec[self.perm.apply(x)] = w.checked_negate().ok_or(Error::Overflow)?;
        }
        Ok(Element {
            perm: self.perm.inverse(),
            vec,
        })
    }

    /// `a • w`: coordinate `x` of `w` moves to `perm(a)(x)`.
    pub fn act(&self, w: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); w.len()];
        for (x, v) in w.iter().enumerate() {
            out[self.perm.apply(x)] = v.clone();
        }
        out
    }
}

/// Generator images and their inverses for one solution.
#[derive(Clone, Debug)]
pub struct Representation<T> {
    solution: Solution,
    gens: Vec<Element<T>>,
    invs: Vec<Element<T>>,
}

impl<T: Coord> Representation<T> {
    pub fn new(s: &Solution) -> Self {
        let gens: Vec<Element<T>> = (0..s.size()).map(|x| Element::generator(s, x)).collect();
        let invs = gens
            .iter()
            .map(|g| g.invert().expect("unit vectors cannot overflow"))
            .collect();
        Representation {
            solution: s.clone(),
            gens,
            invs,
        }
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn size(&self) -> usize {
        self.solution.size()
    }

    pub fn identity(&self) -> Element<T> {
        Element::identity(self.size())
    }

    pub fn letter(&self, generator: usize, inverse: bool) -> &Element<T> {
        if inverse {
            &self.invs[generator]
        } else {
            &self.gens[generator]
        }
    }

    /// Left-to-right product of the letter images.
    pub fn evaluate(&self, w: &Word) -> Result<Element<T>> {
        w.check_range(self.size())?;
        w.letters()
            .iter()
            .try_fold(self.identity(), |acc, l| {
                acc.multiply(self.letter(l.generator, l.inverse))
            })
    }
}

/// Convenience wrapper building a fresh [`Representation`].
pub fn evaluate<T: Coord>(s: &Solution, w: &Word) -> Result<Element<T>> {
    Representation::new(s).evaluate(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::GroupElement;
    use num_bigint::BigInt;

    fn perm(n: usize, c: &str) -> Permutation {
        Permutation::parse_cycles(n, c).unwrap()
    }

    #[test]
    fn klein_product_and_inverse() {
        let rep = Representation::<i64>::new(&fixtures::klein());
        let x1 = rep.letter(0, false).clone();
        let x2 = rep.letter(1, false).clone();
        let p = x2.multiply(&x1).unwrap();
        assert_eq!(p, Element::new(Permutation::identity(2), vec![2, 0]).unwrap());
        let inv = x1.invert().unwrap();
        assert_eq!(inv, Element::new(perm(2, "(1,2)"), vec![0, -1]).unwrap());
        assert!(x1.multiply(&inv).unwrap().is_identity());
        assert!(inv.multiply(&x1).unwrap().is_identity());
    }

    #[test]
    fn displayed_product_rule() {
        // (f_x⁻¹, t_x)(f_y⁻¹, t_y) = (f_x⁻¹f_y⁻¹, t_{f_y(x)} + t_y)
        let s = fixtures::example_n4();
        let rep = Representation::<i64>::new(&s);
        for x in 0..4 {
            for y in 0..4 {
                let p = rep.letter(x, false).multiply(rep.letter(y, false)).unwrap();
                let mut v = vec![0i64; 4];
                v[s.f(y).apply(x)] += 1;
                v[y] += 1;
                let expect =
                    Element::new(s.f_inv(x).compose(s.f_inv(y)), v).unwrap();
                assert_eq!(p, expect);
            }
        }
    }

    #[test]
    fn defining_relations_hold_in_image_for_n4_example() {
        let s = fixtures::example_n4();
        let rep = Representation::<i64>::new(&s);
        for x in 0..4 {
            for y in 0..4 {
                let (u, v) = s.apply(x, y);
                let lhs = rep.evaluate(&Word::from_generators(&[x, y])).unwrap();
                let rhs = rep.evaluate(&Word::from_generators(&[u, v])).unwrap();
                assert_eq!(lhs, rhs, "relation at ({}, {})", x + 1, y + 1);
            }
        }
    }

    #[test]
    fn printed_relations_of_n4_example() {
        let rep = Representation::<i64>::new(&fixtures::example_n4());
        let ev = |s: &str| rep.evaluate(&s.parse().unwrap()).unwrap();
        assert_eq!(ev("1 1"), ev("2 2"));
        assert_eq!(ev("3 4"), ev("4 3"));
        assert_eq!(ev("1 2"), ev("3 3"));
        assert_eq!(ev("2 1"), ev("4 4"));
        assert_eq!(ev("1 3"), ev("4 1"));
        assert_eq!(ev("2 4"), ev("3 2"));
        assert_ne!(ev("1 2"), ev("2 1"));
    }

    #[test]
    fn empty_word_cocycle_and_augmentation() {
        let s = fixtures::example_n4();
        let rep = Representation::<i64>::new(&s);
        assert!(rep.evaluate(&Word::empty()).unwrap().is_identity());
        for x in 0..4 {
            let mut t = [0; 4];
            t[x] = 1;
            assert_eq!(rep.letter(x, false).cocycle(), &t[..]);
        }
        let a = rep.evaluate(&"1 2 -3".parse().unwrap()).unwrap();
        assert_eq!(a.augmentation().unwrap(), 1);
        assert!(rep.evaluate(&"5".parse().unwrap()).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let a = GroupElement::identity(2);
        let b = GroupElement::identity(3);
        assert!(matches!(
            a.multiply(&b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let s = fixtures::klein();
        let big = Element::<i8>::new(Permutation::identity(2), vec![i8::MAX, 0]).unwrap();
        // x_2 moves coordinate 1 onto coordinate 2 and then adds t_2
        let x2 = Element::<i8>::generator(&s, 1);
        assert_eq!(big.multiply(&x2), Err(Error::Overflow));
        let x1 = Element::<i8>::generator(&s, 0);
        assert!(big.multiply(&x1).is_ok());
        let min = Element::<i8>::new(Permutation::identity(2), vec![i8::MIN, 0]).unwrap();
        assert_eq!(min.invert(), Err(Error::Overflow));
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let s = fixtures::example_n4();
        let w: Word = "1 2 -3 4 4 -1 2 3 3 -2".parse().unwrap();
        let small: Element<i64> = evaluate(&s, &w).unwrap();
        let big: Element<BigInt> = evaluate(&s, &w).unwrap();
        assert_eq!(small.perm(), big.perm());
        let converted: Vec<BigInt> = small.cocycle().iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(converted, big.cocycle());
    }
}
