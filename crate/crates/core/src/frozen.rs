//! Frozen pairs, frozen elements `θ_x`, the class `m`, the finite quotient
//! `W = G/⟨θ_1..θ_n⟩`, and generalized-torsion witnesses.

use std::collections::{HashSet, VecDeque};

use crate::element::{Element, Representation};
use crate::error::{Error, Result};
use crate::perm::{lcm, Permutation};
use crate::solution::Solution;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenData {
    /// `pred(x)` is the unique `y` with `S(y,x) = (y,x)`.
    pub pred: Permutation,
    pub cycles: Vec<Vec<usize>>,
    /// lcm of the `pred` cycle lengths; the first candidate for `m`.
    pub cycle_lcm: usize,
    /// The class `m`.
    pub class: usize,
    /// `θ_x = pred^{m-1}(x) ⋯ pred(x) x`.
    pub theta: Vec<Word>,
}

/// Order of the permutation group generated by `gens` (closure by BFS).
pub fn generated_group_order(gens: &[Permutation]) -> usize {
    let Some(first) = gens.first() else {
        return 1;
    };
    let id = Permutation::identity(first.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.compose(g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn theta_word(pred: &Permutation, x: usize, length: usize) -> Word {
    let mut gens = Vec::with_capacity(length);
    let mut y = x;
    for _ in 0..length {
        gens.push(y);
        y = pred.apply(y);
    }
    gens.reverse();
    Word::from_generators(&gens)
}

fn is_scaled_unit(e: &Element<i64>, x: usize, m: usize) -> bool {
    e.perm().is_identity()
        && e
            .cocycle()
            .iter()
            .enumerate()
            .all(|(y, &v)| v == if y == x { m as i64 } else { 0 })
}

pub fn frozen_data(s: &Solution) -> Result<FrozenData> {
    let n = s.size();
    let images: Vec<usize> = (0..n).map(|x| s.f_inv(x).apply(x)).collect();
    for (x, &y) in images.iter().enumerate() {
        if s.apply(y, x) != (y, x) {
            return Err(Error::Inconsistent(format!(
                "({}, {}) is not a frozen pair",
                y + 1,
                x + 1
            )));
        }
    }
    let pred = Permutation::from_images(images)
        .map_err(|e| Error::Inconsistent(format!("frozen-pair graph is not a permutation: {e}")))?;
    let cycles = pred.cycles();
    let cycle_lcm = cycles.iter().map(Vec::len).fold(1, lcm);
    let cap = n * generated_group_order(s.f_family());
    let rep = Representation::<i64>::new(s);
    let mut m = cycle_lcm;
    while m <= cap {
        let theta: Vec<Word> = (0..n).map(|x| theta_word(&pred, x, m)).collect();
        let mut ok = true;
        for (x, w) in theta.iter().enumerate() {
            if !is_scaled_unit(&rep.evaluate(w)?, x, m) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(FrozenData {
                pred,
                cycles,
                cycle_lcm,
                class: m,
                theta,
            });
        }
        m += cycle_lcm;
    }
    Err(Error::CapExceeded {
        what: "frozen class search",
        cap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugationEntry {
    pub k: usize,
    pub i: usize,
    /// `f_k⁻¹(i)`
    pub target: usize,
    pub holds: bool,
}

/// `Φ(x_k θ_i x_k⁻¹) = Φ(θ_{f_k⁻¹(i)})` for every `(k, i)`.
pub fn conjugation_check(s: &Solution, fd: &FrozenData) -> Result<Vec<ConjugationEntry>> {
    let n = s.size();
    let rep = Representation::<i64>::new(s);
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        let xk = Word::generator(k);
        for i in 0..n {
            let target = s.f_inv(k).apply(i);
            let lhs = rep.evaluate(&fd.theta[i].conjugate(&xk))?;
            let rhs = rep.evaluate(&fd.theta[target])?;
            out.push(ConjugationEntry {
                k,
                i,
                target,
                holds: lhs == rhs,
            });
        }
    }
    Ok(out)
}

/// Lexicographically smallest `(k, i)` with `f_k⁻¹(i) ≠ i`; `None` for the
/// trivial solution.
pub fn noncommuting_pair(s: &Solution) -> Option<(usize, usize)> {
    let n = s.size();
    (0..n)
        .flat_map(|k| (0..n).map(move |i| (k, i)))
        .find(|&(k, i)| s.f_inv(k).apply(i) != i)
}

/// `c = [x_k, θ_i]` with `∏_j h_j c h_j⁻¹ = 1` for `h_j = x_k^{p-1}, .., x_k, 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub k: usize,
    pub i: usize,
    pub p: usize,
    pub commutator: Word,
    pub conjugators: Vec<Word>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub commutator_nontrivial: bool,
    pub product_trivial: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.commutator_nontrivial && self.product_trivial
    }
}

impl TorsionWitness {
    pub fn product_word(&self) -> Word {
        self.conjugators
            .iter()
            .fold(Word::empty(), |acc, h| acc.concat(&self.commutator.conjugate(h)))
    }

    /// Re-evaluates the stored words; uses nothing but the words and `s`.
    pub fn verify(&self, s: &Solution) -> Result<WitnessCheck> {
        let rep = Representation::<i64>::new(s);
        Ok(WitnessCheck {
            commutator_nontrivial: !rep.evaluate(&self.commutator)?.is_identity(),
            product_trivial: rep.evaluate(&self.product_word())?.is_identity(),
        })
    }
}

pub fn torsion_witness(s: &Solution) -> Result<TorsionWitness> {
    let (k, i) = noncommuting_pair(s).ok_or(Error::TrivialSolution)?;
    let fd = frozen_data(s)?;
    let p = s.f(k).order();
    let xk = Word::generator(k);
    let witness = TorsionWitness {
        k,
        i,
        p,
        commutator: Word::commutator(&xk, &fd.theta[i]),
        conjugators: (0..p).rev().map(|j| xk.pow(j)).collect(),
    };
    let check = witness.verify(s)?;
    if !check.passed() {
        return Err(Error::Inconsistent(format!(
            "torsion witness for (k, i) = ({}, {}) failed verification: {check:?}",
            k + 1,
            i + 1
        )));
    }
    Ok(witness)
}

/// `W` as the set of `(perm, π mod m)` pairs reachable from the identity.
#[derive(Clone, Debug)]
pub struct CoxeterLikeQuotient {
    pub class: usize,
    pub elements: HashSet<(Permutation, Vec<u64>)>,
    pub order: usize,
    /// `m^n`
    pub expected_order: usize,
}

pub fn coxeter_like_quotient(
    s: &Solution,
    fd: &FrozenData,
    cap: usize,
) -> Result<CoxeterLikeQuotient> {
    let n = s.size();
    let m = fd.class as u64;
    let expected_order = u32::try_from(n)
        .ok()
        .and_then(|e| fd.class.checked_pow(e))
        .filter(|&o| o <= cap)
        .ok_or(Error::CapExceeded {
            what: "quotient order m^n",
            cap,
        })?;
    let gens: Vec<(Permutation, Vec<u64>)> = (0..n)
        .map(|x| {
            let mut t = vec![0u64; n];
            t[x] = 1 % m;
            (s.f_inv(x).clone(), t)
        })
        .collect();
    let start = (Permutation::identity(n), vec![0u64; n]);
    let mut elements = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((perm, vec)) = queue.pop_front() {
        for (gp, gv) in &gens {
            let next_vec: Vec<u64> = (0..n).map(|y| (vec[gp.apply(y)] + gv[y]) % m).collect();
            let next = (perm.compose(gp), next_vec);
            if elements.contains(&next) {
                continue;
            }
            if elements.len() >= expected_order {
                return Err(Error::Inconsistent(format!(
                    "quotient closure exceeds m^n = {expected_order}"
                )));
            }
            elements.insert(next.clone());
            queue.push_back(next);
        }
    }
    let order = elements.len();
    if order != expected_order {
        return Err(Error::Inconsistent(format!(
            "quotient closure has {order} elements, expected m^n = {expected_order}"
        )));
    }
    Ok(CoxeterLikeQuotient {
        class: fd.class,
        elements,
        order,
        expected_order,
    })
}
