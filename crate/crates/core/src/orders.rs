//! A left order on `G(X,S)` for retractable solutions, built along the
//! retract tower, plus sampling-based property testers.
//!
//! `sign(w)` at level `j`: push `w` to level `j+1` through the class map. If
//! it is non-trivial there, recurse; otherwise `w` lies in the kernel of the
//! retraction, acts trivially on `X`, and its sign is the lexicographic sign
//! of its cocycle at level `j`. The last level has one point and compares the
//! single integer coordinate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::element::{Element, Representation};
use crate::error::{Error, Result};
use crate::scalar::Coord;
use crate::solution::{retract_tower, ClassMap, RetractTower, Solution, TowerStatus};
use crate::word::{Letter, Word};

/// Lexicographic order on `Z^n`: coordinates compared in `order`, each
/// optionally negated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexConvention {
    pub order: Vec<usize>,
    pub negate: Vec<bool>,
}

impl LexConvention {
    pub fn standard(n: usize) -> Self {
        LexConvention {
            order: (0..n).collect(),
            negate: vec![false; n],
        }
    }

    pub fn new(order: Vec<usize>, negate: Vec<bool>) -> Result<Self> {
        let n = order.len();
        if negate.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: negate.len(),
            });
        }
        let mut seen = vec![false; n];
        for &c in &order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidInput(
                    "lex coordinate order must be a permutation".into(),
                ));
            }
        }
        Ok(LexConvention { order, negate })
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Sign of `v` relative to zero.
    pub fn sign<T: Coord>(&self, v: &[T]) -> Ordering {
        for (&c, &neg) in self.order.iter().zip(&self.negate) {
            let s = v[c].cmp(&T::zero());
            if s != Ordering::Equal {
                return if neg { s.reverse() } else { s };
            }
        }
        Ordering::Equal
    }
}

fn map_word(w: &Word, class_map: &ClassMap) -> Word {
    Word(
        w.letters()
            .iter()
            .map(|l| Letter {
                generator: class_map[l.generator],
                inverse: l.inverse,
            })
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct OrderOracle<T> {
    tower: RetractTower,
    reps: Vec<Representation<T>>,
    lex: LexConvention,
}

impl<T: Coord> OrderOracle<T> {
    pub fn build(s: &Solution) -> Result<Self> {
        Self::with_lex(s, LexConvention::standard(s.size()))
    }

    /// `lex` applies to the base level; deeper levels use the standard order.
    pub fn with_lex(s: &Solution, lex: LexConvention) -> Result<Self> {
        if lex.dim() != s.size() {
            return Err(Error::DimensionMismatch {
                left: lex.dim(),
                right: s.size(),
            });
        }
        let tower = retract_tower(s)?;
        if let TowerStatus::NonRetractable { stuck_size } = tower.status {
            return Err(Error::NonRetractable { stuck_size });
        }
        let reps = (0..=tower.depth())
            .map(|j| Representation::new(tower.solution(j)))
            .collect();
        Ok(OrderOracle { tower, reps, lex })
    }

    pub fn solution(&self) -> &Solution {
        &self.tower.base
    }

    pub fn tower(&self) -> &RetractTower {
        &self.tower
    }

    pub fn representation(&self) -> &Representation<T> {
        &self.reps[0]
    }

    fn lex_at(&self, level: usize) -> LexConvention {
        if level == 0 {
            self.lex.clone()
        } else {
            LexConvention::standard(self.tower.solution(level).size())
        }
    }

    /// `Greater` iff `w` is in the positive cone; `Equal` iff `Φ(w) = 1`.
    pub fn sign(&self, w: &Word) -> Result<Ordering> {
        w.check_range(self.solution().size())?;
        let depth = self.tower.depth();
        let mut word = w.clone();
        for j in 0..depth {
            let image = map_word(&word, &self.tower.levels[j].class_map);
            if !self.reps[j + 1].evaluate(&image)?.is_identity() {
                word = image;
                continue;
            }
            let e = self.reps[j].evaluate(&word)?;
            if !e.perm().is_identity() {
                return Err(Error::Inconsistent(format!(
                    "word {word} is trivial in the retract but acts non-trivially at level {j}"
                )));
            }
            return Ok(self.lex_at(j).sign(e.cocycle()));
        }
        let e = self.reps[depth].evaluate(&word)?;
        Ok(self.lex_at(depth).sign(e.cocycle()))
    }

    /// Position of `w1` relative to `w2`: `Less` means `w1 ≺ w2`.
    pub fn compare(&self, w1: &Word, w2: &Word) -> Result<Ordering> {
        Ok(self.sign(&w1.inverse().concat(w2))?.reverse())
    }
}

/// Build an oracle with `i64` coordinates.
pub fn build_oracle(s: &Solution) -> Result<OrderOracle<i64>> {
    OrderOracle::build(s)
}

/// The level-one comparator for solutions whose `f_x` all coincide: `ε` first,
/// then the lexicographic sign of `π(w1⁻¹w2)`.
pub fn augmentation_first_compare<T: Coord>(
    rep: &Representation<T>,
    lex: &LexConvention,
    w1: &Word,
    w2: &Word,
) -> Result<Ordering> {
    match w1.augmentation().cmp(&w2.augmentation()) {
        Ordering::Equal => {
            let e = rep.evaluate(&w1.inverse().concat(w2))?;
            Ok(lex.sign(e.cocycle()).reverse())
        }
        other => Ok(other),
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter {
                generator: rng.gen_range(0..n),
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

/// Outcome of a sampling property test. Counterexamples list words verbatim.
#[derive(Clone, Debug, Default)]
pub struct PropertyReport {
    pub property: String,
    pub samples: usize,
    /// Samples where the property's hypothesis held and the conclusion was checked.
    pub checked: usize,
    pub failures: Vec<String>,
    pub histogram: BTreeMap<usize, usize>,
}

impl PropertyReport {
    fn new(property: &str, samples: usize) -> Self {
        PropertyReport {
            property: property.into(),
            samples,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // keep reports readable on systematic failures
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// Trichotomy, antisymmetry, transitivity, cone closure and left invariance on
/// sampled triples.
pub fn test_left_invariance<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    samples: usize,
    radius: usize,
    rng: &mut R,
) -> Result<PropertyReport> {
    let n = o.solution().size();
    let rep = o.representation();
    let mut report = PropertyReport::new("left-invariance", samples);
    for _ in 0..samples {
        let f = random_word(rng, n, radius);
        let g = random_word(rng, n, radius);
        let h = random_word(rng, n, radius);
        let gh = o.compare(&g, &h)?;
        if o.compare(&h, &g)? != gh.reverse() {
            report.fail(format!("antisymmetry: g = [{g}], h = [{h}]"));
        }
        let same = rep.evaluate(&g)? == rep.evaluate(&h)?;
        if same != (gh == Ordering::Equal) {
            report.fail(format!("trichotomy: g = [{g}], h = [{h}]"));
        }
        if o.compare(&f.concat(&g), &f.concat(&h))? != gh {
            report.fail(format!("left invariance: f = [{f}], g = [{g}], h = [{h}]"));
        }
        let hf = o.compare(&h, &f)?;
        if gh == Ordering::Less && hf == Ordering::Less && o.compare(&g, &f)? != Ordering::Less {
            report.fail(format!("transitivity: g = [{g}] < h = [{h}] < k = [{f}]"));
        }
        let (sg, sh) = (o.sign(&g)?, o.sign(&h)?);
        if sg == Ordering::Greater && sh == Ordering::Greater {
            report.checked += 1;
            if o.sign(&g.concat(&h))? != Ordering::Greater {
                report.fail(format!("cone closure: [{g}] and [{h}] positive, product not"));
            }
        }
        if o.sign(&g.inverse())? != sg.reverse() {
            report.fail(format!("inverse sign: g = [{g}]"));
        }
    }
    Ok(report)
}

/// `sign` must not depend on the chosen word: inserting a defining relator or a
/// cancelling pair anywhere leaves it unchanged.
pub fn test_sign_well_defined<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    samples: usize,
    radius: usize,
    rng: &mut R,
) -> Result<PropertyReport> {
    let s = o.solution();
    let n = s.size();
    let mut report = PropertyReport::new("sign well-defined", samples);
    for _ in 0..samples {
        let w = random_word(rng, n, radius);
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (u, v) = s.apply(x, y);
        let relator = if rng.gen_bool(0.5) {
            Word::from_generators(&[x, y]).concat(&Word::from_generators(&[u, v]).inverse())
        } else {
            let l = Letter::new(x);
            Word(vec![l, l.inv()])
        };
        let at = rng.gen_range(0..=w.len());
        let mut letters = w.0[..at].to_vec();
        letters.extend_from_slice(&relator.0);
        letters.extend_from_slice(&w.0[at..]);
        let w2 = Word(letters);
        report.checked += 1;
        if o.sign(&w)? != o.sign(&w2)? {
            report.fail(format!("sign([{w}]) != sign([{w2}])"));
        }
    }
    Ok(report)
}

/// For positive `a, b`, the least `k <= n_max` with `b ≺ a b^k`.
pub fn test_conradian<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    samples: usize,
    radius: usize,
    n_max: usize,
    rng: &mut R,
) -> Result<PropertyReport> {
    let n = o.solution().size();
    let mut report = PropertyReport::new("conradian", samples);
    let positive = |w: Word, o: &OrderOracle<T>| -> Result<Option<Word>> {
        Ok(match o.sign(&w)? {
            Ordering::Greater => Some(w),
            Ordering::Less => Some(w.inverse()),
            Ordering::Equal => None,
        })
    };
    for _ in 0..samples {
        let (Some(a), Some(b)) = (
            positive(random_word(rng, n, radius), o)?,
            positive(random_word(rng, n, radius), o)?,
        ) else {
            continue;
        };
        report.checked += 1;
        let mut least = None;
        for k in 1..=n_max {
            if o.compare(&b, &a.concat(&b.pow(k)))? == Ordering::Less {
                least = Some(k);
                break;
            }
        }
        match least {
            Some(k) => *report.histogram.entry(k).or_default() += 1,
            None => report.fail(format!("no k <= {n_max}: a = [{a}], b = [{b}]")),
        }
    }
    Ok(report)
}

fn zero_augmentation<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: usize) -> Word {
    let mut w = random_word(rng, n, radius);
    let e = w.augmentation();
    let fix = Letter {
        generator: rng.gen_range(0..n),
        inverse: e > 0,
    };
    for _ in 0..e.unsigned_abs() {
        w.0.push(fix);
    }
    w
}

/// `x ≺ y ≺ z` with `ε(x) = ε(z) = 0` forces `ε(y) = 0`. Requires all `f_x` equal.
pub fn test_kernel_convexity<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    samples: usize,
    radius: usize,
    rng: &mut R,
) -> Result<PropertyReport> {
    let s = o.solution();
    if !s.all_f_equal() {
        return Err(Error::Precondition(
            "kernel convexity test needs all f_x equal".into(),
        ));
    }
    let n = s.size();
    let mut report = PropertyReport::new("kernel convexity", samples);
    for i in 0..samples {
        let mut x = zero_augmentation(rng, n, radius);
        let mut z = zero_augmentation(rng, n, radius);
        match o.compare(&x, &z)? {
            Ordering::Equal => continue,
            Ordering::Greater => std::mem::swap(&mut x, &mut z),
            Ordering::Less => {}
        }
        // alternate between arbitrary words and perturbations of x
        let y = if i % 2 == 0 {
            random_word(rng, n, radius)
        } else {
            x.concat(&random_word(rng, n, 2))
        };
        if o.compare(&x, &y)? == Ordering::Less && o.compare(&y, &z)? == Ordering::Less {
            report.checked += 1;
            if y.augmentation() != 0 {
                report.fail(format!("x = [{x}] < y = [{y}] < z = [{z}] with ε(y) != 0"));
            }
        }
    }
    Ok(report)
}

/// Tower oracle versus [`augmentation_first_compare`] on sampled pairs.
pub fn test_level_one_agreement<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    lex: &LexConvention,
    samples: usize,
    radius: usize,
    rng: &mut R,
) -> Result<PropertyReport> {
    let s = o.solution();
    if !s.all_f_equal() {
        return Err(Error::Precondition(
            "level-one comparator needs all f_x equal".into(),
        ));
    }
    let n = s.size();
    let rep = Representation::<T>::new(s);
    let mut report = PropertyReport::new("level-one agreement", samples);
    for _ in 0..samples {
        let a = random_word(rng, n, radius);
        let b = random_word(rng, n, radius);
        report.checked += 1;
        if o.compare(&a, &b)? != augmentation_first_compare(&rep, lex, &a, &b)? {
            report.fail(format!("disagree on a = [{a}], b = [{b}]"));
        }
    }
    Ok(report)
}

/// Searches for `g ≺ h` with `gf ⊀ hf`. `None` is inconclusive, never a proof
/// of bi-invariance.
pub fn falsify_right_invariance<T: Coord, R: Rng + ?Sized>(
    o: &OrderOracle<T>,
    samples: usize,
    radius: usize,
    rng: &mut R,
) -> Result<Option<(Word, Word, Word)>> {
    let n = o.solution().size();
    for _ in 0..samples {
        let f = random_word(rng, n, radius);
        let g = random_word(rng, n, radius);
        let h = random_word(rng, n, radius);
        if o.compare(&g, &h)? == Ordering::Less
            && o.compare(&g.concat(&f), &h.concat(&f))? != Ordering::Less
        {
            return Ok(Some((g, h, f)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueProductReport {
    /// The first product (in `A × B` order) with exactly one factorization.
    pub witness: Option<(Word, Word)>,
    /// Products with several factorizations: one representative `(a, b)` and the count.
    pub repeated: Vec<(Word, Word, usize)>,
}

pub fn unique_product_check<T: Coord>(
    rep: &Representation<T>,
    a_set: &[Word],
    b_set: &[Word],
) -> Result<UniqueProductReport> {
    if a_set.is_empty() || b_set.is_empty() {
        return Err(Error::InvalidInput("A and B must be non-empty".into()));
    }
    let mut order: Vec<(Element<T>, Word, Word)> = Vec::new();
    let mut counts: HashMap<Element<T>, usize> = HashMap::new();
    let a_img = a_set
        .iter()
        .map(|a| rep.evaluate(a))
        .collect::<Result<Vec<_>>>()?;
    let b_img = b_set
        .iter()
        .map(|b| rep.evaluate(b))
        .collect::<Result<Vec<_>>>()?;
    for (a, ae) in a_set.iter().zip(&a_img) {
        for (b, be) in b_set.iter().zip(&b_img) {
            let p = ae.multiply(be)?;
            let c = counts.entry(p.clone()).or_default();
            *c += 1;
            if *c == 1 {
                order.push((p, a.clone(), b.clone()));
            }
        }
    }
    let witness = order
        .iter()
        .find(|(p, _, _)| counts[p] == 1)
        .map(|(_, a, b)| (a.clone(), b.clone()));
    let repeated = order
        .iter()
        .filter(|(p, _, _)| counts[p] > 1)
        .map(|(p, a, b)| (a.clone(), b.clone(), counts[p]))
        .collect();
    Ok(UniqueProductReport { witness, repeated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_oracle_is_augmentation_then_lex() {
        // the tower has one step onto a point: ε first, then lex on the kernel
        let o = build_oracle(&Solution::trivial(2)).unwrap();
        assert_eq!(o.sign(&w("1 -2 -2")).unwrap(), Ordering::Less);
        assert_eq!(o.sign(&w("-1 2 2 2")).unwrap(), Ordering::Greater);
        assert_eq!(o.sign(&w("1 -2")).unwrap(), Ordering::Greater);
        assert_eq!(o.sign(&w("-1 2")).unwrap(), Ordering::Less);
        assert_eq!(o.sign(&w("2 1 -2 -1")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn klein_signs() {
        let o = build_oracle(&fixtures::klein()).unwrap();
        assert_eq!(o.sign(&w("1")).unwrap(), Ordering::Greater);
        assert_eq!(o.sign(&w("-1 2")).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&w("2"), &w("1")).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&w("1"), &w("1 2")).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&w("1 1"), &w("2 2")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn non_retractable_refused() {
        assert!(matches!(
            build_oracle(&fixtures::example_n4()),
            Err(Error::NonRetractable { stuck_size: 4 })
        ));
    }

    #[test]
    fn lex_convention_flips_kernel_order() {
        let s = fixtures::klein();
        let flipped =
            OrderOracle::<i64>::with_lex(&s, LexConvention::new(vec![1, 0], vec![false, false]).unwrap())
                .unwrap();
        assert_eq!(flipped.compare(&w("2"), &w("1")).unwrap(), Ordering::Greater);
        assert!(LexConvention::new(vec![0, 0], vec![false, false]).is_err());
    }

    #[test]
    fn single_point_solution() {
        let o = build_oracle(&Solution::trivial(1)).unwrap();
        assert_eq!(o.compare(&w("1"), &w("1 1")).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&w("-1"), &w("")).unwrap(), Ordering::Less);
    }

    #[test]
    fn property_suites_pass_on_small_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [
            Solution::trivial(3),
            fixtures::klein(),
            fixtures::cyclic_permutation_solution(3),
        ] {
            let o = build_oracle(&s).unwrap();
            let r = test_left_invariance(&o, 300, 6, &mut rng).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            let r = test_sign_well_defined(&o, 300, 6, &mut rng).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            let r = test_conradian(&o, 300, 5, 4, &mut rng).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.histogram.keys().all(|&k| k <= 2));
            let r = test_kernel_convexity(&o, 300, 5, &mut rng).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn trivial_conradian_exponent_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o = build_oracle(&Solution::trivial(2)).unwrap();
        let r = test_conradian(&o, 200, 5, 4, &mut rng).unwrap();
        assert_eq!(r.histogram.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    fn klein_plus_point() -> Solution {
        // Klein bottle on {1,2} next to a fixed point 3, swapped trivially across
        let c = |t: &str| crate::perm::Permutation::parse_cycles(3, t).unwrap();
        Solution::from_f(vec![c("(1,2)"), c("(1,2)"), c("()")]).unwrap()
    }

    #[test]
    fn level_two_tower() {
        let s = klein_plus_point();
        let o = build_oracle(&s).unwrap();
        assert_eq!(o.tower().depth(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = test_left_invariance(&o, 500, 6, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = test_conradian(&o, 300, 5, 4, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(matches!(
            test_kernel_convexity(&o, 10, 3, &mut rng),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn klein_is_not_right_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let o = build_oracle(&fixtures::klein()).unwrap();
        let (g, h, f) = falsify_right_invariance(&o, 10_000, 4, &mut rng)
            .unwrap()
            .expect("a right-invariance violation exists");
        assert_eq!(o.compare(&g, &h).unwrap(), Ordering::Less);
        assert_ne!(o.compare(&g.concat(&f), &h.concat(&f)).unwrap(), Ordering::Less);
    }

    #[test]
    fn unique_products() {
        let rep = Representation::<i64>::new(&fixtures::klein());
        let gens = vec![w("1"), w("2")];
        let r = unique_product_check(&rep, &gens, &gens).unwrap();
        assert_eq!(r.witness, Some((w("1"), w("2"))));
        assert_eq!(r.repeated, vec![(w("1"), w("1"), 2)]);

        let rep = Representation::<i64>::new(&Solution::trivial(2));
        let r = unique_product_check(&rep, &gens, &gens).unwrap();
        assert_eq!(r.witness, Some((w("1"), w("1"))));

        let one = vec![w("1")];
        let r = unique_product_check(&rep, &one, &one).unwrap();
        assert_eq!(r.witness, Some((w("1"), w("1"))));
        assert!(unique_product_check(&rep, &[], &one).is_err());
    }
}
