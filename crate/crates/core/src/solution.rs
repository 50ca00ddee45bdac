//! Finite non-degenerate involutive braided solutions `S(x,y) = (g_x(y), f_y(x))`.

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` accepted by the exhaustive isomorphism and canonical-form scans.
pub const ISOMORPHISM_SIZE_CAP: usize = 8;
/// Largest `n` accepted by the exhaustive bipartition scan.
pub const DECOMPOSITION_SIZE_CAP: usize = 20;

/// One axiom failure with a concrete counterexample (points are 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `S(S(x,y)) != (x,y)`.
    NotInvolutive {
        pair: (usize, usize),
        image: (usize, usize),
    },
    /// `S12 S23 S12 != S23 S12 S23` at the given triple.
    NotBraided {
        triple: (usize, usize, usize),
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInvolutive { pair, image } => write!(
                f,
                "not involutive: S(S({}, {})) = ({}, {})",
                pair.0, pair.1, image.0, image.1
            ),
            Violation::NotBraided {
                triple,
                left,
                right,
            } => write!(
                f,
                "not braided at ({}, {}, {}): S12S23S12 gives ({}, {}, {}), S23S12S23 gives ({}, {}, {})",
                triple.0, triple.1, triple.2, left.0, left.1, left.2, right.0, right.1, right.2
            ),
        }
    }
}

/// Why a candidate table pair is not a solution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    /// Shape problems or a repeated/out-of-range index in some `f_x` or `g_x`.
    #[error("malformed tables: {}", .0.join("; "))]
    Malformed(Vec<String>),
    /// Well-formed permutations that violate an axiom; one entry per violated axiom.
    #[error("axioms violated: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Axioms(Vec<Violation>),
}

impl From<ValidationError> for Error {
    fn from(e: ValidationError) -> Self {
        match e {
            ValidationError::Malformed(_) => Error::InvalidInput(e.to_string()),
            ValidationError::Axioms(_) => Error::Inconsistent(e.to_string()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Solution {
    f: Vec<Permutation>,
    g: Vec<Permutation>,
    f_inv: Vec<Permutation>,
}

impl Solution {
    /// Validates 1-based one-line tables. `g = None` derives `g` from `f`.
    pub fn validate(
        n: usize,
        f: &[Vec<usize>],
        g: Option<&[Vec<usize>]>,
    ) -> Result<Solution, ValidationError> {
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("n must be positive".to_string());
        }
        let f_perms = parse_family("f", n, f, &mut problems);
        let g_perms = match g {
            Some(g) => parse_family("g", n, g, &mut problems),
            None => f_perms.as_ref().and_then(|fp| {
                let derived = derive_g_from_f(fp);
                let derived: Vec<Vec<usize>> = derived
                    .into_iter()
                    .map(|row| row.into_iter().map(|y| y + 1).collect())
                    .collect();
                parse_family("derived g", n, &derived, &mut problems)
            }),
        };
        if !problems.is_empty() {
            return Err(ValidationError::Malformed(problems));
        }
        Self::from_permutations(f_perms.unwrap(), g_perms.unwrap())
    }

    /// Checks involutivity and the braid relation on already well-formed families.
    pub fn from_permutations(
        f: Vec<Permutation>,
        g: Vec<Permutation>,
    ) -> Result<Solution, ValidationError> {
        let n = f.len();
        let shape_ok = n > 0
            && g.len() == n
            && f.iter().chain(g.iter()).all(|p| p.degree() == n);
        if !shape_ok {
            return Err(ValidationError::Malformed(vec![format!(
                "expected {n} permutations of degree {n} in both f and g"
            )]));
        }
        let f_inv = f.iter().map(Permutation::inverse).collect();
        let s = Solution { f, g, f_inv };
        let violations = s.axiom_violations();
        if violations.is_empty() {
            Ok(s)
        } else {
            Err(ValidationError::Axioms(violations))
        }
    }

    /// Derives `g` from `f` and validates the result.
    pub fn from_f(f: Vec<Permutation>) -> Result<Solution, ValidationError> {
        let g = derive_g_from_f(&f)
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| ValidationError::Malformed(vec![format!("derived g: {e}")]))?;
        Self::from_permutations(f, g)
    }

    /// `S(x,y) = (y,x)` on `n` points.
    pub fn trivial(n: usize) -> Solution {
        Self::from_f(vec![Permutation::identity(n); n]).expect("trivial solution is valid")
    }

    /// Permutation solution: every `f_x` equal to `sigma`.
    pub fn permutation_solution(sigma: &Permutation) -> Result<Solution, ValidationError> {
        Self::from_f(vec![sigma.clone(); sigma.degree()])
    }

    pub fn size(&self) -> usize {
        self.f.len()
    }

    pub fn f(&self, x: usize) -> &Permutation {
        &self.f[x]
    }

    pub fn g(&self, x: usize) -> &Permutation {
        &self.g[x]
    }

    pub fn f_inv(&self, x: usize) -> &Permutation {
        &self.f_inv[x]
    }

    pub fn f_family(&self) -> &[Permutation] {
        &self.f
    }

    pub fn g_family(&self) -> &[Permutation] {
        &self.g
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.g[x].apply(y), self.f[y].apply(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.f.iter().chain(self.g.iter()).all(Permutation::is_identity)
    }

    pub fn all_f_equal(&self) -> bool {
        self.f.windows(2).all(|w| w[0] == w[1])
    }

    fn axiom_violations(&self) -> Vec<Violation> {
        let n = self.size();
        let mut out = Vec::new();
        'inv: for x in 0..n {
            for y in 0..n {
                let (u, v) = self.apply(x, y);
                let back = self.apply(u, v);
                if back != (x, y) {
                    out.push(Violation::NotInvolutive {
                        pair: (x + 1, y + 1),
                        image: (back.0 + 1, back.1 + 1),
                    });
                    break 'inv;
                }
            }
        }
        let s12 = |(a, b, c): (usize, usize, usize)| {
            let (a, b) = self.apply(a, b);
            (a, b, c)
        };
        let s23 = |(a, b, c): (usize, usize, usize)| {
            let (b, c) = self.apply(b, c);
            (a, b, c)
        };
        'braid: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    let left = s12(s23(s12(t)));
                    let right = s23(s12(s23(t)));
                    if left != right {
                        let one = |(a, b, c): (usize, usize, usize)| (a + 1, b + 1, c + 1);
                        out.push(Violation::NotBraided {
                            triple: one(t),
                            left: one(left),
                            right: one(right),
                        });
                        break 'braid;
                    }
                }
            }
        }
        out
    }

    /// The same solution with every point `x` renamed to `sigma(x)`.
    pub fn relabel(&self, sigma: &Permutation) -> Solution {
        let n = self.size();
        let mut f = vec![Permutation::identity(n); n];
        let mut g = vec![Permutation::identity(n); n];
        for x in 0..n {
            f[sigma.apply(x)] = self.f[x].conjugate_by(sigma);
            g[sigma.apply(x)] = self.g[x].conjugate_by(sigma);
        }
        let f_inv = f.iter().map(Permutation::inverse).collect();
        Solution { f, g, f_inv }
    }

    /// Restriction to an invariant subset; `points` sorted, 0-based.
    /// The restricted solution is re-indexed by position in `points`.
    pub fn restrict(&self, points: &[usize]) -> Result<Solution, ValidationError> {
        let mut index = vec![usize::MAX; self.size()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut problems = Vec::new();
        let mut table = |family: &[Permutation], name: &str| -> Vec<Vec<usize>> {
            points
                .iter()
                .map(|&x| {
                    points
                        .iter()
                        .map(|&y| {
                            let img = index[family[x].apply(y)];
                            if img == usize::MAX {
                                problems.push(format!("{name}_{} leaves the subset", x + 1));
                                1
                            } else {
                                img + 1
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let f = table(&self.f, "f");
        let g = table(&self.g, "g");
        if !problems.is_empty() {
            return Err(ValidationError::Malformed(problems));
        }
        Solution::validate(points.len(), &f, Some(&g))
    }

    /// 1-based tables `(f, g)`.
    pub fn tables(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        (
            self.f.iter().map(Permutation::one_line).collect(),
            self.g.iter().map(Permutation::one_line).collect(),
        )
    }

    /// Concatenated 0-based `(f, g)` images, used as the lexicographic key.
    pub fn table_key(&self) -> Vec<usize> {
        self.f
            .iter()
            .chain(self.g.iter())
            .flat_map(|p| p.images().iter().copied())
            .collect()
    }
}

fn parse_family(
    name: &str,
    n: usize,
    rows: &[Vec<usize>],
    problems: &mut Vec<String>,
) -> Option<Vec<Permutation>> {
    if rows.len() != n {
        problems.push(format!("{name}: expected {n} permutations, found {}", rows.len()));
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            problems.push(format!(
                "{name}_{}: expected {n} entries, found {}",
                x + 1,
                row.len()
            ));
            continue;
        }
        match Permutation::from_one_line(row) {
            Ok(p) => out.push(p),
            Err(e) => problems.push(format!("{name}_{}: {e}", x + 1)),
        }
    }
    (out.len() == n).then_some(out)
}

/// `g_x(y) = f⁻¹_{f_y(x)}(y)`, the only `g` compatible with involutivity.
///
/// Returns raw 0-based tables; rows need not be permutations for arbitrary `f`.
pub fn derive_g_from_f(f: &[Permutation]) -> Vec<Vec<usize>> {
    let n = f.len();
    let f_inv: Vec<Permutation> = f.iter().map(Permutation::inverse).collect();
    (0..n)
        .map(|x| (0..n).map(|y| f_inv[f[y].apply(x)].apply(y)).collect())
        .collect()
}

/// Parent point -> child point (0-based).
pub type ClassMap = Vec<usize>;

/// Quotient by `x ≡ y ⇔ f_x = f_y`. Classes are numbered by smallest member.
pub fn retract_step(s: &Solution) -> Result<(Solution, ClassMap)> {
    let n = s.size();
    let mut class_map = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class_map[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for (y, slot) in class_map.iter_mut().enumerate().skip(x) {
            if s.f(y) == s.f(x) {
                *slot = c;
            }
        }
    }
    let k = reps.len();
    let induced = |family: &[Permutation], name: &str| -> Result<Vec<Vec<usize>>> {
        let mut table = vec![vec![0; k]; k];
        for x in 0..n {
            for y in 0..n {
                let img = class_map[family[x].apply(y)];
                let slot = &mut table[class_map[x]][class_map[y]];
                if x == reps[class_map[x]] && y == reps[class_map[y]] {
                    *slot = img + 1;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if table[class_map[x]][class_map[y]] != class_map[family[x].apply(y)] + 1 {
                    return Err(Error::Inconsistent(format!(
                        "induced {name} depends on representatives at ({}, {})",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        Ok(table)
    };
    let f = induced(s.f_family(), "f")?;
    let g = induced(s.g_family(), "g")?;
    let child = Solution::validate(k, &f, Some(&g))
        .map_err(|e| Error::Inconsistent(format!("retract is not a solution: {e}")))?;
    Ok((child, class_map))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerStatus {
    /// Reaches a single point after `level` retract steps.
    Retractable { level: usize },
    /// A retract step stopped shrinking at `stuck_size > 1` points.
    NonRetractable { stuck_size: usize },
}

#[derive(Debug, Clone)]
pub struct RetractLevel {
    pub solution: Solution,
    /// From the previous level's points onto this level's points.
    pub class_map: ClassMap,
}

#[derive(Debug, Clone)]
pub struct RetractTower {
    pub base: Solution,
    /// Strictly shrinking levels after the base.
    pub levels: Vec<RetractLevel>,
    pub status: TowerStatus,
}

impl RetractTower {
    /// Solution at depth `j` (0 is the base).
    pub fn solution(&self, j: usize) -> &Solution {
        if j == 0 {
            &self.base
        } else {
            &self.levels[j - 1].solution
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

pub fn retract_tower(s: &Solution) -> Result<RetractTower> {
    let mut levels: Vec<RetractLevel> = Vec::new();
    let mut current = s.clone();
    let status = loop {
        if current.size() == 1 {
            break TowerStatus::Retractable {
                level: levels.len(),
            };
        }
        let (child, class_map) = retract_step(&current)?;
        if child.size() == current.size() {
            break TowerStatus::NonRetractable {
                stuck_size: current.size(),
            };
        }
        levels.push(RetractLevel {
            solution: child.clone(),
            class_map,
        });
        current = child;
    };
    Ok(RetractTower {
        base: s.clone(),
        levels,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// `X = part ⊔ complement`, both invariant and non-degenerate (0-based, sorted).
    Decomposable {
        part: Vec<usize>,
        complement: Vec<usize>,
    },
    Indecomposable,
}

fn is_invariant(s: &Solution, subset: &[bool]) -> bool {
    let n = s.size();
    (0..n).filter(|&x| subset[x]).all(|x| {
        (0..n).filter(|&y| subset[y]).all(|y| {
            let (u, v) = s.apply(x, y);
            subset[u] && subset[v]
        })
    })
}

/// Exhaustive scan over bipartitions `{Y, X∖Y}` with the first point in `Y`.
pub fn is_decomposable(s: &Solution) -> Result<Decomposition> {
    let n = s.size();
    if n > DECOMPOSITION_SIZE_CAP {
        return Err(Error::SizeCap {
            n,
            limit: DECOMPOSITION_SIZE_CAP,
        });
    }
    if n < 2 {
        return Ok(Decomposition::Indecomposable);
    }
    // bit i of `rest` decides whether point i+1 joins point 0
    for rest in 0u32..(1u32 << (n - 1)) - 1 {
        let in_part: Vec<bool> = (0..n)
            .map(|x| x == 0 || rest & (1 << (x - 1)) != 0)
            .collect();
        let out_part: Vec<bool> = in_part.iter().map(|b| !b).collect();
        if !is_invariant(s, &in_part) || !is_invariant(s, &out_part) {
            continue;
        }
        let part: Vec<usize> = (0..n).filter(|&x| in_part[x]).collect();
        let complement: Vec<usize> = (0..n).filter(|&x| out_part[x]).collect();
        if s.restrict(&part).is_ok() && s.restrict(&complement).is_ok() {
            return Ok(Decomposition::Decomposable { part, complement });
        }
    }
    Ok(Decomposition::Indecomposable)
}

/// Smallest `sigma` (lexicographically) with `s1.relabel(sigma) == s2`.
pub fn are_isomorphic(s1: &Solution, s2: &Solution) -> Result<Option<Permutation>> {
    let n = s1.size();
    if s2.size() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: s2.size(),
        });
    }
    if n > ISOMORPHISM_SIZE_CAP {
        return Err(Error::SizeCap {
            n,
            limit: ISOMORPHISM_SIZE_CAP,
        });
    }
    Ok(Permutation::all(n)
        .into_iter()
        .find(|sigma| is_relabeling(s1, s2, sigma)))
}

fn is_relabeling(s1: &Solution, s2: &Solution, sigma: &Permutation) -> bool {
    let n = s1.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (u, v) = s1.apply(x, y);
            s2.apply(sigma.apply(x), sigma.apply(y)) == (sigma.apply(u), sigma.apply(v))
        })
    })
}
