//! Enumeration of all solutions of size `n` up to relabeling.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frozen::frozen_data;
use crate::perm::Permutation;
use crate::presentation::emit_presentation;
use crate::solution::{
    is_decomposable, retract_tower, Decomposition, Solution, TowerStatus, ISOMORPHISM_SIZE_CAP,
};

/// Largest `n` scanned without the budget flag.
pub const DEFAULT_MAX_N: usize = 4;
/// Largest `n` reachable with the budget flag.
pub const BUDGET_MAX_N: usize = 5;

#[derive(Clone, Debug)]
pub struct CensusEntry {
    /// Lexicographically minimal relabeling.
    pub solution: Solution,
    pub decomposable: bool,
    pub tower: TowerStatus,
    pub class: usize,
    pub presentation_digest: String,
}

/// Minimum of the concatenated `(f, g)` tables over all relabelings.
pub fn canonical_form(s: &Solution) -> Result<Solution> {
    let n = s.size();
    if n > ISOMORPHISM_SIZE_CAP {
        return Err(Error::SizeCap {
            n,
            limit: ISOMORPHISM_SIZE_CAP,
        });
    }
    Ok(Permutation::all(n)
        .iter()
        .map(|sigma| s.relabel(sigma))
        .min_by(|a, b| a.table_key().cmp(&b.table_key()))
        .expect("at least one relabeling"))
}

fn canonical_key(s: &Solution, relabelings: &[Permutation]) -> Vec<usize> {
    relabelings
        .iter()
        .map(|sigma| s.relabel(sigma).table_key())
        .min()
        .expect("at least one relabeling")
}

fn family_from_index(mut index: usize, perms: &[Permutation], n: usize) -> Vec<Permutation> {
    let base = perms.len();
    let mut f = Vec::with_capacity(n);
    for _ in 0..n {
        f.push(perms[index % base].clone());
        index /= base;
    }
    f
}

/// Canonical keys of every solution, scanning all `(n!)^n` f-families.
pub fn scan_all(n: usize) -> BTreeSet<Vec<usize>> {
    let perms = Permutation::all(n);
    let total = perms.len().pow(n as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let f = family_from_index(i, &perms, n);
            Solution::from_f(f).ok()
        })
        .map(|s| canonical_key(&s, &perms))
        .collect::<BTreeSet<_>>()
}

/// Partial-assignment test used to prune the search: for assigned `f_x, f_y`
/// the derived `g_x` must stay injective, and whenever `v = f_y(x)` and
/// `u = f_v⁻¹(y)` are assigned, `f_y f_x = f_v f_u` must hold.
fn consistent_prefix(f: &[Permutation], f_inv: &[Permutation], n: usize) -> bool {
    let k = f.len();
    let last = k - 1;
    for x in 0..k {
        let mut used = vec![false; n];
        for y in 0..k {
            let v = f[y].apply(x);
            if v >= k {
                continue;
            }
            let u = f_inv[v].apply(y);
            if std::mem::replace(&mut used[u], true) {
                return false;
            }
            if u < k
                && (x == last || y == last || v == last || u == last)
                && f[y].compose(&f[x]) != f[v].compose(&f[u])
            {
                return false;
            }
        }
    }
    true
}

fn extend(
    prefix: &mut Vec<Permutation>,
    prefix_inv: &mut Vec<Permutation>,
    perms: &[Permutation],
    n: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if prefix.len() == n {
        if let Ok(s) = Solution::from_f(prefix.clone()) {
            out.insert(canonical_key(&s, perms));
        }
        return;
    }
    for p in perms {
        prefix.push(p.clone());
        prefix_inv.push(p.inverse());
        if consistent_prefix(prefix, prefix_inv, n) {
            extend(prefix, prefix_inv, perms, n, out);
        }
        prefix.pop();
        prefix_inv.pop();
    }
}

/// Backtracking over f-prefixes, sharded over the first two permutations.
pub fn scan_pruned(n: usize) -> BTreeSet<Vec<usize>> {
    let perms = Permutation::all(n);
    let shards: Vec<(usize, usize)> = (0..perms.len())
        .flat_map(|a| (0..perms.len()).map(move |b| (a, b)))
        .collect();
    let depth = n.min(2);
    shards
        .into_par_iter()
        .filter(|&(_, b)| depth == 2 || b == 0)
        .map(|(a, b)| {
            let mut out = BTreeSet::new();
            let mut prefix = vec![perms[a].clone()];
            if depth == 2 {
                prefix.push(perms[b].clone());
            }
            let mut prefix_inv: Vec<Permutation> = prefix.iter().map(Permutation::inverse).collect();
            if (1..=prefix.len()).all(|k| consistent_prefix(&prefix[..k], &prefix_inv[..k], n)) {
                extend(&mut prefix, &mut prefix_inv, &perms, n, &mut out);
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn solution_from_key(n: usize, key: &[usize]) -> Result<Solution> {
    let rows: Vec<Permutation> = key
        .chunks(n)
        .map(|c| Permutation::from_images(c.to_vec()))
        .collect::<Result<_>>()?;
    let (f, g) = rows.split_at(n);
    Ok(Solution::from_permutations(f.to_vec(), g.to_vec())?)
}

pub fn classify(s: &Solution) -> Result<CensusEntry> {
    Ok(CensusEntry {
        solution: s.clone(),
        decomposable: matches!(is_decomposable(s)?, Decomposition::Decomposable { .. }),
        tower: retract_tower(s)?.status,
        class: frozen_data(s)?.class,
        presentation_digest: emit_presentation(s).digest(),
    })
}

/// All solutions of size `n` up to isomorphism, in canonical-table order.
///
/// `n <= 4` scans every f-family; `n = 5` needs `budget` and uses the pruned
/// search.
pub fn enumerate(n: usize, budget: bool) -> Result<Vec<CensusEntry>> {
    if n == 0 {
        return Err(Error::InvalidInput("census size must be positive".into()));
    }
    let limit = if budget { BUDGET_MAX_N } else { DEFAULT_MAX_N };
    if n > limit {
        return Err(Error::SizeCap { n, limit });
    }
    let keys = if n <= DEFAULT_MAX_N {
        scan_all(n)
    } else {
        scan_pruned(n)
    };
    let solutions = keys
        .iter()
        .map(|k| solution_from_key(n, k))
        .collect::<Result<Vec<_>>>()?;
    solutions.par_iter().map(classify).collect()
}

/// Per-`n` totals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub total: usize,
    pub decomposable: usize,
    pub retractable_by_level: BTreeMap<usize, usize>,
    pub non_retractable: usize,
    pub non_retractable_indecomposable: usize,
}

pub fn counts(entries: &[CensusEntry]) -> CensusCounts {
    let mut c = CensusCounts {
        total: entries.len(),
        ..Default::default()
    };
    for e in entries {
        c.decomposable += e.decomposable as usize;
        match e.tower {
            TowerStatus::Retractable { level } => {
                *c.retractable_by_level.entry(level).or_default() += 1
            }
            TowerStatus::NonRetractable { .. } => {
                c.non_retractable += 1;
                c.non_retractable_indecomposable += !e.decomposable as usize;
            }
        }
    }
    c
}
