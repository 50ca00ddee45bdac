//! The n = 3 census recomputed from scratch over all `(f, g)` table pairs,
//! checking `S∘S = Id` and the braid relation directly without deriving `g`.

use std::collections::BTreeSet;

use ybgroup::census::{canonical_form, enumerate};
use ybgroup::solution::are_isomorphic;
use ybgroup::Permutation;

type Table = Vec<Vec<usize>>;

fn involutive(f: &Table, g: &Table, n: usize) -> bool {
    let s = |x: usize, y: usize| (g[x][y], f[y][x]);
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (u, v) = s(x, y);
            s(u, v) == (x, y)
        })
    })
}

fn braided(f: &Table, g: &Table, n: usize) -> bool {
    let s = |x: usize, y: usize| (g[x][y], f[y][x]);
    let s12 = |(a, b, c)| {
        let (a, b) = s(a, b);
        (a, b, c)
    };
    let s23 = |(a, b, c)| {
        let (b, c) = s(b, c);
        (a, b, c)
    };
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| s12(s23(s12((x, y, z)))) == s23(s12(s23((x, y, z))))))
    })
}

/// Relabeling-invariant key: sorted minimum over all relabelings, computed on raw tables.
fn min_key(f: &Table, g: &Table, n: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for sigma in Permutation::all(n) {
        let sig = sigma.images();
        let mut inv = vec![0; n];
        for (x, &y) in sig.iter().enumerate() {
            inv[y] = x;
        }
        let mut key = Vec::with_capacity(2 * n * n);
        for table in [f, g] {
            for new_x in 0..n {
                for new_y in 0..n {
                    key.push(sig[table[inv[new_x]][inv[new_y]]]);
                }
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

#[test]
fn n3_count_matches_brute_force_over_table_pairs() {
    let n = 3;
    let perms: Vec<Vec<usize>> = Permutation::all(n).iter().map(|p| p.images().to_vec()).collect();
    let families: Vec<Table> = (0..perms.len().pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let p = perms[i % perms.len()].clone();
                    i /= perms.len();
                    p
                })
                .collect()
        })
        .collect();
    let mut classes = BTreeSet::new();
    for f in &families {
        for g in &families {
            if involutive(f, g, n) && braided(f, g, n) {
                classes.insert(min_key(f, g, n));
            }
        }
    }
    let census = enumerate(n, false).unwrap();
    assert_eq!(classes.len(), 5);
    assert_eq!(census.len(), classes.len());
    for e in &census {
        assert_eq!(canonical_form(&e.solution).unwrap(), e.solution);
        assert!(classes.contains(&e.solution.table_key()));
    }
    for (i, a) in census.iter().enumerate() {
        for b in &census[i + 1..] {
            assert!(are_isomorphic(&a.solution, &b.solution).unwrap().is_none());
        }
    }
}
