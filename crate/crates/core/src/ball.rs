use std::collections::{HashMap, VecDeque};

use crate::element::{Element, Representation};
use crate::error::{Error, Result};
use crate::scalar::Coord;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct BallEntry<T> {
    pub element: Element<T>,
    /// A shortest word evaluating to `element`.
    pub word: Word,
}

/// All elements within word-length `radius`, in breadth-first order.
///
/// Letters are tried in the order `x_1..x_n, x_1⁻¹..x_n⁻¹`, so the witnessing
/// words and the output order are deterministic.
pub fn ball<T: Coord>(
    rep: &Representation<T>,
    radius: usize,
    cap: usize,
) -> Result<Vec<BallEntry<T>>> {
    let n = rep.size();
    let letters: Vec<Letter> = (0..n)
        .map(Letter::new)
        .chain((0..n).map(|k| Letter::new(k).inv()))
        .collect();
    let mut seen: HashMap<Element<T>, usize> = HashMap::new();
    let mut out = vec![BallEntry {
        element: rep.identity(),
        word: Word::empty(),
    }];
    seen.insert(rep.identity(), 0);
    let mut frontier: VecDeque<usize> = VecDeque::from([0]);
    for _ in 0..radius {
        let mut next = VecDeque::new();
        while let Some(i) = frontier.pop_front() {
            for &l in &letters {
                let e = out[i]
                    .element
                    .multiply(rep.letter(l.generator, l.inverse))?;
                if seen.contains_key(&e) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "ball element count",
                        cap,
                    });
                }
                let mut word = out[i].word.clone();
                word.0.push(l);
                seen.insert(e.clone(), out.len());
                next.push_back(out.len());
                out.push(BallEntry { element: e, word });
            }
        }
        frontier = next;
    }
    Ok(out)
}
