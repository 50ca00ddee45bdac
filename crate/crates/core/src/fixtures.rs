//! Named solutions used throughout tests, docs and the CLI.

use crate::perm::Permutation;
use crate::solution::Solution;

/// The indecomposable non-retractable solution on four points with
/// `g_1=(1,2,3,4), g_2=(1,4,3,2), g_3=(1,3), g_4=(2,4)` and
/// `f_1=(1,2,4,3), f_2=(1,3,4,2), f_3=(2,3), f_4=(1,4)`.
pub fn example_n4() -> Solution {
    let c = |s: &str| Permutation::parse_cycles(4, s).unwrap();
    Solution::from_permutations(
        vec![c("(1,2,4,3)"), c("(1,3,4,2)"), c("(2,3)"), c("(1,4)")],
        vec![c("(1,2,3,4)"), c("(1,4,3,2)"), c("(1,3)"), c("(2,4)")],
    )
    .expect("fixture tables are a solution")
}

/// `f_1 = f_2 = (1,2)`; structure group `⟨a, b | a² = b²⟩`.
pub fn klein() -> Solution {
    cyclic_permutation_solution(2)
}

/// Permutation solution with every `f_x` the cycle `(1,2,..,n)`.
pub fn cyclic_permutation_solution(n: usize) -> Solution {
    let sigma = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap();
    Solution::permutation_solution(&sigma).expect("permutation solutions are valid")
}
