//! Exhaustive permutation search over slot indices.

use itertools::Itertools;

/// The lexicographically least permutation `σ` of `0..k` (one-line
/// notation, `σ[j]` is the image of `j`) with `accept(j, σ[j])` for every
/// `j`, if any exists.
pub fn find_permutation(k: usize, mut accept: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..k)
        .permutations(k)
        .find(|sigma| sigma.iter().enumerate().all(|(j, &sj)| accept(j, sj)))
}

/// All permutations of `0..k` in lexicographic order.
pub fn all_permutations(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k).permutations(k)
}
