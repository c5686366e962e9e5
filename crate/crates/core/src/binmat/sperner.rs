//! Optimal 1-CFFs from Sperner families of middle-layer subsets.

use crate::combinatorics::{binomial, KSubsets};

use super::BinaryMatrix;

/// Smallest `s >= 1` with `C(s, floor(s/2)) >= n`: the fewest rows of any
/// 1-CFF on `n` columns.
pub fn min_t_sperner(n: u64) -> usize {
    let mut s: u64 = 1;
    loop {
        // The central binomial overflows u128 only far past any u64 `n`.
        if binomial(s, s / 2).is_none_or(|c| c >= n as u128) {
            return s as usize;
        }
        s += 1;
    }
}

/// The `t(n) x n` matrix whose column `j` is the characteristic vector of the
/// `j`-th `floor(t/2)`-subset of `{0, .., t-1}` in lexicographic order.
///
/// For `n = 1` the formula picks the empty subset, an all-zero column; the
/// single column is emitted as `[[1]]` instead.
pub fn sperner_matrix(n: usize) -> BinaryMatrix {
    assert!(n >= 1, "sperner_matrix needs at least one column");
    let t = min_t_sperner(n as u64);
    if n == 1 {
        return BinaryMatrix::from_rows(&[[1u8]]).expect("1x1");
    }
    let blocks: Vec<Vec<usize>> = KSubsets::new(t, t / 2).take(n).collect();
    BinaryMatrix::from_blocks(t, &blocks).expect("blocks are within the ground set")
}
