//! Binomial coefficients and lexicographic k-subset enumeration.

/// `C(n, k)` in checked arithmetic. `None` on overflow of `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` as sorted index vectors,
/// in lexicographic order of the sorted tuples: `[0,1] < [0,2] < .. < [n-2,n-1]`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        KSubsets { n, current }
    }

    /// Advance `subset` to its lexicographic successor in place. Returns
    /// `false` when `subset` was the last one.
    pub fn advance(subset: &mut [usize], n: usize) -> bool {
        let k = subset.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if subset[i] < n - k + i {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if Self::advance(&mut succ, self.n) {
            self.current = Some(succ);
        }
        Some(out)
    }
}
