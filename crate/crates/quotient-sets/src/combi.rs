//! Lexicographic k-combination scanning over index ranges.

/// Visits every k-combination of `first..n` in lexicographic order until the
/// visitor returns `true` (stop). Returns whether a visitor stopped the scan.
pub(crate) fn scan_combinations(
    n: usize,
    k: usize,
    first: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k == 0 || first + k > n {
        return false;
    }
    let mut idx: Vec<usize> = (first..first + k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        // advance the rightmost index that still has room
        let mut pos = k;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            if idx[pos] < n - (k - pos) {
                break;
            }
        }
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
