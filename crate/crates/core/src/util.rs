/// C(a, 2).
#[inline]
pub fn binom2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

/// Writes `p = k·block + r` with `0 ≤ r < block`.
#[inline]
pub fn split(p: usize, block: usize) -> (usize, usize) {
    (p / block, p % block)
}
