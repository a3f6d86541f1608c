//! Quotient blocks: maximal runs of `i` sharing the same value of `⌊x/i⌋`.

/// Iterates `(lo, hi, q)` over `1..=x` such that `⌊x/i⌋ = q` for every `i` in `lo..=hi`.
///
/// There are at most `2√x` blocks.
#[derive(Debug, Clone)]
pub struct QuotientBlocks {
    x: u64,
    next: u64,
}

impl QuotientBlocks {
    pub fn new(x: u64) -> Self {
        QuotientBlocks { x, next: 1 }
    }

    /// Blocks restricted to `start..=x`.
    pub fn starting_at(x: u64, start: u64) -> Self {
        QuotientBlocks {
            x,
            next: start.max(1),
        }
    }
}

impl Iterator for QuotientBlocks {
    type Item = (u64, u64, u64);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        if self.next > self.x {
            return None;
        }
        let lo = self.next;
        let q = self.x / lo;
        let hi = self.x / q;
        self.next = hi + 1;
        Some((lo, hi, q))
    }
}

/// `ln(0!), ln(1!), …, ln(n!)`, so that `Σ_{i=lo}^{hi} ln i = out[hi] - out[lo-1]`.
pub fn log_factorials(n: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_range_exactly() {
        for x in 0..500u64 {
            let mut expect = 1;
            for (lo, hi, q) in QuotientBlocks::new(x) {
                assert_eq!(lo, expect);
                for i in lo..=hi {
                    assert_eq!(x / i, q);
                }
                if hi < x {
                    assert_ne!(x / (hi + 1), q);
                }
                expect = hi + 1;
            }
            assert_eq!(expect, x + 1);
            assert!(QuotientBlocks::new(x).count() as f64 <= 2.0 * (x as f64).sqrt() + 1.0);
        }
    }

    #[test]
    fn starting_offset() {
        let v: Vec<_> = QuotientBlocks::starting_at(10, 2).collect();
        assert_eq!(v, vec![(2, 2, 5), (3, 3, 3), (4, 5, 2), (6, 10, 1)]);
    }
}
