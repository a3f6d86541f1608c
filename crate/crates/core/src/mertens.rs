//! The Mertens function, computed from the Möbius table and independently by
//! memoized recursion, plus the summation identities it satisfies.
//!
//! Every identity check comes in two flavours: a quotient-block evaluation
//! (the production path, `O(√x)` blocks) and a `_naive` term-by-term loop kept
//! as an oracle. They return the computed sides instead of booleans so callers
//! can report discrepancies.

use std::collections::HashMap;

use crate::error::Result;
use crate::quotient::QuotientBlocks;
use crate::sieves::SieveTables;

/// Prefix sums of μ: `M(k) = Σ_{j≤k} μ(j)` for `k` in `0..=limit`.
#[derive(Debug, Clone)]
pub struct MertensTable {
    limit: u64,
    prefix: Vec<i64>,
}

pub fn mertens_table(tables: &SieveTables) -> MertensTable {
    let limit = tables.limit();
    let mut prefix = Vec::with_capacity(limit as usize + 1);
    let mut acc = 0;
    prefix.push(0);
    for n in 1..=limit {
        acc += tables.mobius(n);
        prefix.push(acc);
    }
    MertensTable { limit, prefix }
}

impl MertensTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `M(y)`, with `M(0) = 0`. Panics above the limit.
    #[inline]
    pub fn get(&self, y: u64) -> i64 {
        self.prefix[y as usize]
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub(crate) fn check(&self, what: &'static str, value: u64) -> Result<()> {
        if value > self.limit {
            return Err(crate::Error::OutOfRange {
                what,
                value,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Table-free Mertens evaluation via `M(y) = 1 - Σ_{n=2}^{y} M(⌊y/n⌋)`.
///
/// Only the `O(√y)` distinct floor quotients of `y` are ever visited, and the
/// cache is shared between calls.
#[derive(Debug, Default, Clone)]
pub struct MertensMemo {
    cache: HashMap<u64, i64>,
}

impl MertensMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mertens(&mut self, y: u64) -> i64 {
        if y == 0 {
            return 0;
        }
        if let Some(&m) = self.cache.get(&y) {
            return m;
        }
        let mut acc = 1i64;
        for (lo, hi, q) in QuotientBlocks::starting_at(y, 2) {
            acc -= (hi - lo + 1) as i64 * self.mertens(q);
        }
        self.cache.insert(y, acc);
        acc
    }

    pub fn cached_values(&self) -> usize {
        self.cache.len()
    }
}

/// `Σ_{i=1}^{x} M(⌊x/(i·n)⌋)`; equals 1 for every `1 ≤ n ≤ x`.
pub fn check_mikolas_sum(x: u64, n: u64, mt: &MertensTable) -> Result<i64> {
    mt.check("x", x)?;
    if n == 0 {
        return Err(crate::Error::invalid("n must be positive"));
    }
    // ⌊x/(in)⌋ = ⌊⌊x/n⌋/i⌋, and terms with i > ⌊x/n⌋ vanish.
    let y = x / n;
    Ok(QuotientBlocks::new(y)
        .map(|(lo, hi, q)| (hi - lo + 1) as i64 * mt.get(q))
        .sum())
}

pub fn check_mikolas_sum_naive(x: u64, n: u64, mt: &MertensTable) -> Result<i64> {
    mt.check("x", x)?;
    if n == 0 {
        return Err(crate::Error::invalid("n must be positive"));
    }
    Ok((1..=x).map(|i| mt.get(x / (i * n))).sum())
}

/// Both sides of `Σ M(⌊x/i⌋)·i = Φ(x) = ½Σ μ(n)⌊x/n⌋² + ½`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiIdentity {
    /// `Σ_{i≤x} M(⌊x/i⌋)·i`
    pub weighted_mertens: i64,
    /// `Σ_{i≤x} φ(i)`
    pub totient_sum: i64,
    /// `(Σ_{n≤x} μ(n)⌊x/n⌋² + 1) / 2`
    pub mobius_squares: i64,
}

impl PhiIdentity {
    pub fn holds(&self) -> bool {
        self.weighted_mertens == self.totient_sum && self.mobius_squares == self.totient_sum
    }

    pub fn pair(&self) -> (i64, i64) {
        (self.weighted_mertens, self.totient_sum)
    }
}

fn range_sum(lo: u64, hi: u64) -> i64 {
    ((lo + hi) * (hi - lo + 1) / 2) as i64
}

pub fn check_phi_identity(x: u64, mt: &MertensTable, tables: &SieveTables) -> Result<PhiIdentity> {
    mt.check("x", x)?;
    tables.check("x", x)?;
    let weighted_mertens = QuotientBlocks::new(x)
        .map(|(lo, hi, q)| range_sum(lo, hi) * mt.get(q))
        .sum();
    // Σ μ(n) over a block is a difference of Mertens values.
    let twice: i64 = QuotientBlocks::new(x)
        .map(|(lo, hi, q)| (mt.get(hi) - mt.get(lo - 1)) * (q * q) as i64)
        .sum();
    let totient_sum = (1..=x).map(|i| tables.totient(i) as i64).sum();
    Ok(PhiIdentity {
        weighted_mertens,
        totient_sum,
        mobius_squares: (twice + 1) / 2,
    })
}

pub fn check_phi_identity_naive(
    x: u64,
    mt: &MertensTable,
    tables: &SieveTables,
) -> Result<PhiIdentity> {
    mt.check("x", x)?;
    tables.check("x", x)?;
    let weighted_mertens = (1..=x).map(|i| mt.get(x / i) * i as i64).sum();
    let twice: i64 = (1..=x)
        .map(|n| tables.mobius(n) * ((x / n) * (x / n)) as i64)
        .sum();
    let totient_sum = (1..=x).map(|i| tables.totient(i) as i64).sum();
    Ok(PhiIdentity {
        weighted_mertens,
        totient_sum,
        mobius_squares: (twice + 1) / 2,
    })
}

/// `D(n) = Σ_{k≤n} σ₀(k) = Σ_{k≤n} ⌊n/k⌋`, by the hyperbola method.
pub fn divisor_summatory(n: u64) -> i64 {
    if n == 0 {
        return 0;
    }
    let r = n.isqrt();
    let s: u64 = (1..=r).map(|k| n / k).sum();
    (2 * s - r * r) as i64
}

/// `Σ_{i≤x} M(⌊x/i⌋)·σ₀(i)`; equals `x`.
pub fn check_sigma0_identity(x: u64, mt: &MertensTable) -> Result<i64> {
    mt.check("x", x)?;
    Ok(QuotientBlocks::new(x)
        .map(|(lo, hi, q)| (divisor_summatory(hi) - divisor_summatory(lo - 1)) * mt.get(q))
        .sum())
}

pub fn check_sigma0_identity_naive(x: u64, mt: &MertensTable, tables: &SieveTables) -> Result<i64> {
    mt.check("x", x)?;
    let mut acc = 0;
    for i in 1..=x {
        acc += mt.get(x / i) * tables.sigma0(i)? as i64;
    }
    Ok(acc)
}

/// `(Σ_{i≤x} M(⌊x/i⌋)·ln i, ψ(x))`. `log_fact` comes from
/// [`log_factorials`](crate::quotient::log_factorials) and must reach `x`.
pub fn check_psi_identity(
    x: u64,
    mt: &MertensTable,
    tables: &SieveTables,
    log_fact: &[f64],
) -> Result<(f64, f64)> {
    mt.check("x", x)?;
    let psi = tables.psi(x)?;
    if (log_fact.len() as u64) <= x {
        return Err(crate::Error::invalid("log-factorial table too short"));
    }
    let lhs = QuotientBlocks::new(x)
        .map(|(lo, hi, q)| (log_fact[hi as usize] - log_fact[lo as usize - 1]) * mt.get(q) as f64)
        .sum();
    Ok((lhs, psi))
}

pub fn check_psi_identity_naive(
    x: u64,
    mt: &MertensTable,
    tables: &SieveTables,
) -> Result<(f64, f64)> {
    mt.check("x", x)?;
    let psi = tables.psi(x)?;
    let lhs = (1..=x)
        .map(|i| mt.get(x / i) as f64 * (i as f64).ln())
        .sum();
    Ok((lhs, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::log_factorials;
    use crate::sieves::build_sieves;

    fn setup(n: u64) -> (SieveTables, MertensTable) {
        let t = build_sieves(n).unwrap();
        let mt = mertens_table(&t);
        (t, mt)
    }

    #[test]
    fn table_values() {
        let (_, mt) = setup(1);
        assert_eq!(mt.prefix(), &[0, 1]);
        let (_, mt) = setup(12);
        let want = [(12, -2), (6, -1), (4, -1), (3, -1), (2, 0), (1, 1)];
        for (y, m) in want {
            assert_eq!(mt.get(y), m, "M({y})");
        }
        for k in 1..=12 {
            assert!((mt.get(k) - mt.get(k - 1)).abs() <= 1);
        }
    }

    #[test]
    fn recursive_matches_table() {
        let (_, mt) = setup(10_000);
        let mut memo = MertensMemo::new();
        assert_eq!(memo.mertens(1), 1);
        assert_eq!(memo.mertens(12), -2);
        for y in 1..=10_000 {
            assert_eq!(memo.mertens(y), mt.get(y), "M({y})");
        }
    }

    #[test]
    fn recursive_touches_few_values() {
        let mut memo = MertensMemo::new();
        // M(10^6) = 212
        assert_eq!(memo.mertens(1_000_000), 212);
        assert!(memo.cached_values() <= 2 * 1000 + 1);
    }

    #[test]
    fn mikolas_examples() {
        let (_, mt) = setup(100);
        assert_eq!(check_mikolas_sum(1, 1, &mt).unwrap(), 1);
        assert_eq!(check_mikolas_sum(12, 1, &mt).unwrap(), 1);
        assert_eq!(check_mikolas_sum(12, 3, &mt).unwrap(), 1);
        assert!(check_mikolas_sum(101, 1, &mt).is_err());
    }

    #[test]
    fn mikolas_exhaustive_small() {
        let (_, mt) = setup(2000);
        for x in 1..=2000 {
            for n in 1..=x {
                assert_eq!(check_mikolas_sum(x, n, &mt).unwrap(), 1, "x={x} n={n}");
            }
        }
        for x in (1..=400).step_by(7) {
            for n in 1..=x {
                assert_eq!(check_mikolas_sum_naive(x, n, &mt).unwrap(), 1);
            }
        }
    }

    #[test]
    fn phi_identity_examples() {
        let (t, mt) = setup(100);
        assert_eq!(check_phi_identity(1, &mt, &t).unwrap().pair(), (1, 1));
        assert_eq!(check_phi_identity(5, &mt, &t).unwrap().pair(), (10, 10));
        let p = check_phi_identity(12, &mt, &t).unwrap();
        assert_eq!(p.totient_sum, 46);
        assert!(p.holds());
        for x in 1..=100 {
            let a = check_phi_identity(x, &mt, &t).unwrap();
            assert!(a.holds(), "x={x}: {a:?}");
            assert_eq!(a, check_phi_identity_naive(x, &mt, &t).unwrap());
        }
    }

    #[test]
    fn divisor_summatory_matches_sigma0() {
        let t = build_sieves(2000).unwrap();
        let mut acc = 0;
        for n in 1..=2000 {
            acc += t.sigma0(n).unwrap() as i64;
            assert_eq!(divisor_summatory(n), acc);
        }
    }

    #[test]
    fn sigma0_identity() {
        let (t, mt) = setup(10_000);
        assert_eq!(check_sigma0_identity(1, &mt).unwrap(), 1);
        assert_eq!(check_sigma0_identity(12, &mt).unwrap(), 12);
        assert_eq!(check_sigma0_identity(9973, &mt).unwrap(), 9973);
        for x in 1..=500 {
            assert_eq!(
                check_sigma0_identity(x, &mt).unwrap(),
                check_sigma0_identity_naive(x, &mt, &t).unwrap()
            );
        }
    }

    #[test]
    fn psi_identity() {
        let (t, mt) = setup(10_000);
        let lf = log_factorials(10_000);
        assert_eq!(check_psi_identity(1, &mt, &t, &lf).unwrap(), (0.0, 0.0));
        let (a, b) = check_psi_identity(2, &mt, &t, &lf).unwrap();
        assert!((a - 2f64.ln()).abs() < 1e-12 && (b - 2f64.ln()).abs() < 1e-15);
        let (a, b) = check_psi_identity(10_000, &mt, &t, &lf).unwrap();
        assert!((a - b).abs() < 1e-6 * b);
        let (a2, _) = check_psi_identity_naive(10_000, &mt, &t).unwrap();
        assert!((a - a2).abs() < 1e-6 * b);
    }
}
