//! Per-integer arithmetic-function tables built by a single linear sieve.
//!
//! Every other module reads Möbius, totient, von Mangoldt and smallest-prime-factor
//! values from a [`SieveTables`] instance. Tables are immutable once built.

use crate::error::{Error, Result};

/// Möbius, totient, von Mangoldt and smallest-prime-factor values for `1..=limit`.
///
/// Arrays are indexed by the integer itself; slot 0 is unused.
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    mobius: Vec<i8>,
    totient: Vec<u64>,
    mangoldt: Vec<f64>,
    spf: Vec<u32>,
}

/// Linear (Euler) sieve; every composite is struck exactly once by its smallest prime.
pub fn build_sieves(limit: u64) -> Result<SieveTables> {
    if limit == 0 {
        return Err(Error::invalid("sieve limit must be at least 1"));
    }
    if limit > u32::MAX as u64 {
        return Err(Error::invalid("sieve limit must fit in 32 bits"));
    }
    let n = limit as usize;
    let mut mobius = vec![0i8; n + 1];
    let mut totient = vec![0u64; n + 1];
    let mut mangoldt = vec![0f64; n + 1];
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<usize> = Vec::new();

    mobius[1] = 1;
    totient[1] = 1;
    spf[1] = 1;

    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mobius[i] = -1;
            totient[i] = i as u64 - 1;
            primes.push(i);
        }
        for &p in &primes {
            let t = p * i;
            if t > n || p > spf[i] as usize {
                break;
            }
            spf[t] = p as u32;
            if p == spf[i] as usize {
                mobius[t] = 0;
                totient[t] = totient[i] * p as u64;
            } else {
                mobius[t] = -mobius[i];
                totient[t] = totient[i] * (p as u64 - 1);
            }
        }
    }

    // Λ(pᵐ) = log p: walk prime powers directly.
    for &p in &primes {
        let lp = (p as f64).ln();
        let mut q = p;
        loop {
            mangoldt[q] = lp;
            match q.checked_mul(p) {
                Some(next) if next <= n => q = next,
                _ => break,
            }
        }
    }

    Ok(SieveTables {
        limit,
        mobius,
        totient,
        mangoldt,
        spf,
    })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn check(&self, what: &'static str, value: u64) -> Result<()> {
        if value == 0 {
            return Err(Error::invalid(format!("{what} must be positive")));
        }
        if value > self.limit {
            return Err(Error::OutOfRange {
                what,
                value,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// μ(n). Panics if `n` is 0 or above the limit.
    #[inline]
    pub fn mobius(&self, n: u64) -> i64 {
        self.mobius[n as usize] as i64
    }

    #[inline]
    pub fn totient(&self, n: u64) -> u64 {
        self.totient[n as usize]
    }

    #[inline]
    pub fn mangoldt(&self, n: u64) -> f64 {
        self.mangoldt[n as usize]
    }

    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// Prime factorization of `n` as (prime, exponent) pairs, ascending.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    /// All positive divisors of `n`, unordered.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n) {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for j in 0..len {
                    divs.push(divs[j] * pk);
                }
            }
        }
        divs
    }

    /// Squarefree divisors of `n` paired with their Möbius value.
    pub fn squarefree_divisors(&self, n: u64) -> Vec<(u64, i64)> {
        let mut divs = vec![(1u64, 1i64)];
        for (p, _) in self.factorize(n) {
            let len = divs.len();
            for j in 0..len {
                let (d, m) = divs[j];
                divs.push((d * p, -m));
            }
        }
        divs
    }

    /// Number of divisors of `n`.
    pub fn sigma0(&self, n: u64) -> Result<u64> {
        self.check("n", n)?;
        Ok(self
            .factorize(n)
            .iter()
            .map(|&(_, e)| e as u64 + 1)
            .product())
    }

    /// Number of divisors `d` of `n` with `d ≡ residue (mod modulus)`.
    pub fn divisor_count_residue(&self, n: u64, modulus: u64, residue: u64) -> Result<u64> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if residue >= modulus {
            return Err(Error::invalid(format!(
                "residue {residue} must be below modulus {modulus}"
            )));
        }
        self.check("n", n)?;
        Ok(self
            .divisors(n)
            .into_iter()
            .filter(|d| d % modulus == residue)
            .count() as u64)
    }

    /// Second Chebyshev function ψ(x) = Σ_{i≤x} Λ(i).
    pub fn psi(&self, x: u64) -> Result<f64> {
        self.check("x", x)?;
        Ok(self.mangoldt[1..=x as usize].iter().sum())
    }

    /// ψ(0..=limit) in one pass; index 0 holds 0.
    pub fn psi_prefix(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.mangoldt.len());
        let mut acc = 0.0;
        out.push(0.0);
        for &l in &self.mangoldt[1..] {
            acc += l;
            out.push(acc);
        }
        out
    }

    /// Φ(0..=limit), the running totient sums (Farey sequence lengths).
    pub fn totient_prefix(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.totient.len());
        let mut acc = 0;
        out.push(0);
        for &t in &self.totient[1..] {
            acc += t;
            out.push(acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn brute_mobius(n: u64) -> i64 {
        let mut m = n;
        let mut k = 0;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if m > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn zero_limit_rejected() {
        assert!(matches!(build_sieves(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn base_case() {
        let t = build_sieves(1).unwrap();
        assert_eq!(t.mobius(1), 1);
        assert_eq!(t.totient(1), 1);
        assert_eq!(t.spf(1), 1);
        assert_eq!(t.psi(1).unwrap(), 0.0);
    }

    #[test]
    fn small_values() {
        let t = build_sieves(10).unwrap();
        assert_eq!(t.mobius(6), 1);
        assert_eq!(t.mobius(4), 0);
        assert_eq!(t.totient(10), 4);
        let t = build_sieves(9).unwrap();
        assert_eq!(t.mangoldt(9), 3f64.ln());
        assert_eq!(t.mangoldt(6), 0.0);
    }

    #[test]
    fn tables_match_definitions() {
        let t = build_sieves(3000).unwrap();
        for n in 1..=3000u64 {
            assert_eq!(t.mobius(n), brute_mobius(n), "mu({n})");
            let phi = (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64;
            assert_eq!(t.totient(n), phi, "phi({n})");
            let divs = brute_divisors(n);
            assert_eq!(divs.iter().map(|&d| t.totient(d)).sum::<u64>(), n);
            let mu_sum: i64 = divs.iter().map(|&d| t.mobius(d)).sum();
            assert_eq!(mu_sum, (n == 1) as i64);
            let mut got = t.divisors(n);
            got.sort_unstable();
            assert_eq!(got, divs);
            assert_eq!(t.sigma0(n).unwrap(), divs.len() as u64);
        }
    }

    #[test]
    fn mangoldt_prime_powers() {
        let t = build_sieves(1000).unwrap();
        for n in 2..=1000u64 {
            let f = t.factorize(n);
            if f.len() == 1 {
                assert_eq!(t.mangoldt(n), (f[0].0 as f64).ln());
            } else {
                assert_eq!(t.mangoldt(n), 0.0);
            }
        }
    }

    #[test]
    fn sigma0_examples() {
        let t = build_sieves(100).unwrap();
        assert_eq!(t.sigma0(1).unwrap(), 1);
        assert_eq!(t.sigma0(12).unwrap(), 6);
        for p in [2, 3, 5, 7, 11, 97] {
            assert_eq!(t.sigma0(p).unwrap(), 2);
        }
        assert!(matches!(t.sigma0(101), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn residue_divisor_counts() {
        let t = build_sieves(100).unwrap();
        // divisors of 12 that are multiples of 4: {4, 12}
        assert_eq!(t.divisor_count_residue(12, 4, 0).unwrap(), 2);
        assert_eq!(t.divisor_count_residue(1, 4, 1).unwrap(), 1);
        assert_eq!(t.divisor_count_residue(60, 1, 0).unwrap(), 12);
        assert!(matches!(
            t.divisor_count_residue(12, 4, 4),
            Err(Error::InvalidArgument(_))
        ));
        for n in 1..=100 {
            for q in 1..=9 {
                let total: u64 = (0..q)
                    .map(|r| t.divisor_count_residue(n, q, r).unwrap())
                    .sum();
                assert_eq!(total, t.sigma0(n).unwrap());
            }
        }
    }

    #[test]
    fn psi_values() {
        let t = build_sieves(10_000).unwrap();
        let l2 = 2f64.ln();
        let l3 = 3f64.ln();
        assert_eq!(t.psi(2).unwrap(), l2);
        let expected = l2 + l3 + l2 + 5f64.ln() + 7f64.ln() + l2 + l3;
        assert!((t.psi(10).unwrap() - expected).abs() < 1e-12);
        let prefix = t.psi_prefix();
        for x in 2..=10_000usize {
            assert!(prefix[x] >= prefix[x - 1]);
            assert!(prefix[x] <= x as f64 * (x as f64).ln());
        }
        assert!(t.psi(10_001).is_err());
    }
}
