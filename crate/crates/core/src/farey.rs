//! Farey sequences: enumeration, rank and counting through Mertens values,
//! per-order interval counts, and the Franel–Landau discrepancy sum.
//!
//! Conventions: `F_x` runs over reduced fractions in `(0, 1]` with denominator
//! at most `x`, so `|F_x| = Φ(x)` and `1/1` is the last element. `0/1` is only
//! produced when explicitly requested. All floors `⌊n·a/b⌋` are taken in integer
//! arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mertens::MertensTable;
use crate::sieves::SieveTables;

/// A reduced fraction `a/b` with `0 ≤ a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Fails unless `b > 0`, `a ≤ b` and `gcd(a, b) = 1`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        if num > den {
            return Err(Error::invalid(format!("{num}/{den} lies above 1")));
        }
        if num.gcd(&den) != 1 {
            return Err(Error::invalid(format!("{num}/{den} is not reduced")));
        }
        Ok(Fraction { num, den })
    }

    /// Reduces `a/b` first.
    pub fn reduced(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        let g = num.gcd(&den);
        Self::new(num / g, den / g)
    }

    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `⌊n · self⌋`
    #[inline]
    pub fn floor_mul(&self, n: u64) -> u64 {
        n * self.num / self.den
    }

    /// Number of integers `a ≥ 1` with `a < n · self`, i.e. `⌈n · self⌉ - 1` (0 when self is 0).
    #[inline]
    pub fn count_below_mul(&self, n: u64) -> u64 {
        if self.num == 0 {
            0
        } else {
            (n * self.num - 1) / self.den
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Streams `F_x` in ascending order with the neighbour recurrence.
///
/// Starting from the pair `0/1, 1/x`, each next term is
/// `(k·c - a)/(k·d - b)` with `k = ⌊(x + b)/d⌋`.
#[derive(Debug, Clone)]
pub struct FareyIter {
    order: u64,
    prev: (u64, u64),
    cur: (u64, u64),
    pending_zero: bool,
    done: bool,
}

impl FareyIter {
    /// Panics if `order` is 0.
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "Farey order must be positive");
        FareyIter {
            order,
            prev: (0, 1),
            cur: (1, order),
            pending_zero: false,
            done: false,
        }
    }

    /// Also yield `0/1` before the first term.
    pub fn with_zero(mut self) -> Self {
        self.pending_zero = true;
        self
    }
}

impl Iterator for FareyIter {
    type Item = Fraction;

    fn next(&mut self) -> Option<Fraction> {
        if self.pending_zero {
            self.pending_zero = false;
            return Some(Fraction::ZERO);
        }
        if self.done {
            return None;
        }
        let (a, b) = self.prev;
        let (c, d) = self.cur;
        let out = Fraction { num: c, den: d };
        if c == d {
            self.done = true;
        } else {
            let k = (self.order + b) / d;
            self.prev = (c, d);
            self.cur = (k * c - a, k * d - b);
        }
        Some(out)
    }
}

pub fn enumerate(order: u64) -> FareyIter {
    FareyIter::new(order)
}

/// 1-based position of `f` in `F_n`, via `Σ_{j=2}^{n} M(⌊n/j⌋)·⌊j·f⌋`.
pub fn rank(f: Fraction, n: u64, mt: &MertensTable) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("rank needs order n > 1"));
    }
    if f.num == 0 || f.num == f.den {
        return Err(Error::invalid(format!("{f} is not strictly inside (0, 1)")));
    }
    if f.den > n {
        return Err(Error::invalid(format!("{f} is not in F_{n}")));
    }
    mt.check("n", n)?;
    let t: i64 = (2..=n).map(|j| mt.get(n / j) * f.floor_mul(j) as i64).sum();
    u64::try_from(t).map_err(|_| Error::invalid("negative rank; Mertens table corrupt"))
}

/// `h(ξ, x)`: how many members of `F_x` are `≤ ξ`, from `Σ_{n≤x} ⌊n·ξ⌋·M(⌊x/n⌋)`.
pub fn count_upto(xi: Fraction, x: u64, mt: &MertensTable) -> Result<u64> {
    mt.check("x", x)?;
    let h: i64 = (1..=x)
        .map(|n| xi.floor_mul(n) as i64 * mt.get(x / n))
        .sum();
    Ok(h as u64)
}

/// Members of `F_x` strictly below `ξ`.
pub fn count_below(xi: Fraction, x: u64, mt: &MertensTable) -> Result<u64> {
    mt.check("x", x)?;
    let h: i64 = (1..=x)
        .map(|n| xi.count_below_mul(n) as i64 * mt.get(x / n))
        .sum();
    Ok(h as u64)
}

/// Whether the endpoints `1/I` and `2/I` belong to the counted intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `(0, 1/I]` and `(1/I, 2/I]`
    Closed,
    /// `(0, 1/I)` and `(1/I, 2/I)`
    Open,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Closed => "closed",
            Boundary::Open => "open",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalOptions {
    pub boundary: Boundary,
    /// Count `0/1` as a member of the first interval.
    pub include_zero: bool,
    /// Orders `y ≤` this value have both counts forced to 0.
    pub zero_override_limit: u64,
}

impl Default for IntervalOptions {
    fn default() -> Self {
        IntervalOptions {
            boundary: Boundary::Closed,
            include_zero: false,
            zero_override_limit: 2,
        }
    }
}

/// Per-order counts of Farey fractions in the first interval (near `1/I`) and
/// the second interval (between `1/I` and `2/I`), for orders `1..=limit`.
#[derive(Debug, Clone)]
pub struct IntervalCountSeries {
    interval: u64,
    limit: u64,
    options: IntervalOptions,
    first: Vec<i64>,
    second: Vec<i64>,
}

/// Builds the series incrementally: the new fractions at order `y` are the
/// `a/y` with `gcd(a, y) = 1`, counted by Möbius inversion over the squarefree
/// divisors of `y`.
pub fn interval_counts(
    interval: u64,
    limit: u64,
    tables: &SieveTables,
    options: IntervalOptions,
) -> Result<IntervalCountSeries> {
    if interval < 3 {
        return Err(Error::invalid(format!(
            "interval parameter I = {interval} must be ≥ 3"
        )));
    }
    tables.check("limit", limit)?;
    let i = interval;
    let n = limit as usize;
    let mut first = vec![0i64; n + 1];
    let mut second = vec![0i64; n + 1];
    // running h-values: ≤1/I, <1/I, ≤2/I, <2/I
    let (mut le1, mut lt1, mut le2, mut lt2) = (0i64, 0i64, 0i64, 0i64);
    for y in 1..=limit {
        for (d, mu) in tables.squarefree_divisors(y) {
            let m = y / d;
            le1 += mu * (m / i) as i64;
            lt1 += mu * ((m - 1) / i) as i64;
            le2 += mu * (2 * m / i) as i64;
            lt2 += mu * ((2 * m - 1) / i) as i64;
        }
        if y <= options.zero_override_limit {
            continue;
        }
        let zero = options.include_zero as i64;
        let (f, s) = match options.boundary {
            Boundary::Closed => (le1 + zero, le2 - le1),
            Boundary::Open => (lt1 + zero, lt2 - le1),
        };
        first[y as usize] = f;
        second[y as usize] = s;
    }
    Ok(IntervalCountSeries {
        interval,
        limit,
        options,
        first,
        second,
    })
}

impl IntervalCountSeries {
    pub fn interval(&self) -> u64 {
        self.interval
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn options(&self) -> IntervalOptions {
        self.options
    }

    #[inline]
    pub fn first(&self, y: u64) -> i64 {
        self.first[y as usize]
    }

    #[inline]
    pub fn second(&self, y: u64) -> i64 {
        self.second[y as usize]
    }

    /// `first[y] - second[y]`; `y = 0` gives 0.
    #[inline]
    pub fn difference(&self, y: u64) -> i64 {
        self.first[y as usize] - self.second[y as usize]
    }
}

/// `Σ_ν |ρ_ν - ν/Φ(x)|` over `F_x`, exactly.
///
/// `farey_len` must be `Φ(x)`. Fractions are streamed; only one integer
/// accumulator per denominator is kept, and the result is returned as
/// `(numerator, denominator)`.
pub fn franel_delta_sum_exact(x: u64, farey_len: u64) -> (BigUint, BigUint) {
    let phi = farey_len as u128;
    // |a/b - ν/Φ| = |aΦ - νb| / (bΦ)
    let mut per_den = vec![0u128; x as usize + 1];
    let mut count = 0u64;
    for (idx, f) in enumerate(x).enumerate() {
        let nu = idx as u128 + 1;
        let lhs = f.num as u128 * phi;
        let rhs = nu * f.den as u128;
        per_den[f.den as usize] += lhs.abs_diff(rhs);
        count += 1;
    }
    assert_eq!(count, farey_len, "farey_len must equal Φ(x)");
    let mut lcm = BigUint::from(1u32);
    for (b, &s) in per_den.iter().enumerate().skip(1) {
        if s != 0 {
            lcm = lcm.lcm(&BigUint::from(b as u64));
        }
    }
    let mut numer = BigUint::zero();
    for (b, &s) in per_den.iter().enumerate().skip(1) {
        if s != 0 {
            numer += (&lcm / BigUint::from(b as u64)) * BigUint::from(s);
        }
    }
    let denom = lcm * BigUint::from(phi);
    let g = numer.gcd(&denom);
    if g.is_zero() {
        return (numer, BigUint::from(1u32));
    }
    (&numer / &g, &denom / &g)
}

/// Correctly scaled `num / den` as a double, even when both overflow `f64`.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        (num >> (-shift) as usize) / den
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// The Franel–Landau sum for order `x` as a double.
pub fn franel_delta_sum(x: u64) -> f64 {
    let phi = enumerate(x).count() as u64;
    let (n, d) = franel_delta_sum_exact(x, phi);
    ratio_to_f64(&n, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mertens::mertens_table;
    use crate::sieves::build_sieves;

    fn frac(a: u64, b: u64) -> Fraction {
        Fraction::new(a, b).unwrap()
    }

    fn brute_farey(x: u64) -> Vec<Fraction> {
        let mut v: Vec<Fraction> = (1..=x)
            .flat_map(|b| (1..=b).map(move |a| (a, b)))
            .filter(|&(a, b)| a.gcd(&b) == 1)
            .map(|(a, b)| frac(a, b))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn fraction_validation() {
        assert!(Fraction::new(2, 4).is_err());
        assert!(Fraction::new(3, 2).is_err());
        assert!(Fraction::new(1, 0).is_err());
        assert_eq!(Fraction::reduced(2, 4).unwrap(), frac(1, 2));
        assert!(frac(1, 3) < frac(2, 5));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(1).collect::<Vec<_>>(), vec![Fraction::ONE]);
        let f5: Vec<String> = enumerate(5).map(|f| f.to_string()).collect();
        assert_eq!(
            f5,
            ["1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "1/1"]
        );
        let t = build_sieves(100).unwrap();
        assert_eq!(enumerate(100).count() as u64, t.totient_prefix()[100]);
        let z: Vec<_> = enumerate(2).with_zero().collect();
        assert_eq!(z, vec![Fraction::ZERO, frac(1, 2), Fraction::ONE]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for x in 1..=60 {
            assert_eq!(enumerate(x).collect::<Vec<_>>(), brute_farey(x), "x={x}");
        }
    }

    #[test]
    fn rank_examples_and_errors() {
        let t = build_sieves(100).unwrap();
        let mt = mertens_table(&t);
        assert_eq!(rank(frac(1, 5), 5, &mt).unwrap(), 1);
        assert_eq!(rank(frac(1, 2), 5, &mt).unwrap(), 5);
        assert_eq!(rank(frac(2, 5), 5, &mt).unwrap(), 4);
        assert!(rank(frac(1, 7), 5, &mt).is_err());
        assert!(rank(Fraction::ONE, 5, &mt).is_err());
        assert!(rank(Fraction::ZERO, 5, &mt).is_err());
        assert!(rank(frac(1, 2), 1, &mt).is_err());
    }

    #[test]
    fn count_examples() {
        let t = build_sieves(100).unwrap();
        let mt = mertens_table(&t);
        assert_eq!(count_upto(Fraction::ONE, 5, &mt).unwrap(), 10);
        assert_eq!(count_upto(frac(1, 2), 5, &mt).unwrap(), 5);
        for x in 1..=50 {
            assert_eq!(count_upto(Fraction::ZERO, x, &mt).unwrap(), 0);
            assert_eq!(count_below(Fraction::ZERO, x, &mt).unwrap(), 0);
        }
        assert_eq!(count_below(frac(1, 2), 5, &mt).unwrap(), 4);
    }

    #[test]
    fn interval_examples() {
        let t = build_sieves(100).unwrap();
        let s4 = interval_counts(4, 100, &t, IntervalOptions::default()).unwrap();
        assert_eq!((s4.first(5), s4.second(5)), (2, 3));
        assert_eq!((s4.first(2), s4.second(2)), (0, 0));
        let s5 = interval_counts(5, 100, &t, IntervalOptions::default()).unwrap();
        assert_eq!((s5.first(5), s5.second(5)), (1, 3));
        assert!(interval_counts(2, 100, &t, IntervalOptions::default()).is_err());
        assert!(interval_counts(4, 101, &t, IntervalOptions::default()).is_err());

        let open = IntervalOptions {
            boundary: Boundary::Open,
            ..Default::default()
        };
        // F_5 ∩ (0,1/4) = {1/5}, ∩ (1/4,1/2) = {1/3, 2/5}
        let o4 = interval_counts(4, 100, &t, open).unwrap();
        assert_eq!((o4.first(5), o4.second(5)), (1, 2));
    }

    #[test]
    fn interval_series_monotone() {
        let t = build_sieves(500).unwrap();
        for i in 3..=10 {
            for boundary in [Boundary::Closed, Boundary::Open] {
                let opts = IntervalOptions {
                    boundary,
                    ..Default::default()
                };
                let s = interval_counts(i, 500, &t, opts).unwrap();
                for y in 2..=500 {
                    assert!(s.first(y) >= s.first(y - 1));
                    assert!(s.second(y) >= s.second(y - 1));
                }
            }
        }
    }

    #[test]
    fn franel_small() {
        assert_eq!(franel_delta_sum(1), 0.0);
        assert_eq!(franel_delta_sum(2), 0.0);
        let (n, d) = franel_delta_sum_exact(3, 4);
        assert_eq!((n, d), (BigUint::from(1u32), BigUint::from(6u32)));
        assert!((franel_delta_sum(3) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ratio_conversion_handles_huge_operands() {
        let big = BigUint::from(3u32).pow(2000);
        let r = ratio_to_f64(&big, &(&big * BigUint::from(8u32)));
        assert_eq!(r, 0.125);
    }
}
