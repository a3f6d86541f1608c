//! Dirichlet (`*`) and generalized (`∘`) convolutions, residue-class lines,
//! and the interval-count sums built on top of Farey counts.
//!
//! For an interval parameter `I`, the corollary sum is
//!
//! ```text
//! S_I(x) = Σ_{i≤x} ( ±(first − second)(⌊x/i⌋) + c_I ),   c_I = (⌊(I+1)/2⌋ − 1) / I
//! ```
//!
//! and the weighted sum `W_I(x)` multiplies each term by `ln i`. Which sign and
//! which interval endpoints make `S_I` bounded is an empirical question, so
//! every variant is exposed through [`Convention`] and compared by
//! [`census_conventions`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::farey::{interval_counts, Boundary, IntervalCountSeries, IntervalOptions};
use crate::mertens::MertensTable;
use crate::quotient::QuotientBlocks;
use crate::sieves::SieveTables;

/// A map from positive integers to rationals.
#[derive(Clone)]
pub enum ArithmeticFunction {
    /// `1(n) = 1`
    Unit,
    /// Point mass at 1, the identity for `*`.
    Delta,
    /// `n ↦ n`
    Identity,
    /// `μ(n)`, by trial division.
    Mobius,
    /// `⌊2n/I⌋ − 2⌊n/I⌋`; with `I = 4` this is `b(n) = ⌊n/2⌋ − 2⌊n/4⌋`.
    FloorDifference { interval: u64 },
    /// 1 when `n ≡ residue (mod modulus)`.
    Residue { modulus: u64, residue: u64 },
    /// `values[n-1]`, zero past the end.
    Values(Arc<[Rational64]>),
}

impl ArithmeticFunction {
    /// `b(n) = ⌊n/2⌋ − 2⌊n/4⌋`, period 4 with values 0, 1, 1, 0 at n = 1, 2, 3, 4.
    pub fn b() -> Self {
        ArithmeticFunction::FloorDifference { interval: 4 }
    }

    pub fn from_values<I: IntoIterator<Item = Rational64>>(values: I) -> Self {
        ArithmeticFunction::Values(values.into_iter().collect())
    }

    pub fn eval(&self, n: u64) -> Rational64 {
        debug_assert!(n >= 1);
        let v = match self {
            ArithmeticFunction::Unit => 1,
            ArithmeticFunction::Delta => (n == 1) as i64,
            ArithmeticFunction::Identity => n as i64,
            ArithmeticFunction::Mobius => mobius_trial(n),
            ArithmeticFunction::FloorDifference { interval } => {
                (2 * n / interval) as i64 - 2 * (n / interval) as i64
            }
            ArithmeticFunction::Residue { modulus, residue } => (n % modulus == *residue) as i64,
            ArithmeticFunction::Values(v) => {
                return v
                    .get(n as usize - 1)
                    .copied()
                    .unwrap_or_else(Rational64::zero)
            }
        };
        Rational64::from_integer(v)
    }
}

impl fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticFunction::Unit => f.write_str("Unit"),
            ArithmeticFunction::Delta => f.write_str("Delta"),
            ArithmeticFunction::Identity => f.write_str("Identity"),
            ArithmeticFunction::Mobius => f.write_str("Mobius"),
            ArithmeticFunction::FloorDifference { interval } => {
                write!(f, "FloorDifference({interval})")
            }
            ArithmeticFunction::Residue { modulus, residue } => {
                write!(f, "Residue({residue} mod {modulus})")
            }
            ArithmeticFunction::Values(v) => write!(f, "Values(len={})", v.len()),
        }
    }
}

fn mobius_trial(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(f * g)(n) = Σ_{d|n} f(d) g(n/d)` for `n` in `0..=limit` (slot 0 is zero).
pub fn dirichlet_convolve(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    limit: u64,
) -> Vec<Rational64> {
    let n = limit as usize;
    let gv: Vec<Rational64> = (1..=limit).map(|k| g.eval(k)).collect();
    let mut out = vec![Rational64::zero(); n + 1];
    for d in 1..=n {
        let fd = f.eval(d as u64);
        if fd.is_zero() {
            continue;
        }
        for (k, m) in (d..=n).step_by(d).enumerate() {
            let gk = gv[k];
            if !gk.is_zero() {
                out[m] += fd * gk;
            }
        }
    }
    out
}

/// `(α ∘ F)(x) = Σ_{n≤x} α(n) F(⌊x/n⌋)`.
pub fn circ_convolve<F>(alpha: &ArithmeticFunction, f: F, x: u64) -> Rational64
where
    F: Fn(u64) -> Rational64,
{
    let mut acc = Rational64::zero();
    for n in 1..=x {
        let a = alpha.eval(n);
        if !a.is_zero() {
            acc += a * f(x / n);
        }
    }
    acc
}

/// `((α ∘ (β ∘ F))(x), ((α * β) ∘ F)(x))`; the two agree for every input.
pub fn check_associativity<F>(
    alpha: &ArithmeticFunction,
    beta: &ArithmeticFunction,
    f: F,
    x: u64,
) -> (Rational64, Rational64)
where
    F: Fn(u64) -> Rational64,
{
    let nested = circ_convolve(alpha, |y| circ_convolve(beta, &f, y), x);
    let product = dirichlet_convolve(alpha, beta, x);
    let table = ArithmeticFunction::Values(product[1..].iter().copied().collect());
    let combined = circ_convolve(&table, &f, x);
    (nested, combined)
}

/// `Σ_{i≤x} M(⌊x/i⌋) · #{d | i : d ≡ residue (mod modulus)}`.
///
/// Summing over every residue gives `x`.
pub fn residue_line(residue: u64, modulus: u64, x: u64, mt: &MertensTable) -> Result<i64> {
    if modulus == 0 || residue >= modulus {
        return Err(Error::invalid(format!(
            "residue {residue} must be below modulus {modulus}"
        )));
    }
    mt.check("x", x)?;
    let mut acc = 0;
    // each d ≡ residue contributes M(⌊x/i⌋) at every multiple i of d
    let start = if residue == 0 { modulus } else { residue };
    let mut d = start;
    while d <= x {
        let mut i = d;
        while i <= x {
            acc += mt.get(x / i);
            i += d;
        }
        d += modulus;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    FirstMinusSecond,
    SecondMinusFirst,
}

impl Sign {
    fn factor(self) -> i64 {
        match self {
            Sign::FirstMinusSecond => 1,
            Sign::SecondMinusFirst => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::FirstMinusSecond => "first-minus-second",
            Sign::SecondMinusFirst => "second-minus-first",
        })
    }
}

/// How interval counts are taken and combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Convention {
    pub sign: Sign,
    pub boundary: Boundary,
    pub include_zero: bool,
    pub zero_override_limit: u64,
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            sign: Sign::FirstMinusSecond,
            boundary: Boundary::Closed,
            include_zero: false,
            zero_override_limit: 2,
        }
    }
}

impl Convention {
    /// Open intervals `(0,1/I)`, `(1/I,2/I)` with first minus second.
    ///
    /// This is the variant under which every `S_I` for `I = 4..=8` stays in a
    /// small fixed set, and the log-weighted sums are linear in `x`.
    pub fn open_first_minus_second() -> Self {
        Convention {
            boundary: Boundary::Open,
            ..Default::default()
        }
    }

    pub fn interval_options(&self) -> IntervalOptions {
        IntervalOptions {
            boundary: self.boundary,
            include_zero: self.include_zero,
            zero_override_limit: self.zero_override_limit,
        }
    }

    /// All sign × boundary × include-zero combinations at the given override limit.
    pub fn all(zero_override_limit: u64) -> Vec<Convention> {
        let mut out = Vec::new();
        for sign in [Sign::FirstMinusSecond, Sign::SecondMinusFirst] {
            for boundary in [Boundary::Closed, Boundary::Open] {
                for include_zero in [false, true] {
                    out.push(Convention {
                        sign,
                        boundary,
                        include_zero,
                        zero_override_limit,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {} intervals, zero {}, override ≤ {}",
            self.sign,
            self.boundary,
            if self.include_zero {
                "included"
            } else {
                "excluded"
            },
            self.zero_override_limit
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollaryConfig {
    pub interval: u64,
    pub convention: Convention,
}

impl CorollaryConfig {
    pub fn new(interval: u64, convention: Convention) -> Result<Self> {
        if interval < 3 {
            return Err(Error::invalid(format!(
                "interval parameter I = {interval} must be ≥ 3"
            )));
        }
        Ok(CorollaryConfig {
            interval,
            convention,
        })
    }

    /// `c_I = (⌊(I+1)/2⌋ − 1) / I`
    pub fn offset(&self) -> Rational64 {
        offset(self.interval)
    }

    /// Builds the interval-count series this configuration reads from.
    pub fn series(&self, limit: u64, tables: &SieveTables) -> Result<IntervalCountSeries> {
        interval_counts(
            self.interval,
            limit,
            tables,
            self.convention.interval_options(),
        )
    }

    fn check_series(&self, x: u64, series: &IntervalCountSeries) -> Result<()> {
        if series.interval() != self.interval {
            return Err(Error::invalid(format!(
                "series built for I = {} but config has I = {}",
                series.interval(),
                self.interval
            )));
        }
        if series.options() != self.convention.interval_options() {
            return Err(Error::invalid(
                "series interval options differ from the config convention",
            ));
        }
        if x > series.limit() {
            return Err(Error::OutOfRange {
                what: "x",
                value: x,
                limit: series.limit(),
            });
        }
        Ok(())
    }
}

pub fn offset(interval: u64) -> Rational64 {
    Rational64::new(interval.div_ceil(2) as i64 - 1, interval as i64)
}

/// The value sets stated for `S_I(x)`, `I = 4..=8`.
pub fn claimed_values(interval: u64) -> Option<Vec<Rational64>> {
    let r = |n: i64, d: i64| Rational64::new(n, d);
    let v = match interval {
        4 => vec![r(1, 2), r(1, 4), r(0, 1), r(-1, 4)],
        5 => vec![r(4, 5), r(1, 5), r(0, 1), r(-1, 5), r(-2, 5)],
        6 => vec![r(1, 1), r(2, 3), r(1, 3), r(0, 1), r(-1, 3)],
        7 => vec![
            r(9, 7),
            r(6, 7),
            r(5, 7),
            r(3, 7),
            r(1, 7),
            r(0, 1),
            r(-3, 7),
        ],
        8 => vec![
            r(9, 8),
            r(3, 2),
            r(7, 8),
            r(3, 4),
            r(3, 8),
            r(1, 4),
            r(0, 1),
            r(-3, 8),
        ],
        _ => return None,
    };
    Some(v)
}

/// `S_I(x)` as an exact rational whose denominator divides `I`.
pub fn corollary_sum(
    cfg: &CorollaryConfig,
    x: u64,
    series: &IntervalCountSeries,
) -> Result<Rational64> {
    cfg.check_series(x, series)?;
    let s = cfg.convention.sign.factor();
    let diff: i64 = QuotientBlocks::new(x)
        .map(|(lo, hi, q)| (hi - lo + 1) as i64 * series.difference(q))
        .sum();
    Ok(Rational64::from_integer(s * diff) + cfg.offset() * Rational64::from_integer(x as i64))
}

pub fn corollary_sum_naive(
    cfg: &CorollaryConfig,
    x: u64,
    series: &IntervalCountSeries,
) -> Result<Rational64> {
    cfg.check_series(x, series)?;
    let s = cfg.convention.sign.factor();
    let c = cfg.offset();
    Ok((1..=x)
        .map(|i| Rational64::from_integer(s * series.difference(x / i)) + c)
        .sum())
}

/// Frequency of each `S_I(x)` value for `x` in `3..=x_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub counts: BTreeMap<Rational64, u64>,
}

impl Census {
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn max_abs(&self) -> Rational64 {
        self.counts
            .keys()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn values(&self) -> Vec<Rational64> {
        self.counts.keys().copied().collect()
    }

    /// Whether the observed value set equals `claimed` as a set.
    pub fn matches(&self, claimed: &[Rational64]) -> bool {
        let mut c: Vec<Rational64> = claimed.to_vec();
        c.sort();
        c.dedup();
        c == self.values()
    }

    /// At most `max_distinct` values, all within `[-bound, bound]`.
    pub fn is_bounded(&self, max_distinct: usize, bound: Rational64) -> bool {
        self.distinct() <= max_distinct && self.max_abs() <= bound
    }
}

pub fn corollary_value_census(
    cfg: &CorollaryConfig,
    x_max: u64,
    series: &IntervalCountSeries,
) -> Result<Census> {
    cfg.check_series(x_max, series)?;
    let mut counts = BTreeMap::new();
    for x in 3..=x_max {
        *counts.entry(corollary_sum(cfg, x, series)?).or_insert(0) += 1;
    }
    Ok(Census { counts })
}

/// Census outcome for one convention.
#[derive(Debug, Clone)]
pub struct ConventionCensus {
    pub convention: Convention,
    pub census: Census,
    /// `None` when no value set is on record for this `I`.
    pub matches_claim: Option<bool>,
}

/// Bound used to call a census "small": at most 12 distinct values, all `|S| ≤ 5/2`.
pub const CENSUS_MAX_DISTINCT: usize = 12;

pub fn census_bound() -> Rational64 {
    Rational64::new(5, 2)
}

impl ConventionCensus {
    pub fn is_bounded(&self) -> bool {
        self.census.is_bounded(CENSUS_MAX_DISTINCT, census_bound())
    }
}

/// Runs the census for every convention (at override limit 2) for one `I`.
pub fn census_conventions(
    interval: u64,
    x_max: u64,
    tables: &SieveTables,
) -> Result<Vec<ConventionCensus>> {
    let claim = claimed_values(interval);
    Convention::all(2)
        .into_par_iter()
        .map(|convention| {
            let cfg = CorollaryConfig::new(interval, convention)?;
            let series = cfg.series(x_max, tables)?;
            let census = corollary_value_census(&cfg, x_max, &series)?;
            let matches_claim = claim.as_ref().map(|c| census.matches(c));
            Ok(ConventionCensus {
                convention,
                census,
                matches_claim,
            })
        })
        .collect()
}

/// Picks a convention from a census run: an exact match with the recorded
/// value set wins, otherwise the bounded census with the fewest values.
pub fn select_convention(results: &[ConventionCensus]) -> Option<Convention> {
    if let Some(r) = results.iter().find(|r| r.matches_claim == Some(true)) {
        return Some(r.convention);
    }
    results
        .iter()
        .filter(|r| r.is_bounded())
        .min_by_key(|r| r.census.distinct())
        .map(|r| r.convention)
}

/// `W_I(x) = Σ_{i≤x} (±(first − second)(⌊x/i⌋) + c_I) · ln i`.
///
/// `log_fact[k] = ln k!` (see [`log_factorials`](crate::quotient::log_factorials)).
pub fn weighted_log_sum(
    cfg: &CorollaryConfig,
    x: u64,
    series: &IntervalCountSeries,
    log_fact: &[f64],
) -> Result<f64> {
    cfg.check_series(x, series)?;
    if (log_fact.len() as u64) <= x {
        return Err(Error::invalid("log-factorial table too short"));
    }
    let s = cfg.convention.sign.factor() as f64;
    let c = *cfg.offset().numer() as f64 / *cfg.offset().denom() as f64;
    let mut acc = 0.0;
    for (lo, hi, q) in QuotientBlocks::new(x) {
        let logs = log_fact[hi as usize] - log_fact[lo as usize - 1];
        acc += s * series.difference(q) as f64 * logs;
    }
    Ok(acc + c * log_fact[x as usize])
}

pub fn weighted_log_sum_naive(
    cfg: &CorollaryConfig,
    x: u64,
    series: &IntervalCountSeries,
) -> Result<f64> {
    cfg.check_series(x, series)?;
    let s = cfg.convention.sign.factor() as f64;
    let c = *cfg.offset().numer() as f64 / *cfg.offset().denom() as f64;
    Ok((1..=x)
        .map(|i| (s * series.difference(x / i) as f64 + c) * (i as f64).ln())
        .sum())
}

/// `W_I(x)` for every `x` in `0..=x_max` (index 0 holds 0).
pub fn weighted_log_series(
    cfg: &CorollaryConfig,
    x_max: u64,
    series: &IntervalCountSeries,
    log_fact: &[f64],
) -> Result<Vec<f64>> {
    cfg.check_series(x_max, series)?;
    (0..=x_max)
        .into_par_iter()
        .map(|x| {
            if x == 0 {
                Ok(0.0)
            } else {
                weighted_log_sum(cfg, x, series, log_fact)
            }
        })
        .collect()
}

/// A residual series `r(x)` with the running maximum of `|r(x)|/√x`.
#[derive(Debug, Clone)]
pub struct ResidualSeries {
    /// `(x, r(x))`
    pub points: Vec<(u64, f64)>,
    /// running `max_{2≤t≤x} |r(t)|/√t`, aligned with `points`
    pub running_max: Vec<f64>,
}

impl ResidualSeries {
    fn from_points(points: Vec<(u64, f64)>) -> Self {
        let mut running_max = Vec::with_capacity(points.len());
        let mut m = 0f64;
        for &(x, r) in &points {
            m = m.max(r.abs() / (x as f64).sqrt());
            running_max.push(m);
        }
        ResidualSeries {
            points,
            running_max,
        }
    }

    /// Overall `max |r(x)|/√x`.
    pub fn max_scaled(&self) -> f64 {
        self.running_max.last().copied().unwrap_or(0.0)
    }
}

/// `r(x) = W_I(x) − slope·x` for `x` in `2..=x_max`.
pub fn conjecture_residual(
    cfg: &CorollaryConfig,
    x_max: u64,
    slope: f64,
    series: &IntervalCountSeries,
    log_fact: &[f64],
) -> Result<ResidualSeries> {
    if slope.is_nan() || slope < 0.0 {
        return Err(Error::invalid("slope must be nonnegative"));
    }
    let w = weighted_log_series(cfg, x_max, series, log_fact)?;
    let points = (2..=x_max)
        .map(|x| (x, w[x as usize] - slope * x as f64))
        .collect();
    Ok(ResidualSeries::from_points(points))
}

/// Single-point residual `W_I(x) − slope·x`, defined for every `x ≥ 1`.
pub fn residual_at(
    cfg: &CorollaryConfig,
    x: u64,
    slope: f64,
    series: &IntervalCountSeries,
    log_fact: &[f64],
) -> Result<f64> {
    Ok(weighted_log_sum(cfg, x, series, log_fact)? - slope * x as f64)
}

/// `ψ(x) − x` for `x` in `2..=x_max`, the reference residual.
pub fn psi_residual(x_max: u64, tables: &SieveTables) -> Result<ResidualSeries> {
    tables.check("x_max", x_max)?;
    let psi = tables.psi_prefix();
    let points = (2..=x_max)
        .map(|x| (x, psi[x as usize] - x as f64))
        .collect();
    Ok(ResidualSeries::from_points(points))
}
