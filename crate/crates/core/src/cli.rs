//! Command-line front end.
//!
//! Exit codes: 0 on success (or every check passing), 1 when a verification
//! fails or I/O goes wrong, 2 on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use rayon::prelude::*;

use crate::convolution::{
    census_conventions, claimed_values, conjecture_residual, psi_residual, residue_line,
    select_convention, weighted_log_series, Convention, CorollaryConfig, Sign,
};
use crate::error::{Error, Result};
use crate::farey::{
    self, count_upto, enumerate, franel_delta_sum_exact, ratio_to_f64, Boundary, Fraction,
};
use crate::fitting::{fit_series, slope_vs_i_sweep, FitResult};
use crate::mertens::{
    check_mikolas_sum, check_phi_identity, check_psi_identity, check_sigma0_identity,
    mertens_table, MertensMemo, MertensTable,
};
use crate::quotient::log_factorials;
use crate::redheffer::{build_redheffer, build_rprime, build_t, build_u, check_t_sums, det_exact};
use crate::sieves::{build_sieves, SieveTables};

#[derive(Debug, Parser)]
#[command(
    name = "farey-mertens",
    version,
    about = "Mertens function and Farey sequence experiments"
)]
pub struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check exact identities up to --xmax and report the first failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        xmax: u64,
    },
    /// Emit the data series behind a figure as CSV.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        figure: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        xmax: u64,
        /// Interval parameter for figure 2.
        #[arg(long = "I", default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
        interval: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
        imin: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(3..))]
        imax: u64,
        #[command(flatten)]
        convention: ConventionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the values taken by the interval-count sums S_I(x).
    Census {
        #[arg(long = "I", value_parser = clap::value_parser!(u64).range(3..))]
        interval: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        xmax: u64,
        #[command(flatten)]
        convention: ConventionArgs,
        /// Where to write the `value,count` CSV (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear least-squares fits of ψ(x) or W_I(x) over x = 2..=xmax.
    Fit {
        #[arg(long, value_enum)]
        target: FitTarget,
        #[arg(long = "I", default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
        interval: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
        xmax: u64,
        #[command(flatten)]
        convention: ConventionArgs,
    },
    /// Franel–Landau discrepancy sums for every order up to --xmax, as CSV.
    Franel {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        xmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual W_I(x) − slope·x next to ψ(x) − x, as CSV.
    Residual {
        #[arg(long = "I", default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
        interval: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
        xmax: u64,
        /// Fixed slope; by default the slope is fitted from the same data.
        #[arg(long)]
        slope: Option<f64>,
        #[command(flatten)]
        convention: ConventionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a matrix as space-separated rows.
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=crate::redheffer::MAX_DENSE_DIM))]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Mikolás sums, Φ identity (both forms), σ₀ identity, T/U sums.
    Identities,
    /// Σ M(⌊x/i⌋) ln i = ψ(x).
    Psi,
    /// Farey rank from Mertens values vs enumeration.
    Rank,
    /// Farey counts h(ξ, x) vs enumeration.
    Count,
    /// Memoized Mertens recursion vs the sieve table.
    Recursive,
    /// det(Redheffer) = M(n).
    Redheffer,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitTarget {
    Psi,
    W,
    /// ψ and W_4 … W_8 together.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Redheffer,
    Rprime,
    T,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    FirstMinusSecond,
    SecondMinusFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Closed,
    Open,
}

/// Convention flags. When none is given, the convention is chosen by a census
/// over `x ≤ 2000`.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ConventionArgs {
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
    #[arg(long)]
    pub include_zero: bool,
    #[arg(long)]
    pub zero_override: Option<u64>,
}

impl ConventionArgs {
    fn is_empty(&self) -> bool {
        self.sign.is_none()
            && self.boundary.is_none()
            && !self.include_zero
            && self.zero_override.is_none()
    }

    fn explicit(&self) -> Convention {
        let d = Convention::default();
        Convention {
            sign: match self.sign {
                Some(SignArg::SecondMinusFirst) => Sign::SecondMinusFirst,
                Some(SignArg::FirstMinusSecond) => Sign::FirstMinusSecond,
                None => d.sign,
            },
            boundary: match self.boundary {
                Some(BoundaryArg::Open) => Boundary::Open,
                Some(BoundaryArg::Closed) => Boundary::Closed,
                None => d.boundary,
            },
            include_zero: self.include_zero,
            zero_override_limit: self.zero_override.unwrap_or(d.zero_override_limit),
        }
    }

    fn resolve(&self, interval: u64, tables: &SieveTables) -> Result<Convention> {
        if !self.is_empty() {
            return Ok(self.explicit());
        }
        let x = tables.limit().min(2000);
        let results = census_conventions(interval, x, tables)?;
        Ok(select_convention(&results).unwrap_or_default())
    }
}

/// Formats a real with 10 significant digits, fixed-point.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

fn fmt_rational(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Runs `body` against the file at `path`, or against `out` when no path is given.
fn with_output<R>(
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<R>,
) -> Result<R> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            let r = body(&mut w)?;
            w.flush()?;
            Ok(r)
        }
        None => body(out),
    }
}

/// Parses `args` and runs the command, writing human-readable output to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    if let Some(k) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::InvalidArgument(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            2
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
    }
}

pub fn run() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    run_with(std::env::args_os(), &mut lock)
}

struct Context {
    tables: SieveTables,
    mt: MertensTable,
}

impl Context {
    fn new(limit: u64) -> Result<Self> {
        let tables = build_sieves(limit)?;
        let mt = mertens_table(&tables);
        Ok(Context { tables, mt })
    }
}

/// Returns whether every check passed.
fn execute(cmd: &Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Verify { suite, xmax } => cmd_verify(*suite, *xmax, out),
        Command::Sweep {
            figure,
            xmax,
            interval,
            imin,
            imax,
            convention,
            out: path,
        } => {
            if imin > imax {
                return Err(Error::invalid("--imin must not exceed --imax"));
            }
            with_output(path, out, |w| {
                cmd_sweep(*figure, *xmax, *interval, (*imin, *imax), convention, w)
            })?;
            Ok(true)
        }
        Command::Census {
            interval,
            xmax,
            convention,
            out: path,
        } => cmd_census(*interval, *xmax, convention, path, out),
        Command::Fit {
            target,
            interval,
            xmax,
            convention,
        } => cmd_fit(*target, *interval, *xmax, convention, out),
        Command::Franel { xmax, out: path } => {
            with_output(path, out, |w| cmd_franel(*xmax, w))?;
            Ok(true)
        }
        Command::Residual {
            interval,
            xmax,
            slope,
            convention,
            out: path,
        } => cmd_residual(*interval, *xmax, *slope, convention, path, out),
        Command::Matrix { kind, n } => cmd_matrix(*kind, *n, out),
    }
}

fn report(out: &mut dyn Write, name: &str, failure: Option<String>) -> Result<bool> {
    match failure {
        None => {
            writeln!(out, "PASS  {name}")?;
            Ok(true)
        }
        Some(f) => {
            writeln!(out, "FAIL  {name}: {f}")?;
            Ok(false)
        }
    }
}

/// First failing `x` of a parallel check, by smallest `x`.
fn first_failure<F>(range: std::ops::RangeInclusive<u64>, check: F) -> Option<String>
where
    F: Fn(u64) -> Option<String> + Sync + Send,
{
    range
        .into_par_iter()
        .filter_map(|x| check(x).map(|m| (x, m)))
        .min_by_key(|(x, _)| *x)
        .map(|(_, m)| m)
}

/// Runs the identity suites; each line reports one identity.
pub fn verify_suite(suite: Suite, xmax: u64, out: &mut dyn Write) -> Result<bool> {
    let ctx = Context::new(xmax)?;
    let (t, mt) = (&ctx.tables, &ctx.mt);
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut ok = true;

    if want(Suite::Identities) {
        let f = first_failure(1..=xmax, |x| {
            (1..=x).find_map(|n| match check_mikolas_sum(x, n, mt) {
                Ok(1) => None,
                Ok(v) => Some(format!("x={x} n={n}: sum = {v}")),
                Err(e) => Some(e.to_string()),
            })
        });
        ok &= report(out, "Mikolás sums Σ M(⌊x/(in)⌋) = 1, all n ≤ x", f)?;

        let f = first_failure(1..=xmax, |x| match check_phi_identity(x, mt, t) {
            Ok(p) if p.holds() => None,
            Ok(p) => Some(format!("x={x}: {p:?}")),
            Err(e) => Some(e.to_string()),
        });
        ok &= report(out, "Σ M(⌊x/i⌋)·i = Φ(x) = ½Σ μ(n)⌊x/n⌋² + ½", f)?;

        let f = first_failure(1..=xmax, |x| match check_sigma0_identity(x, mt) {
            Ok(v) if v == x as i64 => None,
            Ok(v) => Some(format!("x={x}: sum = {v}")),
            Err(e) => Some(e.to_string()),
        });
        ok &= report(out, "Σ M(⌊x/i⌋)·σ₀(i) = x", f)?;

        let f = first_failure(1..=xmax, |x| match check_t_sums(x, mt, t) {
            Ok(s) => s.first_violation(mt, t),
            Err(e) => Some(e.to_string()),
        });
        ok &= report(out, "T and U row/column sums", f)?;
    }

    if want(Suite::Psi) {
        let lf = log_factorials(xmax);
        let f = first_failure(1..=xmax, |x| match check_psi_identity(x, mt, t, &lf) {
            Ok((a, b)) if (a - b).abs() < 1e-6 * b.max(1.0) => None,
            Ok((a, b)) => Some(format!("x={x}: {a} vs ψ = {b}")),
            Err(e) => Some(e.to_string()),
        });
        ok &= report(out, "Σ M(⌊x/i⌋)·ln i = ψ(x) (rel. 1e-6)", f)?;
    }

    // enumeration oracles are quadratic or worse; `all` runs them on their own ranges
    let capped = |cap: u64| {
        if suite == Suite::All {
            xmax.min(cap)
        } else {
            xmax
        }
    };

    if want(Suite::Rank) {
        let top = capped(100);
        let f = first_failure(2..=top, |n| {
            enumerate(n)
                .enumerate()
                .filter(|(_, f)| *f != Fraction::ONE)
                .find_map(|(pos, f)| match farey::rank(f, n, mt) {
                    Ok(r) if r == pos as u64 + 1 => None,
                    Ok(r) => Some(format!("n={n} {f}: rank {r}, position {}", pos + 1)),
                    Err(e) => Some(e.to_string()),
                })
        });
        ok &= report(
            out,
            &format!("Farey rank Σ M(⌊n/j⌋)⌊j f⌋ = position, n ≤ {top}"),
            f,
        )?;
    }

    if want(Suite::Count) {
        let xis: Vec<Fraction> = [
            (1, 8),
            (1, 7),
            (1, 6),
            (1, 5),
            (1, 4),
            (1, 3),
            (2, 5),
            (1, 2),
            (2, 3),
            (1, 1),
        ]
        .iter()
        .map(|&(a, b)| Fraction::new(a, b).expect("reduced"))
        .collect();
        let top = capped(300);
        let f = first_failure(1..=top, |x| {
            xis.iter().find_map(|&xi| {
                let brute = enumerate(x).filter(|f| *f <= xi).count() as u64;
                match count_upto(xi, x, mt) {
                    Ok(h) if h == brute => None,
                    Ok(h) => Some(format!("x={x} ξ={xi}: h = {h}, enumeration {brute}")),
                    Err(e) => Some(e.to_string()),
                }
            })
        });
        ok &= report(
            out,
            &format!("Farey count h(ξ, x) = #{{ρ ≤ ξ}}, x ≤ {top}"),
            f,
        )?;
    }

    if want(Suite::Recursive) {
        let mut memo = MertensMemo::new();
        let f = (1..=xmax).find_map(|y| {
            let m = memo.mertens(y);
            (m != mt.get(y)).then(|| format!("y={y}: recursion {m}, table {}", mt.get(y)))
        });
        ok &= report(out, "memoized Mertens recursion = sieve table", f)?;
    }

    if want(Suite::Redheffer) {
        let top = xmax.min(60);
        let f = first_failure(1..=top, |n| {
            let d = det_exact(&build_redheffer(n).ok()?);
            (d != mt.get(n).into()).then(|| format!("n={n}: det {d}, M(n) = {}", mt.get(n)))
        });
        ok &= report(out, &format!("det Redheffer(n) = M(n), n ≤ {top}"), f)?;
    }
    Ok(ok)
}

fn cmd_verify(suite: Suite, xmax: u64, out: &mut dyn Write) -> Result<bool> {
    let ok = verify_suite(suite, xmax, out)?;
    writeln!(
        out,
        "{}",
        if ok {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    )?;
    Ok(ok)
}

fn cmd_sweep(
    figure: u8,
    xmax: u64,
    interval: u64,
    (imin, imax): (u64, u64),
    conv: &ConventionArgs,
    w: &mut dyn Write,
) -> Result<()> {
    let ctx = Context::new(xmax)?;
    match figure {
        1 => {
            let rows: Vec<[i64; 4]> = (1..=xmax)
                .into_par_iter()
                .map(|x| {
                    let mut row = [0; 4];
                    for (r, slot) in row.iter_mut().enumerate() {
                        *slot = residue_line(r as u64, 4, x, &ctx.mt)?;
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            writeln!(w, "x,line_r0,line_r1,line_r2,line_r3")?;
            for (x, row) in (1..=xmax).zip(rows) {
                writeln!(w, "{x},{},{},{},{}", row[0], row[1], row[2], row[3])?;
            }
        }
        2 => {
            let cfg = CorollaryConfig::new(interval, conv.resolve(interval, &ctx.tables)?)?;
            let series = cfg.series(xmax, &ctx.tables)?;
            let lf = log_factorials(xmax);
            let wsum = weighted_log_series(&cfg, xmax, &series, &lf)?;
            let psi = ctx.tables.psi_prefix();
            writeln!(w, "x,psi,w_sum")?;
            for x in 2..=xmax as usize {
                writeln!(w, "{x},{},{}", fmt_real(psi[x]), fmt_real(wsum[x]))?;
            }
        }
        3 | 4 => {
            let parity = if figure == 3 { 0 } else { 1 };
            let is: Vec<u64> = (imin..=imax).filter(|i| i % 2 == parity).collect();
            let mut points = Vec::new();
            for &i in &is {
                let c = conv.resolve(i, &ctx.tables)?;
                points.extend(slope_vs_i_sweep(&[i], xmax, &ctx.tables, c)?.points);
            }
            writeln!(w, "I,slope")?;
            for (i, s) in points {
                writeln!(w, "{i},{}", fmt_real(s))?;
            }
        }
        _ => return Err(Error::invalid(format!("unknown figure {figure}"))),
    }
    Ok(())
}

fn cmd_census(
    interval: u64,
    xmax: u64,
    conv: &ConventionArgs,
    path: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<bool> {
    let ctx = Context::new(xmax)?;
    let results = census_conventions(interval, xmax, &ctx.tables)?;
    let claim = claimed_values(interval);
    writeln!(out, "census of S_{interval}(x) for x = 3..={xmax}")?;
    match &claim {
        Some(c) => {
            let mut c = c.clone();
            c.sort();
            let s: Vec<String> = c.into_iter().map(fmt_rational).collect();
            writeln!(out, "recorded value set: {{{}}}", s.join(", "))?;
        }
        None => writeln!(out, "no recorded value set for I = {interval}")?,
    }
    for r in &results {
        let values: Vec<String> = if r.census.distinct() <= 16 {
            r.census.values().into_iter().map(fmt_rational).collect()
        } else {
            vec![format!("… ({} values)", r.census.distinct())]
        };
        let verdict = match r.matches_claim {
            Some(true) => "matches recorded set",
            Some(false) => "MISMATCH with recorded set",
            None => "no recorded set",
        };
        writeln!(
            out,
            "  [{}] {} distinct, max |S| = {}, {}; {}: {{{}}}",
            if r.is_bounded() {
                "bounded"
            } else {
                "unbounded"
            },
            r.census.distinct(),
            fmt_rational(r.census.max_abs()),
            r.convention,
            verdict,
            values.join(", ")
        )?;
    }
    let chosen = if conv.is_empty() {
        select_convention(&results)
    } else {
        Some(conv.explicit())
    };
    let Some(chosen) = chosen else {
        writeln!(out, "no convention gives a bounded census")?;
        return Ok(false);
    };
    let cfg = CorollaryConfig::new(interval, chosen)?;
    let series = cfg.series(xmax, &ctx.tables)?;
    let census = crate::convolution::corollary_value_census(&cfg, xmax, &series)?;
    writeln!(out, "selected convention: {chosen}")?;

    with_output(path, out, |w| {
        writeln!(w, "value,count")?;
        for (v, c) in &census.counts {
            writeln!(w, "{},{c}", fmt_rational(*v))?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn write_fit(out: &mut dyn Write, label: &str, f: &FitResult) -> Result<()> {
    writeln!(out, "{label}")?;
    writeln!(
        out,
        "  p1 = {} (95% CI {}, {})",
        fmt_real(f.coefficients[0]),
        fmt_real(f.ci95[0].0),
        fmt_real(f.ci95[0].1)
    )?;
    writeln!(
        out,
        "  p2 = {} (95% CI {}, {})",
        fmt_real(f.coefficients[1]),
        fmt_real(f.ci95[1].0),
        fmt_real(f.ci95[1].1)
    )?;
    writeln!(
        out,
        "  SSE = {}, R-squared = {}, RMSE = {}, n = {}",
        fmt_real(f.sse),
        fmt_real(f.r_squared),
        fmt_real(f.rmse),
        f.n_points
    )?;
    Ok(())
}

/// Linear fit of `W_I(x)`, `x = 2..=xmax`, under `convention`.
pub fn fit_weighted(
    interval: u64,
    xmax: u64,
    tables: &SieveTables,
    convention: Convention,
) -> Result<FitResult> {
    let cfg = CorollaryConfig::new(interval, convention)?;
    let series = cfg.series(xmax, tables)?;
    let lf = log_factorials(xmax);
    let w = weighted_log_series(&cfg, xmax, &series, &lf)?;
    fit_series(&w, 2, xmax)
}

fn cmd_fit(
    target: FitTarget,
    interval: u64,
    xmax: u64,
    conv: &ConventionArgs,
    out: &mut dyn Write,
) -> Result<bool> {
    let ctx = Context::new(xmax)?;
    let psi = ctx.tables.psi_prefix();
    if matches!(target, FitTarget::Psi | FitTarget::All) {
        let f = fit_series(&psi, 2, xmax)?;
        write_fit(out, &format!("psi(x), x = 2..={xmax}"), &f)?;
    }
    let intervals: Vec<u64> = match target {
        FitTarget::Psi => vec![],
        FitTarget::W => vec![interval],
        FitTarget::All => (4..=8).collect(),
    };
    for i in intervals {
        let c = conv.resolve(i, &ctx.tables)?;
        let f = fit_weighted(i, xmax, &ctx.tables, c)?;
        write_fit(out, &format!("W_{i}(x), x = 2..={xmax} [{c}]"), &f)?;
    }
    Ok(true)
}

fn cmd_franel(xmax: u64, w: &mut dyn Write) -> Result<()> {
    let t = build_sieves(xmax)?;
    let phi = t.totient_prefix();
    let rows: Vec<f64> = (1..=xmax)
        .into_par_iter()
        .map(|x| {
            let (n, d) = franel_delta_sum_exact(x, phi[x as usize]);
            ratio_to_f64(&n, &d)
        })
        .collect();
    writeln!(w, "x,delta_sum,delta_sum_over_sqrtx")?;
    for (x, s) in (1..=xmax).zip(rows) {
        writeln!(w, "{x},{},{}", fmt_real(s), fmt_real(s / (x as f64).sqrt()))?;
    }
    Ok(())
}

fn cmd_residual(
    interval: u64,
    xmax: u64,
    slope: Option<f64>,
    conv: &ConventionArgs,
    path: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<bool> {
    let ctx = Context::new(xmax)?;
    let c = conv.resolve(interval, &ctx.tables)?;
    let cfg = CorollaryConfig::new(interval, c)?;
    let series = cfg.series(xmax, &ctx.tables)?;
    let lf = log_factorials(xmax);
    let slope = match slope {
        Some(s) => s,
        None => fit_series(&weighted_log_series(&cfg, xmax, &series, &lf)?, 2, xmax)?.slope(),
    };
    let w_res = conjecture_residual(&cfg, xmax, slope, &series, &lf)?;
    let p_res = psi_residual(xmax, &ctx.tables)?;
    writeln!(out, "convention: {c}")?;
    writeln!(out, "slope: {}", fmt_real(slope))?;
    writeln!(
        out,
        "max |W_{interval}(x) - slope*x|/sqrt(x) = {}",
        fmt_real(w_res.max_scaled())
    )?;
    writeln!(
        out,
        "max |psi(x) - x|/sqrt(x) = {}",
        fmt_real(p_res.max_scaled())
    )?;
    if path.is_some() {
        with_output(path, out, |w| {
            writeln!(w, "x,w_residual,psi_residual")?;
            for (a, b) in w_res.points.iter().zip(&p_res.points) {
                writeln!(w, "{},{},{}", a.0, fmt_real(a.1), fmt_real(b.1))?;
            }
            Ok(())
        })?;
    }
    Ok(true)
}

fn cmd_matrix(kind: MatrixKind, n: u64, out: &mut dyn Write) -> Result<bool> {
    let ctx = Context::new(n)?;
    let m = match kind {
        MatrixKind::Redheffer => build_redheffer(n)?,
        MatrixKind::Rprime => build_rprime(n)?,
        MatrixKind::T => build_t(n, &ctx.mt)?,
        MatrixKind::U => build_u(n, &ctx.mt, &ctx.tables)?,
    };
    write!(out, "{m}")?;
    if kind == MatrixKind::Redheffer {
        writeln!(out, "det = {}, M({n}) = {}", det_exact(&m), ctx.mt.get(n))?;
    }
    if kind == MatrixKind::T {
        writeln!(out, "rows scaled by M(floor(x/i)); columns each sum to 1")?;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(1.0 / 6.0), "0.1666666667");
        assert_eq!(fmt_real(-2.121772780), "-2.121772780");
        assert_eq!(fmt_real(12345.678901234), "12345.67890");
        assert_eq!(fmt_real(2.0f64.ln()), "0.6931471806");
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rational(Rational64::new(-1, 4)), "-1/4");
        assert_eq!(fmt_rational(Rational64::new(4, 2)), "2");
    }
}
