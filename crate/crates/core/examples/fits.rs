//! Straight-line fits of ψ(x) and of the log-weighted sum W_4(x).

use farey_mertens::build_sieves;
use farey_mertens::convolution::{
    census_conventions, select_convention, weighted_log_series, CorollaryConfig,
};
use farey_mertens::fitting::{fit_series, FitResult};
use farey_mertens::quotient::log_factorials;

fn show(label: &str, f: &FitResult) {
    println!(
        "{label}: p1 = {:.6} [{:.6}, {:.6}], p2 = {:.4}, RMSE = {:.3}, R² = {:.6}",
        f.slope(),
        f.ci95[0].0,
        f.ci95[0].1,
        f.intercept(),
        f.rmse,
        f.r_squared
    );
}

fn main() -> farey_mertens::Result<()> {
    let x_max = 10_000;
    let tables = build_sieves(x_max)?;
    show("ψ(x)", &fit_series(&tables.psi_prefix(), 2, x_max)?);

    let conv = select_convention(&census_conventions(4, 2000, &tables)?).unwrap_or_default();
    let cfg = CorollaryConfig::new(4, conv)?;
    let series = cfg.series(x_max, &tables)?;
    let w = weighted_log_series(&cfg, x_max, &series, &log_factorials(x_max))?;
    show("W_4(x)", &fit_series(&w, 2, x_max)?);
    println!("convention: {conv}");
    Ok(())
}
