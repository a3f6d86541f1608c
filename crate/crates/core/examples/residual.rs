//! How far W_4(x) strays from its fitted line, next to ψ(x) − x.

use farey_mertens::build_sieves;
use farey_mertens::convolution::{
    conjecture_residual, psi_residual, weighted_log_series, Convention, CorollaryConfig,
};
use farey_mertens::fitting::fit_series;
use farey_mertens::quotient::log_factorials;

fn main() -> farey_mertens::Result<()> {
    let x_max = 25_000;
    let tables = build_sieves(x_max)?;
    let lf = log_factorials(x_max);
    let cfg = CorollaryConfig::new(4, Convention::open_first_minus_second())?;
    let series = cfg.series(x_max, &tables)?;

    let w = weighted_log_series(&cfg, x_max, &series, &lf)?;
    let slope = fit_series(&w, 2, x_max)?.slope();
    let r = conjecture_residual(&cfg, x_max, slope, &series, &lf)?;
    let p = psi_residual(x_max, &tables)?;

    for x in [100u64, 1_000, 10_000, 25_000] {
        let k = (x - 2) as usize;
        println!(
            "x = {x:>5}: r = {:>9.3}, ψ − x = {:>9.3}, running max |r|/√x = {:.4}, |ψ−x|/√x = {:.4}",
            r.points[k].1, p.points[k].1, r.running_max[k], p.running_max[k]
        );
    }
    Ok(())
}
