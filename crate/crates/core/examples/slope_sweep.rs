//! Slope of W_I against I, with a quadratic trend through the points.

use farey_mertens::build_sieves;
use farey_mertens::convolution::Convention;
use farey_mertens::fitting::slope_vs_i_sweep;

fn main() -> farey_mertens::Result<()> {
    let x_max = 10_000;
    let tables = build_sieves(x_max)?;
    let intervals: Vec<u64> = (4..=16).collect();
    let sweep = slope_vs_i_sweep(
        &intervals,
        x_max,
        &tables,
        Convention::open_first_minus_second(),
    )?;

    for (i, s) in &sweep.points {
        println!("I = {i:>2}  slope {s:.5}");
    }
    if let Some(q) = sweep.quadratic {
        let c = &q.coefficients;
        println!("trend: {:.6}·I² + {:.5}·I + {:.4}", c[0], c[1], c[2]);
    }
    Ok(())
}
