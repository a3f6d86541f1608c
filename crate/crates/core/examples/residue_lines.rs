//! Splitting Σ M(⌊x/i⌋)·σ₀(i) = x by divisor residue class mod 4.

use farey_mertens::convolution::residue_line;
use farey_mertens::{build_sieves, mertens_table};

fn main() -> farey_mertens::Result<()> {
    let tables = build_sieves(10_000)?;
    let mt = mertens_table(&tables);

    println!(
        "{:>6} {:>6} {:>6} {:>6} {:>6}",
        "x", "r=0", "r=1", "r=2", "r=3"
    );
    for x in [10, 100, 1_000, 5_000, 10_000] {
        let lines: Vec<i64> = (0..4)
            .map(|r| residue_line(r, 4, x, &mt))
            .collect::<Result<_, _>>()?;
        println!(
            "{x:>6} {:>6} {:>6} {:>6} {:>6}",
            lines[0], lines[1], lines[2], lines[3]
        );
    }
    Ok(())
}
