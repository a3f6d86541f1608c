//! Mertens values from the sieve table and from the table-free recursion.

use farey_mertens::{build_sieves, mertens_table, MertensMemo};

fn main() -> farey_mertens::Result<()> {
    let tables = build_sieves(100_000)?;
    let table = mertens_table(&tables);
    let mut memo = MertensMemo::new();

    for y in [10, 100, 1_000, 10_000, 100_000] {
        println!(
            "M({y}) = {} (table) = {} (recursion)",
            table.get(y),
            memo.mertens(y)
        );
    }
    let big = 10_000_000;
    println!(
        "M({big}) = {} using {} cached values",
        memo.mertens(big),
        memo.cached_values()
    );
    Ok(())
}
