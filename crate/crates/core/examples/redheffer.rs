//! The Redheffer determinant and the Mertens-weighted divisibility matrix T.

use farey_mertens::redheffer::{build_redheffer, build_t, det_exact};
use farey_mertens::{build_sieves, mertens_table};

fn main() -> farey_mertens::Result<()> {
    let tables = build_sieves(100)?;
    let mt = mertens_table(&tables);

    for n in [5, 10, 20, 40] {
        let det = det_exact(&build_redheffer(n)?);
        println!("det R({n}) = {det}, M({n}) = {}", mt.get(n));
    }

    let t = build_t(12, &mt)?;
    println!("\nT for x = 12:\n{t}");
    println!("column sums {:?}", t.column_sums());
    println!("total {}", t.total());
    Ok(())
}
