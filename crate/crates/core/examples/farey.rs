//! Farey members, their positions and counts below a threshold, all from Mertens sums.

use farey_mertens::farey::{count_upto, enumerate, rank, Fraction};
use farey_mertens::{build_sieves, mertens_table};

fn main() -> farey_mertens::Result<()> {
    let n = 8;
    let tables = build_sieves(1000)?;
    let mt = mertens_table(&tables);

    let members: Vec<String> = enumerate(n).map(|f| f.to_string()).collect();
    println!("F_{n}: {}", members.join(" "));

    for (a, b) in [(1, 8), (1, 3), (3, 7), (1, 2), (5, 6)] {
        let f = Fraction::new(a, b)?;
        println!("rank of {f} in F_{n} = {}", rank(f, n, &mt)?);
    }

    let xi = Fraction::new(1, 4)?;
    for x in [10, 100, 1000] {
        println!("#{{ρ ∈ F_{x} : ρ ≤ {xi}}} = {}", count_upto(xi, x, &mt)?);
    }
    Ok(())
}
