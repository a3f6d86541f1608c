//! Which counting convention keeps S_I(x) bounded, and the values it takes.

use farey_mertens::build_sieves;
use farey_mertens::convolution::{census_conventions, select_convention};

fn main() -> farey_mertens::Result<()> {
    let x_max = 2000;
    let tables = build_sieves(x_max)?;

    for interval in 4..=8 {
        let results = census_conventions(interval, x_max, &tables)?;
        let Some(chosen) = select_convention(&results) else {
            println!("I = {interval}: no bounded convention");
            continue;
        };
        let r = results
            .iter()
            .find(|r| r.convention == chosen)
            .expect("chosen from results");
        let values: Vec<String> = r.census.values().iter().map(|v| v.to_string()).collect();
        println!("I = {interval} [{chosen}]: {{{}}}", values.join(", "));
    }
    Ok(())
}
