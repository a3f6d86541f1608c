//! Exact Franel–Landau sums Σ|ρ_ν − ν/Φ(x)| and their size relative to √x.

use farey_mertens::farey::{enumerate, franel_delta_sum_exact, ratio_to_f64};

fn main() {
    for x in [3, 5, 10, 50, 200, 1000] {
        let phi = enumerate(x).count() as u64;
        let (n, d) = franel_delta_sum_exact(x, phi);
        let v = ratio_to_f64(&n, &d);
        let exact = if d.bits() <= 64 {
            format!("{n}/{d}")
        } else {
            format!("({} bit denominator)", d.bits())
        };
        println!(
            "x = {x:>4}: {exact}  ≈ {v:.6}, over √x {:.6}",
            v / (x as f64).sqrt()
        );
    }
}
