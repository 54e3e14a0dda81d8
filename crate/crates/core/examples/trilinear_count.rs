//! Trilinear counts split by whether s = Δ_xy(z) Δ_yz(x) Δ_zx(y) vanishes.

use multilinear_count::harness::example_family;
use multilinear_count::{count_trilinear, count_trilinear_brute, theorem2_bound, Box2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = example_family(3);
    println!("H = {h}, D = {}", h.hyperdet());
    for side in [3.0, 6.0, 12.0] {
        let b = Box2::square(side)?;
        let c = count_trilinear(&h, &b, &b, &b)?;
        if side <= 6.0 {
            assert_eq!(c, count_trilinear_brute(&h, &b, &b, &b)?);
        }
        let bound = theorem2_bound(&h, &b, &b, &b, 0.1)?;
        println!(
            "box {side:>4}: total {}, s = 0: {}, s != 0: {}, bound {:.1} (permuted {:.1})",
            c.total, c.s_zero, c.s_nonzero, bound.value, bound.permuted_min
        );
    }
    Ok(())
}
