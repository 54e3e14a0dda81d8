//! Counting primitive zeros of a bilinear form with the divisor/lattice
//! method and comparing with brute force.

use multilinear_count::{
    count_bilinear_brute, count_bilinear_fast, theorem1_bound, BilinearForm, Box2,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f: BilinearForm = "3 -7 5 2".parse()?;
    for side in [5.0, 10.0, 20.0, 40.0] {
        let b = Box2::square(side)?;
        let fast = count_bilinear_fast(&f, &b, &b)?;
        let brute = count_bilinear_brute(&f, &b, &b)?;
        assert_eq!(fast, brute);
        println!(
            "box {side:>4}: {} solutions ({} degenerate), divisors {:?}, bound {:.1}",
            fast.total,
            fast.degenerate,
            fast.per_divisor,
            theorem1_bound(&f, &b, &b)?
        );
    }
    Ok(())
}
