//! Singular points of trilinear forms with vanishing hyperdeterminant.

use multilinear_count::{Axis, BilinearForm, Hypermatrix, LinearForm2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let factored = Hypermatrix::from_linear_times_bilinear(
        Axis::Y,
        &LinearForm2::new(2, -1),
        &"1 3 -2 5".parse::<BilinearForm>()?,
    );
    for h in ["2 0 0 0 5 1 1 0".parse::<Hypermatrix>()?, factored] {
        let [x, y, z] = h.singular_point()?;
        println!(
            "[{h}] D = {}: singular at x = {x}, y = {y}, z = {z}",
            h.hyperdet()
        );
        println!("  gradient {:?}", h.gradient(&x, &y, &z));
    }
    let regular: Hypermatrix = "3 0 0 0 0 1 1 1".parse()?;
    println!(
        "[{regular}] search in [-8, 8]: {:?}",
        regular.search_singular_point(8)?
    );
    Ok(())
}
