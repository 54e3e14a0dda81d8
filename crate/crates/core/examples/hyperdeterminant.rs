//! Hyperdeterminant and the three slice determinant forms.
//!
//! Run with `cargo run --example hyperdeterminant -- "3 0 0 0 0 1 1 1"`.

use multilinear_count::{Hypermatrix, PairAxis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "3 0 0 0 0 1 1 1".into());
    let h: Hypermatrix = text.parse()?;
    println!("H = {h}");
    println!("D = {}", h.hyperdet());
    for pair in PairAxis::ALL {
        let q = h.delta_form(pair);
        println!(
            "Delta_{} = {q}, discriminant {}",
            pair.name(),
            q.discriminant()
        );
    }
    Ok(())
}
