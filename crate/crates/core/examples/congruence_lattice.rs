//! The lattice of integer vectors v with q | Mv.

use multilinear_count::lattice::{congruence_lattice, gauss_reduce};
use multilinear_count::{Int, Vec2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m: Vec<[Int; 2]> = [[2, 1], [1, 2], [4, 5]]
        .iter()
        .map(|r| [Int::from(r[0]), Int::from(r[1])])
        .collect();
    let q = Int::from(3);
    let lat = congruence_lattice(&m, &q)?;
    println!("Hermite basis {lat}, det {}", lat.det());
    println!("reduced basis {}", gauss_reduce(&lat));
    for v in [Vec2::new(1, 1), Vec2::new(1, 2), Vec2::new(3, 0)] {
        println!("{v} in lattice: {}", lat.contains(&v));
    }
    Ok(())
}
