//! Primitive lattice points in an ellipse via a reduced basis certificate.

use multilinear_count::lattice::{
    hb_certificate, primitive_count_bound, primitive_points_in_ellipse,
};
use multilinear_count::{Ellipse2, Lattice2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice2::from_int_columns([7, 0], [3, 1])?;
    let e = Ellipse2::new(20.0, 6.5)?;
    let cert = hb_certificate(&lat, &e);
    println!("reduced basis {}", cert.lattice());
    println!(
        "|λ1| <= {:.3}, |λ2| <= {:.3}",
        cert.alpha,
        cert.lambda2_bound()
    );
    let pts = primitive_points_in_ellipse(&lat, &e)?;
    println!(
        "{} primitive points, bound 4(A/det + 1) = {:.1}",
        pts.len(),
        primitive_count_bound(&lat, &e)
    );
    Ok(())
}
