//! Classifying bilinear and trilinear forms.

use multilinear_count::{BilinearForm, Hypermatrix, TrilinearKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["1 2 2 4", "2 1 1 1", "0 0 0 0"] {
        let f: BilinearForm = text.parse()?;
        println!("[{f}] -> {:?}", f.classify());
    }
    for text in ["3 0 0 0 0 1 1 1", "2 0 0 0 5 1 1 0", "2 4 3 6 2 4 3 6"] {
        let h: Hypermatrix = text.parse()?;
        let class = h.classify();
        let kind = match &class.kind {
            TrilinearKind::ZeroForm => "zero".to_string(),
            TrilinearKind::NoLinearFactor => "no linear factor".to_string(),
            TrilinearKind::TripleLinear { .. } => "three linear factors".to_string(),
            TrilinearKind::LinearTimesBilinear { axis, .. } => {
                format!("linear factor in {}", axis.name())
            }
        };
        println!(
            "[{h}] D = {}, {kind}, vanishing {:?}",
            class.hyperdet, class.vanishing
        );
    }
    Ok(())
}
