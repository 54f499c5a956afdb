//! Smith form, kernels and cokernels of integer matrices.

use rootdatum::linalg::{cokernel, finite_cokernel, kernel_basis, smith_normal_form, IntMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let s = smith_normal_form(&m)?;
    println!("diagonal: {:?}", s.diag);
    println!("Z^3 / rows = {}", finite_cokernel(&m)?);

    // 1 - s for the SO(3) reflection on a rank-1 lattice
    let one_minus = IntMatrix::from_rows(&[[2]]);
    println!("Z / (1 - s)Z = {}", finite_cokernel(&one_minus)?);

    let wide = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
    let (torsion, free) = cokernel(&wide)?;
    println!("cokernel of a rank-1 map: torsion {torsion:?}, free rank {free}");
    println!("kernel basis:\n{:?}", kernel_basis(&wide)?.to_rows());
    Ok(())
}
