//! Fixed points of the Weyl group on the discrete torus, split into center and complement.

use rootdatum::datum::{catalog, BaseRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["SU(2)", "SO(3)", "SU(3)", "Spin(5)", "SO(5)", "SO(3)xSO(5)", "G2", "Spin(7)", "SO(7)"] {
        let s = catalog::by_name(name)?.center_splitting()?;
        println!(
            "{name:<12} center {:<8} fixed points {:<12} complement {:<10} s = {}",
            s.center.to_string(),
            s.fixed_points.to_string(),
            s.complement.to_string(),
            s.so_odd_factors
        );
    }
    for p in [2, 3, 5] {
        let d = catalog::su(3)?.base_change(BaseRing::Padic(p))?;
        println!("SU(3) over Z_{p}: center {}", d.discrete_center()?);
    }
    Ok(())
}
