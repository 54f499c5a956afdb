//! Cohomology of Weyl groups with coefficients in the discrete torus, by several methods.

use rootdatum::cohomology::{h1_reflection, h1_torus_all_methods, h2_torus, Method};
use rootdatum::datum::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in catalog::b2_family()? {
        println!("{} over {}", d.name(), d.ring());
        for r in h1_torus_all_methods(&d)? {
            println!("  {r}");
        }
        println!("  {}", h2_torus(&d)?);
        for class in &d.reflections().classes {
            println!("  {}", h1_reflection(&d, class[0], Method::Direct)?);
        }
    }
    for name in ["SU(3)", "G2"] {
        let d = catalog::by_name(name)?;
        for r in h1_torus_all_methods(&d)? {
            println!("{r}");
        }
    }
    Ok(())
}
