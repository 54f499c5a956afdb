//! Centralizers of torus elements as root subdata.

use rootdatum::datum::{catalog, BaseRing};
use rootdatum::linalg::RationalModZVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let candidates =
        [("SU(2)xSU(2)", catalog::by_name("SU(2)xSU(2)")?), ("SO(4)", catalog::so(4)?), ("SO(3)xS1", catalog::by_name("SO(3)xS1")?)];
    for d in [catalog::spin(5)?, catalog::so(5)?] {
        for a in d.two_torsion_points() {
            let c = d.centralizer_subdatum(std::slice::from_ref(&a))?;
            let mut names = Vec::new();
            for (n, other) in &candidates {
                if c.is_isomorphic(other)?.is_some() {
                    names.push(*n);
                }
            }
            println!("{} at {a}: |W| = {}, isomorphic to {:?}", d.name(), c.weyl().order(), names);
        }
    }

    let di4 = catalog::di4(catalog::DI4_PRECISION)?;
    let a = RationalModZVector::parse(&["1/2", "0", "0"])?;
    let c = di4.centralizer_subdatum(&[a])?;
    let spin7 = catalog::spin(7)?.base_change(BaseRing::Padic(2))?;
    println!(
        "DI(4): centralizer Weyl group of order {}, index {}, Spin(7) Weyl order {}",
        c.weyl().order(),
        di4.weyl().order() / c.weyl().order(),
        spin7.weyl().order()
    );
    Ok(())
}
