//! Building, validating, serializing and base-changing root data.

use rootdatum::datum::{catalog, BaseRing, RootDatum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in catalog::full_catalog()? {
        let index = d.coroot_lattice_index().ok().flatten().map_or("-".to_string(), |i| i.to_string());
        println!(
            "{:<22} ring {:<5} rank {} semisimple rank {} coroot index {index}",
            d.name(),
            d.ring().to_string(),
            d.rank(),
            d.semisimple_rank()
        );
    }

    let so5 = catalog::so(5)?;
    let json = so5.to_json();
    let back = RootDatum::from_json(&json)?;
    println!("SO(5) survives a JSON round trip: {}", back.is_isomorphic(&so5)?.is_some());

    let at2 = so5.base_change(BaseRing::Padic(2))?;
    println!("over Z_2 the marking of reflection 0 is {}", at2.marking(0));
    let at3 = so5.base_change(BaseRing::Padic(3))?;
    println!("over Z_3 it is {}", at3.marking(0));

    let mut spec = so5.canonical_spec();
    spec.coroots[0].coroot = vec![3, 0];
    let report = spec.validate();
    println!("corrupted coroot valid: {} ({})", report.valid, report.summary());
    Ok(())
}
