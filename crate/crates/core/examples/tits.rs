//! Tits normal form compared with the normalizer extension.

use rootdatum::datum::catalog;
use rootdatum::ext::{NormalizerExtension, TitsExtension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in catalog::coxeter_catalog()? {
        let n = NormalizerExtension::new(&d)?;
        let t = TitsExtension::new(&n)?.report()?;
        println!(
            "{:<22} braid relations {:<5} equivalent {:<5} square of the longest lift {}",
            d.name(),
            t.braid_relations,
            t.equivalent,
            t.longest_element_square
        );
    }
    Ok(())
}
