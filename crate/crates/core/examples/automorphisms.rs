//! Outer automorphisms of root data and their canonical lifts to the normalizer.

use rootdatum::automorphisms::{canonical_splitting, out_datum, preserves_root_subgroups};
use rootdatum::datum::catalog;
use rootdatum::ext::{root_subgroups, NormalizerExtension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["SU(3)", "Spin(5)", "SO(4)", "SU(2)xSU(2)", "G2", "F4"] {
        let d = catalog::by_name(name)?;
        let out = out_datum(&d)?;
        let n = NormalizerExtension::new(&d)?;
        let roots = root_subgroups(&n)?;
        let mut preserved = true;
        for e in &out.elements {
            let s = canonical_splitting(&n, &roots, e)?;
            preserved &= s.is_homomorphism(&n) && preserves_root_subgroups(&n, &s, &roots)?;
        }
        println!(
            "{name:<12} |Out(D)| = {}, diagram permutations {:?}, lifts preserve root subgroups: {preserved}",
            out.order(),
            out.simple_permutations
        );
    }
    Ok(())
}
