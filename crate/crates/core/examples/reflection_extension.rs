//! The extension of a reflection group by the free module on its reflections.

use std::sync::Arc;

use rootdatum::datum::catalog;
use rootdatum::ext::{gen210, pullback, ReflectionExtension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["SU(2)", "SU(2)xSU(2)", "SU(3)", "Spin(5)", "G2", "Spin(7)"] {
        let d = catalog::by_name(name)?;
        let rho = ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone()))?;
        let r = gen210(&rho)?;
        println!(
            "{name:<12} |W| = {:>3}, {} involutions: no split involutions {}, square roots over reflections {}, coset structure {}",
            r.group_order, r.involutions, r.no_involutions, r.projection, r.coset_structure
        );
    }

    // restrict to the reflection subgroup fixing an element of order two
    let d = catalog::spin(7)?;
    let rho = ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone()))?;
    for a in d.two_torsion_points().into_iter().take(3) {
        let gens: Vec<usize> =
            d.centralizer_reflections(std::slice::from_ref(&a)).iter().map(|&r| d.reflections().get(r).element).collect();
        let p = pullback(d.name(), &rho, &gens)?;
        println!(
            "Spin(7) at {a}: subgroup of order {}, restriction matches {}, complement splits {} (predicted {})",
            p.subgroup_order, p.restricted_matches, p.complement_splits, p.complement_predicted
        );
    }
    Ok(())
}
