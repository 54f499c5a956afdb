//! Torus normalizer extensions, root subgroups and the markings they determine.

use rootdatum::datum::catalog;
use rootdatum::ext::{minimal_lift_order, recover_marking, root_subgroup, torsor, NormalizerExtension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [catalog::su(2)?, catalog::so(3)?, catalog::spin(5)?, catalog::so(5)?, catalog::g2()?] {
        let n = NormalizerExtension::new(&d)?;
        println!("{} (split: {})", d.name(), n.splits()?);
        for class in &d.reflections().classes {
            let r = class[0];
            let rs = root_subgroup(&n, r)?;
            let t = torsor(&n, &rs)?;
            println!(
                "  reflection {r}: marking {}, recovered {}, lift order {}, x = {}, {} root subgroup candidates",
                d.marking(r),
                recover_marking(&n, r)?,
                minimal_lift_order(&n, r)?,
                rs.x,
                t.len()
            );
        }
    }
    Ok(())
}
