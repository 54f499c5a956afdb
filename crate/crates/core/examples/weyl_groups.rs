//! Weyl groups of catalog data: orders, reflections, reduced words and presentations.

use rootdatum::datum::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in catalog::coxeter_catalog()? {
        let w = d.weyl();
        let refl = d.reflections();
        let cox = d.coxeter()?;
        let longest = cox.longest_element();
        println!(
            "{:<22} |W| = {:>4}  reflections {:>2} in {} classes  longest element {:?}",
            d.name(),
            w.order(),
            refl.len(),
            refl.classes.len(),
            cox.reduced_word(w, longest)
        );
    }

    let g2 = catalog::g2()?;
    let pres = g2.coxeter()?.presentation(g2.weyl());
    pres.verify_in(g2.weyl())?;
    println!("G2 Coxeter presentation holds, coset enumeration gives order {}", pres.order(100)?);
    Ok(())
}
