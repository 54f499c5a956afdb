//! The 2-compact group DI(4): truncated data and its Weyl group cohomology.

use rootdatum::cohomology::{h1_bar_finite, h1_fox_finite, h1_reflection, h1_truncated, transfer_injective, Method};
use rootdatum::datum::catalog;
use rootdatum::ext::Action;
use rootdatum::groups::di4::gl3_f2_presentation;
use rootdatum::linalg::RationalModZVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = catalog::di4(catalog::DI4_PRECISION)?;
    let w = d.weyl();
    println!("W(DI(4)) has order {} with {} reflections", w.order(), d.reflections().len());
    let action = Action::of_group(w);
    for k in [3, 4, 5] {
        println!("H1(W;T) at truncation {k}: {}", h1_truncated(w, w.generators(), &action, 2, k)?.group);
    }
    for class in &d.reflections().classes {
        println!("{}", h1_reflection(&d, class[0], Method::Truncated)?);
    }

    let (gl, pres) = gl3_f2_presentation()?;
    let natural = Action { dim: 3, matrices: gl.elements().to_vec(), modulus: Some(2) };
    println!("H1(GL3(F2); F2^3): Fox {}, bar {}", h1_fox_finite(&gl, &pres, &natural, 2, 1)?, h1_bar_finite(&gl, &natural, 2, 1)?);

    let c = d.centralizer_subdatum(&[RationalModZVector::parse(&["1/2", "0", "0"])?])?;
    let sub = d.weyl_elements_of(&c).expect("centralizer is a subgroup");
    println!("restriction to the index {} subgroup injective: {}", w.order() / sub.len(), transfer_injective(&d, &sub, 2, 4)?);
    Ok(())
}
