//! The sequence H1(W;T) -> Out(N) -> Out(D) and its canonical splitting.

use rootdatum::automorphisms::exact_sequence_report;
use rootdatum::cli::suites::builtin_set;
use rootdatum::datum::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut data = builtin_set("exactseq")?;
    data.push(catalog::f4()?);
    data.extend(builtin_set("odd")?.into_iter().take(3));
    for d in &data {
        let r = exact_sequence_report(d)?;
        println!(
            "{:<14} over {:<5} H1 {:<8} |Out(D)| {:<4} section {:<5} image {:<5} injective {:<5} odd {:?}",
            d.name(),
            d.ring().to_string(),
            format!("{:?}", r.h1),
            r.out_datum_order.map_or("-".into(), |o| o.to_string()),
            r.section,
            r.image,
            r.injective,
            r.odd_degeneration
        );
    }
    Ok(())
}
