//! Run named verification suites and print a text report.

use rootdatum::cli::suites::{run, SUITES};
use rootdatum::cli::Report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chosen: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if chosen.is_empty() { vec!["torsor", "wdi4", "b2family"] } else { chosen.iter().map(String::as_str).collect() };
    for name in names {
        if !SUITES.contains(&name) {
            eprintln!("unknown suite {name}");
            continue;
        }
        let mut report = Report::new(&format!("verify {name}"), &[]);
        report.extend(run(name, None)?);
        print!("{}", report.to_text());
    }
    Ok(())
}
