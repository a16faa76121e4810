//! Runs the built-in verification suites and prints every check.
//!
//! cargo run --release -p endoca --example verify_suites -- boolean-count

use endoca::suites::{run, SUITES};
use endoca::Limits;

fn main() {
    let wanted: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<&str> = if wanted.is_empty() {
        SUITES.to_vec()
    } else {
        wanted.iter().map(String::as_str).collect()
    };
    let mut failed = false;
    for name in names {
        match run(name, &Limits::default()) {
            Ok(report) => {
                print!("{report}");
                failed |= !report.passed();
            }
            Err(e) => {
                eprintln!("{name}: {e}");
                failed = true;
            }
        }
    }
    std::process::exit(failed as i32);
}
