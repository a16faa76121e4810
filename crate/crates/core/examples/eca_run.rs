//! Runs elementary rules on a ring of cells and prints the space-time
//! diagram.
//!
//! cargo run -p endoca --example eca_run -- 90 31 15

use endoca::ca::eca;
use endoca::Configuration;

fn main() -> endoca::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let rule = args.first().copied().unwrap_or(90);
    let width = args.get(1).copied().unwrap_or(31) as usize;
    let steps = args.get(2).copied().unwrap_or(15) as usize;

    let mut cells = vec![0; width];
    cells[width / 2] = 1;
    let x = Configuration::periodic(cells)?;
    let ca = eca(rule)?;
    println!("rule {rule}, memory {}", ca.memory());
    for row in ca.evolve(&x, steps)? {
        let line: String = row.cells().iter().map(|&v| if v == 1 { '#' } else { '.' }).collect();
        println!("{line}");
    }
    Ok(())
}
