//! Counts and lists homomorphisms A^s -> A, comparing closed forms with the
//! backtracking search.
//!
//! cargo run -p endoca --example hom_search

use std::sync::Arc;

use endoca::hom::{count_homs, count_homs_generic, enumerate_homs};
use endoca::{builtins, Limits, PowerAlgebra};

fn main() -> endoca::Result<()> {
    let limits = Limits::default();
    for (name, s) in [("Z4", 2), ("F2^2", 2), ("Bool2", 2), ("Set3", 2), ("S3-magma", 1)] {
        let a = Arc::new(builtins::alphabet(name).expect("built-in"));
        let dom = PowerAlgebra::new(a.clone(), s)?;
        let (n, method) = count_homs(&dom, &a, &limits)?;
        let searched = count_homs_generic(&dom, &*a, &limits)?;
        println!("|Hom(({name})^{s}, {name})| = {n} via {method:?}, search finds {searched}");
    }

    // the three homomorphisms Z3^1 -> Z3 as tables
    let z3 = Arc::new(builtins::cyclic_group(3));
    for h in enumerate_homs(&*z3, &*z3, &limits)?.items {
        println!("  {:?}", h.table);
    }
    Ok(())
}
