//! Boolean alphabets: homomorphisms come from maximal ideals, so every
//! endomorphic automaton is a coordinate selection.
//!
//! cargo run -p endoca --example boolean

use std::sync::Arc;

use endoca::boolean::{boolean_homs, boolean_view, kernel};
use endoca::hom::enumerate_homs;
use endoca::theory::{count_endoca, enumerate_endoca};
use endoca::{builtins, Limits, MemorySet};

fn main() -> endoca::Result<()> {
    let limits = Limits::default();
    let b8 = Arc::new(builtins::boolean(3));
    let view = boolean_view(&b8)?;
    println!("2^3: atoms {:?}, maximal ideals {:?}", view.atoms(), view.maximal_ideals());

    let two = boolean_view(&Arc::new(builtins::boolean(1)))?;
    for h in enumerate_homs(&*b8, &**two.algebra(), &limits)?.items {
        println!("  hom {:?} has kernel {:?}", h.table, kernel(&h, &two));
    }

    for (k, s) in [(1, 3), (2, 2), (2, 3)] {
        println!("|Hom((2^{k})^{s}, 2^{k})| = {}", boolean_homs(k, s, &limits)?.count());
    }

    let bool1 = Arc::new(builtins::boolean(1));
    let fam = enumerate_endoca(&MemorySet::interval(-1, 1), &bool1, &limits)?;
    for ca in fam.items() {
        println!("  endomorphic rule {:?} -> minimal memory {}", ca.wolfram_number(), ca.minimal_memory().memory());
    }
    let c = count_endoca(4, &Arc::new(builtins::boolean(2)), &limits)?;
    println!("2^2 with |S| = 4: {} automata ({})", c.count, c.method);
    Ok(())
}
