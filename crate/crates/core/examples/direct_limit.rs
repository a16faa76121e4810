//! Growing the memory set: every endomorphic automaton on a small window
//! reappears, unchanged, on every larger one.
//!
//! cargo run -p endoca --example direct_limit

use std::sync::Arc;

use endoca::theory::{enumerate_endoca, verify_direct_limit};
use endoca::{builtins, Limits, MemorySet};

fn main() -> endoca::Result<()> {
    let limits = Limits::default();
    let z2 = Arc::new(builtins::cyclic_group(2));
    let chain = [MemorySet::interval(0, 0), MemorySet::interval(-1, 0), MemorySet::interval(-1, 1)];
    for s in &chain {
        println!("S = {s}: {} endomorphic automata", enumerate_endoca(s, &z2, &limits)?.len());
    }
    print!("{}", verify_direct_limit(&chain, &z2, &limits)?);
    Ok(())
}
