//! Composition, memory extension and minimal memory for automata over Z.
//!
//! cargo run -p endoca --example compose_minimize

use std::sync::Arc;

use endoca::ca::{eca, eca_over, pointwise_combine};
use endoca::{builtins, Configuration, Group, Limits, MemorySet};

fn main() -> endoca::Result<()> {
    let limits = Limits::default();
    let r90 = eca(90)?;
    let r150 = eca(150)?;

    let both = r90.compose(&r150, &limits)?;
    println!("90 after 150: memory {}, {} table entries", both.memory(), both.table().len());
    let x = Configuration::periodic(vec![0, 0, 1, 0, 1, 1, 0, 0, 0])?;
    assert_eq!(both.apply(&x)?, r90.apply(&r150.apply(&x)?)?);

    let wide = r90.extend_memory(&MemorySet::interval(-3, 3), &limits)?;
    let back = wide.minimal_memory();
    println!("90 padded to {} minimizes to {}", wide.memory(), back.memory());

    // pointwise XOR of the left and right shifts is rule 90
    let z2 = Arc::new(builtins::cyclic_group(2));
    let (left, right) = (eca_over(240, z2.clone())?, eca_over(170, z2.clone())?);
    let xor = pointwise_combine(&Group::integers(), &z2, "+", &[&left, &right], &limits)?;
    let xor = xor.minimal_memory();
    println!("240 + 170 = memory {}, table {:?}", xor.memory(), xor.table());
    println!("as an elementary rule: {:?}", xor.extend_memory(&MemorySet::interval(-1, 1), &limits)?.wolfram_number());
    Ok(())
}
