//! Which of the 256 elementary rules are endomorphisms for a given
//! structure on {0, 1}.
//!
//! cargo run -p endoca --example classify

use std::sync::Arc;

use endoca::theory::{classify_eca, EcaPredicate};
use endoca::{builtins, FiniteAlgebra};

fn main() -> endoca::Result<()> {
    let show = |label: &str, p: EcaPredicate| -> endoca::Result<()> {
        let rules = classify_eca(&p)?;
        if rules.len() > 16 {
            println!("{label:>12}: {} rules", rules.len());
        } else {
            println!("{label:>12}: {} rules {rules:?}", rules.len());
        }
        Ok(())
    };
    show("Z2", EcaPredicate::Additive)?;
    show("Bool", EcaPredicate::BooleanHom)?;
    show("Set2", EcaPredicate::EndomorphicUnder(Arc::new(builtins::set(2))))?;

    // a semilattice: only rules commuting with max survive
    let max = FiniteAlgebra::new("max", 2, vec![("v", 2, vec![0, 1, 1, 1])])?;
    show("max", EcaPredicate::EndomorphicUnder(Arc::new(max)))?;
    Ok(())
}
