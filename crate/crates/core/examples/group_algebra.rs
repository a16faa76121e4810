//! Elements of End(A)[G] as automata: convolution becomes composition.
//!
//! cargo run -p endoca --example group_algebra

use std::sync::Arc;

use endoca::hom::module_structure;
use endoca::theory::{convolve, psi, psi_inverse, verify_group_algebra, GroupAlgebraElement};
use endoca::{builtins, Element, FiniteGroup, Group, Limits, MemorySet};

fn main() -> endoca::Result<()> {
    let limits = Limits::default();
    let f4 = Arc::new(builtins::alphabet("F2^2").expect("built-in"));
    let module = Arc::new(module_structure(&f4, &limits)?);
    println!("End(F2^2) has {} elements", module.ring().len());

    let s3: Group = FiniteGroup::symmetric(3).into();
    let id = module.identity_endo();
    let a = GroupAlgebraElement::from_terms(s3.clone(), module.clone(), [(Element::Index(1), id), (Element::Index(3), 5)])?;
    let b = GroupAlgebraElement::delta(s3.clone(), module.clone(), Element::Index(2), 6)?;
    let ab = convolve(&a, &b)?;
    println!("a = {a}\nb = {b}\na * b = {ab}");

    let composed = psi(&a).compose(&psi(&b), &limits)?;
    println!("Psi(a * b) == Psi(a) o Psi(b): {}", psi(&ab).equivalent(&composed));
    println!("Psi^-1 recovers a: {}", psi_inverse(&psi(&a), &module)? == a);

    let z3 = Arc::new(builtins::cyclic_group(3));
    let report = verify_group_algebra(&MemorySet::interval(-1, 1), &Arc::new(module_structure(&z3, &limits)?), &limits)?;
    print!("{report}");
    Ok(())
}
