//! Builds a few alphabets, checks them and asks whether they are entropic.
//!
//! cargo run -p endoca --example algebras

use std::sync::Arc;

use endoca::algebra::entropy_witness;
use endoca::{builtins, Algebra, FiniteAlgebra, FiniteGroup};

fn main() -> endoca::Result<()> {
    // an algebra from its text form: Z3 with addition and zero
    let z3 = FiniteAlgebra::parse(
        "algebra Z3\n\
         size 3\n\
         op + 2\n\
         0 1 2 1 2 0 2 0 1\n\
         op 0 0\n\
         0\n",
    )?;
    println!("{} has {} elements; 2 + 2 = {}", z3.name(), z3.size(), z3.eval("+", &[2, 2])?);

    let s3 = FiniteGroup::symmetric(3);
    println!("S3 has order {}, (1*2)^-1 = {}", s3.order(), s3.inv(s3.mul(1, 2)));

    let candidates = [
        Arc::new(z3),
        Arc::new(builtins::vector_space(2, 2)),
        Arc::new(builtins::boolean(1)),
        Arc::new(builtins::group_magma(&s3)),
    ];
    for a in &candidates {
        match entropy_witness(a) {
            None => println!("{:>10}: entropic", a.name()),
            Some(w) => println!("{:>10}: not entropic, {w}", a.name()),
        }
    }
    Ok(())
}
