use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::boolean::boolean_view;
use crate::builtins;
use crate::ca::eca_over;
use crate::error::{Error, Result};

/// Which structure on `{0, 1}` the elementary rules must respect.
#[derive(Debug, Clone)]
pub enum EcaPredicate {
    /// Group `Z_2`.
    Additive,
    /// Boolean algebra `2`.
    BooleanHom,
    /// Any two-element alphabet.
    EndomorphicUnder(Arc<FiniteAlgebra>),
}

impl EcaPredicate {
    pub fn alphabet(&self) -> Arc<FiniteAlgebra> {
        match self {
            EcaPredicate::Additive => Arc::new(builtins::cyclic_group(2)),
            EcaPredicate::BooleanHom => Arc::new(builtins::boolean(1)),
            EcaPredicate::EndomorphicUnder(a) => a.clone(),
        }
    }

    /// `additive`, `boolean-hom`, or anything `resolve` turns into an
    /// alphabet.
    pub fn parse(name: &str, resolve: impl Fn(&str) -> Result<Arc<FiniteAlgebra>>) -> Result<Self> {
        match name {
            "additive" => Ok(EcaPredicate::Additive),
            "boolean-hom" => Ok(EcaPredicate::BooleanHom),
            other => {
                let target = other.strip_prefix("endomorphic-under:").unwrap_or(other);
                Ok(EcaPredicate::EndomorphicUnder(resolve(target)?))
            }
        }
    }
}

/// Ascending Wolfram numbers of the elementary rules whose local rule is a
/// homomorphism `A^3 -> A`. Over a Boolean alphabet every accepted rule is
/// also checked to reduce to a single projection.
pub fn classify_eca(predicate: &EcaPredicate) -> Result<Vec<u8>> {
    let alphabet = predicate.alphabet();
    let boolean = boolean_view(&alphabet).is_ok();
    let mut accepted = Vec::new();
    for m in 0..=255u8 {
        let ca = eca_over(m as u32, alphabet.clone())?;
        if !ca.is_endomorphic() {
            continue;
        }
        if boolean {
            let min = ca.minimal_memory();
            if min.memory().len() != 1 || min.table() != [0, 1] {
                return Err(Error::Inconsistent(format!(
                    "rule {m} is a Boolean homomorphism but not a projection"
                )));
            }
        }
        accepted.push(m);
    }
    Ok(accepted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_lists() {
        assert_eq!(
            classify_eca(&EcaPredicate::Additive).unwrap(),
            vec![0, 60, 90, 102, 150, 170, 204, 240]
        );
        assert_eq!(classify_eca(&EcaPredicate::BooleanHom).unwrap(), vec![170, 204, 240]);
        let all = EcaPredicate::EndomorphicUnder(Arc::new(builtins::set(2)));
        assert_eq!(classify_eca(&all).unwrap().len(), 256);
    }

    #[test]
    fn oracle_for_additive_rules() {
        // Z2-linear rules are exactly XORs of a subset of the three inputs
        let mut expected: Vec<u8> = (0..8u8)
            .map(|mask| {
                (0..8).fold(0u8, |acc, t| {
                    let bits = [(t >> 2) & 1, (t >> 1) & 1, t & 1];
                    let v = (0..3).filter(|i| mask >> (2 - i) & 1 == 1).map(|i| bits[i]).sum::<u8>() % 2;
                    acc | (v << t)
                })
            })
            .collect();
        expected.sort();
        assert_eq!(classify_eca(&EcaPredicate::Additive).unwrap(), expected);
    }

    #[test]
    fn parses_predicates() {
        let resolve = |n: &str| {
            builtins::alphabet(n)
                .map(Arc::new)
                .ok_or_else(|| Error::UnknownOp(n.to_string()))
        };
        assert!(matches!(EcaPredicate::parse("additive", resolve), Ok(EcaPredicate::Additive)));
        assert!(matches!(
            EcaPredicate::parse("endomorphic-under:Set2", resolve),
            Ok(EcaPredicate::EndomorphicUnder(_))
        ));
        assert!(EcaPredicate::parse("bogus", resolve).is_err());
    }
}
