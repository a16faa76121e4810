//! Finite Boolean algebras: law checking, atoms, ideals, kernels, and the
//! projection-tuple description of `Hom((2^k)^s, 2^k)`.

use std::sync::Arc;

use crate::algebra::{Algebra, FiniteAlgebra, HomMap};
use crate::error::{Error, Result};
use crate::hom::HomEnumeration;
use crate::limits::{power_size, Limits};
use crate::tuple;

const MEET: &[&str] = &["and", "meet", "∧"];
const JOIN: &[&str] = &["or", "join", "∨"];
const NOT: &[&str] = &["not", "¬"];
const BOTTOM: &[&str] = &["0", "bot"];
const TOP: &[&str] = &["1", "top"];

/// A Boolean algebra certified isomorphic to `2^k`, with its atoms.
#[derive(Debug, Clone)]
pub struct BooleanView {
    algebra: Arc<FiniteAlgebra>,
    meet: usize,
    join: usize,
    not: usize,
    bottom: usize,
    top: usize,
    atoms: Vec<usize>,
}

fn find_op(a: &FiniteAlgebra, names: &[&str], arity: usize) -> Result<usize> {
    names
        .iter()
        .find_map(|n| a.signature().index_of(n))
        .filter(|&i| a.signature().arity(i) == arity)
        .ok_or_else(|| Error::NotBoolean {
            law: "signature",
            witness: format!("no {arity}-ary `{}`", names[0]),
        })
}

fn fail(law: &'static str, witness: String) -> Error {
    Error::NotBoolean { law, witness }
}

/// Checks the Boolean laws exhaustively and computes the atoms.
pub fn boolean_view(b: &Arc<FiniteAlgebra>) -> Result<BooleanView> {
    let meet = find_op(b, MEET, 2)?;
    let join = find_op(b, JOIN, 2)?;
    let not = find_op(b, NOT, 1)?;
    let bottom = b.table(find_op(b, BOTTOM, 0)?)[0];
    let top = b.table(find_op(b, TOP, 0)?)[0];
    if b.signature().len() != 5 {
        return Err(fail(
            "signature",
            format!("{} operations, expected and/or/not/0/1", b.signature().len()),
        ));
    }
    let q = b.size();
    let m = |x: usize, y: usize| b.apply(meet, &[x, y]);
    let j = |x: usize, y: usize| b.apply(join, &[x, y]);
    let n = |x: usize| b.apply(not, &[x]);
    for x in 0..q {
        if j(x, bottom) != x {
            return Err(fail("0 is a join identity", format!("x={x}")));
        }
        if m(x, top) != x {
            return Err(fail("1 is a meet identity", format!("x={x}")));
        }
        if j(x, n(x)) != top {
            return Err(fail("x or not x = 1", format!("x={x}")));
        }
        if m(x, n(x)) != bottom {
            return Err(fail("x and not x = 0", format!("x={x}")));
        }
        for y in 0..q {
            if m(x, y) != m(y, x) {
                return Err(fail("meet commutes", format!("x={x} y={y}")));
            }
            if j(x, y) != j(y, x) {
                return Err(fail("join commutes", format!("x={x} y={y}")));
            }
            for z in 0..q {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return Err(fail("meet associates", format!("x={x} y={y} z={z}")));
                }
                if j(j(x, y), z) != j(x, j(y, z)) {
                    return Err(fail("join associates", format!("x={x} y={y} z={z}")));
                }
                if m(x, j(y, z)) != j(m(x, y), m(x, z)) {
                    return Err(fail("meet distributes", format!("x={x} y={y} z={z}")));
                }
                if j(x, m(y, z)) != m(j(x, y), j(x, z)) {
                    return Err(fail("join distributes", format!("x={x} y={y} z={z}")));
                }
            }
        }
    }
    let leq = |x: usize, y: usize| j(x, y) == y;
    let atoms: Vec<usize> = (0..q)
        .filter(|&x| x != bottom && (0..q).all(|y| y == bottom || y == x || !leq(y, x)))
        .collect();
    // every element is the join of the atoms below it, and distinct atom
    // sets give distinct joins: B is 2^k
    let k = atoms.len();
    if power_size(2, k) != q as u128 {
        return Err(fail("B = 2^k", format!("{q} elements but {k} atoms")));
    }
    for x in 0..q {
        let below = atoms
            .iter()
            .filter(|&&a| leq(a, x))
            .fold(bottom, |acc, &a| j(acc, a));
        if below != x {
            return Err(fail("join of atoms", format!("x={x}")));
        }
    }
    Ok(BooleanView {
        algebra: b.clone(),
        meet,
        join,
        not,
        bottom,
        top,
        atoms,
    })
}

impl BooleanView {
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.algebra.apply(self.meet, &[x, y])
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.algebra.apply(self.join, &[x, y])
    }

    pub fn complement(&self, x: usize) -> usize {
        self.algebra.apply(self.not, &[x])
    }

    /// `x <= y` iff `x or y = y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    /// `<y> = {x : x <= y}`, ascending.
    pub fn principal_ideal(&self, y: usize) -> Vec<usize> {
        (0..self.algebra.size()).filter(|&x| self.leq(x, y)).collect()
    }

    /// `<not a>` for every atom `a`, in atom order.
    pub fn maximal_ideals(&self) -> Vec<Vec<usize>> {
        self.atoms
            .iter()
            .map(|&a| self.principal_ideal(self.complement(a)))
            .collect()
    }

    /// Contains 0, closed under join, and closed under meet with anything.
    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let q = self.algebra.size();
        let mut member = vec![false; q];
        for &x in set {
            if x >= q {
                return false;
            }
            member[x] = true;
        }
        member[self.bottom]
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.join(a, b)]))
            && set.iter().all(|&a| (0..q).all(|x| member[self.meet(a, x)]))
    }
}

/// `ker(phi) = {b : phi(b) = 0}`, ascending.
pub fn kernel(phi: &HomMap, codomain: &BooleanView) -> Vec<usize> {
    phi.table
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == codomain.bottom())
        .map(|(b, _)| b)
        .collect()
}

/// `Hom((2^k)^s, 2^k)`: each map picks, for every atom of the codomain,
/// one of the `k s` coordinates of the domain `2^{k s}`. The domain
/// encoding matches the power algebra of [`crate::builtins::boolean`]`(k)`
/// over `s` positions. Sorted by table; `(k s)^k` items.
pub fn boolean_homs(k: usize, s: usize, limits: &Limits) -> Result<HomEnumeration> {
    let bits = k * s;
    let domain = power_size(2, bits);
    limits.check_domain("Boolean power domain", domain)?;
    limits.check_configs(
        "Boolean hom list",
        power_size(bits, k).saturating_mul(domain),
    )?;
    let domain = domain as usize;
    let mut items = Vec::new();
    let mut choice = vec![0; k];
    if bits > 0 || k == 0 {
        loop {
            let table = (0..domain)
                .map(|d| {
                    choice.iter().fold(0, |acc, &c| {
                        let bit = (d >> (bits - 1 - c)) & 1;
                        (acc << 1) | bit
                    })
                })
                .collect();
            items.push(HomMap::new(table));
            if !tuple::next_tuple(&mut choice, bits.max(1)) || bits == 0 {
                break;
            }
        }
    }
    items.sort();
    Ok(HomEnumeration {
        domain_size: domain,
        codomain_size: 1 << k,
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PowerAlgebra;
    use crate::builtins;
    use crate::hom::enumerate_homs;

    fn view(k: usize) -> BooleanView {
        boolean_view(&Arc::new(builtins::boolean(k))).unwrap()
    }

    #[test]
    fn atoms_of_small_algebras() {
        assert_eq!(view(1).atoms(), &[1]);
        // (0,1) and (1,0)
        assert_eq!(view(2).atoms(), &[1, 2]);
        assert_eq!(view(3).atom_count(), 3);
        let power = Arc::new(PowerAlgebra::new(Arc::new(builtins::boolean(1)), 2).unwrap().materialize());
        assert_eq!(boolean_view(&power).unwrap().atoms(), &[1, 2]);
    }

    #[test]
    fn rejects_complement_failure() {
        // the three-element chain with a pseudo-complement
        let chain = FiniteAlgebra::new(
            "chain",
            3,
            vec![
                ("and", 2, FiniteAlgebra::tabulate(3, 2, |a| a[0].min(a[1]))),
                ("or", 2, FiniteAlgebra::tabulate(3, 2, |a| a[0].max(a[1]))),
                ("not", 1, vec![2, 0, 0]),
                ("0", 0, vec![0]),
                ("1", 0, vec![2]),
            ],
        )
        .unwrap();
        let err = boolean_view(&Arc::new(chain)).unwrap_err();
        assert!(matches!(err, Error::NotBoolean { law: "x or not x = 1", .. }), "{err}");
        assert!(boolean_view(&Arc::new(builtins::cyclic_group(2))).is_err());
    }

    #[test]
    fn ideals() {
        let b = view(3);
        assert_eq!(b.principal_ideal(b.top()), (0..8).collect::<Vec<_>>());
        assert_eq!(b.principal_ideal(b.bottom()), vec![0]);
        let maximal = b.maximal_ideals();
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|i| i.len() == 4 && b.is_ideal(i)));

        // oracle: the maximal ideals by definition, over all 256 subsets
        let ideals: Vec<Vec<usize>> = (0u32..256)
            .map(|mask| (0..8).filter(|i| mask & (1 << i) != 0).collect::<Vec<usize>>())
            .filter(|s| b.is_ideal(s))
            .collect();
        // every ideal of a finite Boolean algebra is principal
        assert_eq!(ideals.len(), 8);
        let proper: Vec<&Vec<usize>> = ideals.iter().filter(|i| i.len() < 8).collect();
        let mut by_definition: Vec<Vec<usize>> = proper
            .iter()
            .filter(|i| {
                !proper
                    .iter()
                    .any(|j| j.len() > i.len() && i.iter().all(|x| j.contains(x)))
            })
            .map(|i| (*i).clone())
            .collect();
        by_definition.sort();
        let mut ours = maximal.clone();
        ours.sort();
        assert_eq!(ours, by_definition);
    }

    #[test]
    fn kernel_of_first_projection() {
        let two = view(1);
        let b2 = view(2);
        let pi0 = HomMap::projection(2, 2, 0);
        let ker = kernel(&pi0, &two);
        // (0,0) and (0,1)
        assert_eq!(ker, vec![0, 1]);
        assert_eq!(ker, b2.principal_ideal(b2.complement(2)));
        assert!(b2.is_ideal(&ker));
    }

    #[test]
    fn surjective_kernels_are_maximal_principal() {
        let two = view(1);
        for s in 1..=4 {
            let dom = PowerAlgebra::new(Arc::new(builtins::boolean(1)), s).unwrap();
            let big = boolean_view(&Arc::new(dom.materialize())).unwrap();
            let homs = enumerate_homs(&dom, two.algebra().as_ref(), &Limits::default()).unwrap();
            assert_eq!(homs.count(), s);
            let maximal = big.maximal_ideals();
            for h in &homs.items {
                let ker = kernel(h, &two);
                assert!(big.is_ideal(&ker));
                assert!(maximal.contains(&ker));
            }
        }
    }

    #[test]
    fn projection_tuples_match_generic_search() {
        let limits = Limits::default();
        for (k, s) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
            let fast = boolean_homs(k, s, &limits).unwrap();
            assert_eq!(fast.count() as u128, power_size(k * s, k));
            let a = Arc::new(builtins::boolean(k));
            let dom = PowerAlgebra::new(a.clone(), s).unwrap();
            let slow = enumerate_homs(&dom, a.as_ref(), &limits).unwrap();
            assert_eq!(fast.items, slow.items, "k={k} s={s}");
        }
        assert_eq!(boolean_homs(1, 1, &limits).unwrap().items, vec![HomMap::identity(2)]);
    }
}
