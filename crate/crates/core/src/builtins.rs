//! Named alphabets and groups that need no file.
//!
//! Alphabets: `Z<n>` (cyclic group, ops `+ 0`), `Bool` / `Bool<k>`
//! (Boolean algebra `2^k`, ops `and or not 0 1`), `F<p>^<n>` (vector space
//! over the prime field, ops `+ 0 scale0 .. scale<p-1>`), `Set<q>` (no
//! operations), `<group>-magma` (a group's multiplication as a bare
//! binary op `*`).
//!
//! Groups: `Z`, `Z2` (lattices), `C<n>`, `K4`, `S<n>`.

use crate::algebra::FiniteAlgebra;
use crate::group::{FiniteGroup, Group};

pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        format!("Z{n}"),
        n,
        vec![
            ("+", 2, FiniteAlgebra::tabulate(n, 2, |a| (a[0] + a[1]) % n)),
            ("0", 0, vec![0]),
        ],
    )
    .expect("cyclic group tables")
}

/// `2^k` with elements as bitmasks, first atom in the most significant bit.
pub fn boolean(k: usize) -> FiniteAlgebra {
    let size = 1usize << k;
    let top = size - 1;
    let name = if k == 1 {
        "Bool".to_string()
    } else {
        format!("Bool{k}")
    };
    FiniteAlgebra::new(
        name,
        size,
        vec![
            ("and", 2, FiniteAlgebra::tabulate(size, 2, |a| a[0] & a[1])),
            ("or", 2, FiniteAlgebra::tabulate(size, 2, |a| a[0] | a[1])),
            ("not", 1, FiniteAlgebra::tabulate(size, 1, |a| top ^ a[0])),
            ("0", 0, vec![0]),
            ("1", 0, vec![top]),
        ],
    )
    .expect("Boolean tables")
}

/// `F_p^n` for prime `p`, with one unary scalar operation per field element.
pub fn vector_space(p: usize, n: usize) -> FiniteAlgebra {
    let size = p.pow(n as u32);
    let digits = |x: usize| crate::tuple::decode(x, p, n);
    let enc = |d: &[usize]| crate::tuple::encode(d, p);
    let mut ops = vec![
        (
            "+".to_string(),
            2,
            FiniteAlgebra::tabulate(size, 2, |a| {
                let (x, y) = (digits(a[0]), digits(a[1]));
                enc(&x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect::<Vec<_>>())
            }),
        ),
        ("0".to_string(), 0, vec![0]),
    ];
    for r in 0..p {
        ops.push((
            format!("scale{r}"),
            1,
            FiniteAlgebra::tabulate(size, 1, |a| {
                enc(&digits(a[0]).iter().map(|u| (u * r) % p).collect::<Vec<_>>())
            }),
        ));
    }
    FiniteAlgebra::new(format!("F{p}^{n}"), size, ops).expect("vector space tables")
}

pub fn set(q: usize) -> FiniteAlgebra {
    FiniteAlgebra::new::<String>(format!("Set{q}"), q, vec![]).expect("bare set")
}

pub fn group_magma(g: &FiniteGroup) -> FiniteAlgebra {
    let m = g.order();
    FiniteAlgebra::new(
        format!("{}-magma", g.name()),
        m,
        vec![("*", 2, FiniteAlgebra::tabulate(m, 2, |a| g.mul(a[0], a[1])))],
    )
    .expect("group table")
}

fn number_after(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&n| n > 0)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Resolves a built-in alphabet name.
pub fn alphabet(name: &str) -> Option<FiniteAlgebra> {
    if name == "Bool" {
        return Some(boolean(1));
    }
    if let Some(k) = number_after(name, "Bool").filter(|&k| k <= 12) {
        return Some(boolean(k));
    }
    if let Some(q) = number_after(name, "Set") {
        return Some(set(q));
    }
    if let Some(rest) = name.strip_prefix('F') {
        let (p, n) = rest.split_once('^')?;
        let (p, n): (usize, usize) = (p.parse().ok()?, n.parse().ok()?);
        return (is_prime(p) && n >= 1 && p.pow(n as u32) <= 4096).then(|| vector_space(p, n));
    }
    if let Some(group_name) = name.strip_suffix("-magma") {
        return match group(group_name)? {
            Group::Finite(g) => Some(group_magma(&g)),
            Group::Lattice(_) => None,
        };
    }
    if let Some(n) = number_after(name, "Z") {
        return Some(cyclic_group(n));
    }
    None
}

/// Resolves a built-in group name.
pub fn group(name: &str) -> Option<Group> {
    match name {
        "Z" => Some(Group::integers()),
        "Z2" => Some(Group::integer_plane()),
        "K4" => Some(FiniteGroup::klein_four().into()),
        _ => {
            if let Some(n) = number_after(name, "C") {
                return Some(FiniteGroup::cyclic(n).into());
            }
            number_after(name, "S")
                .filter(|&n| n <= 5)
                .map(|n| FiniteGroup::symmetric(n).into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn resolves_names() {
        assert_eq!(alphabet("Z6").unwrap().size(), 6);
        assert_eq!(alphabet("Bool").unwrap().size(), 2);
        assert_eq!(alphabet("Bool3").unwrap().size(), 8);
        assert_eq!(alphabet("F2^2").unwrap().size(), 4);
        assert_eq!(alphabet("F3^2").unwrap().signature().len(), 5);
        assert!(alphabet("F4^1").is_none());
        assert_eq!(alphabet("Set2").unwrap().signature().len(), 0);
        assert_eq!(alphabet("S3-magma").unwrap().size(), 6);
        assert!(alphabet("nope").is_none());
        assert_eq!(group("C6").unwrap().order(), Some(6));
        assert_eq!(group("S3").unwrap().order(), Some(6));
        assert_eq!(group("Z"), Some(Group::integers()));
        assert!(group("Q8").is_none());
    }

    #[test]
    fn vector_space_scalars() {
        let v = vector_space(2, 2);
        assert_eq!(v.eval("scale0", &[3]).unwrap(), 0);
        assert_eq!(v.eval("scale1", &[3]).unwrap(), 3);
        assert_eq!(v.eval("+", &[1, 3]).unwrap(), 2);
    }
}
