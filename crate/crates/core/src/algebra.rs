//! Finite algebras of arbitrary signature.
//!
//! Elements are `0..q`. Every n-ary operation is a dense table of length
//! `q^n` indexed by [`tuple::encode`], so an operation table doubles as the
//! value table of a map `A^n -> A`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::{power_size, Limits};
use crate::tuple;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with arities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<Operation>,
}

impl Signature {
    pub fn new(ops: Vec<Operation>) -> Result<Self> {
        for (i, op) in ops.iter().enumerate() {
            if op.name.is_empty() || op.name.chars().any(char::is_whitespace) {
                return Err(Error::parse(0, format!("bad operation name `{}`", op.name)));
            }
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::parse(0, format!("duplicate operation `{}`", op.name)));
            }
        }
        Ok(Signature { ops })
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn name(&self, op: usize) -> &str {
        &self.ops[op].name
    }

    pub fn arities(&self) -> Vec<usize> {
        self.ops.iter().map(|o| o.arity).collect()
    }
}

/// Anything with a carrier `0..size` and operations over a [`Signature`].
///
/// `apply` takes an operation index and in-range arguments; callers that
/// accept untrusted input go through [`FiniteAlgebra::eval`] instead.
pub trait Algebra {
    fn size(&self) -> usize;
    fn signature(&self) -> &Signature;
    fn apply(&self, op: usize, args: &[usize]) -> usize;

    /// `Some((A, n))` when this algebra is the componentwise power `A^n`.
    fn as_power(&self) -> Option<(&Arc<FiniteAlgebra>, usize)> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    signature: Signature,
    tables: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl FiniteAlgebra {
    /// Builds an algebra from `(name, arity, table)` triples.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        size: usize,
        ops: Vec<(S, usize, Vec<usize>)>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::parse(0, "algebra size must be at least 1"));
        }
        let mut sig = Vec::with_capacity(ops.len());
        let mut tables = Vec::with_capacity(ops.len());
        for (op_name, arity, table) in ops {
            let op_name = op_name.into();
            let expected = power_size(size, arity);
            if table.len() as u128 != expected {
                return Err(Error::TableLength {
                    op: op_name,
                    expected: expected.min(usize::MAX as u128) as usize,
                    found: table.len(),
                });
            }
            if let Some(&value) = table.iter().find(|&&v| v >= size) {
                return Err(Error::OutOfRange { value, size });
            }
            sig.push(Operation {
                name: op_name,
                arity,
            });
            tables.push(table);
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            signature: Signature::new(sig)?,
            tables,
            names: None,
        })
    }

    /// Builds an operation table by evaluating `f` on every argument tuple.
    pub fn tabulate(size: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> Vec<usize> {
        let total = power_size(size, arity) as usize;
        let mut args = vec![0; arity];
        (0..total)
            .map(|i| {
                tuple::decode_into(i, size, &mut args);
                f(&args)
            })
            .collect()
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::parse(0, "element name count differs from size"));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Parses the line-oriented algebra file format:
    ///
    /// ```text
    /// algebra Z2
    /// size 2
    /// op + 2
    /// 0 1 1 0
    /// op 0 0
    /// 0
    /// ```
    ///
    /// An optional `names <label>...` line may follow `size`. Blank lines and
    /// `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();

        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty algebra file"))?;
        let name = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["algebra", name] => name.to_string(),
            _ => return Err(Error::parse(ln, "expected `algebra <name>`")),
        };
        let (ln, size_line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 1, "missing `size <q>`"))?;
        let size: usize = match size_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["size", q] => q
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad size `{q}`")))?,
            _ => return Err(Error::parse(ln, "expected `size <q>`")),
        };
        let mut names = None;
        if let Some((_, l)) = lines.peek() {
            if l.starts_with("names") {
                let (_, l) = lines.next().expect("peeked");
                names = Some(l.split_whitespace().skip(1).map(String::from).collect());
            }
        }
        let mut ops = Vec::new();
        while let Some((ln, line)) = lines.next() {
            let (op_name, arity) = match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["op", n, a] => (
                    n.to_string(),
                    a.parse::<usize>()
                        .map_err(|_| Error::parse(ln, format!("bad arity `{a}`")))?,
                ),
                _ => return Err(Error::parse(ln, "expected `op <name> <arity>`")),
            };
            let (tln, values) = lines
                .next()
                .ok_or_else(|| Error::parse(ln + 1, format!("missing table for `{op_name}`")))?;
            let table = values
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(tln, format!("bad table entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            ops.push((op_name, arity, table));
        }
        let alg = FiniteAlgebra::new(name, size, ops)?;
        match names {
            Some(n) => alg.with_element_names(n),
            None => Ok(alg),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {}\nsize {}\n", self.name, self.size);
        if let Some(names) = &self.names {
            out.push_str(&format!("names {}\n", names.join(" ")));
        }
        for (op, table) in self.signature.ops().iter().zip(&self.tables) {
            out.push_str(&format!("op {} {}\n", op.name, op.arity));
            let vals: Vec<String> = table.iter().map(|v| v.to_string()).collect();
            out.push_str(&vals.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    /// Checked evaluation of a named operation.
    pub fn eval(&self, op: &str, args: &[usize]) -> Result<usize> {
        let idx = self
            .signature
            .index_of(op)
            .ok_or_else(|| Error::UnknownOp(op.to_string()))?;
        let arity = self.signature.arity(idx);
        if args.len() != arity {
            return Err(Error::Arity {
                op: op.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&value) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::OutOfRange {
                value,
                size: self.size,
            });
        }
        Ok(self.apply(idx, args))
    }

    /// Value of the nullary operation `name`, if present.
    pub fn constant(&self, name: &str) -> Option<usize> {
        let idx = self.signature.index_of(name)?;
        (self.signature.arity(idx) == 0).then(|| self.tables[idx][0])
    }

    /// Direct product `A x B`; `(a, b)` is encoded as `a * |B| + b`.
    pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        if a.signature != b.signature {
            return Err(Error::SignatureMismatch(format!("{} vs {}", a.name, b.name)));
        }
        let qb = b.size;
        let size = a.size * qb;
        let ops = a
            .signature
            .ops()
            .iter()
            .enumerate()
            .map(|(op, o)| {
                let table = FiniteAlgebra::tabulate(size, o.arity, |args| {
                    let left: Vec<usize> = args.iter().map(|x| x / qb).collect();
                    let right: Vec<usize> = args.iter().map(|x| x % qb).collect();
                    a.apply(op, &left) * qb + b.apply(op, &right)
                });
                (o.name.clone(), o.arity, table)
            })
            .collect();
        FiniteAlgebra::new(format!("{}x{}", a.name, b.name), size, ops)
    }
}

impl Algebra for FiniteAlgebra {
    fn size(&self) -> usize {
        self.size
    }

    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple::encode(args, self.size)]
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (size {})", self.name, self.size)
    }
}

/// The componentwise power `A^n`. Element `i` is the tuple
/// `tuple::decode(i, q, n)`, first coordinate most significant.
#[derive(Debug, Clone)]
pub struct PowerAlgebra {
    base: Arc<FiniteAlgebra>,
    exponent: usize,
    size: usize,
}

impl PowerAlgebra {
    /// Unchecked against caps; fails only if `q^n` does not fit in memory
    /// addressing.
    pub fn new(base: Arc<FiniteAlgebra>, exponent: usize) -> Result<Self> {
        let size = power_size(base.size(), exponent);
        if size > (u32::MAX as u128) {
            return Err(Error::CapExceeded {
                what: "power algebra",
                needed: size,
                cap: u32::MAX as usize,
            });
        }
        Ok(PowerAlgebra {
            base,
            exponent,
            size: size as usize,
        })
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn decode(&self, element: usize) -> Vec<usize> {
        tuple::decode(element, self.base.size(), self.exponent)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        tuple::encode(coords, self.base.size())
    }

    /// Dense tables for every operation.
    pub fn materialize(&self) -> FiniteAlgebra {
        let ops = self
            .base
            .signature()
            .ops()
            .iter()
            .enumerate()
            .map(|(op, o)| {
                (
                    o.name.clone(),
                    o.arity,
                    FiniteAlgebra::tabulate(self.size, o.arity, |args| self.apply(op, args)),
                )
            })
            .collect();
        FiniteAlgebra::new(
            format!("{}^{}", self.base.name(), self.exponent),
            self.size,
            ops,
        )
        .expect("componentwise tables are well formed")
    }
}

impl Algebra for PowerAlgebra {
    fn size(&self) -> usize {
        self.size
    }

    fn signature(&self) -> &Signature {
        self.base.signature()
    }

    fn apply(&self, op: usize, args: &[usize]) -> usize {
        let q = self.base.size();
        let mut rest = args.to_vec();
        let mut column = vec![0; args.len()];
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.exponent {
            for (c, r) in column.iter_mut().zip(rest.iter_mut()) {
                *c = *r % q;
                *r /= q;
            }
            out += self.base.apply(op, &column) * place;
            place *= q;
        }
        out
    }

    fn as_power(&self) -> Option<(&Arc<FiniteAlgebra>, usize)> {
        Some((&self.base, self.exponent))
    }
}

/// `A^n` with the size cap enforced.
pub fn power_algebra(
    base: &Arc<FiniteAlgebra>,
    exponent: usize,
    limits: &Limits,
) -> Result<PowerAlgebra> {
    limits.check_domain("power algebra", power_size(base.size(), exponent))?;
    PowerAlgebra::new(base.clone(), exponent)
}

/// A map between carriers, stored as its value table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomMap {
    pub table: Vec<usize>,
}

impl HomMap {
    pub fn new(table: Vec<usize>) -> Self {
        HomMap { table }
    }

    pub fn identity(size: usize) -> Self {
        HomMap {
            table: (0..size).collect(),
        }
    }

    pub fn constant(domain: usize, value: usize) -> Self {
        HomMap {
            table: vec![value; domain],
        }
    }

    /// Projection `A^n -> A` onto coordinate `coord`.
    pub fn projection(q: usize, n: usize, coord: usize) -> Self {
        let size = power_size(q, n) as usize;
        HomMap {
            table: (0..size)
                .map(|i| tuple::decode(i, q, n)[coord])
                .collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &HomMap) -> HomMap {
        HomMap {
            table: inner.table.iter().map(|&x| self.table[x]).collect(),
        }
    }
}

/// An instance where a map fails to commute with an operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: usize,
    pub args: Vec<usize>,
    /// `phi(f(args))`
    pub lhs: usize,
    /// `f(phi(args))`
    pub rhs: usize,
}

fn check_map(dom: &dyn Algebra, cod: &dyn Algebra, phi: &HomMap) -> Result<()> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch(
            "domain and codomain have different signatures".into(),
        ));
    }
    if phi.table.len() != dom.size() {
        return Err(Error::TableLength {
            op: "map".into(),
            expected: dom.size(),
            found: phi.table.len(),
        });
    }
    if let Some(&value) = phi.table.iter().find(|&&v| v >= cod.size()) {
        return Err(Error::OutOfRange {
            value,
            size: cod.size(),
        });
    }
    Ok(())
}

/// First operation instance (ops in signature order, argument tuples in
/// ascending order) where `phi` fails to be a homomorphism.
pub fn find_violation(
    dom: &dyn Algebra,
    cod: &dyn Algebra,
    phi: &HomMap,
) -> Result<Option<Violation>> {
    check_map(dom, cod, phi)?;
    let n = dom.size();
    for (op, o) in dom.signature().ops().iter().enumerate() {
        let mut args = vec![0; o.arity];
        let mut images = vec![0; o.arity];
        loop {
            for (img, &a) in images.iter_mut().zip(&args) {
                *img = phi.table[a];
            }
            let lhs = phi.table[dom.apply(op, &args)];
            let rhs = cod.apply(op, &images);
            if lhs != rhs {
                return Ok(Some(Violation {
                    op,
                    args,
                    lhs,
                    rhs,
                }));
            }
            if !tuple::next_tuple(&mut args, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Exhaustive check of `phi(f(a_1..a_n)) = f(phi a_1, .., phi a_n)` for
/// every operation and argument tuple.
pub fn is_homomorphism(dom: &dyn Algebra, cod: &dyn Algebra, phi: &HomMap) -> Result<bool> {
    Ok(find_violation(dom, cod, phi)?.is_none())
}

/// A failure of the interchange law between an `n`-ary `outer` and an
/// `m`-ary `inner` operation. `rows` is the `m x n` argument matrix `a_ij`:
///
/// `outer(inner(col_1), .., inner(col_n)) = lhs`, while
/// `inner(outer(row_1), .., outer(row_m)) = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyWitness {
    pub outer: String,
    pub inner: String,
    pub rows: Vec<Vec<usize>>,
    pub lhs: usize,
    pub rhs: usize,
}

impl EntropyWitness {
    /// Re-evaluates both sides on `a`; true when they really differ and
    /// match the recorded values.
    pub fn is_valid_for(&self, a: &FiniteAlgebra) -> bool {
        let (Some(f), Some(g)) = (
            a.signature().index_of(&self.outer),
            a.signature().index_of(&self.inner),
        ) else {
            return false;
        };
        let n = a.signature().arity(f);
        let m = a.signature().arity(g);
        if self.rows.len() != m || self.rows.iter().any(|r| r.len() != n) {
            return false;
        }
        let (lhs, rhs) = interchange_sides(a, f, g, &self.rows);
        lhs == self.lhs && rhs == self.rhs && lhs != rhs
    }
}

fn call(name: &str, args: &[String]) -> String {
    if args.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", args.join(","))
    }
}

impl fmt::Display for EntropyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.rows.len();
        let n = self.rows.first().map_or(0, Vec::len);
        let cols: Vec<String> = (0..n)
            .map(|j| {
                let col: Vec<String> = (0..m).map(|i| self.rows[i][j].to_string()).collect();
                call(&self.inner, &col)
            })
            .collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| call(&self.outer, &r.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .collect();
        write!(
            f,
            "{} = {} but {} = {}",
            call(&self.outer, &cols),
            self.lhs,
            call(&self.inner, &rows),
            self.rhs
        )
    }
}

fn interchange_sides(a: &FiniteAlgebra, f: usize, g: usize, rows: &[Vec<usize>]) -> (usize, usize) {
    let m = rows.len();
    let n = a.signature().arity(f);
    let cols: Vec<usize> = (0..n)
        .map(|j| a.apply(g, &(0..m).map(|i| rows[i][j]).collect::<Vec<_>>()))
        .collect();
    let row_vals: Vec<usize> = rows.iter().map(|r| a.apply(f, r)).collect();
    (a.apply(f, &cols), a.apply(g, &row_vals))
}

/// Entropy by definition: each `f^A` must be a homomorphism `A^n -> A`.
fn witness_by_definition(a: &Arc<FiniteAlgebra>) -> Option<EntropyWitness> {
    let q = a.size();
    for (f, o) in a.signature().ops().iter().enumerate() {
        let dom = PowerAlgebra::new(a.clone(), o.arity).expect("arity power is small");
        let phi = HomMap::new(a.table(f).to_vec());
        let Some(v) = find_violation(&dom, a.as_ref(), &phi).expect("signatures agree") else {
            continue;
        };
        return Some(EntropyWitness {
            outer: o.name.clone(),
            inner: a.signature().name(v.op).to_string(),
            rows: v
                .args
                .iter()
                .map(|&x| tuple::decode(x, q, o.arity))
                .collect(),
            lhs: v.lhs,
            rhs: v.rhs,
        });
    }
    None
}

/// Entropy by the interchange law over every pair of operations.
fn witness_by_interchange(a: &FiniteAlgebra) -> Option<EntropyWitness> {
    let q = a.size();
    let sig = a.signature();
    for f in 0..sig.len() {
        let n = sig.arity(f);
        for g in 0..sig.len() {
            let m = sig.arity(g);
            let mut flat = vec![0; m * n];
            loop {
                let rows: Vec<Vec<usize>> =
                    (0..m).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
                let (lhs, rhs) = interchange_sides(a, f, g, &rows);
                if lhs != rhs {
                    return Some(EntropyWitness {
                        outer: sig.name(f).to_string(),
                        inner: sig.name(g).to_string(),
                        rows,
                        lhs,
                        rhs,
                    });
                }
                if !tuple::next_tuple(&mut flat, q) {
                    break;
                }
            }
        }
    }
    None
}

/// `None` if `a` is entropic, otherwise a concrete counterexample.
///
/// Both characterizations are evaluated (every operation is a homomorphism
/// from the componentwise power; every pair of operations interchanges) and
/// must agree.
pub fn entropy_witness(a: &Arc<FiniteAlgebra>) -> Option<EntropyWitness> {
    let by_definition = witness_by_definition(a);
    let by_interchange = witness_by_interchange(a);
    assert_eq!(
        by_definition.is_some(),
        by_interchange.is_some(),
        "entropy characterizations disagree on {}",
        a.name()
    );
    by_definition
}

pub fn is_entropic(a: &Arc<FiniteAlgebra>) -> bool {
    entropy_witness(a).is_none()
}

/// Pointwise operation on `Hom(X, A)`: `x -> f^A(phi_1(x), .., phi_n(x))`.
/// Defined only for entropic `A`, where the result is again a homomorphism.
pub fn hom_algebra_op(
    a: &Arc<FiniteAlgebra>,
    op: &str,
    domain: &dyn Algebra,
    homs: &[HomMap],
) -> Result<HomMap> {
    if let Some(w) = entropy_witness(a) {
        return Err(Error::NotEntropic(w));
    }
    let f = a
        .signature()
        .index_of(op)
        .ok_or_else(|| Error::UnknownOp(op.to_string()))?;
    let arity = a.signature().arity(f);
    if homs.len() != arity {
        return Err(Error::Arity {
            op: op.to_string(),
            expected: arity,
            found: homs.len(),
        });
    }
    for h in homs {
        check_map(domain, a.as_ref(), h)?;
    }
    let mut args = vec![0; arity];
    let table = (0..domain.size())
        .map(|x| {
            for (slot, h) in args.iter_mut().zip(homs) {
                *slot = h.table[x];
            }
            a.apply(f, &args)
        })
        .collect();
    Ok(HomMap { table })
}
