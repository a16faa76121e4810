//! Enumeration and counting of homomorphisms between finite algebras.
//!
//! The generic path is a backtracking search over the value table of the
//! map. Domain elements are branched on in index order with values in
//! ascending order, so solutions come out in lexicographic order. After
//! every assignment, each operation instance whose arguments are all
//! assigned forces the image of its result; a clash prunes the branch.
//!
//! Closed forms cover module-like alphabets (`|End(A)|^s`) and Boolean
//! alphabets (`(k s)^k`); see [`count_homs`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, FiniteAlgebra, HomMap, PowerAlgebra};
use crate::boolean::boolean_view;
use crate::error::{Error, Result};
use crate::limits::{power_size, Limits};
use crate::tuple;

const UNSET: usize = usize::MAX;

/// All homomorphisms between two algebras, in lexicographic table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEnumeration {
    pub domain_size: usize,
    pub codomain_size: usize,
    pub items: Vec<HomMap>,
}

impl HomEnumeration {
    pub fn count(&self) -> usize {
        self.items.len()
    }

    pub fn index_of(&self, phi: &HomMap) -> Option<usize> {
        self.items.binary_search(phi).ok()
    }

    pub fn contains(&self, phi: &HomMap) -> bool {
        self.index_of(phi).is_some()
    }
}

struct HomSearch<'a> {
    dom: &'a dyn Algebra,
    cod: &'a dyn Algebra,
    value: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(dom: &'a dyn Algebra, cod: &'a dyn Algebra) -> Self {
        HomSearch {
            dom,
            cod,
            value: vec![UNSET; dom.size()],
            assigned: Vec::new(),
        }
    }

    fn set(&mut self, x: usize, v: usize, work: &mut Vec<usize>) -> bool {
        if self.value[x] == UNSET {
            self.value[x] = v;
            self.assigned.push(x);
            work.push(x);
            true
        } else {
            self.value[x] == v
        }
    }

    fn undo(&mut self, mark: usize) {
        for x in self.assigned.drain(mark..) {
            self.value[x] = UNSET;
        }
    }

    /// Checks every instance that involves a newly assigned element and
    /// has all arguments assigned.
    fn propagate(&mut self, work: &mut Vec<usize>) -> bool {
        let sig = self.dom.signature().clone();
        while let Some(x) = work.pop() {
            let known = self.assigned.len();
            for (op, o) in sig.ops().iter().enumerate() {
                let n = o.arity;
                if n == 0 {
                    continue;
                }
                let mut args = vec![0; n];
                let mut images = vec![0; n];
                let mut idx = vec![0; n];
                // x first occurs at position p; earlier positions avoid x
                for p in 0..n {
                    idx.iter_mut().for_each(|i| *i = 0);
                    loop {
                        let mut skip = false;
                        for i in 0..n {
                            args[i] = if i == p { x } else { self.assigned[idx[i]] };
                            if i < p && args[i] == x {
                                skip = true;
                            }
                        }
                        if !skip {
                            for (img, &a) in images.iter_mut().zip(&args) {
                                *img = self.value[a];
                            }
                            let r = self.dom.apply(op, &args);
                            let want = self.cod.apply(op, &images);
                            if !self.set(r, want, work) {
                                return false;
                            }
                        }
                        // odometer over positions other than p
                        let mut advanced = false;
                        for i in (0..n).rev() {
                            if i == p {
                                continue;
                            }
                            idx[i] += 1;
                            if idx[i] < known {
                                advanced = true;
                                break;
                            }
                            idx[i] = 0;
                        }
                        if !advanced {
                            break;
                        }
                    }
                }
            }
        }
        true
    }

    fn seed_constants(&mut self) -> bool {
        let mut work = Vec::new();
        for (op, o) in self.dom.signature().ops().iter().enumerate() {
            if o.arity == 0 {
                let d = self.dom.apply(op, &[]);
                let c = self.cod.apply(op, &[]);
                if !self.set(d, c, &mut work) {
                    return false;
                }
            }
        }
        self.propagate(&mut work)
    }

    fn dfs(&mut self, from: usize, visit: &mut dyn FnMut(&[usize])) {
        let Some(x) = (from..self.value.len()).find(|&i| self.value[i] == UNSET) else {
            visit(&self.value);
            return;
        };
        let mut work = Vec::new();
        for v in 0..self.cod.size() {
            let mark = self.assigned.len();
            work.clear();
            if self.set(x, v, &mut work) && self.propagate(&mut work) {
                self.dfs(x + 1, visit);
            }
            self.undo(mark);
        }
    }

    fn run(mut self, visit: &mut dyn FnMut(&[usize])) {
        if self.seed_constants() {
            self.dfs(0, visit);
        }
    }
}

fn check_pair(dom: &dyn Algebra, cod: &dyn Algebra, limits: &Limits) -> Result<()> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch(
            "domain and codomain have different signatures".into(),
        ));
    }
    limits.check_domain("homomorphism search domain", dom.size() as u128)
}

/// Every homomorphism `dom -> cod` by pruned backtracking.
pub fn enumerate_homs(
    dom: &dyn Algebra,
    cod: &dyn Algebra,
    limits: &Limits,
) -> Result<HomEnumeration> {
    check_pair(dom, cod, limits)?;
    let mut items = Vec::new();
    HomSearch::new(dom, cod).run(&mut |t| items.push(HomMap::new(t.to_vec())));
    debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
    Ok(HomEnumeration {
        domain_size: dom.size(),
        codomain_size: cod.size(),
        items,
    })
}

/// Number of homomorphisms found by the generic search, without storing them.
pub fn count_homs_generic(dom: &dyn Algebra, cod: &dyn Algebra, limits: &Limits) -> Result<u128> {
    check_pair(dom, cod, limits)?;
    let mut count = 0u128;
    HomSearch::new(dom, cod).run(&mut |_| count += 1);
    Ok(count)
}

/// How a homomorphism count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// One-element codomain.
    Trivial,
    /// `|End(A)|^s` for a module-like `A`.
    Module,
    /// `(k s)^k` for a Boolean algebra with `k` atoms.
    Boolean,
    /// Backtracking enumeration.
    Generic,
}

/// `|Hom(dom, cod)|`, using a closed form when `dom = cod^s` and `cod` is
/// module-like or Boolean, otherwise counting with the generic search.
pub fn count_homs(dom: &dyn Algebra, cod: &FiniteAlgebra, limits: &Limits) -> Result<(u128, CountMethod)> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch(
            "domain and codomain have different signatures".into(),
        ));
    }
    if cod.size() == 1 {
        return Ok((1, CountMethod::Trivial));
    }
    if let Some((base, s)) = dom.as_power() {
        if base.as_ref() == cod {
            if let Ok(module) = module_structure(base, limits) {
                let count = power_size(module.ring().len(), s);
                return Ok((count, CountMethod::Module));
            }
            if let Ok(view) = boolean_view(base) {
                let k = view.atom_count();
                return Ok((power_size(k * s, k), CountMethod::Boolean));
            }
        }
    }
    Ok((count_homs_generic(dom, cod, limits)?, CountMethod::Generic))
}

/// `End(A)` with its composition table.
#[derive(Debug, Clone)]
pub struct EndomorphismRing {
    items: Vec<HomMap>,
    compose: Vec<usize>,
    identity: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl EndomorphismRing {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[HomMap] {
        &self.items
    }

    pub fn get(&self, i: usize) -> &HomMap {
        &self.items[i]
    }

    /// Index of `items[i]` after `items[j]`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.items.len() + j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, phi: &HomMap) -> Option<usize> {
        self.index.get(&phi.table).copied()
    }
}

pub fn enumerate_endomorphisms(a: &FiniteAlgebra, limits: &Limits) -> Result<EndomorphismRing> {
    let items = enumerate_homs(a, a, limits)?.items;
    let index: HashMap<Vec<usize>, usize> = items
        .iter()
        .enumerate()
        .map(|(i, h)| (h.table.clone(), i))
        .collect();
    let identity = index[&HomMap::identity(a.size()).table];
    let mut compose = Vec::with_capacity(items.len() * items.len());
    for f in &items {
        for g in &items {
            compose.push(index[&f.after(g).table]);
        }
    }
    Ok(EndomorphismRing {
        items,
        compose,
        identity,
        index,
    })
}

/// A verified module-like alphabet: a commutative group under `+` with
/// neutral element `0`, plus unary scalar operations that are additive.
#[derive(Debug, Clone)]
pub struct ModuleAlphabet {
    algebra: Arc<FiniteAlgebra>,
    plus: usize,
    zero: usize,
    ring: EndomorphismRing,
    sum: Vec<usize>,
    zero_end: usize,
}

fn not_module(msg: impl Into<String>) -> Error {
    Error::NotModuleLike(msg.into())
}

/// Recognizes a module-like signature and checks the laws exhaustively.
pub fn module_structure(a: &Arc<FiniteAlgebra>, limits: &Limits) -> Result<ModuleAlphabet> {
    let sig = a.signature();
    let plus = sig
        .index_of("+")
        .filter(|&i| sig.arity(i) == 2)
        .ok_or_else(|| not_module("no binary `+`"))?;
    let zero = a.constant("0").ok_or_else(|| not_module("no nullary `0`"))?;
    for o in sig.ops() {
        if o.name != "+" && o.name != "0" && o.arity != 1 {
            return Err(not_module(format!(
                "operation `{}` has arity {}; only unary scalars are allowed",
                o.name, o.arity
            )));
        }
    }
    let q = a.size();
    let add = |x: usize, y: usize| a.apply(plus, &[x, y]);
    for x in 0..q {
        if add(zero, x) != x {
            return Err(not_module(format!("0 + {x} != {x}")));
        }
        if !(0..q).any(|y| add(x, y) == zero) {
            return Err(not_module(format!("{x} has no additive inverse")));
        }
        for y in 0..q {
            if add(x, y) != add(y, x) {
                return Err(not_module(format!("{x} + {y} != {y} + {x}")));
            }
            for z in 0..q {
                if add(add(x, y), z) != add(x, add(y, z)) {
                    return Err(not_module(format!("+ not associative at ({x},{y},{z})")));
                }
            }
        }
    }
    for (op, o) in sig.ops().iter().enumerate() {
        if o.arity != 1 {
            continue;
        }
        for x in 0..q {
            for y in 0..q {
                if a.apply(op, &[add(x, y)]) != add(a.apply(op, &[x]), a.apply(op, &[y])) {
                    return Err(not_module(format!(
                        "scalar `{}` is not additive at ({x},{y})",
                        o.name
                    )));
                }
            }
        }
    }
    let ring = enumerate_endomorphisms(a, limits)?;
    let n = ring.len();
    let mut sum = Vec::with_capacity(n * n);
    for e in ring.items() {
        for f in ring.items() {
            let table = (0..q).map(|x| add(e.apply(x), f.apply(x))).collect();
            let idx = ring
                .index_of(&HomMap::new(table))
                .ok_or_else(|| Error::Inconsistent("End(A) not closed under +".into()))?;
            sum.push(idx);
        }
    }
    let zero_end = ring
        .index_of(&HomMap::constant(q, zero))
        .ok_or_else(|| Error::Inconsistent("zero map is not an endomorphism".into()))?;
    Ok(ModuleAlphabet {
        algebra: a.clone(),
        plus,
        zero,
        ring,
        sum,
        zero_end,
    })
}

impl ModuleAlphabet {
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &EndomorphismRing {
        &self.ring
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.algebra.apply(self.plus, &[x, y])
    }

    /// Index of the pointwise sum of two endomorphisms.
    pub fn endo_add(&self, e: usize, f: usize) -> usize {
        self.sum[e * self.ring.len() + f]
    }

    pub fn zero_endo(&self) -> usize {
        self.zero_end
    }

    pub fn identity_endo(&self) -> usize {
        self.ring.identity()
    }

    pub fn endo_apply(&self, e: usize, x: usize) -> usize {
        self.ring.get(e).apply(x)
    }

    /// The map `A^s -> A`, `y -> sum_i coeffs[i](y_i)`.
    pub fn linear_map(&self, coeffs: &[usize]) -> HomMap {
        let q = self.algebra.size();
        let size = power_size(q, coeffs.len()) as usize;
        let mut y = vec![0; coeffs.len()];
        let table = (0..size)
            .map(|i| {
                tuple::decode_into(i, q, &mut y);
                coeffs
                    .iter()
                    .zip(&y)
                    .fold(self.zero, |acc, (&e, &v)| self.add(acc, self.endo_apply(e, v)))
            })
            .collect();
        HomMap::new(table)
    }

    /// `Hom(A^s, A)` as all `s`-tuples of endomorphisms, sorted by table.
    pub fn homs(&self, s: usize, limits: &Limits) -> Result<HomEnumeration> {
        let q = self.algebra.size();
        limits.check_domain("module power domain", power_size(q, s))?;
        limits.check_configs(
            "module hom list",
            power_size(self.ring.len(), s).saturating_mul(power_size(q, s)),
        )?;
        let mut coeffs = vec![0; s];
        let mut items = Vec::new();
        loop {
            items.push(self.linear_map(&coeffs));
            if !tuple::next_tuple(&mut coeffs, self.ring.len()) {
                break;
            }
        }
        items.sort();
        Ok(HomEnumeration {
            domain_size: power_size(q, s) as usize,
            codomain_size: q,
            items,
        })
    }
}

/// `Hom(A^s, A)` for a module-like `A` via `Hom(A^s, A) = End(A)^s`.
pub fn module_homs(a: &Arc<FiniteAlgebra>, s: usize, limits: &Limits) -> Result<HomEnumeration> {
    module_structure(a, limits)?.homs(s, limits)
}

/// Convenience: `Hom(A^s, A)` by the generic search.
pub fn power_homs(a: &Arc<FiniteAlgebra>, s: usize, limits: &Limits) -> Result<HomEnumeration> {
    limits.check_domain("homomorphism search domain", power_size(a.size(), s))?;
    let dom = PowerAlgebra::new(a.clone(), s)?;
    enumerate_homs(&dom, a.as_ref(), limits)
}
