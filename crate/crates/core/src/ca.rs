//! Cellular automata `tau(x)(g) = mu(s -> x(g s))` over finite groups and
//! periodic lattice configurations.
//!
//! Local-rule tables use the crate-wide tuple layout: argument tuples in
//! ascending lexicographic order, first memory element most significant.
//! Wolfram numbering of elementary rules lists tuples in descending order;
//! [`eca`] converts once, at construction.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{find_violation, Algebra, FiniteAlgebra, HomMap, PowerAlgebra, Violation};
use crate::builtins;
use crate::error::{Error, Result};
use crate::group::{Configuration, Element, Group, MemorySet};
use crate::limits::{power_size, Limits};
use crate::tuple;

/// A local rule `mu: A^S -> A` as a dense table of length `q^|S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    alphabet: Arc<FiniteAlgebra>,
    memory: MemorySet,
    table: Vec<usize>,
}

impl LocalRule {
    pub fn new(alphabet: Arc<FiniteAlgebra>, memory: MemorySet, table: Vec<usize>) -> Result<Self> {
        let q = alphabet.size();
        let expected = power_size(q, memory.len());
        if table.len() as u128 != expected {
            return Err(Error::TableLength {
                op: "rule".into(),
                expected: expected.min(usize::MAX as u128) as usize,
                found: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= q) {
            return Err(Error::OutOfRange { value, size: q });
        }
        Ok(LocalRule {
            alphabet,
            memory,
            table,
        })
    }

    /// Tabulates `f` over `A^S`, subject to the domain cap.
    pub fn from_fn(
        alphabet: Arc<FiniteAlgebra>,
        memory: MemorySet,
        limits: &Limits,
        f: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self> {
        let q = alphabet.size();
        limits.check_domain("local rule table", power_size(q, memory.len()))?;
        let table = FiniteAlgebra::tabulate(q, memory.len(), f);
        LocalRule::new(alphabet, memory, table)
    }

    pub fn alphabet(&self) -> &Arc<FiniteAlgebra> {
        &self.alphabet
    }

    pub fn memory(&self) -> &MemorySet {
        &self.memory
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn eval(&self, y: &[usize]) -> usize {
        self.table[tuple::encode(y, self.alphabet.size())]
    }

    /// The rule as a map `A^S -> A`.
    pub fn as_map(&self) -> HomMap {
        HomMap::new(self.table.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularAutomaton {
    rule: LocalRule,
}

/// How [`is_shift_equivariant`] chooses configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Every configuration in `A^G` (subject to the configuration cap).
    Exhaustive,
    /// Seeded random configurations; every group element is still tried.
    Random { samples: usize, seed: u64 },
}

impl CellularAutomaton {
    pub fn new(rule: LocalRule) -> Self {
        CellularAutomaton { rule }
    }

    pub fn from_table(alphabet: Arc<FiniteAlgebra>, memory: MemorySet, table: Vec<usize>) -> Result<Self> {
        Ok(CellularAutomaton {
            rule: LocalRule::new(alphabet, memory, table)?,
        })
    }

    pub fn identity(group: Group, alphabet: Arc<FiniteAlgebra>) -> Self {
        let q = alphabet.size();
        let memory = MemorySet::new(group.clone(), vec![group.identity()]).expect("identity");
        CellularAutomaton::from_table(alphabet, memory, (0..q).collect()).expect("identity table")
    }

    pub fn constant(group: Group, alphabet: Arc<FiniteAlgebra>, value: usize) -> Result<Self> {
        CellularAutomaton::from_table(alphabet, MemorySet::empty(group), vec![value])
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn group(&self) -> &Group {
        self.rule.memory.group()
    }

    pub fn alphabet(&self) -> &Arc<FiniteAlgebra> {
        &self.rule.alphabet
    }

    pub fn memory(&self) -> &MemorySet {
        &self.rule.memory
    }

    pub fn table(&self) -> &[usize] {
        &self.rule.table
    }

    /// Same rule table, reinterpreted over another alphabet of equal size.
    pub fn with_alphabet(&self, alphabet: Arc<FiniteAlgebra>) -> Result<Self> {
        if alphabet.size() != self.alphabet().size() {
            return Err(Error::AlphabetMismatch(format!(
                "{} has size {}, rule needs {}",
                alphabet.name(),
                alphabet.size(),
                self.alphabet().size()
            )));
        }
        CellularAutomaton::from_table(alphabet, self.memory().clone(), self.table().to_vec())
    }

    /// `y(g) = mu(x(g s_1), .., x(g s_k))`. Periodic lattice configurations
    /// read memory offsets modulo the period.
    pub fn apply(&self, x: &Configuration) -> Result<Configuration> {
        let group = self.group();
        group.check_configuration(x)?;
        let q = self.alphabet().size();
        x.check_alphabet(q)?;
        let mem = self.memory().elems();
        let cells = x.cells();
        let mut y = vec![0; mem.len()];
        let out = match group {
            Group::Finite(fg) => {
                let s: Vec<usize> = mem
                    .iter()
                    .map(|e| match e {
                        Element::Index(i) => *i,
                        _ => unreachable!("memory lives in the group"),
                    })
                    .collect();
                (0..fg.order())
                    .map(|g| {
                        for (slot, &si) in y.iter_mut().zip(&s) {
                            *slot = cells[fg.mul(g, si)];
                        }
                        self.rule.eval(&y)
                    })
                    .collect()
            }
            Group::Lattice(_) => {
                let mut out = Vec::with_capacity(cells.len());
                for idx in 0..cells.len() {
                    let g = x.position(idx);
                    for (slot, s) in y.iter_mut().zip(mem) {
                        *slot = x.at(&group.mul(&g, s)?)?;
                    }
                    out.push(self.rule.eval(&y));
                }
                out
            }
        };
        Ok(x.with_cells(out))
    }

    /// Iterates `apply`, returning `steps + 1` configurations.
    pub fn evolve(&self, x: &Configuration, steps: usize) -> Result<Vec<Configuration>> {
        let mut rows = vec![x.clone()];
        for _ in 0..steps {
            let next = self.apply(rows.last().expect("non-empty"))?;
            rows.push(next);
        }
        Ok(rows)
    }

    /// The same automaton with memory `bigger ⊇ S`:
    /// `mu'(y) = mu(y|_S)`. Also reorders memory when `bigger` is a
    /// permutation of `S`.
    pub fn extend_memory(&self, bigger: &MemorySet, limits: &Limits) -> Result<Self> {
        if !self.memory().is_subset_of(bigger) {
            return Err(Error::NotSubset(self.memory().to_string(), bigger.to_string()));
        }
        let picks: Vec<usize> = self
            .memory()
            .elems()
            .iter()
            .map(|e| bigger.position(e).expect("subset"))
            .collect();
        let mut sub = vec![0; picks.len()];
        let rule = LocalRule::from_fn(self.alphabet().clone(), bigger.clone(), limits, |y| {
            for (slot, &p) in sub.iter_mut().zip(&picks) {
                *slot = y[p];
            }
            self.rule.eval(&sub)
        });
        rule.map(CellularAutomaton::new)
    }

    /// Indices of memory coordinates the rule actually depends on.
    pub fn essential_coordinates(&self) -> Vec<usize> {
        let q = self.alphabet().size();
        let k = self.memory().len();
        let mut y = vec![0; k];
        (0..k)
            .filter(|&i| {
                (0..self.table().len()).any(|idx| {
                    tuple::decode_into(idx, q, &mut y);
                    let base = self.table()[idx];
                    let orig = y[i];
                    (0..q).any(|a| {
                        y[i] = a;
                        let differs = self.rule.eval(&y) != base;
                        y[i] = orig;
                        differs
                    })
                })
            })
            .collect()
    }

    /// Drops every inessential memory coordinate; remaining coordinates keep
    /// their order.
    pub fn minimal_memory(&self) -> Self {
        let keep = self.essential_coordinates();
        if keep.len() == self.memory().len() {
            return self.clone();
        }
        let q = self.alphabet().size();
        let memory = self.memory().select(&keep);
        let mut full = vec![0; self.memory().len()];
        let table = FiniteAlgebra::tabulate(q, keep.len(), |z| {
            full.iter_mut().for_each(|v| *v = 0);
            for (&i, &v) in keep.iter().zip(z) {
                full[i] = v;
            }
            self.rule.eval(&full)
        });
        CellularAutomaton::from_table(self.alphabet().clone(), memory, table)
            .expect("restricted table is well formed")
    }

    /// Minimal memory listed in canonical order: equal automata have equal
    /// normal forms.
    pub fn normalized(&self) -> Self {
        let min = self.minimal_memory();
        let canonical = min.memory().canonical();
        min.extend_memory(&canonical, &Limits {
            domain: usize::MAX,
            configs: usize::MAX,
        })
        .expect("permutation of a table that already exists")
    }

    /// Whether both define the same global map.
    pub fn equivalent(&self, other: &CellularAutomaton) -> bool {
        self.group() == other.group()
            && self.alphabet() == other.alphabet()
            && self.normalized() == other.normalized()
    }

    /// `self` after `inner`. The memory is `S_self · S_inner` (canonical
    /// order) and the table is evaluated directly from both rules.
    pub fn compose(&self, inner: &CellularAutomaton, limits: &Limits) -> Result<Self> {
        self.same_space(inner)?;
        let product = self.memory().product(inner.memory())?;
        let group = self.group();
        let mut positions = Vec::with_capacity(self.memory().len());
        for s1 in self.memory().elems() {
            let row = inner
                .memory()
                .elems()
                .iter()
                .map(|s2| Ok(product.position(&group.mul(s1, s2)?).expect("in product")))
                .collect::<Result<Vec<usize>>>()?;
            positions.push(row);
        }
        let mut outer_args = vec![0; self.memory().len()];
        let mut inner_args = vec![0; inner.memory().len()];
        let rule = LocalRule::from_fn(self.alphabet().clone(), product, limits, |y| {
            for (slot, row) in outer_args.iter_mut().zip(&positions) {
                for (a, &p) in inner_args.iter_mut().zip(row) {
                    *a = y[p];
                }
                *slot = inner.rule.eval(&inner_args);
            }
            self.rule.eval(&outer_args)
        })?;
        Ok(CellularAutomaton::new(rule))
    }

    fn same_space(&self, other: &CellularAutomaton) -> Result<()> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group(),
                other.group()
            )));
        }
        if self.alphabet() != other.alphabet() {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet().name(),
                other.alphabet().name()
            )));
        }
        Ok(())
    }

    /// First operation instance where the local rule fails to be a
    /// homomorphism `A^S -> A`.
    pub fn endomorphism_violation(&self) -> Option<Violation> {
        let dom = PowerAlgebra::new(self.alphabet().clone(), self.memory().len())
            .expect("table already materialized");
        find_violation(&dom, self.alphabet().as_ref(), &self.rule.as_map())
            .expect("rule table matches the power domain")
    }

    /// Whether the automaton is an endomorphism of `A^G`, decided on the
    /// local rule.
    pub fn is_endomorphic(&self) -> bool {
        self.endomorphism_violation().is_none()
    }

    /// Wolfram number, when this is a binary automaton over `Z` whose memory
    /// fits in `{-1, 0, 1}`.
    pub fn wolfram_number(&self) -> Option<u8> {
        if self.group() != &Group::integers() || self.alphabet().size() != 2 {
            return None;
        }
        let full = self
            .extend_memory(&MemorySet::interval(-1, 1), &Limits::default())
            .ok()?;
        Some(
            full.table()
                .iter()
                .enumerate()
                .fold(0u8, |acc, (t, &v)| acc | ((v as u8) << t)),
        )
    }

    /// Parses the CA file format. Group and alphabet names are resolved
    /// by the caller.
    ///
    /// ```text
    /// ca rule90
    /// group Z
    /// alphabet Z2
    /// memory -1 0 1
    /// rule 0 1 0 1 1 0 1 0
    /// ```
    pub fn parse(
        text: &str,
        resolve_group: impl Fn(&str) -> Result<Group>,
        resolve_alphabet: impl Fn(&str) -> Result<Arc<FiniteAlgebra>>,
    ) -> Result<(String, Self)> {
        let mut fields: [Option<(usize, String)>; 5] = Default::default();
        const KEYS: [&str; 5] = ["ca", "group", "alphabet", "memory", "rule"];
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::parse(i + 1, format!("unknown key `{key}`")))?;
            if fields[slot].is_some() {
                return Err(Error::parse(i + 1, format!("duplicate `{key}`")));
            }
            fields[slot] = Some((i + 1, rest.trim().to_string()));
        }
        let take = |k: usize| {
            fields[k]
                .clone()
                .ok_or_else(|| Error::parse(0, format!("missing `{}` line", KEYS[k])))
        };
        let (_, name) = take(0)?;
        let (_, group_name) = take(1)?;
        let (_, alphabet_name) = take(2)?;
        let (mln, memory) = take(3)?;
        let (rln, rule) = take(4)?;
        let group = resolve_group(&group_name)?;
        let alphabet = resolve_alphabet(&alphabet_name)?;
        let memory = MemorySet::parse(group, &memory).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(mln, msg),
            other => other,
        })?;
        let table = rule
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(rln, format!("bad rule entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((name, CellularAutomaton::from_table(alphabet, memory, table)?))
    }

    pub fn to_text(&self, name: &str) -> String {
        let memory: Vec<String> = self.memory().elems().iter().map(|e| e.to_string()).collect();
        let rule: Vec<String> = self.table().iter().map(|v| v.to_string()).collect();
        format!(
            "ca {name}\ngroup {}\nalphabet {}\nmemory {}\nrule {}\n",
            self.group().name(),
            self.alphabet().name(),
            memory.join(" "),
            rule.join(" ")
        )
    }
}

/// `mu(y) = f^A(mu_1(y|_{S_1}), .., mu_n(y|_{S_n}))` on the union of the
/// memory sets (first-appearance order). With no parts, `f` must be a
/// constant and the result has empty memory.
pub fn pointwise_combine(
    group: &Group,
    alphabet: &Arc<FiniteAlgebra>,
    op: &str,
    parts: &[&CellularAutomaton],
    limits: &Limits,
) -> Result<CellularAutomaton> {
    let f = alphabet
        .signature()
        .index_of(op)
        .ok_or_else(|| Error::UnknownOp(op.to_string()))?;
    let arity = alphabet.signature().arity(f);
    if parts.len() != arity {
        return Err(Error::Arity {
            op: op.to_string(),
            expected: arity,
            found: parts.len(),
        });
    }
    let mut memory = MemorySet::empty(group.clone());
    for p in parts {
        if p.group() != group {
            return Err(Error::GroupMismatch(format!("{} vs {}", p.group(), group)));
        }
        if p.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                p.alphabet().name(),
                alphabet.name()
            )));
        }
        memory = memory.union(p.memory())?;
    }
    let picks: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            p.memory()
                .elems()
                .iter()
                .map(|e| memory.position(e).expect("in union"))
                .collect()
        })
        .collect();
    let mut values = vec![0; arity];
    let mut scratch: Vec<Vec<usize>> = picks.iter().map(|p| vec![0; p.len()]).collect();
    let rule = LocalRule::from_fn(alphabet.clone(), memory, limits, |y| {
        for (i, part) in parts.iter().enumerate() {
            for (slot, &p) in scratch[i].iter_mut().zip(&picks[i]) {
                *slot = y[p];
            }
            values[i] = part.rule.eval(&scratch[i]);
        }
        alphabet.table(f)[tuple::encode(&values, alphabet.size())]
    })?;
    Ok(CellularAutomaton::new(rule))
}

/// Elementary rule `M` over `Z` with memory `{-1, 0, 1}` and a bare
/// two-element alphabet.
pub fn eca(number: u32) -> Result<CellularAutomaton> {
    eca_over(number, Arc::new(builtins::set(2)))
}

/// Elementary rule `M` over a given two-element alphabet. Wolfram lists
/// `mu` on `111, 110, .., 000` by the bits of `M` from the top, so the
/// ascending table entry at tuple `t` is bit `t` of `M`.
pub fn eca_over(number: u32, alphabet: Arc<FiniteAlgebra>) -> Result<CellularAutomaton> {
    if number > 255 {
        return Err(Error::RuleOutOfRange(number));
    }
    if alphabet.size() != 2 {
        return Err(Error::AlphabetMismatch(format!(
            "elementary rules need a 2-element alphabet, {} has {}",
            alphabet.name(),
            alphabet.size()
        )));
    }
    let table = (0..8).map(|t| ((number >> t) & 1) as usize).collect();
    CellularAutomaton::from_table(alphabet, MemorySet::interval(-1, 1), table)
}

fn all_or_sampled(
    m: usize,
    q: usize,
    sampling: Sampling,
    limits: &Limits,
) -> Result<Vec<Configuration>> {
    match sampling {
        Sampling::Exhaustive => {
            limits.check_configs("configuration space", power_size(q, m))?;
            Ok(Configuration::all_finite(m, q).collect())
        }
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..samples)
                .map(|_| Configuration::Finite((0..m).map(|_| rng.random_range(0..q)).collect()))
                .collect())
        }
    }
}

fn finite_order(group: &Group) -> Result<usize> {
    group
        .order()
        .ok_or_else(|| Error::GroupMismatch(format!("{group} is not finite")))
}

/// Whether `map` commutes with every shift: `map(g.x) = g.map(x)` for all
/// `g` and all chosen `x`.
pub fn is_shift_equivariant(
    group: &Group,
    q: usize,
    map: &dyn Fn(&Configuration) -> Configuration,
    sampling: Sampling,
    limits: &Limits,
) -> Result<bool> {
    let m = finite_order(group)?;
    let elems = group.elements().expect("finite");
    for x in all_or_sampled(m, q, sampling, limits)? {
        let image = map(&x);
        for g in &elems {
            if map(&group.shift(g, &x)?) != group.shift(g, &image)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Recovers `mu(y) = tau(ȳ)(e)` from a global map on `A^G` (finite `G`),
/// extending `y` by `0` off `S`, then checks that the recovered rule
/// regenerates `tau` on every configuration.
pub fn recover_local(
    alphabet: &Arc<FiniteAlgebra>,
    memory: &MemorySet,
    map: &dyn Fn(&Configuration) -> Configuration,
    limits: &Limits,
) -> Result<LocalRule> {
    let group = memory.group();
    let m = finite_order(group)?;
    let q = alphabet.size();
    limits.check_configs("configuration space", power_size(q, m))?;
    let slots: Vec<usize> = memory
        .elems()
        .iter()
        .map(|e| match e {
            Element::Index(i) => *i,
            _ => unreachable!("finite group"),
        })
        .collect();
    let identity = match group.identity() {
        Element::Index(i) => i,
        _ => unreachable!(),
    };
    let rule = LocalRule::from_fn(alphabet.clone(), memory.clone(), limits, |y| {
        let mut cells = vec![0; m];
        for (&s, &v) in slots.iter().zip(y) {
            cells[s] = v;
        }
        map(&Configuration::Finite(cells)).cells()[identity]
    })?;
    let ca = CellularAutomaton::new(rule);
    for x in Configuration::all_finite(m, q) {
        if ca.apply(&x)? != map(&x) {
            return Err(Error::NotCellularAutomaton(format!(
                "{} disagrees at configuration {:?}",
                memory,
                x.cells()
            )));
        }
    }
    Ok(ca.rule)
}

/// Componentwise operation of the algebra `A^G`: `f(x_1, .., x_n)(g) =
/// f^A(x_1(g), .., x_n(g))`. `like` fixes the shape, which matters only
/// for constants.
pub fn componentwise(
    alphabet: &FiniteAlgebra,
    op: usize,
    args: &[&Configuration],
    like: &Configuration,
) -> Configuration {
    let mut vals = vec![0; args.len()];
    let cells = (0..like.len())
        .map(|i| {
            for (slot, x) in vals.iter_mut().zip(args) {
                *slot = x.cells()[i];
            }
            alphabet.apply(op, &vals)
        })
        .collect();
    like.with_cells(cells)
}

/// Checks `tau(f(x_1, .., x_n)) = f(tau x_1, .., tau x_n)` directly on
/// `A^G` for every operation and every tuple of configurations (finite
/// `G`). Returns the first failing operation name and arguments.
pub fn global_endomorphism_violation(
    ca: &CellularAutomaton,
    limits: &Limits,
) -> Result<Option<(String, Vec<Configuration>)>> {
    let m = finite_order(ca.group())?;
    let a = ca.alphabet();
    let q = a.size();
    let configs: Vec<Configuration> = {
        limits.check_configs("configuration space", power_size(q, m))?;
        Configuration::all_finite(m, q).collect()
    };
    let images = configs
        .iter()
        .map(|x| ca.apply(x))
        .collect::<Result<Vec<_>>>()?;
    let like = Configuration::Finite(vec![0; m]);
    for (f, o) in a.signature().ops().iter().enumerate() {
        limits.check_configs("operation instances", power_size(configs.len(), o.arity))?;
        let mut pick = vec![0; o.arity];
        loop {
            let args: Vec<&Configuration> = pick.iter().map(|&i| &configs[i]).collect();
            let imgs: Vec<&Configuration> = pick.iter().map(|&i| &images[i]).collect();
            let lhs = ca.apply(&componentwise(a, f, &args, &like))?;
            let rhs = componentwise(a, f, &imgs, &like);
            if lhs != rhs {
                return Ok(Some((o.name.clone(), args.into_iter().cloned().collect())));
            }
            if !tuple::next_tuple(&mut pick, configs.len()) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn global_check_on_z4() {
        let z4: Group = FiniteGroup::cyclic(4).into();
        let a = z2();
        let mem = MemorySet::indices(z4, &[0, 1]).unwrap();
        let xor = CellularAutomaton::from_table(a.clone(), mem.clone(), vec![0, 1, 1, 0]).unwrap();
        assert!(global_endomorphism_violation(&xor, &limits()).unwrap().is_none());
        let and = CellularAutomaton::from_table(a, mem, vec![0, 0, 0, 1]).unwrap();
        let (op, _) = global_endomorphism_violation(&and, &limits()).unwrap().unwrap();
        assert_eq!(op, "+");
    }

    fn z2() -> Arc<FiniteAlgebra> {
        Arc::new(builtins::cyclic_group(2))
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn wolfram_decoding() {
        let r110 = eca(110).unwrap();
        // descending 111..000 -> 0 1 1 0 1 1 1 0
        let descending: Vec<usize> = (0..8).rev().map(|t| r110.table()[t]).collect();
        assert_eq!(descending, vec![0, 1, 1, 0, 1, 1, 1, 0]);
        assert!(eca(0).unwrap().table().iter().all(|&v| v == 0));
        let r204 = eca(204).unwrap();
        for t in 0..8 {
            assert_eq!(r204.table()[t], (t >> 1) & 1, "x0 is the middle digit");
        }
        assert!(matches!(eca(256), Err(Error::RuleOutOfRange(256))));
        for m in [0u32, 30, 90, 110, 255] {
            assert_eq!(eca(m).unwrap().wolfram_number(), Some(m as u8));
        }
    }

    #[test]
    fn rule_110_on_period_four() {
        // neighbourhoods (x3 x0 x1), (x0 x1 x2), (x1 x2 x3), (x2 x3 x0)
        // = 100, 000, 001, 010 -> 0, 0, 1, 1
        let x = Configuration::periodic(vec![0, 0, 0, 1]).unwrap();
        let y = eca(110).unwrap().apply(&x).unwrap();
        assert_eq!(y.cells(), &[0, 0, 1, 1]);
    }

    #[test]
    fn rule_204_is_identity_and_zero_rule_clears() {
        let x = Configuration::periodic(vec![1, 0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(eca(204).unwrap().apply(&x).unwrap(), x);
        let zero = eca(0).unwrap().apply(&x).unwrap();
        assert!(zero.cells().iter().all(|&v| v == 0));
        let x2 = Configuration::periodic_2d(2, 2, vec![1, 0, 0, 1]).unwrap();
        assert!(eca(204).unwrap().apply(&x2).is_err());
    }

    #[test]
    fn lattice_plane_application() {
        // von Neumann XOR on a 3x3 torus
        let alphabet = z2();
        let memory = MemorySet::parse(Group::integer_plane(), "-1,0 0,-1 0,1 1,0").unwrap();
        let ca = CellularAutomaton::new(
            LocalRule::from_fn(alphabet, memory, &limits(), |y| y.iter().sum::<usize>() % 2).unwrap(),
        );
        let x = Configuration::periodic_2d(3, 3, vec![0, 0, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        let y = ca.apply(&x).unwrap();
        assert_eq!(y.cells(), &[0, 1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn small_periods_merge_memory_positions() {
        // period 1: x(-1) = x(0) = x(1), so rule 150 (XOR of three) acts as
        // the identity and rule 90 (XOR of outer two) as zero
        let x = Configuration::periodic(vec![1]).unwrap();
        assert_eq!(eca(150).unwrap().apply(&x).unwrap().cells(), &[1]);
        assert_eq!(eca(90).unwrap().apply(&x).unwrap().cells(), &[0]);
    }

    #[test]
    fn extend_and_minimize() {
        let id = CellularAutomaton::identity(Group::integers(), Arc::new(builtins::set(2)));
        let wide = id.extend_memory(&MemorySet::interval(-1, 1), &limits()).unwrap();
        assert_eq!(wide.wolfram_number(), Some(204));
        assert_eq!(wide.table(), eca(204).unwrap().table());
        assert_eq!(wide.minimal_memory(), id);
        assert_eq!(id.extend_memory(id.memory(), &limits()).unwrap(), id);
        assert!(matches!(
            wide.extend_memory(id.memory(), &limits()),
            Err(Error::NotSubset(..))
        ));

        let r110 = eca(110).unwrap();
        assert_eq!(r110.minimal_memory(), r110);
        let r255 = eca(255).unwrap().minimal_memory();
        assert!(r255.memory().is_empty());
        assert_eq!(r255.table(), &[1]);
        // rule 240 is x_{-1}
        assert_eq!(eca(240).unwrap().minimal_memory().memory().elems(), &[Element::Z(-1)]);
    }

    #[test]
    fn compose_shifts() {
        let z = Group::integers();
        let a = Arc::new(builtins::set(2));
        let shift = |k: i64| {
            CellularAutomaton::from_table(
                a.clone(),
                MemorySet::new(z.clone(), vec![Element::Z(k)]).unwrap(),
                vec![0, 1],
            )
            .unwrap()
        };
        let two = shift(1).compose(&shift(1), &limits()).unwrap();
        assert_eq!(two, shift(2));
        let r110 = eca(110).unwrap();
        let id = eca(204).unwrap();
        assert!(id.compose(&r110, &limits()).unwrap().equivalent(&r110));
        assert!(r110.compose(&id, &limits()).unwrap().equivalent(&r110));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = eca(rng.random_range(0..256)).unwrap();
            let b = eca(rng.random_range(0..256)).unwrap();
            let ab = a.compose(&b, &limits()).unwrap();
            assert_eq!(ab.memory(), &MemorySet::interval(-2, 2));
            for x in Configuration::all_periodic(6, 2) {
                assert_eq!(ab.apply(&x).unwrap(), a.apply(&b.apply(&x).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn pointwise_combination() {
        let a = z2();
        let r240 = eca_over(240, a.clone()).unwrap();
        let r170 = eca_over(170, a.clone()).unwrap();
        let xor = pointwise_combine(&Group::integers(), &a, "+", &[&r240, &r170], &limits()).unwrap();
        assert_eq!(xor.wolfram_number(), Some(90));
        assert_eq!(xor.minimal_memory().memory().len(), 2);

        let zero = pointwise_combine(&Group::integers(), &a, "0", &[], &limits()).unwrap();
        assert!(zero.memory().is_empty());
        assert_eq!(zero.wolfram_number(), Some(0));

        assert!(matches!(
            pointwise_combine(&Group::integers(), &a, "+", &[&r240], &limits()),
            Err(Error::Arity { .. })
        ));

        let v = Arc::new(builtins::vector_space(2, 1));
        let r110 = eca_over(110, v.clone()).unwrap();
        let same = pointwise_combine(&Group::integers(), &v, "scale1", &[&r110], &limits()).unwrap();
        assert_eq!(same, r110);

        // against pointwise application of the parts
        let x = Configuration::periodic(vec![1, 1, 0, 1, 0, 0, 0]).unwrap();
        let lhs = xor.apply(&x).unwrap();
        let (p, q) = (r240.apply(&x).unwrap(), r170.apply(&x).unwrap());
        let rhs: Vec<usize> = p.cells().iter().zip(q.cells()).map(|(u, v)| u ^ v).collect();
        assert_eq!(lhs.cells(), rhs.as_slice());
    }

    #[test]
    fn endomorphic_rules() {
        let a = z2();
        let sum3 = CellularAutomaton::new(
            LocalRule::from_fn(a.clone(), MemorySet::interval(-1, 1), &limits(), |y| {
                y.iter().sum::<usize>() % 2
            })
            .unwrap(),
        );
        assert!(sum3.is_endomorphic());
        assert_eq!(sum3.wolfram_number(), Some(150));
        assert!(!eca_over(110, a.clone()).unwrap().is_endomorphic());
        assert!(CellularAutomaton::identity(Group::integers(), a).is_endomorphic());
    }

    #[test]
    fn equivariance() {
        let z4: Group = FiniteGroup::cyclic(4).into();
        let a = z2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mem = MemorySet::indices(z4.clone(), &[0, 1]).unwrap();
            let table = (0..4).map(|_| rng.random_range(0..2)).collect();
            let ca = CellularAutomaton::from_table(a.clone(), mem, table).unwrap();
            let map = |x: &Configuration| ca.apply(x).unwrap();
            assert!(is_shift_equivariant(&z4, 2, &map, Sampling::Exhaustive, &limits()).unwrap());
        }
        let flip_at_e = |x: &Configuration| {
            let mut c = x.cells().to_vec();
            c[0] ^= 1;
            Configuration::Finite(c)
        };
        assert!(!is_shift_equivariant(&z4, 2, &flip_at_e, Sampling::Exhaustive, &limits()).unwrap());
        assert!(is_shift_equivariant(&Group::integers(), 2, &flip_at_e, Sampling::Exhaustive, &limits()).is_err());
    }

    #[test]
    fn recovering_local_rules() {
        let z4: Group = FiniteGroup::cyclic(4).into();
        let a = z2();
        let e = MemorySet::indices(z4.clone(), &[0]).unwrap();
        let rule = recover_local(&a, &e, &|x| x.clone(), &limits()).unwrap();
        assert_eq!(rule.table(), &[0, 1]);

        // x -> (g -> x(g + 1)): memory {1}, projection rule
        let g0 = MemorySet::indices(z4.clone(), &[1]).unwrap();
        let right = |x: &Configuration| {
            let c = x.cells();
            Configuration::Finite((0..4).map(|g| c[(g + 1) % 4]).collect())
        };
        let rule = recover_local(&a, &g0, &right, &limits()).unwrap();
        assert_eq!(rule.table(), &[0, 1]);
        // with the wrong memory set the regeneration check fails
        assert!(matches!(
            recover_local(&a, &e, &right, &limits()),
            Err(Error::NotCellularAutomaton(_))
        ));

        let z2g: Group = FiniteGroup::cyclic(2).into();
        let full = MemorySet::indices(z2g, &[0, 1]).unwrap();
        let flip_at_e = |x: &Configuration| {
            let mut c = x.cells().to_vec();
            c[0] ^= 1;
            Configuration::Finite(c)
        };
        let err = recover_local(&a, &full, &flip_at_e, &limits()).unwrap_err();
        assert!(err.to_string().contains("not a CA with memory S"), "{err}");
    }

    #[test]
    fn ca_file_round_trip() {
        let text = "ca rule90\ngroup Z\nalphabet Z2\nmemory -1 0 1\nrule 0 1 0 1 1 0 1 0\n";
        let resolve_g = |n: &str| builtins::group(n).ok_or_else(|| Error::parse(0, "group"));
        let resolve_a = |n: &str| {
            builtins::alphabet(n)
                .map(Arc::new)
                .ok_or_else(|| Error::parse(0, "alphabet"))
        };
        let (name, ca) = CellularAutomaton::parse(text, resolve_g, resolve_a).unwrap();
        assert_eq!(name, "rule90");
        assert_eq!(ca.wolfram_number(), Some(90));
        assert_eq!(ca.to_text("rule90"), text);

        let bad = "ca x\ngroup Z\nalphabet Z2\nmemory -1 0 1\nrule 0 1\n";
        assert!(matches!(
            CellularAutomaton::parse(bad, resolve_g, resolve_a),
            Err(Error::TableLength { .. })
        ));
        let empty = "ca c\ngroup C4\nalphabet Z3\nmemory\nrule 2\n";
        let (_, c) = CellularAutomaton::parse(empty, resolve_g, resolve_a).unwrap();
        assert_eq!(c.apply(&Configuration::Finite(vec![0; 4])).unwrap().cells(), &[2, 2, 2, 2]);
    }
}
