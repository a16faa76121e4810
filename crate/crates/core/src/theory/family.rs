use std::fmt;
use std::sync::Arc;

use crate::algebra::{entropy_witness, hom_algebra_op, Algebra, FiniteAlgebra, HomMap, PowerAlgebra};
use crate::boolean::boolean_view;
use crate::ca::{pointwise_combine, CellularAutomaton};
use crate::error::{Error, Result};
use crate::group::{Group, MemorySet};
use crate::hom::{count_homs_generic, module_structure, power_homs, ModuleAlphabet};
use crate::limits::{power_size, Limits};
use crate::report::Report;

use super::tuples;

/// Every endomorphic automaton with memory `S`, one per element of
/// `Hom(A^S, A)`, sorted by rule table.
#[derive(Debug, Clone)]
pub struct EndoCaFamily {
    memory: MemorySet,
    alphabet: Arc<FiniteAlgebra>,
    items: Vec<CellularAutomaton>,
}

impl EndoCaFamily {
    pub fn group(&self) -> &Group {
        self.memory.group()
    }

    pub fn memory(&self) -> &MemorySet {
        &self.memory
    }

    pub fn alphabet(&self) -> &Arc<FiniteAlgebra> {
        &self.alphabet
    }

    pub fn items(&self) -> &[CellularAutomaton] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Position of an automaton with exactly this family's memory.
    pub fn index_of(&self, ca: &CellularAutomaton) -> Option<usize> {
        if ca.memory() != &self.memory || ca.alphabet() != &self.alphabet {
            return None;
        }
        self.items
            .binary_search_by(|c| c.table().cmp(ca.table()))
            .ok()
    }

    /// Like [`index_of`](Self::index_of) after re-expressing `ca` over
    /// this family's memory.
    pub fn locate(&self, ca: &CellularAutomaton, limits: &Limits) -> Result<Option<usize>> {
        let aligned = ca.minimal_memory().extend_memory(&self.memory, limits)?;
        Ok(self.index_of(&aligned))
    }
}

/// `EndCA(G, S; A)` from the generic homomorphism search on `A^S -> A`.
pub fn enumerate_endoca(
    memory: &MemorySet,
    alphabet: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<EndoCaFamily> {
    let homs = power_homs(alphabet, memory.len(), limits)?;
    let items = homs
        .items
        .into_iter()
        .map(|h| CellularAutomaton::from_table(alphabet.clone(), memory.clone(), h.table))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoCaFamily {
        memory: memory.clone(),
        alphabet: alphabet.clone(),
        items,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndoCountMethod {
    /// One-element alphabet.
    Trivial,
    /// `n^s` for a cyclic group `Z_n` (integer scalars only).
    Cyclic,
    /// `|F|^{n^2 s}` for `F_p^n` (integer scalars only).
    VectorSpace,
    /// `(k s)^k` for a Boolean algebra with `k` atoms.
    Boolean,
    /// `|End(A)|^s` for a module-like alphabet.
    Module,
    /// Generic homomorphism search.
    Generic,
}

impl fmt::Display for EndoCountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EndoCountMethod::Trivial => "trivial",
            EndoCountMethod::Cyclic => "cyclic",
            EndoCountMethod::VectorSpace => "vector-space",
            EndoCountMethod::Boolean => "boolean",
            EndoCountMethod::Module => "module",
            EndoCountMethod::Generic => "generic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoCount {
    pub count: u128,
    pub method: EndoCountMethod,
    /// Every method that ran, in preference order, including `method`.
    pub methods: Vec<(EndoCountMethod, u128)>,
}

fn multiple(m: &ModuleAlphabet, c: usize, x: usize) -> usize {
    (0..c).fold(m.zero(), |acc, _| m.add(acc, x))
}

fn additive_order(m: &ModuleAlphabet, x: usize) -> usize {
    let mut acc = x;
    let mut k = 1;
    while acc != m.zero() {
        acc = m.add(acc, x);
        k += 1;
    }
    k
}

/// Whether every unary operation is `x -> c x` for an integer `c`.
fn integer_scalars(m: &ModuleAlphabet) -> bool {
    let a = m.algebra();
    let q = a.size();
    a.signature()
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, o)| o.arity == 1)
        .all(|(op, _)| (0..q).any(|c| (0..q).all(|x| a.apply(op, &[x]) == multiple(m, c, x))))
}

/// `q = p^n` with `p` prime.
fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// `|EndCA(G, S; A)|` for `|S| = s`. Every applicable closed form is
/// evaluated, plus the generic search when it fits the caps; all must
/// agree.
pub fn count_endoca(s: usize, alphabet: &Arc<FiniteAlgebra>, limits: &Limits) -> Result<EndoCount> {
    let q = alphabet.size();
    let mut methods = Vec::new();
    if q == 1 {
        methods.push((EndoCountMethod::Trivial, 1));
    }
    if let Ok(module) = module_structure(alphabet, limits) {
        if integer_scalars(&module) {
            if (0..q).any(|x| additive_order(&module, x) == q) {
                methods.push((EndoCountMethod::Cyclic, power_size(q, s)));
            }
            if let Some((p, n)) = prime_power(q) {
                if (0..q).all(|x| x == module.zero() || additive_order(&module, x) == p) {
                    methods.push((EndoCountMethod::VectorSpace, power_size(p, n * n * s)));
                }
            }
        }
        if q > 1 {
            methods.push((EndoCountMethod::Module, power_size(module.ring().len(), s)));
        }
    }
    if let Ok(view) = boolean_view(alphabet) {
        let k = view.atom_count();
        methods.push((EndoCountMethod::Boolean, power_size(k * s, k)));
    }
    let bounded = methods
        .first()
        .is_none_or(|&(_, c)| c <= limits.configs as u128);
    if bounded && power_size(q, s) <= limits.domain as u128 {
        let dom = PowerAlgebra::new(alphabet.clone(), s)?;
        methods.push((
            EndoCountMethod::Generic,
            count_homs_generic(&dom, alphabet.as_ref(), limits)?,
        ));
    }
    let &(method, count) = methods.first().ok_or(Error::CapExceeded {
        what: "homomorphism search domain",
        needed: power_size(q, s),
        cap: limits.domain,
    })?;
    if let Some(&(other, c)) = methods.iter().find(|(_, c)| *c != count) {
        return Err(Error::Inconsistent(format!(
            "{method} count {count} disagrees with {other} count {c}"
        )));
    }
    Ok(EndoCount {
        count,
        method,
        methods,
    })
}

fn refuse_non_entropic(alphabet: &Arc<FiniteAlgebra>) -> Result<()> {
    match entropy_witness(alphabet) {
        Some(w) => Err(Error::NotEntropic(w)),
        None => Ok(()),
    }
}

const SAMPLES: usize = 128;

/// `Phi(tau) = mu` is a bijection `EndCA(G, S; A) -> Hom(A^S, A)` that
/// carries pointwise operations on automata to the pointwise operations
/// of `Hom(A^S, A)`. Refuses non-entropic alphabets.
pub fn verify_phi(memory: &MemorySet, alphabet: &Arc<FiniteAlgebra>, limits: &Limits) -> Result<Report> {
    refuse_non_entropic(alphabet)?;
    let label = format!("A={} S={}", alphabet.name(), memory);
    let family = enumerate_endoca(memory, alphabet, limits)?;
    let homs = power_homs(alphabet, memory.len(), limits)?;
    let mut report = Report::new();

    let images: Vec<&[usize]> = family.items().iter().map(|c| c.table()).collect();
    let targets: Vec<&[usize]> = homs.items.iter().map(|h| h.table.as_slice()).collect();
    let mut distinct = images.clone();
    distinct.dedup();
    let bijective = images == targets && distinct.len() == images.len();
    report.push(
        "phi-bijection",
        bijective,
        format!("{label} |EndCA|={} |Hom|={}", family.len(), homs.count()),
    );

    let dom = PowerAlgebra::new(alphabet.clone(), memory.len())?;
    for o in alphabet.signature().ops() {
        let (picks, exhaustive) = tuples(family.len(), o.arity, limits.configs, SAMPLES, 0x9e37 + o.arity as u64);
        let mut mismatches = 0usize;
        for pick in &picks {
            let parts: Vec<&CellularAutomaton> = pick.iter().map(|&i| &family.items()[i]).collect();
            let combined = pointwise_combine(memory.group(), alphabet, &o.name, &parts, limits)?
                .extend_memory(memory, limits)?;
            let mus: Vec<HomMap> = parts.iter().map(|c| c.rule().as_map()).collect();
            let expected = hom_algebra_op(alphabet, &o.name, &dom, &mus)?;
            if combined.table() != expected.table.as_slice() || family.index_of(&combined).is_none() {
                mismatches += 1;
            }
        }
        report.push(
            format!("phi-preserves[{}]", o.name),
            mismatches == 0,
            format!(
                "{label} {} {} tuples, {mismatches} mismatches",
                if exhaustive { "all" } else { "sampled" },
                picks.len()
            ),
        );
    }
    Ok(report)
}

/// The memory-extension maps `EndCA(G, S_i; A) -> EndCA(G, S_j; A)` along
/// an increasing chain are injective, compose, preserve pointwise
/// operations and are undone by `minimal_memory`.
pub fn verify_direct_limit(
    chain: &[MemorySet],
    alphabet: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<Report> {
    refuse_non_entropic(alphabet)?;
    for w in chain.windows(2) {
        if !w[0].is_subset_of(&w[1]) {
            return Err(Error::NotSubset(w[0].to_string(), w[1].to_string()));
        }
    }
    let families = chain
        .iter()
        .map(|s| enumerate_endoca(s, alphabet, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new();
    let sizes: Vec<String> = families.iter().map(|f| f.len().to_string()).collect();
    let chain_text: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
    report.push(
        "direct-limit-sizes",
        true,
        format!("A={} chain {} sizes {}", alphabet.name(), chain_text.join(" < "), sizes.join(",")),
    );

    // embed[i][j][a] = index in family j of item a of family i
    let n = families.len();
    let mut embed = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut map = Vec::with_capacity(families[i].len());
            let mut round_trip = true;
            for item in families[i].items() {
                let image = item.extend_memory(&chain[j], limits)?;
                round_trip &= image.minimal_memory() == item.minimal_memory();
                map.push(families[j].index_of(&image));
            }
            let landed: Vec<usize> = map.iter().flatten().copied().collect();
            let mut unique = landed.clone();
            unique.sort();
            unique.dedup();
            let injective = landed.len() == map.len() && unique.len() == landed.len();
            let identity = i != j || landed.iter().enumerate().all(|(a, &b)| a == b);
            report.push(
                format!("direct-limit-embedding[{i}->{j}]"),
                injective && identity && round_trip,
                format!(
                    "{} -> {}: {} of {} items land injectively, minimal memory recovered: {round_trip}",
                    chain[i],
                    chain[j],
                    unique.len(),
                    map.len()
                ),
            );
            embed[i][j] = landed;
        }
    }

    let mut composable = true;
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                if embed[i][j].len() != families[i].len() {
                    composable = false;
                    continue;
                }
                for a in 0..families[i].len() {
                    let via = embed[j][k].get(embed[i][j][a]);
                    composable &= via.is_some() && via == embed[i][k].get(a);
                }
            }
        }
    }
    report.push("direct-limit-composition", composable, "e_jk o e_ij = e_ik for all i <= j <= k");

    for o in alphabet.signature().ops() {
        let mut mismatches = 0usize;
        let mut tested = 0usize;
        for i in 0..n {
            let (picks, _) = tuples(families[i].len(), o.arity, limits.configs, SAMPLES, 0x51 + i as u64);
            for j in i..n {
                for pick in &picks {
                    let parts: Vec<&CellularAutomaton> =
                        pick.iter().map(|&a| &families[i].items()[a]).collect();
                    let combined = pointwise_combine(chain[i].group(), alphabet, &o.name, &parts, limits)?
                        .extend_memory(&chain[i], limits)?;
                    let lhs = combined.extend_memory(&chain[j], limits)?;
                    let images: Vec<&CellularAutomaton> =
                        pick.iter().map(|&a| &families[j].items()[embed[i][j][a]]).collect();
                    let rhs = pointwise_combine(chain[j].group(), alphabet, &o.name, &images, limits)?
                        .extend_memory(&chain[j], limits)?;
                    tested += 1;
                    if lhs != rhs {
                        mismatches += 1;
                    }
                }
            }
        }
        report.push(
            format!("direct-limit-preserves[{}]", o.name),
            mismatches == 0,
            format!("{tested} tuples, {mismatches} mismatches"),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::ca::eca_over;
    use crate::group::FiniteGroup;

    fn alpha(name: &str) -> Arc<FiniteAlgebra> {
        Arc::new(builtins::alphabet(name).unwrap())
    }

    #[test]
    fn additive_elementary_rules() {
        let fam = enumerate_endoca(&MemorySet::interval(-1, 1), &alpha("Z2"), &Limits::default()).unwrap();
        let mut numbers: Vec<u8> = fam.items().iter().map(|c| c.wolfram_number().unwrap()).collect();
        numbers.sort();
        assert_eq!(numbers, vec![0, 60, 90, 102, 150, 170, 204, 240]);
        let r90 = eca_over(90, alpha("Z2")).unwrap();
        assert!(fam.index_of(&r90).is_some());
        assert!(fam.index_of(&eca_over(110, alpha("Z2")).unwrap()).is_none());
    }

    #[test]
    fn boolean_elementary_rules() {
        let fam = enumerate_endoca(&MemorySet::interval(-1, 1), &alpha("Bool"), &Limits::default()).unwrap();
        let mut numbers: Vec<u8> = fam.items().iter().map(|c| c.wolfram_number().unwrap()).collect();
        numbers.sort();
        assert_eq!(numbers, vec![170, 204, 240]);
    }

    #[test]
    fn singleton_memory() {
        let s = MemorySet::new(Group::integers(), vec![crate::group::Element::Z(0)]).unwrap();
        let fam = enumerate_endoca(&s, &alpha("Z2"), &Limits::default()).unwrap();
        let tables: Vec<&[usize]> = fam.items().iter().map(|c| c.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1][..]]);
    }

    #[test]
    fn counts() {
        let l = Limits::default();
        let c = count_endoca(1, &alpha("F2^2"), &l).unwrap();
        assert_eq!((c.count, c.method), (16, EndoCountMethod::VectorSpace));
        assert!(c.methods.iter().any(|m| m.0 == EndoCountMethod::Generic));
        assert_eq!(count_endoca(2, &alpha("F2^2"), &l).unwrap().count, 256);
        let c = count_endoca(2, &alpha("Z6"), &l).unwrap();
        assert_eq!((c.count, c.method), (36, EndoCountMethod::Cyclic));
        let c = count_endoca(2, &alpha("Bool2"), &l).unwrap();
        assert_eq!((c.count, c.method), (16, EndoCountMethod::Boolean));
        // Z2 is both cyclic and a vector space; every method agrees
        let c = count_endoca(3, &alpha("Z2"), &l).unwrap();
        assert_eq!(c.count, 8);
        assert!(c.methods.len() >= 4, "{:?}", c.methods);
        let c = count_endoca(2, &alpha("S3-magma"), &l).unwrap();
        assert_eq!(c.method, EndoCountMethod::Generic);
        let c = count_endoca(3, &alpha("Z1"), &l).unwrap();
        assert_eq!((c.count, c.method), (1, EndoCountMethod::Trivial));
    }

    #[test]
    fn phi_on_small_cases() {
        let z4: Group = FiniteGroup::cyclic(4).into();
        let s = MemorySet::indices(z4, &[0, 1]).unwrap();
        let r = verify_phi(&s, &alpha("Z2"), &Limits::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_string().contains("|EndCA|=4"));
        match verify_phi(&s, &alpha("Bool"), &Limits::default()) {
            Err(Error::NotEntropic(w)) => assert!(w.is_valid_for(&builtins::boolean(1))),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn direct_limit_chain() {
        let z = Group::integers();
        let chain = vec![
            MemorySet::parse(z.clone(), "0").unwrap(),
            MemorySet::parse(z.clone(), "0 1").unwrap(),
            MemorySet::parse(z, "-1 0 1").unwrap(),
        ];
        let r = verify_direct_limit(&chain, &alpha("Z2"), &Limits::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.to_string().contains("sizes 2,4,8"));
        let single = verify_direct_limit(&chain[..1], &alpha("Z2"), &Limits::default()).unwrap();
        assert!(single.passed());
        let backwards = [chain[2].clone(), chain[0].clone()];
        assert!(verify_direct_limit(&backwards, &alpha("Z2"), &Limits::default()).is_err());
    }
}
