use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::ca::{pointwise_combine, CellularAutomaton};
use crate::error::{Error, Result};
use crate::group::{Element, Group, MemorySet};
use crate::hom::ModuleAlphabet;
use crate::limits::{power_size, Limits};
use crate::report::Report;
use crate::tuple;

use super::{enumerate_endoca, tuples};

/// A finitely supported map `G -> End(A)`; coefficients are indices into
/// the alphabet's endomorphism ring. Zero coefficients are never stored.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: Group,
    module: Arc<ModuleAlphabet>,
    coeffs: BTreeMap<Element, usize>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.module.algebra() == other.module.algebra()
            && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

impl GroupAlgebraElement {
    pub fn zero(group: Group, module: Arc<ModuleAlphabet>) -> Self {
        GroupAlgebraElement {
            group,
            module,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sum of the given terms; repeated elements add up.
    pub fn from_terms(
        group: Group,
        module: Arc<ModuleAlphabet>,
        terms: impl IntoIterator<Item = (Element, usize)>,
    ) -> Result<Self> {
        let mut out = GroupAlgebraElement::zero(group, module);
        for (g, e) in terms {
            if !out.group.contains(&g) {
                return Err(Error::ElementOutsideGroup(g.to_string(), out.group.to_string()));
            }
            if e >= out.module.ring().len() {
                return Err(Error::OutOfRange {
                    value: e,
                    size: out.module.ring().len(),
                });
            }
            out.add_term(g, e);
        }
        Ok(out)
    }

    /// `e` at `g`.
    pub fn delta(group: Group, module: Arc<ModuleAlphabet>, g: Element, e: usize) -> Result<Self> {
        GroupAlgebraElement::from_terms(group, module, [(g, e)])
    }

    /// The unit `id` at the identity.
    pub fn one(group: Group, module: Arc<ModuleAlphabet>) -> Self {
        let (e, id) = (group.identity(), module.identity_endo());
        GroupAlgebraElement::from_terms(group, module, [(e, id)]).expect("identity term")
    }

    fn add_term(&mut self, g: Element, e: usize) {
        let zero = self.module.zero_endo();
        let cur = self.coeffs.get(&g).copied().unwrap_or(zero);
        let sum = self.module.endo_add(cur, e);
        if sum == zero {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, sum);
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn module(&self) -> &Arc<ModuleAlphabet> {
        &self.module
    }

    /// `alpha(g)`, the zero endomorphism off the support.
    pub fn coeff(&self, g: &Element) -> usize {
        self.coeffs.get(g).copied().unwrap_or(self.module.zero_endo())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, usize)> {
        self.coeffs.iter().map(|(g, &e)| (g, e))
    }

    /// `supp(alpha)` in canonical order.
    pub fn support(&self) -> MemorySet {
        MemorySet::new(self.group.clone(), self.coeffs.keys().copied().collect())
            .expect("support lies in the group")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        if self.module.algebra() != other.module.algebra() {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.module.algebra().name(),
                other.module.algebra().name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, e) in other.terms() {
            out.add_term(*g, e);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, e)| format!("{:?}@{g}", self.module.ring().get(*e).table))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `(alpha * beta)(g) = sum_h alpha(h) o beta(h^-1 g)`.
pub fn convolve(alpha: &GroupAlgebraElement, beta: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    alpha.check_compatible(beta)?;
    let ring = alpha.module.ring();
    let mut out = GroupAlgebraElement::zero(alpha.group.clone(), alpha.module.clone());
    for (h, a) in alpha.terms() {
        for (k, b) in beta.terms() {
            out.add_term(alpha.group.mul(h, k)?, ring.compose(a, b));
        }
    }
    Ok(out)
}

/// The automaton with memory `supp(alpha)` and rule
/// `mu(y) = sum_s alpha(s)(y(s))`.
pub fn psi(alpha: &GroupAlgebraElement) -> CellularAutomaton {
    let coeffs: Vec<usize> = alpha.coeffs.values().copied().collect();
    let table = alpha.module.linear_map(&coeffs).table;
    CellularAutomaton::from_table(alpha.module.algebra().clone(), alpha.support(), table)
        .expect("linear map over the support")
}

/// Coordinate decomposition of an endomorphic automaton over a module-like
/// alphabet: `eps_s(a) = mu(a at s, 0 elsewhere)`.
pub fn psi_inverse(ca: &CellularAutomaton, module: &Arc<ModuleAlphabet>) -> Result<GroupAlgebraElement> {
    if ca.alphabet() != module.algebra() {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            ca.alphabet().name(),
            module.algebra().name()
        )));
    }
    if let Some(v) = ca.endomorphism_violation() {
        return Err(Error::NotEndomorphic(format!(
            "rule fails at operation `{}` on {:?}",
            ca.alphabet().signature().name(v.op),
            v.args
        )));
    }
    let q = ca.alphabet().size();
    let k = ca.memory().len();
    let zero = module.zero();
    let mut terms = Vec::with_capacity(k);
    let mut y = vec![zero; k];
    for (i, s) in ca.memory().elems().iter().enumerate() {
        let table = (0..q)
            .map(|a| {
                y[i] = a;
                let v = ca.rule().eval(&y);
                y[i] = zero;
                v
            })
            .collect();
        let e = module
            .ring()
            .index_of(&crate::algebra::HomMap::new(table))
            .ok_or_else(|| Error::Inconsistent(format!("coordinate map at {s} is not in End(A)")))?;
        terms.push((*s, e));
    }
    GroupAlgebraElement::from_terms(ca.group().clone(), module.clone(), terms)
}

const PAIR_CAP: usize = 64 * 64;
const SAMPLES: usize = 128;

/// `Psi: End(A)[G] -> EndCA(G; A)` restricted to supports inside `S`:
/// bijective onto `EndCA(G, S; A)`, additive, and multiplicative in the
/// orientation `Psi(alpha * beta) = Psi(alpha) o Psi(beta)`.
pub fn verify_group_algebra(
    memory: &MemorySet,
    module: &Arc<ModuleAlphabet>,
    limits: &Limits,
) -> Result<Report> {
    let group = memory.group().clone();
    let alphabet = module.algebra().clone();
    let label = format!("G={} A={} S={}", group, alphabet.name(), memory);
    let n = module.ring().len();
    let k = memory.len();
    limits.check_configs("group algebra elements", power_size(n, k))?;
    let family = enumerate_endoca(memory, &alphabet, limits)?;

    let mut elements = Vec::new();
    let mut coeffs = vec![0; k];
    loop {
        let terms = memory.elems().iter().copied().zip(coeffs.iter().copied());
        elements.push(GroupAlgebraElement::from_terms(group.clone(), module.clone(), terms)?);
        if !tuple::next_tuple(&mut coeffs, n) {
            break;
        }
    }
    let images = elements.iter().map(psi).collect::<Vec<_>>();

    let mut report = Report::new();
    let mut hit = vec![false; family.len()];
    let mut misses = 0usize;
    let mut inverse_ok = true;
    for (alpha, image) in elements.iter().zip(&images) {
        match family.locate(image, limits)? {
            Some(i) if !hit[i] => hit[i] = true,
            _ => misses += 1,
        }
        inverse_ok &= psi_inverse(image, module)? == *alpha;
    }
    let onto = hit.iter().all(|&h| h);
    report.push(
        "group-algebra-bijection",
        misses == 0 && onto && elements.len() == family.len() && inverse_ok,
        format!(
            "{label} |End(A)|^|S| = {}^{} = {} elements onto {} automata, inverse round trip {}",
            n,
            k,
            elements.len(),
            family.len(),
            if inverse_ok { "exact" } else { "broken" }
        ),
    );

    let (pairs, exhaustive) = tuples(elements.len(), 2, PAIR_CAP, SAMPLES, 0xa1);
    let mode = if exhaustive { "all" } else { "sampled" };
    let mut add_bad = 0usize;
    let mut mul_bad = 0usize;
    for p in &pairs {
        let (a, b) = (&elements[p[0]], &elements[p[1]]);
        let (pa, pb) = (&images[p[0]], &images[p[1]]);
        let sum = psi(&a.add(b)?);
        let combined = pointwise_combine(&group, &alphabet, "+", &[pa, pb], limits)?;
        if !sum.equivalent(&combined) {
            add_bad += 1;
        }
        let product = psi(&convolve(a, b)?);
        if product != pa.compose(pb, limits)?.minimal_memory() {
            mul_bad += 1;
        }
    }
    report.push(
        "group-algebra-additive",
        add_bad == 0,
        format!("{label} psi(a+b) = psi(a)+psi(b) on {mode} {} pairs, {add_bad} mismatches", pairs.len()),
    );
    report.push(
        "group-algebra-multiplicative",
        mul_bad == 0,
        format!(
            "{label} orientation psi(a*b) = psi(a) o psi(b) with (a*b)(g) = sum_h a(h) o b(h^-1 g), {mode} {} pairs, {mul_bad} mismatches",
            pairs.len()
        ),
    );
    let one = GroupAlgebraElement::one(group.clone(), module.clone());
    let unit = psi(&one) == CellularAutomaton::identity(group, alphabet)
        && elements
            .iter()
            .all(|e| convolve(&one, e).ok().as_ref() == Some(e) && convolve(e, &one).ok().as_ref() == Some(e));
    report.push("group-algebra-unit", unit, format!("{label} id at e is the unit and maps to the identity"));
    Ok(report)
}
