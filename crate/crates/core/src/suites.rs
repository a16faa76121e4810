//! Named verification suites. Each returns a [`Report`]; `all` runs every
//! suite in order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{entropy_witness, Algebra, FiniteAlgebra, PowerAlgebra};
use crate::boolean::{boolean_homs, boolean_view, kernel};
use crate::builtins;
use crate::ca::{
    componentwise, eca, global_endomorphism_violation, is_shift_equivariant, pointwise_combine,
    CellularAutomaton, Sampling,
};
use crate::error::{Error, Result};
use crate::group::{Configuration, FiniteGroup, Group, MemorySet};
use crate::hom::{count_homs_generic, enumerate_homs, module_structure};
use crate::limits::{power_size, Limits};
use crate::report::Report;
use crate::theory::{
    classify_eca, count_endoca, enumerate_endoca, verify_direct_limit, verify_group_algebra,
    verify_phi, EcaPredicate,
};
use crate::tuple;

pub const SUITES: [&str; 6] = [
    "th-local",
    "th-ca-s",
    "group-algebra",
    "boolean-count",
    "direct-limit",
    "g-algebra",
];

pub fn run(suite: &str, limits: &Limits) -> Result<Report> {
    match suite {
        "th-local" => th_local(limits),
        "th-ca-s" => th_ca_s(limits),
        "group-algebra" => group_algebra(limits),
        "boolean-count" => boolean_count(limits),
        "direct-limit" => direct_limit(limits),
        "g-algebra" => g_algebra(limits),
        "all" => {
            let mut report = Report::new();
            for s in SUITES {
                report.extend(run(s, limits)?);
            }
            Ok(report)
        }
        other => Err(Error::Unknown(format!("suite `{other}`"))),
    }
}

fn alphabet(name: &str) -> Arc<FiniteAlgebra> {
    Arc::new(builtins::alphabet(name).expect("built-in alphabet"))
}

fn cyclic(n: usize) -> Group {
    FiniteGroup::cyclic(n).into()
}

/// Local hom check against the global check on `A^G`, for every rule with
/// the given memory.
pub fn local_global_agreement(
    memory: &MemorySet,
    alphabet: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<(usize, usize, usize)> {
    let q = alphabet.size();
    let rules = power_size(q, power_size(q, memory.len()) as usize);
    limits.check_configs("local rules", rules)?;
    let width = power_size(q, memory.len()) as usize;
    let mut table = vec![0; width];
    let (mut total, mut endomorphic, mut mismatches) = (0, 0, 0);
    loop {
        let ca = CellularAutomaton::from_table(alphabet.clone(), memory.clone(), table.clone())?;
        let local = ca.is_endomorphic();
        let global = global_endomorphism_violation(&ca, limits)?.is_none();
        total += 1;
        endomorphic += local as usize;
        mismatches += (local != global) as usize;
        if !tuple::next_tuple(&mut table, q) {
            break;
        }
    }
    Ok((total, endomorphic, mismatches))
}

fn th_local(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    let cases = [
        (MemorySet::indices(cyclic(4), &[0, 1])?, alphabet("Z2")),
        (MemorySet::indices(cyclic(3), &[0, 1])?, alphabet("Bool")),
        (MemorySet::indices(FiniteGroup::symmetric(3).into(), &[1, 2])?, alphabet("Z2")),
    ];
    for (memory, a) in cases {
        let (total, endo, bad) = local_global_agreement(&memory, &a, limits)?;
        report.push(
            "th-local",
            bad == 0,
            format!(
                "G={} A={} S={}: {total} rules, {endo} endomorphic, {bad} local/global mismatches",
                memory.group(),
                a.name(),
                memory
            ),
        );
    }
    Ok(report)
}

fn th_ca_s(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    let cases = [
        (MemorySet::indices(cyclic(4), &[0, 1])?, alphabet("Z2")),
        (MemorySet::interval(-1, 1), alphabet("Z3")),
        (MemorySet::indices(cyclic(3), &[0, 1])?, alphabet("F2^2")),
        (MemorySet::empty(Group::integers()), alphabet("Z5")),
    ];
    for (memory, a) in &cases {
        report.extend(verify_phi(memory, a, limits)?);
        let family = enumerate_endoca(memory, a, limits)?.len() as u128;
        let count = count_endoca(memory.len(), a, limits)?;
        report.push(
            "endoca-count",
            family == count.count,
            format!(
                "A={} |S|={}: enumerated {family}, {} count {}",
                a.name(),
                memory.len(),
                count.method,
                count.count
            ),
        );
    }
    for name in ["Bool", "S3-magma"] {
        let a = alphabet(name);
        let refused = match verify_phi(&MemorySet::interval(-1, 1), &a, limits) {
            Err(Error::NotEntropic(w)) => Some(w),
            _ => None,
        };
        report.push(
            "phi-refuses-non-entropic",
            refused.as_ref().is_some_and(|w| w.is_valid_for(&a)),
            match refused {
                Some(w) => format!("A={name}: {w}"),
                None => format!("A={name}: not refused"),
            },
        );
    }
    let additive = classify_eca(&EcaPredicate::Additive)?;
    report.push(
        "eca-additive",
        additive == [0, 60, 90, 102, 150, 170, 204, 240],
        join(&additive),
    );
    let boolean = classify_eca(&EcaPredicate::BooleanHom)?;
    report.push("eca-boolean-hom", boolean == [170, 204, 240], join(&boolean));
    Ok(report)
}

fn join(rules: &[u8]) -> String {
    rules.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

fn group_algebra(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    let z6 = cyclic(6);
    let s3: Group = FiniteGroup::symmetric(3).into();
    let cases = [
        (MemorySet::indices(z6.clone(), &[0, 1, 2, 3, 4, 5])?, "Z2"),
        (MemorySet::indices(cyclic(4), &[0, 1])?, "Z4"),
        (MemorySet::indices(s3, &[0, 1, 3])?, "Z3"),
        (MemorySet::interval(-1, 0), "F2^2"),
    ];
    for (memory, name) in cases {
        let module = Arc::new(module_structure(&alphabet(name), limits)?);
        report.extend(verify_group_algebra(&memory, &module, limits)?);
    }
    for n in [2usize, 3, 4, 6] {
        let a = alphabet(&format!("Z{n}"));
        for s in 1..=3 {
            report.extend(count_check(&a, s, power_size(n, s), limits)?);
        }
    }
    let v = alphabet("F2^2");
    report.extend(count_check(&v, 1, 16, limits)?);
    report.extend(count_check(&v, 2, 256, limits)?);
    Ok(report)
}

fn count_check(a: &Arc<FiniteAlgebra>, s: usize, expected: u128, limits: &Limits) -> Result<Report> {
    let c = count_endoca(s, a, limits)?;
    let methods: Vec<String> = c.methods.iter().map(|(m, n)| format!("{m}={n}")).collect();
    let mut r = Report::new();
    r.push(
        "endoca-count",
        c.count == expected,
        format!("A={} s={s}: expected {expected}, got {} ({})", a.name(), c.count, methods.join(" ")),
    );
    Ok(r)
}

fn boolean_count(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    let two = alphabet("Bool");
    for s in 1..=4 {
        let dom = PowerAlgebra::new(two.clone(), s)?;
        let n = count_homs_generic(&dom, two.as_ref(), limits)?;
        report.push(
            "boolean-projections",
            n == s as u128,
            format!("|Hom(2^{s}, 2)| = {n}, expected {s}"),
        );
    }
    for (k, s) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        let b = alphabet(&if k == 1 { "Bool".to_string() } else { format!("Bool{k}") });
        let dom = PowerAlgebra::new(b.clone(), s)?;
        let generic = enumerate_homs(&dom, b.as_ref(), limits)?;
        let special = boolean_homs(k, s, limits)?;
        let expected = power_size(k * s, k);
        report.push(
            "boolean-count",
            generic.items == special.items && generic.count() as u128 == expected,
            format!(
                "k={k} s={s}: generic {}, specialized {}, (ks)^k = {expected}, lists identical: {}",
                generic.count(),
                special.count(),
                generic.items == special.items
            ),
        );
        let cod = boolean_view(&b)?;
        if k == 1 {
            let dom_view = boolean_view(&Arc::new(dom.materialize()))?;
            let maximal = dom_view.maximal_ideals();
            let all_maximal = special.items.iter().all(|phi| {
                let ker = kernel(phi, &cod);
                dom_view.is_ideal(&ker) && maximal.contains(&ker)
            });
            report.push(
                "boolean-kernels",
                all_maximal,
                format!("k=1 s={s}: every kernel is a maximal ideal"),
            );
        }
    }
    Ok(report)
}

fn direct_limit(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    let z = Group::integers();
    let chain = vec![
        MemorySet::parse(z.clone(), "0")?,
        MemorySet::parse(z.clone(), "0 1")?,
        MemorySet::parse(z.clone(), "-1 0 1")?,
    ];
    report.extend(verify_direct_limit(&chain, &alphabet("Z2"), limits)?);
    report.extend(verify_direct_limit(&chain[..1], &alphabet("Z2"), limits)?);
    let c4 = cyclic(4);
    let chain = vec![
        MemorySet::indices(c4.clone(), &[0])?,
        MemorySet::indices(c4.clone(), &[0, 1])?,
        MemorySet::indices(c4, &[0, 1, 2])?,
    ];
    report.extend(verify_direct_limit(&chain, &alphabet("Z3"), limits)?);
    Ok(report)
}

/// `f(g x_1, .., g x_n) = g f(x_1, .., x_n)` for every operation, every
/// tuple of configurations and every `g`.
pub fn g_algebra_law(group: &Group, a: &FiniteAlgebra, limits: &Limits) -> Result<(usize, usize)> {
    let m = group
        .order()
        .ok_or_else(|| Error::GroupMismatch(format!("{group} is not finite")))?;
    let q = a.size();
    limits.check_configs("configuration space", power_size(q, m))?;
    let configs: Vec<Configuration> = Configuration::all_finite(m, q).collect();
    let like = Configuration::Finite(vec![0; m]);
    let elems = group.elements().expect("finite");
    let (mut tested, mut bad) = (0, 0);
    for (f, o) in a.signature().ops().iter().enumerate() {
        limits.check_configs("operation instances", power_size(configs.len(), o.arity))?;
        let mut pick = vec![0; o.arity];
        loop {
            let args: Vec<&Configuration> = pick.iter().map(|&i| &configs[i]).collect();
            let value = componentwise(a, f, &args, &like);
            for g in &elems {
                let shifted = args
                    .iter()
                    .map(|x| group.shift(g, x))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&Configuration> = shifted.iter().collect();
                tested += 1;
                if componentwise(a, f, &refs, &like) != group.shift(g, &value)? {
                    bad += 1;
                }
            }
            if !tuple::next_tuple(&mut pick, configs.len()) {
                break;
            }
        }
    }
    Ok((tested, bad))
}

/// Random automata over finite groups, each checked for shift
/// equivariance exhaustively in `g` and `x`.
pub fn random_equivariance(
    group: &Group,
    rules: usize,
    max_q: usize,
    seed: u64,
    limits: &Limits,
) -> Result<(usize, usize)> {
    let m = group.order().expect("finite group");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..rules {
        let q = rng.random_range(2..=max_q);
        let a = Arc::new(builtins::set(q));
        let mut chosen: Vec<usize> = (0..m).filter(|_| rng.random_bool(0.5)).collect();
        if chosen.is_empty() {
            chosen.push(rng.random_range(0..m));
        }
        let memory = MemorySet::indices(group.clone(), &chosen)?;
        let width = power_size(q, chosen.len()) as usize;
        let table = (0..width).map(|_| rng.random_range(0..q)).collect();
        let ca = CellularAutomaton::from_table(a, memory, table)?;
        let map = |x: &Configuration| ca.apply(x).expect("configuration fits");
        if !is_shift_equivariant(group, q, &map, Sampling::Exhaustive, limits)? {
            failures += 1;
        }
    }
    Ok((rules, failures))
}

fn g_algebra(limits: &Limits) -> Result<Report> {
    let mut report = Report::new();
    for (group, a) in [
        (cyclic(4), alphabet("Z2")),
        (cyclic(4), alphabet("Bool")),
        (FiniteGroup::symmetric(3).into(), alphabet("Bool")),
    ] {
        let (tested, bad) = g_algebra_law(&group, &a, limits)?;
        report.push(
            "g-algebra",
            bad == 0,
            format!("G={group} A={}: {tested} shifted operation instances, {bad} failures", a.name()),
        );
    }
    for (group, seed) in [(Group::from(FiniteGroup::symmetric(3)), 3u64), (cyclic(4), 4)] {
        let (n, bad) = random_equivariance(&group, 50, 3, seed, limits)?;
        report.push(
            "equivariance",
            bad == 0,
            format!("G={group} q<=3: {n} random automata, {bad} fail to commute with the shift"),
        );
    }
    // automata built by the engine's own constructions
    let z4 = cyclic(4);
    let z2 = alphabet("Z2");
    let a = CellularAutomaton::from_table(z2.clone(), MemorySet::indices(z4.clone(), &[1, 2])?, vec![0, 1, 1, 1])?;
    let b = CellularAutomaton::from_table(z2.clone(), MemorySet::indices(z4.clone(), &[0, 3])?, vec![1, 0, 0, 1])?;
    let built = [
        a.compose(&b, limits)?,
        pointwise_combine(&z4, &z2, "+", &[&a, &b], limits)?,
        a.extend_memory(&MemorySet::indices(z4.clone(), &[0, 1, 2, 3])?, limits)?.minimal_memory(),
    ];
    let mut bad = 0;
    for ca in &built {
        let map = |x: &Configuration| ca.apply(x).expect("configuration fits");
        bad += !is_shift_equivariant(&z4, 2, &map, Sampling::Exhaustive, limits)? as usize;
    }
    report.push(
        "equivariance-constructed",
        bad == 0,
        format!("G=C4 A=Z2: compose, combine and extend/minimize outputs, {bad} failures"),
    );
    let r110 = eca(110)?;
    let x = Configuration::periodic(vec![0, 1, 1, 0, 1, 0, 0])?;
    let mut lattice_ok = true;
    for g in -3..=3 {
        let g = crate::group::Element::Z(g);
        lattice_ok &= r110.apply(&Group::integers().shift(&g, &x)?)? == Group::integers().shift(&g, &r110.apply(&x)?)?;
    }
    report.push("equivariance-periodic", lattice_ok, "rule 110 on a period-7 configuration, shifts -3..3");
    let entropic = entropy_witness(&alphabet("Z2")).is_none();
    report.push("g-algebra-entropic-alphabet", entropic, "Z2 is entropic");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let limits = Limits::default();
        for s in SUITES {
            let r = run(s, &limits).unwrap();
            assert!(r.passed(), "{s}:\n{r}");
            assert!(!r.checks().is_empty());
        }
        assert!(run("nope", &limits).is_err());
    }
}
