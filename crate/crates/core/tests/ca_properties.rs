use std::sync::Arc;

use endoca::builtins;
use endoca::ca::{is_shift_equivariant, pointwise_combine, recover_local, Sampling};
use endoca::{Algebra, CellularAutomaton, Configuration, Element, FiniteAlgebra, FiniteGroup, Group, Limits, MemorySet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rule_over_z(rng: &mut ChaCha8Rng, alphabet: &Arc<FiniteAlgebra>, radius: i64) -> CellularAutomaton {
    let q = alphabet.size();
    let mut offsets: Vec<Element> = (-radius..=radius)
        .filter(|_| rng.random_bool(0.5))
        .map(Element::Z)
        .collect();
    if offsets.is_empty() {
        offsets.push(Element::Z(rng.random_range(-radius..=radius)));
    }
    // shuffle so non-canonical memory orders are exercised too
    for i in (1..offsets.len()).rev() {
        offsets.swap(i, rng.random_range(0..=i));
    }
    let memory = MemorySet::new(Group::integers(), offsets).unwrap();
    let width = q.pow(memory.len() as u32);
    let table = (0..width).map(|_| rng.random_range(0..q)).collect();
    CellularAutomaton::from_table(alphabet.clone(), memory, table).unwrap()
}

fn random_periodic(rng: &mut ChaCha8Rng, q: usize, period: usize) -> Configuration {
    Configuration::periodic((0..period).map(|_| rng.random_range(0..q)).collect()).unwrap()
}

// Direct evaluation over Z with wraparound, independent of the library's
// group arithmetic.
fn apply_oracle(ca: &CellularAutomaton, x: &Configuration) -> Vec<usize> {
    let cells = x.cells();
    let n = cells.len() as i64;
    let offsets: Vec<i64> = ca
        .memory()
        .elems()
        .iter()
        .map(|e| match e {
            Element::Z(s) => *s,
            other => panic!("not a Z offset: {other}"),
        })
        .collect();
    let q = ca.alphabet().size();
    (0..n)
        .map(|i| {
            let idx = offsets
                .iter()
                .fold(0, |acc, s| acc * q + cells[(i + s).rem_euclid(n) as usize]);
            ca.table()[idx]
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_matches_direct_evaluation(seed in any::<u64>(), q in 2usize..=3, period in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(builtins::set(q));
        let ca = random_rule_over_z(&mut rng, &a, 2);
        let x = random_periodic(&mut rng, q, period);
        let y = ca.apply(&x).unwrap();
        prop_assert_eq!(y.cells(), &apply_oracle(&ca, &x)[..]);
    }

    #[test]
    fn composition_is_sequential_application(seed in any::<u64>(), q in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(builtins::set(q));
        let outer = random_rule_over_z(&mut rng, &a, 1);
        let inner = random_rule_over_z(&mut rng, &a, 2);
        let composed = outer.compose(&inner, &Limits::default()).unwrap();
        prop_assert!(composed.memory().is_canonical());
        for _ in 0..8 {
            let period = rng.random_range(1..10);
            let x = random_periodic(&mut rng, q, period);
            let step = inner.apply(&x).unwrap();
            prop_assert_eq!(apply_oracle(&outer, &step), apply_oracle(&composed, &x));
        }
    }

    #[test]
    fn extending_then_minimizing_keeps_the_map(seed in any::<u64>(), q in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(builtins::set(q));
        let ca = random_rule_over_z(&mut rng, &a, 1);
        let bigger = MemorySet::interval(-2, 2);
        let ext = ca.extend_memory(&bigger, &Limits::default()).unwrap();
        let min = ext.minimal_memory();
        prop_assert!(min.memory().len() <= ca.memory().len());
        prop_assert!(ca.equivalent(&ext));
        prop_assert!(ca.equivalent(&min));
        // every remaining coordinate matters
        prop_assert_eq!(min.essential_coordinates().len(), min.memory().len());
        for _ in 0..8 {
            let period = rng.random_range(1..9);
            let x = random_periodic(&mut rng, q, period);
            prop_assert_eq!(apply_oracle(&ca, &x), apply_oracle(&min, &x));
        }
    }

    #[test]
    fn pointwise_combination_is_componentwise(seed in any::<u64>(), p in prop::sample::select(vec![2usize, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(builtins::cyclic_group(p));
        let c1 = random_rule_over_z(&mut rng, &a, 1);
        let c2 = random_rule_over_z(&mut rng, &a, 2);
        let sum = pointwise_combine(&Group::integers(), &a, "+", &[&c1, &c2], &Limits::default()).unwrap();
        for _ in 0..8 {
            let period = rng.random_range(1..9);
            let x = random_periodic(&mut rng, p, period);
            let expect: Vec<usize> = apply_oracle(&c1, &x)
                .iter()
                .zip(apply_oracle(&c2, &x))
                .map(|(u, v)| (u + v) % p)
                .collect();
            prop_assert_eq!(apply_oracle(&sum, &x), expect);
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(builtins::alphabet("Z3").unwrap());
        let ca = random_rule_over_z(&mut rng, &a, 2);
        let text = ca.to_text("r");
        let (name, back) = CellularAutomaton::parse(
            &text,
            |g| builtins::group(g).ok_or_else(|| endoca::Error::Unknown(g.into())),
            |n| builtins::alphabet(n).map(Arc::new).ok_or_else(|| endoca::Error::Unknown(n.into())),
        )
        .unwrap();
        prop_assert_eq!(name, "r");
        prop_assert_eq!(back, ca);
    }
}

#[test]
fn automata_on_finite_groups_are_equivariant_and_recoverable() {
    let s3: Group = FiniteGroup::symmetric(3).into();
    let a = Arc::new(builtins::set(2));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let limits = Limits::default();
    for _ in 0..20 {
        let picks: Vec<usize> = (0..6).filter(|_| rng.random_bool(0.4)).collect();
        let memory = MemorySet::indices(s3.clone(), &picks).unwrap();
        let table = (0..1usize << picks.len()).map(|_| rng.random_range(0..2)).collect();
        let ca = CellularAutomaton::from_table(a.clone(), memory.clone(), table).unwrap();
        let map = |x: &Configuration| ca.apply(x).unwrap();
        assert!(is_shift_equivariant(&s3, 2, &map, Sampling::Exhaustive, &limits).unwrap());
        let rule = recover_local(&a, &memory, &map, &limits).unwrap();
        assert_eq!(rule.table(), ca.table());
    }
}

#[test]
fn a_non_equivariant_map_is_detected() {
    let c4: Group = FiniteGroup::cyclic(4).into();
    // reads the absolute cell 0, so shifting the input does not shift the output
    let map = |x: &Configuration| x.with_cells(vec![x.cells()[0]; 4]);
    assert!(!is_shift_equivariant(&c4, 2, &map, Sampling::Exhaustive, &Limits::default()).unwrap());
    let a = Arc::new(builtins::set(2));
    let memory = MemorySet::indices(c4, &[0]).unwrap();
    assert!(recover_local(&a, &memory, &map, &Limits::default()).is_err());
}

#[test]
fn shift_action_moves_cells_forward() {
    let c5: Group = FiniteGroup::cyclic(5).into();
    let x = Configuration::Finite(vec![1, 0, 0, 0, 0]);
    // (g.x)(h) = x(g^-1 h): the marked cell travels from 0 to g
    let y = c5.shift(&Element::Index(2), &x).unwrap();
    assert_eq!(y.cells(), &[0, 0, 1, 0, 0]);
}
