//! Pruned search engines against brute force, plus sequence-predicate invariants.

mod common;

use common::*;
use irred_core::chainstats::{
    all_stats, base_min, check_inequalities, irred_max, oracle_stats, predicates, SearchConfig,
};
use proptest::prelude::*;

#[test]
fn engines_match_brute_force() {
    let cfg = SearchConfig::default();
    let instances = oracle_instances();
    assert!(instances.len() >= 10);
    for a in &instances {
        let oracle = oracle_stats(a).unwrap();
        let all = all_stats(a, &cfg).unwrap();
        assert!(all.exact(), "{}", a.name());
        assert_eq!(all.values(), oracle, "{}", a.name());
        check_inequalities(oracle).unwrap();
        for r in all.iter() {
            assert_eq!(r.witness.len(), r.value as usize, "{} {}", a.name(), r.stat);
        }
    }
}

#[test]
fn witnesses_satisfy_their_predicates() {
    let cfg = SearchConfig::default();
    for a in oracle_instances() {
        let all = all_stats(&a, &cfg).unwrap();
        let p = predicates(&a, &all.irred.witness);
        assert!(p.is_irredundant && p.is_base, "{}", a.name());
        assert!(
            predicates(&a, &all.base.witness).is_minimal_base,
            "{}",
            a.name()
        );
        assert!(
            predicates(&a, &all.base_max.witness).is_minimal_base,
            "{}",
            a.name()
        );
        assert!(
            predicates(&a, &all.height.witness).is_independent,
            "{}",
            a.name()
        );
    }
}

#[test]
fn known_values() {
    let cfg = SearchConfig::default();
    // sharply 3-transitive groups: every minimal base has 3 points
    for a in [pgl_line(2, 2), pgl_line(5, 1), pgl_line(2, 3)] {
        assert_eq!(base_min(&a, &cfg).unwrap().value, 3, "{}", a.name());
    }
    assert_eq!(irred_max(&regular_cyclic(2), &cfg).unwrap().value, 1);
    assert_eq!(irred_max(&regular_cyclic(3), &cfg).unwrap().value, 1);
}

fn instance_and_seq() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0usize..16, prop::collection::vec(0u32..12, 0..6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointwise_stabilizer_ignores_order((i, seq) in instance_and_seq(), shift in 0usize..6) {
        let a = &oracle_instances()[i];
        let n = a.omega_size() as u32;
        let seq: Vec<u32> = seq.into_iter().map(|w| w % n).collect();
        let mut rot = seq.clone();
        if !rot.is_empty() {
            let k = shift % rot.len();
            rot.rotate_left(k);
        }
        let full = a.group().full();
        prop_assert_eq!(a.pointwise_stabilizer(&full, &seq), a.pointwise_stabilizer(&full, &rot));
        let mut rev = seq.clone();
        rev.reverse();
        prop_assert_eq!(a.pointwise_stabilizer(&full, &seq), a.pointwise_stabilizer(&full, &rev));
    }

    #[test]
    fn predicate_relations((i, seq) in instance_and_seq()) {
        let a = &oracle_instances()[i];
        let n = a.omega_size() as u32;
        let mut seq: Vec<u32> = seq.into_iter().map(|w| w % n).collect();
        seq.dedup();
        let p = predicates(a, &seq);
        // minimal base = independent base
        prop_assert_eq!(p.is_minimal_base, p.is_base && p.is_independent);
        // independence is hereditary
        if p.is_independent {
            for k in 0..seq.len() {
                let mut sub = seq.clone();
                sub.remove(k);
                prop_assert!(predicates(a, &sub).is_independent);
            }
        }
        // an irredundant sequence never repeats a point
        if p.is_irredundant {
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), seq.len());
        }
    }

    #[test]
    fn orbit_stabilizer((i, seq) in instance_and_seq(), w in 0u32..12) {
        let a = &oracle_instances()[i];
        let n = a.omega_size() as u32;
        let w = w % n;
        let seq: Vec<u32> = seq.into_iter().map(|x| x % n).collect();
        let s = a.pointwise_stabilizer(&a.group().full(), &seq);
        let orbit = a.orbit(w, &s);
        prop_assert_eq!(orbit.len() * a.stabilizer(&s, w).order(), s.order());
        let total: usize = a.orbits(&s).iter().map(Vec::len).sum();
        prop_assert_eq!(total, a.omega_size());
    }
}

#[test]
fn sequence_lengths_are_bounded_by_the_statistics() {
    let cfg = SearchConfig::default();
    for a in oracle_instances().into_iter().take(6) {
        let stats = all_stats(&a, &cfg).unwrap().values();
        let n = a.omega_size() as u32;
        // every irredundant base / independent set / minimal base among short sequences
        for mask in 0u32..(1 << n.min(9)) {
            let seq: Vec<u32> = (0..n.min(9)).filter(|w| mask >> w & 1 == 1).collect();
            let p = predicates(&a, &seq);
            let len = seq.len() as u32;
            if p.is_independent {
                assert!(len <= stats.height, "{}", a.name());
            }
            if p.is_minimal_base {
                assert!(stats.base <= len && len <= stats.base_max, "{}", a.name());
            }
            if p.is_irredundant && p.is_base {
                assert!(len <= stats.irred, "{}", a.name());
            }
        }
    }
}
