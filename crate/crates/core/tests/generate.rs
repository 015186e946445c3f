use std::collections::HashSet;

use mcbound::oracle::{brute_class_key, brute_equiv_classes, enumerate_raw_topologies};
use mcbound::topology::{
    canonical_form, equivalent, generate, generate_up_to, is_minimal, is_well_layered,
    soundness_gate, TopologySet,
};
use mcbound::{Error, Topology};
use rayon::prelude::*;

fn with_workers<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn members_are_minimal_well_layered_and_distinct() {
    for set in generate_up_to(5).unwrap() {
        let k = set.gate_count();
        let mut keys = HashSet::new();
        for t in &set {
            assert_eq!(t.gate_count(), k);
            assert!(is_minimal(t), "{t:?}");
            assert!(is_well_layered(t), "{t:?}");
            assert!(keys.insert(brute_class_key(t)), "{t:?} repeats a class");
        }
    }
}

#[test]
fn small_sets_are_pairwise_inequivalent() {
    for set in generate_up_to(4).unwrap() {
        let m = set.members();
        for i in 0..m.len() {
            for j in 0..i {
                assert!(!equivalent(&m[i], &m[j]));
            }
        }
    }
}

#[test]
fn every_well_layered_minimal_topology_has_exactly_one_representative() {
    for set in generate_up_to(4).unwrap() {
        let k = set.gate_count();
        let pool: Vec<Topology> = enumerate_raw_topologies(k)
            .unwrap()
            .filter(|t| is_well_layered(t) && is_minimal(t))
            .collect();
        let reps: HashSet<Topology> = set.iter().map(brute_class_key).collect();
        let classes: HashSet<Topology> = pool.iter().map(brute_class_key).collect();
        assert_eq!(reps, classes, "k={k}");
        assert_eq!(brute_equiv_classes(&pool).len(), set.len());
    }
}

#[test]
fn class_counts_through_five_gates() {
    let counts: Vec<usize> = generate_up_to(5)
        .unwrap()
        .iter()
        .map(TopologySet::len)
        .collect();
    assert_eq!(counts, vec![1, 2, 8, 85, 3282]);
}

#[test]
fn five_gate_classes_match_brute_force() {
    // every well-layered minimal 5-gate topology, classed by trying all 120 relabelings
    let classes: HashSet<Topology> = enumerate_raw_topologies(5)
        .unwrap()
        .par_bridge()
        .filter(|t| is_well_layered(t) && is_minimal(t))
        .map(|t| brute_class_key(&t))
        .collect();
    assert_eq!(classes.len(), generate(5).unwrap().len());
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let one = with_workers(1, || generate(5).unwrap());
    let four = with_workers(4, || generate(5).unwrap());
    assert_eq!(one, four);
    assert_eq!(generate(5).unwrap().to_text(), one.to_text());
}

#[test]
fn canonical_forms_decide_equivalence_up_to_four_gates() {
    soundness_gate().unwrap();
    for k in 1..=4 {
        let wl: Vec<Topology> = enumerate_raw_topologies(k)
            .unwrap()
            .filter(is_well_layered)
            .collect();
        let forms: Vec<Topology> = wl.iter().map(|t| canonical_form(t).unwrap()).collect();
        let keys: Vec<Topology> = wl.iter().map(brute_class_key).collect();
        for i in 0..wl.len() {
            assert_eq!(canonical_form(&forms[i]).unwrap(), forms[i]);
            for j in 0..i {
                assert_eq!(
                    forms[i] == forms[j],
                    keys[i] == keys[j],
                    "{:?} {:?}",
                    wl[i],
                    wl[j]
                );
            }
        }
    }
}

#[test]
fn round_trips_through_text() {
    let set = generate(4).unwrap();
    assert_eq!(TopologySet::parse(&set.to_text()).unwrap(), set);
}

#[test]
fn limits() {
    assert!(generate(0).unwrap().is_empty());
    assert!(matches!(generate(8), Err(Error::Capacity(_))));
}

#[test]
fn six_gate_members_are_pairwise_inequivalent() {
    let set = generate(6).unwrap();
    let keys: HashSet<Topology> = set.members().par_iter().map(brute_class_key).collect();
    assert_eq!(keys.len(), set.len());
    assert!(set.iter().all(|t| is_minimal(t) && is_well_layered(t)));
}
