use mcbound::circuit::{minimalize_circuit, negation_normalize};
use mcbound::oracle::{
    brute_equiv_classes, enumerate_raw_topologies, exhaustive_function_set,
    verify_completeness_small, DEFAULT_BUDGET,
};
use mcbound::topology::{
    generate, generate_up_to, is_minimal, is_well_layered, well_layer_normalize,
};
use mcbound::{AndGate, Circuit, CircuitTerm, Topology, XorSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Failure, Outcome};

pub fn oracle_topologies(max_k: usize) -> Outcome {
    let sets = generate_up_to(max_k)?;
    for set in &sets {
        let k = set.gate_count();
        let mut pool: Vec<Topology> = enumerate_raw_topologies(k)?
            .filter(|t| is_well_layered(t) && is_minimal(t))
            .collect();
        let raw = pool.len();
        pool.extend(set.members().iter().cloned());
        let classes = brute_equiv_classes(&pool);
        for class in &classes {
            let reps: Vec<usize> = class.iter().copied().filter(|&i| i >= raw).collect();
            if reps.len() != 1 {
                return Err(Failure(format!(
                    "k={k}: class of {:?} holds {} generated representatives",
                    pool[class[0]],
                    reps.len()
                )));
            }
            if class.len() == 1 {
                return Err(Failure(format!(
                    "k={k}: generated {:?} is not among the well-layered minimal topologies",
                    pool[class[0]]
                )));
            }
        }
        println!(
            "k={k}: {raw} well-layered minimal topologies, {} classes, {} representatives",
            classes.len(),
            set.len()
        );
    }
    println!("oracle-topologies: pass");
    Ok(())
}

/// A circuit with `n` inputs and `k` gates where each possible term joins each set
/// with probability one half.
pub fn random_circuit(rng: &mut impl Rng, n: usize, k: usize) -> Circuit {
    let mut random_set = |gates: usize| {
        let terms = (1..=n)
            .map(CircuitTerm::Input)
            .chain([CircuitTerm::Top])
            .chain((1..=gates).map(CircuitTerm::Gate));
        XorSet::from_terms(terms.filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
    };
    let gates = (0..k)
        .map(|i| {
            let left = random_set(i);
            AndGate::new(left, random_set(i))
        })
        .collect();
    let output = random_set(k);
    Circuit::new(n, gates, output).expect("terms are in range")
}

fn check_case(c: &Circuit) -> Result<(), String> {
    let table = c.truth_table().map_err(|e| e.to_string())?;
    let nn = negation_normalize(c);
    if nn.truth_table().map_err(|e| e.to_string())? != table {
        return Err("negation_normalize changed the function".into());
    }
    if !nn.is_negation_normal() {
        return Err("negation_normalize left T on both sides of a gate".into());
    }
    if negation_normalize(&nn) != nn {
        return Err("negation_normalize is not idempotent".into());
    }
    let (t, map) = well_layer_normalize(&c.topology_of());
    let w = c.relabel(&map).map_err(|e| e.to_string())?;
    if w.topology_of() != t || w.truth_table().map_err(|e| e.to_string())? != table {
        return Err("mirroring the well-layering relabeling changed the circuit".into());
    }
    let m = minimalize_circuit(&w).map_err(|e| e.to_string())?;
    if m.truth_table().map_err(|e| e.to_string())? != table {
        return Err("minimalize_circuit changed the function".into());
    }
    let mt = m.topology_of();
    if !is_minimal(&mt) || !is_well_layered(&mt) || m.gate_count() != c.gate_count() {
        return Err(format!("minimalize_circuit produced topology {mt:?}"));
    }
    if minimalize_circuit(&m).map_err(|e| e.to_string())? != m {
        return Err("minimalize_circuit is not idempotent".into());
    }
    Ok(())
}

pub fn rewrites(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(0..=4);
        let c = random_circuit(&mut rng, n, k);
        if let Err(msg) = check_case(&c) {
            return Err(Failure(format!(
                "case {case} (seed {seed}): {msg}\n{}",
                c.to_text()
            )));
        }
    }
    println!("rewrites: {cases} cases pass (seed {seed})");
    Ok(())
}

pub fn completeness() -> Outcome {
    for (n, k) in [(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)] {
        if !verify_completeness_small(n, k)? {
            return Err(Failure(format!(
                "n={n}, k={k}: negation-normal circuits over the representatives miss functions"
            )));
        }
        println!("n={n} k={k}: function sets agree");
    }
    println!("completeness: pass");
    Ok(())
}

pub fn m3() -> Outcome {
    let two = generate(2)?;
    let one = generate(1)?;
    let with_two = exhaustive_function_set(3, 2, two.members(), true, DEFAULT_BUDGET)?;
    let with_one = exhaustive_function_set(3, 1, one.members(), true, DEFAULT_BUDGET)?;
    println!("n=3 k=1: {} of 256 functions", with_one.len());
    println!("n=3 k=2: {} of 256 functions", with_two.len());
    if !with_two.is_full() {
        return Err(Failure(format!(
            "two AND gates reach only {} functions of B_3",
            with_two.len()
        )));
    }
    if with_one.is_full() {
        return Err(Failure("one AND gate already reaches all of B_3".into()));
    }
    println!("m3: pass");
    Ok(())
}
