use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle;

use super::canonical::{canonical_form, minimal_representative, pack};
use super::layering::{is_well_layered, layering};
use super::{GateSet, TopoGate, Topology, TopologySet};

/// Largest gate count [`generate`] accepts.
pub const MAX_GENERATE_K: usize = 7;

/// Largest gate count at which the soundness check compares against brute force.
const GATE_CHECK_K: usize = 4;

/// Reported after each batch of extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    /// Gate count being generated.
    pub gates: usize,
    /// Gate count of the parents just extended.
    pub parent_gates: usize,
    /// Number of gates in the appended layer.
    pub layer_width: usize,
    pub parents: usize,
    /// Distinct classes (minimal or not) seen so far at this gate count.
    pub classes_seen: usize,
}

fn unpack(code: u128, k: usize) -> Topology {
    let gates = (0..k)
        .map(|i| {
            let g = (code >> (14 * (k - 1 - i))) & 0x3FFF;
            TopoGate::new(
                GateSet::from_bits((g >> 7) as u64),
                GateSet::from_bits((g & 0x7F) as u64),
            )
        })
        .collect();
    Topology::new_unchecked(gates)
}

/// Gates allowed in a new layer on top of `parent`: the left side touches the last
/// layer, neither nonempty side contains the other, and when both sides touch the
/// last layer only the smaller orientation is kept.
fn layer_candidates(parent: &Topology) -> Vec<TopoGate> {
    let s = parent.gate_count();
    let last = *layering(parent).layers().last().expect("parent has gates");
    let all = GateSet::first(s).bits();
    let mut out = Vec::new();
    for l in 1..=all {
        let left = GateSet::from_bits(l);
        if !left.intersects(last) {
            continue;
        }
        for r in 0..=all {
            let right = GateSet::from_bits(r);
            if left.is_subset(right) || (!right.is_empty() && right.is_subset(left)) {
                continue;
            }
            if right.intersects(last) && r < l {
                continue;
            }
            out.push(TopoGate::new(left, right));
        }
    }
    out
}

/// Canonical keys of every one-layer extension of `parent` by `width` gates, each with
/// one packed witness.
fn extend(parent: &Topology, width: usize) -> Vec<(u128, u128)> {
    let cands = layer_candidates(parent);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if cands.is_empty() {
        return out;
    }
    let mut pick = vec![0usize; width];
    let mut gates = parent.gates().to_vec();
    loop {
        gates.truncate(parent.gate_count());
        gates.extend(pick.iter().map(|&c| cands[c]));
        let t = Topology::new_unchecked(gates.clone());
        debug_assert!(is_well_layered(&t));
        let key = pack(&canonical_form(&t).expect("extensions are well-layered"));
        if seen.insert(key) {
            out.push((key, pack(&t)));
        }
        // next non-decreasing index vector
        let Some(pos) = pick.iter().rposition(|&c| c + 1 < cands.len()) else {
            return out;
        };
        let v = pick[pos] + 1;
        pick[pos..].iter_mut().for_each(|c| *c = v);
    }
}

/// Representatives of every equivalence class of well-layered minimal topologies with
/// exactly `k` gates, sorted by canonical encoding.
pub fn generate(k: usize) -> Result<TopologySet> {
    generate_with_progress(k, &|_| {})
}

pub fn generate_with_progress(
    k: usize,
    progress: &(dyn Fn(&Progress) + Sync),
) -> Result<TopologySet> {
    if k == 0 {
        return Ok(TopologySet::from_unchecked(0, Vec::new()));
    }
    Ok(generate_up_to_with_progress(k, progress)?
        .pop()
        .expect("one set per gate count"))
}

/// `generate(1), ..., generate(max_k)`, sharing the work between sizes.
pub fn generate_up_to(max_k: usize) -> Result<Vec<TopologySet>> {
    generate_up_to_with_progress(max_k, &|_| {})
}

pub fn generate_up_to_with_progress(
    max_k: usize,
    progress: &(dyn Fn(&Progress) + Sync),
) -> Result<Vec<TopologySet>> {
    if max_k > MAX_GENERATE_K {
        return Err(Error::Capacity(format!(
            "generation supports at most {MAX_GENERATE_K} gates, got {max_k}"
        )));
    }
    if max_k > GATE_CHECK_K {
        soundness_gate()?;
    }
    // reps[s]: one minimal well-layered representative per class with s gates
    let mut reps: Vec<Vec<Topology>> = vec![Vec::new()];
    for s in 1..=max_k {
        let seed = Topology::new_unchecked(vec![TopoGate::default(); s]);
        let mut found = vec![(pack(&seed), pack(&seed))];
        for (parent_gates, parents) in reps.iter().enumerate().take(s).skip(1) {
            let width = s - parent_gates;
            let batch: Vec<(u128, u128)> = parents
                .par_iter()
                .flat_map_iter(|p| extend(p, width))
                .collect();
            found.extend(batch);
            found.par_sort_unstable_by_key(|e| e.0);
            found.dedup_by_key(|e| e.0);
            progress(&Progress {
                gates: s,
                parent_gates,
                layer_width: width,
                parents: parents.len(),
                classes_seen: found.len(),
            });
        }
        let members: Vec<Topology> = found
            .par_iter()
            .filter_map(|&(_, code)| {
                minimal_representative(&unpack(code, s)).expect("witnesses are well-layered")
            })
            .collect();
        reps.push(members);
    }
    Ok(reps
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(s, m)| TopologySet::from_unchecked(s, m))
        .collect())
}

/// Checks, once per process, that equal canonical forms coincide with brute-force
/// equivalence on every well-layered topology with at most four gates. Generation
/// beyond four gates refuses to run unless this holds.
pub fn soundness_gate() -> Result<()> {
    static GATE: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    GATE.get_or_init(|| (1..=GATE_CHECK_K).try_for_each(check_canonical_against_oracle))
        .clone()
        .map_err(|msg| Error::Contract(format!("canonicalization soundness check failed: {msg}")))
}

fn check_canonical_against_oracle(k: usize) -> std::result::Result<(), String> {
    let raw = oracle::enumerate_raw_topologies(k).map_err(|e| e.to_string())?;
    let mut engine_to_oracle: HashMap<u128, Topology> = HashMap::new();
    let mut oracle_to_engine: HashMap<Topology, u128> = HashMap::new();
    for t in raw.filter(is_well_layered) {
        let ek = pack(&canonical_form(&t).map_err(|e| e.to_string())?);
        let ok = oracle::brute_class_key(&t);
        let prev_o = engine_to_oracle.entry(ek).or_insert_with(|| ok.clone());
        if *prev_o != ok {
            return Err(format!(
                "{t:?} shares a canonical form with a topology it is not equivalent to"
            ));
        }
        let prev_e = oracle_to_engine.entry(ok).or_insert(ek);
        if *prev_e != ek {
            return Err(format!(
                "{t:?} is equivalent to a topology with a different canonical form"
            ));
        }
    }
    Ok(())
}
