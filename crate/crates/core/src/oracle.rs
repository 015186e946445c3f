//! Brute-force baselines written straight from the definitions. Nothing here uses the
//! canonicalization or generation code it is meant to check.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::topology::{generate, GateSet, TopoGate, Topology};

/// Largest gate count [`enumerate_raw_topologies`] accepts (2^20 topologies).
pub const MAX_RAW_K: usize = 5;

/// Largest arity a [`FunctionSet`] can hold (a 65,536-bit set for `n = 4`).
pub const MAX_FUNCTION_SET_ARITY: usize = 4;

/// Circuits [`exhaustive_function_set`] evaluates before giving up.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Every topology on `k` gates, each exactly once, in order of its bit encoding.
pub fn enumerate_raw_topologies(k: usize) -> Result<impl Iterator<Item = Topology>> {
    if k > MAX_RAW_K {
        return Err(Error::Capacity(format!(
            "raw enumeration supports at most {MAX_RAW_K} gates, got {k}"
        )));
    }
    let total_bits = k * k - k;
    Ok((0..1u64 << total_bits).map(move |code| {
        let mut shift = 0;
        let gates = (0..k)
            .map(|i| {
                let mask = (1u64 << i) - 1;
                let l = (code >> shift) & mask;
                let r = (code >> (shift + i)) & mask;
                shift += 2 * i;
                TopoGate::new(GateSet::from_bits(l), GateSet::from_bits(r))
            })
            .collect();
        Topology::new(gates).expect("raw encodings only reference earlier gates")
    }))
}

/// Calls `f` on every permutation of `0..k` (Heap's algorithm).
fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    f(&p);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn rename(s: GateSet, pi: &[usize]) -> GateSet {
    s.iter().map(|j| pi[j - 1] + 1).collect()
}

/// Tries every permutation `pi` of gate labels: `a` and `b` are equivalent iff for
/// some `pi`, each gate `<L, R>` of `a` appears in `b` as `<pi(L), pi(R)>` or `<pi(R), pi(L)>`.
pub fn brute_equivalent(a: &Topology, b: &Topology) -> bool {
    let k = a.gate_count();
    if k != b.gate_count() {
        return false;
    }
    let mut found = false;
    for_each_permutation(k, |pi| {
        if found {
            return;
        }
        found = a.gates().iter().enumerate().all(|(i, g)| {
            let h = b.gates()[pi[i]];
            let (l, r) = (rename(g.left, pi), rename(g.right, pi));
            (h.left == l && h.right == r) || (h.left == r && h.right == l)
        });
    });
    found
}

/// The least encoding, over all label permutations and input exchanges, of any valid
/// topology equivalent to `t`. Two topologies are equivalent iff their keys are equal.
pub fn brute_class_key(t: &Topology) -> Topology {
    let k = t.gate_count();
    let mut best: Option<Vec<TopoGate>> = None;
    let mut image = vec![TopoGate::default(); k];
    for_each_permutation(k, |pi| {
        for (i, g) in t.gates().iter().enumerate() {
            let (l, r) = (rename(g.left, pi), rename(g.right, pi));
            image[pi[i]] = TopoGate::new(l.min(r), l.max(r));
        }
        let valid = image
            .iter()
            .enumerate()
            .all(|(p, g)| g.inputs().is_subset(GateSet::first(p)));
        if valid && best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    });
    Topology::new(best.expect("the identity permutation is valid")).expect("valid image")
}

/// Groups `ts` into equivalence classes; each class lists indices into `ts` in
/// increasing order, and classes are ordered by their first index.
pub fn brute_equiv_classes(ts: &[Topology]) -> Vec<Vec<usize>> {
    let keys: Vec<Topology> = ts.par_iter().map(brute_class_key).collect();
    let mut by_key: HashMap<&Topology, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, key) in keys.iter().enumerate() {
        let c = *by_key.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
    }
    classes
}

/// A set of `n`-ary Boolean functions, stored densely as one bit per function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSet {
    n: usize,
    bits: Vec<u64>,
}

impl FunctionSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_FUNCTION_SET_ARITY {
            return Err(Error::Capacity(format!(
                "function sets hold arity at most {MAX_FUNCTION_SET_ARITY}, got {n}"
            )));
        }
        let functions = 1usize << (1 << n);
        Ok(FunctionSet {
            n,
            bits: vec![0; functions.div_ceil(64)],
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// `table` holds `f(v)` in bit `v`.
    pub fn insert(&mut self, table: u64) {
        let t = table as usize;
        self.bits[t >> 6] |= 1 << (t & 63);
    }

    pub fn contains(&self, table: u64) -> bool {
        let t = table as usize;
        t < (1usize << (1 << self.n)) && (self.bits[t >> 6] >> (t & 63)) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every function of `B_n` is present.
    pub fn is_full(&self) -> bool {
        self.len() == 1u64 << (1 << self.n)
    }

    pub fn is_subset(&self, other: &FunctionSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &FunctionSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// Members as truth-table integers, increasing.
    pub fn tables(&self) -> impl Iterator<Item = u64> + '_ {
        let total = 1u64 << (1 << self.n);
        (0..total).filter(|&t| self.contains(t))
    }
}

/// Circuits over one `k`-gate topology: per gate `(options * 4^n)^k` input choices, where
/// `options` counts the allowed placements of `T`, times `2^(n+k+1)` outputs.
fn circuits_per_topology(n: usize, k: usize, negation_normal_only: bool) -> Option<u128> {
    let per_gate = (if negation_normal_only { 3u128 } else { 4 }).checked_mul(1u128 << (2 * n))?;
    per_gate
        .checked_pow(k as u32)?
        .checked_mul(1u128.checked_shl((n + k + 1) as u32)?)
}

/// Evaluates every circuit whose topology is one of `topologies` and collects the
/// functions computed. Each gate side takes any subset of the inputs plus optionally
/// `T`; with `negation_normal_only`, `T` never appears on both sides of one gate.
pub fn exhaustive_function_set(
    n: usize,
    k: usize,
    topologies: &[Topology],
    negation_normal_only: bool,
    budget: u64,
) -> Result<FunctionSet> {
    let mut set = FunctionSet::empty(n)?;
    if let Some(t) = topologies.iter().find(|t| t.gate_count() != k) {
        return Err(Error::Contract(format!(
            "expected {k}-gate topologies, got {} gates",
            t.gate_count()
        )));
    }
    let required = circuits_per_topology(n, k, negation_normal_only)
        .and_then(|c| c.checked_mul(topologies.len() as u128));
    match required {
        Some(r) if r <= budget as u128 => {}
        Some(r) => {
            return Err(Error::Capacity(format!(
                "{r} circuits required, budget is {budget}"
            )))
        }
        None => {
            return Err(Error::Capacity(format!(
                "more than 2^128 circuits required, budget is {budget}"
            )))
        }
    }
    let rows = 1u32 << n;
    let full = if rows == 64 {
        u64::MAX
    } else {
        (1u64 << rows) - 1
    };
    let input = |j: usize| -> u64 {
        (0..rows)
            .filter(|v| (v >> j) & 1 == 1)
            .fold(0, |a, v| a | 1 << v)
    };
    // every affine function of the inputs, indexed by (input subset, T)
    let affine: Vec<u64> = (0..1u32 << (n + 1))
        .map(|m| {
            let mut f = if m >> n & 1 == 1 { full } else { 0 };
            for j in 0..n {
                if (m >> j) & 1 == 1 {
                    f ^= input(j);
                }
            }
            f
        })
        .collect();
    let partials: Vec<FunctionSet> = topologies
        .par_iter()
        .map(|t| {
            let mut local = FunctionSet::empty(n).expect("arity checked");
            let mut values = vec![0u64; k];
            wire(
                t,
                0,
                &affine,
                n,
                negation_normal_only,
                &mut values,
                &mut |vals| {
                    for subset in 0..1usize << k {
                        let g = (0..k)
                            .filter(|i| (subset >> i) & 1 == 1)
                            .fold(0, |acc, i| acc ^ vals[i]);
                        for &a in &affine {
                            local.insert(g ^ a);
                        }
                    }
                },
            );
            local
        })
        .collect();
    for p in &partials {
        set.union_with(p);
    }
    Ok(set)
}

/// Chooses the linear parts of gate `i` onward, calling `leaf` with all gate values.
fn wire(
    t: &Topology,
    i: usize,
    affine: &[u64],
    n: usize,
    negation_normal_only: bool,
    values: &mut [u64],
    leaf: &mut dyn FnMut(&[u64]),
) {
    if i == values.len() {
        leaf(values);
        return;
    }
    let g = t.gates()[i];
    let fold = |s: GateSet, values: &[u64]| s.iter().fold(0, |acc, j| acc ^ values[j - 1]);
    let (lg, rg) = (fold(g.left, values), fold(g.right, values));
    for (a, &la) in affine.iter().enumerate() {
        for (b, &rb) in affine.iter().enumerate() {
            if negation_normal_only && (a >> n) & 1 == 1 && (b >> n) & 1 == 1 {
                continue;
            }
            values[i] = (lg ^ la) & (rg ^ rb);
            wire(t, i + 1, affine, n, negation_normal_only, values, leaf);
        }
    }
}

/// Compares unrestricted circuits over all raw `k`-gate topologies with
/// negation-normal circuits over the generated representatives.
pub fn verify_completeness_small(n: usize, k: usize) -> Result<bool> {
    let raw: Vec<Topology> = enumerate_raw_topologies(k)?.collect();
    let reps: Vec<Topology> = if k == 0 {
        // nothing to generate; the empty topology is its own representative
        raw.clone()
    } else {
        generate(k)?.members().to_vec()
    };
    let all = exhaustive_function_set(n, k, &raw, false, DEFAULT_BUDGET)?;
    let normal = exhaustive_function_set(n, k, &reps, true, DEFAULT_BUDGET)?;
    Ok(all == normal)
}
