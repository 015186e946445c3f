//! Gate-to-gate wiring of XOR-AND circuits and the operations on it.

mod canonical;
mod generate;
mod layering;
mod minimal;
mod set;
mod text;

use std::fmt;

use crate::error::{Error, Result};

pub use canonical::{canonical_form, canonical_key, equivalent, minimal_representative};
pub use generate::{
    generate, generate_up_to, generate_up_to_with_progress, generate_with_progress, soundness_gate,
    Progress, MAX_GENERATE_K,
};
pub use layering::{is_well_layered, layering, well_layer_normalize, Layering};
pub use minimal::{gate_is_minimal, is_minimal};
pub use set::TopologySet;

/// Gate indices as a bit vector: bit `i - 1` is set iff gate `i` is a member.
///
/// The derived ordering compares the underlying integers. That is the fixed total
/// order on gate sets used by the minimality condition.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateSet(u64);

impl GateSet {
    pub const EMPTY: GateSet = GateSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        GateSet(bits)
    }

    /// `{1, ..., k}`.
    pub fn first(k: usize) -> Self {
        if k >= 64 {
            GateSet(u64::MAX)
        } else {
            GateSet((1u64 << k) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        debug_assert!((1..=64).contains(&i));
        GateSet(1 << (i - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && (self.0 >> (i - 1)) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!((1..=64).contains(&i), "gate index {i} not representable");
        self.0 |= 1 << (i - 1);
    }

    pub fn union(self, other: GateSet) -> GateSet {
        GateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GateSet) -> GateSet {
        GateSet(self.0 & other.0)
    }

    pub fn difference(self, other: GateSet) -> GateSet {
        GateSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: GateSet) -> GateSet {
        GateSet(self.0 ^ other.0)
    }

    pub fn intersects(self, other: GateSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: GateSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member, or 0 for the empty set.
    pub fn last(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(b + 1)
        })
    }
}

impl FromIterator<usize> for GateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = GateSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopoGate {
    pub left: GateSet,
    pub right: GateSet,
}

impl TopoGate {
    pub fn new(left: GateSet, right: GateSet) -> Self {
        TopoGate { left, right }
    }

    pub fn swapped(self) -> Self {
        TopoGate {
            left: self.right,
            right: self.left,
        }
    }

    pub fn inputs(self) -> GateSet {
        self.left.union(self.right)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Topology {
    gates: Vec<TopoGate>,
}

impl Topology {
    pub fn new(gates: Vec<TopoGate>) -> Result<Self> {
        if gates.len() > 64 {
            return Err(Error::Capacity(format!(
                "{} gates exceed the supported maximum of 64",
                gates.len()
            )));
        }
        for (idx, g) in gates.iter().enumerate() {
            if !g.inputs().is_subset(GateSet::first(idx)) {
                return Err(Error::InvalidTopology(format!(
                    "gate {} references {} but only gates before it may be used",
                    idx + 1,
                    g.inputs().difference(GateSet::first(idx))
                )));
            }
        }
        Ok(Topology { gates })
    }

    pub(crate) fn new_unchecked(gates: Vec<TopoGate>) -> Self {
        debug_assert!(Topology::new(gates.clone()).is_ok());
        Topology { gates }
    }

    /// Builds a topology from `(left, right)` lists of 1-based gate indices.
    pub fn from_lists(gates: &[(&[usize], &[usize])]) -> Result<Self> {
        Topology::new(
            gates
                .iter()
                .map(|(l, r)| {
                    TopoGate::new(l.iter().copied().collect(), r.iter().copied().collect())
                })
                .collect(),
        )
    }

    /// `k` gates with no inputs from other gates.
    pub fn flat(k: usize) -> Self {
        Topology::new_unchecked(vec![TopoGate::default(); k])
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[TopoGate] {
        &self.gates
    }

    /// Gate `i` (1-based).
    pub fn gate(&self, i: usize) -> TopoGate {
        self.gates[i - 1]
    }

    /// The `(L, R)` bit vectors in gate order; lexicographic comparison of this
    /// sequence is the order canonical forms minimize.
    pub fn encoding(&self) -> Vec<(u64, u64)> {
        self.gates
            .iter()
            .map(|g| (g.left.bits(), g.right.bits()))
            .collect()
    }

    pub fn relabel(&self, map: &Relabeling) -> Result<Topology> {
        if map.len() != self.gates.len() {
            return Err(Error::Contract(format!(
                "relabeling covers {} gates, topology has {}",
                map.len(),
                self.gates.len()
            )));
        }
        let mut gates = vec![TopoGate::default(); self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            let g = if map.swapped(i) { g.swapped() } else { *g };
            gates[map.position(i)] = TopoGate::new(map.apply_set(g.left), map.apply_set(g.right));
        }
        Topology::new(gates)
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "<{},{}>", g.left, g.right)?;
        }
        f.write_str("]")
    }
}

/// A renaming of gates: the gate at 0-based index `i` moves to index `position(i)`
/// and has its two inputs exchanged when `swapped(i)` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    position: Vec<usize>,
    swap: Vec<bool>,
}

impl Relabeling {
    pub fn identity(k: usize) -> Self {
        Relabeling {
            position: (0..k).collect(),
            swap: vec![false; k],
        }
    }

    pub fn new(position: Vec<usize>, swap: Vec<bool>) -> Result<Self> {
        let k = position.len();
        let mut seen = vec![false; k];
        for &p in &position {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Contract(format!(
                    "{position:?} is not a permutation of 0..{k}"
                )));
            }
        }
        if swap.len() != k {
            return Err(Error::Contract("swap flags do not match gate count".into()));
        }
        Ok(Relabeling { position, swap })
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn swapped(&self, i: usize) -> bool {
        self.swap[i]
    }

    pub fn apply_set(&self, s: GateSet) -> GateSet {
        let mut out = 0u64;
        for i in s.iter() {
            out |= 1 << self.position[i - 1];
        }
        GateSet(out)
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Relabeling) -> Relabeling {
        Relabeling {
            position: self.position.iter().map(|&p| next.position[p]).collect(),
            swap: self
                .position
                .iter()
                .zip(&self.swap)
                .map(|(&p, &s)| s ^ next.swap[p])
                .collect(),
        }
    }
}
