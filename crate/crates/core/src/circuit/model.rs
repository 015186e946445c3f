use std::fmt;

use crate::error::{Error, Result};
use crate::topology::{GateSet, Relabeling, TopoGate, Topology};

use super::truth_table::{TruthTable, MAX_ARITY};

/// Largest number of AND gates a circuit may hold.
pub const MAX_GATES: usize = 64;

/// One operand of an XOR: a circuit input, the constant `T`, or an earlier AND gate.
/// Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircuitTerm {
    Input(usize),
    Top,
    Gate(usize),
}

impl fmt::Display for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitTerm::Input(j) => write!(f, "x{j}"),
            CircuitTerm::Top => f.write_str("T"),
            CircuitTerm::Gate(i) => write!(f, "g{i}"),
        }
    }
}

/// A set of XOR operands. The empty set is the constant 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct XorSet {
    inputs: u32,
    top: bool,
    gates: u64,
}

impl XorSet {
    pub const EMPTY: XorSet = XorSet {
        inputs: 0,
        top: false,
        gates: 0,
    };

    pub fn from_parts(inputs: u32, top: bool, gates: GateSet) -> Self {
        XorSet {
            inputs,
            top,
            gates: gates.bits(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = CircuitTerm>>(terms: I) -> Self {
        let mut s = XorSet::EMPTY;
        for t in terms {
            s.insert(t);
        }
        s
    }

    /// Bit `j - 1` is set iff `x_j` is a member.
    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    pub fn has_top(&self) -> bool {
        self.top
    }

    pub fn gates(&self) -> GateSet {
        GateSet::from_bits(self.gates)
    }

    pub fn is_empty(&self) -> bool {
        *self == XorSet::EMPTY
    }

    pub fn len(&self) -> usize {
        self.inputs.count_ones() as usize + self.top as usize + self.gates.count_ones() as usize
    }

    pub fn contains(&self, term: CircuitTerm) -> bool {
        match term {
            CircuitTerm::Input(j) => (1..=32).contains(&j) && (self.inputs >> (j - 1)) & 1 == 1,
            CircuitTerm::Top => self.top,
            CircuitTerm::Gate(i) => (1..=64).contains(&i) && (self.gates >> (i - 1)) & 1 == 1,
        }
    }

    /// Panics on indices that cannot be represented (0, inputs above 32, gates above 64).
    pub fn insert(&mut self, term: CircuitTerm) {
        match term {
            CircuitTerm::Input(j) => {
                assert!((1..=32).contains(&j), "input index {j} not representable");
                self.inputs |= 1 << (j - 1);
            }
            CircuitTerm::Top => self.top = true,
            CircuitTerm::Gate(i) => {
                assert!((1..=64).contains(&i), "gate index {i} not representable");
                self.gates |= 1 << (i - 1);
            }
        }
    }

    pub fn remove(&mut self, term: CircuitTerm) {
        match term {
            CircuitTerm::Input(j) if (1..=32).contains(&j) => self.inputs &= !(1 << (j - 1)),
            CircuitTerm::Top => self.top = false,
            CircuitTerm::Gate(i) if (1..=64).contains(&i) => self.gates &= !(1 << (i - 1)),
            _ => {}
        }
    }

    pub fn symmetric_difference(&self, other: &XorSet) -> XorSet {
        XorSet {
            inputs: self.inputs ^ other.inputs,
            top: self.top ^ other.top,
            gates: self.gates ^ other.gates,
        }
    }

    /// The input and constant part, with every gate reference dropped.
    pub fn linear_part(&self) -> XorSet {
        XorSet { gates: 0, ..*self }
    }

    pub fn with_gates(&self, gates: GateSet) -> XorSet {
        XorSet {
            gates: gates.bits(),
            ..*self
        }
    }

    /// Members in display order: inputs ascending, then `T`, then gates ascending.
    pub fn terms(&self) -> impl Iterator<Item = CircuitTerm> + '_ {
        let inputs = (0..32)
            .filter(|b| (self.inputs >> b) & 1 == 1)
            .map(|b| CircuitTerm::Input(b + 1));
        let top = self.top.then_some(CircuitTerm::Top);
        let gates = (0..64)
            .filter(|b| (self.gates >> b) & 1 == 1)
            .map(|b| CircuitTerm::Gate(b + 1));
        inputs.chain(top).chain(gates)
    }

    /// XOR of the members, given the assignment `v` and the values of all gates as a bit mask.
    #[inline]
    pub fn eval(&self, v: u32, gate_values: u64) -> bool {
        ((self.inputs & v).count_ones() + self.top as u32 + (self.gates & gate_values).count_ones())
            & 1
            == 1
    }
}

impl fmt::Display for XorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AndGate {
    pub left: XorSet,
    pub right: XorSet,
}

impl AndGate {
    pub fn new(left: XorSet, right: XorSet) -> Self {
        AndGate { left, right }
    }
}

/// An XOR-AND circuit: `n` inputs, AND gates in evaluation order and one output XOR.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<AndGate>,
    output: XorSet,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<AndGate>, output: XorSet) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::Capacity(format!(
                "arity {n} exceeds the supported maximum of {MAX_ARITY}"
            )));
        }
        if gates.len() > MAX_GATES {
            return Err(Error::Capacity(format!(
                "{} gates exceed the supported maximum of {MAX_GATES}",
                gates.len()
            )));
        }
        let input_mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let check = |set: &XorSet, visible: usize, what: &str| -> Result<()> {
            if set.inputs & !input_mask != 0 {
                let j = 32 - (set.inputs & !input_mask).leading_zeros() as usize;
                return Err(Error::InvalidCircuit(format!(
                    "{what} references input x{j} but the circuit has {n} inputs"
                )));
            }
            let gate_mask = GateSet::first(visible).bits();
            if set.gates & !gate_mask != 0 {
                let i = 64 - (set.gates & !gate_mask).leading_zeros() as usize;
                return Err(Error::InvalidCircuit(format!(
                    "{what} references gate g{i}, only g1..g{visible} are available"
                )));
            }
            Ok(())
        };
        for (idx, g) in gates.iter().enumerate() {
            let i = idx + 1;
            check(&g.left, idx, &format!("gate {i} left input"))?;
            check(&g.right, idx, &format!("gate {i} right input"))?;
        }
        check(&output, gates.len(), "output")?;
        Ok(Circuit { n, gates, output })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[AndGate] {
        &self.gates
    }

    pub fn output(&self) -> &XorSet {
        &self.output
    }

    /// Gate values for assignment `v` as a bit mask (bit `i - 1` for gate `i`).
    pub fn gate_values(&self, v: u32) -> u64 {
        let mut values = 0u64;
        for (i, g) in self.gates.iter().enumerate() {
            if g.left.eval(v, values) && g.right.eval(v, values) {
                values |= 1 << i;
            }
        }
        values
    }

    /// Output on the assignment encoded as an index (`x_1` is bit 0).
    pub fn eval_index(&self, v: u32) -> bool {
        self.output.eval(v, self.gate_values(v))
    }

    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.n {
            return Err(Error::Contract(format!(
                "assignment has {} bits, circuit has {} inputs",
                assignment.len(),
                self.n
            )));
        }
        let v = assignment
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &b)| acc | ((b as u32) << j));
        Ok(self.eval_index(v))
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        let n = self.n;
        let inputs: Vec<TruthTable> = (1..=n)
            .map(|j| TruthTable::input(n, j))
            .collect::<Result<_>>()?;
        let one = TruthTable::one(n)?;
        let fold = |set: &XorSet, gate_tables: &[TruthTable]| -> Result<TruthTable> {
            let mut acc = TruthTable::zero(n)?;
            for t in set.terms() {
                match t {
                    CircuitTerm::Input(j) => acc.xor_assign(&inputs[j - 1]),
                    CircuitTerm::Top => acc.xor_assign(&one),
                    CircuitTerm::Gate(i) => acc.xor_assign(&gate_tables[i - 1]),
                }
            }
            Ok(acc)
        };
        let mut gate_tables = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut l = fold(&g.left, &gate_tables)?;
            let r = fold(&g.right, &gate_tables)?;
            l.and_assign(&r);
            gate_tables.push(l);
        }
        fold(&self.output, &gate_tables)
    }

    /// Keeps only the gate-to-gate wiring.
    pub fn topology_of(&self) -> Topology {
        Topology::new_unchecked(
            self.gates
                .iter()
                .map(|g| TopoGate::new(g.left.gates(), g.right.gates()))
                .collect(),
        )
    }

    pub fn is_negation_normal(&self) -> bool {
        self.gates.iter().all(|g| !(g.left.top && g.right.top))
    }

    /// Moves gate `i` to `map.position(i)`, swapping its inputs where the relabeling says so.
    pub fn relabel(&self, map: &Relabeling) -> Result<Circuit> {
        if map.len() != self.gates.len() {
            return Err(Error::Contract(format!(
                "relabeling covers {} gates, circuit has {}",
                map.len(),
                self.gates.len()
            )));
        }
        let rename = |s: &XorSet| s.with_gates(map.apply_set(s.gates()));
        let mut gates = vec![AndGate::new(XorSet::EMPTY, XorSet::EMPTY); self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            let (l, r) = if map.swapped(i) {
                (g.right, g.left)
            } else {
                (g.left, g.right)
            };
            gates[map.position(i)] = AndGate::new(rename(&l), rename(&r));
        }
        Circuit::new(self.n, gates, rename(&self.output))
    }

    pub(crate) fn from_parts_unchecked(n: usize, gates: Vec<AndGate>, output: XorSet) -> Self {
        Circuit { n, gates, output }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CircuitTerm::*;

    fn s<const N: usize>(terms: [CircuitTerm; N]) -> XorSet {
        XorSet::from_terms(terms)
    }

    pub(crate) fn fig1() -> Circuit {
        Circuit::new(
            4,
            vec![
                AndGate::new(s([Input(1)]), s([Input(2)])),
                AndGate::new(s([Input(3)]), s([Input(4)])),
                AndGate::new(s([Input(1), Input(2)]), s([Gate(2)])),
                AndGate::new(s([Gate(1)]), s([Input(3), Input(4), Gate(2)])),
            ],
            s([Gate(3), Gate(4)]),
        )
        .unwrap()
    }

    #[test]
    fn fig1_is_at_least_three_of_four() {
        let c = fig1();
        assert!(c.eval(&[true, true, true, false]).unwrap());
        // the closed form from the figure caption, term by term
        for v in 0..16u32 {
            let x = |j: u32| (v >> (j - 1)) & 1 == 1;
            let caption =
                ((x(1) ^ x(2)) & (x(3) & x(4))) ^ ((x(1) & x(2)) & (x(3) ^ x(4) ^ (x(3) & x(4))));
            assert_eq!(c.eval_index(v), caption, "v={v}");
            assert_eq!(caption, v.count_ones() >= 3);
        }
        assert_eq!(
            c.truth_table().unwrap().to_text(),
            "tt n=4 0000000100010111"
        );
    }

    #[test]
    fn constant_circuits() {
        let zero = Circuit::new(3, vec![], XorSet::EMPTY).unwrap();
        let one = Circuit::new(3, vec![], XorSet::from_terms([Top])).unwrap();
        for v in 0..8 {
            assert!(!zero.eval_index(v));
            assert!(one.eval_index(v));
        }
        assert_eq!(zero.truth_table().unwrap().count_ones(), 0);
        assert_eq!(one.truth_table().unwrap().count_ones(), 8);
    }

    #[test]
    fn single_and_gate() {
        let c = Circuit::new(
            2,
            vec![AndGate::new(
                XorSet::from_terms([Input(1)]),
                XorSet::from_terms([Input(2)]),
            )],
            XorSet::from_terms([Gate(1)]),
        )
        .unwrap();
        assert_eq!(c.truth_table().unwrap().to_text(), "tt n=2 0001");
    }

    #[test]
    fn rejects_forward_and_out_of_range_references() {
        assert!(Circuit::new(2, vec![AndGate::new(s([Gate(1)]), s([]))], s([])).is_err());
        assert!(Circuit::new(2, vec![AndGate::new(s([Input(3)]), s([]))], s([])).is_err());
        assert!(Circuit::new(2, vec![], s([Gate(1)])).is_err());
        assert!(Circuit::new(17, vec![], s([])).is_err());
    }

    #[test]
    fn eval_checks_assignment_length() {
        assert!(fig1().eval(&[true, false]).is_err());
    }

    #[test]
    fn topology_of_fig1() {
        let t = fig1().topology_of();
        assert_eq!(t.to_text(), "topology k=4\ngate 1: L={} R={}\ngate 2: L={} R={}\ngate 3: L={} R={2}\ngate 4: L={1} R={2}\n");
        let empty = Circuit::new(2, vec![], XorSet::EMPTY).unwrap();
        assert_eq!(empty.topology_of().gate_count(), 0);
    }

    #[test]
    fn negation_normal_predicate() {
        assert!(fig1().is_negation_normal());
        let both =
            Circuit::new(1, vec![AndGate::new(s([Top]), s([Top, Input(1)]))], s([])).unwrap();
        assert!(!both.is_negation_normal());
        let one = Circuit::new(1, vec![AndGate::new(s([Top]), s([Input(1)]))], s([])).unwrap();
        assert!(one.is_negation_normal());
    }
}
