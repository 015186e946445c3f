use super::{TopoGate, Topology};

/// Non-nesting of nonempty sides, and a shared part strictly below both private parts.
pub fn gate_is_minimal(g: TopoGate) -> bool {
    let (l, r) = (g.left, g.right);
    if !l.is_empty() && l.is_subset(r) {
        return false;
    }
    if !r.is_empty() && r.is_subset(l) {
        return false;
    }
    let x = l.intersection(r);
    x.is_empty() || (x < l.difference(r) && x < r.difference(l))
}

pub fn is_minimal(t: &Topology) -> bool {
    t.gates().iter().all(|&g| gate_is_minimal(g))
}

#[cfg(test)]
mod tests {
    use super::super::tests::fig1;
    use super::super::GateSet;
    use super::*;

    fn gate(l: &[usize], r: &[usize]) -> TopoGate {
        TopoGate::new(l.iter().copied().collect(), r.iter().copied().collect())
    }

    #[test]
    fn examples() {
        assert!(is_minimal(&fig1()));
        assert!(!gate_is_minimal(gate(&[1], &[1, 2])));
        assert!(!gate_is_minimal(gate(&[1, 2], &[1])));
        assert!(!gate_is_minimal(gate(&[1], &[1])));
        assert!(gate_is_minimal(gate(&[], &[])));
        assert!(gate_is_minimal(gate(&[], &[1])));
        // shared {3} has value 4, above {2} = 2
        assert!(!gate_is_minimal(gate(&[2, 3], &[1, 3])));
        assert!(gate_is_minimal(gate(&[1, 2], &[1, 3])));
        assert!(GateSet::single(1) < GateSet::single(2));
    }
}
