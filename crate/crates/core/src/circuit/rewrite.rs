use crate::error::{Error, Result};
use crate::topology::{is_well_layered, layering, GateSet};

use super::model::{AndGate, Circuit, CircuitTerm, XorSet};

fn top() -> XorSet {
    XorSet::from_terms([CircuitTerm::Top])
}

/// Removes `T` from gates that carry it on both sides, using
/// `(X + T)(Y + T) = XY + X + Y + T`: the gate becomes `X AND Y` and every later set that
/// reads it also receives `X + Y + T`.
pub fn negation_normalize(c: &Circuit) -> Circuit {
    let mut gates = c.gates().to_vec();
    let mut output = *c.output();
    for i in 0..gates.len() {
        let g = gates[i];
        if !(g.left.has_top() && g.right.has_top()) {
            continue;
        }
        let mut l = g.left;
        let mut r = g.right;
        l.remove(CircuitTerm::Top);
        r.remove(CircuitTerm::Top);
        gates[i] = AndGate::new(l, r);
        let delta = l.symmetric_difference(&r).symmetric_difference(&top());
        let me = CircuitTerm::Gate(i + 1);
        let patch = |s: &mut XorSet| {
            if s.contains(me) {
                *s = s.symmetric_difference(&delta);
            }
        };
        for later in &mut gates[i + 1..] {
            patch(&mut later.left);
            patch(&mut later.right);
        }
        patch(&mut output);
    }
    Circuit::from_parts_unchecked(c.arity(), gates, output)
}

/// Rewrites each gate with `P AND Q = P AND (P + Q + T) = (P + Q + T) AND Q` so that the
/// topology becomes minimal. Every rewrite keeps the union of the gate's two gate-sets,
/// so the layering is unchanged; the left side is kept touching the previous layer.
pub fn minimalize_circuit(c: &Circuit) -> Result<Circuit> {
    let t = c.topology_of();
    if !is_well_layered(&t) {
        return Err(Error::Contract(format!(
            "minimalization needs a well-layered topology, got {t:?}"
        )));
    }
    let lay = layering(&t);
    let mut gates = c.gates().to_vec();
    for (idx, gate) in gates.iter_mut().enumerate() {
        let m = lay.layer_of(idx + 1);
        let prev = if m == 0 {
            GateSet::EMPTY
        } else {
            lay.layers()[m - 1]
        };
        let (l, r) = (gate.left.gates(), gate.right.gates());
        // linear part of P + Q + T
        let sum = gate
            .left
            .linear_part()
            .symmetric_difference(&gate.right.linear_part())
            .symmetric_difference(&top());
        let rewritten = if !l.is_empty() && l.is_subset(r) {
            AndGate::new(gate.left, sum.with_gates(r.difference(l)))
        } else if !r.is_empty() && r.is_subset(l) {
            AndGate::new(sum.with_gates(l.difference(r)), gate.right)
        } else {
            let x = l.intersection(r);
            let (lp, rp) = (l.difference(r), r.difference(l));
            if x.is_empty() || (x < lp && x < rp) {
                continue;
            }
            if lp < rp {
                AndGate::new(gate.left, sum.with_gates(lp.union(rp)))
            } else {
                AndGate::new(sum.with_gates(lp.union(rp)), gate.right)
            }
        };
        *gate = if m > 0 && !rewritten.left.gates().intersects(prev) {
            AndGate::new(rewritten.right, rewritten.left)
        } else {
            rewritten
        };
    }
    Circuit::new(c.arity(), gates, *c.output())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::is_minimal;
    use CircuitTerm::*;

    fn s<const N: usize>(terms: [CircuitTerm; N]) -> XorSet {
        XorSet::from_terms(terms)
    }

    #[test]
    fn not_not_example() {
        let c = Circuit::new(
            2,
            vec![AndGate::new(s([Input(1), Top]), s([Input(2), Top]))],
            s([Gate(1)]),
        )
        .unwrap();
        let d = negation_normalize(&c);
        assert_eq!(d.gates()[0], AndGate::new(s([Input(1)]), s([Input(2)])));
        assert_eq!(*d.output(), s([Gate(1), Input(1), Input(2), Top]));
        assert_eq!(d.truth_table().unwrap(), c.truth_table().unwrap());
        assert!(d.is_negation_normal());
        assert_eq!(negation_normalize(&d), d);
    }

    #[test]
    fn rewrite_propagates_through_later_gates() {
        // the correction for gate 1 puts T on both sides of gate 2
        let c = Circuit::new(
            2,
            vec![
                AndGate::new(s([Input(1), Top]), s([Top])),
                AndGate::new(s([Gate(1), Input(2)]), s([Gate(1), Top])),
            ],
            s([Gate(2)]),
        )
        .unwrap();
        let d = negation_normalize(&c);
        assert!(d.is_negation_normal());
        assert_eq!(d.truth_table().unwrap(), c.truth_table().unwrap());
    }

    #[test]
    fn subset_case_example() {
        let c = Circuit::new(
            2,
            vec![
                AndGate::new(s([Input(1)]), s([Input(2)])),
                AndGate::new(s([Input(2)]), s([Input(1)])),
                AndGate::new(s([Gate(1)]), s([Gate(1), Gate(2)])),
            ],
            s([Gate(3)]),
        )
        .unwrap();
        let d = minimalize_circuit(&c).unwrap();
        assert_eq!(d.gates()[2], AndGate::new(s([Gate(1)]), s([Gate(2), Top])));
        assert_eq!(d.truth_table().unwrap(), c.truth_table().unwrap());
        assert!(is_minimal(&d.topology_of()));
        assert_eq!(minimalize_circuit(&d).unwrap(), d);
    }

    #[test]
    fn minimal_circuits_are_untouched() {
        let c = Circuit::new(
            3,
            vec![
                AndGate::new(s([Input(1)]), s([Input(2)])),
                AndGate::new(s([Input(3)]), s([Input(2), Top])),
                AndGate::new(s([Gate(2)]), s([Gate(1), Input(1)])),
            ],
            s([Gate(3), Input(3)]),
        )
        .unwrap();
        assert_eq!(minimalize_circuit(&c).unwrap(), c);
    }

    #[test]
    fn rejects_non_well_layered() {
        let c = Circuit::new(
            1,
            vec![
                AndGate::new(s([Input(1)]), s([])),
                AndGate::new(s([Input(1)]), s([Gate(1)])),
            ],
            s([Gate(2)]),
        )
        .unwrap();
        assert!(matches!(minimalize_circuit(&c), Err(Error::Contract(_))));
    }
}
