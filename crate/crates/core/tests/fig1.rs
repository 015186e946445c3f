use mcbound::topology::{is_minimal, is_well_layered, layering, well_layer_normalize};
use mcbound::{Circuit, GateSet, Topology};

const FIG1: &str = include_str!("../../cli/tests/data/fig1.circuit");

#[test]
fn computes_at_least_three_of_four() {
    let c = Circuit::parse(FIG1).unwrap();
    let table = c.truth_table().unwrap();
    for v in 0..16 {
        assert_eq!(table.get(v), v.count_ones() >= 3, "row {v}");
    }
    assert_eq!(table.to_text(), "tt n=4 0000000100010111");
}

#[test]
fn topology_and_layers() {
    let t = Circuit::parse(FIG1).unwrap().topology_of();
    let expected =
        Topology::from_lists(&[(&[], &[]), (&[], &[]), (&[], &[2]), (&[1], &[2])]).unwrap();
    assert_eq!(t, expected);
    let layers: Vec<GateSet> = layering(&t).layers().to_vec();
    assert_eq!(
        layers,
        vec![GateSet::from_iter([1, 2]), GateSet::from_iter([3, 4])]
    );
    assert!(is_minimal(&t));
    // gate 3 reaches the first layer only through its right side
    assert!(!is_well_layered(&t));
    let (w, _) = well_layer_normalize(&t);
    assert!(is_well_layered(&w) && is_minimal(&w));
    assert_eq!(layering(&w), layering(&t));
}

#[test]
fn text_round_trip() {
    let c = Circuit::parse(FIG1).unwrap();
    assert_eq!(c.to_text(), FIG1);
    assert_eq!(Circuit::parse(&c.to_text()).unwrap(), c);
}
