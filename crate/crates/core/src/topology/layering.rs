use super::{GateSet, Relabeling, Topology};

/// An ordered partition of a topology's gates into layers of consecutive indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<GateSet>,
}

impl Layering {
    pub fn layers(&self) -> &[GateSet] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// 0-based layer of gate `i` (1-based).
    pub fn layer_of(&self, i: usize) -> usize {
        self.layers
            .iter()
            .position(|s| s.contains(i))
            .expect("gate index outside the layering")
    }

    /// `(first, last)` 1-based gate indices of each layer.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        self.layers
            .iter()
            .map(|s| (s.bits().trailing_zeros() as usize + 1, s.last()))
            .collect()
    }
}

/// Scans gates in index order; a gate joins the current layer unless one of its
/// inputs lies in that layer, in which case it opens the next one.
pub fn layering(t: &Topology) -> Layering {
    let mut layers: Vec<GateSet> = Vec::new();
    for (idx, g) in t.gates().iter().enumerate() {
        match layers.last_mut() {
            Some(cur) if !cur.intersects(g.inputs()) => cur.insert(idx + 1),
            _ => layers.push(GateSet::single(idx + 1)),
        }
    }
    Layering { layers }
}

/// Smallest gate (1-based) whose left input misses the previous layer, with its layer.
fn first_violation(t: &Topology, lay: &Layering) -> Option<(usize, usize)> {
    for (m, pair) in lay.layers.windows(2).enumerate() {
        let (prev, cur) = (pair[0], pair[1]);
        if let Some(i) = cur.iter().find(|&i| !t.gate(i).left.intersects(prev)) {
            return Some((i, m + 1));
        }
    }
    None
}

pub fn is_well_layered(t: &Topology) -> bool {
    first_violation(t, &layering(t)).is_none()
}

/// An equivalent well-layered topology, together with the relabeling that produces it
/// from `t` (so the same moves can be applied to a circuit with this topology).
pub fn well_layer_normalize(t: &Topology) -> (Topology, Relabeling) {
    let k = t.gate_count();
    let mut cur = t.clone();
    let mut total = Relabeling::identity(k);
    // each step either fixes an orientation or moves a gate strictly earlier
    let limit = 4 * k * k + 4;
    for _ in 0..limit {
        let lay = layering(&cur);
        let Some((i, m)) = first_violation(&cur, &lay) else {
            return (cur, total);
        };
        let g = cur.gate(i);
        let step = if g.right.intersects(lay.layers[m - 1]) {
            let mut swap = vec![false; k];
            swap[i - 1] = true;
            Relabeling::new((0..k).collect(), swap)
        } else {
            let j = g.inputs().last();
            let position = (0..k)
                .map(|p| match p {
                    p if p == i - 1 => j,
                    p if p >= j && p < i - 1 => p + 1,
                    p => p,
                })
                .collect();
            let mut swap = vec![false; k];
            swap[i - 1] = j > 0 && g.right.contains(j);
            Relabeling::new(position, swap)
        }
        .expect("well-formed relabeling");
        cur = cur
            .relabel(&step)
            .expect("relabeling keeps references backward");
        total = total.then(&step);
    }
    unreachable!("well-layering did not converge for {t:?}")
}
