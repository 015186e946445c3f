use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::layering::{is_well_layered, layering};
use super::minimal::gate_is_minimal;
use super::{GateSet, Relabeling, TopoGate, Topology};

type Encoding = Vec<(u64, u64)>;

struct Search<'a> {
    t: &'a Topology,
    ranges: Vec<(usize, usize)>,
    require_minimal: bool,
}

/// Maps both sides through `pos` and picks the smaller orientation whose left side
/// touches `prev`; returns the image and whether the sides were exchanged.
fn orient(g: TopoGate, pos: &[u8], prev: GateSet) -> (TopoGate, bool) {
    let map = |s: GateSet| GateSet::from_bits(s.iter().fold(0, |acc, i| acc | 1 << pos[i - 1]));
    let (l, r) = (map(g.left), map(g.right));
    let straight = TopoGate::new(l, r);
    let crossed = TopoGate::new(r, l);
    if prev.is_empty() {
        return (straight, false);
    }
    match (l.intersects(prev), r.intersects(prev)) {
        (true, true) if crossed < straight => (crossed, true),
        (false, true) => (crossed, true),
        _ => (straight, false),
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

impl Search<'_> {
    fn prev_mask(&self, m: usize) -> GateSet {
        if m == 0 {
            GateSet::EMPTY
        } else {
            let (a, b) = self.ranges[m - 1];
            GateSet::from_bits(GateSet::first(b).bits() & !GateSet::first(a - 1).bits())
        }
    }

    /// Lexicographically least completion of the partial maps in `cands` from layer `m` on.
    fn run(&self, m: usize, cands: Vec<Vec<u8>>) -> Option<(Encoding, Vec<u8>)> {
        let (first, last) = self.ranges[m];
        let prev = self.prev_mask(m);
        let final_layer = m + 1 == self.ranges.len();
        let mut groups: BTreeMap<Encoding, Vec<Vec<u8>>> = BTreeMap::new();
        'cand: for cand in cands {
            let mut images = Vec::with_capacity(last - first + 1);
            for i in first..=last {
                let (img, _) = orient(self.t.gate(i), &cand, prev);
                if self.require_minimal && !gate_is_minimal(img) {
                    continue 'cand;
                }
                images.push(((img.left.bits(), img.right.bits()), i));
            }
            images.sort_unstable();
            let segment: Encoding = images.iter().map(|&(e, _)| e).collect();
            if final_layer {
                if groups.contains_key(&segment) {
                    continue;
                }
                let mut pos = cand;
                for (offset, &(_, i)) in images.iter().enumerate() {
                    pos[i - 1] = (first - 1 + offset) as u8;
                }
                groups.insert(segment, vec![pos]);
                continue;
            }
            // gates with equal images may still be told apart by later layers
            let mut expanded = vec![cand];
            let mut start = 0;
            while start < images.len() {
                let mut end = start + 1;
                while end < images.len() && images[end].0 == images[start].0 {
                    end += 1;
                }
                let members: Vec<usize> = images[start..end].iter().map(|&(_, i)| i).collect();
                let orders = permutations(&members);
                let mut next = Vec::with_capacity(expanded.len() * orders.len());
                for pos in &expanded {
                    for order in &orders {
                        let mut p = pos.clone();
                        for (offset, &i) in order.iter().enumerate() {
                            p[i - 1] = (first - 1 + start + offset) as u8;
                        }
                        next.push(p);
                    }
                }
                expanded = next;
                start = end;
            }
            groups.entry(segment).or_default().extend(expanded);
        }
        for (segment, maps) in groups {
            if final_layer {
                return Some((segment, maps.into_iter().next().unwrap()));
            }
            if let Some((rest, pos)) = self.run(m + 1, maps) {
                let mut enc = segment;
                enc.extend(rest);
                return Some((enc, pos));
            }
        }
        None
    }

    fn relabeling(&self, pos: &[u8]) -> Relabeling {
        let k = self.t.gate_count();
        let mut swap = vec![false; k];
        for (m, &(first, last)) in self.ranges.iter().enumerate() {
            let prev = self.prev_mask(m);
            for i in first..=last {
                swap[i - 1] = orient(self.t.gate(i), pos, prev).1;
            }
        }
        Relabeling::new(pos.iter().map(|&p| p as usize).collect(), swap)
            .expect("search produces permutations")
    }
}

/// Least image of a well-layered `t` under layer-preserving relabelings and
/// orientation changes that keep it well-layered, optionally restricted to minimal images.
fn least_image(t: &Topology, require_minimal: bool) -> Result<Option<(Topology, Relabeling)>> {
    if t.gate_count() > 64 {
        return Err(Error::Capacity("too many gates".into()));
    }
    if !is_well_layered(t) {
        return Err(Error::Contract(format!(
            "canonical forms need a well-layered topology, got {t:?}"
        )));
    }
    if t.gate_count() == 0 {
        return Ok(Some((t.clone(), Relabeling::identity(0))));
    }
    let search = Search {
        t,
        ranges: layering(t).ranges(),
        require_minimal,
    };
    let start = vec![0u8; t.gate_count()];
    Ok(search.run(0, vec![start]).map(|(_, pos)| {
        let map = search.relabeling(&pos);
        (t.relabel(&map).expect("layer-preserving relabeling"), map)
    }))
}

/// The lexicographically least encoding among equivalent well-layered topologies
/// reachable by permuting gates within layers and exchanging gate inputs.
pub fn canonical_form(t: &Topology) -> Result<Topology> {
    Ok(least_image(t, false)?
        .expect("unrestricted search always succeeds")
        .0)
}

/// Packs the canonical encoding of a topology with at most 7 gates into one integer.
pub fn canonical_key(t: &Topology) -> Result<u128> {
    if t.gate_count() > 7 {
        return Err(Error::Capacity(format!(
            "packed keys hold at most 7 gates, got {}",
            t.gate_count()
        )));
    }
    Ok(pack(&canonical_form(t)?))
}

pub(crate) fn pack(t: &Topology) -> u128 {
    t.gates().iter().fold(0u128, |acc, g| {
        (acc << 14) | ((g.left.bits() as u128) << 7) | g.right.bits() as u128
    })
}

/// The least minimal image of `t` in the same sense as [`canonical_form`], or `None`
/// if no relabeling of `t` satisfies the minimality conditions.
pub fn minimal_representative(t: &Topology) -> Result<Option<Topology>> {
    Ok(least_image(t, true)?.map(|(t, _)| t))
}

/// Whether some relabeling of gates, with optional per-gate input exchange, maps `a` onto `b`.
pub fn equivalent(a: &Topology, b: &Topology) -> bool {
    let k = a.gate_count();
    if k != b.gate_count() {
        return false;
    }
    let profile = |t: &Topology| {
        let mut out_deg = vec![0usize; k];
        for g in t.gates() {
            for i in g.inputs().iter() {
                out_deg[i - 1] += 1;
            }
        }
        let mut p: Vec<_> = t
            .gates()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let (x, y) = (g.left.len(), g.right.len());
                (
                    x.min(y),
                    x.max(y),
                    g.left.intersection(g.right).len(),
                    out_deg[i],
                )
            })
            .collect();
        p.sort_unstable();
        p
    };
    if profile(a) != profile(b) {
        return false;
    }
    let mut pos = vec![usize::MAX; k];
    let mut used = vec![false; k];
    assign(a, b, 0, &mut pos, &mut used)
}

fn assign(a: &Topology, b: &Topology, i: usize, pos: &mut [usize], used: &mut [bool]) -> bool {
    if i == a.gate_count() {
        return true;
    }
    let map = |s: GateSet, pos: &[usize]| -> GateSet { s.iter().map(|j| pos[j - 1] + 1).collect() };
    let g = a.gates()[i];
    let (l, r) = (map(g.left, pos), map(g.right, pos));
    for p in 0..b.gate_count() {
        if used[p] {
            continue;
        }
        let h = b.gates()[p];
        if (h.left == l && h.right == r) || (h.left == r && h.right == l) {
            used[p] = true;
            pos[i] = p;
            if assign(a, b, i + 1, pos, used) {
                return true;
            }
            used[p] = false;
        }
    }
    false
}
