use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::parse::{content_lines, unexpected_end, Line};

use super::{GateSet, TopoGate, Topology};

fn parse_index_set(line: &mut Line<'_>, k: usize, gate: usize) -> Result<GateSet> {
    let mut set = GateSet::EMPTY;
    for (item, col) in line.braced()? {
        let i: usize = item
            .parse()
            .map_err(|_| line.error_at(col, format!("expected a gate index, found `{item}`")))?;
        if i == 0 || i >= gate || i > k {
            return Err(line.error_at(
                col,
                format!("gate {gate} may only use gates 1..{}, found {i}", gate - 1),
            ));
        }
        set.insert(i);
    }
    Ok(set)
}

impl Topology {
    pub fn to_text(&self) -> String {
        let mut s = format!("topology k={}\n", self.gate_count());
        for (i, g) in self.gates().iter().enumerate() {
            writeln!(s, "gate {}: L={} R={}", i + 1, g.left, g.right).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Topology> {
        let mut lines = content_lines(text);
        let t = Topology::parse_block(&mut lines, text)?;
        if let Some((no, l)) = lines.next() {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(Error::parse(no, col, "unexpected input after topology"));
        }
        Ok(t)
    }

    pub(crate) fn parse_block<'a>(
        lines: &mut impl Iterator<Item = (usize, &'a str)>,
        text: &str,
    ) -> Result<Topology> {
        let (no, header) = lines
            .next()
            .ok_or_else(|| unexpected_end(text, "`topology k=<k>`"))?;
        let mut head = Line::new(header, no);
        head.expect("topology")?;
        head.expect("k=")?;
        let k = head.number()?;
        head.end()?;
        if k > 64 {
            return Err(Error::Capacity(format!(
                "{k} gates exceed the supported maximum of 64"
            )));
        }
        let mut gates = Vec::with_capacity(k);
        for i in 1..=k {
            let (no, raw) = lines
                .next()
                .ok_or_else(|| unexpected_end(text, &format!("gate {i}")))?;
            let mut line = Line::new(raw, no);
            line.expect("gate")?;
            let col = {
                line.skip_ws();
                line.column()
            };
            let idx = line.number()?;
            if idx != i {
                return Err(line.error_at(col, format!("expected gate {i}, found gate {idx}")));
            }
            line.expect(":")?;
            line.expect("L=")?;
            let left = parse_index_set(&mut line, k, i)?;
            line.expect("R=")?;
            let right = parse_index_set(&mut line, k, i)?;
            line.end()?;
            gates.push(TopoGate::new(left, right));
        }
        Topology::new(gates)
    }
}
