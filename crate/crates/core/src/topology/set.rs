use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::parse::{content_lines, unexpected_end, Line};

use super::canonical::canonical_key;
use super::{is_well_layered, Topology};

/// Pairwise non-equivalent topologies with a common gate count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologySet {
    k: usize,
    members: Vec<Topology>,
}

impl TopologySet {
    /// Checks gate counts and, for well-layered members with at most 7 gates,
    /// that no two are equivalent.
    pub fn new(k: usize, members: Vec<Topology>) -> Result<Self> {
        let mut keys = HashSet::new();
        for (n, t) in members.iter().enumerate() {
            if t.gate_count() != k {
                return Err(Error::InvalidTopology(format!(
                    "member {} has {} gates, expected {k}",
                    n + 1,
                    t.gate_count()
                )));
            }
            if k <= 7 && is_well_layered(t) && !keys.insert(canonical_key(t)?) {
                return Err(Error::InvalidTopology(format!(
                    "member {} is equivalent to an earlier member",
                    n + 1
                )));
            }
        }
        Ok(TopologySet { k, members })
    }

    pub(crate) fn from_unchecked(k: usize, members: Vec<Topology>) -> Self {
        TopologySet { k, members }
    }

    pub fn gate_count(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Topology] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Topology> {
        self.members.iter()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("topologyset k={} count={}\n", self.k, self.members.len());
        for t in &self.members {
            s.push('\n');
            s.push_str(&t.to_text());
        }
        s
    }

    pub fn parse(text: &str) -> Result<TopologySet> {
        let mut lines = content_lines(text);
        let (no, header) = lines
            .next()
            .ok_or_else(|| unexpected_end(text, "`topologyset k=<k> count=<c>`"))?;
        let mut head = Line::new(header, no);
        head.expect("topologyset")?;
        head.expect("k=")?;
        let k = head.number()?;
        head.expect("count=")?;
        let count = head.number()?;
        head.end()?;
        let mut members = Vec::with_capacity(count.min(1 << 20));
        for _ in 0..count {
            let t = Topology::parse_block(&mut lines, text)?;
            if t.gate_count() != k {
                return Err(Error::InvalidTopology(format!(
                    "member {} has {} gates, header says {k}",
                    members.len() + 1,
                    t.gate_count()
                )));
            }
            members.push(t);
        }
        if let Some((no, l)) = lines.next() {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(Error::parse(
                no,
                col,
                format!("more topologies than the declared count {count}"),
            ));
        }
        TopologySet::new(k, members)
    }
}

impl<'a> IntoIterator for &'a TopologySet {
    type Item = &'a Topology;
    type IntoIter = std::slice::Iter<'a, Topology>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::fig1;
    use super::*;

    #[test]
    fn round_trip_and_validation() {
        let chain = Topology::from_lists(&[(&[], &[]), (&[1], &[])]).unwrap();
        let flat = Topology::from_lists(&[(&[], &[]), (&[], &[])]).unwrap();
        let set = TopologySet::new(2, vec![flat.clone(), chain.clone()]).unwrap();
        let text = set.to_text();
        assert!(text.starts_with("topologyset k=2 count=2\n\ntopology k=2\n"));
        assert_eq!(TopologySet::parse(&text).unwrap(), set);
        assert!(TopologySet::new(2, vec![chain.clone(), chain]).is_err());
        assert!(TopologySet::new(2, vec![fig1()]).is_err());
        let short = "topologyset k=2 count=2\n\n".to_string() + &flat.to_text();
        assert!(matches!(
            TopologySet::parse(&short),
            Err(Error::Parse { .. })
        ));
    }
}
