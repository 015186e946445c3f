use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::parse::{content_lines, unexpected_end, Line};

use super::model::{AndGate, Circuit, CircuitTerm, XorSet, MAX_GATES};
use super::truth_table::MAX_ARITY;

/// Parses `{x1,T,g2}`; gate references must be below `gate_limit`.
fn parse_terms(line: &mut Line<'_>, n: usize, gate_limit: usize, what: &str) -> Result<XorSet> {
    let mut set = XorSet::EMPTY;
    for (item, col) in line.braced()? {
        let index = |digits: &str| -> Result<usize> {
            digits
                .parse()
                .map_err(|_| line.error_at(col, format!("unknown term `{item}`")))
        };
        let term = if item == "T" {
            CircuitTerm::Top
        } else if let Some(d) = item.strip_prefix('x') {
            let j = index(d)?;
            if j == 0 || j > n {
                return Err(line.error_at(col, format!("input x{j} out of range 1..{n}")));
            }
            CircuitTerm::Input(j)
        } else if let Some(d) = item.strip_prefix('g') {
            let j = index(d)?;
            if j == 0 || j >= gate_limit {
                return Err(line.error_at(
                    col,
                    format!(
                        "{what} may only use gates g1..g{}, found g{j}",
                        gate_limit - 1
                    ),
                ));
            }
            CircuitTerm::Gate(j)
        } else {
            return Err(line.error_at(col, format!("unknown term `{item}`")));
        };
        if set.contains(term) {
            return Err(line.error_at(col, format!("duplicate term `{item}`")));
        }
        set.insert(term);
    }
    Ok(set)
}

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut s = format!("circuit n={} k={}\n", self.arity(), self.gate_count());
        for (i, g) in self.gates().iter().enumerate() {
            writeln!(s, "gate {}: L={} R={}", i + 1, g.left, g.right).unwrap();
        }
        writeln!(s, "out: {}", self.output()).unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = content_lines(text);
        let (no, header) = lines
            .next()
            .ok_or_else(|| unexpected_end(text, "`circuit n=<n> k=<k>`"))?;
        let mut head = Line::new(header, no);
        head.expect("circuit")?;
        head.expect("n=")?;
        let n = head.number()?;
        if n > MAX_ARITY {
            return Err(Error::Capacity(format!(
                "arity {n} exceeds the supported maximum of {MAX_ARITY}"
            )));
        }
        head.expect("k=")?;
        let k = head.number()?;
        if k > MAX_GATES {
            return Err(Error::Capacity(format!(
                "{k} gates exceed the supported maximum of {MAX_GATES}"
            )));
        }
        head.end()?;
        let mut gates = Vec::with_capacity(k);
        for i in 1..=k {
            let (no, raw) = lines
                .next()
                .ok_or_else(|| unexpected_end(text, &format!("gate {i}")))?;
            let mut line = Line::new(raw, no);
            line.expect("gate")?;
            line.skip_ws();
            let col = line.column();
            let idx = line.number()?;
            if idx != i {
                return Err(line.error_at(col, format!("expected gate {i}, found gate {idx}")));
            }
            line.expect(":")?;
            line.expect("L=")?;
            let left = parse_terms(&mut line, n, i, &format!("gate {i}"))?;
            line.expect("R=")?;
            let right = parse_terms(&mut line, n, i, &format!("gate {i}"))?;
            line.end()?;
            gates.push(AndGate::new(left, right));
        }
        let (no, raw) = lines.next().ok_or_else(|| unexpected_end(text, "`out:`"))?;
        let mut line = Line::new(raw, no);
        line.expect("out:")?;
        let output = parse_terms(&mut line, n, k + 1, "the output")?;
        line.end()?;
        if let Some((no, l)) = lines.next() {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(Error::parse(no, col, "unexpected input after `out:` line"));
        }
        Circuit::new(n, gates, output)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "circuit n=4 k=4
gate 1: L={x1} R={x2}
gate 2: L={x3} R={x4}
gate 3: L={x1,x2} R={g2}
gate 4: L={g1} R={x3,x4,g2}
out: {g3,g4}
";

    #[test]
    fn round_trip() {
        let c = Circuit::parse(FIG1).unwrap();
        assert_eq!(c.to_text(), FIG1);
        assert_eq!(
            c.truth_table().unwrap().to_text(),
            "tt n=4 0000000100010111"
        );
        let one = Circuit::parse("circuit n=3 k=0\nout: {T}\n").unwrap();
        assert_eq!(one.truth_table().unwrap().to_text(), "tt n=3 11111111");
    }

    #[test]
    fn diagnostics() {
        let err = Circuit::parse("circuit n=2 k=1\ngate 1: L={g1} R={}\nout: {}\n").unwrap_err();
        assert_eq!(
            err,
            Error::parse(2, 12, "gate 1 may only use gates g1..g0, found g1")
        );
        let err = Circuit::parse("circuit n=2 k=0\nout: {x3}\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 7, "input x3 out of range 1..2"));
        let err = Circuit::parse("circuit n=2 k=0\nout: {x1, y}\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 11, "unknown term `y`"));
        let err = Circuit::parse("circuit n=2 k=0\nout: {x1,x1}\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 10, "duplicate term `x1`"));
        let err = Circuit::parse("circuit n=2 k=1\nout: {}\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 1, "expected `gate`"));
        assert!(matches!(
            Circuit::parse("circuit n=2 k=0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
