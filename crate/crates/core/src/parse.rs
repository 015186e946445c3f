//! Line-oriented tokenizing shared by the text formats.

use crate::error::{Error, Result};

pub(crate) struct Line<'a> {
    text: &'a str,
    line: usize,
    pos: usize,
}

impl<'a> Line<'a> {
    pub fn new(text: &'a str, line: usize) -> Self {
        Line { text, line, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    pub fn error_at(&self, column: usize, message: impl Into<String>) -> Error {
        Error::parse(self.line, column, message)
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.column(), message)
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    pub fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().len()
            - self
                .rest()
                .trim_start_matches(|c: char| c.is_ascii_digit())
                .len();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let col = self.column();
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error_at(col, "number out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    /// A `{a,b,...}` list; returns each trimmed item with its column.
    pub fn braced(&mut self) -> Result<Vec<(&'a str, usize)>> {
        self.expect("{")?;
        let close = self
            .rest()
            .find('}')
            .ok_or_else(|| self.error("missing `}`"))?;
        let body_start = self.pos;
        let body = &self.rest()[..close];
        self.pos += close + 1;
        if body.trim().is_empty() {
            return Ok(Vec::new());
        }
        let mut items = Vec::new();
        let mut offset = body_start;
        for raw in body.split(',') {
            let lead = raw.len() - raw.trim_start().len();
            let col = self.text[..offset + lead].chars().count() + 1;
            let item = raw.trim();
            if item.is_empty() {
                return Err(self.error_at(col, "empty list item"));
            }
            items.push((item, col));
            offset += raw.len() + 1;
        }
        Ok(items)
    }

    pub fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub(crate) fn unexpected_end(text: &str, what: &str) -> Error {
    Error::parse(
        text.lines().count() + 1,
        1,
        format!("unexpected end of input, expected {what}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braced_items_carry_columns() {
        let mut l = Line::new("L={1, 2} R={}", 1);
        l.expect("L=").unwrap();
        assert_eq!(l.braced().unwrap(), vec![("1", 4), ("2", 7)]);
        l.expect("R=").unwrap();
        assert!(l.braced().unwrap().is_empty());
        l.end().unwrap();
    }

    #[test]
    fn errors_point_at_offending_column() {
        let mut l = Line::new("gate x", 3);
        l.expect("gate").unwrap();
        assert_eq!(
            l.number().unwrap_err(),
            Error::parse(3, 6, "expected a number")
        );
        let mut l = Line::new("{1,,2}", 1);
        assert_eq!(
            l.braced().unwrap_err(),
            Error::parse(1, 4, "empty list item")
        );
    }
}
