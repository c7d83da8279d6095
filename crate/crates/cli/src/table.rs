use std::io::Write;

use serde::Serialize;

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Index(u32),
    Num(f64),
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Index(n) => n.to_string(),
            // adding 0.0 turns −0 into +0
            Cell::Num(x) => format!("{:.11e}", x + 0.0),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

/// Column-labelled numeric output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// With `indexed`, rows are prefixed by the Fock index column `n`.
    pub fn new(columns: &[&str], indexed: bool) -> Self {
        let mut all: Vec<String> = Vec::with_capacity(columns.len() + 1);
        if indexed {
            all.push("n".into());
        }
        all.extend(columns.iter().map(|c| c.to_string()));
        Self { columns: all, rows: Vec::new() }
    }

    pub fn indexed(&self) -> bool {
        self.columns.first().is_some_and(|c| c == "n")
    }

    pub fn push(&mut self, n: u32, values: &[f64]) {
        let mut row = Vec::with_capacity(self.columns.len());
        if self.indexed() {
            row.push(Cell::Index(n));
        }
        row.extend(values.iter().map(|&v| Cell::from(v)));
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(|c| c.csv()).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
                Ok(())
            }
            Format::Json => {
                serde_json::to_writer(&mut *out, self)?;
                writeln!(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_twelve_significant_digits() {
        let mut t = Table::new(&["t", "x"], true);
        t.push(5, &[0.1, -0.0]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,t,x\n5,1.00000000000e-1,0.00000000000e0\n");
    }

    #[test]
    fn json_rows() {
        let mut t = Table::new(&["a"], false);
        t.push(0, &[2.5]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"columns\":[\"a\"],\"rows\":[[2.5]]}\n");
    }
}
