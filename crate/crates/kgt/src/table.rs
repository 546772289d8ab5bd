//! Tabular output as CSV or JSON.
//!
//! CSV numbers carry 17 significant digits so that parsing the file gives
//! back the exact `f64`; exact zeros are written as `0`.

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// Formats `x` with 17 significant digits, `0` for ±0.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        "0".to_owned()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => number(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of row objects keyed by column name. Non-finite numbers
    /// become `null`.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Num(x) => {
                            serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number)
                        }
                        Cell::Text(s) => Value::String(s.clone()),
                    };
                    obj.insert(name.clone(), value);
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Parses CSV written by [`Table::to_csv`] into its header and numeric
/// columns; text cells parse as NaN.
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_owned).collect())
        .unwrap_or_default();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| c.parse().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    (header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [
            1.0,
            -0.1,
            1.0 / 3.0,
            6.02214076e23,
            5e-324,
            f64::MAX,
            2.42e-17,
        ] {
            let s = number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(number(0.0), "0");
        assert_eq!(number(-0.0), "0");
        assert_eq!(number(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new(&["x_m", "G", "region"]);
        t.push(vec![Cell::Num(0.5), Cell::Num(0.0), "interior".into()]);
        let csv = t.to_csv();
        assert_eq!(csv, "x_m,G,region\n5.0000000000000000e-1,0,interior\n");
        let (header, rows) = parse_csv(&csv);
        assert_eq!(header, ["x_m", "G", "region"]);
        assert_eq!(rows[0][..2], [0.5, 0.0]);
        let json = t.to_json();
        assert_eq!(json[0]["region"], "interior");
        assert_eq!(json[0]["x_m"], 0.5);
    }
}
