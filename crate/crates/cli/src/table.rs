//! Column-ordered tables rendered as CSV or JSON with a fixed number of
//! significant digits, so identical inputs produce byte-identical output.

use serde_json::{Map, Number, Value};

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Comma-separated with a header row and LF line endings. Cells are
    /// numeric or identifier-like, so no quoting is needed.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| cell_str(c, precision)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// The same rows as a JSON array of objects keyed by column name.
    pub fn to_json(&self, precision: usize) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell_json(cell, precision));
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("plain data");
        s.push('\n');
        s
    }
}

fn cell_str(cell: &Cell, precision: usize) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Num(v) => fmt_sig(*v, precision),
        Cell::Text(s) => s.clone(),
    }
}

fn cell_json(cell: &Cell, precision: usize) -> Value {
    match cell {
        Cell::Int(i) => Value::Number((*i).into()),
        Cell::Num(v) => {
            // round to the configured precision, then let the JSON layer
            // print the shortest representation of that value
            let rounded: f64 = fmt_sig(*v, precision).parse().unwrap_or(*v);
            Number::from_f64(rounded)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Cell::Text(s) => Value::String(s.clone()),
    }
}

/// Shortest decimal form with `prec` significant digits, decimal notation
/// for moderate exponents and scientific otherwise (the `%.Ng` convention).
pub fn fmt_sig(v: f64, prec: usize) -> String {
    debug_assert!((3..=17).contains(&prec));
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{:.*e}", prec - 1, v);
    let (mantissa, exp_str) = sci.split_once('e').expect("exponent form");
    let exp: i64 = exp_str.parse().expect("integer exponent");
    if exp >= -4 && exp < prec as i64 {
        let decimals = (prec as i64 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
