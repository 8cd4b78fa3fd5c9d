//! Column-oriented output tables: CSV with 17-significant-digit values, or
//! JSON as an array of records. Cells outside a bound's validity domain are
//! emitted as empty fields (CSV) or `null` (JSON).

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    /// An invalid-domain or not-applicable entry.
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Rows must be homogeneous with the header.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row/header length mismatch");
        self.rows.push(row);
    }
}

/// Render a table to text. Deterministic: identical tables yield identical
/// bytes.
pub fn emit_table(table: &Table, format: TableFormat) -> String {
    match format {
        TableFormat::Csv => emit_csv(table),
        TableFormat::Json => emit_json(table),
    }
}

fn emit_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let fields: Vec<String> = row.iter().map(csv_field).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        // 17 significant digits, enough to round-trip any f64
        Cell::Num(x) => format!("{x:.16e}"),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn emit_json(table: &Table) -> String {
    let records: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut record = Map::new();
            for (name, cell) in table.columns.iter().zip(row) {
                let value = match cell {
                    Cell::Num(x) => Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
                    Cell::Int(i) => Value::Number((*i).into()),
                    Cell::Bool(b) => Value::Bool(*b),
                    Cell::Empty => Value::Null,
                };
                record.insert(name.clone(), value);
            }
            Value::Object(record)
        })
        .collect();
    let mut out =
        serde_json::to_string_pretty(&Value::Array(records)).expect("table cells serialize");
    out.push('\n');
    out
}
