//! Tabular output documents: CSV and JSON renderings with fixed column
//! order, units in every numeric header, and fixed floating-point
//! formatting so identical runs are byte-identical.

use serde_json::{json, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// Empty for dimensionless or text columns.
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.to_string(),
            unit: unit.to_string(),
        }
    }

    fn header(&self) -> String {
        if self.unit.is_empty() {
            self.name.clone()
        } else {
            format!("{}[{}]", self.name, self.unit)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Six significant digits, scientific notation; the single formatter used
/// for every numeric cell.
pub fn format_num(x: f64) -> String {
    format!("{x:.5e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-form notes (warnings, summary lines) carried with the data.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: &str, columns: Vec<Column>) -> Self {
        Table {
            title: title.to_string(),
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    fn cell_csv(cell: &Cell) -> String {
        match cell {
            Cell::Num(x) => format_num(*x),
            Cell::Text(s) => {
                if s.contains(',') || s.contains('"') || s.contains('\n') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Empty => String::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        let header: Vec<String> = self.columns.iter().map(|c| c.header()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Self::cell_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(x) => json!(format_num(*x)),
                        Cell::Text(s) => json!(s),
                        Cell::Empty => Json::Null,
                    };
                    obj.insert(col.header(), v);
                }
                Json::Object(obj)
            })
            .collect();
        let doc = json!({
            "title": self.title,
            "notes": self.notes,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("table serialize")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Relative-tolerance comparison against a published value.
pub fn check(computed: f64, published: f64, rel_tol: f64) -> bool {
    ((computed - published) / published).abs() <= rel_tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(
            "t",
            vec![Column::new("scale", "m"), Column::new("status", "")],
        );
        t.push(vec![Cell::Num(0.01), Cell::text("PASS")]);
        t.push(vec![Cell::Num(1234.5678), Cell::text("a,b")]);
        t
    }

    #[test]
    fn csv_shape() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "scale[m],status");
        assert_eq!(lines[1], "1.00000e-2,PASS");
        assert_eq!(lines[2], "1.23457e3,\"a,b\"");
    }

    #[test]
    fn json_mirrors_csv() {
        let j = sample().to_json();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["rows"][0]["scale[m]"], "1.00000e-2");
        assert_eq!(v["rows"][0]["status"], "PASS");
    }

    #[test]
    fn deterministic() {
        assert_eq!(sample().to_csv(), sample().to_csv());
        assert_eq!(sample().to_json(), sample().to_json());
    }

    #[test]
    fn sig_digits() {
        assert_eq!(format_num(3.456789e-18), "3.45679e-18");
        assert_eq!(format_num(825.0), "8.25000e2");
    }

    #[test]
    fn tolerance_check() {
        assert!(check(413.0, 413.0, 0.0));
        assert!(check(420.0, 413.0, 0.02));
        assert!(!check(430.0, 413.0, 0.02));
    }
}
