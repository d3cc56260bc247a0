use std::io::Write;

/// One output value. Floats are written with the shortest representation
/// that round-trips, which keeps identical configs byte-identical.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
    Empty,
}

impl Cell {
    fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        match self {
            Cell::F(v) => write!(w, "{v}"),
            Cell::I(v) => write!(w, "{v}"),
            Cell::S(s) => write!(w, "{s}"),
            Cell::Empty => Ok(()),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::F(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::I(v) => serde_json::Value::from(*v),
            Cell::S(s) => serde_json::Value::from(s.as_str()),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// Result table plus the config echo that goes into the output header.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// key, value pairs echoed as `# key: value` lines (CSV) or the config
    /// object (JSON)
    pub config: Vec<(String, String)>,
    pub soft_flagged_rows: usize,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table { columns, rows: Vec::new(), config: Vec::new(), soft_flagged_rows: 0 }
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "# morse-scatter {}", env!("CARGO_PKG_VERSION"))?;
        for (key, value) in &self.config {
            writeln!(w, "# {key}: {value}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    write!(w, ",")?;
                }
                cell.write_csv(w)?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write, elapsed_ms: u128) -> std::io::Result<()> {
        let config: serde_json::Map<String, serde_json::Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::from(v.as_str())))
            .collect();
        let value = serde_json::json!({
            "config": config,
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|row| row.iter().map(Cell::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "diagnostics": {
                "version": env!("CARGO_PKG_VERSION"),
                "soft_flagged_rows": self.soft_flagged_rows,
                "elapsed_ms": elapsed_ms,
            },
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&value)?)
    }
}
