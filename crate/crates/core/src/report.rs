//! Bit-stable number formatting and the tabular output shared by the CLI.
//!
//! Every float is printed with 17 significant digits in scientific notation,
//! which round-trips `f64` exactly and does not depend on the platform.

use serde_json::{Map, Number, Value};

/// `x` with 17 significant digits, e.g. `1.2098449430838924e-1`.
///
/// Non-finite values print as `NaN`, `inf` and `-inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// JSON number carrying the exact text of [`format_number`].
///
/// JSON has no infinities; they are emitted as the strings `"inf"`/`"-inf"`
/// and NaN as `null`.
pub fn json_number(x: f64) -> Value {
    if x.is_nan() {
        return Value::Null;
    }
    if x.is_infinite() {
        return Value::String(format_number(x));
    }
    let n: Number = format_number(x)
        .parse()
        .expect("scientific notation is valid JSON");
    Value::Number(n)
}

/// Named numeric columns plus free-form metadata (verdicts, provenance).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// `{"meta": {...}, "rows": [{col: value, ...}, ...]}`.
    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| {
                // numeric metadata was written by format_number; keep it numeric
                let value = match v.parse::<f64>() {
                    Ok(x) if x.is_finite() => json_number(x),
                    _ => Value::String(v.clone()),
                };
                (k.clone(), value)
            })
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, x)| (c.clone(), json_number(*x)))
                        .collect(),
                )
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("meta".into(), Value::Object(meta));
        obj.insert("rows".into(), Value::Array(rows));
        Value::Object(obj)
    }

    /// Whitespace-separated columns, `#`-prefixed header and metadata lines.
    ///
    /// `x` and `y` select two columns; `None` writes every column.
    pub fn to_plotdata(&self, xy: Option<(&str, &str)>) -> String {
        let idx: Vec<usize> = match xy {
            Some((x, y)) => [x, y]
                .iter()
                .filter_map(|name| self.columns.iter().position(|c| c == name))
                .collect(),
            None => (0..self.columns.len()).collect(),
        };
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let header: Vec<&str> = idx.iter().map(|&i| self.columns[i].as_str()).collect();
        out.push_str(&format!("# {}\n", header.join(" ")));
        for r in &self.rows {
            let line: Vec<String> = idx.iter().map(|&i| format_number(r[i])).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for &x in &[0.1, 1.0 / 3.0, 0.12098449430838924, -2.5e-300, 1e300, 0.0] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let v = json_number(x);
            assert_eq!(v.as_f64().unwrap(), x);
        }
        assert_eq!(format_number(1.5), "1.5000000000000000e0");
    }

    #[test]
    fn non_finite() {
        assert_eq!(json_number(f64::NAN), Value::Null);
        assert_eq!(json_number(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn json_text_keeps_digits() {
        let v = json_number(0.1);
        assert_eq!(serde_json::to_string(&v).unwrap(), "1.0000000000000001e-1");
    }

    #[test]
    fn table_outputs() {
        let mut t = Table::new(&["q", "estimate"]).meta("verdict", "Growth");
        t.push(vec![10.0, 0.25]);
        t.push(vec![20.0, 0.5]);
        assert_eq!(t.column("estimate").unwrap(), vec![0.25, 0.5]);
        let p = t.to_plotdata(Some(("q", "estimate")));
        assert_eq!(
            p,
            "# verdict: Growth\n# q estimate\n1.0000000000000000e1 2.5000000000000000e-1\n2.0000000000000000e1 5.0000000000000000e-1\n"
        );
        let j = t.to_json();
        assert_eq!(j["rows"][1]["q"].as_f64().unwrap(), 20.0);
        assert_eq!(j["meta"]["verdict"], "Growth");
    }
}
