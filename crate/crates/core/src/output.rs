//! CSV export. Every file starts with `# linprop-csv v1 <kind>` followed by a
//! header whose column names carry their unit in brackets.

use std::io::Write;

use crate::error::Result;

pub const CSV_MAGIC: &str = "# linprop-csv v1";

pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
    columns: usize,
}

impl<W: Write> CsvSink<W> {
    pub fn new(mut out: W, kind: &str, header: &[&str]) -> Result<Self> {
        writeln!(out, "{CSV_MAGIC} {kind}")?;
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(header)?;
        Ok(Self {
            inner,
            columns: header.len(),
        })
    }

    pub fn row(&mut self, values: &[f64]) -> Result<()> {
        debug_assert_eq!(values.len(), self.columns);
        self.inner
            .write_record(values.iter().map(|v| format!("{v:.17e}")))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Parsed CSV table: kind, header and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub kind: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_csv(text: &str) -> Result<CsvTable> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let kind = first
        .strip_prefix(CSV_MAGIC)
        .map(|k| k.trim().to_string())
        .ok_or_else(|| crate::Error::Config(format!("missing '{CSV_MAGIC}' line")))?;
    let mut reader = csv::Reader::from_reader(rest.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| crate::Error::Config(format!("bad number '{s}': {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { kind, header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read() {
        let mut buf = Vec::new();
        let mut w = CsvSink::new(&mut buf, "demo", &["t[time]", "x[length]"]).unwrap();
        w.row(&[0.1, -3.0]).unwrap();
        w.row(&[1.0 / 3.0, 1e-300]).unwrap();
        w.finish().unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# linprop-csv v1 demo\nt[time],x[length]\n"));
        let t = read_csv(&text).unwrap();
        assert_eq!(t.kind, "demo");
        assert_eq!(t.rows, vec![vec![0.1, -3.0], vec![1.0 / 3.0, 1e-300]]);
    }

    #[test]
    fn missing_magic_rejected() {
        assert!(read_csv("a,b\n1,2\n").is_err());
    }
}
