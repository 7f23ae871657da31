//! CSV serialization of sweep tables.
//!
//! Layout: `# key: value` metadata lines, one header row, then one record per row with every
//! number in scientific notation with 9 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use eelimit_core::sweeps::SweepTable;

use crate::CliError;

pub fn format_value(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn write_table<W: Write>(table: &SweepTable, mut out: W) -> io::Result<()> {
    for (key, value) in table.metadata() {
        writeln!(out, "# {key}: {value}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(table.columns())?;
    for row in table.rows() {
        writer.write_record(row.iter().map(|v| format_value(*v)))?;
    }
    writer.flush()
}

pub fn write_table_file(table: &SweepTable, path: &Path) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_table(table, &mut out).map_err(|e| CliError::io(path, e))?;
    out.flush().map_err(|e| CliError::io(path, e))
}

/// Parse a file written by [`write_table`] back into metadata, header and rows.
pub fn read_table(text: &str) -> Result<(Vec<(String, String)>, Vec<String>, Vec<Vec<f64>>), csv::Error> {
    let metadata = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| l.trim_start_matches('#').trim().split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        rows.push(record.iter().map(|v| v.parse().unwrap_or(f64::NAN)).collect());
    }
    Ok((metadata, header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_value(3623886098.015146), "3.62388610e9");
        assert_eq!(format_value(-110.0), "-1.10000000e2");
        assert_eq!(format_value(1e-21), "1.00000000e-21");
    }

    #[test]
    fn layout() {
        let mut t = SweepTable::new(["a", "b"]);
        t.meta("figure", "test");
        t.push_row(vec![1.0, 2.5e-3]).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# version: "));
        assert_eq!(lines[1], "# figure: test");
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], "1.00000000e0,2.50000000e-3");

        let (meta, header, rows) = read_table(&text).unwrap();
        assert_eq!(meta[1], ("figure".to_string(), "test".to_string()));
        assert_eq!(header, vec!["a", "b"]);
        assert_eq!(rows, vec![vec![1.0, 2.5e-3]]);
    }
}
