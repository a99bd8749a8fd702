//! Delimiter-separated input and output of frames and tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cvar_core::{Role, TimeFrame};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub delimiter: u8,
    /// Insert all-missing rows for absent years instead of failing.
    pub fill_gaps: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { delimiter: b',', fill_gaps: false }
    }
}

fn is_missing(cell: &str) -> bool {
    matches!(cell, "" | "NA" | "na" | "NaN" | "nan" | ".")
}

/// Reads a frame with a `year` column; every other column must have a role
/// in `schema`, and every schema entry must exist in the file.
pub fn load_frame(path: &Path, schema: &BTreeMap<String, Role>, opts: LoadOptions) -> Result<TimeFrame> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::format(path, e.to_string()))?.clone();
    let year_col = header
        .iter()
        .position(|h| h.eq_ignore_ascii_case("year"))
        .ok_or_else(|| Error::format(path, "no `year` column"))?;
    let columns: Vec<(usize, String)> =
        header.iter().enumerate().filter(|(i, _)| *i != year_col).map(|(i, h)| (i, h.to_string())).collect();
    for name in schema.keys() {
        if !columns.iter().any(|(_, h)| h == name) {
            return Err(cvar_core::Error::UnknownColumn(name.clone()).into());
        }
    }
    let mut roles = Vec::with_capacity(columns.len());
    for (_, name) in &columns {
        let role = schema
            .get(name)
            .ok_or_else(|| Error::format(path, format!("column `{name}` has no role in the schema")))?;
        roles.push(*role);
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::format(path, e.to_string()))?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let bad = |msg: String| Error::Line { path: path.to_path_buf(), line, msg };
        let year: i32 = rec
            .get(year_col)
            .unwrap_or("")
            .parse()
            .map_err(|_| bad(format!("invalid year `{}`", rec.get(year_col).unwrap_or(""))))?;
        let mut cells = Vec::with_capacity(columns.len());
        for (i, name) in &columns {
            let cell = rec.get(*i).unwrap_or("");
            if is_missing(cell) {
                cells.push(None);
            } else {
                let v: f64 = cell.parse().map_err(|_| bad(format!("non-numeric `{cell}` in column `{name}`")))?;
                cells.push(Some(v));
            }
        }
        rows.push((year, cells));
    }
    let names = columns.into_iter().map(|(_, h)| h).collect();
    Ok(TimeFrame::from_rows(rows, names, roles, opts.fill_gaps)?)
}

/// Shortest representation that reads back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v}")
    }
}

/// A table with a year column, written with a leading `# units:` line.
pub struct Table {
    pub header: Vec<String>,
    pub units: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>, units: Vec<String>) -> Self {
        Self { header, units, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, delimiter: u8) -> String {
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf8");
        format!("# units: {}\n{body}", self.units.join(", "))
    }
}

pub fn frame_table(frame: &TimeFrame, units: &BTreeMap<String, String>) -> Table {
    let mut header = vec!["year".to_string()];
    header.extend(frame.names().iter().cloned());
    let mut unit_row = vec!["year=calendar year".to_string()];
    unit_row.extend(
        frame
            .names()
            .iter()
            .map(|n| format!("{n}={}", units.get(n).map(String::as_str).unwrap_or("unspecified"))),
    );
    let mut t = Table::new(header, unit_row);
    for (i, y) in frame.years().iter().enumerate() {
        let mut row = vec![y.to_string()];
        row.extend((0..frame.names().len()).map(|j| fmt_num(frame.values()[(i, j)])));
        t.push(row);
    }
    t
}

/// Collects output files and writes them only if none exists (unless forced).
#[derive(Debug)]
pub struct OutputSet {
    dir: PathBuf,
    force: bool,
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl OutputSet {
    pub fn new(dir: &Path, force: bool) -> Self {
        Self { dir: dir.to_path_buf(), force, files: Vec::new() }
    }

    pub fn add(&mut self, name: &str, content: impl Into<Vec<u8>>) {
        self.files.push((self.dir.join(name), content.into()));
    }

    pub fn paths(&self) -> Vec<PathBuf> {
        self.files.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn write(self) -> Result<Vec<PathBuf>> {
        if !self.force {
            if let Some((p, _)) = self.files.iter().find(|(p, _)| p.exists()) {
                return Err(Error::Exists(p.clone()));
            }
        }
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let mut out = Vec::with_capacity(self.files.len());
        for (p, bytes) in self.files {
            fs::write(&p, bytes).map_err(|e| Error::io(&p, e))?;
            out.push(p);
        }
        Ok(out)
    }
}
