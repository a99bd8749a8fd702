//! Plain-text report formatting.

use cvar_core::DMatrix;

/// Header echoed at the top of every report and table.
pub fn header(command: &str, config_hash: &str, seed: u64) -> String {
    format!("# cvar {command}\n# config sha256: {config_hash}\n# seed: {seed}\n")
}

pub fn matrix(title: &str, m: &DMatrix<f64>, row_names: &[String], col_names: &[String]) -> String {
    let mut s = format!("{title}\n");
    let width = row_names.iter().map(|r| r.len()).max().unwrap_or(0).max(4);
    s.push_str(&format!("{:width$}", ""));
    for c in col_names {
        s.push_str(&format!(" {c:>12}"));
    }
    s.push('\n');
    for i in 0..m.nrows() {
        let name = row_names.get(i).map(String::as_str).unwrap_or("");
        s.push_str(&format!("{name:width$}"));
        for j in 0..m.ncols() {
            s.push_str(&format!(" {:>12.6}", m[(i, j)]));
        }
        s.push('\n');
    }
    s
}

pub fn numbered(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}
