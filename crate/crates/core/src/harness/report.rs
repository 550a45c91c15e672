use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const HEADER: &str = "method,J,modularity,rmae,rrmse,wall_time_ms";

/// One line of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: String,
    pub communities: usize,
    pub modularity: f64,
    pub rmae: f64,
    pub rrmse: f64,
    pub wall_time_ms: u64,
}

/// Scientific notation with four significant digits and a signed two-digit
/// exponent, e.g. `4.675e-01`.
pub fn format_error(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.3e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

impl ReportRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{:.4},{},{},{}",
            self.method,
            self.communities,
            self.modularity,
            format_error(self.rmae),
            format_error(self.rrmse),
            self.wall_time_ms
        )
    }
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut s = String::from(HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv_line());
        s.push('\n');
    }
    s
}

pub fn write_report(rows: &[ReportRow], path: &Path) -> Result<()> {
    fs::write(path, render_csv(rows)).map_err(|e| Error::io(path, e))
}

pub fn read_report(path: &Path) -> Result<Vec<ReportRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let bad = |line: usize, message: &str| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => return Err(bad(1, "missing report header")),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 6 {
                return Err(bad(i + 1, "expected 6 columns"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 1, "bad number"));
            Ok(ReportRow {
                method: f[0].to_string(),
                communities: f[1].parse().map_err(|_| bad(i + 1, "bad J"))?,
                modularity: num(f[2])?,
                rmae: num(f[3])?,
                rrmse: num(f[4])?,
                wall_time_ms: f[5].parse().map_err(|_| bad(i + 1, "bad time"))?,
            })
        })
        .collect()
}

/// Fixed-width table for terminal output.
pub fn render_table(rows: &[ReportRow]) -> String {
    let mut s = format!(
        "{:<12} {:>4} {:>8} {:>11} {:>11} {:>9}\n",
        "method", "J", "MOD", "RMAE", "RRMSE", "time_ms"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<12} {:>4} {:>8.4} {:>11} {:>11} {:>9}",
            r.method,
            r.communities,
            r.modularity,
            format_error(r.rmae),
            format_error(r.rrmse),
            r.wall_time_ms
        );
    }
    s
}
