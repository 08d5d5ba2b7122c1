//! Report rows and their CSV and JSON encodings.

use std::io::Write;

use hardy_core::{Complex64, IdentityCheck};
use serde::Serialize;

/// Column order of the report schema, version 1.
pub const COLUMNS: [&str; 10] =
    ["scenario", "check", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "tolerance", "pass"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub scenario: String,
    pub check: String,
    pub params: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Row {
    pub fn new(check: &str, params: String, lhs: Complex64, rhs: Complex64, residual: f64, tolerance: f64, pass: bool) -> Self {
        Row {
            scenario: String::new(),
            check: check.to_string(),
            params,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            residual,
            tolerance,
            pass,
        }
    }

    /// Passes when the residual is below the tolerance.
    pub fn identity(check: &str, params: String, c: &IdentityCheck, tolerance: f64) -> Self {
        Self::new(check, params, c.lhs, c.rhs, c.residual, tolerance, c.passes(tolerance))
    }

    pub fn scalar(check: &str, params: String, lhs: f64, rhs: f64, residual: f64, tolerance: f64, pass: bool) -> Self {
        Self::new(check, params, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0), residual, tolerance, pass)
    }

    /// A failed row carrying the error message in its parameters.
    pub fn error(check: &str, params: String, err: &anyhow::Error) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let msg = format!("{err:#}").replace(['\n', ';'], " ");
        let params = if params.is_empty() { format!("error={msg}") } else { format!("{params};error={msg}") };
        Self::new(check, params, nan, nan, f64::NAN, f64::NAN, false)
    }
}

/// One line of the dominance summary: `(inner, m(Q), Σ(E), max_ratio, residual)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceRow {
    pub inner: String,
    pub target: String,
    pub target_measure: f64,
    pub preimage_measure: f64,
    pub max_ratio: f64,
    pub residual: f64,
}

pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, rows: &[T]) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

/// `k=v` pairs joined with `;`.
#[macro_export]
macro_rules! params {
    ($($k:literal = $v:expr),* $(,)?) => {{
        let parts: Vec<String> = vec![$(format!("{}={}", $k, $v)),*];
        parts.join(";")
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_matches_schema() {
        let row = Row::scalar("radial", params!("alpha" = 0.5, "atom" = 1), 1.0, 1.0, 0.0, 1e-6, true);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), ",radial,alpha=0.5;atom=1,1.0,0.0,1.0,0.0,0.0,1e-6,true");
    }

    #[test]
    fn error_rows_fail() {
        let row = Row::error("poisson", "z=1".into(), &anyhow::anyhow!("bad; worse\nworst"));
        assert!(!row.pass);
        assert_eq!(row.params, "z=1;error=bad  worse worst");
    }
}
