//! CSV (`coordinate,re,im`) and JSON serialization.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use super::sampled::{SampledFunction, SpectralFunction};
use crate::error::Result;

/// Rows `coordinate,re,im` after a header line; floats in shortest
/// round-trip exponent form so output is byte-stable.
pub fn write_csv_rows<W: Write>(
    mut out: W,
    coordinate: &str,
    xs: &[f64],
    values: &[Complex64],
) -> Result<()> {
    writeln!(out, "{coordinate},re,im")?;
    for (x, v) in xs.iter().zip(values) {
        writeln!(out, "{:e},{:e},{:e}", x, v.re, v.im)?;
    }
    Ok(())
}

pub fn sampled_to_csv(f: &SampledFunction) -> String {
    let mut buf = Vec::new();
    write_csv_rows(&mut buf, "x", &f.grid.nodes(), &f.values).expect("in-memory write");
    String::from_utf8(buf).expect("ascii csv")
}

pub fn spectral_to_csv(f: &SpectralFunction) -> String {
    let mut buf = Vec::new();
    write_csv_rows(&mut buf, "xi", &f.xi_values, &f.values).expect("in-memory write");
    String::from_utf8(buf).expect("ascii csv")
}

/// Parse `coordinate,re,im` rows back into columns.
pub fn parse_csv(text: &str) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let bad = || crate::LabError::InvalidData(format!("malformed csv row {}", i + 1));
        if cols.len() != 3 {
            return Err(bad());
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        xs.push(num(cols[0])?);
        vs.push(Complex64::new(num(cols[1])?, num(cols[2])?));
    }
    Ok((xs, vs))
}

pub fn write_csv(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Grid;

    #[test]
    fn csv_header_and_rows() {
        let g = Grid::symmetric(1.0, 4, false).unwrap();
        let f = SampledFunction::from_real_fn(g, "x", |x| x).unwrap();
        let csv = sampled_to_csv(&f);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,re,im"));
        assert_eq!(lines.next(), Some("-1e0,-1e0,0e0"));
        let (xs, vs) = parse_csv(&csv).unwrap();
        assert_eq!(xs, g.nodes());
        assert_eq!(vs, f.values);
    }

    #[test]
    fn json_keeps_grid_metadata() {
        let g = Grid::symmetric(2.0, 8, true).unwrap();
        let f = SampledFunction::from_real_fn(g, "gauss", |x| (-x * x).exp()).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"offset\":true"));
        let back: SampledFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }
}
