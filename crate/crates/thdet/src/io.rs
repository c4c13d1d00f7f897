//! JSON input for symbols and term breakdowns; CSV output for scans, clouds,
//! curves, and matrix dumps.
//!
//! Scalar values travel as strings in the shared grammar ("1/2", "i/2",
//! "-2", plus decimal literals in the float backend), so one schema serves
//! both backends. Writers print floats in Rust's shortest round-trip form;
//! identical inputs give byte-identical files.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::day_toeplitz::BcToeplitzTerm;
use crate::error::{Error, Result};
use crate::matrix_oracle::DenseMatrix;
use crate::scalars::{ComplexFloat, Scalar};
use crate::spectra::{EigCloud, LocusSample};
use crate::symbol::{DayForm, RationalSymbolBC};
use crate::th_formula::SubsetTerm;

/// Parse `{"a":[...],"b":[...],"c":[...],"d":[...]}` with scalar strings.
/// Keys may be omitted (empty parameter set); unknown keys are rejected.
pub fn symbol_from_json<S: Scalar>(text: &str) -> Result<RationalSymbolBC<S>> {
    let obj = parse_object(text)?;
    check_keys(&obj, &["a", "b", "c", "d"])?;
    Ok(RationalSymbolBC::new(
        scalar_array(&obj, "a")?,
        scalar_array(&obj, "b")?,
        scalar_array(&obj, "c")?,
        scalar_array(&obj, "d")?,
    ))
}

/// Parse `{"c0":...,"r":[...],"rho":[...],"delta":[...]}`; `c0` is required,
/// the parameter lists may be omitted.
pub fn day_form_from_json<S: Scalar>(text: &str) -> Result<DayForm<S>> {
    let obj = parse_object(text)?;
    check_keys(&obj, &["c0", "r", "rho", "delta"])?;
    let c0 = match obj.get("c0") {
        Some(v) => scalar_value(v, "c0")?,
        None => return Err(Error::Json("day form needs a \"c0\" entry".into())),
    };
    Ok(DayForm::new(
        c0,
        scalar_array(&obj, "r")?,
        scalar_array(&obj, "rho")?,
        scalar_array(&obj, "delta")?,
    ))
}

fn parse_object(text: &str) -> Result<Map<String, Value>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    match v {
        Value::Object(m) => Ok(m),
        other => Err(Error::Json(format!("expected a JSON object, got {other}"))),
    }
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Json(format!("unknown key \"{key}\"")));
        }
    }
    Ok(())
}

fn scalar_array<S: Scalar>(obj: &Map<String, Value>, key: &str) -> Result<Vec<S>> {
    match obj.get(key) {
        None => Ok(vec![]),
        Some(Value::Array(items)) => items.iter().map(|v| scalar_value(v, key)).collect(),
        Some(other) => Err(Error::Json(format!("\"{key}\" must be an array, got {other}"))),
    }
}

fn scalar_value<S: Scalar>(v: &Value, key: &str) -> Result<S> {
    match v {
        Value::String(s) => S::parse(s),
        other => Err(Error::Json(format!(
            "\"{key}\" entries must be scalar strings, got {other}"
        ))),
    }
}

/// Serialize a T+H term breakdown as `[{"S":[...],"T":[...],"value":"..."}]`.
/// `S` holds indices into the combined zero set the expansion runs over, `T`
/// indices into the b-side; values use the scalar grammar.
pub fn terms_to_json<S: Scalar>(terms: &[SubsetTerm<S>]) -> String {
    render_terms(terms.iter().map(|t| (&t.s_idx, &t.t_idx, &t.value)))
}

/// Same shape for the pure-Toeplitz subset expansion (`S` indexes the a-side).
pub fn bc_terms_to_json<S: Scalar>(terms: &[BcToeplitzTerm<S>]) -> String {
    render_terms(terms.iter().map(|t| (&t.s_idx, &t.t_idx, &t.value)))
}

fn render_terms<'a, S: Scalar>(
    items: impl Iterator<Item = (&'a Vec<usize>, &'a Vec<usize>, &'a S)>,
) -> String {
    let rows: Vec<Value> = items
        .map(|(s, t, value)| {
            let mut entry = Map::new();
            entry.insert("S".into(), index_array(s));
            entry.insert("T".into(), index_array(t));
            entry.insert("value".into(), Value::String(value.to_string()));
            Value::Object(entry)
        })
        .collect();
    Value::Array(rows).to_string()
}

fn index_array(idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| Value::from(i)).collect())
}

/// CSV scan dump: header `re_lambda,im_lambda,gap,flag`, one row per cell.
/// Unflagged cells with no usable gap print `inf`; `flag` is 0 or 1.
pub fn locus_to_csv(samples: &[LocusSample]) -> String {
    let mut out = String::from("re_lambda,im_lambda,gap,flag\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            s.lambda.0.re,
            s.lambda.0.im,
            s.gap,
            u8::from(s.flagged)
        );
    }
    out
}

/// CSV cloud dump: header `re,im,dist_curve,dist_locus`, one row per
/// eigenvalue. `dist_locus` is `inf` when no flagged cells were supplied.
pub fn eigs_to_csv(cloud: &EigCloud) -> String {
    let mut out = String::from("re,im,dist_curve,dist_locus\n");
    for (i, z) in cloud.eigenvalues.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            z.0.re, z.0.im, cloud.dist_curve[i], cloud.dist_locus[i]
        );
    }
    out
}

/// CSV curve dump: header `re,im`, one row per sample of the image curve.
pub fn curve_to_csv(points: &[ComplexFloat]) -> String {
    let mut out = String::from("re,im\n");
    for z in points {
        let _ = writeln!(out, "{},{}", z.0.re, z.0.im);
    }
    out
}

/// Debug dump: one CSV line per matrix row, each entry contributing a
/// `re,im` pair (2·cols fields per line, no header). Exact entries are
/// approximated to binary64.
pub fn matrix_to_csv<S: Scalar>(m: &DenseMatrix<S>) -> String {
    let mut out = String::new();
    for i in 0..m.n_rows {
        for j in 0..m.n_cols {
            let z = m.get(i, j).to_c64();
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{},{}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

/// Write `content` to `path`, mapping failures into the crate error type.
pub fn write_text(path: &std::path::Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Read a whole file as UTF-8 text.
pub fn read_text(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
