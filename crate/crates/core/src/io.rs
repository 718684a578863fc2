//! JSON file formats for states and POVMs, and number formatting for CSV.
//!
//! Matrices are `{"dims": [...], "re": [[...]], "im": [[...]]}`, row-major.
//! POVMs are `{"class": "ONE_LOCC", "dims": [dA, dB], "alice": [...], "bob": [[...]]}`
//! or `{"class": "GENERIC", "dims": [...], "elements": [...]}` with each
//! element in the matrix format (`dims` optional on elements).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matqi::{ComplexMatrix, DensityMatrix, C64};
use crate::povm::{onelocc_to_povm, OneWayLoccPovm, Povm, PovmClass};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix, dims: Option<&[usize]>) -> Self {
        let rows = |f: fn(&C64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        Self { dims: dims.map(<[usize]>::to_vec), re: rows(|z| z.re), im: Some(rows(|z| z.im)) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.re.len();
        if self.re.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("\"re\" must be a square array".into()));
        }
        let zeros;
        let im = match &self.im {
            Some(im) => {
                if im.len() != n || im.iter().any(|r| r.len() != n) {
                    return Err(Error::Shape("\"im\" must match the shape of \"re\"".into()));
                }
                im
            }
            None => {
                zeros = vec![vec![0.0; n]; n];
                &zeros
            }
        };
        Ok(ComplexMatrix::from_fn(n, n, |i, j| C64::new(self.re[i][j], im[i][j])))
    }
}

pub fn density_to_json(rho: &DensityMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from_matrix(rho.matrix(), Some(rho.dims()))).expect("plain data serializes")
}

/// Parses and validates a state. Validation failures name every invariant
/// that failed.
pub fn parse_density(text: &str) -> Result<DensityMatrix> {
    let raw: MatrixJson = serde_json::from_str(text)?;
    let mat = raw.to_matrix()?;
    let dims = raw.dims.unwrap_or_else(|| vec![mat.nrows()]);
    let report = DensityMatrix::validate(&dims, &mat)?;
    if !report.is_valid() {
        return Err(Error::Invariant(format!(
            "state fails: {} (asymmetry {:.3e}, min eigenvalue {:.3e}, trace {})",
            report.failures().join(", "),
            report.hermitian_error,
            report.min_eigenvalue,
            report.trace
        )));
    }
    DensityMatrix::new(dims, mat)
}

pub fn read_density(path: &Path) -> Result<DensityMatrix> {
    parse_density(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct PovmJson {
    class: String,
    #[serde(default)]
    dims: Option<Vec<usize>>,
    #[serde(default)]
    alice: Option<Vec<MatrixJson>>,
    #[serde(default)]
    bob: Option<Vec<Vec<MatrixJson>>>,
    #[serde(default)]
    elements: Option<Vec<MatrixJson>>,
}

fn matrices(list: &[MatrixJson]) -> Result<Vec<ComplexMatrix>> {
    list.iter().map(MatrixJson::to_matrix).collect()
}

fn parse_class(s: &str) -> Result<PovmClass> {
    match s {
        "LO" => Ok(PovmClass::Lo),
        "ONE_LOCC" => Ok(PovmClass::OneLocc),
        "GENERIC" => Ok(PovmClass::Generic),
        "PPT" => Ok(PovmClass::Ppt),
        other => Err(Error::Parse(format!("unknown POVM class {other:?}"))),
    }
}

/// Parsed POVM file: one-way LOCC files keep their Alice/Bob structure.
#[derive(Debug, Clone)]
pub enum PovmFile {
    OneLocc(OneWayLoccPovm),
    Flat(Povm),
}

impl PovmFile {
    pub fn to_povm(&self) -> Result<Povm> {
        match self {
            PovmFile::OneLocc(m) => onelocc_to_povm(m),
            PovmFile::Flat(p) => Ok(p.clone()),
        }
    }
}

pub fn parse_povm(text: &str) -> Result<PovmFile> {
    let raw: PovmJson = serde_json::from_str(text)?;
    let class = parse_class(&raw.class)?;
    if class == PovmClass::OneLocc {
        let alice = matrices(raw.alice.as_deref().ok_or_else(|| Error::Parse("ONE_LOCC POVM needs \"alice\"".into()))?)?;
        let bob = raw
            .bob
            .as_ref()
            .ok_or_else(|| Error::Parse("ONE_LOCC POVM needs \"bob\"".into()))?
            .iter()
            .map(|b| matrices(b))
            .collect::<Result<Vec<_>>>()?;
        let dims = match raw.dims.as_deref() {
            Some([a, b]) => [*a, *b],
            Some(other) => return Err(Error::Shape(format!("ONE_LOCC dims must be [dA, dB], got {other:?}"))),
            None => [alice.first().map_or(0, |m| m.nrows()), bob.first().and_then(|b| b.first()).map_or(0, |m| m.nrows())],
        };
        return Ok(PovmFile::OneLocc(OneWayLoccPovm::new(dims, alice, bob)?));
    }
    let elements = matrices(raw.elements.as_deref().ok_or_else(|| Error::Parse("POVM needs \"elements\"".into()))?)?;
    let dims = raw.dims.unwrap_or_else(|| vec![elements.first().map_or(0, |m| m.nrows())]);
    Ok(PovmFile::Flat(Povm::new(dims, elements, class)?))
}

pub fn read_povm(path: &Path) -> Result<PovmFile> {
    parse_povm(&std::fs::read_to_string(path)?)
}

pub fn onelocc_to_json(m: &OneWayLoccPovm) -> serde_json::Value {
    let one = |x: &ComplexMatrix| MatrixJson::from_matrix(x, None);
    serde_json::json!({
        "class": "ONE_LOCC",
        "dims": m.dims(),
        "alice": m.alice().iter().map(one).collect::<Vec<_>>(),
        "bob": m.bob().iter().map(|b| b.iter().map(one).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn povm_to_json(m: &Povm) -> serde_json::Value {
    serde_json::json!({
        "class": m.class(),
        "dims": m.dims(),
        "elements": m.elements().iter().map(|x| MatrixJson::from_matrix(x, None)).collect::<Vec<_>>(),
    })
}

/// Formats with 12 significant digits, `%g` style; `inf`/`-inf`/`nan` spelled out.
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_digits(x, 12)
}

pub fn fmt_sig_digits(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
