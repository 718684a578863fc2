//! Entropic functionals in bits: von Neumann entropy, quantum and classical
//! relative entropy with support handling, conditional mutual information,
//! and `η(x) = −x log x`.
//!
//! Logarithms are base 2 throughout. Where natural-log constants are needed
//! (Pinsker-type bounds) they appear explicitly as `1/(2 ln 2)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matqi::{eigh, partial_trace, DensityMatrix};
use crate::povm::ProbDist;

/// Eigenvalues below this fraction of the largest one are outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Slack below zero tolerated for provably nonnegative quantities.
pub const TOL_NEG: f64 = 1e-9;

/// A real value in bits, or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn value(self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Slightly negative result of a nonnegative quantity: kept as computed,
    /// but reported here.
    pub fn is_flagged(self) -> bool {
        matches!(self, ExtendedReal::Finite(v) if v < 0.0 && v > -TOL_NEG)
    }

    /// Negative beyond the tolerance: a numerical failure.
    pub fn is_violation(self) -> bool {
        matches!(self, ExtendedReal::Finite(v) if v <= -TOL_NEG)
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::Finite(v)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => s.serialize_f64(*v),
            ExtendedReal::PosInfinity => s.serialize_str("inf"),
        }
    }
}

/// `Σ x log₂ x` over the entries above the support cutoff.
fn neg_entropy_of(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = SUPPORT_CUTOFF * max;
    values
        .iter()
        .filter(|&&v| v > cutoff)
        .map(|&v| v * v.log2())
        .sum()
}

/// Shannon entropy of a probability vector, in bits.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    let eig = eigh(rho.matrix());
    (-neg_entropy_of(&eig.values)).max(0.0)
}

/// `D(ρ‖σ)` in bits; `+∞` when `supp ρ ⊄ supp σ`.
///
/// Evaluated as `tr ρ log ρ − Σ_i ⟨i|ρ|i⟩ log s_i` in the eigenbasis of σ.
/// An eigenvector of σ below the support cutoff carrying more than the
/// cutoff of ρ's weight makes the result infinite.
pub fn qrel_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ExtendedReal> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape(format!(
            "relative entropy between sides {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let rho_eig = eigh(rho.matrix());
    let sig_eig = eigh(sigma.matrix());
    let first = neg_entropy_of(&rho_eig.values);
    let rho_cut = SUPPORT_CUTOFF * rho_eig.max_value().max(0.0);
    let sig_cut = SUPPORT_CUTOFF * sig_eig.max_value().max(0.0);
    let rho_m = rho.matrix();
    let mut cross = 0.0;
    for (i, &s) in sig_eig.values.iter().enumerate() {
        let v = sig_eig.vectors.column(i);
        let weight = (v.adjoint() * rho_m * v)[(0, 0)].re;
        if s <= sig_cut {
            if weight > rho_cut {
                return Ok(ExtendedReal::PosInfinity);
            }
            continue;
        }
        cross += weight * s.log2();
    }
    Ok(ExtendedReal::Finite(first - cross))
}

/// `I(A;B|E) = S(AE) + S(BE) − S(ABE) − S(E)` with A = subsystem 0,
/// B = subsystem 1 and E = all remaining subsystems.
pub fn cond_mutual_info(rho: &DensityMatrix) -> Result<f64> {
    let k = rho.dims().len();
    if k < 3 {
        return Err(Error::Shape(format!(
            "conditional mutual information needs A, B, E blocks; dims {:?}",
            rho.dims()
        )));
    }
    let e: Vec<usize> = (2..k).collect();
    cond_mutual_info_parts(rho, &[0], &[1], &e)
}

/// `I(A;B|E)` for explicit, disjoint subsystem groups.
pub fn cond_mutual_info_parts(rho: &DensityMatrix, a: &[usize], b: &[usize], e: &[usize]) -> Result<f64> {
    let join = |x: &[usize], y: &[usize]| {
        let mut v: Vec<usize> = x.iter().chain(y).copied().collect();
        v.sort_unstable();
        v
    };
    let abe = join(&join(a, b), e);
    let mut dedup = abe.clone();
    dedup.dedup();
    if dedup.len() != abe.len() || a.is_empty() || b.is_empty() {
        return Err(Error::Shape("subsystem groups must be nonempty and disjoint".into()));
    }
    let s = |keep: &[usize]| -> Result<f64> {
        if keep.is_empty() {
            return Ok(0.0);
        }
        Ok(vn_entropy(&partial_trace(rho, keep)?))
    };
    Ok(s(&join(a, e))? + s(&join(b, e))? - s(&abe)? - s(e)?)
}

/// `I(A;B) = S(A) + S(B) − S(AB)`.
pub fn mutual_info(rho: &DensityMatrix, a: &[usize], b: &[usize]) -> Result<f64> {
    cond_mutual_info_parts(rho, a, b, &[])
}

/// Classical relative entropy of raw probability vectors.
pub fn classical_rel_entropy_raw(p: &[f64], q: &[f64]) -> Result<ExtendedReal> {
    if p.len() != q.len() {
        return Err(Error::Shape(format!("distributions of length {} and {}", p.len(), q.len())));
    }
    let cut = SUPPORT_CUTOFF;
    let mut acc = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi <= cut {
            if pi > 0.0 && qi > cut {
                acc += pi * (pi / qi).log2();
            }
            continue;
        }
        if qi <= cut {
            return Ok(ExtendedReal::PosInfinity);
        }
        acc += pi * (pi / qi).log2();
    }
    Ok(ExtendedReal::Finite(acc))
}

/// `D(p‖q)` in bits.
pub fn classical_rel_entropy(p: &ProbDist, q: &ProbDist) -> Result<ExtendedReal> {
    classical_rel_entropy_raw(p.probs(), q.probs())
}

/// `η(x) = −x log₂ x` on `[0, 1]`.
pub fn eta(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("eta argument {x} outside [0, 1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2())
}

/// `1/(2 ln 2)`: classical Pinsker constant in bits.
pub const PINSKER_BITS: f64 = 1.0 / (2.0 * std::f64::consts::LN_2);
