//! Linear minimization over pure product states: `min ⟨ab|G|ab⟩`.
//!
//! Alternating minimization: with `a` fixed the optimal `b` is the lowest
//! eigenvector of `(⟨a|⊗1) G (|a⟩⊗1)`, and symmetrically for `a`. Each sweep
//! cannot increase the value; the best of several seeded starts is kept.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matqi::{self, eigh, random_pure, rng_from_seed, ComplexMatrix, ComplexVector, ZERO};

const MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone)]
pub struct ProductVertex {
    pub a: ComplexVector,
    pub b: ComplexVector,
    /// `⟨ab|G|ab⟩`
    pub value: f64,
}

impl ProductVertex {
    pub fn joint(&self) -> ComplexVector {
        self.a.kronecker(&self.b)
    }
}

/// `(⟨a|⊗1) G (|a⟩⊗1)`
pub(crate) fn contract_a(g: &ComplexMatrix, a: &ComplexVector, db: usize) -> ComplexMatrix {
    let da = a.len();
    let mut out = ComplexMatrix::zeros(db, db);
    for i in 0..da {
        let ai = a[i].conj();
        if ai == ZERO {
            continue;
        }
        for k in 0..da {
            let w = ai * a[k];
            if w == ZERO {
                continue;
            }
            for j in 0..db {
                for l in 0..db {
                    out[(j, l)] += w * g[(i * db + j, k * db + l)];
                }
            }
        }
    }
    out
}

/// `(1⊗⟨b|) G (1⊗|b⟩)`
pub(crate) fn contract_b(g: &ComplexMatrix, b: &ComplexVector, da: usize) -> ComplexMatrix {
    let db = b.len();
    let mut out = ComplexMatrix::zeros(da, da);
    for j in 0..db {
        let bj = b[j].conj();
        if bj == ZERO {
            continue;
        }
        for l in 0..db {
            let w = bj * b[l];
            if w == ZERO {
                continue;
            }
            for i in 0..da {
                for k in 0..da {
                    out[(i, k)] += w * g[(i * db + j, k * db + l)];
                }
            }
        }
    }
    out
}

fn lowest(m: &ComplexMatrix) -> (f64, ComplexVector) {
    let eig = eigh(m);
    let n = eig.values.len();
    (eig.values[n - 1], eig.vectors.column(n - 1).into_owned())
}

fn alternate(g: &ComplexMatrix, dims: [usize; 2], a0: ComplexVector) -> ProductVertex {
    let (da, db) = (dims[0], dims[1]);
    let mut a = a0;
    let (_, mut b) = lowest(&contract_a(g, &a, db));
    let mut value = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let (_, new_a) = lowest(&contract_b(g, &b, da));
        a = new_a;
        let (v, new_b) = lowest(&contract_a(g, &a, db));
        b = new_b;
        let improved = value - v;
        value = v;
        if improved <= 1e-14 * (1.0 + v.abs()) {
            break;
        }
    }
    ProductVertex { a, b, value }
}

/// Best product vertex over the warm starts followed by `restarts` random
/// starts. Ties keep the first found.
pub(crate) fn lmo_with_rng<R: Rng + ?Sized>(
    g: &ComplexMatrix,
    dims: [usize; 2],
    restarts: usize,
    rng: &mut R,
    warm: &[ComplexVector],
) -> ProductVertex {
    let mut best: Option<ProductVertex> = None;
    let mut consider = |cand: ProductVertex| {
        if best.as_ref().is_none_or(|b| cand.value < b.value) {
            best = Some(cand);
        }
    };
    for a in warm {
        consider(alternate(g, dims, a.clone()));
    }
    for _ in 0..restarts.max(1) {
        let a = random_pure(&[dims[0]], rng)
            .expect("local dimension within cap")
            .amplitudes()
            .clone();
        consider(alternate(g, dims, a));
    }
    best.expect("at least one start")
}

/// Minimizes `⟨ab|g|ab⟩` over normalized `a ∈ C^{dA}`, `b ∈ C^{dB}`.
pub fn lmo_product(g: &ComplexMatrix, dims: [usize; 2], restarts: usize, seed: u64) -> Result<ProductVertex> {
    let n = dims[0] * dims[1];
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::Shape(format!("operator side {} vs dims {:?}", g.nrows(), dims)));
    }
    let scale = g.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let asym = matqi::hermitian_error(g);
    if asym > matqi::TOL_HERM * scale {
        return Err(Error::NotHermitian(asym));
    }
    Ok(lmo_with_rng(g, dims, restarts, &mut rng_from_seed(seed), &[]))
}
