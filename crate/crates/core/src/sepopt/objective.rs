//! Objectives minimized over the separable set and their gradients.

use std::f64::consts::LN_2;

use crate::entropy::SUPPORT_CUTOFF;
use crate::matqi::{eigh, trace_product, ComplexMatrix, DensityMatrix, HermEig};
use crate::povm::Povm;

/// Outcome probabilities of σ are floored here inside logs when `p_i > 0`.
pub const Q_FLOOR: f64 = 1e-15;
/// Eigenvalue pairs closer than this (relative) use the derivative of log.
pub const KERNEL_MERGE: f64 = 1e-8;

pub(crate) trait Objective: Sync {
    fn dims(&self) -> [usize; 2];
    /// Objective in bits; may be `+∞`.
    fn value(&self, sigma: &ComplexMatrix) -> f64;
    fn gradient(&self, sigma: &ComplexMatrix) -> ComplexMatrix;
    /// Whether a numerical safeguard changed the value at `sigma`.
    fn floor_active(&self, _sigma: &ComplexMatrix) -> bool {
        false
    }
}

/// Divided-difference kernel of the natural log at the eigenvalues `s`:
/// `(ln s_i − ln s_j)/(s_i − s_j)`, or `2/(s_i + s_j)` for near-equal pairs.
pub fn log_kernel(s: &[f64]) -> Vec<Vec<f64>> {
    let smax = s.iter().cloned().fold(0.0f64, f64::max);
    let floor = SUPPORT_CUTOFF * smax;
    let s: Vec<f64> = s.iter().map(|&v| v.max(floor)).collect();
    let n = s.len();
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (s[i], s[j]);
            k[i][j] = if (a - b).abs() < KERNEL_MERGE * smax {
                2.0 / (a + b)
            } else {
                (a.ln() - b.ln()) / (a - b)
            };
        }
    }
    k
}

/// Fréchet derivative of the natural log at σ (given by its eigensystem)
/// applied to `x`: `V (K ∘ V†xV) V†`.
pub fn log_derivative(eig: &HermEig, x: &ComplexMatrix) -> ComplexMatrix {
    let k = log_kernel(&eig.values);
    let v = &eig.vectors;
    let mut inner = v.adjoint() * x * v;
    let n = inner.nrows();
    for i in 0..n {
        for j in 0..n {
            inner[(i, j)] *= k[i][j];
        }
    }
    v * inner * v.adjoint()
}

/// Gradient of `σ ↦ D(ρ‖σ)` in bits: `−Dlog_σ[ρ] / ln 2`.
pub fn rel_entropy_gradient(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> ComplexMatrix {
    let eig = eigh(sigma);
    log_derivative(&eig, rho).unscale(-LN_2)
}

/// `σ ↦ D(ρ‖σ)`.
pub(crate) struct RelEntObjective {
    dims: [usize; 2],
    rho: ComplexMatrix,
    rho_neg_entropy: f64,
}

impl RelEntObjective {
    pub(crate) fn new(rho: &DensityMatrix, dims: [usize; 2]) -> Self {
        let eig = eigh(rho.matrix());
        let cut = SUPPORT_CUTOFF * eig.max_value();
        let rho_neg_entropy = eig.values.iter().filter(|&&v| v > cut).map(|v| v * v.log2()).sum();
        Self { dims, rho: rho.matrix().clone(), rho_neg_entropy }
    }
}

impl Objective for RelEntObjective {
    fn dims(&self) -> [usize; 2] {
        self.dims
    }

    fn value(&self, sigma: &ComplexMatrix) -> f64 {
        let eig = eigh(sigma);
        let cut = SUPPORT_CUTOFF * eig.max_value();
        let rho_cut = SUPPORT_CUTOFF;
        let mut cross = 0.0;
        for (i, &s) in eig.values.iter().enumerate() {
            let v = eig.vectors.column(i);
            let w = (v.adjoint() * &self.rho * v)[(0, 0)].re;
            if s <= cut {
                if w > rho_cut {
                    return f64::INFINITY;
                }
                continue;
            }
            cross += w * s.log2();
        }
        self.rho_neg_entropy - cross
    }

    fn gradient(&self, sigma: &ComplexMatrix) -> ComplexMatrix {
        rel_entropy_gradient(&self.rho, sigma)
    }
}

/// `σ ↦ D(M(ρ)‖M(σ))` for a fixed POVM.
pub(crate) struct MeasuredObjective<'a> {
    dims: [usize; 2],
    povm: &'a Povm,
    p: Vec<f64>,
}

impl<'a> MeasuredObjective<'a> {
    pub(crate) fn new(povm: &'a Povm, rho: &DensityMatrix, dims: [usize; 2]) -> Self {
        let p = povm.probabilities_raw(rho.matrix()).into_iter().map(|x| x.max(0.0)).collect();
        Self { dims, povm, p }
    }

    fn q(&self, sigma: &ComplexMatrix) -> Vec<f64> {
        self.povm.elements().iter().map(|m| trace_product(sigma, m).re).collect()
    }
}

impl Objective for MeasuredObjective<'_> {
    fn dims(&self) -> [usize; 2] {
        self.dims
    }

    fn value(&self, sigma: &ComplexMatrix) -> f64 {
        let q = self.q(sigma);
        self.p
            .iter()
            .zip(&q)
            .filter(|(&p, _)| p > 0.0)
            .map(|(&p, &q)| p * (p / q.max(Q_FLOOR)).log2())
            .sum()
    }

    fn gradient(&self, sigma: &ComplexMatrix) -> ComplexMatrix {
        let q = self.q(sigma);
        let n = sigma.nrows();
        let mut g = ComplexMatrix::zeros(n, n);
        for ((m, &p), &qi) in self.povm.elements().iter().zip(&self.p).zip(&q) {
            if p > 0.0 {
                g -= m.scale(p / qi.max(Q_FLOOR));
            }
        }
        g.unscale(LN_2)
    }

    fn floor_active(&self, sigma: &ComplexMatrix) -> bool {
        let q = self.q(sigma);
        self.p.iter().zip(&q).any(|(&p, &q)| p > 0.0 && q < Q_FLOOR)
    }
}

/// Restriction to the star-shaped set `x·G + (1−x)τ`: `σ ↦ f(xσ + (1−x)τ)`.
pub(crate) struct Mixed<O> {
    pub(crate) inner: O,
    pub(crate) x: f64,
}

impl<O: Objective> Mixed<O> {
    pub(crate) fn effective(&self, sigma: &ComplexMatrix) -> ComplexMatrix {
        let n = sigma.nrows();
        let tau = ComplexMatrix::identity(n, n).unscale(n as f64);
        sigma.scale(self.x) + tau.scale(1.0 - self.x)
    }
}

impl<O: Objective> Objective for Mixed<O> {
    fn dims(&self) -> [usize; 2] {
        self.inner.dims()
    }

    fn value(&self, sigma: &ComplexMatrix) -> f64 {
        self.inner.value(&self.effective(sigma))
    }

    fn gradient(&self, sigma: &ComplexMatrix) -> ComplexMatrix {
        self.inner.gradient(&self.effective(sigma)).scale(self.x)
    }

    fn floor_active(&self, sigma: &ComplexMatrix) -> bool {
        self.inner.floor_active(&self.effective(sigma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::qrel_entropy;
    use crate::matqi::{random_density, DensityMatrix};
    use approx::assert_abs_diff_eq;

    #[test]
    fn value_matches_entropy_module() {
        let rho = random_density(&[2, 2], 2, 1).unwrap();
        let sigma = random_density(&[2, 2], 4, 2).unwrap();
        let obj = RelEntObjective::new(&rho, [2, 2]);
        let a = obj.value(sigma.matrix());
        let b = qrel_entropy(&rho, &sigma).unwrap().value();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn kernel_diagonal_is_reciprocal() {
        let k = log_kernel(&[0.5, 0.25, 0.25 + 1e-12]);
        assert_abs_diff_eq!(k[0][0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k[1][2], 2.0 / (0.5 + 1e-12), epsilon = 1e-9);
        assert_abs_diff_eq!(k[0][1], (0.5f64.ln() - 0.25f64.ln()) / 0.25, epsilon = 1e-14);
    }

    #[test]
    fn gradient_at_maximally_mixed_is_scaled_rho() {
        // K = 1/s = N at τ, so the gradient is −N ρ / ln 2
        let rho = random_density(&[2, 2], 3, 5).unwrap();
        let tau = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        let g = rel_entropy_gradient(rho.matrix(), tau.matrix());
        let expected = rho.matrix().scale(-4.0 / LN_2);
        assert!((g - expected).iter().all(|z| z.norm() < 1e-12));
    }
}
