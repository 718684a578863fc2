use super::{eigh, ComplexMatrix, ComplexVector, DensityMatrix, PureState, C64, ONE};
use crate::error::{Error, Result};

/// `(1/√d) Σ_i |ii⟩`.
pub fn max_entangled_vector(d: usize) -> Result<ComplexVector> {
    if d < 2 {
        return Err(Error::Domain(format!("maximally entangled state needs d >= 2, got {d}")));
    }
    super::check_cap(d * d)?;
    let mut v = ComplexVector::zeros(d * d);
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        v[i * d + i] = amp;
    }
    Ok(v)
}

/// The rank-one projector `Φ_d` on dims `[d, d]`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    let v = max_entangled_vector(d)?;
    Ok(DensityMatrix::from_parts_unchecked(vec![d, d], &v * v.adjoint()))
}

/// `p Φ_d + (1 − p) 1/d²`, valid for `p ∈ [−1/(d²−1), 1]`.
pub fn isotropic(d: usize, p: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::Domain(format!("isotropic state needs d >= 2, got {d}")));
    }
    let lo = -1.0 / ((d * d - 1) as f64);
    if !(p >= lo && p <= 1.0) {
        return Err(Error::Domain(format!("isotropic weight {p} outside [{lo}, 1]")));
    }
    let n = d * d;
    let phi = max_entangled(d)?.into_matrix();
    let mat = phi.scale(p) + ComplexMatrix::identity(n, n).scale((1.0 - p) / n as f64);
    Ok(DensityMatrix::from_parts_unchecked(vec![d, d], mat))
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
pub fn ghz(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::Domain("GHZ needs at least two qubits".into()));
    }
    let dim = 1usize << n;
    super::check_cap(dim)?;
    let mut v = ComplexVector::zeros(dim);
    v[0] = ONE.unscale(2f64.sqrt());
    v[dim - 1] = ONE.unscale(2f64.sqrt());
    Ok(PureState::new(vec![2; n], v)?.to_density())
}

/// Purification `Σ √λ_i |v_i⟩|i⟩`; the reference dimension is the numerical
/// rank of `rho`, appended as the last subsystem.
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    let eig = eigh(rho.matrix());
    let cutoff = 1e-12 * eig.max_value().max(0.0);
    let rank = eig.values.iter().filter(|&&v| v > cutoff).count().max(1);
    let n = rho.dim();
    let mut amps = ComplexVector::zeros(n * rank);
    for (r, &lam) in eig.values.iter().take(rank).enumerate() {
        let w = lam.max(0.0).sqrt();
        for i in 0..n {
            amps[i * rank + r] = eig.vectors[(i, r)] * w;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(rank);
    PureState::normalized(dims, amps)
}
