//! Dense complex-matrix core: density matrices, subsystem bookkeeping,
//! partial trace and transpose, and Hermitian functional calculus.
//!
//! Subsystems are always addressed by explicit index lists into `dims`.
//! Index order is row-major over the subsystems, first subsystem most
//! significant, so `|i j⟩` on dims `[dA, dB]` sits at `i * dB + j`.

pub(crate) mod random;
mod states;

pub use random::{random_density, random_density_with, random_pure, random_unitary, rng_from_seed};
pub use states::{ghz, isotropic, max_entangled, max_entangled_vector, purify};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

pub const TOL_HERM: f64 = 1e-10;
pub const TOL_TR: f64 = 1e-10;
pub const TOL_PSD: f64 = 1e-9;
pub const TOL_EIG: f64 = 1e-10;
/// Largest matrix side any constructor will build.
pub const DIM_CAP: usize = 4096;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub(crate) fn check_cap(dim: usize) -> Result<()> {
    if dim > DIM_CAP {
        Err(Error::DimensionCap { dim, cap: DIM_CAP })
    } else {
        Ok(())
    }
}

fn total_dim(dims: &[usize]) -> Result<usize> {
    let mut total: usize = 1;
    for &d in dims {
        if d == 0 {
            return Err(Error::Shape("zero subsystem dimension".into()));
        }
        total = total
            .checked_mul(d)
            .ok_or(Error::DimensionCap { dim: usize::MAX, cap: DIM_CAP })?;
    }
    Ok(total)
}

/// Which validation checks a candidate density matrix failed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub hermitian_error: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
    pub finite: bool,
}

impl ValidationReport {
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_error <= TOL_HERM
    }
    pub fn is_unit_trace(&self) -> bool {
        (self.trace - 1.0).abs() <= TOL_TR
    }
    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue >= -TOL_PSD
    }
    pub fn is_valid(&self) -> bool {
        self.finite && self.is_hermitian() && self.is_unit_trace() && self.is_psd()
    }

    /// Names of the failed invariants, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.finite {
            out.push("finite");
        }
        if !self.is_hermitian() {
            out.push("hermitian");
        }
        if !self.is_psd() {
            out.push("psd");
        }
        if !self.is_unit_trace() {
            out.push("trace");
        }
        out
    }

    fn into_error(self) -> Error {
        if !self.finite {
            Error::NonFinite
        } else if !self.is_hermitian() {
            Error::NotHermitian(self.hermitian_error)
        } else if !self.is_psd() {
            Error::NotPsd(self.min_eigenvalue)
        } else {
            Error::BadTrace(self.trace)
        }
    }
}

/// A quantum state: Hermitian, PSD, unit trace, with a subsystem signature.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps `mat`. The stored matrix is symmetrized.
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let report = Self::validate(&dims, &mat)?;
        if !report.is_valid() {
            return Err(report.into_error());
        }
        Ok(Self { dims, mat: hermitian_part(&mat) })
    }

    /// Checks shape and returns the full invariant report without failing on
    /// the numerical invariants.
    pub fn validate(dims: &[usize], mat: &ComplexMatrix) -> Result<ValidationReport> {
        let n = total_dim(dims)?;
        check_cap(n)?;
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, dims {:?} require {n}x{n}",
                mat.nrows(),
                mat.ncols(),
                dims
            )));
        }
        let finite = mat.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Ok(ValidationReport { finite, ..Default::default() });
        }
        let herm = hermitian_error(mat);
        let trace = mat.trace().re;
        let min_eig = eigh(&hermitian_part(mat))
            .values
            .last()
            .copied()
            .unwrap_or(0.0);
        Ok(ValidationReport { hermitian_error: herm, trace, min_eigenvalue: min_eig, finite })
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), mat.nrows());
        Self { dims, mat }
    }

    /// Normalizes a PSD matrix by its trace. Used by constructors whose
    /// output is PSD by construction.
    pub(crate) fn from_psd_normalized(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let tr = mat.trace().re;
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::BadTrace(tr));
        }
        let mat = hermitian_part(&mat).unscale(tr);
        Ok(Self { dims, mat })
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let n = total_dim(&dims)?;
        check_cap(n)?;
        let mat = ComplexMatrix::identity(n, n).unscale(n as f64);
        Ok(Self { dims, mat })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let v = &psi.amplitudes;
        Self { dims: psi.dims.clone(), mat: v * v.adjoint() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Same matrix under a different subsystem signature with equal total
    /// dimension, e.g. merging `[2, 2, 2]` into `[2, 4]`.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        if total_dim(&dims)? != self.dim() {
            return Err(Error::Shape(format!(
                "dims {:?} do not match matrix side {}",
                dims,
                self.dim()
            )));
        }
        Ok(Self { dims, mat: self.mat.clone() })
    }

    /// Convex mixture `(1 - t) self + t other`.
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!("dims {:?} vs {:?}", self.dims, other.dims)));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("mixing weight {t} outside [0, 1]")));
        }
        let mat = self.mat.scale(1.0 - t) + other.mat.scale(t);
        Ok(Self { dims: self.dims.clone(), mat })
    }
}

/// A normalized state vector with a subsystem signature.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amplitudes: ComplexVector,
}

impl PureState {
    pub fn new(dims: Vec<usize>, amplitudes: ComplexVector) -> Result<Self> {
        let n = total_dim(&dims)?;
        check_cap(n)?;
        if amplitudes.len() != n {
            return Err(Error::Shape(format!(
                "{} amplitudes for dims {:?}",
                amplitudes.len(),
                dims
            )));
        }
        let norm = amplitudes.norm_squared();
        if (norm - 1.0).abs() > TOL_TR {
            return Err(Error::Domain(format!("state vector has squared norm {norm}")));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(dims: Vec<usize>, amplitudes: ComplexVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) {
            return Err(Error::Domain("zero state vector".into()));
        }
        Self::new(dims, amplitudes.unscale(norm))
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let n = total_dim(&dims)?;
        check_cap(n)?;
        if index >= n {
            return Err(Error::Domain(format!("basis index {index} >= {n}")));
        }
        let mut v = ComplexVector::zeros(n);
        v[index] = ONE;
        Ok(Self { dims, amplitudes: v })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

pub fn hermitian_error(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(m + m†) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Kronecker product.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Tensor product of two states; dims are concatenated.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .ok_or(Error::DimensionCap { dim: usize::MAX, cap: DIM_CAP })?;
    check_cap(dim)?;
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    Ok(DensityMatrix::from_parts_unchecked(dims, kron(&a.mat, &b.mat)))
}

/// `n`-fold tensor power of a state.
pub fn tensor_power(rho: &DensityMatrix, n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::Domain("tensor power of zero copies".into()));
    }
    let mut out = rho.clone();
    for _ in 1..n {
        out = tensor(&out, rho)?;
    }
    Ok(out)
}

fn check_subsystems(dims: &[usize], idx: &[usize]) -> Result<()> {
    for &i in idx {
        if i >= dims.len() {
            return Err(Error::Shape(format!(
                "subsystem index {i} out of range for dims {:?}",
                dims
            )));
        }
    }
    Ok(())
}

/// Per full index: the index into the kept subsystems and into the traced
/// subsystems.
fn split_indices(dims: &[usize], keep: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let n: usize = dims.iter().product();
    let mut kept = vec![0usize; n];
    let mut traced = vec![0usize; n];
    for idx in 0..n {
        let mut rem = idx;
        let mut k = 0usize;
        let mut t = 0usize;
        let mut k_stride = 1usize;
        let mut t_stride = 1usize;
        for (s, &d) in dims.iter().enumerate().rev() {
            let digit = rem % d;
            rem /= d;
            if keep[s] {
                k += digit * k_stride;
                k_stride *= d;
            } else {
                t += digit * t_stride;
                t_stride *= d;
            }
        }
        kept[idx] = k;
        traced[idx] = t;
    }
    (kept, traced)
}

/// Partial trace of an arbitrary operator. Returns the reduced operator
/// and its dims (kept subsystems in their original order).
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix, Vec<usize>)> {
    check_subsystems(dims, keep)?;
    if keep.is_empty() {
        return Err(Error::Shape("partial trace keeping no subsystem; use the trace".into()));
    }
    let n = total_dim(dims)?;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Shape(format!("matrix side {} vs dims {:?}", m.nrows(), dims)));
    }
    let mut mask = vec![false; dims.len()];
    for &k in keep {
        mask[k] = true;
    }
    let out_dims: Vec<usize> = dims
        .iter()
        .zip(&mask)
        .filter(|(_, &k)| k)
        .map(|(&d, _)| d)
        .collect();
    let out_n: usize = out_dims.iter().product();
    let traced_n = n / out_n;
    let (kept, traced) = split_indices(dims, &mask);
    let mut groups: Vec<Vec<usize>> = vec![Vec::with_capacity(out_n); traced_n];
    for idx in 0..n {
        groups[traced[idx]].push(idx);
    }
    let mut out = ComplexMatrix::zeros(out_n, out_n);
    for group in &groups {
        for &i in group {
            for &j in group {
                out[(kept[i], kept[j])] += m[(i, j)];
            }
        }
    }
    Ok((out, out_dims))
}

/// Reduced state on the subsystems listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let (mat, dims) = partial_trace_matrix(&rho.mat, &rho.dims, keep)?;
    Ok(DensityMatrix::from_parts_unchecked(dims, hermitian_part(&mat)))
}

/// Transpose on one subsystem. An exact index permutation, so applying it
/// twice returns the input bit for bit.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    party: usize,
) -> Result<ComplexMatrix> {
    check_subsystems(dims, &[party])?;
    let n = total_dim(dims)?;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Shape(format!("matrix side {} vs dims {:?}", m.nrows(), dims)));
    }
    let stride: usize = dims[party + 1..].iter().product();
    let d = dims[party];
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let a = (i / stride) % d;
        for j in 0..n {
            let b = (j / stride) % d;
            let ii = i - a * stride + b * stride;
            let jj = j - b * stride + a * stride;
            out[(ii, jj)] = m[(i, j)];
        }
    }
    Ok(out)
}

pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(&rho.mat, &rho.dims, party)
}

/// Reorders subsystems: output subsystem `q` is input subsystem `perm[q]`.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<(ComplexMatrix, Vec<usize>)> {
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len() {
        return Err(Error::Shape("permutation length mismatch".into()));
    }
    for &p in perm {
        if p >= dims.len() || seen[p] {
            return Err(Error::Shape(format!("{:?} is not a permutation", perm)));
        }
        seen[p] = true;
    }
    let n = total_dim(dims)?;
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    // map: old index -> new index
    let mut old_strides = vec![1usize; dims.len()];
    for s in (0..dims.len().saturating_sub(1)).rev() {
        old_strides[s] = old_strides[s + 1] * dims[s + 1];
    }
    let mut map = vec![0usize; n];
    let mut digits = vec![0usize; dims.len()];
    for (new_idx, slot) in map.iter_mut().enumerate() {
        let mut rem = new_idx;
        for q in (0..new_dims.len()).rev() {
            digits[q] = rem % new_dims[q];
            rem /= new_dims[q];
        }
        *slot = perm
            .iter()
            .zip(&digits)
            .map(|(&p, &dg)| dg * old_strides[p])
            .sum();
    }
    let out = ComplexMatrix::from_fn(n, n, |i, j| m[(map[i], map[j])]);
    Ok((out, new_dims))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermEig {
    /// `V f(Λ) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = f(v);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Eigendecomposition without the Hermiticity check; the input is
/// symmetrized first.
pub(crate) fn eigh(m: &ComplexMatrix) -> HermEig {
    let n = m.nrows();
    if n == 0 {
        return HermEig { values: vec![], vectors: ComplexMatrix::zeros(0, 0) };
    }
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    HermEig { values, vectors }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = m.iter().fold(1.0f64, |acc, z| acc.max(z.norm()));
    let asym = hermitian_error(m);
    if asym > TOL_HERM * scale {
        return Err(Error::NotHermitian(asym));
    }
    Ok(eigh(m))
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn herm_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(herm_eig(m)?.values)
}

/// `f(m)` for Hermitian `m`.
pub fn herm_fn(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    Ok(herm_eig(m)?.apply(f))
}

/// Square root of a PSD matrix; tiny negative eigenvalues are clipped.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    herm_fn(m, |x| x.max(0.0).sqrt())
}

/// Trace norm of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(herm_eig(m)?.values.iter().map(|v| v.abs()).sum())
}

/// `‖ρ − σ‖₁` (no factor 1/2).
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape(format!("sides {} vs {}", rho.dim(), sigma.dim())));
    }
    trace_norm(&(rho.matrix() - sigma.matrix()))
}

/// Smallest eigenvalue of the partial transpose on `party`.
pub fn min_pt_eigenvalue(m: &ComplexMatrix, dims: &[usize], party: usize) -> Result<f64> {
    let pt = partial_transpose_matrix(m, dims, party)?;
    Ok(eigh(&pt).min_value())
}

/// `tr(a b)` for square matrices of equal side.
pub(crate) fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `⟨v| m |v⟩`.
pub(crate) fn expectation(m: &ComplexMatrix, v: &ComplexVector) -> f64 {
    (v.adjoint() * m * v)[(0, 0)].re
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn basis_state(dims: &[usize], idx: usize) -> DensityMatrix {
        PureState::basis(dims.to_vec(), idx).unwrap().to_density()
    }

    fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    #[test]
    fn tensor_of_mixed_qubits_is_mixed() {
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        let out = tensor(&half, &half).unwrap();
        assert_eq!(out.dims(), &[2, 2]);
        let quarter = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(max_abs_diff(out.matrix(), quarter.matrix()) < 1e-15);
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = basis_state(&[2], 0);
        let one = basis_state(&[2], 1);
        let out = tensor(&zero, &one).unwrap();
        let expected = basis_state(&[2, 2], 1);
        assert_eq!(out.matrix(), expected.matrix());
    }

    #[test]
    fn tensor_of_bell_pairs_is_rank_one() {
        let phi = max_entangled(2).unwrap();
        let out = tensor(&phi, &phi).unwrap();
        assert_abs_diff_eq!(out.matrix().trace().re, 1.0, epsilon = 1e-14);
        let eig = herm_eig(out.matrix()).unwrap();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-12);
        assert!(eig.values[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn tensor_respects_cap() {
        let big = DensityMatrix::maximally_mixed(vec![64]).unwrap();
        let huge = DensityMatrix::maximally_mixed(vec![65]).unwrap();
        assert!(tensor(&big, &big).is_ok());
        assert!(matches!(tensor(&big, &huge), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn partial_trace_of_bell_is_mixed() {
        let phi = max_entangled(2).unwrap();
        let a = partial_trace(&phi, &[0]).unwrap();
        assert_eq!(a.dims(), &[2]);
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!(max_abs_diff(a.matrix(), half.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_of_ghz_by_index_contraction() {
        let ghz3 = ghz(3).unwrap();
        let ab = partial_trace(&ghz3, &[0, 1]).unwrap();
        // direct contraction over the third index
        let full = ghz3.matrix();
        let mut oracle = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                for e in 0..2 {
                    oracle[(i, j)] += full[(2 * i + e, 2 * j + e)];
                }
            }
        }
        assert!(max_abs_diff(ab.matrix(), &oracle) < 1e-15);
        let expected = (basis_state(&[2, 2], 0).into_matrix()
            + basis_state(&[2, 2], 3).into_matrix())
        .scale(0.5);
        assert!(max_abs_diff(ab.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_empty_keep() {
        let phi = max_entangled(2).unwrap();
        assert!(matches!(partial_trace(&phi, &[]), Err(Error::Shape(_))));
        assert!(partial_trace(&phi, &[2]).is_err());
    }

    #[test]
    fn partial_trace_middle_subsystem() {
        let r1 = random_density(&[2], 2, 1).unwrap();
        let r2 = random_density(&[3], 3, 2).unwrap();
        let r3 = random_density(&[2], 2, 3).unwrap();
        let all = tensor(&tensor(&r1, &r2).unwrap(), &r3).unwrap();
        let mid = partial_trace(&all, &[1]).unwrap();
        assert!(max_abs_diff(mid.matrix(), r2.matrix()) < 1e-14);
        let outer = partial_trace(&all, &[0, 2]).unwrap();
        let expected = tensor(&r1, &r3).unwrap();
        assert!(max_abs_diff(outer.matrix(), expected.matrix()) < 1e-14);
    }

    #[test]
    fn partial_transpose_of_bell_has_negative_eigenvalue() {
        let phi = max_entangled(2).unwrap();
        let pt = partial_transpose(&phi, 1).unwrap();
        let eig = herm_eig(&pt).unwrap();
        assert_abs_diff_eq!(eig.min_value(), -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(pt.trace().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_transpose_of_product_is_psd() {
        let a = random_density(&[2], 2, 7).unwrap();
        let b = random_density(&[3], 3, 8).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let pt = partial_transpose(&ab, 1).unwrap();
        assert!(herm_eig(&pt).unwrap().min_value() > -1e-12);
    }

    #[test]
    fn isotropic_ppt_boundary() {
        let iso = isotropic(2, 1.0 / 3.0).unwrap();
        let min = min_pt_eigenvalue(iso.matrix(), iso.dims(), 1).unwrap();
        assert_abs_diff_eq!(min, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn herm_eig_known_spectra() {
        let eye = ComplexMatrix::identity(3, 3);
        assert!(herm_eig(&eye).unwrap().values.iter().all(|v| (v - 1.0).abs() < 1e-14));
        let phi = max_entangled(2).unwrap();
        let vals = herm_eig(phi.matrix()).unwrap().values;
        assert_abs_diff_eq!(vals[0], 1.0, epsilon = 1e-14);
        assert!(vals[1..].iter().all(|v| v.abs() < 1e-14));
        // p Φ + (1 - p) I/4 has spectrum {p + (1-p)/4, (1-p)/4 x3}
        let iso = isotropic(2, 0.5).unwrap();
        let vals = herm_eig(iso.matrix()).unwrap().values;
        for (v, e) in vals.iter().zip([0.625, 0.125, 0.125, 0.125]) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-14);
        }
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn permute_swaps_product_factors() {
        let a = random_density(&[2], 2, 11).unwrap();
        let b = random_density(&[3], 3, 12).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let ba = tensor(&b, &a).unwrap();
        let (m, dims) = permute_subsystems(ab.matrix(), ab.dims(), &[1, 0]).unwrap();
        assert_eq!(dims, vec![3, 2]);
        assert!(max_abs_diff(&m, ba.matrix()) < 1e-15);
    }

    #[test]
    fn validation_names_failures() {
        let mut m = ComplexMatrix::identity(2, 2);
        m[(1, 1)] = C64::new(-0.5, 0.0);
        let rep = DensityMatrix::validate(&[2], &m).unwrap();
        assert_eq!(rep.failures(), vec!["psd", "trace"]);
        assert!(matches!(DensityMatrix::new(vec![2], m), Err(Error::NotPsd(_))));
    }

    #[test]
    fn trace_norm_of_orthogonal_states() {
        let d = trace_distance(&basis_state(&[2], 0), &basis_state(&[2], 1)).unwrap();
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-14);
    }
}
