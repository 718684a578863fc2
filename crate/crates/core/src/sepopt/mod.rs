//! Minimization of (measured) relative entropy over separable states.
//!
//! The feasible set is the convex hull of pure product states. Iterates are
//! stored as explicit convex combinations, so every returned σ is separable by
//! construction. Reported gaps are Frank-Wolfe duality gaps: `value − gap` is a
//! lower bound whenever the product-state oracle found the true minimum.

mod fw;
mod lmo;
mod objective;

use serde::Serialize;

use crate::entropy::vn_entropy;
use crate::error::{Error, Result};
use crate::matqi::{self, ComplexMatrix, ComplexVector, DensityMatrix, C64};
use crate::povm::Povm;

pub use lmo::{lmo_product, ProductVertex};
pub use objective::{log_derivative, log_kernel, rel_entropy_gradient, KERNEL_MERGE, Q_FLOOR};

use objective::{MeasuredObjective, Mixed, RelEntObjective};

pub const DEFAULT_TOL_GAP: f64 = 1e-4;
pub const DEFAULT_MAX_ITERS: usize = 5000;

#[derive(Debug, Clone)]
pub struct FwOptions {
    pub tol_gap: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub lmo_restarts: usize,
    pub line_search_iters: usize,
    pub away_steps: bool,
    pub record_trace: bool,
}

impl Default for FwOptions {
    fn default() -> Self {
        Self {
            tol_gap: DEFAULT_TOL_GAP,
            max_iters: DEFAULT_MAX_ITERS,
            seed: 0,
            lmo_restarts: 20,
            line_search_iters: 40,
            away_steps: true,
            record_trace: true,
        }
    }
}

impl FwOptions {
    pub fn new(tol_gap: f64, max_iters: usize, seed: u64) -> Self {
        Self { tol_gap, max_iters, seed, ..Self::default() }
    }
}

/// Convex combination `Σ w_i |a_i⟩⟨a_i| ⊗ |b_i⟩⟨b_i|`.
#[derive(Debug, Clone)]
pub struct SepPoint {
    dims: [usize; 2],
    weights: Vec<f64>,
    factors: Vec<(ComplexVector, ComplexVector)>,
}

impl SepPoint {
    pub fn new(dims: [usize; 2], weights: Vec<f64>, factors: Vec<(ComplexVector, ComplexVector)>) -> Result<Self> {
        if weights.len() != factors.len() || weights.is_empty() {
            return Err(Error::Shape("weights and factors must be nonempty and equal in length".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > matqi::TOL_TR {
            return Err(Error::BadTrace(total));
        }
        let mut normed = Vec::with_capacity(factors.len());
        for (a, b) in factors {
            if a.len() != dims[0] || b.len() != dims[1] {
                return Err(Error::Shape(format!("factor lengths ({}, {}) vs dims {:?}", a.len(), b.len(), dims)));
            }
            let (na, nb) = (a.norm(), b.norm());
            if na == 0.0 || nb == 0.0 {
                return Err(Error::Domain("zero factor vector".into()));
            }
            normed.push((a.unscale(na), b.unscale(nb)));
        }
        Ok(Self { dims, weights, factors: normed })
    }

    pub(crate) fn from_atoms_unchecked(dims: [usize; 2], atoms: Vec<(f64, ComplexVector, ComplexVector)>) -> Self {
        let (weights, factors) = atoms.into_iter().map(|(w, a, b)| (w, (a, b))).unzip();
        Self { dims, weights, factors }
    }

    /// `1/N` as the uniform mixture of product basis states.
    pub fn maximally_mixed(dims: [usize; 2]) -> Self {
        let n = dims[0] * dims[1];
        let basis = |d: usize, i: usize| {
            let mut v = ComplexVector::zeros(d);
            v[i] = C64::new(1.0, 0.0);
            v
        };
        let factors = (0..n).map(|k| (basis(dims[0], k / dims[1]), basis(dims[1], k % dims[1]))).collect();
        Self { dims, weights: vec![1.0 / n as f64; n], factors }
    }

    /// Mixes with the maximally mixed state: `x·self + (1−x)·1/N`.
    pub fn mix_with_identity(&self, x: f64) -> Self {
        let tau = Self::maximally_mixed(self.dims);
        let mut weights: Vec<f64> = self.weights.iter().map(|w| w * x).collect();
        weights.extend(tau.weights.iter().map(|w| w * (1.0 - x)));
        let mut factors = self.factors.clone();
        factors.extend(tau.factors);
        Self { dims: self.dims, weights, factors }
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, &ComplexVector, &ComplexVector)> {
        self.weights.iter().zip(&self.factors).map(|(&w, (a, b))| (w, a, b))
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.dims[0] * self.dims[1];
        let mut s = ComplexMatrix::zeros(n, n);
        for (w, a, b) in self.atoms() {
            let v = a.kronecker(b);
            s += (&v * v.adjoint()).scale(w);
        }
        s
    }

    pub fn to_density(&self) -> DensityMatrix {
        let mut m = self.matrix();
        let tr = m.trace().re;
        m.unscale_mut(tr);
        DensityMatrix::from_parts_unchecked(self.dims.to_vec(), matqi::hermitian_part(&m))
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceEntry {
    pub iter: usize,
    pub value: f64,
    pub gap: f64,
}

#[derive(Debug, Clone)]
pub struct FwResult {
    pub value: f64,
    pub sigma: SepPoint,
    pub duality_gap: f64,
    pub iterations: usize,
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
    pub flags: Vec<String>,
}

impl FwResult {
    /// Certified interval `[value − gap, value]`.
    pub fn interval(&self) -> (f64, f64) {
        (self.value - self.duality_gap, self.value)
    }

    pub fn lower_bound(&self) -> f64 {
        self.value - self.duality_gap
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "gap": self.duality_gap,
            "iterations": self.iterations,
            "converged": self.converged,
            "flags": self.flags,
            "trace": self.trace.iter().map(|t| serde_json::json!([t.iter, t.value, t.gap])).collect::<Vec<_>>(),
        })
    }

    fn from_outcome(o: fw::FwOutcome) -> Self {
        Self {
            value: o.value,
            sigma: o.point,
            duality_gap: o.gap,
            iterations: o.iterations,
            trace: o.trace,
            converged: o.converged,
            flags: o.flags,
        }
    }
}

fn bipartite_dims(rho: &DensityMatrix) -> Result<[usize; 2]> {
    match rho.dims() {
        [a, b] => Ok([*a, *b]),
        other => Err(Error::Shape(format!("expected a bipartite state, got dims {other:?}"))),
    }
}

fn check_opts(opts: &FwOptions) -> Result<()> {
    if !(opts.tol_gap > 0.0) {
        return Err(Error::Domain(format!("tol_gap must be positive, got {}", opts.tol_gap)));
    }
    if opts.max_iters == 0 {
        return Err(Error::Domain("max_iters must be at least 1".into()));
    }
    Ok(())
}

/// Relative entropy of entanglement `min_{σ∈SEP} D(ρ‖σ)` in bits.
pub fn fw_ree(rho: &DensityMatrix, tol_gap: f64, max_iters: usize, seed: u64) -> Result<FwResult> {
    fw_ree_with(rho, &FwOptions::new(tol_gap, max_iters, seed))
}

pub fn fw_ree_with(rho: &DensityMatrix, opts: &FwOptions) -> Result<FwResult> {
    check_opts(opts)?;
    let dims = bipartite_dims(rho)?;
    let obj = RelEntObjective::new(rho, dims);
    Ok(FwResult::from_outcome(fw::run(&obj, opts, None)))
}

/// `min_{σ∈SEP} D(M(ρ)‖M(σ))` for a single POVM.
pub fn fw_measured_ree(rho: &DensityMatrix, m: &Povm, tol_gap: f64, max_iters: usize, seed: u64) -> Result<FwResult> {
    fw_measured_ree_with(rho, m, &FwOptions::new(tol_gap, max_iters, seed))
}

pub fn fw_measured_ree_with(rho: &DensityMatrix, m: &Povm, opts: &FwOptions) -> Result<FwResult> {
    check_opts(opts)?;
    let dims = bipartite_dims(rho)?;
    if m.dims() != rho.dims() {
        return Err(Error::Shape(format!("POVM dims {:?} vs state dims {:?}", m.dims(), rho.dims())));
    }
    let obj = MeasuredObjective::new(m, rho, dims);
    Ok(FwResult::from_outcome(fw::run(&obj, opts, None)))
}

/// Minimization over `x·SEP + (1−x)·1/N`. The returned σ is the mixed point.
pub fn mixed_set_ree(rho: &DensityMatrix, x: f64, opts: &FwOptions) -> Result<FwResult> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("mixing parameter must lie in [0, 1], got {x}")));
    }
    check_opts(opts)?;
    let dims = bipartite_dims(rho)?;
    if x == 0.0 {
        let value = (rho.dim() as f64).log2() - vn_entropy(rho);
        return Ok(FwResult {
            value,
            sigma: SepPoint::maximally_mixed(dims),
            duality_gap: 0.0,
            iterations: 0,
            trace: vec![TraceEntry { iter: 0, value, gap: 0.0 }],
            converged: true,
            flags: Vec::new(),
        });
    }
    let obj = Mixed { inner: RelEntObjective::new(rho, dims), x };
    let mut res = FwResult::from_outcome(fw::run(&obj, opts, None));
    res.sigma = res.sigma.mix_with_identity(x);
    Ok(res)
}

/// Like [`mixed_set_ree`] with a measured objective.
pub fn mixed_set_measured_ree(rho: &DensityMatrix, m: &Povm, x: f64, opts: &FwOptions) -> Result<FwResult> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("mixing parameter must lie in [0, 1], got {x}")));
    }
    check_opts(opts)?;
    let dims = bipartite_dims(rho)?;
    let obj = Mixed { inner: MeasuredObjective::new(m, rho, dims), x };
    let mut res = FwResult::from_outcome(fw::run(&obj, opts, None));
    res.sigma = res.sigma.mix_with_identity(x);
    Ok(res)
}

#[derive(Debug, Clone, Serialize)]
pub struct LoccBound {
    /// `max_M` of the upper Frank-Wolfe values.
    pub value: f64,
    /// `max_M (value_M − gap_M)`.
    pub certified: f64,
    pub best_index: usize,
    /// Sum of the per-measurement gaps.
    pub slack: f64,
    pub per_measurement: Vec<(f64, f64)>,
}

/// Lower estimate of the one-way LOCC measured relative entropy of
/// entanglement, maximizing over the supplied measurement family.
pub fn onelocc_ree_lower_bound(rho: &DensityMatrix, family: &[Povm], per_m_tol: f64, seed: u64) -> Result<LoccBound> {
    let opts = FwOptions { record_trace: false, ..FwOptions::new(per_m_tol, 2000, seed) };
    onelocc_ree_lower_bound_with(rho, family, &opts)
}

pub fn onelocc_ree_lower_bound_with(rho: &DensityMatrix, family: &[Povm], opts: &FwOptions) -> Result<LoccBound> {
    if family.is_empty() {
        return Err(Error::Domain("empty measurement family".into()));
    }
    if let Some(bad) = family.iter().position(|m| !m.class().is_one_way_locc()) {
        return Err(Error::Domain(format!("family member {bad} is not tagged LO or ONE_LOCC")));
    }
    let mut per = Vec::with_capacity(family.len());
    for (i, m) in family.iter().enumerate() {
        let o = FwOptions { seed: opts.seed.wrapping_add(i as u64), ..opts.clone() };
        let r = fw_measured_ree_with(rho, m, &o)?;
        per.push((r.value, r.duality_gap));
    }
    let best_index = per
        .iter()
        .enumerate()
        .fold(0, |b, (i, p)| if p.0 > per[b].0 { i } else { b });
    Ok(LoccBound {
        value: per[best_index].0,
        certified: per.iter().map(|(v, g)| v - g).fold(f64::NEG_INFINITY, f64::max),
        best_index,
        slack: per.iter().map(|p| p.1).sum(),
        per_measurement: per,
    })
}
