//! Python bindings. States and POVMs cross the boundary as nested lists of
//! complex numbers; structured results come back as plain dicts.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use entkit::entropy::{self, ExtendedReal};
use entkit::harness::{self, CheckReport, HarnessConfig};
use entkit::io::{self, PovmFile};
use entkit::matqi::{self, ComplexMatrix};
use entkit::povm::{self, OneWayLoccPovm, Povm as CorePovm};
use entkit::sepopt::{self, FwOptions, FwResult};
use entkit::steinsim;
use entkit::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err(format!("expected a square {n}x{n} matrix")));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn from_matrix(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn bits(x: ExtendedReal) -> f64 {
    x.value()
}

/// Density matrix on a tensor product of subsystems.
#[pyclass(name = "DensityMatrix", module = "entkit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDensity(matqi::DensityMatrix);

#[pymethods]
impl PyDensity {
    #[new]
    fn new(matrix: Vec<Vec<Complex64>>, dims: Vec<usize>) -> PyResult<Self> {
        Ok(Self(matqi::DensityMatrix::new(dims, to_matrix(matrix)?).map_err(err)?))
    }

    #[staticmethod]
    fn max_entangled(d: usize) -> PyResult<Self> {
        Ok(Self(matqi::max_entangled(d).map_err(err)?))
    }

    #[staticmethod]
    fn isotropic(d: usize, p: f64) -> PyResult<Self> {
        Ok(Self(matqi::isotropic(d, p).map_err(err)?))
    }

    #[staticmethod]
    fn maximally_mixed(dims: Vec<usize>) -> PyResult<Self> {
        Ok(Self(matqi::DensityMatrix::maximally_mixed(dims).map_err(err)?))
    }

    #[staticmethod]
    #[pyo3(signature = (dims, rank, seed))]
    fn random(dims: Vec<usize>, rank: usize, seed: u64) -> PyResult<Self> {
        Ok(Self(matqi::random_density(&dims, rank, seed).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(io::parse_density(text).map_err(err)?))
    }

    fn to_json(&self) -> String {
        io::density_to_json(&self.0).to_string()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn purity(&self) -> f64 {
        self.0.purity()
    }

    fn to_list(&self) -> Vec<Vec<Complex64>> {
        from_matrix(self.0.matrix())
    }

    /// `(1 − t)·self + t·other`.
    fn mix(&self, other: &PyDensity, t: f64) -> PyResult<Self> {
        Ok(Self(self.0.mix(&other.0, t).map_err(err)?))
    }

    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(Self(matqi::partial_trace(&self.0, &keep).map_err(err)?))
    }

    fn twirl(&self) -> PyResult<Self> {
        Ok(Self(povm::twirl_state(&self.0).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dims={:?})", self.0.dims())
    }
}

#[derive(Clone)]
enum PovmKind {
    OneLocc(OneWayLoccPovm, CorePovm),
    Flat(CorePovm),
}

/// Measurement on a bipartite system, tagged with its class.
#[pyclass(name = "Povm", module = "entkit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPovm(PovmKind);

impl PyPovm {
    fn flat(&self) -> &CorePovm {
        match &self.0 {
            PovmKind::OneLocc(_, p) | PovmKind::Flat(p) => p,
        }
    }

    fn from_onelocc(m: OneWayLoccPovm) -> PyResult<Self> {
        let p = povm::onelocc_to_povm(&m).map_err(err)?;
        Ok(Self(PovmKind::OneLocc(m, p)))
    }
}

#[pymethods]
impl PyPovm {
    /// Flat POVM from explicit elements. `class` is one of LO, ONE_LOCC,
    /// GENERIC, PPT.
    #[new]
    #[pyo3(signature = (elements, dims, class = "GENERIC"))]
    fn new(elements: Vec<Vec<Vec<Complex64>>>, dims: Vec<usize>, class: &str) -> PyResult<Self> {
        let class = serde_json::from_value(serde_json::Value::from(class))
            .map_err(|_| PyValueError::new_err(format!("unknown POVM class {class:?}")))?;
        let elements = elements.into_iter().map(to_matrix).collect::<PyResult<Vec<_>>>()?;
        Ok(Self(PovmKind::Flat(CorePovm::new(dims, elements, class).map_err(err)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse_povm(text).map_err(err)? {
            PovmFile::OneLocc(m) => Self::from_onelocc(m),
            PovmFile::Flat(p) => Ok(Self(PovmKind::Flat(p))),
        }
    }

    fn to_json(&self) -> String {
        match &self.0 {
            PovmKind::OneLocc(m, _) => io::onelocc_to_json(m),
            PovmKind::Flat(p) => io::povm_to_json(p),
        }
        .to_string()
    }

    #[staticmethod]
    fn computational_basis(d_a: usize, d_b: usize) -> PyResult<Self> {
        Self::from_onelocc(povm::computational_basis_onelocc(d_a, d_b).map_err(err)?)
    }

    #[staticmethod]
    fn twirl_basis(d: usize) -> PyResult<Self> {
        Ok(Self(PovmKind::Flat(povm::twirl_basis_povm(d).map_err(err)?)))
    }

    #[staticmethod]
    fn iso_two_outcome(d: usize) -> PyResult<Self> {
        Ok(Self(PovmKind::Flat(povm::iso_two_outcome_povm(d).map_err(err)?)))
    }

    #[staticmethod]
    fn random_onelocc(dims: (usize, usize), k_outcomes: usize, l_outcomes: usize, seed: u64) -> PyResult<Self> {
        Self::from_onelocc(povm::random_onelocc_povm([dims.0, dims.1], k_outcomes, l_outcomes, seed).map_err(err)?)
    }

    #[getter]
    fn class_name(&self) -> String {
        serde_json::to_value(self.flat().class()).expect("class serializes").as_str().unwrap_or_default().to_string()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.flat().dims().to_vec()
    }

    fn __len__(&self) -> usize {
        self.flat().len()
    }

    /// Outcome probabilities on `rho`.
    fn apply(&self, rho: &PyDensity) -> PyResult<Vec<f64>> {
        Ok(povm::apply_povm(self.flat(), &rho.0).map_err(err)?.probs().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Povm(class={}, outcomes={})", self.class_name(), self.flat().len())
    }
}

/// Frank-Wolfe outcome with its separable minimizer.
#[pyclass(name = "FwResult", module = "entkit", frozen)]
struct PyFwResult(FwResult);

#[pymethods]
impl PyFwResult {
    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn gap(&self) -> f64 {
        self.0.duality_gap
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.0.iterations
    }

    #[getter]
    fn converged(&self) -> bool {
        self.0.converged
    }

    #[getter]
    fn flags(&self) -> Vec<String> {
        self.0.flags.clone()
    }

    /// Certified `(value − gap, value)`.
    fn interval(&self) -> (f64, f64) {
        self.0.interval()
    }

    /// Separable minimizer as a density matrix.
    fn sigma(&self) -> PyDensity {
        PyDensity(self.0.sigma.to_density())
    }

    /// Weights and product factors `(w, a, b)` of the minimizer.
    fn atoms(&self) -> Vec<(f64, Vec<Complex64>, Vec<Complex64>)> {
        self.0.sigma.atoms().map(|(w, a, b)| (w, a.iter().copied().collect(), b.iter().copied().collect())).collect()
    }

    fn __repr__(&self) -> String {
        format!("FwResult(value={:.6}, gap={:.2e}, converged={})", self.0.value, self.0.duality_gap, self.0.converged)
    }
}

fn fw_opts(tol: f64, max_iters: usize, seed: u64) -> FwOptions {
    FwOptions { record_trace: false, ..FwOptions::new(tol, max_iters, seed) }
}

#[pyfunction]
fn vn_entropy(rho: &PyDensity) -> f64 {
    entropy::vn_entropy(&rho.0)
}

/// `D(ρ‖σ)` in bits; `inf` when the support condition fails.
#[pyfunction]
fn rel_entropy(rho: &PyDensity, sigma: &PyDensity) -> PyResult<f64> {
    Ok(bits(entropy::qrel_entropy(&rho.0, &sigma.0).map_err(err)?))
}

/// `I(A;B|E)` of a tripartite state.
#[pyfunction]
fn cond_mutual_info(rho: &PyDensity) -> PyResult<f64> {
    entropy::cond_mutual_info(&rho.0).map_err(err)
}

#[pyfunction]
fn trace_distance(rho: &PyDensity, sigma: &PyDensity) -> PyResult<f64> {
    matqi::trace_distance(&rho.0, &sigma.0).map_err(err)
}

#[pyfunction]
fn measured_rel_entropy(m: &PyPovm, rho: &PyDensity, sigma: &PyDensity) -> PyResult<f64> {
    Ok(bits(povm::measured_rel_entropy(m.flat(), &rho.0, &sigma.0).map_err(err)?))
}

/// Relative entropy of entanglement over separable states.
#[pyfunction]
#[pyo3(signature = (rho, seed, tol = 1e-4, max_iters = 5000))]
fn fw_ree(py: Python<'_>, rho: &PyDensity, seed: u64, tol: f64, max_iters: usize) -> PyResult<PyFwResult> {
    let opts = fw_opts(tol, max_iters, seed);
    py.detach(|| sepopt::fw_ree_with(&rho.0, &opts)).map(PyFwResult).map_err(err)
}

/// Measured relative entropy of entanglement under one POVM.
#[pyfunction]
#[pyo3(signature = (rho, povm, seed, tol = 1e-4, max_iters = 5000))]
fn fw_measured_ree(
    py: Python<'_>,
    rho: &PyDensity,
    povm: &PyPovm,
    seed: u64,
    tol: f64,
    max_iters: usize,
) -> PyResult<PyFwResult> {
    let opts = fw_opts(tol, max_iters, seed);
    py.detach(|| sepopt::fw_measured_ree_with(&rho.0, povm.flat(), &opts)).map(PyFwResult).map_err(err)
}

/// Largest measured value over a family of one-way LOCC POVMs; the default
/// family is used when `family` is omitted.
#[pyfunction]
#[pyo3(signature = (rho, seed, family = None, tol = 1e-4))]
fn onelocc_ree_lower_bound(
    py: Python<'_>,
    rho: &PyDensity,
    seed: u64,
    family: Option<Vec<PyRef<'_, PyPovm>>>,
    tol: f64,
) -> PyResult<Py<PyAny>> {
    let family: Vec<CorePovm> = match family {
        Some(f) => f.iter().map(|m| m.flat().clone()).collect(),
        None => {
            let d = rho.0.dims();
            if d.len() != 2 {
                return Err(PyValueError::new_err("expected a bipartite state"));
            }
            povm::default_onelocc_family([d[0], d[1]], harness::DEFAULT_RANDOM_POVMS, seed).map_err(err)?
        }
    };
    let bound = py.detach(|| sepopt::onelocc_ree_lower_bound(&rho.0, &family, tol, seed)).map_err(err)?;
    to_py(py, &serde_json::to_value(&bound).expect("bound serializes"))
}

/// Default one-way LOCC measurement family for a bipartite system.
#[pyfunction]
#[pyo3(signature = (dims, seed, random = harness::DEFAULT_RANDOM_POVMS))]
fn default_family(dims: (usize, usize), seed: u64, random: usize) -> PyResult<Vec<PyPovm>> {
    let family = povm::default_onelocc_family([dims.0, dims.1], random, seed).map_err(err)?;
    Ok(family.into_iter().map(|p| PyPovm(PovmKind::Flat(p))).collect())
}

/// Rows of the isotropic/twirl-basis table for `d = 2..=d_max`.
#[pyfunction]
fn phi_table(py: Python<'_>, d_max: usize) -> PyResult<Py<PyAny>> {
    let rows = py.detach(|| harness::phi_table(d_max)).map_err(err)?;
    to_py(py, &serde_json::to_value(rows).expect("rows serialize"))
}

/// One-way LOCC Stein simulation for `n = 1..=n_max`. Without states, runs
/// Φ₂ against the isotropic state at p = 1/3 in the computational basis.
#[pyfunction]
#[pyo3(signature = (n_max, rho = None, sigma = None, povm = None, alpha = 0.05))]
fn stein(
    py: Python<'_>,
    n_max: usize,
    rho: Option<&PyDensity>,
    sigma: Option<&PyDensity>,
    povm: Option<&PyPovm>,
    alpha: f64,
) -> PyResult<Py<PyAny>> {
    let (m, r, s) = match (rho, sigma, povm) {
        (None, None, None) => (
            povm::computational_basis_onelocc(2, 2).map_err(err)?,
            matqi::max_entangled(2).map_err(err)?,
            matqi::isotropic(2, 1.0 / 3.0).map_err(err)?,
        ),
        (Some(r), Some(s), Some(p)) => match &p.0 {
            PovmKind::OneLocc(m, _) => (m.clone(), r.0.clone(), s.0.clone()),
            PovmKind::Flat(_) => return Err(PyValueError::new_err("stein needs a ONE_LOCC povm with Alice/Bob structure")),
        },
        _ => return Err(PyValueError::new_err("pass all of rho, sigma and povm, or none")),
    };
    let ns: Vec<usize> = (1..=n_max).collect();
    let reports = py.detach(|| steinsim::stein_sweep(&m, &r, &s, &ns, alpha)).map_err(err)?;
    to_py(py, &serde_json::to_value(reports).expect("reports serialize"))
}

/// Runs a verification battery and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (check, samples, seed, dims = None, ensemble_size = 3, eps = None, random_povms = harness::DEFAULT_RANDOM_POVMS, fw_tol = 1e-3))]
#[allow(clippy::too_many_arguments)]
fn run_check(
    py: Python<'_>,
    check: &str,
    samples: usize,
    seed: u64,
    dims: Option<Vec<usize>>,
    ensemble_size: usize,
    eps: Option<Vec<f64>>,
    random_povms: usize,
    fw_tol: f64,
) -> PyResult<Py<PyAny>> {
    let cfg = HarnessConfig { fw_tol, ..HarnessConfig::default() };
    let dims = dims.unwrap_or_else(|| match check {
        "ssa" | "pinsker" => vec![2, 2, 2],
        "pure-state" => vec![3, 3],
        _ => vec![2, 2],
    });
    let eps = eps.unwrap_or_else(|| vec![0.01, 0.05, 0.1]);
    let family = || -> entkit::Result<Vec<CorePovm>> {
        if dims.len() < 2 {
            return Err(Error::Shape(format!("dims {dims:?} need at least two subsystems")));
        }
        povm::default_onelocc_family([dims[0], dims[1]], random_povms, seed)
    };
    let report: entkit::Result<CheckReport> = py.detach(|| match check {
        "ssa" => harness::check_ssa_strengthening_with(samples, &dims, &family()?, seed, &cfg),
        "classical-extension" => harness::check_classical_extension_bound_with(samples, &dims, ensemble_size, seed, &cfg),
        "pinsker" => harness::check_pinsker_chain_with(samples, &dims, &family()?, seed, &cfg),
        "continuity" => harness::check_asymptotic_continuity_with(samples, &dims, &family()?, &eps, seed, &cfg),
        "donald-horodecki" => harness::check_donald_horodecki_with(samples, &dims, seed, &cfg),
        "pure-state" => harness::check_pure_state_entropy_with(samples, &dims, seed, &cfg),
        other => Err(Error::Domain(format!(
            "unknown check {other:?}; expected ssa, classical-extension, pinsker, continuity, donald-horodecki or pure-state"
        ))),
    });
    to_py(py, &report.map_err(err)?.to_json())
}

#[pymodule]
#[pyo3(name = "entkit")]
fn entkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensity>()?;
    m.add_class::<PyPovm>()?;
    m.add_class::<PyFwResult>()?;
    m.add_function(wrap_pyfunction!(vn_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(rel_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(cond_mutual_info, m)?)?;
    m.add_function(wrap_pyfunction!(trace_distance, m)?)?;
    m.add_function(wrap_pyfunction!(measured_rel_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(fw_ree, m)?)?;
    m.add_function(wrap_pyfunction!(fw_measured_ree, m)?)?;
    m.add_function(wrap_pyfunction!(onelocc_ree_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(default_family, m)?)?;
    m.add_function(wrap_pyfunction!(phi_table, m)?)?;
    m.add_function(wrap_pyfunction!(stein, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add("TOL_CHECK", harness::TOL_CHECK)?;
    Ok(())
}
