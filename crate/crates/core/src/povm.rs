//! Measurements: POVM validation, measurement channels, one-way LOCC
//! structure, PPT membership, the `U⊗Ū` twirl and the optimal two-outcome
//! isotropic measurement.
//!
//! Measured quantities computed from a finite family of POVMs are lower
//! bounds on the supremum over the corresponding measurement class.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{classical_rel_entropy, ExtendedReal};
use crate::error::{Error, Result};
use crate::matqi::{
    self, eigh, kron, max_entangled, rng_from_seed, trace_product, ComplexMatrix, DensityMatrix,
    TOL_PSD,
};

/// Completeness tolerance `‖Σ M_i − 1‖_max`.
pub const TOL_COMPLETE: f64 = 1e-10;

/// Measurement class a POVM is certified to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PovmClass {
    #[serde(rename = "LO")]
    Lo,
    #[serde(rename = "ONE_LOCC")]
    OneLocc,
    #[serde(rename = "GENERIC")]
    Generic,
    #[serde(rename = "PPT")]
    Ppt,
}

impl PovmClass {
    /// LO (including shared randomness) and one-way LOCC measurements both
    /// sit inside the one-way LOCC class.
    pub fn is_one_way_locc(self) -> bool {
        matches!(self, PovmClass::Lo | PovmClass::OneLocc)
    }
}

/// A finite probability vector with outcome labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbDist {
    probs: Vec<f64>,
    labels: Vec<String>,
}

impl ProbDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let labels = (0..probs.len()).map(|i| i.to_string()).collect();
        Self::with_labels(probs, labels)
    }

    pub fn with_labels(probs: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(Error::Shape("one label per outcome".into()));
        }
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::Domain("probabilities must be finite and nonnegative".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("probabilities sum to {sum}")));
        }
        Ok(Self { probs, labels })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn l1_distance(&self, other: &ProbDist) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Shape("distributions of different lengths".into()));
        }
        Ok(self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum())
    }
}

/// A POVM on a multipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dims: Vec<usize>,
    elements: Vec<ComplexMatrix>,
    class: PovmClass,
}

impl Povm {
    /// Validates PSD elements summing to the identity. A `Ppt` tag is
    /// additionally checked on every element's partial transpose.
    pub fn new(dims: Vec<usize>, elements: Vec<ComplexMatrix>, class: PovmClass) -> Result<Self> {
        let n: usize = dims.iter().product();
        if elements.is_empty() {
            return Err(Error::Domain("POVM with no elements".into()));
        }
        let mut sum = ComplexMatrix::zeros(n, n);
        for (i, e) in elements.iter().enumerate() {
            if e.nrows() != n || e.ncols() != n {
                return Err(Error::Shape(format!("element {i} is {}x{}, expected {n}x{n}", e.nrows(), e.ncols())));
            }
            let asym = matqi::hermitian_error(e);
            if asym > matqi::TOL_HERM {
                return Err(Error::NotHermitian(asym));
            }
            let min = eigh(e).min_value();
            if min < -TOL_PSD {
                return Err(Error::NotPsd(min));
            }
            sum += e;
        }
        let err = max_abs(&(sum - ComplexMatrix::identity(n, n)));
        if err > TOL_COMPLETE {
            return Err(Error::Invariant(format!("POVM elements sum to identity only within {err:.3e}")));
        }
        let elements: Vec<ComplexMatrix> = elements.iter().map(matqi::hermitian_part).collect();
        if class == PovmClass::Ppt {
            if dims.len() != 2 {
                return Err(Error::Shape("PPT class needs a bipartite signature".into()));
            }
            for (i, e) in elements.iter().enumerate() {
                let min = matqi::min_pt_eigenvalue(e, &dims, 1)?;
                if min < -TOL_PSD {
                    return Err(Error::Invariant(format!(
                        "element {i} has partial-transpose eigenvalue {min:.3e}"
                    )));
                }
            }
        }
        Ok(Self { dims, elements, class })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn class(&self) -> PovmClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Whether every element has a PSD partial transpose (within `tol_psd`).
    pub fn is_ppt(&self) -> bool {
        self.dims.len() == 2
            && self.elements.iter().all(|e| {
                matqi::min_pt_eigenvalue(e, &self.dims, 1).is_ok_and(|m| m >= -TOL_PSD)
            })
    }

    /// Outcome probabilities `tr(ω M_i)` for an arbitrary trace-one operator,
    /// without clamping.
    pub(crate) fn probabilities_raw(&self, omega: &ComplexMatrix) -> Vec<f64> {
        self.elements.iter().map(|m| trace_product(omega, m).re).collect()
    }
}

pub(crate) fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// The measurement channel `ω ↦ (tr ω M_i)_i`.
pub fn apply_povm(m: &Povm, rho: &DensityMatrix) -> Result<ProbDist> {
    if m.dim() != rho.dim() {
        return Err(Error::Shape(format!("POVM side {} vs state side {}", m.dim(), rho.dim())));
    }
    let mut probs = m.probabilities_raw(rho.matrix());
    for p in probs.iter_mut() {
        if *p < -TOL_PSD {
            return Err(Error::Invariant(format!("negative outcome probability {p:.3e}")));
        }
        *p = p.max(0.0);
    }
    ProbDist::new(probs)
}

/// `D(M(ρ)‖M(σ))`.
pub fn measured_rel_entropy(m: &Povm, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ExtendedReal> {
    let p = apply_povm(m, rho)?;
    let q = apply_povm(m, sigma)?;
    classical_rel_entropy(&p, &q)
}

/// Max over the family of `‖M(ρ) − M(σ)‖₁`; a lower bound on the measured
/// norm of the class the family samples.
pub fn measured_distance(family: &[Povm], rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if family.is_empty() {
        return Err(Error::Domain("empty measurement family".into()));
    }
    let mut best = 0.0f64;
    for m in family {
        let p = apply_povm(m, rho)?;
        let q = apply_povm(m, sigma)?;
        best = best.max(p.l1_distance(&q)?);
    }
    Ok(best)
}

fn bipartite_square(dims: &[usize]) -> Result<usize> {
    match dims {
        [a, b] if a == b && *a >= 2 => Ok(*a),
        _ => Err(Error::Shape(format!("expected dims [d, d] with d >= 2, got {:?}", dims))),
    }
}

/// The `U⊗Ū` twirl, as the exact projection
/// `tr(xΦ)Φ + tr(x(1−Φ))(1−Φ)/(d²−1)`.
pub fn uu_bar_twirl(x: &ComplexMatrix, dims: &[usize]) -> Result<ComplexMatrix> {
    let d = bipartite_square(dims)?;
    let n = d * d;
    if x.nrows() != n || x.ncols() != n {
        return Err(Error::Shape(format!("operator side {} vs dims {:?}", x.nrows(), dims)));
    }
    let phi = max_entangled(d)?.into_matrix();
    let eye = ComplexMatrix::identity(n, n);
    let f = trace_product(x, &phi);
    let rest = x.trace() - f;
    let perp = &eye - &phi;
    Ok(phi * f + perp * (rest / (n as f64 - 1.0)))
}

pub fn twirl_state(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let mat = uu_bar_twirl(rho.matrix(), rho.dims())?;
    Ok(DensityMatrix::from_parts_unchecked(rho.dims().to_vec(), mat))
}

/// Two-outcome isotropic POVM `{αΦ + β(1−Φ), (1−α)Φ + (1−β)(1−Φ)}`.
pub fn isotropic_povm(d: usize, alpha: f64, beta: f64, class: PovmClass) -> Result<Povm> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!("isotropic POVM weights ({alpha}, {beta}) outside [0, 1]")));
    }
    let n = d * d;
    let phi = max_entangled(d)?.into_matrix();
    let perp = ComplexMatrix::identity(n, n) - &phi;
    let m0 = phi.scale(alpha) + perp.scale(beta);
    let m1 = phi.scale(1.0 - alpha) + perp.scale(1.0 - beta);
    Povm::new(vec![d, d], vec![m0, m1], class)
}

/// The PPT two-outcome POVM `M̂₀ = Φ + (1−Φ)/(d+1)`, `M̂₁ = d/(d+1) (1−Φ)`.
pub fn iso_two_outcome_povm(d: usize) -> Result<Povm> {
    if d < 2 {
        return Err(Error::Domain(format!("d must be >= 2, got {d}")));
    }
    isotropic_povm(d, 1.0, 1.0 / (d as f64 + 1.0), PovmClass::Ppt)
}

/// Computational product basis measurement `{|i⟩⟨i| ⊗ |j⟩⟨j|}` in one-way
/// LOCC form.
pub fn computational_basis_onelocc(d_a: usize, d_b: usize) -> Result<OneWayLoccPovm> {
    let alice = basis_projectors(d_a);
    let bob = vec![basis_projectors(d_b); d_a];
    OneWayLoccPovm::new([d_a, d_b], alice, bob)
}

fn basis_projectors(d: usize) -> Vec<ComplexMatrix> {
    (0..d)
        .map(|i| {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(i, i)] = matqi::ONE;
            m
        })
        .collect()
}

/// Twirl followed by computational-basis measurements on both sides. As a
/// POVM its elements are the twirled basis projectors; the twirl uses shared
/// randomness over local unitaries, so the class is LO.
pub fn twirl_basis_povm(d: usize) -> Result<Povm> {
    let basis = onelocc_to_povm(&computational_basis_onelocc(d, d)?)?;
    let dims = [d, d];
    let elements = basis
        .elements()
        .iter()
        .map(|m| uu_bar_twirl(m, &dims))
        .collect::<Result<Vec<_>>>()?;
    Povm::new(vec![d, d], elements, PovmClass::Lo)
}

/// `{R_k ⊗ S_{k,ℓ}}`: Alice measures `{R_k}`, tells Bob `k`, Bob measures
/// `{S_{k,ℓ}}_ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneWayLoccPovm {
    dims: [usize; 2],
    alice: Vec<ComplexMatrix>,
    bob: Vec<Vec<ComplexMatrix>>,
}

fn check_local_povm(elements: &[ComplexMatrix], d: usize, who: &str) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::Invariant(format!("{who}: no elements")));
    }
    let mut sum = ComplexMatrix::zeros(d, d);
    for e in elements {
        if e.nrows() != d || e.ncols() != d {
            return Err(Error::Shape(format!("{who}: element is {}x{}, expected {d}x{d}", e.nrows(), e.ncols())));
        }
        let asym = matqi::hermitian_error(e);
        if asym > matqi::TOL_HERM {
            return Err(Error::NotHermitian(asym));
        }
        let min = eigh(e).min_value();
        if min < -TOL_PSD {
            return Err(Error::NotPsd(min));
        }
        sum += e;
    }
    let err = max_abs(&(sum - ComplexMatrix::identity(d, d)));
    if err > TOL_COMPLETE {
        return Err(Error::Invariant(format!("{who}: completeness error {err:.3e}")));
    }
    Ok(())
}

impl OneWayLoccPovm {
    pub fn new(dims: [usize; 2], alice: Vec<ComplexMatrix>, bob: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        check_local_povm(&alice, dims[0], "alice")?;
        if bob.len() != alice.len() {
            return Err(Error::Invariant(format!(
                "{} Alice outcomes but {} Bob measurements",
                alice.len(),
                bob.len()
            )));
        }
        for (k, b) in bob.iter().enumerate() {
            check_local_povm(b, dims[1], &format!("bob[{k}]"))?;
        }
        Ok(Self { dims, alice, bob })
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn alice(&self) -> &[ComplexMatrix] {
        &self.alice
    }

    pub fn bob(&self) -> &[Vec<ComplexMatrix>] {
        &self.bob
    }

    /// Outcome pairs `(k, ℓ)` in the flattened order used everywhere.
    pub fn outcomes(&self) -> Vec<(usize, usize)> {
        self.bob
            .iter()
            .enumerate()
            .flat_map(|(k, b)| (0..b.len()).map(move |l| (k, l)))
            .collect()
    }

    pub fn num_outcomes(&self) -> usize {
        self.bob.iter().map(Vec::len).sum()
    }
}

/// Flattens a one-way LOCC POVM into its product elements.
pub fn onelocc_to_povm(m: &OneWayLoccPovm) -> Result<Povm> {
    let elements = m
        .outcomes()
        .into_iter()
        .map(|(k, l)| kron(&m.alice[k], &m.bob[k][l]))
        .collect();
    Povm::new(m.dims.to_vec(), elements, PovmClass::OneLocc)
}

/// Random local POVM with `count` elements: `A_i = X_i†X_i`, normalized by
/// `S^{-1/2} A_i S^{-1/2}` with `S = Σ A_i`.
fn random_local_povm<R: Rng + ?Sized>(d: usize, count: usize, rng: &mut R) -> Result<Vec<ComplexMatrix>> {
    let raw: Vec<ComplexMatrix> = (0..count)
        .map(|_| {
            let x = matqi::random::ginibre(d, d, rng);
            x.adjoint() * x
        })
        .collect();
    let sum = raw.iter().fold(ComplexMatrix::zeros(d, d), |acc, a| acc + a);
    let inv_sqrt = eigh(&sum).apply(|v| 1.0 / v.sqrt());
    let mut out: Vec<ComplexMatrix> = raw
        .iter()
        .map(|a| matqi::hermitian_part(&(&inv_sqrt * a * &inv_sqrt)))
        .collect();
    // fold rounding error into the last element to keep completeness tight
    let total = out.iter().fold(ComplexMatrix::zeros(d, d), |acc, a| acc + a);
    let last = out.len() - 1;
    out[last] += ComplexMatrix::identity(d, d) - total;
    Ok(out)
}

pub fn random_onelocc_povm_with<R: Rng + ?Sized>(
    dims: [usize; 2],
    k_outcomes: usize,
    l_outcomes: usize,
    rng: &mut R,
) -> Result<OneWayLoccPovm> {
    if k_outcomes == 0 || l_outcomes == 0 {
        return Err(Error::Domain("outcome counts must be >= 1".into()));
    }
    let alice = random_local_povm(dims[0], k_outcomes, rng)?;
    let bob = (0..k_outcomes)
        .map(|_| random_local_povm(dims[1], l_outcomes, rng))
        .collect::<Result<Vec<_>>>()?;
    OneWayLoccPovm::new(dims, alice, bob)
}

pub fn random_onelocc_povm(dims: [usize; 2], k_outcomes: usize, l_outcomes: usize, seed: u64) -> Result<OneWayLoccPovm> {
    random_onelocc_povm_with(dims, k_outcomes, l_outcomes, &mut rng_from_seed(seed))
}

/// One-way LOCC family used by the batteries: computational product basis,
/// the twirl-then-basis measurement when `dA = dB`, and `random` seeded
/// random one-way LOCC POVMs.
pub fn default_onelocc_family(dims: [usize; 2], random: usize, seed: u64) -> Result<Vec<Povm>> {
    let mut family = vec![onelocc_to_povm(&computational_basis_onelocc(dims[0], dims[1])?)?];
    if dims[0] == dims[1] {
        family.push(twirl_basis_povm(dims[0])?);
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..random {
        family.push(onelocc_to_povm(&random_onelocc_povm_with(dims, dims[0], dims[1], &mut rng)?)?);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::qrel_entropy;
    use crate::matqi::{isotropic, partial_trace, random_density, random_unitary, PureState};
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_on_mixed_is_uniform() {
        let m = onelocc_to_povm(&computational_basis_onelocc(2, 3).unwrap()).unwrap();
        let p = apply_povm(&m, &DensityMatrix::maximally_mixed(vec![2, 3]).unwrap()).unwrap();
        assert!(p.probs().iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn two_outcome_povm_probabilities() {
        for d in 2..=6usize {
            let df = d as f64;
            let m = iso_two_outcome_povm(d).unwrap();
            assert_eq!(m.class(), PovmClass::Ppt);
            let p = apply_povm(&m, &max_entangled(d).unwrap()).unwrap();
            assert_abs_diff_eq!(p.probs()[0], 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.probs()[1], 0.0, epsilon = 1e-12);
            let q = apply_povm(&m, &isotropic(d, 1.0 / (df + 1.0)).unwrap()).unwrap();
            assert_abs_diff_eq!(q.probs()[0], 2.0 / (df + 1.0), epsilon = 1e-12);
            assert_abs_diff_eq!(q.probs()[1], (df - 1.0) / (df + 1.0), epsilon = 1e-12);
            let v = measured_rel_entropy(&m, &max_entangled(d).unwrap(), &isotropic(d, 1.0 / (df + 1.0)).unwrap())
                .unwrap()
                .value();
            assert_abs_diff_eq!(v, (df + 1.0).log2() - 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_outcome_povm_elements() {
        let m = iso_two_outcome_povm(2).unwrap();
        let sum = &m.elements()[0] + &m.elements()[1];
        assert!(max_abs(&(sum - ComplexMatrix::identity(4, 4))) < 1e-15);
        // PT of αΦ + β(1−Φ) has eigenvalues β ± (α−β)/d; α=1, β=1/3, d=2 → min 0
        let min = matqi::min_pt_eigenvalue(&m.elements()[0], &[2, 2], 1).unwrap();
        assert_abs_diff_eq!(min, 0.0, epsilon = 1e-12);
        assert!(m.is_ppt());
    }

    #[test]
    fn ppt_tag_is_checked() {
        // α = 1, β = 0 violates β ≥ α/(d+1)
        assert!(isotropic_povm(2, 1.0, 0.0, PovmClass::Ppt).is_err());
        assert!(isotropic_povm(2, 1.0, 0.0, PovmClass::Generic).is_ok());
    }

    #[test]
    fn twirl_basis_value_on_phi() {
        for d in 2..=5usize {
            let df = d as f64;
            let m = twirl_basis_povm(d).unwrap();
            let v = measured_rel_entropy(&m, &max_entangled(d).unwrap(), &isotropic(d, 1.0 / (df + 1.0)).unwrap())
                .unwrap()
                .value();
            assert_abs_diff_eq!(v, (df + 1.0).log2() - 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn twirl_povm_matches_twirl_of_state() {
        let rho = random_density(&[3, 3], 9, 21).unwrap();
        let twirled = twirl_state(&rho).unwrap();
        let basis = onelocc_to_povm(&computational_basis_onelocc(3, 3).unwrap()).unwrap();
        let a = apply_povm(&twirl_basis_povm(3).unwrap(), &rho).unwrap();
        let b = apply_povm(&basis, &twirled).unwrap();
        assert!(a.l1_distance(&b).unwrap() < 1e-12);
    }

    #[test]
    fn trivial_povms_give_zero() {
        let rho = random_density(&[2, 2], 4, 1).unwrap();
        let sigma = random_density(&[2, 2], 4, 2).unwrap();
        let single = Povm::new(vec![2, 2], vec![ComplexMatrix::identity(4, 4)], PovmClass::Lo).unwrap();
        assert_eq!(measured_rel_entropy(&single, &rho, &sigma).unwrap().value(), 0.0);
        let m = twirl_basis_povm(2).unwrap();
        assert!(measured_rel_entropy(&m, &rho, &rho).unwrap().value().abs() < 1e-12);
    }

    #[test]
    fn measured_distance_examples() {
        let zero = PureState::basis(vec![2], 0).unwrap().to_density();
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        let basis = Povm::new(vec![2], basis_projectors(2), PovmClass::Lo).unwrap();
        let fam = vec![basis];
        assert_abs_diff_eq!(measured_distance(&fam, &zero, &half).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(measured_distance(&fam, &zero, &zero).unwrap(), 0.0);
        assert!(measured_distance(&[], &zero, &half).is_err());
    }

    #[test]
    fn twirl_examples() {
        let dims = [2usize, 2];
        let phi = max_entangled(2).unwrap();
        assert!(max_abs(&(uu_bar_twirl(phi.matrix(), &dims).unwrap() - phi.matrix())) < 1e-15);
        let zz = PureState::basis(vec![2, 2], 0).unwrap().to_density();
        let t = uu_bar_twirl(zz.matrix(), &dims).unwrap();
        assert!(max_abs(&(t - isotropic(2, 1.0 / 3.0).unwrap().matrix())) < 1e-15);
        let tau = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(max_abs(&(uu_bar_twirl(tau.matrix(), &dims).unwrap() - tau.matrix())) < 1e-15);
        assert!(uu_bar_twirl(tau.matrix(), &[4]).is_err());
    }

    #[test]
    fn twirl_is_average_over_conjugate_unitaries() {
        // Monte-Carlo U⊗Ū average approaches the projection formula
        let rho = random_density(&[2, 2], 4, 31).unwrap();
        let mut rng = rng_from_seed(8);
        let mut acc = ComplexMatrix::zeros(4, 4);
        let count = 4000;
        for _ in 0..count {
            let u = random_unitary(2, &mut rng);
            let uu = kron(&u, &u.map(|z| z.conj()));
            acc += &uu * rho.matrix() * uu.adjoint();
        }
        let mc = acc.unscale(count as f64);
        let exact = uu_bar_twirl(rho.matrix(), &[2, 2]).unwrap();
        assert!(max_abs(&(mc - exact)) < 0.03);
    }

    /// Per-unitary basis measurements `(U⊗Ū)|ij⟩`, averaged over sampled
    /// unitaries, versus the twirled measurement. The twirled outcome
    /// distributions are the averages of the per-unitary ones, so joint
    /// convexity puts the average of divergences above the twirled value.
    fn per_unitary_average(rho: &DensityMatrix, sigma: &DensityMatrix, count: usize, seed: u64) -> f64 {
        let mut rng = rng_from_seed(seed);
        let mut total = 0.0;
        for _ in 0..count {
            let u = random_unitary(2, &mut rng);
            let uu = kron(&u, &u.map(|z| z.conj()));
            let elements = basis_projectors(4).iter().map(|p| &uu * p * uu.adjoint()).collect();
            let m = Povm::new(vec![2, 2], elements, PovmClass::Lo).unwrap();
            total += measured_rel_entropy(&m, rho, sigma).unwrap().value();
        }
        total / count as f64
    }

    #[test]
    fn derandomized_twirl_is_below_average() {
        let tw = twirl_basis_povm(2).unwrap();
        for seed in 0..5 {
            let rho = random_density(&[2, 2], 4, 70 + seed).unwrap();
            let sigma = random_density(&[2, 2], 4, 80 + seed).unwrap();
            let avg = per_unitary_average(&rho, &sigma, 100, seed);
            let twirled = measured_rel_entropy(&tw, &rho, &sigma).unwrap().value();
            assert!(avg >= twirled - 0.02, "avg {avg} twirled {twirled}");
        }
        // invariant pairs: every unitary gives the same value
        let phi = max_entangled(2).unwrap();
        let iso = isotropic(2, 1.0 / 3.0).unwrap();
        let avg = per_unitary_average(&phi, &iso, 100, 9);
        let twirled = measured_rel_entropy(&tw, &phi, &iso).unwrap().value();
        assert_abs_diff_eq!(avg, twirled, epsilon = 1e-9);
    }

    #[test]
    fn onelocc_structure() {
        let m = computational_basis_onelocc(2, 3).unwrap();
        let p = onelocc_to_povm(&m).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.class(), PovmClass::OneLocc);
        for e in p.elements() {
            let vals = eigh(e).values;
            assert_eq!(vals.iter().filter(|v| v.abs() > 1e-12).count(), 1);
        }
        // single Alice outcome: a local B measurement
        let local = OneWayLoccPovm::new([2, 2], vec![ComplexMatrix::identity(2, 2)], vec![basis_projectors(2)]).unwrap();
        let p = onelocc_to_povm(&local).unwrap();
        let rho = random_density(&[2, 2], 4, 5).unwrap();
        let probs = apply_povm(&p, &rho).unwrap();
        let rb = partial_trace(&rho, &[1]).unwrap();
        assert_abs_diff_eq!(probs.probs()[0], rb.matrix()[(0, 0)].re, epsilon = 1e-14);
    }

    #[test]
    fn onelocc_rejects_incomplete() {
        let half = ComplexMatrix::identity(2, 2).scale(0.5);
        assert!(OneWayLoccPovm::new([2, 2], vec![half.clone()], vec![basis_projectors(2)]).is_err());
        assert!(OneWayLoccPovm::new([2, 2], basis_projectors(2), vec![basis_projectors(2)]).is_err());
    }

    #[test]
    fn random_onelocc_is_valid_and_deterministic() {
        for seed in 0..10 {
            let m = random_onelocc_povm([2, 3], 3, 2, seed).unwrap();
            let p = onelocc_to_povm(&m).unwrap();
            let sum = p.elements().iter().fold(ComplexMatrix::zeros(6, 6), |a, e| a + e);
            assert!(max_abs(&(sum - ComplexMatrix::identity(6, 6))) < 1e-10);
            assert!(p.elements().iter().all(|e| eigh(e).min_value() > -1e-12));
        }
        assert_eq!(random_onelocc_povm([2, 2], 2, 2, 9).unwrap(), random_onelocc_povm([2, 2], 2, 2, 9).unwrap());
        assert!(random_onelocc_povm([2, 2], 0, 2, 9).is_err());
    }

    #[test]
    fn data_processing_on_samples() {
        let family = default_onelocc_family([2, 2], 4, 77).unwrap();
        for seed in 0..20 {
            let rho = random_density(&[2, 2], 1 + (seed as usize % 4), seed).unwrap();
            let sigma = random_density(&[2, 2], 4, seed + 100).unwrap();
            let q = qrel_entropy(&rho, &sigma).unwrap().value();
            for m in &family {
                let c = measured_rel_entropy(m, &rho, &sigma).unwrap().value();
                assert!(c <= q + 1e-9, "{c} > {q}");
            }
        }
    }
}
