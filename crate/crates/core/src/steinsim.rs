//! n-copy hypothesis testing with a one-way LOCC measurement: the classical
//! likelihood-ratio partition of outcome strings, the induced two-outcome
//! instrument, its error probabilities and its disturbance of `ρ_BE^{⊗n}`.
//!
//! Outcome symbols are the flattened `(k, ℓ)` pairs of the measurement and an
//! outcome string `s_1…s_n` has index `Σ s_i·A^{n−i}`, so index order is
//! lexicographic order.

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{classical_rel_entropy_raw, ExtendedReal};
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::matqi::{
    self, eigh, kron, partial_trace_matrix, permute_subsystems, trace_norm, ComplexMatrix, DensityMatrix,
    DIM_CAP,
};
use crate::povm::{OneWayLoccPovm, ProbDist};

/// Largest number of outcome strings that may be enumerated.
pub const ENUMERATION_CAP: u128 = 10_000_000;
/// Symbol log-likelihood ratios closer than this are treated as equal.
pub const LLR_CLUSTER: f64 = 1e-12;
/// Slack on the Null-set mass target.
pub const MASS_SLACK: f64 = 1e-12;
/// Tolerance on Kraus completeness.
pub const TOL_KRAUS: f64 = 1e-9;
/// Tolerance on the gentle-measurement bounds.
pub const TOL_GENTLE: f64 = 1e-9;
/// Budget, in complex entries, for cached Kraus operators.
const KRAUS_BUDGET: usize = 1 << 26;

/// Single-copy outcome distributions of the AB marginals of ρ and σ.
pub fn product_outcome_dists(m: &OneWayLoccPovm, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<(ProbDist, ProbDist)> {
    let rho_ab = ab_marginal(m, rho)?;
    let sigma_ab = ab_marginal(m, sigma)?;
    let labels: Vec<String> = m.outcomes().iter().map(|(k, l)| format!("{k},{l}")).collect();
    let probs = |omega: &ComplexMatrix| -> Result<Vec<f64>> {
        m.outcomes()
            .iter()
            .map(|&(k, l)| {
                let p = matqi::trace_product(omega, &kron(&m.alice()[k], &m.bob()[k][l])).re;
                if p < -matqi::TOL_PSD {
                    Err(Error::Invariant(format!("negative outcome probability {p:.3e}")))
                } else {
                    Ok(p.max(0.0))
                }
            })
            .collect()
    };
    Ok((
        ProbDist::with_labels(probs(&rho_ab)?, labels.clone())?,
        ProbDist::with_labels(probs(&sigma_ab)?, labels)?,
    ))
}

fn ab_marginal(m: &OneWayLoccPovm, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let dims = rho.dims();
    if dims.len() < 2 || dims[0] != m.dims()[0] || dims[1] != m.dims()[1] {
        return Err(Error::Shape(format!("state dims {:?} do not start with measurement dims {:?}", dims, m.dims())));
    }
    if dims.len() == 2 {
        return Ok(rho.matrix().clone());
    }
    Ok(partial_trace_matrix(rho.matrix(), dims, &[0, 1])?.0)
}

fn string_count(alphabet: usize, n: usize) -> Result<u64> {
    let total = (alphabet as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP {
        return Err(Error::EnumerationCap(total));
    }
    Ok(total as u64)
}

/// Decodes a string index into its symbols, first copy first.
pub fn decode_string(mut idx: u64, alphabet: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (idx % alphabet as u64) as usize;
        idx /= alphabet as u64;
    }
    out
}

/// Per-symbol log-likelihood ratios `log2(p/q)` with near-equal values
/// snapped to a shared representative, so equal-count strings tie exactly.
/// Symbols with `p = 0` get `−∞`; symbols with `p > 0 = q` get `+∞`.
fn symbol_llrs(p: &[f64], q: &[f64]) -> Vec<f64> {
    let raw: Vec<f64> = p
        .iter()
        .zip(q)
        .map(|(&p, &q)| {
            if p <= 0.0 {
                f64::NEG_INFINITY
            } else if q <= 0.0 {
                f64::INFINITY
            } else {
                (p / q).log2()
            }
        })
        .collect();
    let mut reps: Vec<f64> = Vec::new();
    raw.iter()
        .map(|&v| {
            if !v.is_finite() {
                return v;
            }
            match reps.iter().find(|&&r| (r - v).abs() <= LLR_CLUSTER * (1.0 + v.abs())) {
                Some(&r) => r,
                None => {
                    reps.push(v);
                    v
                }
            }
        })
        .collect()
}

/// Deterministic LLR of a string: `−∞` if any symbol is impossible under p,
/// else `+∞` if any is impossible under q, else the sum taken symbol class by
/// symbol class in a fixed order.
fn string_llr(symbols: &[usize], llr: &[f64]) -> f64 {
    let mut counts = vec![0u32; llr.len()];
    for &s in symbols {
        counts[s] += 1;
    }
    let mut pos = false;
    let mut total = 0.0;
    // sum per distinct representative so equal count vectors give equal sums
    let mut order: Vec<usize> = (0..llr.len()).filter(|&s| counts[s] > 0).collect();
    order.sort_by(|&a, &b| llr[a].total_cmp(&llr[b]).then(a.cmp(&b)));
    let mut i = 0;
    while i < order.len() {
        let v = llr[order[i]];
        let mut c = 0u32;
        while i < order.len() && llr[order[i]] == v {
            c += counts[order[i]];
            i += 1;
        }
        if v == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        if v == f64::INFINITY {
            pos = true;
        } else {
            total += c as f64 * v;
        }
    }
    if pos {
        f64::INFINITY
    } else {
        total
    }
}

fn same_level(reference: f64, v: f64) -> bool {
    if reference.is_infinite() || v.is_infinite() {
        return reference == v;
    }
    (reference - v).abs() <= LLR_CLUSTER * (1.0 + reference.abs())
}

/// Null/Alt split of all outcome strings. Strings with LLR above the
/// boundary level are Null, those below are Alt, and boundary-level strings
/// are Null exactly when listed in `exceptions`.
#[derive(Debug, Clone, Serialize)]
pub struct SteinPartition {
    pub n: usize,
    pub alphabet: usize,
    /// LLR (bits) of the boundary level.
    pub threshold: f64,
    /// Boundary-level strings placed in Null, ascending.
    pub exceptions: Vec<u64>,
    pub alpha: f64,
    pub beta: f64,
    /// Some symbol has `p > 0 = q`.
    pub supp_violation: bool,
    #[serde(skip)]
    symbol_llr: Vec<f64>,
    #[serde(skip)]
    p: Vec<f64>,
    #[serde(skip)]
    q: Vec<f64>,
}

impl SteinPartition {
    pub fn llr(&self, idx: u64) -> f64 {
        string_llr(&decode_string(idx, self.alphabet, self.n), &self.symbol_llr)
    }

    pub fn is_null(&self, idx: u64) -> bool {
        let v = self.llr(idx);
        if same_level(self.threshold, v) {
            self.exceptions.binary_search(&idx).is_ok()
        } else {
            v > self.threshold
        }
    }

    pub fn num_strings(&self) -> u64 {
        (self.alphabet as u64).pow(self.n as u32)
    }

    pub fn single_copy(&self) -> (&[f64], &[f64]) {
        (&self.p, &self.q)
    }

    /// Error exponent `−(1/n) log2 β_n`.
    pub fn exponent(&self) -> ExtendedReal {
        if self.beta <= 0.0 {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::Finite(-self.beta.log2() / self.n as f64)
        }
    }
}

/// Neyman–Pearson partition: strings sorted by LLR (descending, ties by
/// index) enter Null until their p-mass reaches `1 − alpha_target`.
pub fn build_partition(p: &ProbDist, q: &ProbDist, n: usize, alpha_target: f64) -> Result<SteinPartition> {
    if p.len() != q.len() {
        return Err(Error::Shape(format!("alphabets differ: {} vs {}", p.len(), q.len())));
    }
    if n == 0 {
        return Err(Error::Domain("copy count must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&alpha_target) {
        return Err(Error::Domain(format!("alpha_target must lie in [0, 1), got {alpha_target}")));
    }
    let alphabet = p.len();
    let total = string_count(alphabet, n)?;
    let (pp, qq) = (p.probs(), q.probs());
    let symbol_llr = symbol_llrs(pp, qq);
    let supp_violation = pp.iter().zip(qq).any(|(&a, &b)| a > 0.0 && b <= 0.0);

    let mut entries: Vec<(f64, u64, f64, f64)> = (0..total)
        .map(|idx| {
            let s = decode_string(idx, alphabet, n);
            let pm: f64 = s.iter().map(|&x| pp[x]).product();
            let qm: f64 = s.iter().map(|&x| qq[x]).product();
            (string_llr(&s, &symbol_llr), idx, pm, qm)
        })
        .collect();
    entries.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let target = 1.0 - alpha_target - MASS_SLACK;
    let (mut p_null, mut q_null) = (0.0, 0.0);
    let mut threshold = entries[0].0;
    let mut exceptions = Vec::new();
    // p-mass outside Null, summed directly so an empty rejection region gives exactly 0
    let mut alpha = 0.0;
    let mut start = 0;
    while start < entries.len() {
        let reference = entries[start].0;
        let mut end = start;
        while end < entries.len() && same_level(reference, entries[end].0) {
            end += 1;
        }
        let level = &mut entries[start..end];
        level.sort_by_key(|e| e.1);
        let level_p: f64 = level.iter().map(|e| e.2).sum();
        threshold = reference;
        if p_null + level_p < target {
            p_null += level_p;
            q_null += level.iter().map(|e| e.3).sum::<f64>();
            start = end;
            continue;
        }
        for e in level.iter() {
            if p_null >= target {
                break;
            }
            p_null += e.2;
            q_null += e.3;
            exceptions.push(e.1);
        }
        let taken = start + exceptions.len();
        alpha = entries[taken..].iter().map(|e| e.2).sum();
        break;
    }
    if start >= entries.len() {
        // every level was taken whole; the last one is the boundary
        let reference = threshold;
        exceptions = entries.iter().filter(|e| same_level(reference, e.0)).map(|e| e.1).collect();
        exceptions.sort_unstable();
    }
    Ok(SteinPartition {
        n,
        alphabet,
        threshold,
        exceptions,
        alpha: alpha.clamp(0.0, 1.0),
        beta: q_null.clamp(0.0, 1.0),
        supp_violation,
        symbol_llr,
        p: pp.to_vec(),
        q: qq.to_vec(),
    })
}

/// The two-outcome instrument: Alice measures `{√R_{k^n}}`, Bob applies
/// `{Q_{k^n,Null}, Q_{k^n,Alt}}` with `Q_x = √(Σ_{ℓ^n ∈ x} S_{k^n,ℓ^n})`.
#[derive(Debug, Clone)]
pub struct Instrument {
    m: OneWayLoccPovm,
    n: usize,
    sqrt_alice: Vec<ComplexMatrix>,
    /// Per Alice string (index in base #k): `(Q_Null, Q_Alt)`.
    kraus: Vec<(ComplexMatrix, ComplexMatrix)>,
}

fn psd_sqrt_clamped(m: &ComplexMatrix) -> ComplexMatrix {
    eigh(m).apply(|v| v.max(0.0).sqrt())
}

pub fn build_instrument(m: &OneWayLoccPovm, part: &SteinPartition) -> Result<Instrument> {
    if part.alphabet != m.num_outcomes() {
        return Err(Error::Shape(format!("partition alphabet {} vs {} measurement outcomes", part.alphabet, m.num_outcomes())));
    }
    let n = part.n;
    let db = m.dims()[1];
    let side = (db as u128).pow(n as u32);
    if side > DIM_CAP as u128 {
        return Err(Error::DimensionCap { dim: side.min(usize::MAX as u128) as usize, cap: DIM_CAP });
    }
    let side = side as usize;
    let nk = m.alice().len();
    let alice_strings = (nk as u128).pow(n as u32);
    if alice_strings * (side * side) as u128 * 2 > KRAUS_BUDGET as u128 {
        return Err(Error::DimensionCap { dim: side, cap: DIM_CAP });
    }
    let mut offsets = Vec::with_capacity(nk);
    let mut acc = 0;
    for b in m.bob() {
        offsets.push(acc);
        acc += b.len();
    }
    let sqrt_alice = m.alice().iter().map(psd_sqrt_clamped).collect();
    let eye = ComplexMatrix::identity(side, side);
    let kraus = (0..alice_strings as u64)
        .into_par_iter()
        .map(|kidx| {
            let ks = decode_string(kidx, nk, n);
            let null_sum = bob_null_sum(m, part, &offsets, &ks, side);
            let q_null = psd_sqrt_clamped(&null_sum);
            let q_alt = psd_sqrt_clamped(&(&eye - &null_sum));
            let err = (&q_null * &q_null + &q_alt * &q_alt - &eye).iter().fold(0.0f64, |a, z| a.max(z.norm()));
            if err > TOL_KRAUS {
                return Err(Error::Invariant(format!("Kraus completeness error {err:.3e} for Alice string {ks:?}")));
            }
            Ok((q_null, q_alt))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instrument { m: m.clone(), n, sqrt_alice, kraus })
}

/// `Σ_{ℓ^n : (k^n, ℓ^n) ∈ Null} ⊗_i S_{k_i, ℓ_i}`.
fn bob_null_sum(m: &OneWayLoccPovm, part: &SteinPartition, offsets: &[usize], ks: &[usize], side: usize) -> ComplexMatrix {
    let n = ks.len();
    let radices: Vec<usize> = ks.iter().map(|&k| m.bob()[k].len()).collect();
    let count: usize = radices.iter().product();
    let mut sum = ComplexMatrix::zeros(side, side);
    let mut ls = vec![0usize; n];
    for _ in 0..count {
        let idx = ks
            .iter()
            .zip(&ls)
            .fold(0u64, |acc, (&k, &l)| acc * part.alphabet as u64 + (offsets[k] + l) as u64);
        if part.is_null(idx) {
            let mut term = m.bob()[ks[0]][ls[0]].clone();
            for i in 1..n {
                term = kron(&term, &m.bob()[ks[i]][ls[i]]);
            }
            sum += term;
        }
        // odometer increment, last copy fastest
        for i in (0..n).rev() {
            ls[i] += 1;
            if ls[i] < radices[i] {
                break;
            }
            ls[i] = 0;
        }
    }
    sum
}

impl Instrument {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `(Q_Null, Q_Alt)` for an Alice string.
    pub fn kraus(&self, alice_string: &[usize]) -> Result<&(ComplexMatrix, ComplexMatrix)> {
        let nk = self.m.alice().len();
        if alice_string.len() != self.n || alice_string.iter().any(|&k| k >= nk) {
            return Err(Error::Shape(format!("bad Alice string {alice_string:?}")));
        }
        let idx = alice_string.iter().fold(0usize, |a, &k| a * nk + k);
        Ok(&self.kraus[idx])
    }

    /// Largest completeness error over all Alice strings.
    pub fn completeness_error(&self) -> f64 {
        self.kraus
            .iter()
            .map(|(a, b)| {
                let s = a.nrows();
                (a * a + b * b - ComplexMatrix::identity(s, s)).iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
            })
            .fold(0.0, f64::max)
    }

    /// Classical output `[P(Null), P(Alt)]` on `ω_AB^{⊗n}`, computed from the
    /// quantum operators on the full n-copy space.
    pub fn classical_output(&self, omega_ab: &DensityMatrix) -> Result<[f64; 2]> {
        let [da, db] = self.m.dims();
        if omega_ab.dims() != [da, db] {
            return Err(Error::Shape(format!("expected dims [{da}, {db}], got {:?}", omega_ab.dims())));
        }
        let n = self.n;
        let full = matqi::tensor_power(omega_ab, n)?;
        // reorder A1 B1 A2 B2 … into A1…An B1…Bn
        let dims: Vec<usize> = (0..n).flat_map(|_| [da, db]).collect();
        let perm: Vec<usize> = (0..n).map(|i| 2 * i).chain((0..n).map(|i| 2 * i + 1)).collect();
        let (rho_n, _) = permute_subsystems(full.matrix(), &dims, &perm)?;
        let nk = self.m.alice().len();
        let mut out = [0.0; 2];
        for (kidx, (qn, qa)) in self.kraus.iter().enumerate() {
            let ks = decode_string(kidx as u64, nk, n);
            let r = ks.iter().skip(1).fold(self.m.alice()[ks[0]].clone(), |acc, &k| kron(&acc, &self.m.alice()[k]));
            out[0] += matqi::trace_product(&rho_n, &kron(&r, &(qn * qn))).re;
            out[1] += matqi::trace_product(&rho_n, &kron(&r, &(qa * qa))).re;
        }
        Ok(out)
    }

    /// `‖T_n^q ⊗ id(ρ_ABE^{⊗n}) − ρ_BE^{⊗n}‖₁`, assembled blockwise per Alice
    /// string. `rho_abe` has dims `[dA, dB, E…]`.
    pub fn disturbance(&self, rho_abe: &DensityMatrix) -> Result<f64> {
        let [da, db] = self.m.dims();
        let dims = rho_abe.dims();
        if dims.len() < 2 || dims[0] != da || dims[1] != db {
            return Err(Error::Shape(format!("state dims {:?} vs measurement dims {:?}", dims, self.m.dims())));
        }
        let de: usize = dims[2..].iter().product();
        let n = self.n;
        let side = (db as u128 * de as u128).pow(n as u32);
        if side > DIM_CAP as u128 {
            return Err(Error::DimensionCap { dim: side.min(usize::MAX as u128) as usize, cap: DIM_CAP });
        }
        let rho = rho_abe.matrix();
        let dims3 = [da, db, de];
        let dbe = db * de;
        let eye_be = ComplexMatrix::identity(dbe, dbe);
        // ω_k = tr_A[(√R_k ⊗ 1) ρ (√R_k ⊗ 1)] on BE
        let omegas: Vec<ComplexMatrix> = self
            .sqrt_alice
            .iter()
            .map(|s| {
                let op = kron(s, &eye_be);
                Ok(partial_trace_matrix(&(&op * rho * &op), &dims3, &[1, 2])?.0)
            })
            .collect::<Result<_>>()?;
        let rho_be = partial_trace_matrix(rho, &dims3, &[1, 2])?.0;

        let inter: Vec<usize> = (0..n).flat_map(|_| [db, de]).collect();
        let perm: Vec<usize> = (0..n).map(|i| 2 * i).chain((0..n).map(|i| 2 * i + 1)).collect();
        let to_block = |parts: &[&ComplexMatrix]| -> Result<ComplexMatrix> {
            let m = parts.iter().skip(1).fold(parts[0].clone(), |acc, x| kron(&acc, x));
            Ok(permute_subsystems(&m, &inter, &perm)?.0)
        };
        let eye_e = ComplexMatrix::identity(de.pow(n as u32), de.pow(n as u32));
        let nk = self.m.alice().len();
        let side = side as usize;
        let out = self
            .kraus
            .par_iter()
            .enumerate()
            .map(|(kidx, (qn, qa))| {
                let ks = decode_string(kidx as u64, nk, n);
                let parts: Vec<&ComplexMatrix> = ks.iter().map(|&k| &omegas[k]).collect();
                let w = to_block(&parts)?;
                let (gn, ga) = (kron(qn, &eye_e), kron(qa, &eye_e));
                Ok::<_, Error>(&gn * &w * &gn + &ga * &w * &ga)
            })
            .try_reduce(|| ComplexMatrix::zeros(side, side), |a, b| Ok(a + b))?;
        let target = to_block(&vec![&rho_be; n])?;
        trace_norm(&matqi::hermitian_part(&(out - target)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SteinReport {
    pub n: usize,
    pub alpha_n: f64,
    pub beta_n: f64,
    pub exponent: ExtendedReal,
    pub norm_rel_ent: ExtendedReal,
    /// `None` when the n-copy operators exceed the caps.
    pub disturbance: Option<f64>,
    pub gentle_bound: f64,
    pub flags: Vec<String>,
}

/// Full simulation at one copy count. `rho_abe` and `sigma_abe` have dims
/// starting with the measurement's `[dA, dB]`; remaining subsystems form E.
pub fn run_stein(
    m: &OneWayLoccPovm,
    rho_abe: &DensityMatrix,
    sigma_abe: &DensityMatrix,
    n: usize,
    alpha_target: f64,
) -> Result<SteinReport> {
    let (p, q) = product_outcome_dists(m, rho_abe, sigma_abe)?;
    let part = build_partition(&p, &q, n, alpha_target)?;
    let (a, b) = (part.alpha, part.beta);
    let norm_rel_ent = match classical_rel_entropy_raw(&[1.0 - a, a], &[b, 1.0 - b])? {
        ExtendedReal::Finite(v) => ExtendedReal::Finite(v / n as f64),
        inf => inf,
    };
    let mut flags = Vec::new();
    if part.supp_violation {
        flags.push("supp_violation".to_string());
    }
    let gentle_bound = a + 2.0 * a.sqrt();
    let disturbance = match build_instrument(m, &part).and_then(|inst| inst.disturbance(rho_abe)) {
        Ok(d) => Some(d),
        Err(Error::DimensionCap { .. }) => {
            flags.push("disturbance_skipped".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(d) = disturbance {
        if d > gentle_bound + TOL_GENTLE {
            return Err(Error::Invariant(format!("disturbance {d} exceeds gentle bound {gentle_bound} at n = {n}")));
        }
    }
    Ok(SteinReport { n, alpha_n: a, beta_n: b, exponent: part.exponent(), norm_rel_ent, disturbance, gentle_bound, flags })
}

/// Runs independent copy counts in parallel; output follows `ns`.
pub fn stein_sweep(
    m: &OneWayLoccPovm,
    rho_abe: &DensityMatrix,
    sigma_abe: &DensityMatrix,
    ns: &[usize],
    alpha_target: f64,
) -> Result<Vec<SteinReport>> {
    ns.par_iter().map(|&n| run_stein(m, rho_abe, sigma_abe, n, alpha_target)).collect()
}

pub const STEIN_CSV_HEADER: &str = "n,alpha_n,beta_n,exponent,norm_rel_ent,disturbance,gentle_bound,skipped_flags";

pub fn stein_csv(reports: &[SteinReport]) -> String {
    let mut out = String::from(STEIN_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            fmt_sig(r.alpha_n),
            fmt_sig(r.beta_n),
            fmt_sig(r.exponent.value()),
            fmt_sig(r.norm_rel_ent.value()),
            r.disturbance.map_or_else(|| "skipped".to_string(), fmt_sig),
            fmt_sig(r.gentle_bound),
            r.flags.join(";"),
        ));
    }
    out
}

/// Gentle-measurement comparison for `0 ≤ Λ ≤ 1`: returns
/// `(‖√Λ τ √Λ − τ‖₁, 2√(1 − tr τΛ))`.
pub fn gentle_check(lambda: &ComplexMatrix, tau: &DensityMatrix) -> Result<(f64, f64)> {
    let n = tau.dim();
    if lambda.nrows() != n || lambda.ncols() != n {
        return Err(Error::Shape(format!("operator side {} vs state side {n}", lambda.nrows())));
    }
    let asym = matqi::hermitian_error(lambda);
    if asym > matqi::TOL_HERM {
        return Err(Error::NotHermitian(asym));
    }
    let eig = eigh(lambda);
    if eig.min_value() < -matqi::TOL_PSD || eig.max_value() > 1.0 + matqi::TOL_PSD {
        return Err(Error::Domain(format!(
            "spectrum [{:.3e}, {:.3e}] outside [0, 1]",
            eig.min_value(),
            eig.max_value()
        )));
    }
    let root = eig.apply(|v| v.clamp(0.0, 1.0).sqrt());
    let t = tau.matrix();
    let lhs = trace_norm(&matqi::hermitian_part(&(&root * t * &root - t)))?;
    let acc = matqi::trace_product(t, lambda).re;
    Ok((lhs, 2.0 * (1.0 - acc).max(0.0).sqrt()))
}
