//! Away-step Frank-Wolfe over convex hulls of pure product states.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lmo::{lmo_with_rng, ProductVertex};
use super::objective::Objective;
use super::{FwOptions, SepPoint, TraceEntry};
use crate::matqi::{expectation, trace_product, ComplexMatrix, ComplexVector};

const GOLDEN: f64 = 0.618_033_988_749_894_8;
const MERGE_OVERLAP: f64 = 1.0 - 1e-10;
const WEIGHT_DROP: f64 = 1e-15;
const MAX_STALLS: usize = 8;
const BACKTRACK_STEPS: usize = 50;

struct Atom {
    a: ComplexVector,
    b: ComplexVector,
    v: ComplexVector,
    w: f64,
}

impl Atom {
    fn projector(&self) -> ComplexMatrix {
        &self.v * self.v.adjoint()
    }
}

pub(crate) struct FwOutcome {
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    pub flags: Vec<String>,
    pub trace: Vec<TraceEntry>,
    pub point: SepPoint,
}

fn assemble(atoms: &[Atom], n: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(n, n);
    for at in atoms {
        s += at.projector().scale(at.w);
    }
    s
}

fn golden_section(phi: &dyn Fn(f64) -> f64, hi: f64, iters: usize) -> (f64, f64) {
    let (mut a, mut b) = (0.0, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = phi(d);
        }
    }
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    let f_hi = phi(hi);
    if f_hi < best.1 {
        best = (hi, f_hi);
    }
    best
}

/// Golden section, then the open-loop step, then halving from `gamma_max`;
/// the first strict decrease wins.
fn line_search(phi: &dyn Fn(f64) -> f64, f: f64, gamma_max: f64, t: usize, iters: usize) -> Option<(f64, f64)> {
    let (gamma, f_new) = golden_section(phi, gamma_max, iters);
    if f_new < f {
        return Some((gamma, f_new));
    }
    let g_def = (2.0 / (t as f64 + 2.0)).min(gamma_max);
    let f_def = phi(g_def);
    if f_def < f {
        return Some((g_def, f_def));
    }
    let mut g = gamma_max;
    for _ in 0..BACKTRACK_STEPS {
        g *= 0.5;
        let v = phi(g);
        if v < f {
            return Some((g, v));
        }
    }
    None
}

pub(crate) fn run(obj: &dyn Objective, opts: &FwOptions, start: Option<&SepPoint>) -> FwOutcome {
    let dims = obj.dims();
    let n = dims[0] * dims[1];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start = start.cloned().unwrap_or_else(|| SepPoint::maximally_mixed(dims));
    let mut atoms: Vec<Atom> = start
        .atoms()
        .map(|(w, a, b)| Atom { a: a.clone(), b: b.clone(), v: a.kronecker(b), w })
        .collect();
    let mut sigma = assemble(&atoms, n);
    let mut f = obj.value(&sigma);
    let mut lower = f64::NEG_INFINITY;
    let mut trace = Vec::new();
    let mut flags = Vec::new();
    let mut converged = false;
    let mut stalls = 0;
    let mut warm: Vec<ComplexVector> = Vec::new();
    let mut iterations = 0;

    if !f.is_finite() {
        flags.push("infinite_start".to_string());
    }

    for t in 0..opts.max_iters {
        iterations = t;
        let g = obj.gradient(&sigma);
        let vertex: ProductVertex = lmo_with_rng(&g, dims, opts.lmo_restarts, &mut rng, &warm);
        warm.clear();
        warm.push(vertex.a.clone());
        let g_sigma = trace_product(&g, &sigma).re;
        let gap_fw = g_sigma - vertex.value;
        if f.is_finite() {
            lower = lower.max(f - gap_fw);
        }
        let gap = f - lower;
        if opts.record_trace {
            trace.push(TraceEntry { iter: t, value: f, gap });
        }
        if gap <= opts.tol_gap {
            converged = true;
            break;
        }

        // away candidate: the active atom with the largest gradient overlap
        let (away_idx, away_val) = atoms
            .iter()
            .enumerate()
            .map(|(i, at)| (i, expectation(&g, &at.v)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let gap_away = away_val - g_sigma;
        let use_away = opts.away_steps && atoms.len() > 1 && gap_away > gap_fw;

        let s_vec = vertex.joint();
        let fw_dir = &s_vec * s_vec.adjoint() - &sigma;
        let mut step = None;
        let mut candidates = Vec::with_capacity(2);
        if use_away {
            let wa = atoms[away_idx].w;
            candidates.push((true, &sigma - atoms[away_idx].projector(), wa / (1.0 - wa)));
        }
        candidates.push((false, fw_dir, 1.0));
        for (away, dir, gamma_max) in candidates {
            let phi = |gm: f64| obj.value(&(&sigma + dir.scale(gm)));
            if let Some((gamma, _)) = line_search(&phi, f, gamma_max, t, opts.line_search_iters) {
                step = Some((away, gamma));
                break;
            }
        }
        let Some((use_away, gamma)) = step else {
            stalls += 1;
            if stalls >= MAX_STALLS {
                flags.push("stalled".to_string());
                iterations = t + 1;
                break;
            }
            continue;
        };
        stalls = 0;

        if use_away {
            for at in atoms.iter_mut() {
                at.w *= 1.0 + gamma;
            }
            atoms[away_idx].w -= gamma;
        } else {
            for at in atoms.iter_mut() {
                at.w *= 1.0 - gamma;
            }
            let merged = atoms.iter_mut().find(|at| at.v.dotc(&s_vec).norm_sqr() > MERGE_OVERLAP);
            match merged {
                Some(at) => at.w += gamma,
                None => atoms.push(Atom { a: vertex.a.clone(), b: vertex.b.clone(), v: s_vec, w: gamma }),
            }
        }
        atoms.retain(|at| at.w > WEIGHT_DROP);
        let total: f64 = atoms.iter().map(|at| at.w).sum();
        for at in atoms.iter_mut() {
            at.w /= total;
        }
        sigma = assemble(&atoms, n);
        f = obj.value(&sigma);
        iterations = t + 1;
    }

    if !converged && !flags.iter().any(|s| s == "stalled") {
        flags.push("max_iters".to_string());
    }
    if obj.floor_active(&sigma) {
        flags.push("q_floor".to_string());
    }
    let gap = if lower.is_finite() { (f - lower).max(0.0) } else { f64::INFINITY };
    let point = SepPoint::from_atoms_unchecked(
        dims,
        atoms.iter().map(|at| (at.w, at.a.clone(), at.b.clone())).collect(),
    );
    FwOutcome { value: f, gap, iterations, converged, flags, trace, point }
}
