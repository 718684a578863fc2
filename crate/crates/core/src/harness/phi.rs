//! Maximally entangled states against the boundary isotropic state.

use serde::Serialize;

use super::{CheckReport, SampleRecord};
use crate::entropy::ExtendedReal;
use crate::error::{Error, Result};
use crate::io::fmt_sig;
use crate::matqi::{isotropic, max_entangled};
use crate::povm::{iso_two_outcome_povm, isotropic_povm, measured_rel_entropy, twirl_basis_povm, PovmClass};

const TOL_CLOSED_FORM: f64 = 1e-9;
const TOL_SWEEP: f64 = 1e-6;
const SWEEP_STEPS: usize = 40;
const ISO_STEPS: usize = 40;

#[derive(Debug, Clone, Serialize)]
pub struct PhiRow {
    pub d: usize,
    pub closed_form: f64,
    pub lo_value: f64,
    pub two_outcome_value: f64,
    /// Largest value over the PPT two-outcome isotropic POVM grid.
    pub sweep_max: f64,
    /// Smallest twirl-basis value over separable isotropic σ, and where.
    pub sep_min: f64,
    pub sep_argmin: f64,
    pub pass: bool,
}

fn finite(v: ExtendedReal, what: &str) -> Result<f64> {
    match v {
        ExtendedReal::Finite(x) => Ok(x),
        ExtendedReal::PosInfinity => Err(Error::Invariant(format!("{what} is infinite"))),
    }
}

fn row(d: usize) -> Result<PhiRow> {
    let closed_form = ((d + 1) as f64).log2() - 1.0;
    let phi = max_entangled(d)?;
    let p_star = 1.0 / (d + 1) as f64;
    let sigma = isotropic(d, p_star)?;
    let twirl = twirl_basis_povm(d)?;
    let lo_value = finite(measured_rel_entropy(&twirl, &phi, &sigma)?, "twirl-basis value")?;
    let two_outcome_value = finite(measured_rel_entropy(&iso_two_outcome_povm(d)?, &phi, &sigma)?, "two-outcome value")?;

    // both elements PPT: β ≥ α/(d+1) and 1−β ≥ (1−α)/(d+1)
    let mut grid: Vec<(f64, f64)> = Vec::new();
    for i in 0..=SWEEP_STEPS {
        let a = i as f64 / SWEEP_STEPS as f64;
        for j in 0..=SWEEP_STEPS {
            grid.push((a, j as f64 / SWEEP_STEPS as f64));
        }
        grid.push((a, a / (d + 1) as f64));
        grid.push((a, 1.0 - (1.0 - a) / (d + 1) as f64));
    }
    let mut sweep_max = f64::NEG_INFINITY;
    for (a, b) in grid {
        let ppt = b >= a / (d + 1) as f64 - 1e-15 && 1.0 - b >= (1.0 - a) / (d + 1) as f64 - 1e-15;
        if !ppt || a == b {
            continue;
        }
        let m = isotropic_povm(d, a, b, PovmClass::Ppt)?;
        sweep_max = sweep_max.max(measured_rel_entropy(&m, &phi, &sigma)?.value());
    }

    // separable isotropic states: p from −1/(d²−1) up to 1/(d+1)
    let lo = -1.0 / (d * d - 1) as f64;
    let (mut sep_min, mut sep_argmin) = (f64::INFINITY, f64::NAN);
    for i in 0..=ISO_STEPS {
        let p = lo + (p_star - lo) * i as f64 / ISO_STEPS as f64;
        let p = if i == ISO_STEPS { p_star } else { p };
        let v = measured_rel_entropy(&twirl, &phi, &isotropic(d, p)?)?.value();
        if v < sep_min {
            sep_min = v;
            sep_argmin = p;
        }
    }

    let pass = (lo_value - closed_form).abs() <= TOL_CLOSED_FORM
        && (two_outcome_value - closed_form).abs() <= TOL_CLOSED_FORM
        && sweep_max <= closed_form + TOL_SWEEP
        && sep_argmin == p_star;
    Ok(PhiRow { d, closed_form, lo_value, two_outcome_value, sweep_max, sep_min, sep_argmin, pass })
}

/// Rows for `d = 2..=d_max`.
pub fn phi_table(d_max: usize) -> Result<Vec<PhiRow>> {
    if !(2..=6).contains(&d_max) {
        return Err(Error::Domain(format!("d_max must lie in 2..=6, got {d_max}")));
    }
    (2..=d_max).map(row).collect()
}

pub const PHI_CSV_HEADER: &str = "d,closed_form,lo_value,two_outcome_value,sweep_max,pass";

pub fn phi_table_csv(rows: &[PhiRow]) -> String {
    let mut out = String::from(PHI_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.d,
            fmt_sig(r.closed_form),
            fmt_sig(r.lo_value),
            fmt_sig(r.two_outcome_value),
            fmt_sig(r.sweep_max),
            r.pass
        ));
    }
    out
}

/// One record per `d`; the margin is the tightest of the four sub-checks,
/// each measured against its own tolerance.
pub fn check_phi_table(d_max: usize) -> Result<CheckReport> {
    let rows = phi_table(d_max)?;
    let records = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let margins = [
                TOL_CLOSED_FORM - (r.lo_value - r.closed_form).abs(),
                TOL_CLOSED_FORM - (r.two_outcome_value - r.closed_form).abs(),
                TOL_SWEEP - (r.sweep_max - r.closed_form),
            ];
            let m = margins.iter().cloned().fold(f64::INFINITY, f64::min);
            let mut rec = SampleRecord::new(i, r.d as u64, m, 0.0, 0.0)
                .with("d", r.d as f64)
                .with("closed_form", r.closed_form)
                .with("lo_value", r.lo_value)
                .with("two_outcome_value", r.two_outcome_value)
                .with("sweep_max", r.sweep_max)
                .with("sep_min", r.sep_min)
                .with("sep_argmin", r.sep_argmin);
            rec.passed = r.pass;
            if r.sep_argmin != 1.0 / (r.d + 1) as f64 {
                rec = rec.flag("separable minimum not at the boundary");
            }
            rec
        })
        .collect();
    Ok(CheckReport::from_records("phi", serde_json::json!({ "d_max": d_max }), 0, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_values() {
        let rows = phi_table(4).unwrap();
        assert_abs_diff_eq!(rows[0].closed_form, 0.584_962_500_721_156, epsilon = 1e-12);
        assert_abs_diff_eq!(rows[1].closed_form, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rows[2].closed_form, 1.321_928_094_887_362, epsilon = 1e-12);
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
    }

    #[test]
    fn twirl_basis_closed_form_over_isotropic() {
        // Φ_d under twirl-then-basis is uniform on the d diagonal outcomes;
        // iso(p) gives each of them p/d + (1−p)/d², so D = −log2(p + (1−p)/d)
        for d in 2..=4 {
            let phi = max_entangled(d).unwrap();
            let tw = twirl_basis_povm(d).unwrap();
            for &p in &[0.0, 0.1, 1.0 / (d + 1) as f64] {
                let v = measured_rel_entropy(&tw, &phi, &isotropic(d, p).unwrap()).unwrap().value();
                assert_abs_diff_eq!(v, -(p + (1.0 - p) / d as f64).log2(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn rejects_bad_range() {
        assert!(phi_table(1).is_err());
        assert!(phi_table(7).is_err());
    }

    #[test]
    fn csv_is_stable() {
        let a = phi_table_csv(&phi_table(3).unwrap());
        let b = phi_table_csv(&phi_table(3).unwrap());
        assert_eq!(a, b);
        assert!(a.contains("\n3,1,1,1,"));
    }
}
