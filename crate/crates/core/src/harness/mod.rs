//! Randomized verification batteries for single-copy consequences of the
//! entanglement inequalities, with per-sample records and worst margins.
//!
//! Every sample record stores `margin = lhs − rhs + slack`, where `slack`
//! collects the solver certificates that could otherwise hide a violation.
//! A sample fails when `margin < −TOL_CHECK`. Reports are reproducible from
//! `(check, params, seed)`: sample `i` draws from [`sample_seed`]`(seed, i)`.

mod batteries;
mod phi;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::io::fmt_sig;
use crate::sepopt::FwOptions;

pub use batteries::{
    check_asymptotic_continuity, check_asymptotic_continuity_with, check_classical_extension_bound,
    check_classical_extension_bound_with, check_donald_horodecki, check_donald_horodecki_with, check_pinsker_chain,
    check_pinsker_chain_with, check_pure_state_entropy, check_pure_state_entropy_with, check_ssa_strengthening,
    check_ssa_strengthening_with, continuity_bound, distance_lower_bound, donald_horodecki_bound, family_measured_ree,
};
pub use phi::{check_phi_table, phi_table, phi_table_csv, PhiRow, PHI_CSV_HEADER};

pub const TOL_CHECK: f64 = 1e-6;
/// Random one-way LOCC POVMs in the default family.
pub const DEFAULT_RANDOM_POVMS: usize = 8;

/// Solver settings shared by the batteries. The gaps they leave are added
/// to each sample's slack, so looser settings only cost sharpness.
#[derive(Debug, Clone, Serialize)]
pub struct HarnessConfig {
    pub fw_tol: f64,
    pub fw_max_iters: usize,
    pub lmo_restarts: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { fw_tol: 1e-3, fw_max_iters: 1000, lmo_restarts: 8 }
    }
}

impl HarnessConfig {
    pub(crate) fn fw(&self, seed: u64) -> FwOptions {
        FwOptions {
            lmo_restarts: self.lmo_restarts,
            record_trace: false,
            ..FwOptions::new(self.fw_tol, self.fw_max_iters, seed)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub margin: f64,
    pub passed: bool,
    pub skipped: bool,
    pub values: serde_json::Map<String, serde_json::Value>,
    pub flags: Vec<String>,
}

impl SampleRecord {
    pub fn new(index: usize, seed: u64, lhs: f64, rhs: f64, slack: f64) -> Self {
        let margin = lhs - rhs + slack;
        Self {
            index,
            seed,
            lhs,
            rhs,
            slack,
            margin,
            passed: margin >= -TOL_CHECK,
            skipped: false,
            values: serde_json::Map::new(),
            flags: Vec::new(),
        }
    }

    pub fn skipped(index: usize, seed: u64, reason: &str) -> Self {
        let mut r = Self::new(index, seed, 0.0, 0.0, 0.0);
        r.skipped = true;
        r.flags.push(reason.to_string());
        r
    }

    pub fn with(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.to_string(), num(v));
        self
    }

    pub fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }

    pub(crate) fn flags_from(mut self, flags: &[String], prefix: &str) -> Self {
        for f in flags {
            let tagged = format!("{prefix}{f}");
            if !self.flags.contains(&tagged) {
                self.flags.push(tagged);
            }
        }
        self
    }
}

/// JSON number, with non-finite values spelled as strings.
pub(crate) fn num(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::from(fmt_sig(v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub samples: usize,
    pub skipped: usize,
    pub violations: usize,
    /// Minimum margin over evaluated samples; `+∞` when none were evaluated.
    #[serde(serialize_with = "ser_num")]
    pub worst_margin: f64,
    pub records: Vec<SampleRecord>,
}

fn ser_num<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    num(*v).serialize(s)
}

impl CheckReport {
    pub fn from_records(check: &str, params: serde_json::Value, seed: u64, records: Vec<SampleRecord>) -> Self {
        let evaluated = records.iter().filter(|r| !r.skipped);
        let worst_margin = evaluated.clone().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        Self {
            check: check.to_string(),
            params,
            seed,
            samples: records.len(),
            skipped: records.iter().filter(|r| r.skipped).count(),
            violations: evaluated.filter(|r| !r.passed).count(),
            worst_margin,
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub const SUMMARY_CSV_HEADER: &str = "check,seed,samples,skipped,violations,worst_margin";

pub fn summary_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(SUMMARY_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.check,
            r.seed,
            r.samples,
            r.skipped,
            r.violations,
            fmt_sig(r.worst_margin)
        ));
    }
    out
}

/// SplitMix64 of `seed` mixed with the sample index.
pub fn sample_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs samples in parallel; records come back in index order.
pub(crate) fn run_samples<F>(samples: usize, seed: u64, f: F) -> Result<Vec<SampleRecord>>
where
    F: Fn(usize, u64) -> Result<SampleRecord> + Sync,
{
    (0..samples).into_par_iter().map(|i| f(i, sample_seed(seed, i))).collect()
}
