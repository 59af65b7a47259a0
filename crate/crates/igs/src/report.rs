//! Self-describing dimension reports.
//!
//! A report carries the theoretical and/or empirical dimension together
//! with every parameter needed to reproduce the numbers (input hash, seeds,
//! step counts, regression range), plus tool version and a timestamp.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boxcover::BoxDimReport;
use crate::lyapunov::{LyapunovEstimate, RandomTheory};
use crate::spectral::DeterministicTheory;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DimensionReport {
    pub tool: String,
    pub version: String,
    pub created_unix: u64,
    /// SHA-256 of the input system file, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theoretical: Option<TheoreticalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<EmpiricalReport>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TheoreticalReport {
    /// "spectral" for deterministic systems, "lyapunov" for random ones.
    pub method: String,
    pub dimension: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_stderr: Option<f64>,
    pub diagnostics: serde_json::Value,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EmpiricalReport {
    pub dimension: f64,
    pub slope_stderr: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub l_min: u32,
    pub l_max: u32,
    pub node_count: u32,
    pub arc_count: u64,
    pub diameter: u32,
    pub monotonicity_repaired: bool,
    /// Box diameter convention: boxes are balls of radius floor(L/2), so
    /// box diameters are at most L (not strictly below it).
    pub box_convention: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub curve: Vec<CurvePoint>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CurvePoint {
    pub l: u32,
    pub n_l: u32,
}

pub fn file_hash(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex::encode(hasher.finalize())
}

fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn new_report(system_id: Option<String>) -> DimensionReport {
    DimensionReport {
        tool: "igs".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix: now_unix(),
        system_id,
        theoretical: None,
        empirical: None,
    }
}

pub fn spectral_section(theory: &DeterministicTheory) -> TheoreticalReport {
    let family: Vec<Vec<Vec<u64>>> = theory
        .family
        .members
        .iter()
        .map(|m| m.rows().map(|r| r.to_vec()).collect())
        .collect();
    let d_min: Vec<Vec<Vec<u64>>> = theory
        .rho_min
        .argmin
        .iter()
        .map(|&i| theory.family.members[i].rows().map(|r| r.to_vec()).collect())
        .collect();
    TheoreticalReport {
        method: "spectral".to_string(),
        dimension: theory.dimension,
        dim_stderr: None,
        diagnostics: serde_json::json!({
            "arc_matrix": theory.arc_matrix.rows().collect::<Vec<_>>(),
            "rho_arc": theory.rho_arc,
            "rho_min": theory.rho_min.value,
            "path_chi_sets": theory.paths.per_color.iter()
                .map(|e| e.chi_set.iter().map(|c| c.as_slice().to_vec()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "path_counts": theory.paths.per_color.iter().map(|e| e.path_count()).collect::<Vec<_>>(),
            "family": family,
            "family_min": d_min,
        }),
    }
}

fn estimate_json(est: &LyapunovEstimate) -> serde_json::Value {
    serde_json::json!({
        "value": est.value,
        "stderr": est.stderr,
        "steps": est.steps,
        "trials": est.trials,
    })
}

pub fn lyapunov_section(theory: &RandomTheory, seed: u64) -> TheoreticalReport {
    TheoreticalReport {
        method: "lyapunov".to_string(),
        dimension: theory.dimension,
        dim_stderr: Some(theory.dim_stderr),
        diagnostics: serde_json::json!({
            "arc_set_members": theory.arc_set.members.iter()
                .map(|m| m.rows().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "arc_set_probs": theory.arc_set.probs.iter()
                .map(|p| format!("{}/{}", p.numer(), p.denom())).collect::<Vec<_>>(),
            "arc_exponent": estimate_json(&theory.arc_estimate),
            "arc_expectation_bound": theory.arc_bound.value,
            "path_set_exponents": theory.lmin.estimates.iter()
                .map(|(label, e)| serde_json::json!({"label": label, "estimate": estimate_json(e)}))
                .collect::<Vec<_>>(),
            "min_exponent": estimate_json(theory.lmin.min_estimate()),
            "min_label": theory.lmin.min_label(),
            "tie_indices": theory.lmin.ties,
            "seed": seed,
        }),
    }
}

pub fn empirical_section(
    report: &BoxDimReport,
    level: Option<u32>,
    seed: Option<u64>,
) -> EmpiricalReport {
    EmpiricalReport {
        dimension: report.estimate,
        slope_stderr: report.fit.stderr,
        intercept: report.fit.intercept,
        r_squared: report.fit.r_squared,
        l_min: report.fit.l_min,
        l_max: report.fit.l_max,
        node_count: report.curve.node_count,
        arc_count: report.curve.arc_count,
        diameter: report.curve.diameter,
        monotonicity_repaired: report.curve.repaired,
        box_convention: "balls of radius floor(L/2); box diameter <= L".to_string(),
        level,
        seed,
        curve: report.curve.points.iter().map(|&(l, n)| CurvePoint { l, n_l: n }).collect(),
    }
}
