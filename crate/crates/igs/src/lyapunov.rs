//! Random-case theory: random matrix sets and their Lyapunov exponents.
//!
//! Arc growth of a random system is driven by the set of arc matrices (one
//! member per combination of rule variants); distance growth by the family
//! of path-matrix sets (one set per assignment of a boundary path to every
//! rule graph). The dimension is the ratio of the arc-set exponent to the
//! minimal path-set exponent.
//!
//! Lyapunov exponents are estimated by Monte Carlo: a positive row vector
//! is pushed through an i.i.d. member sequence and renormalised in l1 each
//! step; the mean log factor over the accumulation window estimates the
//! exponent. A fixed warm-up aligns the vector with the attracting
//! direction first, so degenerate (single-member) sets reproduce
//! log(spectral radius) to machine precision.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::ChiVector;
use crate::matrix::{IntMatrix, MatF64};
use crate::rng;
use crate::spectral::{self, SpectralError};
use crate::system::{Prob, SystemSpec};

#[derive(Debug, Error)]
pub enum LyapunovError {
    #[error("{0}")]
    Spectral(#[from] SpectralError),
    #[error("set {label}: member {index} ({matrix}) has a zero row; products can collapse")]
    ZeroRow { label: String, index: usize, matrix: IntMatrix },
    #[error("set {label}: mean matrix is not primitive; estimates would depend on the start vector")]
    NonPrimitiveMean { label: String },
    #[error("need at least {min} {what}, got {got}")]
    BadParams { what: &'static str, min: u32, got: u32 },
    #[error("family of path-matrix sets has {count} members, over the cap {cap}")]
    TooManySets { count: u64, cap: u64 },
}

/// A finite set of nonnegative matrices with selection probabilities.
#[derive(Clone, Debug)]
pub struct RandomMatrixSet {
    pub members: Vec<IntMatrix>,
    pub probs: Vec<Prob>,
    /// Human-readable provenance: which variant/path choices built this set.
    pub label: String,
    /// Path index per rule graph, when the set came from path choices.
    pub path_choice: Option<Vec<usize>>,
}

impl RandomMatrixSet {
    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    /// Probability-weighted mean matrix.
    pub fn mean_matrix(&self) -> MatF64 {
        let mut mean = MatF64::zeros(self.dim());
        for (m, p) in self.members.iter().zip(&self.probs) {
            mean.add_scaled(m, ratio_to_f64(p));
        }
        mean
    }

    /// Primitivity of the set as a whole.
    ///
    /// No member may have a zero row (such a row can annihilate the working
    /// vector). Multi-member sets additionally need a primitive mean
    /// matrix: then almost every member sequence produces eventually
    /// positive products, which makes the estimate start-vector invariant.
    /// Individual members may be imprimitive — products with other members
    /// restore mixing, and for single-member sets the l1 norm of powers of
    /// any no-zero-row nonnegative matrix already grows at its spectral
    /// radius.
    pub fn check_primitive(&self) -> Result<(), LyapunovError> {
        for (index, m) in self.members.iter().enumerate() {
            if m.rows().any(|r| r.iter().all(|&x| x == 0)) {
                return Err(LyapunovError::ZeroRow {
                    label: self.label.clone(),
                    index,
                    matrix: m.clone(),
                });
            }
        }
        if self.members.len() > 1 && !is_primitive_f64(&self.mean_matrix()) {
            return Err(LyapunovError::NonPrimitiveMean { label: self.label.clone() });
        }
        Ok(())
    }
}

fn ratio_to_f64(p: &Prob) -> f64 {
    p.to_f64().expect("probability fits in f64")
}

fn is_primitive_f64(m: &MatF64) -> bool {
    let d = m.dim;
    let bound = (d - 1) * (d - 1) + 1;
    let mut p = m.clone();
    for _ in 0..bound {
        if p.is_positive() {
            return true;
        }
        p = p.mul(m);
    }
    p.is_positive()
}

/// How a Lyapunov value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    MonteCarlo,
    ExpectationBound,
}

/// A Lyapunov exponent estimate in natural-log units.
#[derive(Clone, Debug)]
pub struct LyapunovEstimate {
    pub value: f64,
    pub stderr: f64,
    pub steps: u32,
    pub trials: u32,
    pub method: EstimateMethod,
}

/// The arc-matrix set of a system: one member per combination of rule
/// variants `(j_1, ..., j_lambda)`, row i = chi of the chosen colour-i rule,
/// probability = product of the per-colour variant probabilities.
pub fn build_random_matrix_set(spec: &SystemSpec) -> RandomMatrixSet {
    let counts = spec.variant_counts();
    let mut members = Vec::new();
    let mut probs = Vec::new();
    let mut combo = vec![0usize; counts.len()];
    loop {
        let rows: Vec<ChiVector> = combo
            .iter()
            .enumerate()
            .map(|(i, &j)| spec.rules[i][j].rule.graph.chi())
            .collect();
        members.push(IntMatrix::from_chi_rows(&rows));
        probs.push(combo.iter().enumerate().map(|(i, &j)| spec.rules[i][j].prob).product());
        let mut pos = counts.len();
        loop {
            if pos == 0 {
                return RandomMatrixSet {
                    members,
                    probs,
                    label: "arc-set".to_string(),
                    path_choice: None,
                };
            }
            pos -= 1;
            combo[pos] += 1;
            if combo[pos] < counts[pos] {
                break;
            }
            combo[pos] = 0;
        }
    }
}

/// The collection of all path-matrix sets.
#[derive(Clone, Debug)]
pub struct ScriptD {
    pub sets: Vec<RandomMatrixSet>,
}

pub const DEFAULT_SET_CAP: u64 = 100_000;

/// Enumerates one `RandomMatrixSet` per assignment of a simple boundary
/// path to every rule graph. Counted over path lists, not chi-sets: two
/// paths with equal chi still give two (identical-valued) sets.
pub fn enumerate_script_d(spec: &SystemSpec, cap: u64) -> Result<ScriptD, LyapunovError> {
    // paths per rule graph, flattened in (color, variant) order
    let mut path_chis: Vec<Vec<ChiVector>> = Vec::new();
    for variants in &spec.rules {
        for v in variants {
            let entry = spectral::enumerate_ab_paths(&v.rule, spectral::DEFAULT_PATH_CAP)?;
            path_chis.push(entry.path_chis);
        }
    }
    let total: u64 = path_chis.iter().map(|p| p.len() as u64).product();
    if total > cap {
        return Err(LyapunovError::TooManySets { count: total, cap });
    }

    let counts = spec.variant_counts();
    // rule graph (i, j) sits at flat index offsets[i] + j
    let mut offsets = vec![0usize; counts.len()];
    for i in 1..counts.len() {
        offsets[i] = offsets[i - 1] + counts[i - 1];
    }

    let mut sets = Vec::with_capacity(total as usize);
    let sizes: Vec<usize> = path_chis.iter().map(|p| p.len()).collect();
    let mut assignment = vec![0usize; path_chis.len()];
    loop {
        // members: one per variant combination, row i = chi of the path
        // assigned to the chosen rule graph of colour i
        let mut members = Vec::new();
        let mut probs = Vec::new();
        let mut combo = vec![0usize; counts.len()];
        'combos: loop {
            let rows: Vec<ChiVector> = combo
                .iter()
                .enumerate()
                .map(|(i, &j)| path_chis[offsets[i] + j][assignment[offsets[i] + j]].clone())
                .collect();
            members.push(IntMatrix::from_chi_rows(&rows));
            probs.push(combo.iter().enumerate().map(|(i, &j)| spec.rules[i][j].prob).product());
            let mut pos = counts.len();
            loop {
                if pos == 0 {
                    break 'combos;
                }
                pos -= 1;
                combo[pos] += 1;
                if combo[pos] < counts[pos] {
                    break;
                }
                combo[pos] = 0;
            }
        }
        let label = {
            let mut parts = Vec::new();
            for (i, &qi) in counts.iter().enumerate() {
                for j in 0..qi {
                    parts.push(format!("{}.{}:#{}", i + 1, j + 1, assignment[offsets[i] + j] + 1));
                }
            }
            format!("paths({})", parts.join(", "))
        };
        sets.push(RandomMatrixSet {
            members,
            probs,
            label,
            path_choice: Some(assignment.clone()),
        });
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return Ok(ScriptD { sets });
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < sizes[pos] {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

/// Warm-up steps before accumulation starts. Long enough to align the
/// vector with the attracting direction so the per-step log factors are
/// stationary (and exactly log rho for single-member sets).
const BURN_IN: u32 = 256;

/// Monte-Carlo Lyapunov exponent with an explicit start vector.
pub fn lyapunov_mc_from(
    set: &RandomMatrixSet,
    start: &[f64],
    n: u32,
    trials: u32,
    seed: u64,
) -> Result<LyapunovEstimate, LyapunovError> {
    if n < 100 {
        return Err(LyapunovError::BadParams { what: "steps", min: 100, got: n });
    }
    if trials < 2 {
        return Err(LyapunovError::BadParams { what: "trials", min: 2, got: trials });
    }
    set.check_primitive()?;
    assert!(
        start.len() == set.dim() && start.iter().all(|&x| x >= 0.0) && start.iter().sum::<f64>() > 0.0,
        "start vector must be nonnegative and nonzero"
    );
    let thresholds = rng::thresholds(&set.probs);
    let members: Vec<MatF64> = set.members.iter().map(|m| m.to_f64()).collect();
    let d = set.dim();

    let mut per_trial = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut stream = rng::keyed_stream(seed, trial as u64, 0);
        let mut v: Vec<f64> = start.to_vec();
        let norm: f64 = v.iter().sum();
        for x in &mut v {
            *x /= norm;
        }
        let mut acc = 0.0f64;
        for step in 0..(BURN_IN + n) {
            let k = rng::draw_stream(&thresholds, &mut stream);
            let m = &members[k];
            let mut next = vec![0.0f64; d];
            for (i, &vi) in v.iter().enumerate() {
                if vi == 0.0 {
                    continue;
                }
                for j in 0..d {
                    next[j] += vi * m.get(i, j);
                }
            }
            let s: f64 = next.iter().sum();
            if step >= BURN_IN {
                acc += s.ln();
            }
            for x in &mut next {
                *x /= s;
            }
            v = next;
        }
        per_trial.push(acc / n as f64);
    }
    let mean = per_trial.iter().sum::<f64>() / trials as f64;
    let var = per_trial.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
        / (trials as f64 - 1.0);
    let stderr = (var / trials as f64).sqrt();
    Ok(LyapunovEstimate { value: mean, stderr, steps: n, trials, method: EstimateMethod::MonteCarlo })
}

/// Monte-Carlo Lyapunov exponent from the all-ones start vector.
pub fn lyapunov_mc(
    set: &RandomMatrixSet,
    n: u32,
    trials: u32,
    seed: u64,
) -> Result<LyapunovEstimate, LyapunovError> {
    let start = vec![1.0; set.dim()];
    lyapunov_mc_from(set, &start, n, trials, seed)
}

/// Jensen upper bound: log of the spectral radius of the mean matrix.
///
/// For i.i.d. nonnegative matrices, E||x X_1 ... X_n||_1 = ||x (E X)^n||_1,
/// so (1/n) log E||prod|| converges to log rho(E X), and Jensen's inequality
/// puts the Lyapunov exponent at or below it.
pub fn expectation_matrix_bound(set: &RandomMatrixSet) -> Result<LyapunovEstimate, LyapunovError> {
    let rho = spectral::spectral_radius_f64(&set.mean_matrix())?;
    Ok(LyapunovEstimate {
        value: rho.ln(),
        stderr: 0.0,
        steps: 0,
        trials: 0,
        method: EstimateMethod::ExpectationBound,
    })
}

/// Per-set estimates over the whole path-set family, with the minimum.
#[derive(Clone, Debug)]
pub struct LminReport {
    pub estimates: Vec<(String, LyapunovEstimate)>,
    pub min_index: usize,
    /// Sets whose estimate is within two pooled standard errors of the
    /// minimum (possible ties the Monte Carlo cannot separate).
    pub ties: Vec<usize>,
}

impl LminReport {
    pub fn min_estimate(&self) -> &LyapunovEstimate {
        &self.estimates[self.min_index].1
    }

    pub fn min_label(&self) -> &str {
        &self.estimates[self.min_index].0
    }
}

/// Estimates every set of the family with common random numbers (one shared
/// seed, hence identical member-index streams) and returns the minimum.
pub fn lmin_script_d(
    script: &ScriptD,
    n: u32,
    trials: u32,
    seed: u64,
) -> Result<LminReport, LyapunovError> {
    assert!(!script.sets.is_empty());
    let mut estimates = Vec::with_capacity(script.sets.len());
    for set in &script.sets {
        let est = lyapunov_mc(set, n, trials, seed)?;
        estimates.push((set.label.clone(), est));
    }
    let min_index = estimates
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.value.total_cmp(&b.1 .1.value))
        .map(|(i, _)| i)
        .unwrap();
    let min = &estimates[min_index].1;
    let ties = estimates
        .iter()
        .enumerate()
        .filter(|(i, (_, e))| {
            *i != min_index && {
                let pooled = (e.stderr * e.stderr + min.stderr * min.stderr).sqrt();
                e.value - min.value <= 2.0 * pooled
            }
        })
        .map(|(i, _)| i)
        .collect();
    Ok(LminReport { estimates, min_index, ties })
}

/// Monte-Carlo parameters for the random theory pipeline.
#[derive(Clone, Copy, Debug)]
pub struct McParams {
    pub steps: u32,
    pub trials: u32,
    pub seed: u64,
}

impl Default for McParams {
    fn default() -> Self {
        // stderr on the bundled examples is well under 0.005 at these sizes
        McParams { steps: 10_000, trials: 400, seed: 0 }
    }
}

/// Full random-case theory output.
#[derive(Clone, Debug)]
pub struct RandomTheory {
    pub arc_set: RandomMatrixSet,
    pub arc_estimate: LyapunovEstimate,
    pub arc_bound: LyapunovEstimate,
    pub lmin: LminReport,
    pub dimension: f64,
    /// First-order propagation of the two Monte-Carlo standard errors.
    pub dim_stderr: f64,
}

/// dim = L(arc set) / min L(path sets), with error propagation.
pub fn random_dimension(spec: &SystemSpec, params: McParams) -> Result<RandomTheory, LyapunovError> {
    let arc_set = build_random_matrix_set(spec);
    let arc_estimate = lyapunov_mc(&arc_set, params.steps, params.trials, params.seed)?;
    let arc_bound = expectation_matrix_bound(&arc_set)?;
    let script = enumerate_script_d(spec, DEFAULT_SET_CAP)?;
    let lmin = lmin_script_d(&script, params.steps, params.trials, params.seed)?;
    let a = arc_estimate.value;
    let b = lmin.min_estimate().value;
    let dimension = a / b;
    let dim_stderr = ((arc_estimate.stderr / b).powi(2)
        + (a * lmin.min_estimate().stderr / (b * b)).powi(2))
    .sqrt();
    Ok(RandomTheory { arc_set, arc_estimate, arc_bound, lmin, dimension, dim_stderr })
}

/// Simulates the vector recursion `alpha_{n} = Psi(alpha_{n-1})`: at each
/// step one member row-action is drawn per coordinate (all mass of
/// coordinate i applies row i of that coordinate's draw). Returns
/// `log ||alpha_t||_1` for `t = 0..=n`. Once the l1 norm passes 1e6 the
/// vector is rescaled and the log offset carried forward; the recursion
/// commutes with scaling, so growth statistics are unaffected.
pub fn stochastic_substitution_trajectory(
    set: &RandomMatrixSet,
    alpha0: &ChiVector,
    n: u32,
    seed: u64,
) -> Vec<f64> {
    let thresholds = rng::thresholds(&set.probs);
    let members: Vec<MatF64> = set.members.iter().map(|m| m.to_f64()).collect();
    let d = set.dim();
    assert_eq!(alpha0.len(), d);
    let mut stream = rng::keyed_stream(seed, 0, 1);
    let mut alpha: Vec<f64> = alpha0.as_slice().iter().map(|&x| x as f64).collect();
    let mut offset = 0.0f64;
    let mut series = Vec::with_capacity(n as usize + 1);
    series.push(alpha.iter().sum::<f64>().ln());
    for _ in 0..n {
        let mut next = vec![0.0f64; d];
        for (i, &ai) in alpha.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            let k = rng::draw_stream(&thresholds, &mut stream);
            let m = &members[k];
            for j in 0..d {
                next[j] += ai * m.get(i, j);
            }
        }
        let norm: f64 = next.iter().sum();
        if norm > 1e6 {
            offset += norm.ln();
            for x in &mut next {
                *x /= norm;
            }
        }
        alpha = next;
        series.push(offset + alpha.iter().sum::<f64>().ln());
    }
    series
}

/// Least-squares slope of a log-norm series over `t = from..=to`.
pub fn trajectory_slope(series: &[f64], from: usize, to: usize) -> f64 {
    let xs: Vec<f64> = (from..=to).map(|t| t as f64).collect();
    let ys = &series[from..=to];
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rational(n: i128, d: i128) -> Prob {
        Prob::new(n, d)
    }

    #[test]
    fn arc_set_of_random_example() {
        let set = build_random_matrix_set(&fixtures::random_example());
        assert_eq!(set.members.len(), 4);
        let expect = [(IntMatrix::from_rows(&[&[3, 3], &[4, 2]]), rational(1, 12)),
            (IntMatrix::from_rows(&[&[3, 3], &[2, 2]]), rational(1, 4)),
            (IntMatrix::from_rows(&[&[0, 3], &[4, 2]]), rational(1, 6)),
            (IntMatrix::from_rows(&[&[0, 3], &[2, 2]]), rational(1, 2))];
        for (i, (m, p)) in expect.iter().enumerate() {
            assert_eq!(&set.members[i], m);
            assert_eq!(&set.probs[i], p);
        }
        let sum: Prob = set.probs.iter().sum();
        assert_eq!(sum, rational(1, 1));
    }

    #[test]
    fn arc_set_of_deterministic_spec_is_singleton() {
        let set = build_random_matrix_set(&fixtures::deterministic_example());
        assert_eq!(set.members.len(), 1);
        assert_eq!(set.probs[0], rational(1, 1));
        assert_eq!(set.members[0], IntMatrix::from_rows(&[&[2, 3], &[5, 5]]));
    }

    #[test]
    fn script_d_of_random_example_has_twelve_sets() {
        let script = enumerate_script_d(&fixtures::random_example(), DEFAULT_SET_CAP).unwrap();
        assert_eq!(script.sets.len(), 12);
        for set in &script.sets {
            let sum: Prob = set.probs.iter().sum();
            assert_eq!(sum, rational(1, 1));
            assert_eq!(set.probs.len(), 4);
        }
        // the published first set: {(1 2 / 1 1) x2, (0 3 / 1 1) x2}
        let m_a = IntMatrix::from_rows(&[&[1, 2], &[1, 1]]);
        let m_b = IntMatrix::from_rows(&[&[0, 3], &[1, 1]]);
        let found = script.sets.iter().any(|s| {
            s.members[0] == m_a && s.members[1] == m_a && s.members[2] == m_b && s.members[3] == m_b
        });
        assert!(found, "published first set must appear in the enumeration");
    }

    #[test]
    fn script_d_of_deterministic_spec_degenerates_to_family() {
        let spec = fixtures::deterministic_example();
        let script = enumerate_script_d(&spec, DEFAULT_SET_CAP).unwrap();
        let family = crate::spectral::build_path_matrix_family(&spec).unwrap();
        assert_eq!(script.sets.len(), family.len());
        for set in &script.sets {
            assert_eq!(set.members.len(), 1);
            assert_eq!(set.probs[0], rational(1, 1));
            assert!(family.members.contains(&set.members[0]));
        }
    }

    #[test]
    fn degenerate_set_reproduces_spectral_radius() {
        let set = build_random_matrix_set(&fixtures::deterministic_example());
        let est = lyapunov_mc(&set, 1000, 4, 3).unwrap();
        let rho = crate::spectral::spectral_radius(&set.members[0]).unwrap();
        assert!(
            (est.value - rho.ln()).abs() < 1e-6,
            "singleton estimate {} vs log rho {}",
            est.value,
            rho.ln()
        );
        assert!(est.stderr < 1e-12);
    }

    #[test]
    fn constant_diagonal_singleton() {
        let set = RandomMatrixSet {
            members: vec![IntMatrix::from_rows(&[&[2, 0], &[0, 2]])],
            probs: vec![rational(1, 1)],
            label: "diag".into(),
            path_choice: None,
        };
        // twice the identity is reducible, but every product is constant
        // diagonal, so the exponent is exactly log 2
        let est = lyapunov_mc(&set, 500, 2, 0).unwrap();
        assert!((est.value - 2.0f64.ln()).abs() < 1e-12, "estimate {}", est.value);
        let series = stochastic_substitution_trajectory(&set, &ChiVector(vec![1, 1]), 50, 9);
        for (t, v) in series.iter().enumerate() {
            let expect = (t as f64) * 2.0f64.ln() + 2.0f64.ln();
            assert!((v - expect).abs() < 1e-9, "t={t}: {v} vs {expect}");
        }
    }

    #[test]
    fn start_vector_invariance() {
        let set = build_random_matrix_set(&fixtures::random_example());
        let e1 = lyapunov_mc_from(&set, &[1.0, 0.0], 2000, 40, 17).unwrap();
        let ones = lyapunov_mc_from(&set, &[1.0, 1.0], 2000, 40, 17).unwrap();
        let pooled = (e1.stderr * e1.stderr + ones.stderr * ones.stderr).sqrt();
        assert!(
            (e1.value - ones.value).abs() <= 3.0 * pooled,
            "start dependence: {} vs {} (pooled {})",
            e1.value,
            ones.value,
            pooled
        );
    }

    #[test]
    fn jensen_bound_on_fixture_sets() {
        let spec = fixtures::random_example();
        let arc_set = build_random_matrix_set(&spec);
        let script = enumerate_script_d(&spec, DEFAULT_SET_CAP).unwrap();
        let mut sets = vec![arc_set];
        sets.extend(script.sets.into_iter().take(4));
        for set in &sets {
            let mc = lyapunov_mc(set, 2000, 40, 5).unwrap();
            let bound = expectation_matrix_bound(set).unwrap();
            assert!(
                mc.value <= bound.value + 3.0 * mc.stderr,
                "{}: mc {} > bound {}",
                set.label,
                mc.value,
                bound.value
            );
        }
    }

    #[test]
    fn expectation_bound_of_arc_set() {
        let set = build_random_matrix_set(&fixtures::random_example());
        let bound = expectation_matrix_bound(&set).unwrap();
        let exact = ((3.0 + 31.0f64.sqrt()) / 2.0).ln();
        assert!((bound.value - exact).abs() < 1e-6, "{} vs {}", bound.value, exact);
        assert_eq!(bound.stderr, 0.0);
        // mean matrix is [[1, 3], [2.5, 2]]
        let mean = set.mean_matrix();
        assert!((mean.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((mean.get(0, 1) - 3.0).abs() < 1e-12);
        assert!((mean.get(1, 0) - 2.5).abs() < 1e-12);
        assert!((mean.get(1, 1) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bound_equals_estimate_for_singleton() {
        let set = build_random_matrix_set(&fixtures::deterministic_example());
        let mc = lyapunov_mc(&set, 1000, 4, 0).unwrap();
        let bound = expectation_matrix_bound(&set).unwrap();
        assert!((mc.value - bound.value).abs() < 1e-6);
    }

    #[test]
    fn estimates_are_seed_deterministic() {
        let set = build_random_matrix_set(&fixtures::random_example());
        let a = lyapunov_mc(&set, 500, 8, 77).unwrap();
        let b = lyapunov_mc(&set, 500, 8, 77).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn lmin_of_deterministic_degenerate_recovers_rho_min() {
        let spec = fixtures::deterministic_example();
        let script = enumerate_script_d(&spec, DEFAULT_SET_CAP).unwrap();
        let report = lmin_script_d(&script, 1000, 4, 1).unwrap();
        let family = crate::spectral::build_path_matrix_family(&spec).unwrap();
        let rm = crate::spectral::rho_min(&family).unwrap();
        assert!(
            (report.min_estimate().value - rm.value.ln()).abs() < 1e-6,
            "lmin {} vs log rho_min {}",
            report.min_estimate().value,
            rm.value.ln()
        );
    }

    #[test]
    fn trajectory_slope_matches_estimate() {
        let set = build_random_matrix_set(&fixtures::random_example());
        let series = stochastic_substitution_trajectory(&set, &ChiVector(vec![1, 0]), 1000, 21);
        let slope = trajectory_slope(&series, 200, 1000);
        let mc = lyapunov_mc(&set, 5000, 60, 21).unwrap();
        // slope scatter across seeds is a few times the MC stderr; use an
        // empirical three-sigma band for the slope itself
        let slopes: Vec<f64> = (0..8)
            .map(|s| {
                let ser =
                    stochastic_substitution_trajectory(&set, &ChiVector(vec![1, 0]), 1000, s);
                trajectory_slope(&ser, 200, 1000)
            })
            .collect();
        let sm = slopes.iter().sum::<f64>() / slopes.len() as f64;
        let sv = slopes.iter().map(|x| (x - sm) * (x - sm)).sum::<f64>()
            / (slopes.len() as f64 - 1.0);
        let pooled = (sv / slopes.len() as f64 + mc.stderr * mc.stderr).sqrt();
        assert!(
            (sm - mc.value).abs() <= 3.0 * pooled.max(3e-3),
            "trajectory slope {} (single {}) vs mc {} +- {}",
            sm,
            slope,
            mc.value,
            mc.stderr
        );
    }

    #[test]
    fn random_dimension_on_deterministic_spec_matches_spectral() {
        let spec = fixtures::deterministic_example();
        let theory = random_dimension(&spec, McParams { steps: 1000, trials: 4, seed: 1 }).unwrap();
        let spectral = crate::spectral::deterministic_dimension(&spec).unwrap();
        assert!(
            (theory.dimension - spectral.dimension).abs() < 1e-6,
            "degenerate lyapunov {} vs spectral {}",
            theory.dimension,
            spectral.dimension
        );
    }

    #[test]
    fn trajectory_slope_near_published_value() {
        let set = build_random_matrix_set(&fixtures::random_example());
        let series = stochastic_substitution_trajectory(&set, &ChiVector(vec![1, 0]), 1000, 3);
        let slope = trajectory_slope(&series, 200, 1000);
        assert!((slope - 1.4488).abs() < 0.03, "slope {slope}");
    }

    #[test]
    fn generated_arc_growth_matches_trajectory_law() {
        // log arc counts of generated levels grow at the same rate as the
        // vector recursion; compare mean slopes over a few seeds
        let spec = fixtures::random_example();
        let set = build_random_matrix_set(&spec);
        let x0 = spec.initial.chi();
        let mut gen_slopes = Vec::new();
        let mut traj_slopes = Vec::new();
        for seed in 0..6u64 {
            let trace =
                crate::system::generate(&spec, 8, seed, crate::system::DEFAULT_MAX_ARCS).unwrap();
            let log_arcs: Vec<f64> =
                trace.levels.iter().map(|g| (g.arc_count() as f64).ln()).collect();
            gen_slopes.push(trajectory_slope(&log_arcs, 2, 8));
            let series = stochastic_substitution_trajectory(&set, &x0, 8, seed);
            traj_slopes.push(trajectory_slope(&series, 2, 8));
        }
        let gm = gen_slopes.iter().sum::<f64>() / gen_slopes.len() as f64;
        let tm = traj_slopes.iter().sum::<f64>() / traj_slopes.len() as f64;
        assert!((gm - tm).abs() < 0.05, "generated {gm:.4} vs trajectory {tm:.4}");
    }

    #[test]
    fn zero_row_member_rejected() {
        let set = RandomMatrixSet {
            members: vec![
                IntMatrix::from_rows(&[&[1, 1], &[0, 0]]),
                IntMatrix::from_rows(&[&[1, 1], &[1, 1]]),
            ],
            probs: vec![rational(1, 2), rational(1, 2)],
            label: "bad".into(),
            path_choice: None,
        };
        assert!(matches!(set.check_primitive(), Err(LyapunovError::ZeroRow { index: 0, .. })));
    }

    #[test]
    fn imprimitive_member_is_fine_when_the_set_mixes() {
        // [[0,3],[2,0]] alone is imprimitive; mixed with [[0,3],[1,1]] the
        // mean matrix is primitive and estimation works
        let set = RandomMatrixSet {
            members: vec![
                IntMatrix::from_rows(&[&[0, 3], &[2, 0]]),
                IntMatrix::from_rows(&[&[0, 3], &[1, 1]]),
            ],
            probs: vec![rational(1, 2), rational(1, 2)],
            label: "mixing".into(),
            path_choice: None,
        };
        set.check_primitive().unwrap();
        let est = lyapunov_mc(&set, 1000, 8, 4).unwrap();
        assert!(est.value.is_finite());
    }
}
