//! Deterministic-case matrix theory.
//!
//! The arc matrix M (row i = chi of the colour-i rule) drives arc-count
//! growth; the family of path matrices (row i = chi of a simple boundary
//! path in the colour-i rule) drives distance growth through its minimal
//! spectral radius. The dimension of the graph limit is the ratio of the
//! two logarithms.

use thiserror::Error;

use crate::graph::{ChiVector, Color, NodeId, RuleGraph};
use crate::matrix::{IntMatrix, MatF64};
use crate::rng;
use crate::system::SystemSpec;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("operation requires a deterministic system (one variant per color)")]
    NotDeterministic,
    #[error("more than {cap} simple boundary paths in rule for color {color}")]
    PathExplosion { color: Color, cap: usize },
    #[error("power iteration did not converge within {budget} iterations")]
    NotConverged { budget: usize },
    #[error("matrix {matrix} is not primitive and has no closed form")]
    NonPrimitiveInput { matrix: IntMatrix },
    #[error("family member {index} ({matrix}) is not primitive (path choice {provenance:?})")]
    NonPrimitiveMember { index: usize, matrix: IntMatrix, provenance: Vec<usize> },
    #[error("system is not primitive: {matrix} fails the primitivity test")]
    NotPrimitiveSystem { matrix: IntMatrix },
    #[error("{members} member matrices to the power {n} exceeds the exhaustive budget")]
    TooLarge { members: usize, n: u32 },
}

/// Absolute tolerance of the Perron root computation.
pub const RADIUS_TOL: f64 = 1e-10;
/// Ties within this distance of the minimum all enter the argmin set.
pub const RHO_MIN_TIE_TOL: f64 = 1e-9;
const POWER_ITERATION_BUDGET: usize = 100_000;

/// True iff some power `m^k`, `k <= (dim-1)^2 + 1`, is entrywise positive
/// (Wielandt bound). Saturating arithmetic keeps positivity patterns intact.
pub fn is_primitive(m: &IntMatrix) -> bool {
    let d = m.dim();
    if d == 0 {
        return false;
    }
    let bound = (d - 1) * (d - 1) + 1;
    let mut p = m.clone();
    for _ in 0..bound {
        if p.is_positive() {
            return true;
        }
        p = p.mul_sat(m);
    }
    p.is_positive()
}

fn wielandt_exponent(m: &IntMatrix) -> Option<u32> {
    let d = m.dim();
    let bound = (d - 1) * (d - 1) + 1;
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_positive() {
            return Some(k as u32);
        }
        p = p.mul_sat(m);
    }
    None
}

/// Perron root of a positive matrix with a certified Collatz-Wielandt
/// interval: iterate `w <- P w`; min and max of the ratios sandwich the
/// root, and the gap contracts geometrically for positive `P`.
fn perron_root_positive(p: &MatF64, tol: f64) -> Result<f64, SpectralError> {
    let d = p.dim;
    let mut w = vec![1.0f64; d];
    for _ in 0..POWER_ITERATION_BUDGET {
        let next = p.col_vec_mul(&w);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..d {
            let r = next[i] / w[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let norm: f64 = next.iter().sum();
        w = next.into_iter().map(|x| x / norm).collect();
    }
    Err(SpectralError::NotConverged { budget: POWER_ITERATION_BUDGET })
}

fn closed_form_2x2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let t = a + d;
    let disc = (a - d) * (a - d) + 4.0 * b * c;
    // nonnegative matrices have a real spectrum here
    0.5 * (t + disc.max(0.0).sqrt())
}

/// Spectral radius of a nonnegative integer matrix.
///
/// Primitive input: power iteration on the first positive power `m^k`
/// (k within the Wielandt bound) with a Collatz-Wielandt stopping rule at
/// absolute tolerance 1e-10, then the k-th root. Non-primitive 2x2 input
/// falls back to the closed form; anything else is rejected.
pub fn spectral_radius(m: &IntMatrix) -> Result<f64, SpectralError> {
    if m.dim() == 1 {
        return Ok(m.get(0, 0) as f64);
    }
    if let Some(k) = wielandt_exponent(m) {
        let p = m.pow(k).to_f64();
        let root = perron_root_positive(&p, RADIUS_TOL)?;
        return Ok(root.powf(1.0 / k as f64));
    }
    if m.dim() == 2 {
        return Ok(closed_form_2x2(
            m.get(0, 0) as f64,
            m.get(0, 1) as f64,
            m.get(1, 0) as f64,
            m.get(1, 1) as f64,
        ));
    }
    Err(SpectralError::NonPrimitiveInput { matrix: m.clone() })
}

/// Spectral radius of a nonnegative float matrix (probability-weighted
/// means, sampled products). Same strategy as the integer version.
pub fn spectral_radius_f64(m: &MatF64) -> Result<f64, SpectralError> {
    let d = m.dim;
    if d == 1 {
        return Ok(m.get(0, 0));
    }
    let bound = (d - 1) * (d - 1) + 1;
    let mut p = m.clone();
    let mut k = 1u32;
    let mut found = p.is_positive();
    while !found && (k as usize) < bound {
        p = p.mul(m);
        k += 1;
        found = p.is_positive();
    }
    if found {
        let root = perron_root_positive(&p, RADIUS_TOL)?;
        return Ok(root.powf(1.0 / k as f64));
    }
    if d == 2 {
        return Ok(closed_form_2x2(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)));
    }
    Err(SpectralError::NotConverged { budget: POWER_ITERATION_BUDGET })
}

/// Perron (right) eigenvector of a primitive matrix, normalised to sum 1.
pub fn perron_vector(m: &IntMatrix) -> Result<Vec<f64>, SpectralError> {
    let k = wielandt_exponent(m)
        .ok_or_else(|| SpectralError::NonPrimitiveInput { matrix: m.clone() })?;
    let p = m.pow(k).to_f64();
    let d = p.dim;
    let mut w = vec![1.0 / d as f64; d];
    for _ in 0..POWER_ITERATION_BUDGET {
        let next = p.col_vec_mul(&w);
        let norm: f64 = next.iter().sum();
        let next: Vec<f64> = next.into_iter().map(|x| x / norm).collect();
        let delta: f64 =
            next.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        w = next;
        if delta < 1e-14 {
            return Ok(w);
        }
    }
    Err(SpectralError::NotConverged { budget: POWER_ITERATION_BUDGET })
}

/// Arc matrix of a deterministic system: row i is chi of the colour-i rule.
pub fn build_arc_matrix(spec: &SystemSpec) -> Result<IntMatrix, SpectralError> {
    if !spec.is_deterministic() {
        return Err(SpectralError::NotDeterministic);
    }
    let rows: Vec<ChiVector> =
        spec.rules.iter().map(|variants| variants[0].rule.graph.chi()).collect();
    Ok(IntMatrix::from_chi_rows(&rows))
}

/// All simple boundary paths of one rule graph.
#[derive(Clone, Debug)]
pub struct PathChiEntry {
    /// Deduplicated chi vectors, sorted (the set 𝒱 for this rule).
    pub chi_set: Vec<ChiVector>,
    /// Chi of every simple path, in enumeration order (multiset).
    pub path_chis: Vec<ChiVector>,
}

impl PathChiEntry {
    pub fn path_count(&self) -> usize {
        self.path_chis.len()
    }
}

/// Per-colour path chi data for a deterministic system.
#[derive(Clone, Debug)]
pub struct PathChiSet {
    pub per_color: Vec<PathChiEntry>,
}

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Depth-first enumeration of all simple undirected paths between the two
/// boundary nodes. Arc colours are counted irrespective of direction.
pub fn enumerate_ab_paths(rule: &RuleGraph, cap: usize) -> Result<PathChiEntry, SpectralError> {
    let g = &rule.graph;
    let n = g.node_count() as usize;
    let lambda = g.num_colors() as usize;
    // undirected adjacency with colours
    let mut adj: Vec<Vec<(NodeId, Color)>> = vec![Vec::new(); n];
    for a in g.arcs() {
        adj[a.tail as usize].push((a.head, a.color));
        adj[a.head as usize].push((a.tail, a.color));
    }
    for list in &mut adj {
        list.sort();
    }

    let mut on_path = vec![false; n];
    let mut chi = vec![0u64; lambda];
    let mut out: Vec<ChiVector> = Vec::new();
    // iterative DFS: stack of (node, next neighbor index)
    let mut stack: Vec<(usize, usize)> = vec![(rule.node_a as usize, 0)];
    on_path[rule.node_a as usize] = true;
    let target = rule.node_b as usize;
    while let Some((v, idx)) = stack.last_mut() {
        let v = *v;
        if let Some(&(to, color)) = adj[v].get(*idx) {
            *idx += 1;
            let to = to as usize;
            if on_path[to] {
                continue;
            }
            chi[(color - 1) as usize] += 1;
            if to == target {
                out.push(ChiVector(chi.clone()));
                if out.len() > cap {
                    return Err(SpectralError::PathExplosion {
                        color: 0,
                        cap,
                    });
                }
                chi[(color - 1) as usize] -= 1;
            } else {
                on_path[to] = true;
                stack.push((to, 0));
            }
        } else {
            stack.pop();
            on_path[v] = false;
            // undo the colour of the arc that led here
            if let Some(&(pv, pidx)) = stack.last() {
                let (_, color) = adj[pv][pidx - 1];
                chi[(color - 1) as usize] -= 1;
            }
        }
    }
    let mut chi_set = out.clone();
    chi_set.sort();
    chi_set.dedup();
    Ok(PathChiEntry { chi_set, path_chis: out })
}

/// Path chi data for every colour of a deterministic system.
pub fn enumerate_path_chi_set(spec: &SystemSpec) -> Result<PathChiSet, SpectralError> {
    if !spec.is_deterministic() {
        return Err(SpectralError::NotDeterministic);
    }
    let mut per_color = Vec::with_capacity(spec.rules.len());
    for (ci, variants) in spec.rules.iter().enumerate() {
        let entry = enumerate_ab_paths(&variants[0].rule, DEFAULT_PATH_CAP).map_err(|e| {
            match e {
                SpectralError::PathExplosion { cap, .. } => {
                    SpectralError::PathExplosion { color: ci as u32 + 1, cap }
                }
                other => other,
            }
        })?;
        per_color.push(entry);
    }
    Ok(PathChiSet { per_color })
}

/// The family of path matrices: one member per choice of a chi vector from
/// each colour's set, with the row-choice indices kept as provenance.
#[derive(Clone, Debug)]
pub struct MatrixFamily {
    pub members: Vec<IntMatrix>,
    /// For each member, the index into each colour's chi-set.
    pub provenance: Vec<Vec<usize>>,
}

impl MatrixFamily {
    /// Ad-hoc family without path provenance (diagnostics, counterexamples).
    pub fn from_members(members: Vec<IntMatrix>) -> Self {
        let provenance = (0..members.len()).map(|i| vec![i]).collect();
        MatrixFamily { members, provenance }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Builds the path matrix family of a deterministic system: the Cartesian
/// product over colours of the deduplicated path chi-sets.
pub fn build_path_matrix_family(spec: &SystemSpec) -> Result<MatrixFamily, SpectralError> {
    let paths = enumerate_path_chi_set(spec)?;
    let sizes: Vec<usize> = paths.per_color.iter().map(|e| e.chi_set.len()).collect();
    let mut members = Vec::new();
    let mut provenance = Vec::new();
    let mut choice = vec![0usize; sizes.len()];
    loop {
        let rows: Vec<ChiVector> = choice
            .iter()
            .enumerate()
            .map(|(i, &j)| paths.per_color[i].chi_set[j].clone())
            .collect();
        members.push(IntMatrix::from_chi_rows(&rows));
        provenance.push(choice.clone());
        // odometer increment, last colour fastest
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return Ok(MatrixFamily { members, provenance });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < sizes[pos] {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Minimal spectral radius over a family, with all members tied within
/// 1e-9 of the minimum.
#[derive(Clone, Debug)]
pub struct RhoMin {
    pub value: f64,
    pub radii: Vec<f64>,
    pub argmin: Vec<usize>,
}

pub fn rho_min(family: &MatrixFamily) -> Result<RhoMin, SpectralError> {
    assert!(!family.is_empty(), "family must be nonempty");
    let mut radii = Vec::with_capacity(family.len());
    for (index, member) in family.members.iter().enumerate() {
        if !is_primitive(member) {
            return Err(SpectralError::NonPrimitiveMember {
                index,
                matrix: member.clone(),
                provenance: family.provenance[index].clone(),
            });
        }
        radii.push(spectral_radius(member)?);
    }
    let value = radii.iter().cloned().fold(f64::INFINITY, f64::min);
    let argmin = radii
        .iter()
        .enumerate()
        .filter(|(_, &r)| r - value <= RHO_MIN_TIE_TOL)
        .map(|(i, _)| i)
        .collect();
    Ok(RhoMin { value, radii, argmin })
}

/// Full deterministic theory output.
#[derive(Clone, Debug)]
pub struct DeterministicTheory {
    pub arc_matrix: IntMatrix,
    pub rho_arc: f64,
    pub paths: PathChiSet,
    pub family: MatrixFamily,
    pub rho_min: RhoMin,
    pub dimension: f64,
}

/// dim = log rho(M) / log rho_min over the path matrix family. Requires a
/// primitive system (arc matrix and every family member primitive).
pub fn deterministic_dimension(spec: &SystemSpec) -> Result<DeterministicTheory, SpectralError> {
    let arc_matrix = build_arc_matrix(spec)?;
    if !is_primitive(&arc_matrix) {
        return Err(SpectralError::NotPrimitiveSystem { matrix: arc_matrix });
    }
    let paths = enumerate_path_chi_set(spec)?;
    let family = build_path_matrix_family(spec)?;
    let rho_min = rho_min(&family).map_err(|e| match e {
        SpectralError::NonPrimitiveMember { matrix, .. } => {
            SpectralError::NotPrimitiveSystem { matrix }
        }
        other => other,
    })?;
    let rho_arc = spectral_radius(&arc_matrix)?;
    let dimension = rho_arc.ln() / rho_min.value.ln();
    Ok(DeterministicTheory { arc_matrix, rho_arc, paths, family, rho_min, dimension })
}

/// Exact minimum of ||x0 * D_1 ... D_n||_1 over all length-n member
/// sequences (matrices may differ per step). Branch-and-bound on the
/// smallest possible per-step growth factor.
pub fn min_product_norm(
    family: &MatrixFamily,
    x0: &ChiVector,
    n: u32,
) -> Result<u64, SpectralError> {
    let members = family.len();
    if n > 8 || (members as f64).powi(n as i32) > 1e7 {
        return Err(SpectralError::TooLarge { members, n });
    }
    // smallest row sum over all members: a lower bound on the factor any
    // further multiplication applies to the l1 norm
    let min_factor: u64 = family
        .members
        .iter()
        .flat_map(|m| m.rows().map(|r| r.iter().sum::<u64>()))
        .min()
        .unwrap_or(0);

    fn search(
        family: &MatrixFamily,
        x: &[u64],
        remaining: u32,
        min_factor: u64,
        best: &mut u64,
    ) {
        let norm: u64 = x.iter().sum();
        if remaining == 0 {
            *best = (*best).min(norm);
            return;
        }
        // prune: even the cheapest continuation cannot beat the best
        let bound = norm.saturating_mul(min_factor.saturating_pow(remaining));
        if bound >= *best {
            return;
        }
        for m in &family.members {
            let next = m.row_vec_mul(x);
            search(family, &next, remaining - 1, min_factor, best);
        }
    }

    let mut best = u64::MAX;
    search(family, x0.as_slice(), n, min_factor, &mut best);
    Ok(best)
}

/// Sampled check of the product lower bound rho(prod D) >= rho_min^n.
#[derive(Clone, Debug)]
pub struct ProductBoundReport {
    pub n: u32,
    pub trials: u32,
    pub rho_min: f64,
    /// Smallest observed ratio rho(prod) / rho_min^n.
    pub min_ratio: f64,
    pub violations: u32,
    /// One witness sequence per worst ratio, if any ratio fell below 1-1e-9.
    pub worst_sequence: Vec<usize>,
}

/// Samples `trials` random member sequences of length `n` and checks the
/// spectral-radius inequality for each. Violations are reported, never
/// thrown: on families built from path chi-sets the bound is a theorem,
/// on ad-hoc families it can fail.
pub fn check_product_bound(
    family: &MatrixFamily,
    n: u32,
    trials: u32,
    seed: u64,
) -> Result<ProductBoundReport, SpectralError> {
    use rand::Rng;
    let rho = rho_min(family)?;
    let bound = rho.value.powi(n as i32);
    let mut min_ratio = f64::INFINITY;
    let mut violations = 0u32;
    let mut worst_sequence = Vec::new();
    for trial in 0..trials {
        let mut rng = rng::keyed_stream(seed, trial as u64, 0);
        let seq: Vec<usize> = (0..n).map(|_| rng.gen_range(0..family.len())).collect();
        let mut product = family.members[seq[0]].clone();
        for &i in &seq[1..] {
            product = product.mul(&family.members[i]);
        }
        let r = spectral_radius_f64(&product.to_f64())?;
        let ratio = r / bound;
        if ratio < min_ratio {
            min_ratio = ratio;
            worst_sequence = seq.clone();
        }
        if ratio < 1.0 - 1e-9 {
            violations += 1;
        }
    }
    Ok(ProductBoundReport {
        n,
        trials,
        rho_min: rho.value,
        min_ratio,
        violations,
        worst_sequence,
    })
}
