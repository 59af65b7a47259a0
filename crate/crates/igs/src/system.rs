//! Iterated graph systems: definition, validation, substitution, generation.
//!
//! A system is an initial two-node graph with marked endpoints `A`, `B`, a
//! table of rule graphs (one list of variants per colour) and a probability
//! vector per colour. Deterministic systems are the special case of a single
//! variant with probability one.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arc, ColoredDigraph, GraphError, NodeId, RuleGraph};
use crate::rng;

/// Exact rational probability.
pub type Prob = Ratio<i128>;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("color {color}: bad probability vector: {detail}")]
    BadProbabilityVector { color: u32, detail: String },
    #[error("color {color} variant {variant}: boundary nodes at distance {distance} < 2")]
    RuleTooShort { color: u32, variant: usize, distance: u32 },
    #[error("color arity mismatch in {place}: expected {expected} colors, found {found}")]
    ColorArityMismatch { place: String, expected: u32, found: u32 },
    #[error("color {color} variant {variant}: invalid rule graph: {source}")]
    InvalidRuleGraph { color: u32, variant: usize, source: GraphError },
    #[error("invalid initial graph: {source}")]
    InvalidInitialGraph {
        #[from]
        source: GraphError,
    },
    #[error("initial graph is missing mark {name:?}")]
    MissingMark { name: String },
    #[error("projected arc count {projected} exceeds the cap {cap} (override with IGS_MAX_ARCS or --max-arcs)")]
    ResourceLimit { projected: u64, cap: u64 },
    #[error("parse error: {detail}")]
    Parse { detail: String },
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// One rule variant: a rule graph together with its selection probability.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleVariant {
    pub rule: RuleGraph,
    pub prob: Prob,
}

/// An iterated graph system.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub num_colors: u32,
    pub initial: ColoredDigraph,
    pub a_node: NodeId,
    pub b_node: NodeId,
    /// `rules[i]` holds the variants for colour `i + 1`.
    pub rules: Vec<Vec<RuleVariant>>,
}

/// Non-fatal observations from validation.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub warnings: Vec<String>,
}

impl SystemSpec {
    pub fn is_deterministic(&self) -> bool {
        self.rules.iter().all(|v| v.len() == 1)
    }

    pub fn variant_counts(&self) -> Vec<usize> {
        self.rules.iter().map(|v| v.len()).collect()
    }

    pub fn variant(&self, color: u32, index: usize) -> &RuleVariant {
        &self.rules[(color - 1) as usize][index]
    }

    /// Checks every structural invariant. Warnings cover conditions that do
    /// not stop generation but matter for the dimension theory (primitivity,
    /// colours that can never appear).
    pub fn validate(&self) -> Result<ValidationReport, SystemError> {
        let mut report = ValidationReport::default();
        if self.rules.len() != self.num_colors as usize {
            return Err(SystemError::ColorArityMismatch {
                place: "rule table".into(),
                expected: self.num_colors,
                found: self.rules.len() as u32,
            });
        }
        self.initial.validate()?;
        if self.initial.num_colors() != self.num_colors {
            return Err(SystemError::ColorArityMismatch {
                place: "initial graph".into(),
                expected: self.num_colors,
                found: self.initial.num_colors(),
            });
        }
        for node in [self.a_node, self.b_node] {
            if node >= self.initial.node_count() {
                return Err(GraphError::UnknownNode {
                    node,
                    node_count: self.initial.node_count(),
                }
                .into());
            }
        }
        for (ci, variants) in self.rules.iter().enumerate() {
            let color = ci as u32 + 1;
            if variants.is_empty() {
                return Err(SystemError::BadProbabilityVector {
                    color,
                    detail: "no rule variants".into(),
                });
            }
            let mut sum = Prob::zero();
            for (vi, variant) in variants.iter().enumerate() {
                if variant.prob.is_negative() {
                    return Err(SystemError::BadProbabilityVector {
                        color,
                        detail: format!("negative probability {}", format_prob(&variant.prob)),
                    });
                }
                sum += &variant.prob;
                if variant.rule.graph.num_colors() != self.num_colors {
                    return Err(SystemError::ColorArityMismatch {
                        place: format!("rule {}.{}", color, vi + 1),
                        expected: self.num_colors,
                        found: variant.rule.graph.num_colors(),
                    });
                }
                match variant.rule.validate() {
                    Ok(()) => {}
                    Err(GraphError::EndpointsTooClose { distance }) => {
                        return Err(SystemError::RuleTooShort { color, variant: vi, distance });
                    }
                    Err(e) => {
                        return Err(SystemError::InvalidRuleGraph { color, variant: vi, source: e });
                    }
                }
            }
            // |sum - 1| <= 1e-12, exact rational comparison
            let tol = Prob::new(1, 1_000_000_000_000i128);
            if (sum - Prob::new(1, 1)).abs() > tol {
                return Err(SystemError::BadProbabilityVector {
                    color,
                    detail: "probabilities do not sum to 1".into(),
                });
            }
        }
        self.warn_unreachable_colors(&mut report);
        self.warn_primitivity(&mut report);
        Ok(report)
    }

    /// Colours that can never occur in any generated level.
    fn warn_unreachable_colors(&self, report: &mut ValidationReport) {
        let mut reachable = vec![false; self.num_colors as usize];
        let mut stack: Vec<u32> = Vec::new();
        for arc in self.initial.arcs() {
            let i = (arc.color - 1) as usize;
            if !reachable[i] {
                reachable[i] = true;
                stack.push(arc.color);
            }
        }
        while let Some(color) = stack.pop() {
            for variant in &self.rules[(color - 1) as usize] {
                for arc in variant.rule.graph.arcs() {
                    let i = (arc.color - 1) as usize;
                    if !reachable[i] {
                        reachable[i] = true;
                        stack.push(arc.color);
                    }
                }
            }
        }
        for (i, r) in reachable.iter().enumerate() {
            if !r {
                report
                    .warnings
                    .push(format!("color {} never appears in any generated graph", i + 1));
            }
        }
    }

    fn warn_primitivity(&self, report: &mut ValidationReport) {
        if self.is_deterministic() {
            match crate::spectral::build_arc_matrix(self) {
                Ok(m) => {
                    if !crate::spectral::is_primitive(&m) {
                        report.warnings.push(format!("arc matrix {} is not primitive", m));
                    }
                }
                Err(e) => report.warnings.push(format!("arc matrix check failed: {e}")),
            }
            if let Ok(family) = crate::spectral::build_path_matrix_family(self) {
                for (i, member) in family.members.iter().enumerate() {
                    if !crate::spectral::is_primitive(member) {
                        report.warnings.push(format!(
                            "path matrix {} (member {}) is not primitive",
                            member, i
                        ));
                    }
                }
            }
        } else {
            let set = crate::lyapunov::build_random_matrix_set(self);
            if let Err(e) = set.check_primitive() {
                report.warnings.push(format!("arc matrix set: {e}"));
            }
        }
    }
}

fn format_prob(p: &Prob) -> String {
    if *p.denom() == 1 {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

/// The outcome of running a system for `n` steps.
#[derive(Clone, Debug)]
pub struct GenerationTrace {
    pub levels: Vec<ColoredDigraph>,
    pub a_node: NodeId,
    pub b_node: NodeId,
    pub seed: u64,
    /// Chosen variant index (0-based) per substituted arc, in the canonical
    /// arc order of each level.
    pub choice_log: Vec<Vec<u32>>,
}

impl GenerationTrace {
    pub fn last(&self) -> &ColoredDigraph {
        self.levels.last().expect("trace has at least the initial level")
    }
}

/// Default cap on the projected arc count of the next level.
pub const DEFAULT_MAX_ARCS: u64 = 5_000_000;

/// Replaces every arc by a copy of a rule variant.
///
/// The variant for arc `k` (canonical order) at level `level` is drawn from
/// a counter-based stream keyed by `(seed, level, k)`, so the result does
/// not depend on evaluation order. The rule copy's `A` is identified with
/// the arc tail and `B` with the head; internal nodes get fresh identifiers
/// allocated contiguously per arc in canonical order.
pub fn substitute_step(
    g: &ColoredDigraph,
    spec: &SystemSpec,
    level: u32,
    seed: u64,
) -> (ColoredDigraph, Vec<u32>) {
    let thresholds: Vec<Vec<u64>> = spec
        .rules
        .iter()
        .map(|variants| {
            if variants.len() == 1 {
                Vec::new()
            } else {
                let probs: Vec<Prob> = variants.iter().map(|v| v.prob).collect();
                rng::thresholds(&probs)
            }
        })
        .collect();

    let choices: Vec<u32> = g
        .arcs()
        .iter()
        .enumerate()
        .map(|(k, arc)| {
            let ci = (arc.color - 1) as usize;
            if spec.rules[ci].len() == 1 {
                0
            } else {
                rng::draw_keyed(&thresholds[ci], seed, level as u64, k as u64) as u32
            }
        })
        .collect();

    let mut next_fresh = g.node_count();
    let mut out_arcs: Vec<Arc> = Vec::new();
    let mut node_map: Vec<NodeId> = Vec::new();
    for (arc, &choice) in g.arcs().iter().zip(&choices) {
        let rule = &spec.variant(arc.color, choice as usize).rule;
        let rn = rule.graph.node_count();
        node_map.clear();
        node_map.reserve(rn as usize);
        for v in 0..rn {
            node_map.push(if v == rule.node_a {
                arc.tail
            } else if v == rule.node_b {
                arc.head
            } else {
                let id = next_fresh;
                next_fresh += 1;
                id
            });
        }
        for ra in rule.graph.arcs() {
            out_arcs.push(Arc {
                tail: node_map[ra.tail as usize],
                head: node_map[ra.head as usize],
                color: ra.color,
            });
        }
    }
    let next = ColoredDigraph::from_arcs(spec.num_colors, out_arcs);
    debug_assert_eq!(next.node_count(), next_fresh);
    debug_assert!(next.validate().is_ok());
    (next, choices)
}

/// Worst-case arc count of the next level.
fn projected_arcs(g: &ColoredDigraph, spec: &SystemSpec) -> u64 {
    let per_color: Vec<u64> = spec
        .rules
        .iter()
        .map(|variants| variants.iter().map(|v| v.rule.graph.arc_count() as u64).max().unwrap_or(0))
        .collect();
    g.chi()
        .as_slice()
        .iter()
        .zip(&per_color)
        .map(|(&count, &arcs)| count * arcs)
        .sum()
}

/// Runs `n` substitution steps from the initial graph.
///
/// Identical `(spec, n, seed)` yield bit-identical traces.
pub fn generate(
    spec: &SystemSpec,
    n: u32,
    seed: u64,
    max_arcs: u64,
) -> Result<GenerationTrace, SystemError> {
    let mut levels = vec![spec.initial.clone()];
    let mut choice_log = Vec::new();
    for level in 0..n {
        let current = levels.last().unwrap();
        let projected = projected_arcs(current, spec);
        if projected > max_arcs {
            return Err(SystemError::ResourceLimit { projected, cap: max_arcs });
        }
        let (next, choices) = substitute_step(current, spec, level, seed);
        choice_log.push(choices);
        levels.push(next);
    }
    Ok(GenerationTrace { levels, a_node: spec.a_node, b_node: spec.b_node, seed, choice_log })
}

/// Node counts per level.
pub fn node_count(trace: &GenerationTrace) -> Vec<u64> {
    trace.levels.iter().map(|g| g.node_count() as u64).collect()
}

/// BFS distance between the persistent endpoints, per level.
pub fn ab_distance_series(trace: &GenerationTrace) -> Vec<u32> {
    trace
        .levels
        .iter()
        .map(|g| g.distance(trace.a_node, trace.b_node).expect("endpoints persist"))
        .collect()
}

/// Graph density |E| / (|V| (|V| - 1)) as an exact rational.
pub fn density(g: &ColoredDigraph) -> Ratio<u64> {
    let v = g.node_count() as u64;
    assert!(v >= 2, "density needs at least two nodes");
    Ratio::new(g.arc_count() as u64, v * (v - 1))
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// JSON schema of a system file.
#[derive(Serialize, Deserialize)]
struct SystemFile {
    num_colors: u32,
    initial: crate::graph::GraphFile,
    rules: Vec<Vec<RuleEntry>>,
}

#[derive(Serialize, Deserialize)]
struct RuleEntry {
    graph: crate::graph::GraphFile,
    #[serde(rename = "A")]
    a: NodeId,
    #[serde(rename = "B")]
    b: NodeId,
    /// Probability as an exact fraction string ("1/3"), a decimal string, or
    /// a JSON number. Omitted means 1 (single-variant colours).
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<serde_json::Value>,
}

fn parse_prob(value: &serde_json::Value) -> Result<Prob, String> {
    match value {
        serde_json::Value::String(s) => parse_prob_str(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(Prob::new(i as i128, 1));
            }
            parse_prob_str(&n.to_string())
        }
        other => Err(format!("expected probability, found {other}")),
    }
}

/// Parses "a/b" exactly or a decimal literal as a power-of-ten rational.
pub fn parse_prob_str(s: &str) -> Result<Prob, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i128 = num.trim().parse().map_err(|_| format!("bad numerator {num:?}"))?;
        let d: i128 = den.trim().parse().map_err(|_| format!("bad denominator {den:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Prob::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 18 {
            return Err(format!("decimal {s:?} has too many digits"));
        }
        let int_part: i128 =
            if int.is_empty() { 0 } else { int.parse().map_err(|_| format!("bad number {s:?}"))? };
        let frac_part: i128 =
            if frac.is_empty() { 0 } else { frac.parse().map_err(|_| format!("bad number {s:?}"))? };
        let scale = 10i128.pow(frac.len() as u32);
        return Ok(Prob::new(int_part * scale + frac_part, scale));
    }
    let n: i128 = s.parse().map_err(|_| format!("bad number {s:?}"))?;
    Ok(Prob::new(n, 1))
}

/// Reads and validates a system file. Fraction probabilities are preserved
/// exactly.
pub fn parse_system_file(path: &Path) -> Result<(SystemSpec, ValidationReport), SystemError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SystemError::Io { path: path.display().to_string(), source: e })?;
    let spec = parse_system_str(&text)?;
    let report = spec.validate()?;
    Ok((spec, report))
}

pub fn parse_system_str(text: &str) -> Result<SystemSpec, SystemError> {
    let file: SystemFile =
        serde_json::from_str(text).map_err(|e| SystemError::Parse { detail: e.to_string() })?;
    let initial = file.initial.to_graph();
    let a_node = file
        .initial
        .mark("A")
        .ok_or_else(|| SystemError::MissingMark { name: "A".into() })?;
    let b_node = file
        .initial
        .mark("B")
        .ok_or_else(|| SystemError::MissingMark { name: "B".into() })?;
    let mut rules = Vec::with_capacity(file.rules.len());
    for (ci, entries) in file.rules.iter().enumerate() {
        let mut variants = Vec::with_capacity(entries.len());
        for entry in entries {
            let prob = match &entry.p {
                Some(v) => parse_prob(v).map_err(|detail| SystemError::Parse {
                    detail: format!("color {} probability: {detail}", ci + 1),
                })?,
                None if entries.len() == 1 => Prob::new(1, 1),
                None => {
                    return Err(SystemError::Parse {
                        detail: format!(
                            "color {}: probability required when multiple variants exist",
                            ci + 1
                        ),
                    });
                }
            };
            variants.push(RuleVariant {
                rule: RuleGraph::new(entry.graph.to_graph(), entry.a, entry.b),
                prob,
            });
        }
        rules.push(variants);
    }
    Ok(SystemSpec { num_colors: file.num_colors, initial, a_node, b_node, rules })
}

/// Canonical JSON serialisation (probabilities as exact fraction strings).
pub fn serialize_system(spec: &SystemSpec) -> String {
    let mut marks = BTreeMap::new();
    marks.insert("A".to_string(), spec.a_node);
    marks.insert("B".to_string(), spec.b_node);
    let file = SystemFile {
        num_colors: spec.num_colors,
        initial: spec.initial.to_file(&marks),
        rules: spec
            .rules
            .iter()
            .map(|variants| {
                variants
                    .iter()
                    .map(|v| RuleEntry {
                        graph: v.rule.graph.to_file(&BTreeMap::new()),
                        a: v.rule.node_a,
                        b: v.rule.node_b,
                        p: Some(serde_json::Value::String(format_prob(&v.prob))),
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("system serialisation cannot fail")
}

/// Serialises a generated graph with its marks.
pub fn serialize_graph(g: &ColoredDigraph, a: NodeId, b: NodeId) -> String {
    let mut marks = BTreeMap::new();
    marks.insert("A".to_string(), a);
    marks.insert("B".to_string(), b);
    serde_json::to_string_pretty(&g.to_file(&marks)).expect("graph serialisation cannot fail")
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
