//! Built-in example systems.
//!
//! These are the two worked examples the test-suite and `selftest` lean on,
//! plus a minimal single-colour system. Their topology is pinned by
//! published invariants (arc-count vectors, path chi-sets, path counts)
//! rather than by drawing coordinates; the unit tests assert those
//! invariants.

use crate::graph::{Arc, ColoredDigraph, RuleGraph};
use crate::system::{Prob, RuleVariant, SystemSpec};

fn arc(tail: u32, head: u32, color: u32) -> Arc {
    Arc { tail, head, color }
}

fn single_arc_initial(num_colors: u32, color: u32) -> ColoredDigraph {
    ColoredDigraph::from_arcs(num_colors, vec![arc(0, 1, color)])
}

/// Two-colour deterministic example.
///
/// Colour 1 expands into a pentagon (chi = (2,3), boundary distance 2);
/// colour 2 into a 10-cycle with antipodal boundary nodes (chi = (5,5)).
/// Arc matrix [[2,3],[5,5]]; path chi-sets {(2,1),(0,2)} and {(1,4),(4,1)}.
pub fn deterministic_example() -> SystemSpec {
    let pentagon = ColoredDigraph::from_arcs(
        2,
        vec![arc(0, 1, 2), arc(2, 1, 2), arc(3, 4, 2), arc(2, 3, 1), arc(4, 0, 1)],
    );
    let ring = ColoredDigraph::from_arcs(
        2,
        vec![
            arc(9, 0, 2),
            arc(1, 2, 2),
            arc(2, 3, 2),
            arc(4, 3, 2),
            arc(4, 5, 2),
            arc(0, 1, 1),
            arc(5, 6, 1),
            arc(6, 7, 1),
            arc(8, 7, 1),
            arc(9, 8, 1),
        ],
    );
    SystemSpec {
        num_colors: 2,
        initial: single_arc_initial(2, 1),
        a_node: 0,
        b_node: 1,
        rules: vec![
            vec![RuleVariant { rule: RuleGraph::new(pentagon, 0, 2), prob: Prob::new(1, 1) }],
            vec![RuleVariant { rule: RuleGraph::new(ring, 5, 0), prob: Prob::new(1, 1) }],
        ],
    }
}

/// Two-colour random example with two variants per colour.
///
/// Variant chi rows: colour 1 gives (3,3) or (0,3); colour 2 gives (4,2) or
/// (2,2). Simple boundary-path counts per rule graph: 2, 1, 3, 2, and path
/// chi-sets {(1,2),(3,1)}, {(0,3)}, {(2,0),(1,1)}, {(1,1),(1,2)}.
pub fn random_example() -> SystemSpec {
    // nodes: 0 = A, 3 = B, internal 1, 2, 4, 5
    let r11 = ColoredDigraph::from_arcs(
        2,
        vec![arc(1, 0, 1), arc(4, 2, 1), arc(4, 3, 1), arc(1, 5, 2), arc(1, 2, 2), arc(3, 2, 2)],
    );
    // path of three arcs: A - 1 - 2 - B
    let r12 = ColoredDigraph::from_arcs(2, vec![arc(1, 0, 2), arc(1, 2, 2), arc(3, 2, 2)]);
    // nodes: 0 = A, 4 = B, three parallel internal nodes 1, 2, 3
    let r21 = ColoredDigraph::from_arcs(
        2,
        vec![arc(0, 1, 1), arc(2, 0, 1), arc(4, 2, 1), arc(3, 4, 1), arc(3, 0, 2), arc(4, 1, 2)],
    );
    // nodes: 0 = A, 3 = B, internal 1, 2
    let r22 =
        ColoredDigraph::from_arcs(2, vec![arc(1, 0, 1), arc(2, 1, 1), arc(0, 2, 2), arc(1, 3, 2)]);
    SystemSpec {
        num_colors: 2,
        initial: single_arc_initial(2, 1),
        a_node: 0,
        b_node: 1,
        rules: vec![
            vec![
                RuleVariant { rule: RuleGraph::new(r11, 0, 3), prob: Prob::new(1, 3) },
                RuleVariant { rule: RuleGraph::new(r12, 0, 3), prob: Prob::new(2, 3) },
            ],
            vec![
                RuleVariant { rule: RuleGraph::new(r21, 0, 4), prob: Prob::new(1, 4) },
                RuleVariant { rule: RuleGraph::new(r22, 0, 3), prob: Prob::new(3, 4) },
            ],
        ],
    }
}

/// One-colour system whose rule is a 5-arc tree: a 3-arc spine from A to B
/// with one pendant node on each internal spine node. Arc matrix [[5]],
/// single boundary path of length 3.
pub fn single_rule_example() -> SystemSpec {
    let rule = ColoredDigraph::from_arcs(
        1,
        vec![arc(0, 1, 1), arc(1, 2, 1), arc(1, 3, 1), arc(3, 4, 1), arc(3, 5, 1)],
    );
    SystemSpec {
        num_colors: 1,
        initial: single_arc_initial(1, 1),
        a_node: 0,
        b_node: 1,
        rules: vec![vec![RuleVariant { rule: RuleGraph::new(rule, 0, 5), prob: Prob::new(1, 1) }]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ChiVector;

    /// The bundled JSON files are the canonical serialisations of the
    /// builders. Regenerate with `IGS_WRITE_FIXTURES=1 cargo test`.
    #[test]
    fn bundled_files_match_builders() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let entries = [
            ("deterministic_fig3.json", deterministic_example()),
            ("random_fig5.json", random_example()),
            ("single_rule.json", single_rule_example()),
        ];
        for (name, spec) in entries {
            let path = dir.join(name);
            let expect = crate::system::serialize_system(&spec);
            if std::env::var("IGS_WRITE_FIXTURES").is_ok() {
                std::fs::create_dir_all(&dir).unwrap();
                std::fs::write(&path, &expect).unwrap();
            }
            let got = std::fs::read_to_string(&path).unwrap_or_else(|_| {
                panic!("missing {}; regenerate with IGS_WRITE_FIXTURES=1", path.display())
            });
            assert_eq!(got, expect, "{name} is stale");
            let (parsed, _) = crate::system::parse_system_file(&path).unwrap();
            assert_eq!(parsed, spec);
        }
    }

    #[test]
    fn deterministic_rule_invariants() {
        let spec = deterministic_example();
        assert_eq!(spec.rules[0][0].rule.graph.chi(), ChiVector(vec![2, 3]));
        assert_eq!(spec.rules[1][0].rule.graph.chi(), ChiVector(vec![5, 5]));
    }

    #[test]
    fn random_rule_invariants() {
        let spec = random_example();
        let chi: Vec<ChiVector> =
            spec.rules.iter().flatten().map(|v| v.rule.graph.chi()).collect();
        assert_eq!(
            chi,
            vec![
                ChiVector(vec![3, 3]),
                ChiVector(vec![0, 3]),
                ChiVector(vec![4, 2]),
                ChiVector(vec![2, 2]),
            ]
        );
    }

    #[test]
    fn single_rule_invariants() {
        let spec = single_rule_example();
        let rule = &spec.rules[0][0].rule;
        assert_eq!(rule.graph.chi(), ChiVector(vec![5]));
        assert_eq!(rule.graph.distance(rule.node_a, rule.node_b).unwrap(), 3);
        assert_eq!(rule.graph.diameter().value, 3);
        spec.validate().unwrap();
    }

    #[test]
    fn single_rule_growth() {
        // arc counts grow as 5^n, diameters as 3^n
        let spec = single_rule_example();
        let trace =
            crate::system::generate(&spec, 2, 0, crate::system::DEFAULT_MAX_ARCS).unwrap();
        assert_eq!(trace.levels[1].arc_count(), 5);
        assert_eq!(trace.levels[2].arc_count(), 25);
        assert_eq!(trace.levels[2].node_count(), 26);
        assert_eq!(trace.levels[1].diameter().value, 3);
        assert_eq!(trace.levels[2].diameter().value, 9);
    }
}
