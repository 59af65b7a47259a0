//! The bundled invariant suite behind `igs selftest`.
//!
//! Each check exercises a law the implementation must satisfy on the
//! built-in example systems: exact counting laws, the distance oracle, the
//! product lower bound (including the ad-hoc family that violates it),
//! covering/packing oracles, Jensen's bound, start-vector invariance and
//! byte-level reproducibility.

use crate::boxcover;
use crate::fixtures;
use crate::graph::{Arc, ChiVector, ColoredDigraph};
use crate::lyapunov;
use crate::matrix::IntMatrix;
use crate::spectral;
use crate::system;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

pub struct SelftestOutcome {
    pub checks: Vec<CheckResult>,
}

impl SelftestOutcome {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> CheckResult {
    CheckResult { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

pub fn run() -> SelftestOutcome {
    let mut checks = Vec::new();
    let det = fixtures::deterministic_example();
    let rnd = fixtures::random_example();

    // exact arc-count law chi(level t) = chi(level 0) M^t
    {
        let trace = system::generate(&det, 4, 0, system::DEFAULT_MAX_ARCS).unwrap();
        let m = spectral::build_arc_matrix(&det).unwrap();
        let mut chi = det.initial.chi().0;
        let mut ok = true;
        let mut detail = String::new();
        for (t, level) in trace.levels.iter().enumerate() {
            if level.chi().0 != chi {
                ok = false;
                detail = format!(
                    "level {t}: chi {} != expected {}",
                    level.chi(),
                    ChiVector(chi.clone())
                );
                break;
            }
            chi = m.row_vec_mul(&chi);
        }
        if ok {
            detail = "chi tracks the arc-matrix power on levels 0..4".into();
        }
        checks.push(check("arc-count law", ok, detail));
    }

    // node-count formula
    {
        let trace = system::generate(&det, 4, 0, system::DEFAULT_MAX_ARCS).unwrap();
        let counts = system::node_count(&trace);
        let internal: Vec<u64> =
            det.rules.iter().map(|v| v[0].rule.internal_count() as u64).collect();
        let mut expect = 2u64;
        let mut ok = counts[0] == 2;
        for t in 1..counts.len() {
            let chi = trace.levels[t - 1].chi();
            expect += chi.as_slice().iter().zip(&internal).map(|(&c, &w)| c * w).sum::<u64>();
            ok &= counts[t] == expect;
        }
        checks.push(check(
            "node-count formula",
            ok,
            format!("levels 0..4 counted {:?}", counts),
        ));
    }

    // distance law: BFS between endpoints equals the min-product oracle
    {
        let trace = system::generate(&det, 3, 0, system::DEFAULT_MAX_ARCS).unwrap();
        let series = system::ab_distance_series(&trace);
        let family = spectral::build_path_matrix_family(&det).unwrap();
        let x0 = det.initial.chi();
        let mut ok = true;
        for (n, &d) in series.iter().enumerate() {
            let oracle = spectral::min_product_norm(&family, &x0, n as u32).unwrap();
            ok &= oracle == d as u64;
        }
        checks.push(check(
            "distance law",
            ok,
            format!("endpoint distances {:?} match the min-product oracle", series),
        ));
    }

    // product lower bound on the path family
    {
        let family = spectral::build_path_matrix_family(&det).unwrap();
        let report = spectral::check_product_bound(&family, 4, 500, 2024).unwrap();
        checks.push(check(
            "product bound",
            report.violations == 0 && report.min_ratio >= 1.0 - 1e-9,
            format!("500 sampled length-4 products, min ratio {:.6}", report.min_ratio),
        ));
    }

    // the ad-hoc pair violates the bound: informational, not a failure
    {
        let family = spectral::MatrixFamily::from_members(vec![
            IntMatrix::from_rows(&[&[1, 1], &[1, 2]]),
            IntMatrix::from_rows(&[&[2, 1], &[1, 1]]),
        ]);
        let report = spectral::check_product_bound(&family, 2, 100, 7).unwrap();
        checks.push(CheckResult {
            name: "ad-hoc family violation",
            status: Status::Info,
            detail: format!(
                "expected violation of the product bound observed: {} of 100 products below it (min ratio {:.4})",
                report.violations, report.min_ratio
            ),
        });
    }

    // covering and packing oracles on small graphs
    {
        let path6 = ColoredDigraph::from_arcs(
            1,
            (0..5).map(|i| Arc { tail: i, head: i + 1, color: 1 }).collect(),
        );
        let cycle9 = ColoredDigraph::from_arcs(
            1,
            (0..9).map(|i| Arc { tail: i, head: (i + 1) % 9, color: 1 }).collect(),
        );
        let mut ok = true;
        let mut detail = String::new();
        'outer: for g in [&path6, &cycle9] {
            for l in 1..=5u32 {
                let pack = boxcover::greedy_packing(g, l);
                let cover = boxcover::brute_force_cover(g, l).unwrap();
                let greedy = boxcover::vgbc_cover(g, l).boxes;
                let ball_opt = boxcover::brute_force_ball_cover(g, l).unwrap();
                if pack > cover {
                    ok = false;
                    detail = format!("packing {pack} > covering {cover} at L={l}");
                    break 'outer;
                }
                if greedy < ball_opt {
                    ok = false;
                    detail = format!("greedy {greedy} below ball optimum {ball_opt} at L={l}");
                    break 'outer;
                }
                let guarantee = (g.node_count() as f64).ln() + 1.0;
                if greedy as f64 > ball_opt as f64 * guarantee {
                    ok = false;
                    detail = format!("greedy {greedy} beyond ln|V|+1 of optimum {ball_opt} at L={l}");
                    break 'outer;
                }
            }
        }
        if ok {
            detail = "packing <= exact covering and greedy within ln|V|+1 of the ball optimum".into();
        }
        checks.push(check("covering/packing oracles", ok, detail));
    }

    // Jensen bound on the random example's sets
    {
        let arc_set = lyapunov::build_random_matrix_set(&rnd);
        let script = lyapunov::enumerate_script_d(&rnd, lyapunov::DEFAULT_SET_CAP).unwrap();
        let mut ok = true;
        let mut detail = String::new();
        let mut sets = vec![&arc_set];
        sets.extend(script.sets.iter().take(3));
        for set in sets {
            let mc = lyapunov::lyapunov_mc(set, 2000, 40, 99).unwrap();
            let bound = lyapunov::expectation_matrix_bound(set).unwrap();
            if mc.value > bound.value + 3.0 * mc.stderr {
                ok = false;
                detail = format!("{}: estimate {:.4} above bound {:.4}", set.label, mc.value, bound.value);
                break;
            }
        }
        if ok {
            detail = "Monte-Carlo exponents stay below the expectation-matrix bound".into();
        }
        checks.push(check("Jensen bound", ok, detail));
    }

    // start-vector invariance
    {
        let set = lyapunov::build_random_matrix_set(&rnd);
        let a = lyapunov::lyapunov_mc_from(&set, &[1.0, 0.0], 2000, 40, 5).unwrap();
        let b = lyapunov::lyapunov_mc_from(&set, &[1.0, 1.0], 2000, 40, 5).unwrap();
        let pooled = (a.stderr * a.stderr + b.stderr * b.stderr).sqrt();
        let ok = (a.value - b.value).abs() <= 3.0 * pooled;
        checks.push(check(
            "start-vector invariance",
            ok,
            format!("{:.5} vs {:.5}, pooled stderr {:.5}", a.value, b.value, pooled),
        ));
    }

    // byte-for-byte reproducibility
    {
        let t1 = system::generate(&rnd, 3, 31337, system::DEFAULT_MAX_ARCS).unwrap();
        let t2 = system::generate(&rnd, 3, 31337, system::DEFAULT_MAX_ARCS).unwrap();
        let s1 = system::serialize_graph(t1.last(), t1.a_node, t1.b_node);
        let s2 = system::serialize_graph(t2.last(), t2.a_node, t2.b_node);
        let set = lyapunov::build_random_matrix_set(&rnd);
        let e1 = lyapunov::lyapunov_mc(&set, 500, 8, 11).unwrap();
        let e2 = lyapunov::lyapunov_mc(&set, 500, 8, 11).unwrap();
        let ok = s1 == s2 && e1.value.to_bits() == e2.value.to_bits();
        checks.push(check(
            "seed determinism",
            ok,
            "equal seeds give byte-identical graphs and bit-identical estimates".into(),
        ));
    }

    // round trip of the system file format
    {
        let mut ok = true;
        for spec in [&det, &rnd] {
            let text = system::serialize_system(spec);
            match system::parse_system_str(&text) {
                Ok(back) => ok &= &back == spec,
                Err(_) => ok = false,
            }
        }
        checks.push(check(
            "system file round trip",
            ok,
            "parse(serialize(spec)) == spec with exact fractions".into(),
        ));
    }

    SelftestOutcome { checks }
}
