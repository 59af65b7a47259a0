//! Empirical box dimension: greedy ball covering and log-log regression.
//!
//! Boxes are balls of radius floor(L/2), so box diameters stay at most L
//! (measured in the host graph). The covering number as a function of L,
//! regressed on a log-log scale, estimates the Minkowski dimension; the
//! normalisation N_L / |V| used in plots shifts the intercept, never the
//! slope.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Adjacency, ColoredDigraph};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("graph with {nodes} nodes exceeds the exhaustive-search cap {cap}")]
    TooLarge { nodes: u32, cap: u32 },
    #[error("regression range is degenerate: {detail}")]
    DegenerateRange { detail: String },
    #[error("graph diameter {diameter} is too small for a dimension estimate (need >= 8)")]
    TooSmall { diameter: u32 },
}

/// Result of one greedy covering run.
#[derive(Clone, Debug)]
pub struct VgbcCover {
    pub boxes: u32,
    /// Box index per node.
    pub assignment: Vec<u32>,
}

struct BallScratch {
    seen: Vec<u32>,
    stamp: u32,
    queue: VecDeque<(u32, u32)>,
    ball: Vec<u32>,
}

impl BallScratch {
    fn new(n: usize) -> Self {
        BallScratch { seen: vec![0; n], stamp: 0, queue: VecDeque::new(), ball: Vec::new() }
    }

    /// Uncovered nodes within distance `r` of `center`. Covered nodes still
    /// conduct the search (distances live in the host graph).
    fn uncovered_ball(&mut self, adj: &Adjacency, center: u32, r: u32, covered: &[bool]) -> &[u32] {
        self.stamp += 1;
        self.queue.clear();
        self.ball.clear();
        self.seen[center as usize] = self.stamp;
        self.queue.push_back((center, 0));
        while let Some((u, d)) = self.queue.pop_front() {
            if !covered[u as usize] {
                self.ball.push(u);
            }
            if d < r {
                for &v in adj.neighbors(u) {
                    if self.seen[v as usize] != self.stamp {
                        self.seen[v as usize] = self.stamp;
                        self.queue.push_back((v, d + 1));
                    }
                }
            }
        }
        &self.ball
    }
}

/// Volume-greedy ball covering.
///
/// Repeatedly evaluates balls of radius floor(L/2) around every still
/// uncovered candidate centre, commits the one covering the most uncovered
/// nodes (ties broken by smallest node id) and marks its nodes covered.
/// Implemented as lazy greedy: stale coverage counts are re-evaluated on
/// demand, which picks exactly the same boxes as full re-evaluation because
/// counts only ever decrease.
pub fn vgbc_cover(g: &ColoredDigraph, l: u32) -> VgbcCover {
    vgbc_cover_adj(&g.adjacency(), l)
}

pub(crate) fn vgbc_cover_adj(adj: &Adjacency, l: u32) -> VgbcCover {
    assert!(l >= 1, "box size must be positive");
    let n = adj.node_count();
    let r = l / 2;
    let mut covered = vec![false; n];
    let mut assignment = vec![u32::MAX; n];
    let mut scratch = BallScratch::new(n);
    let mut heap: BinaryHeap<(u32, Reverse<u32>)> = BinaryHeap::with_capacity(n);
    for v in 0..n as u32 {
        let count = scratch.uncovered_ball(adj, v, r, &covered).len() as u32;
        heap.push((count, Reverse(v)));
    }
    let mut boxes = 0u32;
    let mut covered_count = 0usize;
    while covered_count < n {
        let (count, Reverse(v)) = heap.pop().expect("uncovered nodes imply candidates");
        if covered[v as usize] {
            continue;
        }
        let ball = scratch.uncovered_ball(adj, v, r, &covered);
        let fresh = ball.len() as u32;
        debug_assert!(fresh <= count, "coverage counts can only decrease");
        if fresh < count {
            heap.push((fresh, Reverse(v)));
            continue;
        }
        for &u in ball {
            covered[u as usize] = true;
            assignment[u as usize] = boxes;
        }
        covered_count += ball.len();
        boxes += 1;
    }
    VgbcCover { boxes, assignment }
}

const BRUTE_FORCE_CAP: u32 = 24;

/// Exact minimal number of node subsets of induced diameter < L covering
/// all nodes. Exponential; a test oracle only.
pub fn brute_force_cover(g: &ColoredDigraph, l: u32) -> Result<u32, CoverError> {
    let n = g.node_count();
    if n > BRUTE_FORCE_CAP {
        return Err(CoverError::TooLarge { nodes: n, cap: BRUTE_FORCE_CAP });
    }
    let adj = g.adjacency();
    let n = n as usize;
    let mut admissible: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << n) {
        if induced_diameter_below(&adj, mask, n, l) {
            admissible.push(mask);
        }
    }
    Ok(exact_min_cover(n, &admissible))
}

/// Exact minimal number of radius-floor(L/2) balls covering all nodes:
/// the optimum of the set system the greedy covering draws from.
pub fn brute_force_ball_cover(g: &ColoredDigraph, l: u32) -> Result<u32, CoverError> {
    let n = g.node_count();
    if n > BRUTE_FORCE_CAP {
        return Err(CoverError::TooLarge { nodes: n, cap: BRUTE_FORCE_CAP });
    }
    let adj = g.adjacency();
    let n = n as usize;
    let r = l / 2;
    let mut scratch = BallScratch::new(n);
    let covered = vec![false; n];
    let balls: Vec<u32> = (0..n as u32)
        .map(|v| {
            scratch
                .uncovered_ball(&adj, v, r, &covered)
                .iter()
                .fold(0u32, |m, &u| m | (1 << u))
        })
        .collect();
    Ok(exact_min_cover(n, &balls))
}

fn induced_diameter_below(adj: &Adjacency, mask: u32, n: usize, l: u32) -> bool {
    // BFS inside the induced subgraph from every member
    let members: Vec<u32> = (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
    if members.len() == 1 {
        return l > 0;
    }
    for &s in &members {
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in adj.neighbors(u) {
                if mask & (1 << v) != 0 && dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    if dist[v as usize] >= l {
                        return false;
                    }
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached < members.len() {
            return false; // induced subgraph disconnected: infinite diameter
        }
    }
    true
}

/// Exact set cover by branch and bound over maximal candidate sets.
fn exact_min_cover(n: usize, sets: &[u32]) -> u32 {
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    // keep only maximal sets
    let mut maximal: Vec<u32> = Vec::new();
    let mut sorted: Vec<u32> = sets.to_vec();
    sorted.sort_by_key(|m| Reverse(m.count_ones()));
    for &s in &sorted {
        if !maximal.iter().any(|&m| m & s == s) {
            maximal.push(s);
        }
    }
    // candidates covering each node
    let mut by_node: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &s in &maximal {
        for v in 0..n {
            if s & (1 << v) != 0 {
                by_node[v].push(s);
            }
        }
    }
    fn rec(uncovered: u32, by_node: &[Vec<u32>], memo: &mut HashMap<u32, u32>) -> u32 {
        if uncovered == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&uncovered) {
            return v;
        }
        let lowest = uncovered.trailing_zeros() as usize;
        let mut best = u32::MAX;
        for &s in &by_node[lowest] {
            best = best.min(1 + rec(uncovered & !s, by_node, memo));
        }
        memo.insert(uncovered, best);
        best
    }
    let mut memo = HashMap::new();
    rec(full, &by_node, &mut memo)
}

/// Greedy packing: scans nodes in ascending id order and keeps those at
/// distance > L from everything kept so far. A lower bound on the maximum
/// packing number.
pub fn greedy_packing(g: &ColoredDigraph, l: u32) -> u32 {
    let adj = g.adjacency();
    let n = adj.node_count();
    let mut blocked = vec![false; n];
    let mut queue = VecDeque::new();
    let mut dist = vec![u32::MAX; n];
    let mut count = 0u32;
    for v in 0..n as u32 {
        if blocked[v as usize] {
            continue;
        }
        count += 1;
        // block everything within distance L
        for d in dist.iter_mut() {
            *d = u32::MAX;
        }
        dist[v as usize] = 0;
        queue.push_back(v);
        blocked[v as usize] = true;
        while let Some(u) = queue.pop_front() {
            if dist[u as usize] >= l {
                continue;
            }
            for &w in adj.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    blocked[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

/// A covering-number curve with the stats needed to interpret it.
#[derive(Clone, Debug)]
pub struct CoverCurve {
    /// (L, N_L) pairs, ascending in L.
    pub points: Vec<(u32, u32)>,
    pub node_count: u32,
    pub arc_count: u64,
    pub diameter: u32,
    /// True when greedy non-monotonicity had to be repaired.
    pub repaired: bool,
}

/// Covering numbers for each requested box size.
///
/// For L above the graph diameter the whole vertex set is a single
/// admissible box, so N_L = 1 regardless of what ball greedy would find.
/// Greedy non-monotonicity is repaired by a running minimum and flagged.
pub fn nl_curve(g: &ColoredDigraph, l_values: &[u32]) -> CoverCurve {
    let diameter = g.diameter().value;
    nl_curve_with(g, l_values, diameter)
}

fn nl_curve_with(g: &ColoredDigraph, l_values: &[u32], diameter: u32) -> CoverCurve {
    let adj = g.adjacency();
    let mut ls: Vec<u32> = l_values.to_vec();
    ls.sort_unstable();
    ls.dedup();
    let mut points = Vec::with_capacity(ls.len());
    for &l in &ls {
        let n_l = if l > diameter { 1 } else { vgbc_cover_adj(&adj, l).boxes };
        points.push((l, n_l));
    }
    let mut repaired = false;
    let mut running = u32::MAX;
    for p in &mut points {
        if p.1 > running {
            p.1 = running;
            repaired = true;
        }
        running = running.min(p.1);
    }
    CoverCurve {
        points,
        node_count: g.node_count(),
        arc_count: g.arc_count() as u64,
        diameter,
        repaired,
    }
}

/// Ordinary least squares on (log L, log N_L).
#[derive(Clone, Debug)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r_squared: f64,
    pub l_min: u32,
    pub l_max: u32,
    pub points_used: usize,
}

/// Fits log N against log L over the given range; the empirical dimension
/// is minus the slope.
pub fn loglog_slope(points: &[(u32, u32)], l_min: u32, l_max: u32) -> Result<SlopeFit, CoverError> {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter(|(l, n)| *l >= l_min && *l <= l_max && *n >= 1)
        .map(|&(l, n)| (l as f64, n as f64))
        .collect();
    fit_loglog(&data, l_min, l_max)
}

/// Log-log least squares on raw positive (L, value) pairs. The value may be
/// normalised (e.g. N_L / |V|); normalisation shifts the intercept only.
pub fn fit_loglog(points: &[(f64, f64)], l_min: u32, l_max: u32) -> Result<SlopeFit, CoverError> {
    let data: Vec<(f64, f64)> =
        points.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).map(|p| (p.0.ln(), p.1.ln())).collect();
    if data.len() < 3 {
        return Err(CoverError::DegenerateRange {
            detail: format!("only {} usable points in [{l_min}, {l_max}]", data.len()),
        });
    }
    let n = data.len() as f64;
    let mx = data.iter().map(|p| p.0).sum::<f64>() / n;
    let my = data.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = data.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = data.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = data.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(CoverError::DegenerateRange { detail: "all L values equal".into() });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res = (syy - slope * sxy).max(0.0);
    let stderr =
        if data.len() > 2 { (ss_res / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(SlopeFit {
        slope,
        intercept,
        stderr,
        r_squared,
        l_min,
        l_max,
        points_used: data.len(),
    })
}

/// A complete empirical dimension estimate.
#[derive(Clone, Debug)]
pub struct BoxDimReport {
    /// Minus the fitted slope.
    pub estimate: f64,
    pub fit: SlopeFit,
    pub curve: CoverCurve,
}

/// Estimates the box dimension of a graph: builds the covering curve at
/// every integer box size in `[l_min, l_max]` (default `[2, diameter/2]`)
/// and regresses it.
pub fn estimate_box_dimension(
    g: &ColoredDigraph,
    l_min: Option<u32>,
    l_max: Option<u32>,
) -> Result<BoxDimReport, CoverError> {
    let diameter = g.diameter().value;
    if diameter < 8 {
        return Err(CoverError::TooSmall { diameter });
    }
    let lo = l_min.unwrap_or(2).max(1);
    let hi = l_max.unwrap_or_else(|| (diameter / 2).max(lo + 2)).min(diameter);
    if hi <= lo {
        return Err(CoverError::DegenerateRange {
            detail: format!("l_min {lo} >= l_max {hi}"),
        });
    }
    let grid: Vec<u32> = (lo..=hi).collect();
    let curve = nl_curve_with(g, &grid, diameter);
    let fit = loglog_slope(&curve.points, lo, hi)?;
    Ok(BoxDimReport { estimate: -fit.slope, fit, curve })
}

/// CSV rendering of a curve: `L,N_L,N_L_over_V`.
pub fn curve_csv(curve: &CoverCurve) -> String {
    let mut out = String::from("L,N_L,N_L_over_V\n");
    for &(l, n) in &curve.points {
        out.push_str(&format!("{},{},{}\n", l, n, n as f64 / curve.node_count as f64));
    }
    out
}
