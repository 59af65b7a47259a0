//! Coloured directed graphs and their undirected metric structure.
//!
//! All distances ignore arc directions: the metric lives on the underlying
//! undirected graph with unit arc weights. Node identifiers are dense
//! integers assigned in creation order, so BFS works on plain arrays.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node identifier.
pub type NodeId = u32;
/// 1-based colour index.
pub type Color = u32;

/// A directed coloured arc.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub color: Color,
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} (color {})", self.tail, self.head, self.color)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at arc {arc}")]
    SelfLoop { arc: Arc },
    #[error("multiple edges on node pair {{{a}, {b}}}: {first} and {second}")]
    MultiEdge { a: NodeId, b: NodeId, first: Arc, second: Arc },
    #[error("node {node} is not connected to node {root} in the underlying undirected graph")]
    Disconnected { root: NodeId, node: NodeId },
    #[error("arc {arc} has color outside 1..={num_colors}")]
    BadColorIndex { arc: Arc, num_colors: u32 },
    #[error("unknown node {node} (graph has {node_count} nodes)")]
    UnknownNode { node: NodeId, node_count: u32 },
    #[error("marked nodes coincide: A == B == {node}")]
    MarksCoincide { node: NodeId },
    #[error("marked nodes A and B are at distance {distance} < 2")]
    EndpointsTooClose { distance: u32 },
}

/// Per-colour arc counts of a graph or of a path.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChiVector(pub Vec<u64>);

impl ChiVector {
    pub fn zeros(num_colors: u32) -> Self {
        ChiVector(vec![0; num_colors as usize])
    }

    /// ℓ¹ norm, i.e. the total number of arcs counted.
    pub fn norm1(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Debug for ChiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ChiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Immutable coloured digraph. Arcs are kept sorted by `(tail, head)`, which
/// is a total order because valid graphs have no multiple edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredDigraph {
    num_colors: u32,
    node_count: u32,
    arcs: Vec<Arc>,
}

impl ColoredDigraph {
    /// Builds a graph without validating it; arcs are sorted into canonical
    /// order and the node set is `0..=max id`.
    pub fn from_arcs(num_colors: u32, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        let node_count = arcs
            .iter()
            .map(|a| a.tail.max(a.head) + 1)
            .max()
            .unwrap_or(0);
        ColoredDigraph { num_colors, node_count, arcs }
    }

    /// Builds and validates.
    pub fn new(num_colors: u32, arcs: Vec<Arc>) -> Result<Self, GraphError> {
        let g = Self::from_arcs(num_colors, arcs);
        g.validate()?;
        Ok(g)
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Checks all structural invariants; reports the first violation found.
    pub fn validate(&self) -> Result<(), GraphError> {
        for arc in &self.arcs {
            if arc.tail == arc.head {
                return Err(GraphError::SelfLoop { arc: *arc });
            }
            if arc.color == 0 || arc.color > self.num_colors {
                return Err(GraphError::BadColorIndex { arc: *arc, num_colors: self.num_colors });
            }
        }
        // Multiple edges share an unordered node pair, directions ignored.
        let mut pairs: Vec<(NodeId, NodeId, Arc)> = self
            .arcs
            .iter()
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head), *a))
            .collect();
        pairs.sort_by_key(|p| (p.0, p.1));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(GraphError::MultiEdge {
                    a: w[0].0,
                    b: w[0].1,
                    first: w[0].2,
                    second: w[1].2,
                });
            }
        }
        if self.node_count > 1 {
            let adj = self.adjacency();
            let dist = adj.bfs(0);
            if let Some(node) = (0..self.node_count).find(|&v| dist[v as usize] == UNREACHED) {
                return Err(GraphError::Disconnected { root: 0, node });
            }
        }
        Ok(())
    }

    /// Per-colour arc counts.
    pub fn chi(&self) -> ChiVector {
        let mut counts = vec![0u64; self.num_colors as usize];
        for arc in &self.arcs {
            counts[(arc.color - 1) as usize] += 1;
        }
        ChiVector(counts)
    }

    fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v >= self.node_count {
            return Err(GraphError::UnknownNode { node: v, node_count: self.node_count });
        }
        Ok(())
    }

    /// Undirected hop distance between two nodes.
    pub fn distance(&self, u: NodeId, v: NodeId) -> Result<u32, GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Ok(0);
        }
        let adj = self.adjacency();
        let d = adj.bfs_until(u, v);
        Ok(d)
    }

    /// Exact diameter of the underlying undirected graph.
    ///
    /// Up to 50 000 nodes this runs BFS from every node. Beyond that it
    /// switches to an iterated double-sweep (iFUB-style) search whose result
    /// is exact unless the sweep budget runs out, in which case the returned
    /// value is a lower bound and `exact` is false.
    pub fn diameter(&self) -> DiameterResult {
        let adj = self.adjacency();
        if self.node_count <= 1 {
            return DiameterResult { value: 0, exact: true };
        }
        if self.node_count <= 50_000 {
            let mut diam = 0;
            for s in 0..self.node_count {
                diam = diam.max(adj.eccentricity(s));
            }
            DiameterResult { value: diam, exact: true }
        } else {
            adj.ifub_diameter(20_000)
        }
    }

    /// The sweep-based diameter search used for graphs beyond the all-pairs
    /// threshold, callable directly for cross-checks.
    pub fn diameter_via_sweeps(&self, sweep_budget: usize) -> DiameterResult {
        if self.node_count <= 1 {
            return DiameterResult { value: 0, exact: true };
        }
        self.adjacency().ifub_diameter(sweep_budget)
    }

    /// Undirected adjacency in CSR form.
    pub fn adjacency(&self) -> Adjacency {
        let n = self.node_count as usize;
        let mut deg = vec![0u32; n];
        for a in &self.arcs {
            deg[a.tail as usize] += 1;
            deg[a.head as usize] += 1;
        }
        let mut offsets = vec![0u32; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut neigh = vec![0u32; offsets[n] as usize];
        let mut fill = offsets.clone();
        for a in &self.arcs {
            neigh[fill[a.tail as usize] as usize] = a.head;
            fill[a.tail as usize] += 1;
            neigh[fill[a.head as usize] as usize] = a.tail;
            fill[a.head as usize] += 1;
        }
        Adjacency { offsets, neigh }
    }

    /// Serialises to the canonical JSON object (arcs in canonical order).
    pub fn to_file(&self, marks: &BTreeMap<String, NodeId>) -> GraphFile {
        GraphFile {
            num_colors: self.num_colors,
            arcs: self.arcs.iter().map(|a| [a.tail, a.head, a.color]).collect(),
            marks: if marks.is_empty() { None } else { Some(marks.clone()) },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterResult {
    pub value: u32,
    /// False only when the large-graph search exhausted its budget; the
    /// value is then a certified lower bound.
    pub exact: bool,
}

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Undirected CSR adjacency with BFS helpers.
pub struct Adjacency {
    offsets: Vec<u32>,
    neigh: Vec<u32>,
}

impl Adjacency {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: NodeId) -> &[u32] {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        &self.neigh[lo..hi]
    }

    /// Full BFS distance array from `s`; unreachable nodes get `UNREACHED`.
    pub fn bfs(&self, s: NodeId) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.node_count()];
        let mut queue = VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// BFS that stops as soon as `t` is reached.
    pub fn bfs_until(&self, s: NodeId, t: NodeId) -> u32 {
        let mut dist = vec![UNREACHED; self.node_count()];
        let mut queue = VecDeque::new();
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if u == t {
                return du;
            }
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        UNREACHED
    }

    pub fn eccentricity(&self, s: NodeId) -> u32 {
        self.bfs(s).into_iter().filter(|&d| d != UNREACHED).max().unwrap_or(0)
    }

    /// Iterated double-sweep diameter search for large graphs.
    ///
    /// Classic iFUB: a BFS tree from a double-sweep centre bounds the
    /// diameter by twice the depth of the deepest unprocessed level;
    /// eccentricities of nodes in deep levels raise the lower bound until
    /// the two bounds meet.
    fn ifub_diameter(&self, sweep_budget: usize) -> DiameterResult {
        let d0 = self.bfs(0);
        let a = argmax(&d0);
        let da = self.bfs(a);
        let b = argmax(&da);
        let mut lb = da[b as usize];
        // midpoint of the a--b path as root
        let db = self.bfs(b);
        let mid = (0..self.node_count() as u32)
            .filter(|&v| da[v as usize] != UNREACHED)
            .min_by_key(|&v| {
                let s = da[v as usize] + db[v as usize];
                (s, da[v as usize].abs_diff(db[v as usize]))
            })
            .unwrap_or(a);
        let droot = self.bfs(mid);
        let mut by_level: Vec<(u32, u32)> = droot
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNREACHED)
            .map(|(v, &d)| (d, v as u32))
            .collect();
        by_level.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        let mut used = 0usize;
        for &(level, v) in &by_level {
            if lb >= 2 * level {
                return DiameterResult { value: lb, exact: true };
            }
            if used >= sweep_budget {
                return DiameterResult { value: lb, exact: false };
            }
            lb = lb.max(self.eccentricity(v));
            used += 1;
        }
        DiameterResult { value: lb, exact: true }
    }
}

fn argmax(dist: &[u32]) -> NodeId {
    let mut best = 0u32;
    let mut best_d = 0u32;
    for (v, &d) in dist.iter().enumerate() {
        if d != UNREACHED && d > best_d {
            best_d = d;
            best = v as u32;
        }
    }
    best
}

/// A rule graph: a coloured digraph with two distinguished boundary nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleGraph {
    pub graph: ColoredDigraph,
    pub node_a: NodeId,
    pub node_b: NodeId,
}

impl RuleGraph {
    pub fn new(graph: ColoredDigraph, node_a: NodeId, node_b: NodeId) -> Self {
        RuleGraph { graph, node_a, node_b }
    }

    /// Validates the graph and the boundary-node requirements, including
    /// the substitution safety condition `d(A, B) >= 2`.
    pub fn validate(&self) -> Result<(), GraphError> {
        self.graph.validate()?;
        if self.node_a == self.node_b {
            return Err(GraphError::MarksCoincide { node: self.node_a });
        }
        let d = self.graph.distance(self.node_a, self.node_b)?;
        if d < 2 {
            return Err(GraphError::EndpointsTooClose { distance: d });
        }
        Ok(())
    }

    /// Number of internal (non-boundary) nodes.
    pub fn internal_count(&self) -> u32 {
        self.graph.node_count() - 2
    }
}

/// JSON schema for a serialised graph: implicit node set, canonical arc
/// order, optional named marks.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub num_colors: u32,
    pub arcs: Vec<[u32; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marks: Option<BTreeMap<String, NodeId>>,
}

impl GraphFile {
    pub fn to_graph(&self) -> ColoredDigraph {
        let arcs = self
            .arcs
            .iter()
            .map(|&[t, h, c]| Arc { tail: t, head: h, color: c })
            .collect();
        ColoredDigraph::from_arcs(self.num_colors, arcs)
    }

    pub fn mark(&self, name: &str) -> Option<NodeId> {
        self.marks.as_ref().and_then(|m| m.get(name).copied())
    }
}
