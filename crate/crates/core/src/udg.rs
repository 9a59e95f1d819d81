//! Geometric graphs over a point set, unit disk graphs and their audit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{properly_cross, PointSet, Segment};
use crate::lowlink;

/// Provenance class of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Edge of the nearest-neighbor forest or minimum spanning tree.
    Tree,
    /// Second-nearest-neighbor edge, or a replacement for one; directed from a leaf.
    Snn,
    /// Edge added to remove a bridge or an arduous vertex.
    Augment,
    /// Plain unit disk graph edge.
    Udg,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Tree => "tree",
            EdgeKind::Snn => "snn",
            EdgeKind::Augment => "augment",
            EdgeKind::Udg => "udg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeInfo {
    pub kind: EdgeKind,
    /// `(tail, head)` for directed second-nearest-neighbor edges.
    pub direction: Option<(usize, usize)>,
}

/// Straight-line graph whose vertices are the points of a [`PointSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    points: PointSet,
    edges: BTreeMap<Segment, EdgeInfo>,
}

impl GeometricGraph {
    pub fn new(points: PointSet) -> Self {
        GeometricGraph {
            points,
            edges: BTreeMap::new(),
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Inserts an undirected edge; an existing edge keeps its original kind.
    pub fn insert(&mut self, s: Segment, kind: EdgeKind) -> Result<()> {
        self.insert_info(
            s,
            EdgeInfo {
                kind,
                direction: None,
            },
        )
    }

    pub fn insert_directed(&mut self, tail: usize, head: usize, kind: EdgeKind) -> Result<()> {
        let s = Segment::try_new(tail, head)?;
        self.insert_info(
            s,
            EdgeInfo {
                kind,
                direction: Some((tail, head)),
            },
        )
    }

    pub fn insert_info(&mut self, s: Segment, info: EdgeInfo) -> Result<()> {
        let n = self.points.len();
        if s.b() >= n {
            return Err(Error::InvalidInput(format!(
                "edge {s:?} references a point outside 0..{n}"
            )));
        }
        if let Some((tail, head)) = info.direction {
            if Segment::try_new(tail, head)? != s {
                return Err(Error::InvalidInput(format!(
                    "direction ({tail},{head}) does not match edge {s:?}"
                )));
            }
        }
        self.edges.entry(s).or_insert(info);
        Ok(())
    }

    pub fn remove(&mut self, s: Segment) -> Option<EdgeInfo> {
        self.edges.remove(&s)
    }

    pub fn contains(&self, s: Segment) -> bool {
        self.edges.contains_key(&s)
    }

    pub fn info(&self, s: Segment) -> Option<EdgeInfo> {
        self.edges.get(&s).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Segment, EdgeInfo)> + '_ {
        self.edges.iter().map(|(s, i)| (*s, *i))
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.edges.keys().copied().collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.points.len(), self.edges.keys().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|s| s.contains(v)).count()
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges
            .keys()
            .map(|&s| self.points.length(s))
            .fold(0.0, f64::max)
    }

    /// Union with another graph on the same points; edges already present keep their kind.
    pub fn merge(&mut self, other: &GeometricGraph) -> Result<()> {
        if other.points != self.points {
            return Err(Error::InvalidInput(
                "cannot merge graphs over different point sets".into(),
            ));
        }
        for (s, info) in other.edges() {
            self.insert_info(s, info)?;
        }
        Ok(())
    }
}

pub(crate) fn adjacency(n: usize, edges: impl IntoIterator<Item = Segment>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for s in edges {
        adj[s.a()].push(s.b());
        adj[s.b()].push(s.a());
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Edges between all pairs at distance at most `r`.
pub fn build_udg(ps: &PointSet, r: f64) -> Result<GeometricGraph> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!(
            "radius must be positive and finite, got {r}"
        )));
    }
    let mut g = GeometricGraph::new(ps.clone());
    for s in udg_segments(ps, r) {
        g.insert(s, EdgeKind::Udg)?;
    }
    Ok(g)
}

pub(crate) fn udg_segments(ps: &PointSet, r: f64) -> Vec<Segment> {
    let n = ps.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if ps.dist(i, j) <= r {
                out.push(Segment::new(i, j));
            }
        }
    }
    out
}

pub(crate) fn udg_adjacency(ps: &PointSet, r: f64) -> Vec<Vec<usize>> {
    adjacency(ps.len(), udg_segments(ps, r))
}

/// All properly crossing pairs among `edges`, each pair ordered `(smaller, larger)`.
pub fn crossing_pairs(ps: &PointSet, edges: &[Segment]) -> Vec<(Segment, Segment)> {
    let mut spans: Vec<(f64, f64, Segment)> = edges
        .iter()
        .map(|&s| {
            let (p, q) = (ps.point(s.a()), ps.point(s.b()));
            (p.x.min(q.x), p.x.max(q.x), s)
        })
        .collect();
    spans.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.2.cmp(&y.2)));
    let mut out = Vec::new();
    for (i, &(_, hi, s)) in spans.iter().enumerate() {
        for &(lo2, _, t) in &spans[i + 1..] {
            if lo2 > hi {
                break;
            }
            if properly_cross(s, t, ps) {
                out.push(if s < t { (s, t) } else { (t, s) });
            }
        }
    }
    out.sort();
    out
}

/// Maximum number of crossing witnesses kept in a report.
pub const MAX_WITNESSES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub is_planar: bool,
    pub crossing_count: usize,
    /// At most [`MAX_WITNESSES`] crossing pairs.
    pub crossings: Vec<(Segment, Segment)>,
    pub min_degree: usize,
    pub bridges: Vec<Segment>,
    pub is_connected: bool,
    pub is_two_edge_connected: bool,
    pub is_two_vertex_connected: bool,
    pub max_edge_length: f64,
}

pub fn audit(g: &GeometricGraph) -> VerificationReport {
    let ps = g.points();
    let segments = g.segments();
    let mut crossings = crossing_pairs(ps, &segments);
    let crossing_count = crossings.len();
    crossings.truncate(MAX_WITNESSES);
    let adj = g.adjacency();
    let n = adj.len();
    let ll = lowlink::analyze(&adj);
    let is_connected = ll.component_count <= 1;
    VerificationReport {
        vertex_count: n,
        edge_count: segments.len(),
        is_planar: crossing_count == 0,
        crossing_count,
        crossings,
        min_degree: adj.iter().map(Vec::len).min().unwrap_or(0),
        is_two_edge_connected: is_connected && ll.bridges.is_empty(),
        is_two_vertex_connected: n >= 3 && is_connected && ll.cut_vertices.is_empty(),
        bridges: ll.bridges,
        is_connected,
        max_edge_length: g.max_edge_length(),
    }
}

/// Connectivity property of a graph on a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    Connected,
    MinDegree2,
    TwoEdgeConnected,
    TwoVertexConnected,
}

impl Property {
    pub fn holds(self, adj: &[Vec<usize>]) -> bool {
        let n = adj.len();
        match self {
            Property::MinDegree2 => adj.iter().all(|a| a.len() >= 2),
            Property::Connected => lowlink::components(adj).1 <= 1,
            Property::TwoEdgeConnected => {
                let ll = lowlink::analyze(adj);
                ll.component_count <= 1 && ll.bridges.is_empty()
            }
            Property::TwoVertexConnected => {
                let ll = lowlink::analyze(adj);
                n >= 3 && ll.component_count <= 1 && ll.cut_vertices.is_empty()
            }
        }
    }

    pub fn holds_for(self, g: &GeometricGraph) -> bool {
        self.holds(&g.adjacency())
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Connected => "connected",
            Property::MinDegree2 => "minimum degree 2",
            Property::TwoEdgeConnected => "2-edge connected",
            Property::TwoVertexConnected => "2-vertex connected",
        }
    }
}

/// Vertex sets of the biconnected components of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Blocks with at least three vertices, each sorted.
    pub blocks: Vec<Vec<usize>>,
    /// Blocks consisting of a single bridge.
    pub bridge_blocks: Vec<Segment>,
}

pub fn biconnected_components(g: &GeometricGraph) -> Result<BlockDecomposition> {
    let adj = g.adjacency();
    let ll = lowlink::analyze(&adj);
    if ll.component_count > 1 {
        return Err(Error::Disconnected);
    }
    let mut blocks = Vec::new();
    let mut bridge_blocks = Vec::new();
    for edges in ll.blocks {
        if edges.len() == 1 {
            bridge_blocks.push(edges[0]);
            continue;
        }
        let mut vs: Vec<usize> = edges.iter().flat_map(|s| s.ends()).collect();
        vs.sort_unstable();
        vs.dedup();
        blocks.push(vs);
    }
    blocks.sort();
    bridge_blocks.sort();
    Ok(BlockDecomposition {
        blocks,
        bridge_blocks,
    })
}

/// Smallest pairwise distance `r` such that `U(ps, r)` has the property.
pub fn min_radius_for(ps: &PointSet, prop: Property) -> Result<f64> {
    let n = ps.len();
    if prop == Property::Connected && n <= 1 {
        return Ok(0.0);
    }
    if n < 3 && prop != Property::Connected {
        return Err(Error::Unattainable(format!(
            "{} needs at least three points, got {n}",
            prop.name()
        )));
    }
    let mut radii: Vec<f64> = ps.pairs_by_distance().into_iter().map(|(d, _)| d).collect();
    radii.dedup();
    let holds_at = |r: f64| prop.holds(&udg_adjacency(ps, r));
    let last = *radii.last().expect("at least two points");
    if !holds_at(last) {
        return Err(Error::Unattainable(format!(
            "the complete graph on the points is not {}",
            prop.name()
        )));
    }
    let (mut lo, mut hi) = (0usize, radii.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if holds_at(radii[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(radii[lo])
}
