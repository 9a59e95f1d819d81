//! Nearest-neighbor forest, minimum spanning tree, second-nearest-neighbor
//! edges and the black/red/green coloring used by the augmentation steps.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{compare_lengths, PointSet, Segment};
use crate::lowlink;
use crate::udg::adjacency;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Black,
    Red,
    /// Leaf of the forest.
    Green,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::Red,
            Color::Red => Color::Black,
            Color::Green => Color::Green,
        }
    }
}

/// A forest over point ids with a proper two-coloring of its internal vertices.
///
/// Each component is rooted at its smallest id; internal vertices at even
/// depth are black and at odd depth red; leaves (degree one) are green.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredForest {
    edges: Vec<Segment>,
    adj: Vec<Vec<usize>>,
    color: Vec<Color>,
    parent: Vec<Option<usize>>,
}

impl ColoredForest {
    pub fn from_edges(n: usize, mut edges: Vec<Segment>) -> Result<Self> {
        edges.sort();
        edges.dedup();
        if let Some(s) = edges.iter().find(|s| s.b() >= n) {
            return Err(Error::InvalidInput(format!("edge {s:?} out of range")));
        }
        let adj = adjacency(n, edges.iter().copied());
        let (_, comps) = lowlink::components(&adj);
        if edges.len() + comps != n {
            return Err(Error::Degenerate(
                "forest edges contain a cycle (distance ties?)".into(),
            ));
        }
        let mut color = vec![Color::Green; n];
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = Some(v);
                        queue.push_back(w);
                    }
                }
            }
        }
        for v in 0..n {
            color[v] = if adj[v].len() == 1 {
                Color::Green
            } else if depth[v] % 2 == 0 {
                Color::Black
            } else {
                Color::Red
            };
        }
        Ok(ColoredForest {
            edges,
            adj,
            color,
            parent,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[Segment] {
        &self.edges
    }

    pub fn contains(&self, s: Segment) -> bool {
        self.edges.binary_search(&s).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|&v| self.is_leaf(v))
    }

    pub fn color(&self, v: usize) -> Color {
        self.color[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.color
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Leaves are green and no two adjacent internal vertices share a color.
    pub fn coloring_is_proper(&self) -> bool {
        (0..self.adj.len()).all(|v| (self.color[v] == Color::Green) == self.is_leaf(v))
            && self.edges.iter().all(|s| {
                let (a, b) = (self.color[s.a()], self.color[s.b()]);
                a == Color::Green || b == Color::Green || a != b
            })
    }
}

/// Nearest point to `v` within distance `r`, skipping `exclude`.
pub(crate) fn nearest_within(
    ps: &PointSet,
    v: usize,
    r: f64,
    exclude: &[usize],
) -> Option<usize> {
    let mut best: Option<usize> = None;
    for w in 0..ps.len() {
        if w == v || exclude.contains(&w) || ps.dist(v, w) > r {
            continue;
        }
        best = match best {
            Some(b)
                if compare_lengths(ps, Segment::new(v, b), Segment::new(v, w))
                    != Ordering::Greater =>
            {
                Some(b)
            }
            _ => Some(w),
        };
    }
    best
}

/// Undirected union of each vertex's nearest-neighbor edge in `U(ps, r)`.
pub fn nearest_neighbor_forest(ps: &PointSet, r: f64) -> Result<ColoredForest> {
    let n = ps.len();
    let mut edges = Vec::with_capacity(n);
    for v in 0..n {
        let w = nearest_within(ps, v, r, &[]).ok_or(Error::IsolatedVertex { vertex: v, radius: r })?;
        edges.push(Segment::new(v, w));
    }
    ColoredForest::from_edges(n, edges)
}

/// Minimum spanning tree of `U(ps, r)` (Prim, with the tie-broken length order).
pub fn euclidean_mst(ps: &PointSet, r: f64) -> Result<ColoredForest> {
    let n = ps.len();
    if n == 0 {
        return ColoredForest::from_edges(0, Vec::new());
    }
    let mut in_tree = vec![false; n];
    let mut link: Vec<Option<usize>> = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut current = 0usize;
    in_tree[0] = true;
    for _ in 1..n {
        for w in 0..n {
            if in_tree[w] || ps.dist(current, w) > r {
                continue;
            }
            let better = match link[w] {
                None => true,
                Some(b) => {
                    compare_lengths(ps, Segment::new(current, w), Segment::new(b, w))
                        == Ordering::Less
                }
            };
            if better {
                link[w] = Some(current);
            }
        }
        let next = (0..n)
            .filter(|&w| !in_tree[w])
            .filter_map(|w| link[w].map(|b| Segment::new(b, w)))
            .min_by(|&s, &t| compare_lengths(ps, s, t))
            .ok_or(Error::Disconnected)?;
        let w = if in_tree[next.a()] { next.b() } else { next.a() };
        in_tree[w] = true;
        edges.push(next);
        current = w;
    }
    ColoredForest::from_edges(n, edges)
}

/// Directed edge from a forest leaf to its second nearest neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnnEdge {
    pub tail: usize,
    pub head: usize,
    pub length: f64,
}

impl SnnEdge {
    pub fn segment(&self) -> Segment {
        Segment::new(self.tail, self.head)
    }
}

/// Second-nearest-neighbor edge of `v` within distance `r`: the nearest point
/// other than `v`'s nearest neighbor `first`.
pub(crate) fn second_nearest(ps: &PointSet, v: usize, first: usize, r: f64) -> Option<SnnEdge> {
    nearest_within(ps, v, r, &[first]).map(|w| SnnEdge {
        tail: v,
        head: w,
        length: ps.dist(v, w),
    })
}

/// One edge per leaf of `forest`, from the leaf to its second nearest
/// neighbor in `U(ps, 1)`.
pub fn snn_edges(ps: &PointSet, forest: &ColoredForest) -> Result<Vec<SnnEdge>> {
    forest
        .leaves()
        .map(|u| {
            let first = forest.neighbors(u)[0];
            second_nearest(ps, u, first, 1.0).ok_or_else(|| {
                Error::Precondition(format!(
                    "leaf {u} has fewer than two neighbors within the unit radius"
                ))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DIST_TOL;

    fn perturbed_square() -> PointSet {
        // Sides 1.00, 0.99, 1.02, 0.97 (approximately); no ties.
        PointSet::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.01, 0.99), (0.02, 0.97)]).unwrap()
    }

    #[test]
    fn nng_of_three_nearly_collinear_points() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (0.4, 0.01), (1.0, 0.0)]).unwrap();
        // NN(0)=1 (0.400), NN(1)=0 (0.400 < 0.600), NN(2)=1 (0.600 < 1.0)
        let f = nearest_neighbor_forest(&ps, 1.0).unwrap();
        assert_eq!(f.edges(), &[Segment::new(0, 1), Segment::new(1, 2)]);
        assert_eq!(f.color(1), Color::Red);
        assert_eq!(f.color(0), Color::Green);
        assert_eq!(f.color(2), Color::Green);
    }

    #[test]
    fn nng_of_perturbed_square_pairs_closest_corners() {
        let ps = perturbed_square();
        // Side lengths: d01=1.0, d12=0.99005, d23=0.99020, d03=0.97021.
        let f = nearest_neighbor_forest(&ps, 1.0).unwrap();
        assert_eq!(f.edges(), &[Segment::new(0, 3), Segment::new(1, 2)]);
        assert!(f.leaves().count() == 4);
    }

    #[test]
    fn nng_of_scalene_triangle_is_a_path() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (1.0, 0.0), (0.45, 0.8)]).unwrap();
        // d01=1, d02=0.91788, d12=0.97082 -> NN(0)=2, NN(1)=2, NN(2)=0
        let f = nearest_neighbor_forest(&ps, 1.5).unwrap();
        assert_eq!(f.edges(), &[Segment::new(0, 2), Segment::new(1, 2)]);
    }

    #[test]
    fn isolated_vertex_is_named() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (0.5, 0.0), (5.0, 5.0)]).unwrap();
        assert!(matches!(
            nearest_neighbor_forest(&ps, 1.0),
            Err(Error::IsolatedVertex { vertex: 2, .. })
        ));
    }

    #[test]
    fn mst_of_square_takes_three_shortest_sides() {
        let ps = perturbed_square();
        let t = euclidean_mst(&ps, 2.0).unwrap();
        assert_eq!(
            t.edges(),
            &[Segment::new(0, 3), Segment::new(1, 2), Segment::new(2, 3)]
        );
        assert!(t.coloring_is_proper());
        let far = PointSet::from_coords(&[(0.0, 0.0), (3.0, 0.0)]).unwrap();
        assert!(matches!(euclidean_mst(&far, 1.0), Err(Error::Disconnected)));
    }

    #[test]
    fn snn_of_path_leaf() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (0.4, 0.01), (0.999, 0.0)]).unwrap();
        let f = nearest_neighbor_forest(&ps, 1.0).unwrap();
        let snn = snn_edges(&ps, &f).unwrap();
        // Leaf 2: nearest 1 (0.599), second 0 (0.999); leaf 0: nearest 1, second 2.
        assert_eq!(snn.len(), 2);
        assert!(snn.iter().any(|e| e.tail == 2 && e.head == 0));
        assert!(snn.iter().any(|e| e.tail == 0 && e.head == 2));
    }

    #[test]
    fn snn_ties_resolve_by_id() {
        // Point 0 at the origin; 1 is nearest; 2 and 3 at exactly equal distance.
        let ps = PointSet::from_coords(&[(0.0, 0.0), (0.1, 0.0), (0.0, 0.5), (0.0, -0.5)]).unwrap();
        let e = second_nearest(&ps, 0, 1, 1.0).unwrap();
        assert_eq!(e.head, 2);
        assert!((ps.dist(0, 2) - ps.dist(0, 3)).abs() <= DIST_TOL);
    }

    #[test]
    fn snn_of_square_corners() {
        let ps = perturbed_square();
        let f = nearest_neighbor_forest(&ps, 1.0).unwrap();
        let mut snn: Vec<(usize, usize)> = snn_edges(&ps, &f)
            .unwrap()
            .into_iter()
            .map(|e| (e.tail, e.head))
            .collect();
        snn.sort();
        // Corner ranks: 0 -> {3, 1}, 1 -> {2, 0}, 2 -> {1, 3}, 3 -> {0, 2}.
        assert_eq!(snn, vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
    }

    #[test]
    fn snn_requires_second_neighbor() {
        let ps = PointSet::from_coords(&[(0.0, 0.0), (0.5, 0.0), (1.4, 0.0)]).unwrap();
        let f = nearest_neighbor_forest(&ps, 1.0).unwrap();
        assert!(snn_edges(&ps, &f).is_err());
    }
}
