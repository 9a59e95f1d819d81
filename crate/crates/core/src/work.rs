//! Mutable edge set with incrementally maintained crossings, shared by the
//! constructions.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::{properly_cross, PointSet, Segment};
use crate::lowlink;
use crate::udg::{EdgeKind, GeometricGraph};

/// Role of an edge inside a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Class {
    /// Nearest-neighbor forest or spanning-tree edge.
    Tree,
    /// Second-nearest-neighbor edge out of a leaf.
    Snn { tail: usize },
    /// Reconnecting edge added while removing long straight paths.
    Link,
    /// Edge added while resolving a crossing or covering a bridge.
    Fix,
}

impl Class {
    pub(crate) fn kind(self) -> EdgeKind {
        match self {
            Class::Tree => EdgeKind::Tree,
            Class::Snn { .. } => EdgeKind::Snn,
            Class::Link | Class::Fix => EdgeKind::Augment,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct WorkGraph<'a> {
    ps: &'a PointSet,
    edges: BTreeMap<Segment, Class>,
    adj: Vec<BTreeSet<usize>>,
    crossings: BTreeMap<Segment, BTreeSet<Segment>>,
    crossing_count: usize,
}

impl<'a> WorkGraph<'a> {
    pub(crate) fn new(ps: &'a PointSet) -> Self {
        WorkGraph {
            ps,
            edges: BTreeMap::new(),
            adj: vec![BTreeSet::new(); ps.len()],
            crossings: BTreeMap::new(),
            crossing_count: 0,
        }
    }

    pub(crate) fn points(&self) -> &'a PointSet {
        self.ps
    }

    pub(crate) fn len(&self) -> usize {
        self.adj.len()
    }

    /// Inserts `s` unless present; returns whether it was inserted.
    pub(crate) fn add(&mut self, s: Segment, class: Class) -> bool {
        if self.edges.contains_key(&s) {
            return false;
        }
        let hits: BTreeSet<Segment> = self
            .edges
            .keys()
            .copied()
            .filter(|&t| properly_cross(s, t, self.ps))
            .collect();
        for &t in &hits {
            self.crossings.entry(t).or_default().insert(s);
        }
        self.crossing_count += hits.len();
        if !hits.is_empty() {
            self.crossings.insert(s, hits);
        }
        self.edges.insert(s, class);
        self.adj[s.a()].insert(s.b());
        self.adj[s.b()].insert(s.a());
        true
    }

    pub(crate) fn remove(&mut self, s: Segment) -> Option<Class> {
        let class = self.edges.remove(&s)?;
        self.adj[s.a()].remove(&s.b());
        self.adj[s.b()].remove(&s.a());
        if let Some(hits) = self.crossings.remove(&s) {
            self.crossing_count -= hits.len();
            for t in hits {
                let entry = self.crossings.get_mut(&t).expect("symmetric crossing table");
                entry.remove(&s);
                if entry.is_empty() {
                    self.crossings.remove(&t);
                }
            }
        }
        Some(class)
    }

    pub(crate) fn contains(&self, s: Segment) -> bool {
        self.edges.contains_key(&s)
    }

    pub(crate) fn class(&self, s: Segment) -> Option<Class> {
        self.edges.get(&s).copied()
    }

    pub(crate) fn edges(&self) -> impl Iterator<Item = (Segment, Class)> + '_ {
        self.edges.iter().map(|(s, c)| (*s, *c))
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub(crate) fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub(crate) fn crossing_count(&self) -> usize {
        self.crossing_count
    }

    pub(crate) fn crossings_of(&self, s: Segment) -> impl Iterator<Item = Segment> + '_ {
        self.crossings.get(&s).into_iter().flatten().copied()
    }

    /// Every crossing pair once, `(s, t)` with `s < t`, in sorted order.
    pub(crate) fn crossing_pairs(&self) -> Vec<(Segment, Segment)> {
        self.crossings
            .iter()
            .flat_map(|(s, hits)| hits.iter().filter(move |t| *s < **t).map(move |t| (*s, *t)))
            .collect()
    }

    /// Whether `s` would cross an edge currently present.
    pub(crate) fn would_cross(&self, s: Segment) -> bool {
        self.edges.keys().any(|&t| properly_cross(s, t, self.ps))
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|a| a.iter().copied().collect()).collect()
    }

    pub(crate) fn bridges(&self) -> Vec<Segment> {
        lowlink::analyze(&self.adjacency()).bridges
    }

    pub(crate) fn into_graph(self) -> GeometricGraph {
        let mut g = GeometricGraph::new(self.ps.clone());
        for (s, class) in self.edges {
            let inserted = match class {
                Class::Snn { tail } => {
                    g.insert_directed(tail, s.other(tail).expect("tail is an endpoint"), class.kind())
                }
                _ => g.insert(s, class.kind()),
            };
            inserted.expect("edge ids are valid");
        }
        g
    }
}
