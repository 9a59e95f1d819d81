//! Exhaustive search for crossing-free spanning subgraphs on small point sets.
//!
//! Every supported [`Property`] is monotone under edge insertion, so a branch
//! can be abandoned as soon as the edges still available fail the property,
//! and it succeeds as soon as the available edges are pairwise non-crossing.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::geometry::{properly_cross, PointSet, Segment};
use crate::udg::{adjacency, udg_segments, EdgeKind, GeometricGraph, Property};

/// Largest point count accepted by the exhaustive search.
pub const MAX_POINTS: usize = 10;

/// Default wall-clock budget per query.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

/// Whether some crossing-free spanning subgraph of `U(ps, r)` has `prop`.
///
/// Returns the witness graph when one exists.
pub fn exists_planar_subgraph(
    ps: &PointSet,
    r: f64,
    prop: Property,
) -> Result<Option<GeometricGraph>> {
    exists_planar_subgraph_within(ps, r, prop, DEFAULT_BUDGET)
}

pub fn exists_planar_subgraph_within(
    ps: &PointSet,
    r: f64,
    prop: Property,
    budget: Duration,
) -> Result<Option<GeometricGraph>> {
    let n = ps.len();
    if n > MAX_POINTS {
        return Err(Error::TooLarge {
            n,
            limit: MAX_POINTS,
        });
    }
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
    }
    let mut edges = udg_segments(ps, r);
    // Longest first: long edges cause most crossings and are decided early.
    edges.sort_by(|s, t| ps.length(*t).total_cmp(&ps.length(*s)).then(s.cmp(t)));
    let m = edges.len();
    let mut conflicts = vec![0u64; m];
    for i in 0..m {
        for j in i + 1..m {
            if properly_cross(edges[i], edges[j], ps) {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    let search = Search {
        n,
        prop,
        edges: &edges,
        conflicts: &conflicts,
        deadline: Instant::now() + budget,
    };
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let found = search.run(0, full)?;
    Ok(found.map(|mask| {
        let mut g = GeometricGraph::new(ps.clone());
        for (i, &s) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.insert(s, EdgeKind::Udg).expect("edge ids are valid");
            }
        }
        g
    }))
}

struct Search<'a> {
    n: usize,
    prop: Property,
    edges: &'a [Segment],
    conflicts: &'a [u64],
    deadline: Instant,
}

impl Search<'_> {
    fn holds(&self, mask: u64) -> bool {
        let segs = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s);
        self.prop.holds(&adjacency(self.n, segs))
    }

    /// `chosen` edges are committed; `available` is a superset of `chosen`
    /// from which every edge crossing a chosen edge has been removed.
    fn run(&self, chosen: u64, available: u64) -> Result<Option<u64>> {
        if Instant::now() > self.deadline {
            return Err(Error::BudgetExhausted);
        }
        if !self.holds(available) {
            return Ok(None);
        }
        let open = available & !chosen;
        let branch = (0..self.edges.len())
            .find(|&i| open >> i & 1 == 1 && self.conflicts[i] & available != 0);
        let Some(i) = branch else {
            return Ok(Some(available));
        };
        let bit = 1u64 << i;
        if let Some(found) = self.run(chosen, available & !bit)? {
            return Ok(Some(found));
        }
        self.run(chosen | bit, available & !self.conflicts[i])
    }
}

/// Smallest pairwise distance at which a crossing-free spanning subgraph
/// with `prop` exists.
pub fn optimal_planar_radius(ps: &PointSet, prop: Property) -> Result<f64> {
    if ps.len() > MAX_POINTS {
        return Err(Error::TooLarge {
            n: ps.len(),
            limit: MAX_POINTS,
        });
    }
    let mut radii: Vec<f64> = ps.pairs_by_distance().into_iter().map(|(d, _)| d).collect();
    radii.dedup();
    let Some(&last) = radii.last() else {
        return Err(Error::Unattainable("fewer than two points".into()));
    };
    let exists = |r: f64| exists_planar_subgraph(ps, r, prop).map(|w| w.is_some());
    if !exists(last)? {
        return Err(Error::Unattainable(format!(
            "no crossing-free spanning subgraph is {}",
            prop.name()
        )));
    }
    let (mut lo, mut hi) = (0usize, radii.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if exists(radii[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(radii[lo])
}
