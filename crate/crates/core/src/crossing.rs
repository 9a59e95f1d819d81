//! Crossing classification and the planar minimum-degree-2 construction.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{compare_lengths, in_polygon, properly_cross, PointSet, Segment, DIST_TOL};
use crate::spanning::{nearest_neighbor_forest, snn_edges, ColoredForest};
use crate::udg::{udg_adjacency, GeometricGraph};
use crate::work::{Class, WorkGraph};

/// How two properly crossing segments relate metrically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CrossingKind {
    /// Segment `tip`-`v` crosses `x`-`y`; `x` and `y` lie outside the disk
    /// around `tip` through `v`, and `tip` lies outside the disk around `x`
    /// through `y`.
    Tie {
        tip: usize,
        v: usize,
        x: usize,
        y: usize,
    },
    /// `d(u,y) <= d(u,v) < d(u,x)` and `d(v,x) <= d(x,y) < d(u,x)`.
    Bow { u: usize, v: usize, x: usize, y: usize },
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub kind: CrossingKind,
    pub segments: (Segment, Segment),
}

/// Tie predicate with `u` as tip, `uv` the tip edge and `xy` the crossing line.
pub fn is_tie(ps: &PointSet, u: usize, v: usize, x: usize, y: usize) -> bool {
    let duv = ps.dist(u, v);
    properly_cross(Segment::new(u, v), Segment::new(x, y), ps)
        && ps.dist(u, x) > duv
        && ps.dist(u, y) > duv
        && ps.dist(u, x) > ps.dist(x, y)
}

pub fn is_bow(ps: &PointSet, u: usize, v: usize, x: usize, y: usize) -> bool {
    let (duv, dux, dxy) = (ps.dist(u, v), ps.dist(u, x), ps.dist(x, y));
    properly_cross(Segment::new(u, v), Segment::new(x, y), ps)
        && ps.dist(u, y) <= duv
        && duv < dux
        && ps.dist(v, x) <= dxy
        && dxy < dux
}

/// Classifies a pair of segments; `None` if they do not properly cross.
///
/// Tips are tried in the order `s1.a, s1.b, s2.a, s2.b`; a Bow is reported
/// only when no labeling forms a Tie.
pub fn classify(s1: Segment, s2: Segment, ps: &PointSet) -> Option<CrossingRecord> {
    if !properly_cross(s1, s2, ps) {
        return None;
    }
    let record = |kind| CrossingRecord {
        kind,
        segments: (s1, s2),
    };
    for (e, f) in [(s1, s2), (s2, s1)] {
        for [tip, v] in [[e.a(), e.b()], [e.b(), e.a()]] {
            for [x, y] in [[f.a(), f.b()], [f.b(), f.a()]] {
                if is_tie(ps, tip, v, x, y) {
                    return Some(record(CrossingKind::Tie { tip, v, x, y }));
                }
            }
        }
    }
    for [u, v] in [[s1.a(), s1.b()], [s1.b(), s1.a()]] {
        for [x, y] in [[s2.a(), s2.b()], [s2.b(), s2.a()]] {
            if is_bow(ps, u, v, x, y) {
                return Some(record(CrossingKind::Bow { u, v, x, y }));
            }
        }
    }
    Some(record(CrossingKind::Other))
}

/// Worst-case length of an edge added next to a Tie whose tip sees the new
/// endpoint within angle `phi` of the tip edge (unit radius).
pub fn tie_length_bound(phi: f64) -> Result<f64> {
    if !(FRAC_PI_3 - 1e-12..=PI + 1e-12).contains(&phi) {
        return Err(Error::InvalidInput(format!(
            "angle {phi} outside [pi/3, pi]"
        )));
    }
    Ok((3.0 - 2.0 * 2f64.sqrt() * (phi - FRAC_PI_4).cos()).sqrt())
}

/// Counts of the crossing resolutions applied during a construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStats {
    pub ties: usize,
    pub bows: usize,
    /// Reconnecting edges dropped because an SNN edge crossed them.
    pub links_dropped: usize,
    /// Crossings removed by dropping an edge and reattaching its endpoints.
    pub fallbacks: usize,
}

struct Plan {
    remove: Vec<Segment>,
    add: Vec<Segment>,
}

impl Plan {
    fn new(remove: &[Segment], add: &[Segment]) -> Self {
        Plan {
            remove: remove.to_vec(),
            add: add.to_vec(),
        }
    }
}

/// Removes crossings by local replacements, keeping tree edges, the minimum
/// degree and the edge-length limit.
pub(crate) struct Resolver {
    pub limit: f64,
    pub min_degree: usize,
    /// Drop a reconnecting edge crossed by an SNN edge before trying Bows.
    pub drop_links: bool,
}

impl Resolver {
    pub(crate) fn planarize(&self, wg: &mut WorkGraph<'_>, stats: &mut ResolutionStats) -> Result<()> {
        while wg.crossing_count() > 0 {
            let pairs = wg.crossing_pairs();
            if let Some(next) = self.resolve_tie(wg, &pairs) {
                *wg = next;
                stats.ties += 1;
            } else if let Some(next) = self.drop_link(wg, &pairs) {
                *wg = next;
                stats.links_dropped += 1;
            } else if let Some(next) = self.resolve_bow(wg, &pairs) {
                *wg = next;
                stats.bows += 1;
            } else if let Some(next) = self.resolve_any(wg, &pairs) {
                *wg = next;
                stats.fallbacks += 1;
            } else {
                let (s, t) = pairs[0];
                return Err(Error::construction("crossing could not be resolved", vec![s, t]));
            }
        }
        Ok(())
    }

    fn resolve_tie<'a>(&self, wg: &WorkGraph<'a>, pairs: &[(Segment, Segment)]) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        let mut ties = BTreeSet::new();
        for &(s, t) in pairs {
            for (edge, line) in [(s, t), (t, s)] {
                let Some(Class::Snn { tail }) = wg.class(line) else {
                    continue;
                };
                let head = line.other(tail).expect("tail is an endpoint");
                for [u, v] in [[edge.a(), edge.b()], [edge.b(), edge.a()]] {
                    if is_tie(ps, u, v, tail, head) {
                        ties.insert([u, v, tail, head]);
                    }
                }
            }
        }
        ties.into_iter()
            .flat_map(|t| self.tie_plans(wg, t))
            .find_map(|plan| self.attempt(wg, &plan))
    }

    /// Candidate replacements for `Tie(u; v, u1, v1)` where `(u1, v1)` is an
    /// SNN edge out of the leaf `u1`.
    fn tie_plans(&self, wg: &WorkGraph<'_>, [u, v, u1, v1]: [usize; 4]) -> Vec<Plan> {
        let ps = wg.points();
        let tip_edge = Segment::new(u, v);
        let line = Segment::new(u1, v1);
        let others: Vec<Segment> = wg.crossings_of(tip_edge).filter(|&f| f != line).collect();
        let mut plans = Vec::new();
        match others.as_slice() {
            [] => {
                let inside = points_inside(ps, &[u, v, u1]);
                if inside.is_empty() {
                    plans.push(Plan::new(&[line], &[Segment::new(u, u1)]));
                }
                let mut witnesses = inside;
                witnesses.sort_by_key(|&w| (!wg.contains(Segment::new(u, w)), w));
                for w in witnesses {
                    plans.push(Plan::new(&[line], &[Segment::new(w, u1)]));
                }
                plans.push(Plan::new(&[line], &[Segment::new(u, u1)]));
            }
            &[f] => {
                if let Some(Class::Snn { tail: u2 }) = wg.class(f) {
                    let v2 = f.other(u2).expect("tail is an endpoint");
                    if is_tie(ps, v, u, u2, v2) {
                        plans.extend(self.double_tie_plans(wg, [u, v, u1, v1, u2, v2]));
                    }
                }
                if wg.class(tip_edge) == Some(Class::Snn { tail: u }) {
                    for [u2, v2] in [[f.a(), f.b()], [f.b(), f.a()]] {
                        if is_tie(ps, u2, v2, u, v) {
                            plans.extend(self.crossing_line_plans(wg, [u, v, u1, v1, u2, v2]));
                        }
                    }
                }
            }
            _ => {}
        }
        plans
    }

    /// `{u,v}` is also the tip edge of `Tie(v; u, u2, v2)`.
    fn double_tie_plans(&self, wg: &WorkGraph<'_>, [u, v, u1, v1, u2, v2]: [usize; 6]) -> Vec<Plan> {
        let ps = wg.points();
        let lines = [Segment::new(u1, v1), Segment::new(u2, v2)];
        let straight = [Segment::new(u, u1), Segment::new(u2, v)];
        let mut plans = Vec::new();
        if !properly_cross(straight[0], straight[1], ps) {
            plans.push(Plan::new(&lines, &straight));
        }
        let quad = points_inside(ps, &[u, v, u1, u2]);
        if quad.is_empty() {
            plans.push(Plan::new(&lines, &[Segment::new(u1, u2)]));
        } else {
            let p = min_angle_point(ps, u2, u, &quad);
            let q = min_angle_point(ps, u1, v, &quad);
            plans.push(Plan::new(&lines, &[Segment::new(u2, p), Segment::new(u1, q)]));
            plans.push(Plan::new(&lines, &[Segment::new(u1, q), Segment::new(u2, q)]));
            plans.push(Plan::new(&lines, &[Segment::new(u1, p), Segment::new(u2, p)]));
        }
        plans.push(Plan::new(&lines, &[Segment::new(u1, u2)]));
        plans
    }

    /// `{u,v}` is an SNN edge and the crossing line of `Tie(u2; v2, u, v)`.
    fn crossing_line_plans(&self, wg: &WorkGraph<'_>, [u, v, u1, v1, u2, v2]: [usize; 6]) -> Vec<Plan> {
        if u1 == u2 || u1 == v2 {
            return Vec::new();
        }
        let ps = wg.points();
        let line = Segment::new(u1, v1);
        let other = Segment::new(u2, v2);
        let bridge = Segment::new(u1, u2);
        let mut plans = Vec::new();
        let quad = points_inside(ps, &[u2, u, v, u1]);
        if quad.is_empty() {
            plans.push(Plan::new(&[line], &[bridge]));
            if wg.class(other) == Some(Class::Snn { tail: u2 }) {
                plans.push(Plan::new(&[line, other], &[bridge]));
            }
        } else {
            let p = min_angle_point(ps, u1, v, &quad);
            plans.push(Plan::new(&[line], &[Segment::new(u1, p)]));
            plans.push(Plan::new(&[line], &[Segment::new(u2, p)]));
        }
        plans
    }

    fn drop_link<'a>(&self, wg: &WorkGraph<'a>, pairs: &[(Segment, Segment)]) -> Option<WorkGraph<'a>> {
        if !self.drop_links {
            return None;
        }
        pairs.iter().find_map(|&(s, t)| {
            let link = match (wg.class(s), wg.class(t)) {
                (Some(Class::Snn { .. }), Some(Class::Link)) => t,
                (Some(Class::Link), Some(Class::Snn { .. })) => s,
                _ => return None,
            };
            self.attempt(wg, &Plan::new(&[link], &[]))
        })
    }

    fn resolve_bow<'a>(&self, wg: &WorkGraph<'a>, pairs: &[(Segment, Segment)]) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        pairs.iter().find_map(|&(s, t)| {
            let (Some(Class::Snn { tail: u }), Some(Class::Snn { tail: x })) = (wg.class(s), wg.class(t))
            else {
                return None;
            };
            let v = s.other(u)?;
            let y = t.other(x)?;
            if u == x || !(is_bow(ps, u, v, x, y) || is_bow(ps, x, y, u, v)) {
                return None;
            }
            self.attempt(wg, &Plan::new(&[s, t], &[Segment::new(u, x)]))
        })
    }

    /// Drops a non-tree edge of some crossing and reattaches endpoints left
    /// below the minimum degree.
    fn resolve_any<'a>(&self, wg: &WorkGraph<'a>, pairs: &[(Segment, Segment)]) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        pairs.iter().find_map(|&(s, t)| {
            let mut victims: Vec<Segment> = [s, t]
                .into_iter()
                .filter(|&e| wg.class(e) != Some(Class::Tree))
                .collect();
            victims.sort_by(|&a, &b| compare_lengths(ps, b, a));
            victims
                .into_iter()
                .find_map(|e| self.attempt(wg, &Plan::new(&[e], &[])))
        })
    }

    /// Applies `plan` to a copy of `wg` and keeps it only if every new edge is
    /// crossing-free and within the length limit, no vertex touched falls
    /// below the minimum degree, and the crossing count drops.
    fn attempt<'a>(&self, wg: &WorkGraph<'a>, plan: &Plan) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        let mut next = wg.clone();
        for &s in &plan.remove {
            match next.class(s) {
                None | Some(Class::Tree) => return None,
                Some(_) => {
                    next.remove(s);
                }
            }
        }
        let mut added = Vec::new();
        for &s in &plan.add {
            if plan.remove.contains(&s) {
                return None;
            }
            if next.add(s, Class::Fix) {
                added.push(s);
            }
        }
        let touched: BTreeSet<usize> = plan
            .remove
            .iter()
            .chain(&plan.add)
            .flat_map(|s| s.ends())
            .collect();
        for v in touched {
            while next.degree(v) < self.min_degree {
                let s = shortest_free_edge(&next, v, self.limit)?;
                next.add(s, Class::Fix);
                added.push(s);
            }
        }
        let ok = added
            .iter()
            .all(|&s| ps.length(s) <= self.limit + DIST_TOL && next.crossings_of(s).next().is_none())
            && next.crossing_count() < wg.crossing_count();
        ok.then_some(next)
    }
}

/// Shortest crossing-free edge of length at most `limit` from `v` to a vertex
/// it is not yet adjacent to.
pub(crate) fn shortest_free_edge(wg: &WorkGraph<'_>, v: usize, limit: f64) -> Option<Segment> {
    let ps = wg.points();
    (0..wg.len())
        .filter(|&w| w != v && ps.dist(v, w) <= limit + DIST_TOL)
        .map(|w| Segment::new(v, w))
        .filter(|&s| !wg.contains(s) && !wg.would_cross(s))
        .min_by(|&s, &t| compare_lengths(ps, s, t))
}

/// Points strictly inside the polygon with the given vertex ids.
pub(crate) fn points_inside(ps: &PointSet, polygon: &[usize]) -> Vec<usize> {
    let corners: Vec<_> = polygon.iter().map(|&i| ps.point(i)).collect();
    (0..ps.len())
        .filter(|i| !polygon.contains(i) && in_polygon(ps.point(*i), &corners))
        .collect()
}

/// Candidate minimizing the angle at `apex` between `reference` and itself.
pub(crate) fn min_angle_point(ps: &PointSet, apex: usize, reference: usize, candidates: &[usize]) -> usize {
    *candidates
        .iter()
        .min_by(|&&p, &&q| {
            ps.angle_at(apex, reference, p)
                .total_cmp(&ps.angle_at(apex, reference, q))
                .then(p.cmp(&q))
        })
        .expect("non-empty candidate list")
}

pub(crate) fn require_min_degree_two(ps: &PointSet) -> Result<()> {
    let adj = udg_adjacency(ps, 1.0);
    match adj.iter().position(|a| a.len() < 2) {
        Some(v) => Err(Error::Precondition(format!(
            "vertex {v} has fewer than two neighbors within the unit radius"
        ))),
        None => Ok(()),
    }
}

/// Forest edges plus the SNN edges of its leaves, planarized with new edges of
/// length at most `limit`.
pub(crate) fn planar_min_degree<'a>(
    ps: &'a PointSet,
    forest: &ColoredForest,
    limit: f64,
    stats: &mut ResolutionStats,
) -> Result<WorkGraph<'a>> {
    let mut wg = WorkGraph::new(ps);
    for &s in forest.edges() {
        wg.add(s, Class::Tree);
    }
    for e in snn_edges(ps, forest)? {
        wg.add(e.segment(), Class::Snn { tail: e.tail });
    }
    let resolver = Resolver {
        limit,
        min_degree: 2,
        drop_links: false,
    };
    resolver.planarize(&mut wg, stats)?;
    Ok(wg)
}

/// Planar spanning subgraph of minimum degree 2 with edges of length at
/// most 2, for point sets whose unit disk graph has minimum degree 2.
pub fn algorithm1(ps: &PointSet) -> Result<GeometricGraph> {
    algorithm1_traced(ps).map(|(g, _)| g)
}

pub fn algorithm1_traced(ps: &PointSet) -> Result<(GeometricGraph, ResolutionStats)> {
    require_min_degree_two(ps)?;
    let forest = nearest_neighbor_forest(ps, 1.0)?;
    let mut stats = ResolutionStats::default();
    let wg = planar_min_degree(ps, &forest, 2.0, &mut stats)?;
    Ok((wg.into_graph(), stats))
}
