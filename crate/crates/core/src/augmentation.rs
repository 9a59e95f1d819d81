//! Bridge augmentation: 2-edge connected planar spanning subgraphs with
//! edges of length at most `sqrt(5)` or 2.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::crossing::{min_angle_point, planar_min_degree, points_inside, require_min_degree_two, ResolutionStats, Resolver};
use crate::error::{Error, Result};
use crate::geometry::{compare_lengths, direction, properly_cross, Orientation, PointSet, Segment, DIST_TOL};
use crate::lowlink;
use crate::spanning::{euclidean_mst, second_nearest, Color, ColoredForest};
use crate::udg::{
    biconnected_components, build_udg, min_radius_for, udg_adjacency, udg_segments, EdgeKind,
    GeometricGraph, Property,
};
use crate::work::{Class, WorkGraph};

/// Angle above which a degree-2 vertex on no cycle is considered arduous.
pub const ARDUOUS_ANGLE: f64 = 5.0 * PI / 6.0;

/// Degree-2 vertex on no cycle whose two edges form an angle above
/// [`ARDUOUS_ANGLE`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArduousVertex {
    pub id: usize,
    pub neighbors: [usize; 2],
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationStats {
    pub resolution: ResolutionStats,
    pub arduous_removed: usize,
    /// Bridges covered by the angular-neighbor rules.
    pub bridges_by_rule: usize,
    /// Bridges covered by the shortest crossing-free edge across them.
    pub bridges_by_fallback: usize,
    /// Crossings between edges built for different blocks.
    pub block_crossings: usize,
}

impl AugmentationStats {
    fn absorb(&mut self, other: &AugmentationStats) {
        self.resolution.ties += other.resolution.ties;
        self.resolution.bows += other.resolution.bows;
        self.resolution.links_dropped += other.resolution.links_dropped;
        self.resolution.fallbacks += other.resolution.fallbacks;
        self.arduous_removed += other.arduous_removed;
        self.bridges_by_rule += other.bridges_by_rule;
        self.bridges_by_fallback += other.bridges_by_fallback;
        self.block_crossings += other.block_crossings;
    }
}

fn arduous_in(ps: &PointSet, adj: &[Vec<usize>], colors: &[Color], color: Color) -> Vec<ArduousVertex> {
    let bridges: BTreeSet<Segment> = lowlink::analyze(adj).bridges.into_iter().collect();
    (0..adj.len())
        .filter(|&v| colors[v] == color && adj[v].len() == 2)
        .filter_map(|v| {
            let [a, b] = [adj[v][0], adj[v][1]];
            if !bridges.contains(&Segment::new(v, a)) {
                return None;
            }
            let angle = ps.angle_at(v, a, b);
            (angle > ARDUOUS_ANGLE).then_some(ArduousVertex {
                id: v,
                neighbors: [a, b],
                angle,
            })
        })
        .collect()
}

/// Arduous vertices of `g` that carry `color` in `coloring`.
pub fn find_arduous(g: &GeometricGraph, coloring: &ColoredForest, color: Color) -> Result<Vec<ArduousVertex>> {
    if coloring.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(arduous_in(g.points(), &g.adjacency(), coloring.colors(), color))
}

#[derive(Debug, Clone, Copy)]
enum Rules {
    /// Cover rules for the `sqrt(5)` construction.
    Wide,
    /// Cover rules for the radius-2 construction.
    Narrow,
}

struct BridgeCover<'c> {
    limit: f64,
    /// Per-vertex colors and the class whose vertices anchor each fix.
    coloring: Option<(&'c [Color], Color)>,
    rules: Option<Rules>,
}

impl BridgeCover<'_> {
    fn run(&self, wg: &mut WorkGraph<'_>, stats: &mut AugmentationStats) -> Result<()> {
        loop {
            let bridges = wg.bridges();
            if bridges.is_empty() {
                return Ok(());
            }
            if let (Some(rules), Some((colors, class))) = (self.rules, self.coloring) {
                let mut anchored: Vec<(usize, usize)> = bridges
                    .iter()
                    .map(|b| {
                        if colors[b.b()] == class && colors[b.a()] != class {
                            (b.b(), b.a())
                        } else {
                            (b.a(), b.b())
                        }
                    })
                    .collect();
                anchored.sort_unstable();
                let fixed = anchored.iter().find_map(|&(hub, far)| {
                    self.plans(wg, rules, colors, class, hub, far)
                        .into_iter()
                        .find_map(|adds| self.attempt(wg, Segment::new(hub, far), &adds))
                });
                if let Some(next) = fixed {
                    *wg = next;
                    stats.bridges_by_rule += 1;
                    continue;
                }
            }
            if let Some(next) = bridges.iter().find_map(|&b| self.across(wg, b)) {
                *wg = next;
                stats.bridges_by_fallback += 1;
                continue;
            }
            return Err(Error::construction("bridge could not be covered", bridges));
        }
    }

    /// Edge sets that may put the bridge `{hub, far}` on a cycle.
    fn plans(
        &self,
        wg: &WorkGraph<'_>,
        rules: Rules,
        colors: &[Color],
        class: Color,
        hub: usize,
        far: usize,
    ) -> Vec<Vec<(usize, usize)>> {
        let ps = wg.points();
        let mut plans = Vec::new();
        for w in immediate_neighbors(wg, hub, far, rules) {
            let edge_class = wg.class(Segment::new(hub, w)).expect("w is adjacent to hub");
            let triangle = points_inside(ps, &[far, hub, w]);
            let fan = |plans: &mut Vec<Vec<(usize, usize)>>| {
                if !triangle.is_empty() {
                    let p = min_angle_point(ps, far, hub, &triangle);
                    let q = min_angle_point(ps, w, hub, &triangle);
                    plans.push(vec![(far, p), (q, w)]);
                    let p = min_angle_point(ps, w, hub, &triangle);
                    let q = min_angle_point(ps, far, hub, &triangle);
                    plans.push(vec![(w, p), (q, far)]);
                }
            };
            match (rules, edge_class) {
                (_, Class::Tree) => {
                    plans.push(vec![(far, w)]);
                    fan(&mut plans);
                }
                (Rules::Narrow, Class::Link) if colors[w] == class => {
                    if let Some(turn) = convex_turn(wg, far, hub, w) {
                        if wg.class(Segment::new(w, turn)) == Some(Class::Tree) {
                            let quad = points_inside(ps, &[far, hub, w, turn]);
                            if quad.is_empty() {
                                plans.push(vec![(far, turn)]);
                            } else {
                                let p = min_angle_point(ps, turn, w, &quad);
                                let q = min_angle_point(ps, far, hub, &quad);
                                plans.push(vec![(turn, p), (q, far)]);
                            }
                        }
                    }
                    plans.push(vec![(far, w)]);
                    fan(&mut plans);
                }
                _ => {
                    if triangle.is_empty() {
                        plans.push(vec![(far, w)]);
                    } else {
                        fan(&mut plans);
                        plans.push(vec![(far, w)]);
                    }
                }
            }
        }
        plans
    }

    /// Shortest crossing-free edge of admissible length joining the two sides
    /// of the bridge.
    fn across<'a>(&self, wg: &WorkGraph<'a>, bridge: Segment) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        let mut adj = wg.adjacency();
        adj[bridge.a()].retain(|&x| x != bridge.b());
        adj[bridge.b()].retain(|&x| x != bridge.a());
        let (label, _) = lowlink::components(&adj);
        let (la, lb) = (label[bridge.a()], label[bridge.b()]);
        let side_a: Vec<usize> = (0..ps.len()).filter(|&x| label[x] == la).collect();
        let side_b: Vec<usize> = (0..ps.len()).filter(|&y| label[y] == lb).collect();
        let mut candidates: Vec<Segment> = side_a
            .iter()
            .flat_map(|&x| side_b.iter().map(move |&y| Segment::new(x, y)))
            .filter(|&s| s != bridge && ps.length(s) <= self.limit + DIST_TOL)
            .collect();
        candidates.sort_by(|&s, &t| compare_lengths(ps, s, t));
        candidates
            .into_iter()
            .find(|&s| !wg.would_cross(s))
            .and_then(|s| self.attempt(wg, bridge, &[(s.a(), s.b())]))
    }

    fn attempt<'a>(&self, wg: &WorkGraph<'a>, bridge: Segment, adds: &[(usize, usize)]) -> Option<WorkGraph<'a>> {
        let ps = wg.points();
        let mut next = wg.clone();
        let mut added = Vec::new();
        for &(a, b) in adds {
            let s = Segment::try_new(a, b).ok()?;
            if next.add(s, Class::Fix) {
                added.push(s);
            }
        }
        let ok = !added.is_empty()
            && added
                .iter()
                .all(|&s| ps.length(s) <= self.limit + DIST_TOL && next.crossings_of(s).next().is_none())
            && !next.bridges().contains(&bridge);
        ok.then_some(next)
    }
}

/// Neighbors of `hub` angularly adjacent to `far` on either side within an
/// angle below pi, ordered by edge class preference and then angle.
fn immediate_neighbors(wg: &WorkGraph<'_>, hub: usize, far: usize, rules: Rules) -> Vec<usize> {
    let ps = wg.points();
    let base = direction(ps.point(hub), ps.point(far));
    let turn = |w: usize| (direction(ps.point(hub), ps.point(w)) - base).rem_euclid(2.0 * PI);
    let others: Vec<usize> = wg.neighbors(hub).filter(|&w| w != far).collect();
    let ccw = others.iter().copied().min_by(|&a, &b| turn(a).total_cmp(&turn(b)));
    let cw = others.iter().copied().max_by(|&a, &b| turn(a).total_cmp(&turn(b)));
    let mut found: Vec<(u8, usize, f64)> = Vec::new();
    if let Some(w) = ccw {
        let angle = turn(w);
        if angle < PI {
            found.push((rank(wg.class(Segment::new(hub, w)), rules), w, angle));
        }
    }
    if let Some(w) = cw {
        let angle = 2.0 * PI - turn(w);
        if angle < PI && Some(w) != ccw {
            found.push((rank(wg.class(Segment::new(hub, w)), rules), w, angle));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then(a.2.total_cmp(&b.2)));
    found.into_iter().map(|(_, w, _)| w).collect()
}

fn rank(class: Option<Class>, rules: Rules) -> u8 {
    match (class, rules) {
        (Some(Class::Tree), _) => 0,
        (Some(Class::Link), Rules::Narrow) => 1,
        (_, Rules::Narrow) => 2,
        (_, Rules::Wide) => 1,
    }
}

/// Neighbor `x` of `w` for which `x, w, hub, far` turn consistently, taking
/// the one with the smallest angle at `w`.
fn convex_turn(wg: &WorkGraph<'_>, far: usize, hub: usize, w: usize) -> Option<usize> {
    let ps = wg.points();
    let wanted = ps.orientation(w, hub, far);
    if wanted == Orientation::Collinear {
        return None;
    }
    wg.neighbors(w)
        .filter(|&x| x != hub && x != far && ps.orientation(x, w, hub) == wanted)
        .min_by(|&a, &b| ps.angle_at(w, a, hub).total_cmp(&ps.angle_at(w, b, hub)).then(a.cmp(&b)))
}

/// Color class with more vertices incident to a bridge; ties go to black.
fn busier_class(colors: &[Color], bridges: &[Segment]) -> Color {
    let incident: BTreeSet<usize> = bridges.iter().flat_map(|s| s.ends()).collect();
    let count = |c: Color| incident.iter().filter(|&&v| colors[v] == c).count();
    if count(Color::Red) > count(Color::Black) {
        Color::Red
    } else {
        Color::Black
    }
}

fn require(ps: &PointSet, prop: Property) -> Result<()> {
    if ps.len() >= 3 && prop.holds(&udg_adjacency(ps, 1.0)) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("unit disk graph is not {}", prop.name())))
    }
}

/// 2-edge connected planar spanning subgraph with edges of length at most
/// `sqrt(5)`, for point sets whose unit disk graph is connected with
/// minimum degree 2.
pub fn algorithm2(ps: &PointSet) -> Result<GeometricGraph> {
    algorithm2_traced(ps).map(|(g, _)| g)
}

pub fn algorithm2_traced(ps: &PointSet) -> Result<(GeometricGraph, AugmentationStats)> {
    require_min_degree_two(ps)?;
    require(ps, Property::Connected)?;
    let mst = euclidean_mst(ps, 1.0)?;
    let mut stats = AugmentationStats::default();
    let mut wg = planar_min_degree(ps, &mst, 2.0, &mut stats.resolution)?;
    let class = busier_class(mst.colors(), &wg.bridges());
    BridgeCover {
        limit: 5f64.sqrt(),
        coloring: Some((mst.colors(), class)),
        rules: Some(Rules::Wide),
    }
    .run(&mut wg, &mut stats)?;
    Ok((wg.into_graph(), stats))
}

/// 2-edge connected planar spanning subgraph with edges of length at most 2,
/// for point sets whose unit disk graph is 2-vertex connected.
pub fn algorithm3(ps: &PointSet) -> Result<GeometricGraph> {
    algorithm3_traced(ps).map(|(g, _)| g)
}

pub fn algorithm3_traced(ps: &PointSet) -> Result<(GeometricGraph, AugmentationStats)> {
    require(ps, Property::TwoVertexConnected)?;
    let mst = euclidean_mst(ps, 1.0)?;
    let colors = mst.colors();
    let mut stats = AugmentationStats::default();
    let mut wg = WorkGraph::new(ps);
    for &s in mst.edges() {
        wg.add(s, Class::Tree);
    }
    let adj = wg.adjacency();
    let black = arduous_in(ps, &adj, colors, Color::Black).len();
    let red = arduous_in(ps, &adj, colors, Color::Red).len();
    let class = if red > black { Color::Red } else { Color::Black };

    remove_arduous(&mut wg, colors, class, &mut stats)?;

    let leaves: Vec<usize> = (0..ps.len()).filter(|&v| wg.degree(v) == 1).collect();
    for v in leaves {
        let first = wg.neighbors(v).next().expect("leaf has a neighbor");
        let e = second_nearest(ps, v, first, 1.0).ok_or_else(|| {
            Error::Precondition(format!("vertex {v} has fewer than two neighbors within the unit radius"))
        })?;
        wg.add(e.segment(), Class::Snn { tail: v });
    }
    Resolver {
        limit: 2.0,
        min_degree: 2,
        drop_links: true,
    }
    .planarize(&mut wg, &mut stats.resolution)?;
    BridgeCover {
        limit: 2.0,
        coloring: Some((colors, class)),
        rules: Some(Rules::Narrow),
    }
    .run(&mut wg, &mut stats)?;
    Ok((wg.into_graph(), stats))
}

/// Reconnects the two sides of each arduous vertex of `class` with the
/// shortest unit-radius edge between them.
fn remove_arduous(
    wg: &mut WorkGraph<'_>,
    colors: &[Color],
    class: Color,
    stats: &mut AugmentationStats,
) -> Result<()> {
    let ps = wg.points();
    let udg = udg_segments(ps, 1.0);
    let mut previous = usize::MAX;
    loop {
        let adj = wg.adjacency();
        let arduous = arduous_in(ps, &adj, colors, class);
        let Some(first) = arduous.first() else {
            return Ok(());
        };
        let v = first.id;
        let witness = vec![Segment::new(v, first.neighbors[0]), Segment::new(v, first.neighbors[1])];
        if arduous.len() >= previous {
            return Err(Error::construction("arduous vertex count did not decrease", witness));
        }
        previous = arduous.len();
        let (label, _) = lowlink::components_avoiding(&adj, Some(v));
        let link = udg
            .iter()
            .copied()
            .filter(|s| !s.contains(v) && label[s.a()] != label[s.b()] && !wg.contains(*s))
            .min_by(|&s, &t| compare_lengths(ps, s, t))
            .ok_or_else(|| Error::construction("no unit-radius edge rejoins the two sides", witness))?;
        let hits: Vec<(Segment, Class)> = wg
            .edges()
            .filter(|&(t, _)| properly_cross(link, t, ps))
            .collect();
        if let Some(&(t, _)) = hits.iter().find(|(_, c)| *c == Class::Tree) {
            return Err(Error::construction("reconnecting edge crosses a tree edge", vec![link, t]));
        }
        for (t, _) in hits {
            wg.remove(t);
        }
        wg.add(link, Class::Link);
        stats.arduous_removed += 1;
    }
}

/// Runs [`algorithm3`] on every block of the unit disk graph and joins the
/// results, for point sets whose unit disk graph is 2-edge connected.
pub fn compose_blocks(ps: &PointSet) -> Result<GeometricGraph> {
    compose_blocks_traced(ps).map(|(g, _)| g)
}

pub fn compose_blocks_traced(ps: &PointSet) -> Result<(GeometricGraph, AugmentationStats)> {
    require(ps, Property::TwoEdgeConnected)?;
    let blocks = biconnected_components(&build_udg(ps, 1.0)?)?.blocks;
    let mut stats = AugmentationStats::default();
    let mut wg = WorkGraph::new(ps);
    for ids in blocks {
        let (part, part_stats) = algorithm3_traced(&ps.subset(&ids))?;
        stats.absorb(&part_stats);
        for (s, info) in part.edges() {
            let seg = Segment::new(ids[s.a()], ids[s.b()]);
            let class = match (info.kind, info.direction) {
                (EdgeKind::Tree, _) => Class::Tree,
                (EdgeKind::Snn, Some((tail, _))) => Class::Snn { tail: ids[tail] },
                _ => Class::Fix,
            };
            wg.add(seg, class);
        }
    }
    if wg.crossing_count() > 0 {
        stats.block_crossings += wg.crossing_count();
        Resolver {
            limit: 2.0,
            min_degree: 2,
            drop_links: false,
        }
        .planarize(&mut wg, &mut stats.resolution)?;
        BridgeCover {
            limit: 2.0,
            coloring: None,
            rules: None,
        }
        .run(&mut wg, &mut stats)?;
    }
    Ok((wg.into_graph(), stats))
}

/// Runs [`compose_blocks`] with the points rescaled so that the smallest
/// radius giving a 2-edge connected unit disk graph becomes the unit.
/// Returns the graph over the original points and that radius.
pub fn compose_blocks_normalized(ps: &PointSet) -> Result<(GeometricGraph, f64)> {
    let r = min_radius_for(ps, Property::TwoEdgeConnected)?;
    // Shrinking by a relative 1e-12 keeps the critical pair within the unit
    // radius despite rounding.
    let scaled = ps.scaled((1.0 - 1e-12) / r)?;
    let g = compose_blocks(&scaled)?;
    let mut out = GeometricGraph::new(ps.clone());
    for (s, info) in g.edges() {
        out.insert_info(s, info)?;
    }
    Ok((out, r))
}

/// Longest edge of `g` divided by the smallest radius at which the unit disk
/// graph of `ps` is 2-edge connected.
pub fn approximation_ratio(ps: &PointSet, g: &GeometricGraph) -> Result<f64> {
    Ok(g.max_edge_length() / min_radius_for(ps, Property::TwoEdgeConnected)?)
}
