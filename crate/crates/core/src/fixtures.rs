//! Instance generators: lower-bound gadgets and random point sets that
//! satisfy a connectivity requirement at unit radius.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{splitmix64, validate_general_position, Point, PointSet, DIST_TOL};
use crate::udg::{udg_adjacency, Property};

/// Requirement on `U(P, 1)` imposed by a random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Precondition {
    MinDeg2,
    ConnectedMinDeg2,
    TwoVertexConnected,
    TwoEdgeConnected,
}

impl Precondition {
    pub fn holds(self, ps: &PointSet) -> bool {
        let adj = udg_adjacency(ps, 1.0);
        match self {
            Precondition::MinDeg2 => Property::MinDegree2.holds(&adj),
            Precondition::ConnectedMinDeg2 => {
                Property::MinDegree2.holds(&adj) && Property::Connected.holds(&adj)
            }
            Precondition::TwoVertexConnected => Property::TwoVertexConnected.holds(&adj),
            Precondition::TwoEdgeConnected => Property::TwoEdgeConnected.holds(&adj),
        }
    }

    /// Side of the sampling square divided by `sqrt(n)` at the first attempt;
    /// fitted so that roughly half of the samples are accepted.
    fn initial_spread(self, n: usize) -> f64 {
        let (a, b) = match self {
            Precondition::MinDeg2 => (0.735, 0.037),
            Precondition::ConnectedMinDeg2 => (0.725, 0.037),
            Precondition::TwoVertexConnected => (0.66, 0.027),
            Precondition::TwoEdgeConnected => (0.69, 0.03),
        };
        a - b * (n as f64).ln()
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

/// Rejections allowed before giving up.
pub const MAX_REJECTIONS: usize = 10_000;

/// Uniform points in a square of side `c * sqrt(n)`, resampled until `U(P, 1)`
/// meets `pre` and the points are in general position. `c` shrinks by 2%
/// after every five consecutive rejections.
pub fn gen_random(n: usize, seed: u64, pre: Precondition) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 points, got {n}")));
    }
    let mixed = splitmix64(seed ^ splitmix64((n as u64) << 8 | pre.tag()));
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    let mut spread = pre.initial_spread(n);
    for attempt in 0..MAX_REJECTIONS {
        if attempt > 0 && attempt % 5 == 0 {
            spread *= 0.98;
        }
        let side = spread * (n as f64).sqrt();
        let points: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen::<f64>() * side, rng.gen::<f64>() * side))
            .collect();
        let Ok(ps) = PointSet::new(points) else {
            continue;
        };
        if pre.holds(&ps) && validate_general_position(&ps, DIST_TOL).is_ok() {
            return Ok(ps);
        }
    }
    Err(Error::SamplingExhausted(MAX_REJECTIONS))
}

/// Slack used by the gadget generators unless told otherwise.
pub const DEFAULT_SLACK: f64 = 0.1;

fn check_slack(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("slack must lie in (0, 1), got {eps}")))
    }
}

/// Four points `u, v, x, y` with `u` and `v` at distance `2 - 2 eps / 5` and
/// `x, y` close together near the middle. `u` and `v` see only `x` and `y`
/// below that distance, and `ux` properly crosses `vy`.
fn crossed_pair(eps: f64) -> [Point; 4] {
    let half = 1.0 - eps / 5.0;
    let h = eps / 5.0;
    [
        Point::new(-half, 0.0),
        Point::new(half, 0.0),
        Point::new(eps / 10.0, h),
        Point::new(-eps / 10.0, h * (1.0 + eps / 20.0)),
    ]
}

fn place(p: Point, scale: f64, angle: f64, offset: Point) -> Point {
    let (sin, cos) = angle.sin_cos();
    let (x, y) = (p.x * scale, p.y * scale);
    Point::new(offset.x + x * cos - y * sin, offset.y + x * sin + y * cos)
}

/// Fails unless no crossing-free spanning subgraph of `U(part, r)` has `prop`.
fn certify_absent(part: &PointSet, r: f64, prop: Property) -> Result<()> {
    match crate::oracle::exists_planar_subgraph(part, r, prop)? {
        None => Ok(()),
        Some(_) => Err(Error::Unattainable(format!(
            "certification failed: a crossing-free {} spanning subgraph exists at radius {r}",
            prop.name()
        ))),
    }
}

fn certify_unit(ps: &PointSet, pre: Precondition) -> Result<()> {
    if pre.holds(ps) {
        Ok(())
    } else {
        Err(Error::Unattainable(format!("unit disk graph does not satisfy {pre:?}")))
    }
}

/// `k` far-apart copies of a 4-point set whose unit disk graph has minimum
/// degree 2 but where no crossing-free spanning subgraph of minimum degree 2
/// uses only edges shorter than `2 - eps`.
pub fn gen_mindeg2_gadget(k: usize, eps: f64) -> Result<PointSet> {
    if k == 0 {
        return Err(Error::InvalidInput("need at least one component".into()));
    }
    check_slack(eps)?;
    let core = crossed_pair(eps);
    let mut points = Vec::with_capacity(4 * k);
    for i in 0..k {
        // Copies differ slightly in size and orientation so that no distance
        // repeats across copies.
        let scale = 1.0 - eps * i as f64 / (16.0 * k as f64);
        let offset = Point::new(4.5 * i as f64, 0.0);
        points.extend(core.iter().map(|&p| place(p, scale, 0.7 * i as f64, offset)));
    }
    let ps = PointSet::new(points)?;
    certify_unit(&ps, Precondition::MinDeg2)?;
    for i in 0..k {
        let ids: Vec<usize> = (4 * i..4 * i + 4).collect();
        certify_absent(&ps.subset(&ids), 2.0 - eps, Property::MinDegree2)?;
    }
    Ok(ps)
}

/// `1 + 3k` points: `k` copies of the crossed 4-point component chained
/// along a convex path, consecutive copies sharing an end point. The unit
/// disk graph is 2-edge connected; every crossing-free 2-edge connected
/// spanning subgraph needs an edge longer than `2 - eps`.
pub fn gen_2ec_gadget(k: usize, eps: f64) -> Result<PointSet> {
    if k == 0 {
        return Err(Error::InvalidInput("need at least one component".into()));
    }
    check_slack(eps)?;
    let core = crossed_pair(eps);
    let turn = (eps / 2.0).min(std::f64::consts::PI / (k + 1) as f64);
    let mut anchor = core[0];
    let mut points = vec![anchor];
    for j in 0..k {
        let scale = 1.0 - eps * j as f64 / (16.0 * k as f64);
        let angle = turn * j as f64;
        let half = core[1].x * scale;
        let mid = Point::new(anchor.x + half * angle.cos(), anchor.y + half * angle.sin());
        // Far end last: it anchors the next copy.
        points.extend([core[2], core[3], core[1]].iter().map(|&p| place(p, scale, angle, mid)));
        anchor = points[points.len() - 1];
    }
    let ps = PointSet::new(points)?;
    certify_unit(&ps, Precondition::TwoEdgeConnected)?;
    if ps.len() <= crate::oracle::MAX_POINTS {
        certify_absent(&ps, 2.0 - eps, Property::TwoEdgeConnected)?;
    } else {
        certify_absent(&ps.subset(&[0, 3, 1, 2]), 2.0 - eps, Property::TwoEdgeConnected)?;
    }
    Ok(ps)
}

/// Eight points with a connected unit disk graph of minimum degree 2: two
/// triangles joined by a zig-zag path through two degree-2 vertices. The two
/// chords skipping one path vertex cross each other, and every other way of
/// putting the path on a cycle needs a long edge. The last point is the
/// entry point used to attach further points.
const SQRT5_CORE: [(f64, f64); 8] = [
    (-1.7023542602153288, -0.5989033646259279),
    (0.013712096208494364, 0.533651562890546),
    (-1.8803188195724316, -0.09752693665035754),
    (1.1263269589002363, 0.30103961671255786),
    (-0.9301735560754558, 0.20397618496046155),
    (0.9719298608987028, 0.8191004455070972),
    (0.8393290911067172, 1.2516341804296933),
    (-2.0343325675075437, 0.3371575519548376),
];

/// `n >= 8` points whose unit disk graph is connected with minimum degree 2
/// and where no crossing-free 2-edge connected spanning subgraph uses only
/// edges shorter than `sqrt(5) - eps`. Points beyond the first eight form a
/// zig-zag strip leaving the entry point away from the rest.
///
/// The core's crossing-free 2-edge connected optimum is about 2.056, so
/// certification succeeds only for `eps` above roughly 0.18 and returns
/// [`Error::Unattainable`] for smaller slack.
pub fn gen_sqrt5_gadget(n: usize, eps: f64) -> Result<PointSet> {
    if n < 8 {
        return Err(Error::InvalidInput(format!("need at least 8 points, got {n}")));
    }
    check_slack(eps)?;
    let mut points: Vec<Point> = SQRT5_CORE.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let entry = points[7];
    let centroid = points[..7]
        .iter()
        .fold(Point::new(0.0, 0.0), |acc, p| Point::new(acc.x + p.x / 7.0, acc.y + p.y / 7.0));
    let heading = (entry.y - centroid.y).atan2(entry.x - centroid.x);
    let (sin, cos) = heading.sin_cos();
    for j in 0..n - 8 {
        let along = 0.45 * (j + 1) as f64;
        let side = if j % 2 == 0 { 0.1 } else { -0.1 } * (1.0 + 0.01 * j as f64);
        points.push(Point::new(
            entry.x + along * cos - side * sin,
            entry.y + along * sin + side * cos,
        ));
    }
    let ps = PointSet::new(points)?;
    certify_unit(&ps, Precondition::ConnectedMinDeg2)?;
    let target = 5f64.sqrt() - eps;
    if ps.len() <= crate::oracle::MAX_POINTS {
        certify_absent(&ps, target, Property::TwoEdgeConnected)?;
    } else {
        certify_absent(&ps.subset(&(0..8).collect::<Vec<_>>()), target, Property::TwoEdgeConnected)?;
    }
    Ok(ps)
}

/// Radius below which the high-connectivity gadget has no crossing-free
/// 2-edge connected spanning subgraph.
pub const HIGHCON_RADIUS: f64 = 17.0 / 16.0;

/// Six points whose unit disk graph is 2-vertex connected while `U(P, 17/16)`
/// has no crossing-free 2-edge connected spanning subgraph.
///
/// The crossed 4-point component is extended by one point above and one
/// below its middle pair. Both far ends still see only the middle pair within
/// `17/16`, so the four edges at the ends are forced and two of them cross.
///
/// Only `k = 2` is built: larger even `k` would need `k`-connected wiring
/// between copies, which this generator does not construct.
pub fn gen_highcon_gadget(k: usize, eps: f64) -> Result<PointSet> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidInput(format!("k must be even and at least 2, got {k}")));
    }
    if k > 2 {
        return Err(Error::Unattainable(format!(
            "only k = 2 is supported, got {k}"
        )));
    }
    check_slack(eps)?;
    let mut points = crossed_pair(eps).to_vec();
    points.push(Point::new(0.03, 0.9));
    points.push(Point::new(-0.02, -0.85));
    let ps = PointSet::new(points)?;
    certify_unit(&ps, Precondition::TwoVertexConnected)?;
    certify_absent(&ps, HIGHCON_RADIUS, Property::TwoEdgeConnected)?;
    Ok(ps)
}
