//! Planar geometry primitives over indexed point sets.
//!
//! Orientation is evaluated with adaptive-precision arithmetic, so every
//! crossing and containment decision built on it is exact for the given
//! double-precision coordinates. Distances are plain `f64`; comparisons
//! between two distances treat values within [`DIST_TOL`] as tied and
//! break the tie by the lexicographic order of the id pairs.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance under which two distances are considered equal.
pub const DIST_TOL: f64 = 1e-9;

/// Magnitude of the optional deterministic perturbation.
pub const PERTURBATION: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord {
            x: self.x,
            y: self.y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::CounterClockwise => 1,
            Orientation::Collinear => 0,
        }
    }
}

/// Sign of the signed area of triangle `pqr`, exact for all finite inputs.
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    let det = robust::orient2d(p.coord(), q.coord(), r.coord());
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Unsigned angle between the rays `v->a` and `v->b`, in `[0, pi]`.
pub fn angle_at(v: Point, a: Point, b: Point) -> Result<f64> {
    if a == v || b == v {
        return Err(Error::Degenerate(
            "angle undefined for a ray of zero length".into(),
        ));
    }
    let (ax, ay) = (a.x - v.x, a.y - v.y);
    let (bx, by) = (b.x - v.x, b.y - v.y);
    let cross = ax * by - ay * bx;
    let dot = ax * bx + ay * by;
    Ok(cross.abs().atan2(dot))
}

/// Counter-clockwise angle of the direction `from -> to`, in `[0, 2pi)`.
pub fn direction(from: Point, to: Point) -> f64 {
    let a = (to.y - from.y).atan2(to.x - from.x);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Undirected segment between two point ids, normalized so that `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Segment {
    a: usize,
    b: usize,
}

impl Segment {
    /// Panics if `p == q`.
    pub fn new(p: usize, q: usize) -> Self {
        Self::try_new(p, q).expect("segment endpoints must differ")
    }

    pub fn try_new(p: usize, q: usize) -> Result<Self> {
        match p.cmp(&q) {
            Ordering::Less => Ok(Segment { a: p, b: q }),
            Ordering::Greater => Ok(Segment { a: q, b: p }),
            Ordering::Equal => Err(Error::InvalidInput(format!(
                "segment with identical endpoints {p}"
            ))),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn ends(&self) -> [usize; 2] {
        [self.a, self.b]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, other: &Segment) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }

    /// The endpoint that is not `v`; `None` if `v` is not an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl From<Segment> for [usize; 2] {
    fn from(s: Segment) -> Self {
        [s.a, s.b]
    }
}

impl TryFrom<[usize; 2]> for Segment {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        Segment::try_new(v[0], v[1])
    }
}

/// Indexed points; ids are positions `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Rejects non-finite coordinates and repeated points.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            points[i]
                .x
                .total_cmp(&points[j].x)
                .then(points[i].y.total_cmp(&points[j].y))
        });
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::InvalidInput(format!(
                    "points {} and {} coincide",
                    w[0].min(w[1]),
                    w[0].max(w[1])
                )));
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.points[i].dist(&self.points[j])
    }

    pub fn length(&self, s: Segment) -> f64 {
        self.dist(s.a, s.b)
    }

    pub fn orientation(&self, p: usize, q: usize, r: usize) -> Orientation {
        orientation(self.points[p], self.points[q], self.points[r])
    }

    pub fn angle_at(&self, v: usize, a: usize, b: usize) -> f64 {
        angle_at(self.points[v], self.points[a], self.points[b])
            .expect("distinct point ids never coincide")
    }

    /// Coordinates multiplied by `factor` (used to make a radius the unit).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(p.x * factor, p.y * factor))
                .collect(),
        )
    }

    /// Points with the given ids, re-indexed `0..ids.len()` in the given order.
    pub fn subset(&self, ids: &[usize]) -> Self {
        PointSet {
            points: ids.iter().map(|&i| self.points[i]).collect(),
        }
    }

    /// Deterministic micro-perturbation of magnitude [`PERTURBATION`],
    /// derived from a hash of `(seed, index)`.
    pub fn perturbed(&self, seed: u64) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let h1 = splitmix64(seed ^ (2 * i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let h2 = splitmix64(h1 ^ 0xD1B5_4A32_D192_ED03);
                let dx = unit_interval(h1) * 2.0 - 1.0;
                let dy = unit_interval(h2) * 2.0 - 1.0;
                Point::new(p.x + PERTURBATION * dx, p.y + PERTURBATION * dy)
            })
            .collect();
        Self::new(pts)
    }

    /// All id pairs ordered by distance (ties by ids).
    pub fn pairs_by_distance(&self) -> Vec<(f64, Segment)> {
        let n = self.len();
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((self.dist(i, j), Segment { a: i, b: j }));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        pairs
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;

    fn try_from(points: Vec<Point>) -> Result<Self> {
        PointSet::new(points)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(ps: PointSet) -> Self {
        ps.points
    }
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_interval(h: u64) -> f64 {
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Compares the lengths of two segments; lengths within [`DIST_TOL`] are
/// ordered by the segments' id pairs.
pub fn compare_lengths(ps: &PointSet, s: Segment, t: Segment) -> Ordering {
    let (ds, dt) = (ps.length(s), ps.length(t));
    if (ds - dt).abs() <= DIST_TOL {
        s.cmp(&t)
    } else {
        ds.total_cmp(&dt)
    }
}

/// True iff the open segments intersect in exactly one point. Segments that
/// share an endpoint never properly cross.
pub fn properly_cross(s1: Segment, s2: Segment, ps: &PointSet) -> bool {
    if s1.shares_endpoint(&s2) {
        return false;
    }
    let [a, b] = s1.ends().map(|i| ps.point(i));
    let [c, d] = s2.ends().map(|i| ps.point(i));
    segments_cross(a, b, c, d)
}

/// Proper crossing test on raw coordinates.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    if o1 == 0 || o2 == 0 || o1 == o2 {
        return false;
    }
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o3 != 0 && o4 != 0 && o3 != o4
}

/// Strict interior containment in the triangle `abc` (any orientation).
pub fn in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let o1 = orientation(a, b, p).sign();
    let o2 = orientation(b, c, p).sign();
    let o3 = orientation(c, a, p).sign();
    o1 != 0 && o1 == o2 && o2 == o3
}

/// Strict interior containment in a simple polygon, by winding number.
/// Points on the boundary are reported as outside.
pub fn in_polygon(p: Point, polygon: &[Point]) -> bool {
    let n = polygon.len();
    if n < 3 {
        return false;
    }
    let mut winding = 0i32;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        let o = orientation(a, b, p);
        if o == Orientation::Collinear
            && p.x >= a.x.min(b.x)
            && p.x <= a.x.max(b.x)
            && p.y >= a.y.min(b.y)
            && p.y <= a.y.max(b.y)
        {
            return false;
        }
        if a.y <= p.y {
            if b.y > p.y && o == Orientation::CounterClockwise {
                winding += 1;
            }
        } else if b.y <= p.y && o == Orientation::Clockwise {
            winding -= 1;
        }
    }
    winding != 0
}

/// A triple of collinear point ids.
pub type CollinearTriple = [usize; 3];

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GeneralPositionReport {
    pub collinear: Vec<CollinearTriple>,
    /// Pairs of segments whose lengths differ by at most the tolerance.
    pub distance_ties: Vec<(Segment, Segment)>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.collinear.is_empty() && self.distance_ties.is_empty()
    }
}

/// Reports collinear triples (exact) and pairs of pairwise distances that
/// differ by at most `tol`.
pub fn validate_general_position(ps: &PointSet, tol: f64) -> GeneralPositionReport {
    let n = ps.len();
    let mut report = GeneralPositionReport::default();
    // Around each point, sort the others by line direction in [0, pi); only
    // directions that agree up to rounding are tested exactly.
    const WINDOW: f64 = 1e-9;
    let mut triples = std::collections::BTreeSet::new();
    for i in 0..n {
        let pi = ps.point(i);
        let mut dirs: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let q = ps.point(j);
                let mut t = (q.y - pi.y).atan2(q.x - pi.x);
                if t < 0.0 {
                    t += PI;
                }
                if t >= PI {
                    t -= PI;
                }
                (t, j)
            })
            .collect();
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = dirs.len();
        for a in 0..m {
            for b in a + 1..m + a {
                let (tb, jb) = dirs[b % m];
                let gap = if b < m { tb - dirs[a].0 } else { tb + PI - dirs[a].0 };
                if gap > WINDOW {
                    break;
                }
                if ps.orientation(i, dirs[a].1, jb) == Orientation::Collinear {
                    let mut t = [i, dirs[a].1, jb];
                    t.sort_unstable();
                    triples.insert(t);
                }
            }
        }
    }
    report.collinear = triples.into_iter().collect();
    let pairs = ps.pairs_by_distance();
    for (idx, &(d, s)) in pairs.iter().enumerate() {
        for &(e, t) in &pairs[idx + 1..] {
            if e - d > tol {
                break;
            }
            report.distance_ties.push((s, t));
        }
    }
    report
}
