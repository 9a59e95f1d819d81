//! Point CSV, graph JSON and SVG rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, Segment};
use crate::udg::{audit, EdgeKind, GeometricGraph, VerificationReport};

/// Parses one `x,y` pair per line. Blank lines and text after `#` are
/// ignored. Coordinates are divided by `radius` so that `radius` becomes the
/// unit.
pub fn parse_points(text: &str, radius: f64) -> Result<PointSet> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [x, y] = fields[..] else {
            return Err(parse_err(format!("expected `x,y`, found {} fields", fields.len())));
        };
        let coord = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(format!("`{s}` is not a finite number")))
        };
        points.push(Point::new(coord(x)? / radius, coord(y)? / radius));
    }
    PointSet::new(points)
}

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in ps.points() {
        writeln!(out, "{},{}", p.x, p.y).expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
    /// Leaf end of a directed second-nearest-neighbor edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<usize>,
}

/// Serialized form of a graph together with its audit.
///
/// Coordinates are in units of `radius`; multiply by it to recover the input
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub radius: f64,
    pub points: Vec<[f64; 2]>,
    pub edges: Vec<EdgeRecord>,
    pub report: VerificationReport,
}

impl GraphDocument {
    pub fn new(g: &GeometricGraph, radius: f64) -> Self {
        GraphDocument {
            radius,
            points: g.points().points().iter().map(|p| [p.x, p.y]).collect(),
            edges: g
                .edges()
                .map(|(s, info)| EdgeRecord {
                    a: s.a(),
                    b: s.b(),
                    kind: info.kind,
                    tail: info.direction.map(|(t, _)| t),
                })
                .collect(),
            report: audit(g),
        }
    }

    pub fn to_graph(&self) -> Result<GeometricGraph> {
        let ps = PointSet::new(self.points.iter().map(|&[x, y]| Point::new(x, y)).collect())?;
        let mut g = GeometricGraph::new(ps);
        for e in &self.edges {
            match e.tail {
                Some(t) => {
                    let head = Segment::try_new(e.a, e.b)?
                        .other(t)
                        .ok_or_else(|| Error::InvalidInput(format!("tail {t} is not an end of edge {}-{}", e.a, e.b)))?;
                    g.insert_directed(t, head, e.kind)?
                }
                None => g.insert(Segment::try_new(e.a, e.b)?, e.kind)?,
            }
        }
        Ok(g)
    }

    /// Pretty JSON. Floats use the shortest representation that reads back
    /// to the same value, so a round trip is exact.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn edge_color(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Tree => "black",
        EdgeKind::Snn => "blue",
        EdgeKind::Augment => "red",
        EdgeKind::Udg => "gray",
    }
}

/// SVG drawing 800 px wide with a 5% margin; `y` grows upward.
pub fn render_svg(g: &GeometricGraph) -> String {
    const WIDTH: f64 = 800.0;
    let pts = g.points().points();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    if pts.is_empty() {
        (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let pad = 0.05 * span;
    let scale = WIDTH / (span + 2.0 * pad);
    let map = |p: &Point| ((p.x - lo_x + pad) * scale, (hi_y - p.y + pad) * scale);
    let (w, h) = ((hi_x - lo_x + 2.0 * pad) * scale, (hi_y - lo_y + 2.0 * pad) * scale);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.2} {h:.2}" width="{w:.0}" height="{h:.0}">"#
    )
    .unwrap();
    for (s, info) in g.edges() {
        let (x1, y1) = map(&pts[s.a()]);
        let (x2, y2) = map(&pts[s.b()]);
        writeln!(
            out,
            r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{}" stroke-width="1"/>"#,
            edge_color(info.kind)
        )
        .unwrap();
    }
    for p in pts {
        let (x, y) = map(p);
        writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="2" fill="black"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
