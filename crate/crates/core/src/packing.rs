//! Equal-circle packings of the unit square.
//!
//! Perfect squares use the n×n grid. Other counts up to 16 come from an
//! embedded table of best-known configurations, validated when loaded.
//! External packings are read from a small line-oriented text format:
//!
//! ```text
//! # comment
//! m r
//! x1 y1
//! ...
//! ```

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::path::Path;

use thiserror::Error;

use crate::conic::{Circle, Relation};
use crate::geometry::Point2;

/// Tolerance for the containment and overlap invariants.
pub const PACKING_TOL: f64 = 1e-9;

pub const MAX_CATALOG_COUNT: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PackingError {
    #[error("circle count {0} outside the supported range 1..=16")]
    UnsupportedCount(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("circle {index} at ({x}, {y}) with radius {radius} leaves the unit square")]
    Protrudes { index: usize, x: f64, y: f64, radius: f64 },
    #[error("circles {i} and {j} overlap (distance {distance}, need {required})")]
    Overlap { i: usize, j: usize, distance: f64, required: f64 },
    #[error("radius {0} outside (0, 0.5]")]
    BadRadius(f64),
    #[error("cannot read packing file: {0}")]
    Io(String),
}

impl PackingError {
    /// True for violations of the containment/overlap invariants.
    pub fn is_invalid_packing(&self) -> bool {
        matches!(self, Self::Protrudes { .. } | Self::Overlap { .. } | Self::BadRadius(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingSource {
    Embedded,
    External,
}

/// `m` equal circles of radius `radius` in the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingConfig {
    pub radius: f64,
    pub centers: Vec<Point2>,
    pub source: PackingSource,
}

impl PackingConfig {
    /// Validates and sorts the centers (by y, then x).
    pub fn new(radius: f64, centers: Vec<Point2>, source: PackingSource) -> Result<Self, PackingError> {
        let p = Self::new_unchecked(radius, centers, source);
        p.validate()?;
        Ok(p)
    }

    /// Sorts the centers but skips validation.
    pub fn new_unchecked(radius: f64, mut centers: Vec<Point2>, source: PackingSource) -> Self {
        centers.sort_by(center_order);
        Self { radius, centers, source }
    }

    pub fn m(&self) -> usize {
        self.centers.len()
    }

    pub fn circles(&self) -> Vec<Circle> {
        self.centers.iter().map(|&c| Circle::new(c, self.radius)).collect()
    }

    pub fn validate(&self) -> Result<(), PackingError> {
        let r = self.radius;
        if !(r > 0.0 && r <= 0.5 + PACKING_TOL) {
            return Err(PackingError::BadRadius(r));
        }
        for (index, c) in self.centers.iter().enumerate() {
            let inside = |v: f64| v.is_finite() && v >= r - PACKING_TOL && v <= 1.0 - r + PACKING_TOL;
            if !(inside(c.x) && inside(c.y)) {
                return Err(PackingError::Protrudes { index, x: c.x, y: c.y, radius: r });
            }
        }
        for i in 0..self.centers.len() {
            for j in i + 1..self.centers.len() {
                let distance = self.centers[i].distance(self.centers[j]);
                if distance < 2.0 * r - PACKING_TOL {
                    return Err(PackingError::Overlap { i, j, distance, required: 2.0 * r });
                }
            }
        }
        Ok(())
    }

    /// Relation of every circle pair `(i, j)`, `i < j`.
    pub fn pair_relations(&self) -> Vec<(usize, usize, Relation)> {
        let circles = self.circles();
        let mut out = Vec::new();
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                out.push((i, j, circles[i].relation(&circles[j], PACKING_TOL)));
            }
        }
        out
    }

    pub fn density(&self) -> f64 {
        packing_density(self)
    }
}

/// Lexicographic order on (y, x), with y snapped to the packing tolerance so
/// rows that agree up to rounding stay together.
fn center_order(p: &Point2, q: &Point2) -> Ordering {
    let snap = |v: f64| (v / PACKING_TOL).round() as i64;
    snap(p.y).cmp(&snap(q.y)).then(p.x.total_cmp(&q.x))
}

/// Covered fraction of the unit square, `m·π·r²`.
pub fn packing_density(p: &PackingConfig) -> f64 {
    p.m() as f64 * PI * p.radius * p.radius
}

/// The n×n grid with radius `1/(2n)`.
pub fn grid_packing(n: usize) -> PackingConfig {
    let r = 0.5 / n as f64;
    let centers =
        (0..n).flat_map(|j| (0..n).map(move |i| Point2::new((2 * i + 1) as f64 * r, (2 * j + 1) as f64 * r))).collect();
    PackingConfig::new_unchecked(r, centers, PackingSource::Embedded)
}

/// Best-known packing of `m` circles, `1 ≤ m ≤ 16`.
pub fn get_packing(m: usize) -> Result<PackingConfig, PackingError> {
    if !(1..=MAX_CATALOG_COUNT).contains(&m) {
        return Err(PackingError::UnsupportedCount(m));
    }
    let n = (m as f64).sqrt().round() as usize;
    if n * n == m {
        return Ok(grid_packing(n));
    }
    let (_, radius, centers) =
        CATALOG.iter().find(|(count, _, _)| *count == m).expect("catalog covers every non-square count");
    let centers = centers.iter().map(|&(x, y)| Point2::new(x, y)).collect();
    PackingConfig::new(*radius, centers, PackingSource::Embedded)
}

/// Parses the text packing format.
pub fn parse_packing(text: &str) -> Result<PackingConfig, PackingError> {
    parse_packing_unchecked(text).and_then(|p| {
        p.validate()?;
        Ok(p)
    })
}

/// Parses without checking containment or overlap.
pub fn parse_packing_unchecked(text: &str) -> Result<PackingConfig, PackingError> {
    let mut rows = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });

    let (line, header) = rows.next().ok_or(PackingError::Parse { line: 1, message: "missing `m r` header".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(PackingError::Parse { line, message: format!("expected `m r`, got {header:?}") });
    }
    let m: usize = fields[0]
        .parse()
        .map_err(|_| PackingError::Parse { line, message: format!("bad circle count {:?}", fields[0]) })?;
    let radius = parse_real(fields[1], line)?;

    let mut centers = Vec::with_capacity(m);
    for (line, row) in rows {
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(PackingError::Parse { line, message: format!("expected `x y`, got {row:?}") });
        }
        centers.push(Point2::new(parse_real(fields[0], line)?, parse_real(fields[1], line)?));
    }
    if centers.len() != m {
        return Err(PackingError::Parse {
            line: 1,
            message: format!("header declares {m} circles, found {}", centers.len()),
        });
    }
    Ok(PackingConfig::new_unchecked(radius, centers, PackingSource::External))
}

fn parse_real(s: &str, line: usize) -> Result<f64, PackingError> {
    let bad = || PackingError::Parse { line, message: format!("bad number {s:?}") };
    // Rust's float grammar accepts "inf"/"nan"; only plain decimals are allowed here.
    if !s.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E')) {
        return Err(bad());
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad)
}

pub fn load_packing_file(path: &Path) -> Result<PackingConfig, PackingError> {
    let text = std::fs::read_to_string(path).map_err(|e| PackingError::Io(format!("{}: {e}", path.display())))?;
    parse_packing(&text)
}

pub fn load_packing_file_unchecked(path: &Path) -> Result<PackingConfig, PackingError> {
    let text = std::fs::read_to_string(path).map_err(|e| PackingError::Io(format!("{}: {e}", path.display())))?;
    parse_packing_unchecked(&text)
}

/// Formats a packing in the text format accepted by [`parse_packing`].
pub fn format_packing(p: &PackingConfig) -> String {
    let mut s = format!("{} {:.17}\n", p.m(), p.radius);
    for c in &p.centers {
        s.push_str(&format!("{:.17} {:.17}\n", c.x, c.y));
    }
    s
}

type CatalogEntry = (usize, f64, &'static [(f64, f64)]);

/// Best-known non-grid packings: `(m, radius, centers)`.
#[rustfmt::skip]
#[allow(clippy::approx_constant)]
const CATALOG: &[CatalogEntry] = &[
    (1, 0.5, &[(0.5, 0.5)]),
    (2, 0.292893218813453, &[
        (0.292893218813453, 0.292893218813453),
        (0.707106781186548, 0.707106781186548),
    ]),
    (3, 0.254333095030250, &[
        (0.385985592617646, 0.254333095030250),
        (0.745666904969750, 0.614014407382354),
        (0.254333095030250, 0.745666904969750),
    ]),
    (5, 0.207106781186547, &[
        (0.792893218813453, 0.207106781186547),
        (0.207106781186548, 0.207106781186548),
        (0.500000000000000, 0.500000000000000),
        (0.207106781186547, 0.792893218813453),
        (0.792893218813453, 0.792893218813453),
    ]),
    (6, 0.187680601147477, &[
        (0.500000000000000, 0.187680601147477),
        (0.812319398852523, 0.395893533715826),
        (0.187680601147477, 0.395893533715826),
        (0.500000000000000, 0.604106466284175),
        (0.187680601147477, 0.812319398852523),
        (0.812319398852523, 0.812319398852523),
    ]),
    (7, 0.174457630187009, &[
        (0.476627109438972, 0.174457630187009),
        (0.825542369812991, 0.174457630187010),
        (0.174457630187009, 0.348915260374019),
        (0.476627109438971, 0.523372890561028),
        (0.825542369812990, 0.523372890561029),
        (0.183605015492830, 0.750173315020186),
        (0.651084739625981, 0.825542369812990),
    ]),
    (8, 0.170540688701054, &[
        (0.170540688701054, 0.170540688701054),
        (0.829459311298946, 0.170540688701054),
        (0.500000000000000, 0.258819045102521),
        (0.258819045102521, 0.500000000000000),
        (0.741180954897480, 0.500000000000000),
        (0.500000000000000, 0.741180954897479),
        (0.829459311298946, 0.829459311298946),
        (0.170540688701054, 0.829459311298946),
    ]),
    (10, 0.148204322565229, &[
        (0.413451190585402, 0.148204322565229),
        (0.851795677434771, 0.148204322565229),
        (0.148204322565229, 0.280500142278333),
        (0.632623434010087, 0.347757855784424),
        (0.851795677434771, 0.547311389003619),
        (0.444612967695686, 0.576908787408791),
        (0.148204322565229, 0.576908787408791),
        (0.851795677434771, 0.843720034134077),
        (0.259088417907699, 0.851795677434771),
        (0.555497063038157, 0.851795677434771),
    ]),
    (11, 0.142399237695800, &[
        (0.857600762304200, 0.142399237695800),
        (0.572802286912599, 0.142399237695800),
        (0.153726124898453, 0.146734220427950),
        (0.417493440364299, 0.381123626414710),
        (0.857600762304200, 0.427197713087401),
        (0.142399237695800, 0.454834895862217),
        (0.618876373585290, 0.582506559635701),
        (0.343782170916791, 0.656217829083208),
        (0.857600762304176, 0.737815406211872),
        (0.142399237695800, 0.857600762304200),
        (0.545165104137782, 0.857600762304200),
    ]),
    (12, 0.139958844038428, &[
        (0.139958844038428, 0.139958844038428),
        (0.620013718653857, 0.139958844038428),
        (0.379986281346143, 0.283975306423057),
        (0.860041155961572, 0.283975306423057),
        (0.139958844038428, 0.427991768807685),
        (0.620013718653857, 0.427991768807686),
        (0.379986281346143, 0.572008231192314),
        (0.860041155961572, 0.572008231192314),
        (0.139958844038428, 0.716024693576943),
        (0.620013718653857, 0.716024693576943),
        (0.379986281346143, 0.860041155961572),
        (0.860041155961572, 0.860041155961572),
    ]),
    (13, 0.133993513499000, &[
        (0.409757073499739, 0.133993513499000),
        (0.141770046501712, 0.133993513499002),
        (0.866006486501000, 0.133993513499003),
        (0.637881780000380, 0.274621266532441),
        (0.133993513499000, 0.401867685777137),
        (0.402032220146007, 0.401869181076158),
        (0.866006486501000, 0.415249019565927),
        (0.541940332540274, 0.630605761082093),
        (0.268011572188471, 0.633937086139072),
        (0.866006486500999, 0.683236046563951),
        (0.133993513499000, 0.866006486501000),
        (0.402029630877964, 0.866006486501000),
        (0.670016657875983, 0.866006486501000),
    ]),
    (14, 0.129331793710034, &[
        (0.482672825159864, 0.129331793710034),
        (0.741336412579933, 0.129331793710034),
        (0.132216703376296, 0.171519626767437),
        (0.612004618869898, 0.353341031449830),
        (0.870668206289966, 0.353341031449830),
        (0.353341031449830, 0.353341031449830),
        (0.129331793710034, 0.482672825159864),
        (0.353341031449830, 0.612004618869898),
        (0.612004618869898, 0.612004618869898),
        (0.870668206289966, 0.612004618869898),
        (0.129331793710034, 0.741336412579932),
        (0.353341031449830, 0.870668206289966),
        (0.612004618869898, 0.870668206289966),
        (0.870668206289966, 0.870668206289966),
    ]),
    (15, 0.127166547515125, &[
        (0.127166547515125, 0.127166547515125),
        (0.618500357454625, 0.127166547515125),
        (0.872833452484875, 0.127166547515125),
        (0.372833452484875, 0.192992796308823),
        (0.807007203691177, 0.372833452484875),
        (0.192992796308823, 0.372833452484875),
        (0.552674108660928, 0.372833452484875),
        (0.372833452484875, 0.552674108660927),
        (0.872833452484875, 0.618500357454625),
        (0.127166547515125, 0.618500357454625),
        (0.618500357454625, 0.618500357454626),
        (0.372833452484875, 0.807007203691177),
        (0.127166547515125, 0.872833452484875),
        (0.618500357454626, 0.872833452484875),
        (0.872833452484875, 0.872833452484875),
    ]),
];
