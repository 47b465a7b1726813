//! Static SVG 1.1 figures of a plan.
//!
//! Geometry is written in world meters inside a group whose transform flips
//! the y axis, so every `<ellipse>` carries the plan's own center, semi-axes
//! and orientation. Labels are placed in view coordinates to stay upright.

use std::fmt::Write as _;

use quadcover::{Plan, Point2, Quadrilateral};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Region outline, numbered footprints and UAV ground projections.
    Footprints,
    /// Unit-square circle packing beside its image in the region.
    PackingPair,
    /// Isometric view of UAV positions with tilt arrows.
    Pose3d,
}

impl RenderMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "footprints" => Some(Self::Footprints),
            "packing_pair" => Some(Self::PackingPair),
            "pose3d" => Some(Self::Pose3d),
            _ => None,
        }
    }
}

const PANEL: f64 = 600.0;
const MARGIN: f64 = 30.0;

/// Maps a world box onto a `PANEL`-sized square with the y axis flipped:
/// `x_view = tx + s·x`, `y_view = ty − s·y`.
#[derive(Debug, Clone, Copy)]
struct View {
    s: f64,
    tx: f64,
    ty: f64,
}

impl View {
    fn fit(points: impl IntoIterator<Item = Point2>, offset_x: f64) -> Self {
        let (mut lo, mut hi) =
            (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let s = (PANEL - 2.0 * MARGIN) / span;
        Self { s, tx: offset_x + MARGIN - s * lo.x, ty: MARGIN + s * hi.y }
    }

    fn apply(&self, p: Point2) -> Point2 {
        Point2::new(self.tx + self.s * p.x, self.ty - self.s * p.y)
    }

    fn open_group(&self, out: &mut String, id: &str) {
        writeln!(
            out,
            "<!-- world-to-view: x_view = {tx} + {s}*x, y_view = {ty} - {s}*y (y axis flipped) -->\n\
             <g id=\"{id}\" transform=\"matrix({s} 0 0 {neg} {tx} {ty})\">",
            s = self.s,
            neg = -self.s,
            tx = self.tx,
            ty = self.ty
        )
        .unwrap();
    }

    /// A view-space length expressed in world units.
    fn px(&self, len: f64) -> f64 {
        len / self.s
    }
}

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <title>{}</title>\n\
         <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>",
        escape(title)
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn polygon(out: &mut String, q: &Quadrilateral, class: &str, stroke_width: f64, dashed: Option<f64>) {
    let points: Vec<String> = q.vertices().iter().map(|v| format!("{},{}", v.x, v.y)).collect();
    let dash = dashed.map(|d| format!(" stroke-dasharray=\"{d} {d}\"")).unwrap_or_default();
    writeln!(
        out,
        "<polygon class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke_width}\"{dash}/>",
        points.join(" ")
    )
    .unwrap();
}

fn label(out: &mut String, at: Point2, text: &str) {
    writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>",
        at.x,
        at.y,
        escape(text)
    )
    .unwrap();
}

fn footprint_ellipses(out: &mut String, plan: &Plan, view: &View) {
    for p in &plan.placements {
        let e = &p.footprint;
        writeln!(
            out,
            "<ellipse id=\"footprint-{}\" cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" transform=\"rotate({} {} {})\" \
             fill=\"#4a90d9\" fill-opacity=\"0.35\" stroke=\"#1f4e85\" stroke-width=\"{}\"/>",
            e.index,
            e.center.x,
            e.center.y,
            e.a,
            e.b,
            e.phi.to_degrees(),
            e.center.x,
            e.center.y,
            view.px(1.0)
        )
        .unwrap();
    }
}

fn region_outlines(out: &mut String, plan: &Plan, view: &View) {
    polygon(out, &plan.quad, "quad", view.px(1.5), None);
    if plan.region != plan.quad {
        polygon(out, &plan.region, "region", view.px(0.8), Some(view.px(4.0)));
    }
}

/// Footprints mode.
pub fn render_footprints(plan: &Plan, title: &str) -> String {
    let mut pts: Vec<Point2> = plan.quad.vertices().iter().chain(plan.region.vertices()).copied().collect();
    pts.extend(plan.placements.iter().map(|p| p.proj));
    let view = View::fit(pts, 0.0);

    let mut out = String::new();
    header(&mut out, PANEL, PANEL, title);
    view.open_group(&mut out, "world");
    region_outlines(&mut out, plan, &view);
    footprint_ellipses(&mut out, plan, &view);
    for p in &plan.placements {
        writeln!(
            out,
            "<circle class=\"projection\" id=\"projection-{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#c0392b\"/>",
            p.footprint.index,
            p.proj.x,
            p.proj.y,
            view.px(3.0)
        )
        .unwrap();
    }
    out.push_str("</g>\n<g id=\"labels\">\n");
    for p in &plan.placements {
        label(&mut out, view.apply(p.footprint.center), &p.footprint.index.to_string());
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Packing-pair mode: unit square on the left, region on the right.
pub fn render_packing_pair(plan: &Plan, title: &str) -> String {
    let square = View::fit(Quadrilateral::unit_square().vertices().iter().copied(), 0.0);
    let mut pts: Vec<Point2> = plan.quad.vertices().iter().chain(plan.region.vertices()).copied().collect();
    pts.extend(plan.placements.iter().map(|p| p.proj));
    let world = View::fit(pts, PANEL);

    let mut out = String::new();
    header(&mut out, 2.0 * PANEL, PANEL, title);
    square.open_group(&mut out, "unit-square");
    polygon(&mut out, &Quadrilateral::unit_square(), "square", square.px(1.5), None);
    for (k, c) in plan.packing.circles().iter().enumerate() {
        writeln!(
            out,
            "<circle id=\"circle-{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#e67e22\" fill-opacity=\"0.35\" stroke=\"#a04000\" stroke-width=\"{}\"/>",
            k + 1,
            c.center.x,
            c.center.y,
            c.radius,
            square.px(1.0)
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    world.open_group(&mut out, "world");
    region_outlines(&mut out, plan, &world);
    footprint_ellipses(&mut out, plan, &world);
    out.push_str("</g>\n<g id=\"labels\">\n");
    for (k, c) in plan.packing.circles().iter().enumerate() {
        label(&mut out, square.apply(c.center), &(k + 1).to_string());
    }
    for p in &plan.placements {
        label(&mut out, world.apply(p.footprint.center), &p.footprint.index.to_string());
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Isometric projection with z up: `u = (x − y)·cos 30°`, `w = (x + y)·sin 30° + z`.
fn iso(x: f64, y: f64, z: f64) -> Point2 {
    let (s, c) = 30f64.to_radians().sin_cos();
    Point2::new((x - y) * c, (x + y) * s + z)
}

/// Pose mode: UAVs above their footprints with boresight arrows.
pub fn render_pose3d(plan: &Plan, title: &str) -> String {
    const BOUNDARY: usize = 96;
    let ground = |p: Point2| iso(p.x, p.y, 0.0);
    // boresight hits the ground h·tan ψ from the projection, toward the center
    let boresight = |k: usize| {
        let p = &plan.placements[k];
        let towards = p.footprint.center - p.proj;
        let n = towards.norm();
        if n == 0.0 {
            p.proj
        } else {
            p.proj + towards * (p.h_opt * p.psi.to_radians().tan() / n)
        }
    };

    let mut pts: Vec<Point2> = plan.region.vertices().iter().chain(plan.quad.vertices()).map(|&v| ground(v)).collect();
    for p in &plan.placements {
        pts.extend(p.footprint.boundary_samples(BOUNDARY).into_iter().map(ground));
        pts.push(iso(p.position.x, p.position.y, p.position.z));
    }
    let view = View::fit(pts, 0.0);
    let v = |p: Point2| view.apply(p);

    let mut out = String::new();
    header(&mut out, PANEL, PANEL, title);
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n",
    );
    writeln!(
        out,
        "<!-- isometric: u = (x - y)*cos30, w = (x + y)*sin30 + z; view = ({}, {}) + {}*(u, -w) -->\n<g id=\"scene\">",
        view.tx, view.ty, view.s
    )
    .unwrap();
    for (q, class) in [(&plan.quad, "quad"), (&plan.region, "region")] {
        if class == "region" && plan.region == plan.quad {
            continue;
        }
        let points: Vec<String> =
            q.vertices().iter().map(|&p| v(ground(p))).map(|p| format!("{:.3},{:.3}", p.x, p.y)).collect();
        writeln!(out, "<polygon class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"black\"/>", points.join(" "))
            .unwrap();
    }
    for (k, p) in plan.placements.iter().enumerate() {
        let ring: Vec<String> = p
            .footprint
            .boundary_samples(BOUNDARY)
            .into_iter()
            .map(|q| v(ground(q)))
            .map(|q| format!("{:.3},{:.3}", q.x, q.y))
            .collect();
        writeln!(
            out,
            "<polygon id=\"footprint-{}\" points=\"{}\" fill=\"#4a90d9\" fill-opacity=\"0.3\" stroke=\"#1f4e85\"/>",
            p.footprint.index,
            ring.join(" ")
        )
        .unwrap();
        let uav = v(iso(p.position.x, p.position.y, p.position.z));
        let foot = v(ground(p.proj));
        let hit = v(ground(boresight(k)));
        writeln!(
            out,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"gray\" stroke-dasharray=\"3 3\"/>",
            uav.x, uav.y, foot.x, foot.y
        )
        .unwrap();
        writeln!(
            out,
            "<line class=\"tilt\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#c0392b\" marker-end=\"url(#arrow)\"/>",
            uav.x, uav.y, hit.x, hit.y
        )
        .unwrap();
        writeln!(
            out,
            "<circle id=\"uav-{}\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"#c0392b\"/>",
            p.footprint.index, uav.x, uav.y
        )
        .unwrap();
        label(&mut out, Point2::new(uav.x, uav.y - 14.0), &format!("{} (h={:.1} m)", p.footprint.index, p.h_opt));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn render(plan: &Plan, mode: RenderMode, title: &str) -> String {
    match mode {
        RenderMode::Footprints => render_footprints(plan, title),
        RenderMode::PackingPair => render_packing_pair(plan, title),
        RenderMode::Pose3d => render_pose3d(plan, title),
    }
}
