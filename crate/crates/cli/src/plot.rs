//! Orthographic SVG drawings of a linkage, one panel per parameter value.
//!
//! Links are drawn between the feet of common perpendiculars of
//! neighbouring axes; axes parallel to the view direction become dots.

use darboux7r::linkage::Chain;
use darboux7r::{AxisLine, Linkage, Result};
use nalgebra::Vector3;
use svg::node::element::{Circle, Group, Line, Polyline, Rectangle, Text};
use svg::Document;

type V = Vector3<f64>;

const CELL: f64 = 320.0;
const MARGIN: f64 = 24.0;
const PARALLEL_TOL: f64 = 1e-9;

struct Frame {
    t: f64,
    axes: Vec<(V, V)>, // point, unit direction
    feet_in: Vec<V>,
    feet_out: Vec<V>,
}

fn unit_line(a: &AxisLine<f64>) -> (V, V) {
    let d = V::from(a.direction);
    let p = V::from(a.closest_point_to_origin());
    (p, d.normalize())
}

fn project_onto(x: &V, (p, d): &(V, V)) -> V {
    p + d * (x - p).dot(d)
}

/// Feet of the common perpendicular, or `None` for parallel lines.
fn common_perpendicular((p1, d1): &(V, V), (p2, d2): &(V, V)) -> Option<(V, V)> {
    let n = d1.cross(d2);
    let nn = n.norm_squared();
    if nn < PARALLEL_TOL {
        return None;
    }
    let w = p2 - p1;
    let s = w.cross(d2).dot(&n) / nn;
    let u = w.cross(d1).dot(&n) / nn;
    Some((p1 + d1 * s, p2 + d2 * u))
}

fn frame(l: &Linkage<f64>, t: f64) -> Result<Frame> {
    let axes: Vec<(V, V)> = l.axes_at(&t)?.iter().map(unit_line).collect();
    let n = axes.len();
    let mut feet_in = vec![V::zeros(); n];
    let mut feet_out = vec![V::zeros(); n];
    let mut reference = axes[0].0;
    for i in 0..n {
        let j = (i + 1) % n;
        let (out, inn) = match common_perpendicular(&axes[i], &axes[j]) {
            Some(feet) => feet,
            None => {
                let out = project_onto(&reference, &axes[i]);
                (out, project_onto(&out, &axes[j]))
            }
        };
        feet_out[i] = out;
        feet_in[j] = inn;
        reference = inn;
    }
    Ok(Frame { t, axes, feet_in, feet_out })
}

/// Screen basis `(u1, u2)` with `u1 × u2` along the view direction.
fn screen_basis(view: [f64; 3]) -> (V, V) {
    let v = V::from(view).normalize();
    let helper = if v.y.abs() < 0.9 { V::y() } else { V::z() };
    let u1 = helper.cross(&v).normalize();
    (u1, v.cross(&u1))
}

pub fn render(l: &Linkage<f64>, ts: &[f64], view: [f64; 3]) -> Result<String> {
    let frames = ts.iter().map(|&t| frame(l, t)).collect::<Result<Vec<_>>>()?;
    let v = V::from(view).normalize();
    let (u1, u2) = screen_basis(view);
    let to2 = |p: &V| (p.dot(&u1), p.dot(&u2));

    let mut lo = (f64::MAX, f64::MAX);
    let mut hi = (f64::MIN, f64::MIN);
    for f in &frames {
        for p in f.feet_in.iter().chain(&f.feet_out) {
            let (x, y) = to2(p);
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
    }
    let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-6);
    let stub = 0.08 * extent;
    let scale = (CELL - 2.0 * MARGIN) / (extent + 2.0 * stub);
    let mid = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);

    let cols = (frames.len() as f64).sqrt().ceil().max(1.0) as usize;
    let rows = frames.len().div_ceil(cols).max(1);
    let mut doc = Document::new()
        .set("viewBox", (0, 0, cols as f64 * CELL, rows as f64 * CELL))
        .set("width", cols as f64 * CELL)
        .set("height", rows as f64 * CELL)
        .add(Rectangle::new().set("width", "100%").set("height", "100%").set("fill", "white"));

    for (k, f) in frames.iter().enumerate() {
        let (ox, oy) = ((k % cols) as f64 * CELL, (k / cols) as f64 * CELL);
        let px = |p: &V| {
            let (x, y) = to2(p);
            (ox + CELL / 2.0 + (x - mid.0) * scale, oy + CELL / 2.0 - (y - mid.1) * scale)
        };
        let mut g = Group::new().set("id", format!("t{k}"));
        g = g.add(
            Rectangle::new()
                .set("x", ox + 2.0)
                .set("y", oy + 2.0)
                .set("width", CELL - 4.0)
                .set("height", CELL - 4.0)
                .set("fill", "none")
                .set("stroke", "#ccc"),
        );
        g = g.add(
            Text::new(format!("t = {:.3}", f.t))
                .set("x", ox + 8.0)
                .set("y", oy + 18.0)
                .set("font-family", "sans-serif")
                .set("font-size", 12),
        );

        let n = f.axes.len();
        let mut path: Vec<(f64, f64)> = Vec::with_capacity(2 * n + 1);
        for i in 0..n {
            path.push(px(&f.feet_in[i]));
            path.push(px(&f.feet_out[i]));
        }
        path.push(px(&f.feet_in[0]));
        let points: Vec<String> = path.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        g = g.add(
            Polyline::new()
                .set("points", points.join(" "))
                .set("fill", "none")
                .set("stroke", "#555")
                .set("stroke-width", 1.5),
        );

        for (i, (joint, axis)) in l.joints().iter().zip(&f.axes).enumerate() {
            let color = if joint.chain == Chain::A { "#1f77b4" } else { "#d62728" };
            let (p, d) = axis;
            let anchor = (f.feet_in[i] + f.feet_out[i]) / 2.0;
            if d.cross(&v).norm() < PARALLEL_TOL {
                let (x, y) = px(&anchor);
                g = g.add(Circle::new().set("cx", x).set("cy", y).set("r", 4).set("fill", color));
            } else {
                let s_in = (f.feet_in[i] - p).dot(d);
                let s_out = (f.feet_out[i] - p).dot(d);
                let (a, b) = (p + d * (s_in.min(s_out) - stub), p + d * (s_in.max(s_out) + stub));
                let ((x1, y1), (x2, y2)) = (px(&a), px(&b));
                g = g.add(
                    Line::new()
                        .set("x1", x1)
                        .set("y1", y1)
                        .set("x2", x2)
                        .set("y2", y2)
                        .set("stroke", color)
                        .set("stroke-width", 2.5),
                );
            }
            let (x, y) = px(&anchor);
            g = g.add(
                Text::new((i + 1).to_string())
                    .set("x", x + 5.0)
                    .set("y", y - 5.0)
                    .set("font-family", "sans-serif")
                    .set("font-size", 10)
                    .set("fill", color),
            );
        }
        doc = doc.add(g);
    }
    Ok(doc.to_string())
}
