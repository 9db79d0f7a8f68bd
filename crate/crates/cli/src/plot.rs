//! Two static SVG figures: error against degree, and the final error curve.

use std::fmt::Write as _;

use caaa::{AaaResult, Domain, ErrorCurve};

const W: f64 = 640.0;
const H: f64 = 360.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 46.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(s: &mut String, frame: &Frame, xticks: &[(f64, String)], yticks: &[(f64, String)], xlabel: &str, ylabel: &str) {
    let (x0, x1) = (frame.px(frame.x.0), frame.px(frame.x.1));
    let (y0, y1) = (frame.py(frame.y.0), frame.py(frame.y.1));
    let _ = writeln!(s, r##"<rect x="{x0:.1}" y="{y1:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="#444"/>"##, x1 - x0, y0 - y1);
    for (v, label) in xticks {
        let x = frame.px(*v);
        let _ = writeln!(s, r##"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="#444"/>"##, y0 + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#, y0 + 18.0);
    }
    for (v, label) in yticks {
        let y = frame.py(*v);
        let _ = writeln!(s, r##"<line x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="#ddd"/>"##);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{label}</text>"#, x0 - 6.0, y + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xlabel}</text>"#, (x0 + x1) / 2.0, H - 8.0);
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{ylabel}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn nice_ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let raw = (hi - lo) / count as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|k| k * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    out
}

/// Grid error per step on a log scale; blue for pole-free steps, red for
/// steps with bad poles, and a black ring for the final fine-grid error.
pub fn convergence(result: &AaaResult, label: &str) -> String {
    let floor = |e: f64| e.max(1e-17).log10();
    let points: Vec<(f64, f64, bool)> =
        result.history.iter().map(|h| (h.degree as f64, floor(h.grid_error), h.bad_poles)).collect();
    let fine = (result.degree() as f64, floor(result.fine_error));
    let ymin = points.iter().map(|p| p.1).chain([fine.1]).fold(0.0, f64::min).floor().min(-1.0);
    let xmax = points.iter().map(|p| p.0).fold(fine.0, f64::max).max(1.0);
    let frame = Frame {
        x: (0.0, xmax),
        y: (ymin, 0.0),
    };
    let xticks: Vec<(f64, String)> = nice_ticks(0.0, xmax, 8).into_iter().map(|t| (t, format!("{t}"))).collect();
    let yticks: Vec<(f64, String)> = nice_ticks(ymin, 0.0, 6).into_iter().map(|t| (t, format!("1e{t}"))).collect();
    let mut s = header(&format!("{label}: {}, degree {}", result.status.name(), result.degree()));
    axes(&mut s, &frame, &xticks, &yticks, "degree", "relative error");
    for (x, y, bad) in &points {
        let colour = if *bad { "#d62728" } else { "#1f77b4" };
        let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{colour}"/>"#, frame.px(*x), frame.py(*y));
    }
    let _ = writeln!(
        s,
        r##"<circle cx="{:.1}" cy="{:.1}" r="7" fill="none" stroke="#000" stroke-width="2"/>"##,
        frame.px(fine.0),
        frame.py(fine.1)
    );
    s.push_str("</svg>\n");
    s
}

/// Real error against `x` on the interval; elsewhere the complex error
/// curve in the plane.
pub fn error_curve(curve: &ErrorCurve, domain: &Domain) -> String {
    let mut s;
    let path: Vec<(f64, f64)>;
    let frame;
    if domain.is_periodic() {
        let r = curve.max_error().max(f64::MIN_POSITIVE) * 1.1;
        frame = Frame { x: (-r, r), y: (-r, r) };
        let ticks: Vec<(f64, String)> = [-r, 0.0, r].into_iter().map(|t| (t, format!("{t:.1e}"))).collect();
        s = header(&format!("error curve, winding around 0, max {:.2e}", curve.max_error()));
        axes(&mut s, &frame, &ticks, &ticks, "Re(f - r)", "Im(f - r)");
        path = curve.errors.iter().map(|e| (e.re, e.im)).collect();
    } else {
        let r = curve.errors.iter().map(|e| e.re.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE) * 1.1;
        frame = Frame { x: (-1.0, 1.0), y: (-r, r) };
        let xticks: Vec<(f64, String)> = nice_ticks(-1.0, 1.0, 4).into_iter().map(|t| (t, format!("{t}"))).collect();
        let yticks: Vec<(f64, String)> = [-r, 0.0, r].into_iter().map(|t| (t, format!("{t:.1e}"))).collect();
        s = header(&format!("error, max {:.2e}", curve.max_error()));
        axes(&mut s, &frame, &xticks, &yticks, "x", "Re(f - r)");
        path = curve.params.iter().zip(&curve.errors).map(|(x, e)| (*x, e.re)).collect();
    }
    let mut d = String::new();
    for (k, (x, y)) in path.iter().enumerate() {
        let _ = write!(d, "{}{:.2},{:.2} ", if k == 0 { "M" } else { "L" }, frame.px(*x), frame.py(*y));
    }
    if curve.closed {
        d.push('Z');
    }
    let _ = writeln!(s, r##"<path d="{}" fill="none" stroke="#1f77b4" stroke-width="1"/>"##, d.trim_end());
    s.push_str("</svg>\n");
    s
}
