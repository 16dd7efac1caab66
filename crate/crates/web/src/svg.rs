//! SVG drawings of the two graphs: nodes on a line, consecutive edges straight,
//! everything else as arcs.

use std::fmt::Write as _;

use smallcuts::io::dot::path_color;
use smallcuts::Instance;

const DX: f64 = 46.0;
const MARGIN: f64 = 30.0;
const RADIUS: f64 = 11.0;

struct Layout {
    width: f64,
    height: f64,
    mid: f64,
}

impl Layout {
    fn new(inst: &Instance) -> Self {
        let n = inst.n() as f64;
        let width = 2.0 * MARGIN + (n - 1.0) * DX;
        // Tallest arc spans the whole line.
        let height = 2.0 * (MARGIN + arc_height(1, inst.n())) + 40.0;
        Layout {
            width,
            height,
            mid: height / 2.0,
        }
    }

    fn x(&self, node: usize) -> f64 {
        MARGIN + (node - 1) as f64 * DX
    }
}

fn arc_height(lo: usize, hi: usize) -> f64 {
    14.0 + 9.0 * ((hi - lo) as f64).sqrt() * 2.0
}

fn open(out: &mut String, layout: &Layout, inst: &Instance, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.0} {h:.0}" width="{w:.0}" height="{h:.0}" font-family="sans-serif" font-size="11">"#,
        w = layout.width,
        h = layout.height
    );
    let _ = writeln!(out, "<title>{title}</title>");
    for q in &inst.qsets {
        let x0 = layout.x(q.first) - RADIUS - 5.0;
        let x1 = layout.x(q.last) + RADIUS + 5.0;
        let _ = writeln!(
            out,
            r##"<rect class="qset" x="{x0:.1}" y="{:.1}" width="{:.1}" height="{:.1}" rx="14" fill="#f2f2f2" stroke="#999"/>"##,
            layout.mid - 20.0,
            x1 - x0,
            40.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" fill="#666">Q{}</text>"##,
            (x0 + x1) / 2.0,
            layout.mid - 24.0,
            q.index
        );
    }
}

fn close(out: &mut String, layout: &Layout, inst: &Instance) {
    for v in 1..=inst.n() {
        let _ = writeln!(
            out,
            r#"<circle class="node" cx="{:.1}" cy="{:.1}" r="{RADIUS}" fill="white" stroke="black"/>"#,
            layout.x(v),
            layout.mid
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{v}</text>"#,
            layout.x(v),
            layout.mid + 4.0
        );
    }
    out.push_str("</svg>\n");
}

/// A straight segment or an arc above (`up`) or below the node line.
#[allow(clippy::too_many_arguments)]
fn segment(
    out: &mut String,
    layout: &Layout,
    lo: usize,
    hi: usize,
    up: bool,
    color: &str,
    class: &str,
    label: &str,
) {
    let (x1, x2, y) = (layout.x(lo), layout.x(hi), layout.mid);
    if hi == lo + 1 {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{x1:.1}" y1="{y:.1}" x2="{x2:.1}" y2="{y:.1}" stroke="{color}" stroke-width="2"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" fill="{color}">{label}</text>"#,
            (x1 + x2) / 2.0,
            if up { y - 6.0 } else { y + 14.0 }
        );
        return;
    }
    let h = arc_height(lo, hi) * if up { -1.0 } else { 1.0 };
    let xm = (x1 + x2) / 2.0;
    let _ = writeln!(
        out,
        r#"<path class="{class}" d="M {x1:.1} {y:.1} Q {xm:.1} {:.1} {x2:.1} {y:.1}" fill="none" stroke="{color}" stroke-width="1.6"/>"#,
        y + 2.0 * h
    );
    let _ = writeln!(
        out,
        r#"<text x="{xm:.1}" y="{:.1}" text-anchor="middle" fill="{color}">{label}</text>"#,
        y + h + if up { -3.0 } else { 11.0 }
    );
}

/// Capacitated graph: path edges labelled with capacities, chords below.
pub fn capgraph_svg(inst: &Instance) -> String {
    let layout = Layout::new(inst);
    let mut out = String::new();
    open(
        &mut out,
        &layout,
        inst,
        &format!("capacitated graph, k = {}", inst.k),
    );
    for (idx, e) in inst.graph.edges().iter().enumerate() {
        let chord = idx >= inst.n() - 1;
        let class = if chord { "chord" } else { "path-edge" };
        segment(
            &mut out,
            &layout,
            e.lo,
            e.hi,
            !chord,
            "#1f4fbf",
            class,
            &e.cap.to_string(),
        );
    }
    close(&mut out, &layout, inst);
    out
}

/// Links graph: one colour per path, odd paths above the line and even below.
pub fn links_svg(inst: &Instance) -> String {
    let layout = Layout::new(inst);
    let mut out = String::new();
    open(
        &mut out,
        &layout,
        inst,
        &format!("links graph, k = {}", inst.k),
    );
    for l in &inst.links {
        segment(
            &mut out,
            &layout,
            l.lo,
            l.hi,
            l.path % 2 == 1,
            path_color(l.path),
            &format!("link P{}", l.path),
            &format!("ℓ{}", l.id),
        );
    }
    close(&mut out, &layout, inst);
    out
}
