//! Graphviz renderings of the capacitated graph and the links graph.

use crate::construction::Instance;

/// One colour per path; `P_k` (the single link `st`) takes the last one used.
pub const PATH_COLORS: [&str; 16] = [
    "blue",
    "red",
    "darkgreen",
    "brown",
    "purple",
    "orange",
    "teal",
    "magenta",
    "olive",
    "navy",
    "crimson",
    "darkcyan",
    "goldenrod",
    "slategray",
    "deeppink",
    "black",
];

pub fn path_color(path: usize) -> &'static str {
    PATH_COLORS[(path - 1) % PATH_COLORS.len()]
}

fn header(out: &mut String, name: &str, inst: &Instance) {
    out.push_str(&format!("graph {name} {{\n"));
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for v in 1..=inst.n() {
        out.push_str(&format!("  v{v} [label=\"v{v}\"];\n"));
    }
    for q in &inst.qsets {
        out.push_str(&format!(
            "  subgraph cluster_Q{} {{ label=\"Q{}\";",
            q.index, q.index
        ));
        for v in q.nodes() {
            out.push_str(&format!(" v{v};"));
        }
        out.push_str(" }\n");
    }
}

/// Edges labelled with capacities; chords dashed.
pub fn capgraph_dot(inst: &Instance) -> String {
    let mut out = String::new();
    header(&mut out, "capgraph", inst);
    let n = inst.n();
    for (idx, e) in inst.graph.edges().iter().enumerate() {
        let style = if idx < n - 1 { "" } else { ", style=dashed" };
        out.push_str(&format!(
            "  v{} -- v{} [label=\"{}\"{}];\n",
            e.lo, e.hi, e.cap, style
        ));
    }
    out.push_str("}\n");
    out
}

/// Links labelled `l<id>` and coloured by path.
pub fn links_dot(inst: &Instance) -> String {
    let mut out = String::new();
    header(&mut out, "links", inst);
    for l in &inst.links {
        out.push_str(&format!(
            "  v{} -- v{} [label=\"l{}\", color=\"{}\", class=\"P{}\"];\n",
            l.lo,
            l.hi,
            l.id,
            path_color(l.path),
            l.path
        ));
    }
    out.push_str("}\n");
    out
}
