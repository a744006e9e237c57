use std::fmt::Write;

use omnitoric::{FaceLattice, SimplePolytope};

/// Graphviz rendering of the face lattice: one node per face labelled by
/// its facet names (the whole polytope is `P`), one edge per covering
/// relation pointing from the larger face to the smaller.
pub fn lattice_dot(p: &SimplePolytope) -> String {
    let lattice = FaceLattice::of(p);
    let mut out = String::from("digraph face_lattice {\n  rankdir=TB;\n  node [shape=box];\n");
    for (i, face) in lattice.faces().iter().enumerate() {
        let label = if face.facets.is_empty() {
            "P".to_owned()
        } else {
            p.facet_names(face.facets).join(",")
        };
        let _ = writeln!(out, "  f{i} [label=\"{}\"];", escape(&label));
    }
    for &(upper, lower) in lattice.covers() {
        let _ = writeln!(out, "  f{upper} -> f{lower};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
