//! Graphviz rendering.

use std::fmt::Write as _;

use pathdiv_core::{AsNumber, Digraph};

/// DOT text for `g`: one node line per vertex labelled `AS<number>` and one
/// edge line per arc, both in ascending order. The `highlight` vertex, when
/// present in `g`, is drawn filled with a double outline.
pub fn to_dot(g: &Digraph, highlight: Option<AsNumber>) -> String {
    let mut out = String::from("digraph {\n");
    for v in g.vertices() {
        if Some(v) == highlight {
            writeln!(
                out,
                "  AS{v} [label=\"AS{v}\", shape=doublecircle, style=filled, fillcolor=lightgrey];"
            )
            .unwrap();
        } else {
            writeln!(out, "  AS{v} [label=\"AS{v}\"];").unwrap();
        }
    }
    for (t, h) in g.arcs() {
        writeln!(out, "  AS{t} -> AS{h};").unwrap();
    }
    out.push_str("}\n");
    out
}
