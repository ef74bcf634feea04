//! Small reference digraphs. Arrow order matches the pattern labels, so
//! `a1` is `ArrowId(0)` and so on.

use crate::graph::Digraph;

/// `v0 -a1-> v1 -a2-> v2`, `v0 -a3-> v2`.
pub fn triangle() -> Digraph {
    Digraph::new(
        &["v0", "v1", "v2"],
        &[("v0", "v1"), ("v1", "v2"), ("v0", "v2")],
    )
    .expect("fixture")
}

/// `v0 -a1-> v1 -a2-> v3`, `v0 -a3-> v2 -a4-> v3`.
pub fn square() -> Digraph {
    Digraph::new(
        &["v0", "v1", "v2", "v3"],
        &[("v0", "v1"), ("v1", "v3"), ("v0", "v2"), ("v2", "v3")],
    )
    .expect("fixture")
}

/// `v0 -a1-> v1 -a2-> v0`.
pub fn double_edge() -> Digraph {
    Digraph::new(&["v0", "v1"], &[("v0", "v1"), ("v1", "v0")]).expect("fixture")
}

/// Directed 4-cycle `v0 -> v1 -> v2 -> v3 -> v0`.
pub fn cycle4() -> Digraph {
    Digraph::new(
        &["v0", "v1", "v2", "v3"],
        &[("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v0")],
    )
    .expect("fixture")
}

/// Two directed 4-cycles glued at `v0`: `v0 -> v1 -> v2 -> v3 -> v0` and
/// `v0 -> u1 -> u2 -> u3 -> v0`.
pub fn wedge() -> Digraph {
    Digraph::new(
        &["v0", "v1", "v2", "v3", "u1", "u2", "u3"],
        &[
            ("v0", "v1"),
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v0"),
            ("v0", "u1"),
            ("u1", "u2"),
            ("u2", "u3"),
            ("u3", "v0"),
        ],
    )
    .expect("fixture")
}

/// A single vertex `v0`.
pub fn point() -> Digraph {
    Digraph::new::<&str, &str>(&["v0"], &[]).expect("fixture")
}

/// Looks a fixture up by its short name (`T`, `S`, `D`, `C4`, `W`, `P`).
pub fn by_name(name: &str) -> Option<Digraph> {
    match name {
        "T" => Some(triangle()),
        "S" => Some(square()),
        "D" => Some(double_edge()),
        "C4" => Some(cycle4()),
        "W" => Some(wedge()),
        "P" => Some(point()),
        _ => None,
    }
}
