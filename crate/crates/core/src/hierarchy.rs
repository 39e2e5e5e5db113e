//! The expressiveness diagram of the ten fragments as Graphviz DOT.

use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Strictly more expressive, even with fresh letters.
    Strict,
    /// Weakly more expressive: no translation without fresh letters.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: &'static str,
    pub label: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: &'static str,
    pub to: &'static str,
    pub relation: Relation,
}

pub const NODES: [Node; 10] = [
    Node { id: "Bool", label: "Bool" },
    Node { id: "Horn", label: "Horn" },
    Node { id: "Krom", label: "Krom" },
    Node { id: "Core", label: "core" },
    Node { id: "HornBox", label: "Horn□" },
    Node { id: "HornDia", label: "Horn◇" },
    Node { id: "KromBox", label: "Krom□" },
    Node { id: "KromDia", label: "Krom◇" },
    Node { id: "CoreBox", label: "core□" },
    Node { id: "CoreDia", label: "core◇" },
];

/// Fragments of equal expressive power, drawn as one cluster.
pub const EQUIVALENT: [&str; 3] = ["Krom", "KromBox", "KromDia"];

const fn weak(from: &'static str, to: &'static str) -> Edge {
    Edge { from, to, relation: Relation::Weak }
}

const fn strict(from: &'static str, to: &'static str) -> Edge {
    Edge { from, to, relation: Relation::Strict }
}

pub const EDGES: [Edge; 14] = [
    weak("Bool", "Krom"),
    weak("Bool", "Horn"),
    weak("Krom", "KromDia"),
    weak("Krom", "KromBox"),
    weak("Krom", "Core"),
    weak("Horn", "Core"),
    weak("HornDia", "CoreDia"),
    weak("HornBox", "CoreBox"),
    strict("Horn", "HornBox"),
    strict("Horn", "HornDia"),
    strict("KromDia", "CoreDia"),
    strict("KromBox", "CoreBox"),
    strict("Core", "CoreBox"),
    strict("Core", "CoreDia"),
];

/// The diagram as a DOT digraph. Weak edges are dashed, strict edges solid
/// red, and the equivalent Krom fragments share a cluster labelled `≡`.
pub fn to_dot() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph expressiveness {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  label=\"dashed: is weakly more expressive; red: is more expressive\";");
    let _ = writeln!(out, "  node [shape=plaintext];");
    let _ = writeln!(out, "  subgraph cluster_equivalent {{");
    let _ = writeln!(out, "    label=\"≡\";");
    let _ = writeln!(out, "    color=red;");
    for id in EQUIVALENT {
        let _ = writeln!(out, "    {id};");
    }
    let _ = writeln!(out, "  }}");
    for n in NODES {
        let _ = writeln!(out, "  {} [label=\"{}\"];", n.id, n.label);
    }
    for e in EDGES {
        let style = match e.relation {
            Relation::Weak => "style=dashed",
            Relation::Strict => "style=solid, color=red",
        };
        let _ = writeln!(out, "  {} -> {} [{style}];", e.from, e.to);
    }
    let _ = writeln!(out, "}}");
    out
}
