use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::ConceptLattice;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' | '\\' | '{' | '}' | '|' | '<' | '>' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

/// Graphviz rendering of the covering diagram. Each node is a two-field
/// record: attribute labels in the upper field, object labels in the lower
/// one, each name appearing only at its attribute or object concept.
pub fn to_dot(lat: &ConceptLattice) -> String {
    let ctx = lat.context();
    let mut out = String::new();
    let title = if ctx.name().is_empty() { "lattice" } else { ctx.name() };
    let _ = writeln!(out, "digraph \"{}\" {{", title.replace('"', "\\\""));
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=record, fontsize=10];\n");
    out.push_str("  edge [arrowhead=none];\n");
    for id in 0..lat.len() {
        let attrs: Vec<String> = lat
            .attribute_labels(id)
            .into_iter()
            .map(|m| escape(&ctx.attribute_names()[m]))
            .collect();
        let objs: Vec<String> = lat
            .object_labels(id)
            .into_iter()
            .map(|g| escape(&ctx.object_names()[g]))
            .collect();
        let _ = writeln!(
            out,
            "  c{id} [label=\"{{{}|{}}}\"];",
            attrs.join(" "),
            objs.join(" ")
        );
    }
    for &(child, parent) in lat.covers() {
        let _ = writeln!(out, "  c{child} -> c{parent};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConceptDocument {
    pub index: usize,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

/// JSON view of a lattice: concepts by name and covering pairs as
/// `[child, parent]` indices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LatticeDocument {
    pub format_version: u32,
    pub count: usize,
    pub concepts: Vec<ConceptDocument>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeDocument {
    pub fn from_lattice(lat: &ConceptLattice) -> Self {
        let ctx = lat.context();
        LatticeDocument {
            format_version: 1,
            count: lat.len(),
            concepts: lat
                .concepts()
                .iter()
                .enumerate()
                .map(|(index, c)| ConceptDocument {
                    index,
                    extent: ctx.object_labels(&c.extent),
                    intent: ctx.attribute_labels(&c.intent),
                })
                .collect(),
            covers: lat.covers().iter().map(|&(c, p)| [c, p]).collect(),
        }
    }
}
