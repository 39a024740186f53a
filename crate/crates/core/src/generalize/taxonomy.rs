//! Attribute taxonomies and roll-up along a cut.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Axis, GroupingScheme, Mode};
use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Nested JSON form: `{name, children: [...]}`; leaves omit `children`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyNode {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TaxonomyNode>,
}

#[derive(Clone, Debug)]
struct Node {
    name: String,
    parent: Option<usize>,
    children: Vec<usize>,
}

/// A forest of named nodes. Leaves stand for attributes, inner nodes for
/// generalized attributes.
#[derive(Clone, Debug)]
pub struct Taxonomy {
    nodes: Vec<Node>,
    by_name: HashMap<String, usize>,
}

impl Taxonomy {
    pub fn from_roots(roots: &[TaxonomyNode]) -> Result<Self> {
        let mut tax = Taxonomy {
            nodes: Vec::new(),
            by_name: HashMap::new(),
        };
        for root in roots {
            tax.add(root, None)?;
        }
        if tax.nodes.is_empty() {
            return Err(Error::Taxonomy("taxonomy is empty".into()));
        }
        Ok(tax)
    }

    fn add(&mut self, node: &TaxonomyNode, parent: Option<usize>) -> Result<usize> {
        let id = self.nodes.len();
        if self.by_name.insert(node.name.clone(), id).is_some() {
            return Err(Error::Taxonomy(format!("node {:?} appears twice", node.name)));
        }
        self.nodes.push(Node {
            name: node.name.clone(),
            parent,
            children: Vec::new(),
        });
        for child in &node.children {
            let c = self.add(child, Some(id))?;
            self.nodes[id].children.push(c);
        }
        Ok(id)
    }

    /// Accepts one root object or an array of roots. A top-level
    /// `format_version` field is ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let roots: Vec<TaxonomyNode> = match value {
            serde_json::Value::Array(_) => serde_json::from_value(value)?,
            _ => vec![serde_json::from_value(value)?],
        };
        Taxonomy::from_roots(&roots)
    }

    pub fn to_json(&self) -> String {
        let roots: Vec<TaxonomyNode> = self.roots().map(|r| self.node_doc(r)).collect();
        if roots.len() == 1 {
            serde_json::to_string_pretty(&roots[0])
        } else {
            serde_json::to_string_pretty(&roots)
        }
        .expect("taxonomy documents always serialize")
    }

    fn node_doc(&self, id: usize) -> TaxonomyNode {
        TaxonomyNode {
            name: self.nodes[id].name.clone(),
            children: self.nodes[id].children.iter().map(|&c| self.node_doc(c)).collect(),
        }
    }

    fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].parent.is_none())
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.nodes[id].name
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        self.nodes[id].children.is_empty()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.is_leaf(i)).collect()
    }

    pub fn depth(&self, id: usize) -> usize {
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            d += 1;
            cur = p;
        }
        d
    }

    pub fn is_ancestor(&self, ancestor: usize, id: usize) -> bool {
        let mut cur = self.nodes[id].parent;
        while let Some(p) = cur {
            if p == ancestor {
                return true;
            }
            cur = self.nodes[p].parent;
        }
        false
    }

    pub fn descendant_leaves(&self, id: usize) -> Vec<usize> {
        if self.is_leaf(id) {
            return vec![id];
        }
        self.nodes[id]
            .children
            .iter()
            .flat_map(|&c| self.descendant_leaves(c))
            .collect()
    }

    /// Nodes at `depth`, plus leaves that end above it.
    pub fn cut_at_depth(&self, depth: usize) -> Vec<String> {
        (0..self.nodes.len())
            .filter(|&i| {
                let d = self.depth(i);
                d == depth || (d < depth && self.is_leaf(i))
            })
            .map(|i| self.nodes[i].name.clone())
            .collect()
    }
}

/// One existential group per cut node, holding the attributes below it.
/// Attributes under no cut node pass through unchanged.
pub fn roll_up<S: AsRef<str>>(ctx: &FormalContext, tax: &Taxonomy, cut: &[S]) -> Result<GroupingScheme> {
    for leaf in tax.leaves() {
        if ctx.attribute_index(tax.name(leaf)).is_none() {
            return Err(Error::Taxonomy(format!(
                "leaf {:?} is not an attribute of the context",
                tax.name(leaf)
            )));
        }
    }
    let ids = cut
        .iter()
        .map(|n| {
            tax.node(n.as_ref())
                .ok_or_else(|| Error::Taxonomy(format!("no taxonomy node {:?}", n.as_ref())))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if a == b || tax.is_ancestor(a, b) || tax.is_ancestor(b, a) {
                return Err(Error::Taxonomy(format!(
                    "cut is not an antichain: {:?} and {:?}",
                    tax.name(a),
                    tax.name(b)
                )));
            }
        }
    }
    let mut covered = BitSet::empty(ctx.n_attributes());
    let mut scheme = GroupingScheme::new(Axis::Attributes, Mode::Exists, ctx.n_attributes(), true);
    for &id in &ids {
        let mut members = BitSet::empty(ctx.n_attributes());
        for leaf in tax.descendant_leaves(id) {
            let m = ctx.attribute_index(tax.name(leaf)).expect("leaves checked above");
            if covered.contains(m) {
                return Err(Error::Taxonomy(format!(
                    "attribute {:?} is covered twice",
                    tax.name(leaf)
                )));
            }
            covered.insert(m);
            members.insert(m);
        }
        scheme.push(tax.name(id), members, None)?;
    }
    scheme.validate(ctx)?;
    Ok(scheme)
}
