//! Max/MSP patch files as language-neutral node/edge graphs.
//!
//! A patch file is a JSON document whose top-level `"patcher"` object holds
//! `"boxes"` (nodes) and `"lines"` (edges). Boxes may nest a full patcher of
//! their own (a subpatcher), which becomes the node's child graph. Parsing,
//! counting, and diffing all operate on this model; nothing here touches the
//! filesystem or a repository.

mod diff;
mod parse;

pub use diff::{diff_graphs, DiffConfig, GraphDiff};
pub use parse::parse_patch;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatchError {
    /// Not parseable as JSON, missing the top-level `patcher` key, or a box
    /// is structurally unusable (missing id, malformed position).
    #[error("malformed patch: {0}")]
    MalformedPatch(String),
    /// Two boxes at the same graph level share an id.
    #[error("duplicate node id `{0}`")]
    DuplicateNodeId(String),
}

/// One box in a patcher. Position is held apart from the other attributes so
/// that position-only edits stay distinguishable when diffing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisualNode {
    pub id: String,
    pub class_name: String,
    /// Canonicalized attribute values, keyed by attribute name. Excludes the
    /// position attribute and any nested patcher.
    pub attributes: BTreeMap<String, Value>,
    /// `patching_rect` as (x, y, width, height), when present.
    pub position: Option<[f64; 4]>,
    /// Nested subpatcher graph, when the box contains one.
    pub children: Option<VisualGraph>,
}

/// A patch cord between two boxes at the same graph level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VisualEdge {
    pub source_id: String,
    pub source_port: u32,
    pub dest_id: String,
    pub dest_port: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VisualGraph {
    pub nodes: Vec<VisualNode>,
    pub edges: Vec<VisualEdge>,
}

impl VisualGraph {
    /// Total node count including all nested subpatcher nodes.
    pub fn count_nodes(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| 1 + n.children.as_ref().map_or(0, VisualGraph::count_nodes))
            .sum()
    }

    /// Re-serializes the graph to its canonical patch form: boxes sorted by
    /// id, lines sorted by endpoint, attribute keys sorted, numbers
    /// normalized. Parsing the result yields an equal graph.
    pub fn to_canonical_json(&self) -> Value {
        let mut nodes: Vec<&VisualNode> = self.nodes.iter().collect();
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let boxes: Vec<Value> = nodes
            .into_iter()
            .map(|n| {
                let mut body = Map::new();
                body.insert("id".into(), Value::String(n.id.clone()));
                body.insert("maxclass".into(), Value::String(n.class_name.clone()));
                for (k, v) in &n.attributes {
                    body.insert(k.clone(), v.clone());
                }
                if let Some(pos) = n.position {
                    body.insert(
                        "patching_rect".into(),
                        Value::Array(pos.iter().map(|&c| float_value(c)).collect()),
                    );
                }
                if let Some(children) = &n.children {
                    let nested = children.to_canonical_json();
                    body.insert("patcher".into(), nested["patcher"].clone());
                }
                json!({ "box": body })
            })
            .collect();

        let mut edges: Vec<&VisualEdge> = self.edges.iter().collect();
        edges.sort();
        let lines: Vec<Value> = edges
            .into_iter()
            .map(|e| {
                json!({ "patchline": {
                    "source": [e.source_id, e.source_port],
                    "destination": [e.dest_id, e.dest_port],
                }})
            })
            .collect();

        json!({ "patcher": { "boxes": boxes, "lines": lines } })
    }
}

fn float_value(c: f64) -> Value {
    canonical_number(Number::from_f64(c).unwrap_or_else(|| Number::from(0)))
}

/// Normalizes a JSON number: floats with an exact integer value collapse to
/// that integer, so `1.0` and `1` compare equal after canonicalization.
fn canonical_number(n: Number) -> Value {
    if let Some(f) = n.as_f64() {
        if f.fract() == 0.0 && f.abs() <= i64::MAX as f64 && n.as_i64().is_none() {
            return Value::Number(Number::from(f as i64));
        }
    }
    Value::Number(n)
}

/// Recursively canonicalizes attribute values (number normalization; object
/// keys are already sorted by the default serde_json map).
pub(crate) fn canonical_value(v: Value) -> Value {
    match v {
        Value::Number(n) => canonical_number(n),
        Value::Array(items) => Value::Array(items.into_iter().map(canonical_value).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, canonical_value(v)))
                .collect(),
        ),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: &str) -> VisualNode {
        VisualNode {
            id: id.into(),
            class_name: "toggle".into(),
            attributes: BTreeMap::new(),
            position: None,
            children: None,
        }
    }

    #[test]
    fn count_nodes_empty_graph() {
        assert_eq!(VisualGraph::default().count_nodes(), 0);
    }

    #[test]
    fn count_nodes_flat() {
        let g = VisualGraph {
            nodes: vec![node("obj-1"), node("obj-2")],
            edges: vec![],
        };
        assert_eq!(g.count_nodes(), 2);
    }

    #[test]
    fn count_nodes_recurses_into_subpatchers() {
        let sub = VisualGraph {
            nodes: vec![node("obj-1"), node("obj-2"), node("obj-3")],
            edges: vec![],
        };
        let mut parent = node("obj-1");
        parent.children = Some(sub);
        let g = VisualGraph {
            nodes: vec![parent, node("obj-2")],
            edges: vec![],
        };
        assert_eq!(g.count_nodes(), 5);
    }

    #[test]
    fn numbers_canonicalize_to_integers_when_exact() {
        assert_eq!(
            canonical_value(serde_json::from_str("1.0").unwrap()),
            Value::Number(Number::from(1))
        );
        assert_eq!(
            canonical_value(serde_json::from_str("1.5").unwrap()),
            serde_json::from_str::<Value>("1.5").unwrap()
        );
    }
}
