//! Semantic diffing of two patch versions.
//!
//! Both graphs are flattened to path-qualified node ids (`parent/child` for
//! subpatcher members) before set comparison, so counts and diffs stay
//! well-defined for nested patches. A node is *modified* when its own class,
//! attributes, or subpatcher presence changed; edits inside a subpatcher show
//! up as changes to the nested nodes themselves, not to the enclosing box.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{VisualGraph, VisualNode};

/// Behavior switches for [`diff_graphs`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DiffConfig {
    /// Count position-only edits as modifications. Off by default: cosmetic
    /// moves carry no defect semantics.
    pub count_position_changes: bool,
}

/// Added/modified/deleted node-id sets between two patch versions, plus the
/// recursive node count of the old side.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDiff {
    pub added: BTreeSet<String>,
    pub modified: BTreeSet<String>,
    pub deleted: BTreeSet<String>,
    pub nodes_before: usize,
}

impl GraphDiff {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.modified.is_empty() && self.deleted.is_empty()
    }

    /// Total added + modified + deleted, the per-file weight used by the
    /// node modification entropy.
    pub fn change_count(&self) -> usize {
        self.added.len() + self.modified.len() + self.deleted.len()
    }
}

/// What a flattened node is compared by.
#[derive(PartialEq)]
struct NodeRecord<'a> {
    class_name: &'a str,
    attributes: &'a BTreeMap<String, Value>,
    position: Option<&'a [f64; 4]>,
    has_children: bool,
}

fn flatten<'a>(graph: &'a VisualGraph, prefix: &str, out: &mut BTreeMap<String, NodeRecord<'a>>) {
    for node in &graph.nodes {
        let qualified = if prefix.is_empty() {
            node.id.clone()
        } else {
            format!("{prefix}/{}", node.id)
        };
        if let Some(children) = &node.children {
            flatten(children, &qualified, out);
        }
        out.insert(qualified, record(node));
    }
}

fn record(node: &VisualNode) -> NodeRecord<'_> {
    NodeRecord {
        class_name: &node.class_name,
        attributes: &node.attributes,
        position: node.position.as_ref(),
        has_children: node.children.is_some(),
    }
}

/// Compares two graph versions by path-qualified node id.
pub fn diff_graphs(old: &VisualGraph, new: &VisualGraph, config: DiffConfig) -> GraphDiff {
    let mut old_flat = BTreeMap::new();
    let mut new_flat = BTreeMap::new();
    flatten(old, "", &mut old_flat);
    flatten(new, "", &mut new_flat);

    let mut diff = GraphDiff {
        nodes_before: old_flat.len(),
        ..GraphDiff::default()
    };

    for (id, new_rec) in &new_flat {
        match old_flat.get(id) {
            None => {
                diff.added.insert(id.clone());
            }
            Some(old_rec) => {
                let core_changed = old_rec.class_name != new_rec.class_name
                    || old_rec.attributes != new_rec.attributes
                    || old_rec.has_children != new_rec.has_children;
                let position_changed = old_rec.position != new_rec.position;
                if core_changed || (config.count_position_changes && position_changed) {
                    diff.modified.insert(id.clone());
                }
            }
        }
    }
    for id in old_flat.keys() {
        if !new_flat.contains_key(id) {
            diff.deleted.insert(id.clone());
        }
    }
    diff
}
