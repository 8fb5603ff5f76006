//! Parsing `.maxpat`/`.maxhelp` documents into [`VisualGraph`]s.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use super::{canonical_value, PatchError, VisualEdge, VisualGraph, VisualNode};

/// Box keys lifted out of the attribute map: identity, class, position, and
/// the nested patcher each land in a dedicated field.
const RESERVED_KEYS: [&str; 4] = ["id", "maxclass", "patching_rect", "patcher"];

/// Parses a patch document. The graph is rooted at the top-level `patcher`
/// object; boxes containing a nested patcher become nodes with a child graph.
pub fn parse_patch(content: &[u8]) -> Result<VisualGraph, PatchError> {
    let text = std::str::from_utf8(content)
        .map_err(|e| PatchError::MalformedPatch(format!("not UTF-8 text: {e}")))?;
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| PatchError::MalformedPatch(format!("not valid JSON: {e}")))?;
    let patcher = doc
        .get("patcher")
        .ok_or_else(|| PatchError::MalformedPatch("missing top-level `patcher` key".into()))?;
    parse_patcher(patcher)
}

fn parse_patcher(patcher: &Value) -> Result<VisualGraph, PatchError> {
    let obj = patcher
        .as_object()
        .ok_or_else(|| PatchError::MalformedPatch("`patcher` is not an object".into()))?;

    let mut nodes = Vec::new();
    let mut seen = BTreeSet::new();
    if let Some(boxes) = obj.get("boxes") {
        let boxes = boxes
            .as_array()
            .ok_or_else(|| PatchError::MalformedPatch("`boxes` is not an array".into()))?;
        for entry in boxes {
            let node = parse_box(entry)?;
            if !seen.insert(node.id.clone()) {
                return Err(PatchError::DuplicateNodeId(node.id));
            }
            nodes.push(node);
        }
    }

    let mut edges = Vec::new();
    if let Some(lines) = obj.get("lines") {
        let lines = lines
            .as_array()
            .ok_or_else(|| PatchError::MalformedPatch("`lines` is not an array".into()))?;
        for entry in lines {
            edges.push(parse_line(entry)?);
        }
    }
    for edge in &edges {
        for endpoint in [&edge.source_id, &edge.dest_id] {
            if !seen.contains(endpoint) {
                return Err(PatchError::MalformedPatch(format!(
                    "patchline references unknown box `{endpoint}`"
                )));
            }
        }
    }

    Ok(VisualGraph { nodes, edges })
}

fn parse_box(entry: &Value) -> Result<VisualNode, PatchError> {
    let body = entry
        .get("box")
        .and_then(Value::as_object)
        .ok_or_else(|| PatchError::MalformedPatch("box entry lacks a `box` object".into()))?;

    let id = body
        .get("id")
        .and_then(Value::as_str)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| PatchError::MalformedPatch("box lacks a non-empty `id`".into()))?
        .to_string();
    let class_name = body
        .get("maxclass")
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();

    let position = match body.get("patching_rect") {
        None => None,
        Some(v) => Some(parse_rect(v).ok_or_else(|| {
            PatchError::MalformedPatch(format!("box `{id}` has a malformed `patching_rect`"))
        })?),
    };

    let children = match body.get("patcher") {
        None => None,
        Some(nested) => Some(parse_patcher(nested)?),
    };

    let mut attributes = BTreeMap::new();
    for (key, value) in body {
        if RESERVED_KEYS.contains(&key.as_str()) {
            continue;
        }
        attributes.insert(key.clone(), canonical_value(value.clone()));
    }

    Ok(VisualNode {
        id,
        class_name,
        attributes,
        position,
        children,
    })
}

fn parse_rect(v: &Value) -> Option<[f64; 4]> {
    let arr = v.as_array()?;
    if arr.len() != 4 {
        return None;
    }
    let mut rect = [0.0; 4];
    for (slot, item) in rect.iter_mut().zip(arr) {
        *slot = item.as_f64()?;
    }
    Some(rect)
}

fn parse_line(entry: &Value) -> Result<VisualEdge, PatchError> {
    let body = entry
        .get("patchline")
        .and_then(Value::as_object)
        .ok_or_else(|| PatchError::MalformedPatch("line entry lacks a `patchline` object".into()))?;
    let (source_id, source_port) = parse_endpoint(body.get("source"), "source")?;
    let (dest_id, dest_port) = parse_endpoint(body.get("destination"), "destination")?;
    Ok(VisualEdge {
        source_id,
        source_port,
        dest_id,
        dest_port,
    })
}

fn parse_endpoint(v: Option<&Value>, which: &str) -> Result<(String, u32), PatchError> {
    let arr = v
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| {
            PatchError::MalformedPatch(format!("patchline `{which}` is not an [id, port] pair"))
        })?;
    let id = arr[0]
        .as_str()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| PatchError::MalformedPatch(format!("patchline `{which}` id is not a string")))?
        .to_string();
    let port = arr[1]
        .as_u64()
        .and_then(|p| u32::try_from(p).ok())
        .ok_or_else(|| {
            PatchError::MalformedPatch(format!("patchline `{which}` port is not a non-negative integer"))
        })?;
    Ok((id, port))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_two_box_patch() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-1","maxclass":"toggle"}},{"box":{"id":"obj-2","maxclass":"print"}}],"lines":[{"patchline":{"source":["obj-1",0],"destination":["obj-2",0]}}]}}"#;
        let g = parse_patch(content).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.nodes[0].id, "obj-1");
        assert_eq!(g.nodes[1].class_name, "print");
        assert_eq!(g.edges[0].source_id, "obj-1");
        assert_eq!(g.edges[0].dest_port, 0);
    }

    #[test]
    fn parses_empty_patcher() {
        let g = parse_patch(br#"{"patcher":{"boxes":[],"lines":[]}}"#).unwrap();
        assert_eq!(g.count_nodes(), 0);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn rejects_document_without_patcher() {
        let err = parse_patch(br#"{"notpatcher":{}}"#).unwrap_err();
        assert!(matches!(err, PatchError::MalformedPatch(_)));
    }

    #[test]
    fn rejects_duplicate_ids_at_one_level() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-1"}},{"box":{"id":"obj-1"}}]}}"#;
        match parse_patch(content).unwrap_err() {
            PatchError::DuplicateNodeId(id) => assert_eq!(id, "obj-1"),
            other => panic!("expected DuplicateNodeId, got {other:?}"),
        }
    }

    #[test]
    fn rejects_edge_to_unknown_box() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-1"}}],"lines":[{"patchline":{"source":["obj-1",0],"destination":["obj-9",0]}}]}}"#;
        assert!(matches!(
            parse_patch(content),
            Err(PatchError::MalformedPatch(_))
        ));
    }

    #[test]
    fn duplicate_ids_allowed_across_levels() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-1","maxclass":"newobj","patcher":{"boxes":[{"box":{"id":"obj-1","maxclass":"toggle"}}]}}}]}}"#;
        let g = parse_patch(content).unwrap();
        assert_eq!(g.count_nodes(), 2);
    }

    #[test]
    fn extracts_position_and_attributes_separately() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-1","maxclass":"newobj","text":"+ 1","patching_rect":[10.0,20.0,50.0,22.0],"numinlets":2}}]}}"#;
        let g = parse_patch(content).unwrap();
        let n = &g.nodes[0];
        assert_eq!(n.position, Some([10.0, 20.0, 50.0, 22.0]));
        assert!(!n.attributes.contains_key("patching_rect"));
        assert_eq!(n.attributes["text"], serde_json::json!("+ 1"));
        assert_eq!(n.attributes["numinlets"], serde_json::json!(2));
    }

    #[test]
    fn canonical_roundtrip_preserves_graph() {
        let content = br#"{"patcher":{"boxes":[{"box":{"id":"obj-2","maxclass":"print","zoom":1.0}},{"box":{"id":"obj-1","maxclass":"toggle","patching_rect":[1,2,3,4]}}],"lines":[{"patchline":{"source":["obj-1",0],"destination":["obj-2",1]}}]}}"#;
        let g = parse_patch(content).unwrap();
        let canon = serde_json::to_vec(&g.to_canonical_json()).unwrap();
        let g2 = parse_patch(&canon).unwrap();
        let ids = |g: &VisualGraph| {
            g.nodes
                .iter()
                .map(|n| n.id.clone())
                .collect::<std::collections::BTreeSet<_>>()
        };
        assert_eq!(ids(&g), ids(&g2));
        let mut e1 = g.edges.clone();
        let mut e2 = g2.edges.clone();
        e1.sort();
        e2.sort();
        assert_eq!(e1, e2);
        for (a, b) in g.nodes.iter().zip(&g2.nodes) {
            let b2 = g2.nodes.iter().find(|n| n.id == a.id).unwrap();
            assert_eq!(a.attributes, b2.attributes);
            let _ = b;
        }
    }
}
