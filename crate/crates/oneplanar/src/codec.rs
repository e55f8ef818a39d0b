//! JSON encoding of instances, drawings, and solutions.
//!
//! Planarization edges are encoded as `3*g + t` over graph edge indices,
//! with `t` 0 for an uncrossed edge and 1/2 for the half touching the lower
//! resp. higher endpoint. A dart is `[plan_edge, origin, 0]`. Dummy vertices
//! are `10^6 + k` for the `k`-th crossing pair. Serialization is canonical:
//! vertices and edges sorted, rotations in minimal cyclic form, so equal
//! values produce identical bytes.

use crate::drawing::{Dart, OnePlanarDrawing, PlanEdge};
use crate::graph::{EdgeId, Graph, VertexId, DUMMY_BASE};
use crate::instance::{ExtensionInstance, InstanceError, SbcrocInstance};
use crate::verify::min_rotation;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("drawing: {0}")]
    Drawing(#[from] crate::drawing::DrawingError),
}

type FileDart = (u64, u32, u32);

#[derive(Serialize, Deserialize, Debug, Clone)]
struct FileGraph {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct FileDrawing {
    crossings: Vec<(u32, u32)>,
    rotation: Vec<(u32, Vec<u64>)>,
    outer_face_dart: Option<FileDart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    nesting: Vec<(FileDart, FileDart)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    isolated: Vec<(u32, Option<FileDart>)>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct FileInstance {
    kind: String,
    graph: FileGraph,
    drawn_edges: Vec<u32>,
    drawing: FileDrawing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    occupied: Vec<FileDart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    x_walk: Vec<FileDart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    y_walk: Vec<FileDart>,
}

/// A parsed payload.
pub enum Parsed {
    Extension(ExtensionInstance),
    Sbcroc(SbcrocInstance),
    /// A full drawing of its graph (solution payloads).
    Solution(OnePlanarDrawing),
}

// ----------------------------------------------------------------------
// serialization
// ----------------------------------------------------------------------

struct EdgeIndex {
    /// normalized key -> canonical graph edge index
    by_key: BTreeMap<(VertexId, VertexId), u32>,
    /// canonical edge list (normalized, sorted)
    edges: Vec<(u32, u32)>,
}

fn index_graph(g: &Graph) -> EdgeIndex {
    let mut keys: Vec<(VertexId, VertexId)> = g.edge_ids().map(|e| g.edge_key(e)).collect();
    keys.sort();
    keys.dedup();
    let by_key: BTreeMap<_, _> = keys
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, i as u32))
        .collect();
    let edges = keys.iter().map(|&(a, b)| (a.0, b.0)).collect();
    EdgeIndex { by_key, edges }
}

fn encode_drawing(d: &OnePlanarDrawing, idx: &EdgeIndex) -> FileDrawing {
    // canonical dummy numbering over sorted crossing pairs
    let mut pairs: Vec<((VertexId, VertexId), (VertexId, VertexId), EdgeId)> = d
        .crossing_pairs()
        .iter()
        .map(|&(e, f)| {
            let (a, b) = (d.edge_key(e), d.edge_key(f));
            if a <= b {
                (a, b, e)
            } else {
                (b, a, e)
            }
        })
        .collect();
    pairs.sort();
    let dummy_file_id: BTreeMap<VertexId, u32> = pairs
        .iter()
        .enumerate()
        .map(|(k, &(_, _, e))| (d.dummy_of(e).unwrap(), DUMMY_BASE + k as u32))
        .collect();
    let map_v = |v: VertexId| -> u32 { *dummy_file_id.get(&v).unwrap_or(&v.0) };
    let map_pe = |pe: PlanEdge| -> u64 {
        let e = pe.base();
        let key = d.edge_key(e);
        let g = idx.by_key[&key] as u64;
        match pe {
            PlanEdge::Whole(_) => 3 * g,
            PlanEdge::HalfA(_) | PlanEdge::HalfB(_) => {
                let touched = match pe {
                    PlanEdge::HalfA(_) => d.endpoints(e).0,
                    _ => d.endpoints(e).1,
                };
                if touched == key.0 {
                    3 * g + 1
                } else {
                    3 * g + 2
                }
            }
        }
    };
    let map_dart = |dart: Dart| -> FileDart { (map_pe(dart.pe), map_v(dart.origin), 0) };

    let crossings: Vec<(u32, u32)> = pairs
        .iter()
        .map(|&(a, b, _)| (idx.by_key[&a], idx.by_key[&b]))
        .collect();
    let mut rotation: Vec<(u32, Vec<u64>)> = d
        .rotations()
        .iter()
        .map(|(&v, list)| {
            let pes: Vec<u64> = list.iter().map(|&pe| map_pe(pe)).collect();
            (map_v(v), min_rotation(&pes))
        })
        .collect();
    rotation.sort();
    let outer_face_dart = d.face_key(d.outer_face()).map(map_dart);
    // nesting: chain each face's walks to its minimal walk
    let mut nesting = Vec::new();
    for f in 0..d.view().faces.len() {
        let mut reps: Vec<Dart> = d.view().faces[f]
            .iter()
            .map(|&w| *d.view().walks[w].iter().min().unwrap())
            .collect();
        reps.sort();
        for r in reps.iter().skip(1) {
            nesting.push((map_dart(*r), map_dart(reps[0])));
        }
    }
    nesting.sort();
    let mut isolated: Vec<(u32, Option<FileDart>)> = d
        .isolated_vertices()
        .iter()
        .map(|(&v, &f)| {
            let host = if f == d.outer_face() {
                None
            } else {
                d.face_key(f).map(map_dart)
            };
            (v.0, host)
        })
        .collect();
    isolated.sort();
    FileDrawing {
        crossings,
        rotation,
        outer_face_dart,
        nesting,
        isolated,
    }
}

fn encode_common(kind: &str, g: &Graph, d: &OnePlanarDrawing) -> (FileInstance, EdgeIndex) {
    let idx = index_graph(g);
    let drawn: BTreeSet<u32> = d
        .edge_list()
        .iter()
        .map(|&(a, b)| {
            let key = if a <= b { (a, b) } else { (b, a) };
            idx.by_key[&key]
        })
        .collect();
    let file = FileInstance {
        kind: kind.into(),
        graph: FileGraph {
            vertices: g.vertices.iter().map(|v| v.0).collect(),
            edges: idx.edges.clone(),
        },
        drawn_edges: drawn.into_iter().collect(),
        drawing: encode_drawing(d, &idx),
        x: None,
        y: None,
        occupied: vec![],
        x_walk: vec![],
        y_walk: vec![],
    };
    (file, idx)
}

pub fn serialize_extension(inst: &ExtensionInstance) -> String {
    let (file, _) = encode_common("extension", &inst.graph, &inst.drawing);
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn serialize_sbcroc(inst: &SbcrocInstance) -> String {
    let (mut file, idx) = encode_common("sbcroc", &inst.graph, &inst.drawing);
    let d = &inst.drawing;
    file.x = Some(inst.x.0);
    file.y = Some(inst.y.0);
    let mut occ: Vec<FileDart> = inst
        .occupied
        .iter()
        .filter_map(|&f| d.face_key(f))
        .map(|dd| dart_to_file(d, &idx, dd))
        .collect();
    occ.sort();
    occ.dedup();
    file.occupied = occ;
    file.x_walk = inst.x_walk.iter().map(|&dd| dart_to_file(d, &idx, dd)).collect();
    file.y_walk = inst.y_walk.iter().map(|&dd| dart_to_file(d, &idx, dd)).collect();
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Serializes a full drawing (solution payload) against its own base graph.
pub fn serialize_solution(d: &OnePlanarDrawing) -> String {
    let (file, _) = encode_common("solution", &d.base_graph(), d);
    serde_json::to_string_pretty(&file).expect("serializable")
}

fn dart_to_file(d: &OnePlanarDrawing, idx: &EdgeIndex, dart: Dart) -> FileDart {
    let e = dart.pe.base();
    let key = d.edge_key(e);
    let g = idx.by_key[&key] as u64;
    let pe = match dart.pe {
        PlanEdge::Whole(_) => 3 * g,
        PlanEdge::HalfA(_) | PlanEdge::HalfB(_) => {
            let touched = match dart.pe {
                PlanEdge::HalfA(_) => d.endpoints(e).0,
                _ => d.endpoints(e).1,
            };
            if touched == key.0 {
                3 * g + 1
            } else {
                3 * g + 2
            }
        }
    };
    // dummy origins need canonical renumbering
    let origin = if dart.origin.is_dummy() {
        let mut pairs: Vec<((VertexId, VertexId), (VertexId, VertexId), EdgeId)> = d
            .crossing_pairs()
            .iter()
            .map(|&(e, f)| {
                let (a, b) = (d.edge_key(e), d.edge_key(f));
                if a <= b {
                    (a, b, e)
                } else {
                    (b, a, e)
                }
            })
            .collect();
        pairs.sort();
        let k = pairs
            .iter()
            .position(|&(_, _, e)| d.dummy_of(e) == Some(dart.origin))
            .expect("known dummy");
        DUMMY_BASE + k as u32
    } else {
        dart.origin.0
    };
    (pe, origin, 0)
}

// ----------------------------------------------------------------------
// parsing
// ----------------------------------------------------------------------

pub fn parse(text: &str) -> Result<Parsed, CodecError> {
    let file: FileInstance = serde_json::from_str(text)?;
    let graph = decode_graph(&file.graph)?;
    let (drawing, dart_map) = decode_drawing(&file, &graph)?;
    match file.kind.as_str() {
        "extension" => Ok(Parsed::Extension(ExtensionInstance::new(graph, drawing)?)),
        "solution" => {
            if drawing.base_graph().edge_set() != graph.edge_set()
                || drawing.base_graph().vertices != graph.vertices
            {
                return Err(CodecError::Schema(
                    "solution payload must draw the whole graph".into(),
                ));
            }
            Ok(Parsed::Solution(drawing))
        }
        "sbcroc" => {
            let x = VertexId(file.x.ok_or_else(|| CodecError::Schema("missing x".into()))?);
            let y = VertexId(file.y.ok_or_else(|| CodecError::Schema("missing y".into()))?);
            let occ: Vec<Dart> = file
                .occupied
                .iter()
                .map(|&fd| dart_map(fd))
                .collect::<Result<_, _>>()?;
            let xw: Vec<Dart> = file
                .x_walk
                .iter()
                .map(|&fd| dart_map(fd))
                .collect::<Result<_, _>>()?;
            let yw: Vec<Dart> = file
                .y_walk
                .iter()
                .map(|&fd| dart_map(fd))
                .collect::<Result<_, _>>()?;
            Ok(Parsed::Sbcroc(SbcrocInstance::new(
                graph, drawing, x, y, &occ, xw, yw,
            )?))
        }
        other => Err(CodecError::Schema(format!("unknown kind {other:?}"))),
    }
}

fn decode_graph(fg: &FileGraph) -> Result<Graph, CodecError> {
    let mut g = Graph::new();
    for &v in &fg.vertices {
        if v >= DUMMY_BASE {
            return Err(CodecError::Schema(format!(
                "vertex id {v} collides with dummy range"
            )));
        }
        g.vertices.insert(VertexId(v));
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in &fg.edges {
        if a == b {
            return Err(CodecError::Schema(format!("loop edge {a}")));
        }
        if !g.vertices.contains(&VertexId(a)) || !g.vertices.contains(&VertexId(b)) {
            return Err(CodecError::Schema(format!("edge {a}-{b} off vertex set")));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(CodecError::Schema(format!("duplicate edge {a}-{b}")));
        }
        g.edges.push((VertexId(a), VertexId(b)));
    }
    Ok(g)
}

type DartMapper = Box<dyn Fn(FileDart) -> Result<Dart, CodecError>>;

fn decode_drawing(
    file: &FileInstance,
    graph: &Graph,
) -> Result<(OnePlanarDrawing, DartMapper), CodecError> {
    let ne = graph.edges.len() as u32;
    for &g in &file.drawn_edges {
        if g >= ne {
            return Err(CodecError::Schema(format!("drawn edge {g} out of range")));
        }
    }
    let drawn: Vec<u32> = {
        let mut v = file.drawn_edges.clone();
        v.sort();
        v.dedup();
        v
    };
    // internal drawing edge k = drawn[k]
    let int_of_g: BTreeMap<u32, EdgeId> = drawn
        .iter()
        .enumerate()
        .map(|(k, &g)| (g, EdgeId(k as u32)))
        .collect();
    let edges: Vec<(VertexId, VertexId)> = drawn
        .iter()
        .map(|&g| graph.edges[g as usize])
        .collect();
    // crossings and dummies (file dummy k = k-th crossings entry)
    let mut crossings: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut dummy_of: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    let mut dummy_by_file: BTreeMap<u32, VertexId> = BTreeMap::new();
    for (k, &(ga, gb)) in file.drawing.crossings.iter().enumerate() {
        let (Some(&ea), Some(&eb)) = (int_of_g.get(&ga), int_of_g.get(&gb)) else {
            return Err(CodecError::Schema(format!(
                "crossing references undrawn edge {ga}/{gb}"
            )));
        };
        if crossings.contains_key(&ea) || crossings.contains_key(&eb) {
            return Err(CodecError::Schema("edge crossed twice".into()));
        }
        let dm = VertexId(DUMMY_BASE + k as u32);
        crossings.insert(ea, eb);
        crossings.insert(eb, ea);
        dummy_of.insert(ea, dm);
        dummy_of.insert(eb, dm);
        dummy_by_file.insert(DUMMY_BASE + k as u32, dm);
    }
    // plan-edge decoding needs endpoints; build a throwaway lookup
    let decode_pe = {
        let int_of_g = int_of_g.clone();
        let crossings = crossings.clone();
        let edges = edges.clone();
        move |fpe: u64| -> Result<PlanEdge, CodecError> {
            let g = (fpe / 3) as u32;
            let t = fpe % 3;
            let Some(&e) = int_of_g.get(&g) else {
                return Err(CodecError::Schema(format!(
                    "plan edge {fpe} references undrawn edge {g}"
                )));
            };
            match t {
                0 => {
                    if crossings.contains_key(&e) {
                        return Err(CodecError::Schema(format!(
                            "edge {g} is crossed; whole plan edge invalid"
                        )));
                    }
                    Ok(PlanEdge::Whole(e))
                }
                _ => {
                    if !crossings.contains_key(&e) {
                        return Err(CodecError::Schema(format!(
                            "edge {g} is uncrossed; half plan edge invalid"
                        )));
                    }
                    // t=1 touches the lower endpoint id, t=2 the higher;
                    // HalfA touches the stored first endpoint
                    let (a, b) = edges[e.0 as usize];
                    let touched = if t == 1 { a.min(b) } else { a.max(b) };
                    if touched == a {
                        Ok(PlanEdge::HalfA(e))
                    } else {
                        Ok(PlanEdge::HalfB(e))
                    }
                }
            }
        }
    };
    let decode_vertex = {
        let dummy_by_file = dummy_by_file.clone();
        move |v: u32| -> Result<VertexId, CodecError> {
            if v >= DUMMY_BASE {
                dummy_by_file
                    .get(&v)
                    .copied()
                    .ok_or_else(|| CodecError::Schema(format!("unknown dummy {v}")))
            } else {
                Ok(VertexId(v))
            }
        }
    };
    let decode_dart = {
        let decode_pe = decode_pe.clone();
        let decode_vertex = decode_vertex.clone();
        move |fd: FileDart| -> Result<Dart, CodecError> {
            Ok(Dart {
                pe: decode_pe(fd.0)?,
                origin: decode_vertex(fd.1)?,
            })
        }
    };

    let mut rot: BTreeMap<VertexId, Vec<PlanEdge>> = BTreeMap::new();
    for (v, list) in &file.drawing.rotation {
        let vid = decode_vertex(*v)?;
        let pes: Vec<PlanEdge> = list
            .iter()
            .map(|&f| decode_pe(f))
            .collect::<Result<_, _>>()?;
        if rot.insert(vid, pes).is_some() {
            return Err(CodecError::Schema(format!("duplicate rotation for {v}")));
        }
    }
    // drawn vertex set: endpoints of drawn edges plus declared isolated
    let mut verts: BTreeSet<VertexId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut isolated_hosts: BTreeMap<VertexId, Option<Dart>> = BTreeMap::new();
    for &(v, host) in &file.drawing.isolated {
        let vid = VertexId(v);
        if !graph.vertices.contains(&vid) {
            return Err(CodecError::Schema(format!("isolated vertex {v} unknown")));
        }
        verts.insert(vid);
        let hd = match host {
            None => None,
            Some(fd) => Some(decode_dart(fd)?),
        };
        isolated_hosts.insert(vid, hd);
    }
    let isolated_verts: BTreeSet<VertexId> = verts
        .iter()
        .copied()
        .filter(|v| !rot.contains_key(v))
        .collect();
    for v in &isolated_verts {
        isolated_hosts.entry(*v).or_insert(None);
    }
    let nesting: Vec<(Dart, Dart)> = file
        .drawing
        .nesting
        .iter()
        .map(|&(a, b)| Ok((decode_dart(a)?, decode_dart(b)?)))
        .collect::<Result<_, CodecError>>()?;
    let outer = match file.drawing.outer_face_dart {
        Some(fd) => decode_dart(fd)?,
        None => {
            if !rot.is_empty() {
                return Err(CodecError::Schema("missing outer_face_dart".into()));
            }
            Dart {
                origin: VertexId(0),
                pe: PlanEdge::Whole(EdgeId(0)),
            }
        }
    };

    let mut d = OnePlanarDrawing {
        verts,
        edges,
        crossings,
        dummy_of,
        rot,
        groups: vec![vec![]],
        outer_group: 0,
        isolated: BTreeMap::new(),
        view: crate::drawing::PlaneView {
            walks: vec![],
            walk_of: BTreeMap::new(),
            faces: vec![vec![]],
            face_of_walk: vec![],
            outer_face: 0,
        },
    };
    if d.rot.is_empty() {
        d.isolated = isolated_verts.iter().map(|&v| (v, 0)).collect();
        d.view = d.trace().map_err(CodecError::Drawing)?;
    } else {
        d.group_walks(outer, &nesting, &isolated_hosts, &isolated_verts)
            .map_err(CodecError::Drawing)?;
    }
    let report = d.validate_one_planar();
    if !report.is_empty() {
        return Err(CodecError::Instance(InstanceError::InvalidDrawing(report)));
    }
    Ok((d, Box::new(decode_dart)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil;

    #[test]
    fn extension_roundtrip_is_canonical() {
        let d = testutil::k4();
        let mut g = d.base_graph();
        let v = VertexId(4);
        g.vertices.insert(v);
        for u in 0..4 {
            g.add_edge(v, VertexId(u));
        }
        let inst = ExtensionInstance::new(g, d).unwrap();
        let s1 = serialize_extension(&inst);
        let Parsed::Extension(inst2) = parse(&s1).unwrap() else {
            panic!("wrong kind");
        };
        let s2 = serialize_extension(&inst2);
        assert_eq!(s1, s2);
        assert_eq!(inst.drawing.signature(), inst2.drawing.signature());
        assert_eq!(inst.kappa, inst2.kappa);
    }

    #[test]
    fn solution_roundtrip_with_crossing() {
        use crate::drawing::{Anchor, SplitChoice};
        let d = testutil::c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        let crossed = d.view().faces[inner]
            .iter()
            .flat_map(|&w| d.view().walks[w].iter().copied())
            .find(|dd| dd.pe == PlanEdge::Whole(EdgeId(1)))
            .unwrap();
        let (d2, _) = d
            .insert_crossing_edge(
                Anchor::Corner(cu),
                crossed,
                Anchor::Floating(VertexId(9)),
                &SplitChoice::plain(),
                &SplitChoice::plain(),
            )
            .unwrap();
        let s1 = serialize_solution(&d2);
        let Parsed::Solution(d3) = parse(&s1).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(d2.signature(), d3.signature());
        assert_eq!(serialize_solution(&d3), s1);
    }

    #[test]
    fn nested_components_roundtrip() {
        use crate::drawing::{Anchor, SplitChoice};
        let d = testutil::c4();
        let inner = 1 - d.outer_face();
        let (d2, _) = d
            .insert_edge_in_face(
                inner,
                Anchor::Floating(VertexId(7)),
                Anchor::Floating(VertexId(8)),
                &SplitChoice::plain(),
            )
            .unwrap();
        let s1 = serialize_solution(&d2);
        let Parsed::Solution(d3) = parse(&s1).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(d2.signature(), d3.signature());
    }

    #[test]
    fn bad_payloads_rejected() {
        assert!(parse("{").is_err());
        assert!(parse(r#"{"kind":"nope","graph":{"vertices":[],"edges":[]},"drawn_edges":[],"drawing":{"crossings":[],"rotation":[],"outer_face_dart":null}}"#).is_err());
    }
}
