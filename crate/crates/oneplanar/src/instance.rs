//! Problem-instance types for drawing extension and the two-vertex routing
//! subproblem, with structural validation.

use crate::drawing::{Dart, OnePlanarDrawing};
use crate::graph::{Graph, VertexId};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("drawing invalid: {0:?}")]
    InvalidDrawing(Vec<String>),
    #[error("drawn graph is not a subgraph of the instance graph")]
    NotASubgraph,
    #[error("added vertex {0:?} has no incident added edge")]
    IsolatedAddedVertex(VertexId),
    #[error("edge {0:?}-{1:?} must have exactly one marked endpoint")]
    MarkingViolation(VertexId, VertexId),
    #[error("drawn graph must span all vertices")]
    NotSpanning,
    #[error("drawn graph must be connected")]
    NotConnected,
    #[error("walk is broken at position {0}")]
    MalformedWalk(usize),
    #[error("walk dart {0:?} does not bound a cell with {1:?} on its boundary")]
    WalkCellMismatch(Dart, VertexId),
    #[error("unknown dart {0:?}")]
    UnknownDart(Dart),
    #[error("{0}")]
    Other(String),
}

/// Extension instance: a graph `G` and a drawing of a subgraph `H`.
#[derive(Clone, Debug)]
pub struct ExtensionInstance {
    pub graph: Graph,
    pub drawing: OnePlanarDrawing,
    pub v_add: BTreeSet<VertexId>,
    pub e_add: Vec<(VertexId, VertexId)>,
    pub e_add_h: Vec<(VertexId, VertexId)>,
    pub kappa: usize,
    pub h_connected: bool,
}

impl ExtensionInstance {
    pub fn new(graph: Graph, drawing: OnePlanarDrawing) -> Result<Self, InstanceError> {
        let report = drawing.validate_one_planar();
        if !report.is_empty() {
            return Err(InstanceError::InvalidDrawing(report));
        }
        let h = drawing.base_graph();
        if !h.is_subgraph_of(&graph) {
            return Err(InstanceError::NotASubgraph);
        }
        let h_edges = h.edge_set();
        let v_add: BTreeSet<VertexId> = graph
            .vertices
            .iter()
            .copied()
            .filter(|v| !h.vertices.contains(v))
            .collect();
        let mut e_add = Vec::new();
        let mut e_add_h = Vec::new();
        for e in graph.edge_ids() {
            let key = graph.edge_key(e);
            if !h_edges.contains(&key) {
                e_add.push(key);
                if !v_add.contains(&key.0) && !v_add.contains(&key.1) {
                    e_add_h.push(key);
                }
            }
        }
        for &v in &v_add {
            let touched = e_add.iter().any(|&(a, b)| a == v || b == v);
            if !touched {
                return Err(InstanceError::IsolatedAddedVertex(v));
            }
        }
        let kappa = v_add.len() + e_add_h.len();
        let h_connected = h.is_connected();
        Ok(ExtensionInstance {
            graph,
            drawing,
            v_add,
            e_add,
            e_add_h,
            kappa,
            h_connected,
        })
    }
}

/// Untangled instance: all vertices drawn, every missing edge has exactly one
/// marked endpoint, and missing edges may not cross each other.
#[derive(Clone, Debug)]
pub struct UntangledInstance {
    pub graph: Graph,
    pub drawing: OnePlanarDrawing,
    pub marked: BTreeSet<VertexId>,
}

impl UntangledInstance {
    pub fn new(
        graph: Graph,
        drawing: OnePlanarDrawing,
        marked: BTreeSet<VertexId>,
    ) -> Result<Self, InstanceError> {
        let report = drawing.validate_one_planar();
        if !report.is_empty() {
            return Err(InstanceError::InvalidDrawing(report));
        }
        let h = drawing.base_graph();
        if !h.is_subgraph_of(&graph) {
            return Err(InstanceError::NotASubgraph);
        }
        if h.vertices != graph.vertices {
            return Err(InstanceError::NotSpanning);
        }
        if !h.is_connected() {
            return Err(InstanceError::NotConnected);
        }
        let h_edges = h.edge_set();
        for e in graph.edge_ids() {
            let (a, b) = graph.edge_key(e);
            if h_edges.contains(&(a, b)) {
                continue;
            }
            let m = marked.contains(&a) as u8 + marked.contains(&b) as u8;
            if m != 1 {
                return Err(InstanceError::MarkingViolation(a, b));
            }
        }
        Ok(UntangledInstance {
            graph,
            drawing,
            marked,
        })
    }

    pub fn missing_edges(&self) -> Vec<(VertexId, VertexId)> {
        let h_edges = self.drawing.base_graph().edge_set();
        self.graph
            .edge_ids()
            .map(|e| self.graph.edge_key(e))
            .filter(|k| !h_edges.contains(k))
            .collect()
    }
}

/// Two-vertex routing instance: a spanning connected drawn subgraph `T` of
/// `S`, distinguished vertices `x`,`y`, occupied cells, and prescribed walks
/// limiting which drawn edges each side may cross.
#[derive(Clone, Debug)]
pub struct SbcrocInstance {
    pub graph: Graph,
    pub drawing: OnePlanarDrawing,
    pub x: VertexId,
    pub y: VertexId,
    /// Occupied cells by face index of `drawing`.
    pub occupied: BTreeSet<usize>,
    pub x_walk: Vec<Dart>,
    pub y_walk: Vec<Dart>,
}

impl SbcrocInstance {
    pub fn new(
        graph: Graph,
        drawing: OnePlanarDrawing,
        x: VertexId,
        y: VertexId,
        occupied_reps: &[Dart],
        x_walk: Vec<Dart>,
        y_walk: Vec<Dart>,
    ) -> Result<Self, InstanceError> {
        let report = drawing.validate_one_planar();
        if !report.is_empty() {
            return Err(InstanceError::InvalidDrawing(report));
        }
        let t = drawing.base_graph();
        if !t.is_subgraph_of(&graph) {
            return Err(InstanceError::NotASubgraph);
        }
        if t.vertices != graph.vertices {
            return Err(InstanceError::NotSpanning);
        }
        if !t.is_connected() {
            return Err(InstanceError::NotConnected);
        }
        let t_edges = t.edge_set();
        for e in graph.edge_ids() {
            let (a, b) = graph.edge_key(e);
            if t_edges.contains(&(a, b)) {
                continue;
            }
            let m = (a == x || a == y) as u8 + (b == x || b == y) as u8;
            if m != 1 {
                return Err(InstanceError::MarkingViolation(a, b));
            }
        }
        let mut occupied = BTreeSet::new();
        for &d in occupied_reps {
            let Some(f) = drawing.face_by_key(d) else {
                return Err(InstanceError::UnknownDart(d));
            };
            occupied.insert(f);
        }
        for (walk, owner) in [(&x_walk, x), (&y_walk, y)] {
            validate_walk(&drawing, walk, owner)?;
        }
        Ok(SbcrocInstance {
            graph,
            drawing,
            x,
            y,
            occupied,
            x_walk,
            y_walk,
        })
    }

    /// Added-edge neighbors of `v` (one of `x`,`y`).
    pub fn added_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let t_edges = self.drawing.base_graph().edge_set();
        let mut out: Vec<VertexId> = self
            .graph
            .edge_ids()
            .map(|e| self.graph.edge_key(e))
            .filter(|k| !t_edges.contains(k))
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Cells along the walk of `v` (all have `v` on their boundary).
    pub fn starting_cells(&self, v: VertexId) -> BTreeSet<usize> {
        let walk = if v == self.x { &self.x_walk } else { &self.y_walk };
        let mut cells: BTreeSet<usize> = walk
            .iter()
            .map(|&d| self.drawing.view().face_of_dart(d))
            .collect();
        // cells at v whose boundary stretch is empty still count
        if let Some(list) = self.drawing.rotation(v) {
            for &pe in list {
                cells.insert(self.drawing.corner_face(Dart { origin: v, pe }));
            }
        }
        cells
    }
}

fn validate_walk(
    drawing: &OnePlanarDrawing,
    walk: &[Dart],
    owner: VertexId,
) -> Result<(), InstanceError> {
    let mut seen = BTreeSet::new();
    for (i, &d) in walk.iter().enumerate() {
        if !drawing.view().walk_of.contains_key(&d) {
            return Err(InstanceError::UnknownDart(d));
        }
        if !seen.insert(d) {
            return Err(InstanceError::MalformedWalk(i));
        }
        let f = drawing.view().face_of_dart(d);
        let on_boundary = drawing.view().faces[f]
            .iter()
            .flat_map(|&w| drawing.view().walks[w].iter())
            .any(|dd| dd.origin == owner);
        if !on_boundary {
            return Err(InstanceError::WalkCellMismatch(d, owner));
        }
    }
    Ok(())
}

/// The canonical walk along the boundaries of all cells incident to `v`,
/// avoiding `v` itself: for each corner of `v` in rotation order, the stretch
/// of that cell's boundary between the two incident `v`-darts. Darts are
/// oriented with the cell on their own side.
pub fn boundary_walk_avoiding(drawing: &OnePlanarDrawing, v: VertexId) -> Vec<Dart> {
    let Some(list) = drawing.rotation(v) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &pe in list {
        let corner = Dart { origin: v, pe };
        // the walk leaves v along the corner's rotation successor
        let start = drawing.walk_next(drawing.rot_next(corner));
        let mut d = start;
        loop {
            if d.origin == v || drawing.twin(d).origin == v {
                break;
            }
            out.push(d);
            d = drawing.walk_next(d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil;
    use crate::graph::EdgeId;

    #[test]
    fn extension_instance_derives_kappa() {
        let d = testutil::c4();
        let mut g = d.base_graph();
        let v = VertexId(4);
        g.vertices.insert(v);
        for u in 0..4 {
            g.add_edge(v, VertexId(u));
        }
        let inst = ExtensionInstance::new(g, d).unwrap();
        assert_eq!(inst.kappa, 1);
        assert_eq!(inst.v_add.len(), 1);
        assert_eq!(inst.e_add.len(), 4);
        assert!(inst.e_add_h.is_empty());
        assert!(inst.h_connected);
    }

    #[test]
    fn isolated_added_vertex_rejected() {
        let d = testutil::c4();
        let mut g = d.base_graph();
        g.vertices.insert(VertexId(9));
        let err = ExtensionInstance::new(g, d).unwrap_err();
        assert!(matches!(err, InstanceError::IsolatedAddedVertex(_)));
    }

    #[test]
    fn boundary_walk_covers_incident_cells() {
        let d = testutil::k4();
        // walk around vertex 3 (inner vertex of K4): must cover the three
        // outer-triangle edges, one per incident cell
        let walk = boundary_walk_avoiding(&d, VertexId(3));
        assert_eq!(walk.len(), 3);
        for dart in &walk {
            let e = dart.pe.base();
            assert!(e == EdgeId(0) || e == EdgeId(1) || e == EdgeId(2));
        }
    }
}
