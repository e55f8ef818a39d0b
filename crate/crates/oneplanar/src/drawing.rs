//! Combinatorial 1-planar drawings via planarizations.
//!
//! A drawing stores the drawn (base) graph, the set of crossing pairs, and a
//! rotation system over the planarization: real vertices plus one degree-4
//! dummy per crossing. Faces are traced as orbits of `d -> rot_next(twin(d))`
//! (this convention is fixed here and used everywhere). Because drawings of
//! disconnected graphs are not determined by rotations alone, a face may be
//! bounded by several walks; the grouping of walks into faces ("nesting") and
//! the outer face are explicit instance data.

use crate::graph::{EdgeId, Graph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// An edge of the planarization: either an uncrossed base edge, or one of the
/// two halves of a crossed base edge. `HalfA` touches the first stored
/// endpoint of the base edge, `HalfB` the second; both touch the dummy.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlanEdge {
    Whole(EdgeId),
    HalfA(EdgeId),
    HalfB(EdgeId),
}

impl PlanEdge {
    pub fn base(self) -> EdgeId {
        match self {
            PlanEdge::Whole(e) | PlanEdge::HalfA(e) | PlanEdge::HalfB(e) => e,
        }
    }
}

impl fmt::Debug for PlanEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanEdge::Whole(e) => write!(f, "w{}", e.0),
            PlanEdge::HalfA(e) => write!(f, "a{}", e.0),
            PlanEdge::HalfB(e) => write!(f, "b{}", e.0),
        }
    }
}

/// A dart (directed planarization edge), identified by its origin and edge.
/// The planarization is always simple, so this pair is unique.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub origin: VertexId,
    pub pe: PlanEdge,
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.pe, self.origin)
    }
}

/// Where an edge endpoint attaches during insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Anchor {
    /// Existing vertex, at the face corner between `c` and its rotation
    /// successor. The corner's face must be the insertion face.
    Corner(Dart),
    /// Existing degree-0 vertex hosted in the insertion face.
    Isolated(VertexId),
    /// Vertex not drawn yet; it is placed strictly inside the face.
    Floating(VertexId),
}

impl Anchor {
    pub fn vertex(self) -> VertexId {
        match self {
            Anchor::Corner(c) => c.origin,
            Anchor::Isolated(v) | Anchor::Floating(v) => v,
        }
    }
}

/// Item that must be assigned to one side when a face is split by a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NestItem {
    /// Another walk of the split face, by canonical representative dart.
    Walk(Dart),
    /// An isolated vertex hosted in the split face.
    Iso(VertexId),
}

/// Choices resolving the ambiguities of one face split: which side each
/// nested item lands on (`true` = the side whose walk contains the new dart
/// at the first endpoint), and which side stays outer when the outer face is
/// split.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitChoice {
    pub nest: BTreeMap<NestItem, bool>,
    pub outer_with_u: Option<bool>,
}

impl SplitChoice {
    pub fn plain() -> Self {
        Self::default()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DrawingError {
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("dangling dart: {0}")]
    DanglingDart(String),
    #[error("anchor not on face boundary: {0}")]
    NotOnBoundary(String),
    #[error("edge is already crossed")]
    EdgeAlreadyCrossed,
    #[error("crossing edges would share an endpoint")]
    AdjacentCrossing,
    #[error("loop edges are rejected")]
    LoopEdge,
    #[error("edge already present")]
    DuplicateEdge,
    #[error("not a subgraph")]
    NotASubgraph,
    #[error("missing split choice: {0}")]
    MissingChoice(String),
    #[error("vertex state mismatch: {0}")]
    VertexState(String),
}

type Result<T> = std::result::Result<T, DrawingError>;

/// Traced face structure of a drawing's planarization.
#[derive(Clone, Debug)]
pub struct PlaneView {
    /// Orbit walks of `d -> rot_next(twin(d))`, each a cyclic dart sequence.
    pub walks: Vec<Vec<Dart>>,
    pub walk_of: BTreeMap<Dart, usize>,
    /// Face = set of walk indices (usually one; several for nested components).
    pub faces: Vec<Vec<usize>>,
    pub face_of_walk: Vec<usize>,
    pub outer_face: usize,
}

impl PlaneView {
    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.face_of_walk[self.walk_of[&d]]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

/// A cell of the drawing: one face of the planarization together with its
/// boundary walks and the vertex occurrence list.
#[derive(Clone, Debug)]
pub struct Cell {
    pub face: usize,
    pub boundary: Vec<Vec<Dart>>,
    pub boundary_vertices: Vec<VertexId>,
}

/// A 1-planar drawing of its own base graph.
#[derive(Clone)]
pub struct OnePlanarDrawing {
    pub(crate) verts: BTreeSet<VertexId>,
    pub(crate) edges: Vec<(VertexId, VertexId)>,
    pub(crate) crossings: BTreeMap<EdgeId, EdgeId>,
    pub(crate) dummy_of: BTreeMap<EdgeId, VertexId>,
    /// Clockwise rotation per planarization vertex (reals and dummies).
    pub(crate) rot: BTreeMap<VertexId, Vec<PlanEdge>>,
    /// Face groups: one representative dart per member walk. A single empty
    /// group encodes the all-of-plane face of an edgeless drawing.
    pub(crate) groups: Vec<Vec<Dart>>,
    pub(crate) outer_group: usize,
    /// Degree-0 real vertices, by hosting face.
    pub(crate) isolated: BTreeMap<VertexId, usize>,
    pub(crate) view: PlaneView,
}

impl fmt::Debug for OnePlanarDrawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OnePlanarDrawing")
            .field("verts", &self.verts)
            .field("edges", &self.edges)
            .field("crossings", &self.crossings)
            .field("faces", &self.view.faces.len())
            .finish()
    }
}

impl OnePlanarDrawing {
    // ----------------------------------------------------------------
    // construction
    // ----------------------------------------------------------------

    /// Drawing of a single isolated vertex.
    pub fn single_vertex(v: VertexId) -> Self {
        let mut d = OnePlanarDrawing {
            verts: [v].into_iter().collect(),
            edges: Vec::new(),
            crossings: BTreeMap::new(),
            dummy_of: BTreeMap::new(),
            rot: BTreeMap::new(),
            groups: vec![vec![]],
            outer_group: 0,
            isolated: [(v, 0)].into_iter().collect(),
            view: PlaneView {
                walks: vec![],
                walk_of: BTreeMap::new(),
                faces: vec![vec![]],
                face_of_walk: vec![],
                outer_face: 0,
            },
        };
        d.view = d.trace().expect("single vertex traces");
        d
    }

    /// Builds a crossing-free plane drawing from per-vertex clockwise
    /// rotations (cyclic incident-edge lists). The outer face is the one
    /// containing `outer_hint`. Fails on rotation inconsistencies.
    ///
    /// For disconnected graphs `nesting` must place every walk: each entry
    /// unions the faces of the two named darts (walks of distinct components
    /// that co-bound a region); `isolated_hosts` places degree-0 vertices by
    /// a dart of some walk on their face (or `None` for the outer face).
    pub fn from_rotations(
        vertices: &BTreeSet<VertexId>,
        edges: &[(VertexId, VertexId)],
        rotations: &BTreeMap<VertexId, Vec<EdgeId>>,
        outer_hint: Dart,
        nesting: &[(Dart, Dart)],
        isolated_hosts: &BTreeMap<VertexId, Option<Dart>>,
    ) -> Result<Self> {
        let mut rot: BTreeMap<VertexId, Vec<PlanEdge>> = BTreeMap::new();
        for (&v, list) in rotations {
            if !vertices.contains(&v) {
                return Err(DrawingError::MalformedRotation(format!(
                    "rotation for undeclared vertex {v:?}"
                )));
            }
            let mut seen = BTreeSet::new();
            for &e in list {
                let Some(&(a, b)) = edges.get(e.0 as usize) else {
                    return Err(DrawingError::MalformedRotation(format!(
                        "unknown edge {e:?} at {v:?}"
                    )));
                };
                if a != v && b != v {
                    return Err(DrawingError::MalformedRotation(format!(
                        "edge {e:?} in rotation of non-endpoint {v:?}"
                    )));
                }
                if !seen.insert(e) {
                    return Err(DrawingError::MalformedRotation(format!(
                        "edge {e:?} duplicated at {v:?}"
                    )));
                }
            }
            rot.insert(v, list.iter().map(|&e| PlanEdge::Whole(e)).collect());
        }
        // every edge must appear exactly once at each endpoint
        for (i, &(a, b)) in edges.iter().enumerate() {
            let e = EdgeId(i as u32);
            if a == b {
                return Err(DrawingError::LoopEdge);
            }
            for v in [a, b] {
                let present = rot
                    .get(&v)
                    .map(|l| l.contains(&PlanEdge::Whole(e)))
                    .unwrap_or(false);
                if !present {
                    return Err(DrawingError::DanglingDart(format!(
                        "edge {e:?} missing from rotation of {v:?}"
                    )));
                }
            }
        }
        let isolated_verts: BTreeSet<VertexId> = vertices
            .iter()
            .copied()
            .filter(|v| !rot.contains_key(v))
            .collect();

        let mut d = OnePlanarDrawing {
            verts: vertices.clone(),
            edges: edges.to_vec(),
            crossings: BTreeMap::new(),
            dummy_of: BTreeMap::new(),
            rot,
            groups: Vec::new(),
            outer_group: 0,
            isolated: BTreeMap::new(),
            view: PlaneView {
                walks: vec![],
                walk_of: BTreeMap::new(),
                faces: vec![],
                face_of_walk: vec![],
                outer_face: 0,
            },
        };
        d.group_walks(outer_hint, nesting, isolated_hosts, &isolated_verts)?;
        Ok(d)
    }

    /// Rebuilds walk groups from explicit nesting data; used by
    /// `from_rotations` and by the instance codec (which also supplies
    /// crossings by mutating `crossings`/`dummy_of` before calling this).
    pub(crate) fn group_walks(
        &mut self,
        outer_hint: Dart,
        nesting: &[(Dart, Dart)],
        isolated_hosts: &BTreeMap<VertexId, Option<Dart>>,
        isolated_verts: &BTreeSet<VertexId>,
    ) -> Result<()> {
        let walks = self.orbit_walks()?;
        let walk_of: BTreeMap<Dart, usize> = walks
            .iter()
            .enumerate()
            .flat_map(|(i, w)| w.iter().map(move |&d| (d, i)))
            .collect();
        // union-find over walks
        let mut parent: Vec<usize> = (0..walks.len()).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in nesting {
            let (Some(&wa), Some(&wb)) = (walk_of.get(&a), walk_of.get(&b)) else {
                return Err(DrawingError::DanglingDart(format!(
                    "nesting references unknown dart {a:?}/{b:?}"
                )));
            };
            let (ra, rb) = (find(&mut parent, wa), find(&mut parent, wb));
            parent[ra] = rb;
        }
        let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut groups: Vec<Vec<Dart>> = Vec::new();
        for w in 0..walks.len() {
            let r = find(&mut parent, w);
            let g = *class_of.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(walks[w][0]);
        }
        if groups.is_empty() {
            groups.push(vec![]);
        }
        let outer_group = if walks.is_empty() {
            0
        } else {
            let Some(&w) = walk_of.get(&outer_hint) else {
                return Err(DrawingError::DanglingDart(format!(
                    "outer hint {outer_hint:?} is not a dart"
                )));
            };
            let r = find(&mut parent, w);
            class_of[&r]
        };
        let mut isolated = BTreeMap::new();
        for &v in isolated_verts {
            let host = match isolated_hosts.get(&v) {
                Some(&Some(d)) => {
                    let Some(&w) = walk_of.get(&d) else {
                        return Err(DrawingError::DanglingDart(format!(
                            "isolated host {d:?} is not a dart"
                        )));
                    };
                    let r = find(&mut parent, w);
                    class_of[&r]
                }
                _ => outer_group,
            };
            isolated.insert(v, host);
        }
        self.groups = groups;
        self.outer_group = outer_group;
        self.isolated = isolated;
        self.view = self.trace()?;
        Ok(())
    }

    // ----------------------------------------------------------------
    // basic accessors
    // ----------------------------------------------------------------

    pub fn base_graph(&self) -> Graph {
        Graph {
            vertices: self.verts.clone(),
            edges: self.edges.clone(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.verts
    }

    pub fn edge_list(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0 as usize]
    }

    pub fn edge_key(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (u, v) = self.endpoints(e);
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .map(|i| EdgeId(i as u32))
    }

    pub fn crossings(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.crossings
    }

    pub fn crossing_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        self.crossings
            .iter()
            .filter(|(e, f)| e < f)
            .map(|(&e, &f)| (e, f))
            .collect()
    }

    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.crossings.contains_key(&e)
    }

    pub fn dummy_of(&self, e: EdgeId) -> Option<VertexId> {
        self.dummy_of.get(&e).copied()
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[PlanEdge]> {
        self.rot.get(&v).map(|r| r.as_slice())
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<PlanEdge>> {
        &self.rot
    }

    pub fn isolated_vertices(&self) -> &BTreeMap<VertexId, usize> {
        &self.isolated
    }

    pub fn view(&self) -> &PlaneView {
        &self.view
    }

    pub fn outer_face(&self) -> usize {
        self.outer_group
    }

    /// Endpoints of a planarization edge; dummies appear for halves.
    pub fn pe_endpoints(&self, pe: PlanEdge) -> (VertexId, VertexId) {
        match pe {
            PlanEdge::Whole(e) => self.endpoints(e),
            PlanEdge::HalfA(e) => (self.endpoints(e).0, self.dummy_of[&e]),
            PlanEdge::HalfB(e) => (self.dummy_of[&e], self.endpoints(e).1),
        }
    }

    pub fn pe_other(&self, pe: PlanEdge, v: VertexId) -> VertexId {
        let (a, b) = self.pe_endpoints(pe);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn twin(&self, d: Dart) -> Dart {
        Dart {
            origin: self.pe_other(d.pe, d.origin),
            pe: d.pe,
        }
    }

    pub fn rot_next(&self, d: Dart) -> Dart {
        let list = &self.rot[&d.origin];
        let i = list
            .iter()
            .position(|&pe| pe == d.pe)
            .expect("dart in rotation");
        Dart {
            origin: d.origin,
            pe: list[(i + 1) % list.len()],
        }
    }

    /// Face-walk successor: `rot_next(twin(d))`.
    pub fn walk_next(&self, d: Dart) -> Dart {
        self.rot_next(self.twin(d))
    }

    /// Face of the corner between `c` and its rotation successor at
    /// `c.origin`.
    pub fn corner_face(&self, c: Dart) -> usize {
        self.view.face_of_dart(self.rot_next(c))
    }

    pub fn all_darts(&self) -> Vec<Dart> {
        let mut out = Vec::new();
        for (&v, list) in &self.rot {
            for &pe in list {
                out.push(Dart { origin: v, pe });
            }
        }
        out
    }

    /// All corners of `v` whose face is `face`.
    pub fn corners_on_face(&self, v: VertexId, face: usize) -> Vec<Dart> {
        match self.rot.get(&v) {
            None => vec![],
            Some(list) => list
                .iter()
                .map(|&pe| Dart { origin: v, pe })
                .filter(|&c| self.corner_face(c) == face)
                .collect(),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..self.view.faces.len()).map(|f| self.cell(f)).collect()
    }

    pub fn cell(&self, face: usize) -> Cell {
        let boundary: Vec<Vec<Dart>> = self.view.faces[face]
            .iter()
            .map(|&w| self.view.walks[w].clone())
            .collect();
        let boundary_vertices = boundary.iter().flatten().map(|d| d.origin).collect();
        Cell {
            face,
            boundary,
            boundary_vertices,
        }
    }

    /// Stable face identity: the minimal dart over the face's walks, or None
    /// for the all-of-plane face of an edgeless drawing.
    pub fn face_key(&self, face: usize) -> Option<Dart> {
        self.view.faces[face]
            .iter()
            .flat_map(|&w| self.view.walks[w].iter().copied())
            .min()
    }

    pub fn face_by_key(&self, key: Dart) -> Option<usize> {
        self.view.walk_of.get(&key).map(|&w| self.view.face_of_walk[w])
    }

    /// One dual edge per planarization edge, joining the faces on its two
    /// sides (loops for bridges).
    pub fn dual_graph(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for d in self.all_darts() {
            if !seen.insert(d.pe) {
                continue;
            }
            let f1 = self.view.face_of_dart(d);
            let f2 = self.view.face_of_dart(self.twin(d));
            out.push((f1.min(f2), f1.max(f2)));
        }
        out.sort();
        out
    }

    // ----------------------------------------------------------------
    // face tracing
    // ----------------------------------------------------------------

    pub(crate) fn orbit_walks(&self) -> Result<Vec<Vec<Dart>>> {
        // check rotation sanity enough to avoid panics
        for (&v, list) in &self.rot {
            let mut seen = BTreeSet::new();
            for &pe in list {
                let (a, b) = self.pe_endpoints(pe);
                if a != v && b != v {
                    return Err(DrawingError::MalformedRotation(format!(
                        "{pe:?} at non-endpoint {v:?}"
                    )));
                }
                if !seen.insert(pe) {
                    return Err(DrawingError::MalformedRotation(format!(
                        "{pe:?} duplicated at {v:?}"
                    )));
                }
            }
        }
        let all = self.all_darts();
        for &d in &all {
            let t = self.twin(d);
            let ok = self
                .rot
                .get(&t.origin)
                .map(|l| l.contains(&t.pe))
                .unwrap_or(false);
            if !ok {
                return Err(DrawingError::DanglingDart(format!("{d:?} has no twin")));
            }
        }
        let mut visited: BTreeSet<Dart> = BTreeSet::new();
        let mut walks = Vec::new();
        for &start in &all {
            if visited.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                walk.push(d);
                visited.insert(d);
                d = self.walk_next(d);
                if d == start {
                    break;
                }
                if visited.contains(&d) {
                    return Err(DrawingError::MalformedRotation(
                        "walk re-entered a visited dart".into(),
                    ));
                }
            }
            walks.push(walk);
        }
        Ok(walks)
    }

    pub(crate) fn trace(&self) -> Result<PlaneView> {
        let walks = self.orbit_walks()?;
        let walk_of: BTreeMap<Dart, usize> = walks
            .iter()
            .enumerate()
            .flat_map(|(i, w)| w.iter().map(move |&d| (d, i)))
            .collect();
        let mut face_of_walk = vec![usize::MAX; walks.len()];
        let mut faces: Vec<Vec<usize>> = Vec::with_capacity(self.groups.len());
        for (g, reps) in self.groups.iter().enumerate() {
            let mut ws = Vec::new();
            for &rep in reps {
                let Some(&w) = walk_of.get(&rep) else {
                    return Err(DrawingError::DanglingDart(format!(
                        "face representative {rep:?} is not a dart"
                    )));
                };
                if face_of_walk[w] != usize::MAX {
                    return Err(DrawingError::MalformedRotation(format!(
                        "walk of {rep:?} claimed by two faces"
                    )));
                }
                face_of_walk[w] = g;
                ws.push(w);
            }
            ws.sort();
            faces.push(ws);
        }
        if face_of_walk.iter().any(|&f| f == usize::MAX) {
            return Err(DrawingError::MalformedRotation(
                "walk not claimed by any face".into(),
            ));
        }
        Ok(PlaneView {
            walks,
            walk_of,
            faces,
            face_of_walk,
            outer_face: self.outer_group,
        })
    }

    /// Orbit partition exactness, Euler identity, and face-group coverage.
    pub(crate) fn check_consistent(&self) -> bool {
        let Ok(view) = self.trace() else {
            return false;
        };
        let total: usize = view.walks.iter().map(|w| w.len()).sum();
        if total != self.all_darts().len() {
            return false;
        }
        let (v, e, f, c) = self.euler_counts();
        v + f == e + 1 + c
    }

    /// Planarization vertex/edge/face counts and component count.
    pub fn euler_counts(&self) -> (usize, usize, usize, usize) {
        let mut pverts: BTreeSet<VertexId> = self.verts.clone();
        pverts.extend(self.dummy_of.values().copied());
        let mut pedges: BTreeSet<PlanEdge> = BTreeSet::new();
        for list in self.rot.values() {
            pedges.extend(list.iter().copied());
        }
        // components of the planarization
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &pe in &pedges {
            let (a, b) = self.pe_endpoints(pe);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut comps = 0usize;
        for &v in &pverts {
            if seen.contains(&v) {
                continue;
            }
            comps += 1;
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                if !seen.insert(x) {
                    continue;
                }
                for &y in adj.get(&x).into_iter().flatten() {
                    if !seen.contains(&y) {
                        stack.push(y);
                    }
                }
            }
        }
        (pverts.len(), pedges.len(), self.view.faces.len(), comps)
    }
}
