//! Insertion and removal of edges in a drawing.
//!
//! All operations return new values. Splitting a face is combinatorially
//! ambiguous when the face hosts further walks (nested components) or
//! isolated vertices, or when it is the outer face; callers resolve these
//! through `SplitChoice` and enumerate the alternatives where needed.

use crate::drawing::{Anchor, Dart, DrawingError, NestItem, OnePlanarDrawing, PlanEdge, SplitChoice};
use crate::graph::{EdgeId, Graph, VertexId, DUMMY_BASE};
use std::collections::{BTreeMap, BTreeSet};

type Result<T> = std::result::Result<T, DrawingError>;

impl OnePlanarDrawing {
    /// Items a split of `face` (leaving the walk of the chord's corners)
    /// would have to assign to one of the two sides.
    pub fn split_items(&self, face: usize, split_walk: usize) -> Vec<NestItem> {
        let mut items = Vec::new();
        for &w in &self.view.faces[face] {
            if w != split_walk {
                items.push(NestItem::Walk(*self.view.walks[w].iter().min().unwrap()));
            }
        }
        for (&v, &host) in &self.isolated {
            if host == face {
                items.push(NestItem::Iso(v));
            }
        }
        items
    }

    /// Inserts the uncrossed edge `u–w` into `face`. Exactly one new face
    /// appears when both corners lie on the same walk; inserting across two
    /// walks of the face merges components instead.
    pub fn insert_edge_in_face(
        &self,
        face: usize,
        u_anchor: Anchor,
        w_anchor: Anchor,
        choice: &SplitChoice,
    ) -> Result<(OnePlanarDrawing, EdgeId)> {
        let u = u_anchor.vertex();
        let w = w_anchor.vertex();
        if u == w {
            return Err(DrawingError::LoopEdge);
        }
        if self.find_edge(u, w).is_some() {
            return Err(DrawingError::DuplicateEdge);
        }
        let mut d = self.clone();
        let id = EdgeId(d.edges.len() as u32);
        d.edges.push((u, w));
        d.insert_link(face, u_anchor, w_anchor, PlanEdge::Whole(id), choice)?;
        debug_assert!(d.check_consistent());
        Ok((d, id))
    }

    /// Inserts the edge `u–w` drawn with a single crossing over the uncrossed
    /// edge under `crossed`. `u_anchor` attaches on the face on `crossed`'s
    /// side; `w_anchor` on the face across. The total face count rises by
    /// exactly two in the plain (no component merge) case.
    pub fn insert_crossing_edge(
        &self,
        u_anchor: Anchor,
        crossed: Dart,
        w_anchor: Anchor,
        choice_near: &SplitChoice,
        choice_far: &SplitChoice,
    ) -> Result<(OnePlanarDrawing, EdgeId)> {
        let PlanEdge::Whole(e) = crossed.pe else {
            return Err(DrawingError::EdgeAlreadyCrossed);
        };
        if self.is_crossed(e) {
            return Err(DrawingError::EdgeAlreadyCrossed);
        }
        let u = u_anchor.vertex();
        let w = w_anchor.vertex();
        if u == w {
            return Err(DrawingError::LoopEdge);
        }
        if self.find_edge(u, w).is_some() {
            return Err(DrawingError::DuplicateEdge);
        }
        let (a, b) = self.endpoints(e);
        if u == a || u == b || w == a || w == b {
            return Err(DrawingError::AdjacentCrossing);
        }
        let in_rot = self
            .rot
            .get(&crossed.origin)
            .map(|l| l.contains(&crossed.pe))
            .unwrap_or(false);
        if !in_rot {
            return Err(DrawingError::NotOnBoundary(format!(
                "crossed dart {crossed:?} not present"
            )));
        }
        let f_near = self.view.face_of_dart(crossed);

        let mut d = self.clone();
        let id = EdgeId(d.edges.len() as u32);
        d.edges.push((u, w));
        let dummy = VertexId(
            d.dummy_of
                .values()
                .map(|v| v.0 + 1)
                .max()
                .unwrap_or(DUMMY_BASE),
        );
        d.crossings.insert(e, id);
        d.crossings.insert(id, e);
        d.dummy_of.insert(e, dummy);
        d.dummy_of.insert(id, dummy);
        d.subdivide_for_crossing(e, dummy)?;

        // the two corners of the fresh degree-2 dummy, keyed by side
        let (near_pe, far_pe) = if crossed.origin == a {
            (PlanEdge::HalfA(e), PlanEdge::HalfB(e))
        } else {
            (PlanEdge::HalfB(e), PlanEdge::HalfA(e))
        };
        let near_corner = Dart {
            origin: dummy,
            pe: near_pe,
        };
        d.insert_link(
            f_near,
            u_anchor,
            Anchor::Corner(near_corner),
            PlanEdge::HalfA(id),
            choice_near,
        )?;
        let far_corner = Dart {
            origin: dummy,
            pe: far_pe,
        };
        let f_far = d.corner_face(far_corner);
        d.insert_link(
            f_far,
            Anchor::Corner(far_corner),
            w_anchor,
            PlanEdge::HalfB(id),
            choice_far,
        )?;
        debug_assert!(d.check_consistent());
        Ok((d, id))
    }

    /// Replaces `Whole(e)` by its two halves through `dummy`; purely a
    /// relabeling of the map, no face changes.
    fn subdivide_for_crossing(&mut self, e: EdgeId, dummy: VertexId) -> Result<()> {
        let (a, b) = self.endpoints(e);
        let relabel = |d: Dart| -> Dart {
            if d.pe == PlanEdge::Whole(e) {
                if d.origin == a {
                    Dart {
                        origin: a,
                        pe: PlanEdge::HalfA(e),
                    }
                } else {
                    Dart {
                        origin: b,
                        pe: PlanEdge::HalfB(e),
                    }
                }
            } else {
                d
            }
        };
        for (&v, list) in self.rot.iter_mut() {
            for pe in list.iter_mut() {
                if *pe == PlanEdge::Whole(e) {
                    *pe = if v == a {
                        PlanEdge::HalfA(e)
                    } else {
                        PlanEdge::HalfB(e)
                    };
                }
            }
        }
        self.rot
            .insert(dummy, vec![PlanEdge::HalfA(e), PlanEdge::HalfB(e)]);
        for g in self.groups.iter_mut() {
            for r in g.iter_mut() {
                *r = relabel(*r);
            }
        }
        self.view = self.trace_or_panic();
        Ok(())
    }

    /// Core insertion of one planarization link between two anchors of one
    /// face, with the four walk-bookkeeping cases.
    fn insert_link(
        &mut self,
        face: usize,
        au: Anchor,
        aw: Anchor,
        pe: PlanEdge,
        choice: &SplitChoice,
    ) -> Result<()> {
        if face >= self.view.faces.len() {
            return Err(DrawingError::NotOnBoundary(format!("no face {face}")));
        }
        let u = au.vertex();
        let w = aw.vertex();
        // validate anchors against the current view
        let corner_walk = |anchor: Anchor| -> Result<Option<usize>> {
            match anchor {
                Anchor::Corner(c) => {
                    let ok = self
                        .rot
                        .get(&c.origin)
                        .map(|l| l.contains(&c.pe))
                        .unwrap_or(false);
                    if !ok {
                        return Err(DrawingError::NotOnBoundary(format!(
                            "corner {c:?} not present"
                        )));
                    }
                    let nxt = self.rot_next(c);
                    let walk = self.view.walk_of[&nxt];
                    if self.view.face_of_walk[walk] != face {
                        return Err(DrawingError::NotOnBoundary(format!(
                            "corner {c:?} not on face {face}"
                        )));
                    }
                    Ok(Some(walk))
                }
                Anchor::Isolated(v) => {
                    if self.isolated.get(&v) != Some(&face) {
                        return Err(DrawingError::VertexState(format!(
                            "{v:?} is not isolated in face {face}"
                        )));
                    }
                    Ok(None)
                }
                Anchor::Floating(v) => {
                    if self.verts.contains(&v) || self.rot.contains_key(&v) {
                        return Err(DrawingError::VertexState(format!(
                            "{v:?} is already drawn"
                        )));
                    }
                    Ok(None)
                }
            }
        };
        let walk_u = corner_walk(au)?;
        let walk_w = corner_walk(aw)?;

        // rotation surgery
        let mut attach = |anchor: Anchor| match anchor {
            Anchor::Corner(c) => {
                let list = self.rot.get_mut(&c.origin).unwrap();
                let i = list.iter().position(|&x| x == c.pe).unwrap();
                list.insert(i + 1, pe);
            }
            Anchor::Isolated(v) => {
                self.rot.insert(v, vec![pe]);
                self.isolated.remove(&v);
            }
            Anchor::Floating(v) => {
                self.verts.insert(v);
                self.rot.insert(v, vec![pe]);
            }
        };
        attach(au);
        attach(aw);

        let du = Dart { origin: u, pe };
        let dw = Dart { origin: w, pe };
        let old_view = self.view.clone();

        match (walk_u, walk_w) {
            (Some(wu), Some(ww)) if wu == ww => {
                // chord: the walk splits; distribute nested items
                let items = {
                    let mut items = Vec::new();
                    for &x in &old_view.faces[face] {
                        if x != wu {
                            items.push(NestItem::Walk(
                                *old_view.walks[x].iter().min().unwrap(),
                            ));
                        }
                    }
                    for (&v, &host) in &self.isolated {
                        if host == face {
                            items.push(NestItem::Iso(v));
                        }
                    }
                    items
                };
                self.view = self.trace_walk_only();
                let new_wu = self.view.walk_of[&du];
                let new_ww = self.view.walk_of[&dw];
                debug_assert_ne!(new_wu, new_ww, "chord must split its walk");
                let mut reps_u = vec![du];
                let mut reps_w = vec![dw];
                let new_face_idx = self.groups.len();
                let mut iso_moves: Vec<(VertexId, usize)> = Vec::new();
                for item in items {
                    let Some(&to_u) = choice.nest.get(&item) else {
                        return Err(DrawingError::MissingChoice(format!("{item:?}")));
                    };
                    match item {
                        NestItem::Walk(rep) => {
                            if to_u {
                                reps_u.push(rep);
                            } else {
                                reps_w.push(rep);
                            }
                        }
                        NestItem::Iso(v) => {
                            iso_moves.push((v, if to_u { face } else { new_face_idx }));
                        }
                    }
                }
                self.groups[face] = reps_u;
                self.groups.push(reps_w);
                for (v, host) in iso_moves {
                    self.isolated.insert(v, host);
                }
                if face == self.outer_group {
                    match choice.outer_with_u {
                        Some(true) => {}
                        Some(false) => self.outer_group = new_face_idx,
                        None => {
                            return Err(DrawingError::MissingChoice(
                                "outer side of split".into(),
                            ))
                        }
                    }
                }
            }
            (Some(wu), Some(ww)) => {
                // connects two walks of the face: walks merge, no new face
                let reps: Vec<Dart> = self.groups[face]
                    .iter()
                    .copied()
                    .filter(|r| {
                        let rw = old_view.walk_of[r];
                        rw != wu && rw != ww
                    })
                    .collect();
                let mut reps = reps;
                reps.push(du);
                self.groups[face] = reps;
            }
            (Some(_), None) | (None, Some(_)) => {
                // spur onto an existing walk: same walk, same faces
            }
            (None, None) => {
                // fresh component: one new walk inside the face
                self.groups[face].push(du);
            }
        }
        self.view = self.trace_or_panic();
        Ok(())
    }

    fn trace_walk_only(&self) -> crate::drawing::PlaneView {
        let walks = self.orbit_walks().expect("valid rotations");
        let walk_of: BTreeMap<Dart, usize> = walks
            .iter()
            .enumerate()
            .flat_map(|(i, w)| w.iter().map(move |&d| (d, i)))
            .collect();
        crate::drawing::PlaneView {
            walks,
            walk_of,
            faces: vec![],
            face_of_walk: vec![],
            outer_face: 0,
        }
    }

    fn trace_or_panic(&self) -> crate::drawing::PlaneView {
        match self.trace() {
            Ok(v) => v,
            Err(e) => panic!("internal: trace failed after mutation: {e}"),
        }
    }

    // ----------------------------------------------------------------
    // removal (used by embedding restriction)
    // ----------------------------------------------------------------

    /// Removes a base edge and reindexes.
    pub fn remove_edge(&self, e: EdgeId) -> OnePlanarDrawing {
        let d = self.remove_base_edge_raw(e);
        d.compact(&[e].into_iter().collect())
    }

    /// Removes a base edge (uncrossing its partner if needed), leaving the
    /// edge slot in place so ids stay stable across a removal sequence; call
    /// `compact` when done. The partner of a crossed edge becomes uncrossed.
    pub(crate) fn remove_base_edge_raw(&self, e: EdgeId) -> OnePlanarDrawing {
        let mut d = self.clone();
        if let Some(&partner) = d.crossings.get(&e) {
            let dummy = d.dummy_of[&e];
            d.remove_link(PlanEdge::HalfA(e));
            d.remove_link(PlanEdge::HalfB(e));
            d.smooth_dummy(dummy, partner);
            d.crossings.remove(&e);
            d.crossings.remove(&partner);
            d.dummy_of.remove(&e);
            d.dummy_of.remove(&partner);
        } else {
            d.remove_link(PlanEdge::Whole(e));
        }
        debug_assert!(d.check_consistent());
        d
    }

    /// Drops a degree-0 real vertex.
    pub fn remove_isolated_vertex(&self, v: VertexId) -> OnePlanarDrawing {
        let mut d = self.clone();
        assert!(d.isolated.remove(&v).is_some(), "vertex not isolated");
        d.verts.remove(&v);
        d
    }

    fn remove_link(&mut self, pe: PlanEdge) {
        let (a, b) = self.pe_endpoints(pe);
        let old_view = self.view.clone();
        let d1 = Dart { origin: a, pe };
        let d2 = Dart { origin: b, pe };
        let host_face = old_view.face_of_dart(d1);
        let mut newly_isolated: Vec<(VertexId, usize)> = Vec::new();
        for v in [a, b] {
            let list = self.rot.get_mut(&v).unwrap();
            list.retain(|&x| x != pe);
            if list.is_empty() {
                self.rot.remove(&v);
                if !v.is_dummy() {
                    newly_isolated.push((v, host_face));
                }
            }
        }
        let classes = self.repair_after_removal(&old_view, |d| {
            if d == d1 || d == d2 {
                None
            } else {
                Some(d)
            }
        });
        for (v, old_face) in newly_isolated {
            self.isolated.insert(v, classes[old_face]);
        }
        self.view = self.trace_or_panic();
    }

    fn smooth_dummy(&mut self, dummy: VertexId, partner: EdgeId) {
        let (pa, pb) = (PlanEdge::HalfA(partner), PlanEdge::HalfB(partner));
        let (a, b) = self.endpoints(partner);
        debug_assert_eq!(self.rot.get(&dummy).map(|l| l.len()), Some(2));
        let old_view = self.view.clone();
        self.rot.remove(&dummy);
        for (v, half) in [(a, pa), (b, pb)] {
            let list = self.rot.get_mut(&v).unwrap();
            for x in list.iter_mut() {
                if *x == half {
                    *x = PlanEdge::Whole(partner);
                }
            }
        }
        self.repair_after_removal(&old_view, |d| {
            if d.origin == dummy {
                None
            } else if d.pe == pa || d.pe == pb {
                Some(Dart {
                    origin: d.origin,
                    pe: PlanEdge::Whole(partner),
                })
            } else {
                Some(d)
            }
        });
        self.view = self.trace_or_panic();
    }

    /// Rebuilds `groups`/`outer_group`/`isolated` after darts were removed or
    /// relabeled. Faces that come to share a walk merge; walks never split
    /// here (removal only merges or drops regions). Returns the old-face to
    /// new-group index map.
    fn repair_after_removal(
        &mut self,
        old_view: &crate::drawing::PlaneView,
        map: impl Fn(Dart) -> Option<Dart>,
    ) -> Vec<usize> {
        let new_walks = self.orbit_walks().expect("valid after removal");
        let walk_of: BTreeMap<Dart, usize> = new_walks
            .iter()
            .enumerate()
            .flat_map(|(i, w)| w.iter().map(move |&d| (d, i)))
            .collect();
        let nf = old_view.faces.len().max(1);
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        // which old face claims each new walk
        let mut claim: BTreeMap<usize, usize> = BTreeMap::new();
        for (f, walks) in old_view.faces.iter().enumerate() {
            for &w in walks {
                for &d in &old_view.walks[w] {
                    if let Some(nd) = map(d) {
                        let nw = walk_of[&nd];
                        match claim.get(&nw) {
                            None => {
                                claim.insert(nw, f);
                            }
                            Some(&g) => {
                                let (ra, rb) = (find(&mut parent, f), find(&mut parent, g));
                                parent[ra] = rb;
                            }
                        }
                    }
                }
            }
        }
        debug_assert_eq!(claim.len(), new_walks.len(), "every new walk claimed");
        // build groups per class
        let mut class_group: BTreeMap<usize, usize> = BTreeMap::new();
        let mut groups: Vec<Vec<Dart>> = Vec::new();
        let mut classes: Vec<usize> = vec![0; nf];
        for f in 0..nf {
            let r = find(&mut parent, f);
            let g = *class_group.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            classes[f] = g;
        }
        for (nw, f) in &claim {
            let g = classes[find(&mut parent, *f)];
            groups[g].push(*new_walks[*nw].iter().min().unwrap());
        }
        for g in groups.iter_mut() {
            g.sort();
        }
        if new_walks.is_empty() {
            // all regions merge into the single all-of-plane face
            groups = vec![vec![]];
            classes = vec![0; nf];
        }
        let outer = classes[self.outer_group];
        let isolated: BTreeMap<VertexId, usize> = self
            .isolated
            .iter()
            .map(|(&v, &f)| (v, classes[f]))
            .collect();
        self.groups = groups;
        self.outer_group = outer;
        self.isolated = isolated;
        classes
    }

    /// Restriction of this drawing to a subgraph of its base graph: removes
    /// the other edges (uncrossing as needed) and then the vertices outside
    /// the subgraph, and reindexes. The result is the induced sub-drawing.
    pub fn restrict_to(&self, target: &Graph) -> Result<OnePlanarDrawing> {
        if !target.is_subgraph_of(&self.base_graph()) {
            return Err(DrawingError::NotASubgraph);
        }
        let target_edges = target.edge_set();
        let mut d = self.clone();
        let mut removed: BTreeSet<EdgeId> = BTreeSet::new();
        for e in (0..self.edges.len() as u32).map(EdgeId) {
            if !target_edges.contains(&self.edge_key(e)) {
                d = d.remove_base_edge_raw(e);
                removed.insert(e);
            }
        }
        let drop_verts: Vec<VertexId> = d
            .verts
            .iter()
            .copied()
            .filter(|v| !target.vertices.contains(v))
            .collect();
        for v in drop_verts {
            if !d.isolated.contains_key(&v) {
                return Err(DrawingError::VertexState(format!(
                    "{v:?} still has incident edges after restriction"
                )));
            }
            d = d.remove_isolated_vertex(v);
        }
        Ok(d.compact(&removed))
    }

    /// Reindexes edges after removals, renumbering dummies canonically.
    fn compact(&self, removed: &BTreeSet<EdgeId>) -> OnePlanarDrawing {
        let mut remap: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        let mut edges = Vec::new();
        for e in (0..self.edges.len() as u32).map(EdgeId) {
            if !removed.contains(&e) {
                remap.insert(e, EdgeId(edges.len() as u32));
                edges.push(self.edges[e.0 as usize]);
            }
        }
        let map_pe = |pe: PlanEdge| match pe {
            PlanEdge::Whole(e) => PlanEdge::Whole(remap[&e]),
            PlanEdge::HalfA(e) => PlanEdge::HalfA(remap[&e]),
            PlanEdge::HalfB(e) => PlanEdge::HalfB(remap[&e]),
        };
        // canonical dummy numbering by sorted crossing-pair keys
        let mut pairs: Vec<(EdgeId, EdgeId)> = self
            .crossings
            .iter()
            .filter(|(e, f)| e < f)
            .map(|(&e, &f)| (e, f))
            .collect();
        pairs.sort_by_key(|&(e, f)| (self.edge_key(e), self.edge_key(f)));
        let mut dummy_remap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &(e, _)) in pairs.iter().enumerate() {
            dummy_remap.insert(self.dummy_of[&e], VertexId(DUMMY_BASE + i as u32));
        }
        let map_v = |v: VertexId| *dummy_remap.get(&v).unwrap_or(&v);
        let rot: BTreeMap<VertexId, Vec<PlanEdge>> = self
            .rot
            .iter()
            .map(|(&v, list)| (map_v(v), list.iter().map(|&pe| map_pe(pe)).collect()))
            .collect();
        let groups: Vec<Vec<Dart>> = self
            .groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&r| Dart {
                        origin: map_v(r.origin),
                        pe: map_pe(r.pe),
                    })
                    .collect()
            })
            .collect();
        let mut crossings = BTreeMap::new();
        let mut dummy_of = BTreeMap::new();
        for &(e, f) in &pairs {
            let (re, rf) = (remap[&e], remap[&f]);
            crossings.insert(re, rf);
            crossings.insert(rf, re);
            let dm = map_v(self.dummy_of[&e]);
            dummy_of.insert(re, dm);
            dummy_of.insert(rf, dm);
        }
        let mut d = OnePlanarDrawing {
            verts: self.verts.clone(),
            edges,
            crossings,
            dummy_of,
            rot,
            groups,
            outer_group: self.outer_group,
            isolated: self.isolated.clone(),
            view: self.view.clone(),
        };
        d.view = d.trace_or_panic();
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::OnePlanarDrawing as D;

    /// C4 drawn as a plane square: rotations at each corner list the two
    /// incident edges; 2 faces of length 4.
    pub(crate) fn c4() -> D {
        let vs: BTreeSet<VertexId> = (0..4).map(VertexId).collect();
        let edges = vec![
            (VertexId(0), VertexId(1)),
            (VertexId(1), VertexId(2)),
            (VertexId(2), VertexId(3)),
            (VertexId(3), VertexId(0)),
        ];
        let mut rot = BTreeMap::new();
        rot.insert(VertexId(0), vec![EdgeId(3), EdgeId(0)]);
        rot.insert(VertexId(1), vec![EdgeId(0), EdgeId(1)]);
        rot.insert(VertexId(2), vec![EdgeId(1), EdgeId(2)]);
        rot.insert(VertexId(3), vec![EdgeId(2), EdgeId(3)]);
        let outer = Dart {
            origin: VertexId(1),
            pe: PlanEdge::Whole(EdgeId(0)),
        };
        D::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap()
    }

    /// K4 with a planar rotation; 4 triangular faces.
    pub(crate) fn k4() -> D {
        let vs: BTreeSet<VertexId> = (0..4).map(VertexId).collect();
        // edges: 0:01 1:12 2:20 3:03 4:13 5:23; vertex 3 inside triangle 012
        let edges = vec![
            (VertexId(0), VertexId(1)),
            (VertexId(1), VertexId(2)),
            (VertexId(2), VertexId(0)),
            (VertexId(0), VertexId(3)),
            (VertexId(1), VertexId(3)),
            (VertexId(2), VertexId(3)),
        ];
        let mut rot = BTreeMap::new();
        rot.insert(VertexId(0), vec![EdgeId(0), EdgeId(3), EdgeId(2)]);
        rot.insert(VertexId(1), vec![EdgeId(1), EdgeId(4), EdgeId(0)]);
        rot.insert(VertexId(2), vec![EdgeId(2), EdgeId(5), EdgeId(1)]);
        rot.insert(VertexId(3), vec![EdgeId(3), EdgeId(4), EdgeId(5)]);
        let outer = Dart {
            origin: VertexId(0),
            pe: PlanEdge::Whole(EdgeId(0)),
        };
        D::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap()
    }

    #[test]
    fn c4_has_two_faces_of_length_four() {
        let d = c4();
        assert_eq!(d.view().faces.len(), 2);
        for w in &d.view().walks {
            assert_eq!(w.len(), 4);
        }
        let (v, e, f, c) = d.euler_counts();
        assert_eq!(v as i64 - e as i64 + f as i64, 1 + c as i64);
    }

    #[test]
    fn k4_has_four_faces() {
        let d = k4();
        assert_eq!(d.view().faces.len(), 4);
        assert!(d.check_consistent());
    }

    #[test]
    fn single_edge_one_face_of_length_two() {
        let vs: BTreeSet<VertexId> = (0..2).map(VertexId).collect();
        let edges = vec![(VertexId(0), VertexId(1))];
        let mut rot = BTreeMap::new();
        rot.insert(VertexId(0), vec![EdgeId(0)]);
        rot.insert(VertexId(1), vec![EdgeId(0)]);
        let outer = Dart {
            origin: VertexId(0),
            pe: PlanEdge::Whole(EdgeId(0)),
        };
        let d = D::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap();
        assert_eq!(d.view().faces.len(), 1);
        assert_eq!(d.view().walks[0].len(), 2);
    }

    /// Path on 3 vertices = a tree: exactly one face.
    #[test]
    fn tree_has_one_face() {
        let vs: BTreeSet<VertexId> = (0..3).map(VertexId).collect();
        let edges = vec![(VertexId(0), VertexId(1)), (VertexId(1), VertexId(2))];
        let mut rot = BTreeMap::new();
        rot.insert(VertexId(0), vec![EdgeId(0)]);
        rot.insert(VertexId(1), vec![EdgeId(0), EdgeId(1)]);
        rot.insert(VertexId(2), vec![EdgeId(1)]);
        let outer = Dart {
            origin: VertexId(0),
            pe: PlanEdge::Whole(EdgeId(0)),
        };
        let d = D::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap();
        assert_eq!(d.view().faces.len(), 1);
    }

    #[test]
    fn c4_diagonal_splits_inner_face_into_two_triangles() {
        let d = c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner);
        let cw = d.corners_on_face(VertexId(2), inner);
        assert_eq!((cu.len(), cw.len()), (1, 1));
        let (d2, _) = d
            .insert_edge_in_face(inner, Anchor::Corner(cu[0]), Anchor::Corner(cw[0]), &SplitChoice::plain())
            .unwrap();
        assert_eq!(d2.view().faces.len(), 3);
        let mut lens: Vec<usize> = d2.view().walks.iter().map(|w| w.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 3, 4]);
        assert!(d2.check_consistent());
    }

    #[test]
    fn loop_insertion_rejected() {
        let d = c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner);
        let err = d
            .insert_edge_in_face(inner, Anchor::Corner(cu[0]), Anchor::Corner(cu[0]), &SplitChoice::plain())
            .unwrap_err();
        assert_eq!(err, DrawingError::LoopEdge);
    }

    #[test]
    fn crossing_insert_bookkeeping() {
        // C4 plus a new vertex routed across one side: planarization gains
        // the dummy and three net edges; face count rises by two.
        let d = c4();
        let inner = 1 - d.outer_face();
        let outer = d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        // cross edge 1-2 from the inner side; endpoint floats outside
        let crossed = d
            .view()
            .faces[inner]
            .iter()
            .flat_map(|&w| d.view().walks[w].iter().copied())
            .find(|dd| dd.pe == PlanEdge::Whole(EdgeId(1)))
            .unwrap();
        let (d2, id) = d
            .insert_crossing_edge(
                Anchor::Corner(cu),
                crossed,
                Anchor::Floating(VertexId(9)),
                &SplitChoice::plain(),
                &SplitChoice::plain(),
            )
            .unwrap();
        assert!(d2.is_crossed(EdgeId(1)));
        assert!(d2.is_crossed(id));
        let (v1, e1, f1, _) = d.euler_counts();
        let (v2, e2, f2, _) = d2.euler_counts();
        assert_eq!(v2 - v1, 2); // dummy + new vertex
        assert_eq!(e2 - e1, 3); // edge split in two plus two new halves
        assert_eq!(f2 - f1, 1); // near side splits; far side gains a spur
        assert!(d2.check_consistent());
        let _ = outer;

        // crossing the same edge again is rejected
        let c2 = d2.corners_on_face(VertexId(0), d2.view().face_of_dart(Dart {
            origin: VertexId(1),
            pe: PlanEdge::HalfA(EdgeId(1)),
        }));
        if let Some(&c) = c2.first() {
            let err = d2
                .insert_crossing_edge(
                    Anchor::Corner(c),
                    Dart { origin: VertexId(1), pe: PlanEdge::HalfA(EdgeId(1)) },
                    Anchor::Floating(VertexId(10)),
                    &SplitChoice::plain(),
                    &SplitChoice::plain(),
                )
                .unwrap_err();
            assert_eq!(err, DrawingError::EdgeAlreadyCrossed);
        }
    }

    #[test]
    fn insert_then_remove_restores_structure() {
        let d = c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        let cw = d.corners_on_face(VertexId(2), inner)[0];
        let (d2, id) = d
            .insert_edge_in_face(inner, Anchor::Corner(cu), Anchor::Corner(cw), &SplitChoice::plain())
            .unwrap();
        let d3 = d2.remove_edge(id);
        assert_eq!(d3.view().faces.len(), d.view().faces.len());
        assert_eq!(d3.edge_list(), d.edge_list());
        assert_eq!(d3.rotations(), d.rotations());
    }

    #[test]
    fn floating_floating_insert_makes_nested_walk() {
        let d = c4();
        let inner = 1 - d.outer_face();
        let (d2, _) = d
            .insert_edge_in_face(
                inner,
                Anchor::Floating(VertexId(7)),
                Anchor::Floating(VertexId(8)),
                &SplitChoice::plain(),
            )
            .unwrap();
        // same number of faces; the inner face now carries two walks
        assert_eq!(d2.view().faces.len(), 2);
        assert_eq!(d2.view().faces[inner].len(), 2);
        let (v, e, f, c) = d2.euler_counts();
        assert_eq!(v as i64 - e as i64 + f as i64, 1 + c as i64);
        assert_eq!(c, 2);
    }
}
