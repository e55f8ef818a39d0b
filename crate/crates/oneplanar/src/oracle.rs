//! Exhaustive backtracking enumeration of 1-planar extensions.
//!
//! Ground truth for the solvers: inserts the missing edges in a fixed order,
//! trying every legal anchor, crossing, and nesting choice. Soundness is
//! asserted per emission; completeness holds because the restriction of any
//! extension to a prefix of the insertion order is itself an extension, and
//! every single-edge step is one of the enumerated moves (a later edge may
//! cross an earlier added edge, which realizes added-added crossings).

use crate::drawing::{Anchor, Dart, NestItem, OnePlanarDrawing, PlanEdge, SplitChoice};
use crate::graph::{EdgeId, VertexId};
use crate::instance::{ExtensionInstance, UntangledInstance};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("budget exhausted after {expanded} expansions (enumeration incomplete)")]
    BudgetExhausted { expanded: u64 },
    #[error("{0}")]
    BadInput(String),
}

/// Which side of the two-vertex problem a cell is reserved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LambdaSide {
    X,
    Y,
    Empty,
}

/// Optional restrictions applied per insertion move; cells are identified by
/// face indices ("tags") of the instance drawing.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    /// Forbid crossings between two missing edges (untangled search).
    pub forbid_added_added: bool,
    /// Tags of occupied cells no added edge may intersect.
    pub occupied: BTreeSet<usize>,
    /// Per marked vertex, the drawn-edge keys its edges may cross.
    pub crossable: Option<BTreeMap<VertexId, BTreeSet<(VertexId, VertexId)>>>,
    /// Lambda-consistency: per marked vertex its starting-cell tags, plus the
    /// cell assignment; an edge of `m` may intersect a non-starting cell `t`
    /// only when `lambda[t]` matches `m`'s side.
    pub lambda: Option<LambdaFilter>,
}

#[derive(Clone, Debug)]
pub struct LambdaFilter {
    pub x: VertexId,
    pub y: VertexId,
    pub starting_x: BTreeSet<usize>,
    pub starting_y: BTreeSet<usize>,
    pub assignment: BTreeMap<usize, LambdaSide>,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub budget: u64,
    pub dedup: bool,
    pub constraints: Constraints,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: 10_000_000,
            dedup: true,
            constraints: Constraints::default(),
        }
    }
}

#[derive(PartialEq, Eq)]
pub enum Step {
    Continue,
    Stop,
}

/// For each face of `current`, the face of `base` whose region contains it.
/// Faces bounded only by added edges inherit the tag through their
/// added-edge neighbors.
pub fn face_tags(current: &OnePlanarDrawing, base: &OnePlanarDrawing) -> Vec<usize> {
    let n0 = base.edge_list().len() as u32;
    let original_face = |d: Dart| -> Option<usize> {
        let e = d.pe.base();
        if e.0 >= n0 {
            return None;
        }
        // the base edge ids coincide with current ids below n0 by
        // construction (the oracle only appends edges)
        match d.pe {
            PlanEdge::Whole(_) => {
                if base.is_crossed(e) {
                    None // cannot happen: crossings are never removed
                } else {
                    Some(base.view().face_of_dart(d))
                }
            }
            PlanEdge::HalfA(_) | PlanEdge::HalfB(_) => {
                if base.is_crossed(e) {
                    let od = if d.origin.is_dummy() {
                        Dart {
                            origin: base.dummy_of(e).unwrap(),
                            pe: d.pe,
                        }
                    } else {
                        d
                    };
                    Some(base.view().face_of_dart(od))
                } else {
                    // crossed only in `current`: collapse onto the whole dart
                    let (a, b) = base.endpoints(e);
                    let towards_b = match d.pe {
                        PlanEdge::HalfA(_) => d.origin == a,
                        _ => d.origin.is_dummy(),
                    };
                    let od = Dart {
                        origin: if towards_b { a } else { b },
                        pe: PlanEdge::Whole(e),
                    };
                    Some(base.view().face_of_dart(od))
                }
            }
        }
    };
    let nf = current.view().faces.len();
    let mut tags: Vec<Option<usize>> = vec![None; nf];
    for f in 0..nf {
        for &w in &current.view().faces[f] {
            for &d in &current.view().walks[w] {
                if let Some(t) = original_face(d) {
                    tags[f] = Some(t);
                    break;
                }
            }
            if tags[f].is_some() {
                break;
            }
        }
    }
    // propagate through added-edge boundaries for purely added faces
    let mut changed = true;
    while changed && tags.iter().any(Option::is_none) {
        changed = false;
        for f in 0..nf {
            if tags[f].is_some() {
                continue;
            }
            'outer: for &w in &current.view().faces[f] {
                for &d in &current.view().walks[w] {
                    let g = current.view().face_of_dart(current.twin(d));
                    if let Some(t) = tags[g] {
                        tags[f] = Some(t);
                        changed = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    tags.into_iter()
        .map(|t| t.unwrap_or(base.outer_face()))
        .collect()
}

struct Search<'a> {
    inst: &'a ExtensionInstance,
    cfg: &'a OracleConfig,
    edges: Vec<(VertexId, VertexId)>,
    expanded: u64,
    seen_final: BTreeSet<String>,
    seen_partial: BTreeSet<(usize, String)>,
    stopped: bool,
    exhausted: bool,
}

/// Missing edges in canonical insertion order: edges with exactly one marked
/// (added) endpoint sort by (marked, other); the rest by (min, max).
fn insertion_order(inst: &ExtensionInstance) -> Vec<(VertexId, VertexId)> {
    let mut keys: Vec<((VertexId, VertexId), (VertexId, VertexId))> = inst
        .e_add
        .iter()
        .map(|&(a, b)| {
            let am = inst.v_add.contains(&a);
            let bm = inst.v_add.contains(&b);
            let sort_key = if am && !bm {
                (a, b)
            } else if bm && !am {
                (b, a)
            } else {
                (a.min(b), a.max(b))
            };
            (sort_key, (a, b))
        })
        .collect();
    keys.sort();
    keys.into_iter().map(|(_, e)| e).collect()
}

impl<'a> Search<'a> {
    fn run(&mut self, visit: &mut dyn FnMut(&OnePlanarDrawing) -> Step) {
        let drawing = self.inst.drawing.clone();
        self.recurse(&drawing, 0, visit);
    }

    fn recurse(
        &mut self,
        d: &OnePlanarDrawing,
        idx: usize,
        visit: &mut dyn FnMut(&OnePlanarDrawing) -> Step,
    ) {
        if self.stopped || self.exhausted {
            return;
        }
        if idx == self.edges.len() {
            debug_assert!(d.validate_one_planar().is_empty());
            debug_assert!(d.is_extension_of(&self.inst.drawing).unwrap_or(false));
            if self.cfg.dedup {
                let sig = d.signature();
                if !self.seen_final.insert(sig) {
                    return;
                }
            }
            if visit(d) == Step::Stop {
                self.stopped = true;
            }
            return;
        }
        if self.cfg.dedup {
            let key = (idx, d.signature());
            if !self.seen_partial.insert(key) {
                return;
            }
        }
        let (u, w) = self.edges[idx];
        for next in self.moves_for(d, u, w) {
            if self.stopped || self.exhausted {
                return;
            }
            self.expanded += 1;
            if self.expanded > self.cfg.budget {
                self.exhausted = true;
                return;
            }
            self.recurse(&next, idx + 1, visit);
        }
    }

    /// Marked endpoint of an edge, when exactly one endpoint is added.
    fn marked_end(&self, u: VertexId, w: VertexId) -> Option<VertexId> {
        match (self.inst.v_add.contains(&u), self.inst.v_add.contains(&w)) {
            (true, false) => Some(u),
            (false, true) => Some(w),
            _ => {
                // in walk/lambda-constrained runs, x/y come from the filter
                if let Some(lf) = &self.cfg.constraints.lambda {
                    if u == lf.x || u == lf.y {
                        return Some(u);
                    }
                    if w == lf.x || w == lf.y {
                        return Some(w);
                    }
                }
                if let Some(cr) = &self.cfg.constraints.crossable {
                    if cr.contains_key(&u) {
                        return Some(u);
                    }
                    if cr.contains_key(&w) {
                        return Some(w);
                    }
                }
                None
            }
        }
    }

    fn cell_allowed(&self, m: Option<VertexId>, tag: usize) -> bool {
        let c = &self.cfg.constraints;
        if c.occupied.contains(&tag) {
            return false;
        }
        if let (Some(lf), Some(m)) = (&c.lambda, m) {
            let (starting, side) = if m == lf.x {
                (&lf.starting_x, LambdaSide::X)
            } else {
                (&lf.starting_y, LambdaSide::Y)
            };
            if !starting.contains(&tag) && lf.assignment.get(&tag) != Some(&side) {
                return false;
            }
        }
        true
    }

    fn crossing_allowed(&self, m: Option<VertexId>, d: &OnePlanarDrawing, e: EdgeId) -> bool {
        let c = &self.cfg.constraints;
        let n0 = self.inst.drawing.edge_list().len() as u32;
        if e.0 >= n0 && c.forbid_added_added {
            return false;
        }
        if let Some(cr) = &c.crossable {
            let Some(m) = m else { return false };
            let key = d.edge_key(e);
            if !cr.get(&m).map(|s| s.contains(&key)).unwrap_or(false) {
                return false;
            }
        }
        true
    }

    fn moves_for(&self, d: &OnePlanarDrawing, u: VertexId, w: VertexId) -> Vec<OnePlanarDrawing> {
        let mut out = Vec::new();
        let tags = face_tags(d, &self.inst.drawing);
        let m = self.marked_end(u, w);
        let u_drawn = d.vertices().contains(&u);
        let w_drawn = d.vertices().contains(&w);
        let anchors_on = |v: VertexId, drawn: bool, face: usize| -> Vec<Anchor> {
            if !drawn {
                vec![Anchor::Floating(v)]
            } else if d.isolated_vertices().get(&v) == Some(&face) {
                vec![Anchor::Isolated(v)]
            } else {
                d.corners_on_face(v, face)
                    .into_iter()
                    .map(Anchor::Corner)
                    .collect()
            }
        };

        // plain insertions
        for face in 0..d.view().faces.len() {
            if !self.cell_allowed(m, tags[face]) {
                continue;
            }
            for au in anchors_on(u, u_drawn, face) {
                for aw in anchors_on(w, w_drawn, face) {
                    for choice in self.choices_for_plain(d, face, au, aw) {
                        if let Ok((nd, _)) = d.insert_edge_in_face(face, au, aw, &choice) {
                            out.push(nd);
                        }
                    }
                }
            }
        }

        // crossing insertions
        for e in (0..d.edge_list().len() as u32).map(EdgeId) {
            if d.is_crossed(e) {
                continue;
            }
            let (a, b) = d.endpoints(e);
            if a == u || a == w || b == u || b == w {
                continue;
            }
            if !self.crossing_allowed(m, d, e) {
                continue;
            }
            for origin in [a, b] {
                let crossed = Dart {
                    origin,
                    pe: PlanEdge::Whole(e),
                };
                let f_near = d.view().face_of_dart(crossed);
                let f_far = d.view().face_of_dart(d.twin(crossed));
                if !self.cell_allowed(m, tags[f_near]) || !self.cell_allowed(m, tags[f_far]) {
                    continue;
                }
                for au in anchors_on(u, u_drawn, f_near) {
                    for aw in anchors_on(w, w_drawn, f_far) {
                        for (cn, cf) in self.choices_for_crossing(d, crossed, au, aw) {
                            if let Ok((nd, _)) =
                                d.insert_crossing_edge(au, crossed, aw, &cn, &cf)
                            {
                                out.push(nd);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn choices_for_plain(
        &self,
        d: &OnePlanarDrawing,
        face: usize,
        au: Anchor,
        aw: Anchor,
    ) -> Vec<SplitChoice> {
        let (Anchor::Corner(cu), Anchor::Corner(cw)) = (au, aw) else {
            return vec![SplitChoice::plain()];
        };
        let wu = d.view().walk_of[&d.rot_next(cu)];
        let ww = d.view().walk_of[&d.rot_next(cw)];
        if wu != ww {
            return vec![SplitChoice::plain()];
        }
        enumerate_choices(d.split_items(face, wu), face == d.outer_face())
    }

    fn choices_for_crossing(
        &self,
        d: &OnePlanarDrawing,
        crossed: Dart,
        au: Anchor,
        aw: Anchor,
    ) -> Vec<(SplitChoice, SplitChoice)> {
        let f_near = d.view().face_of_dart(crossed);
        let far_dart = d.twin(crossed);
        let f_far = d.view().face_of_dart(far_dart);
        let near: Vec<SplitChoice> = match au {
            Anchor::Corner(cu) if d.view().walk_of[&d.rot_next(cu)] == d.view().walk_of[&crossed] => {
                enumerate_choices(
                    d.split_items(f_near, d.view().walk_of[&crossed]),
                    f_near == d.outer_face(),
                )
            }
            _ => vec![SplitChoice::plain()],
        };
        // after the near-side insertion the far face may have been split when
        // f_near == f_far (bridge crossing); the far choice enumeration is
        // computed against the current view, which is a safe overapproximation
        let far: Vec<SplitChoice> = match aw {
            Anchor::Corner(cw) if d.view().walk_of[&d.rot_next(cw)] == d.view().walk_of[&far_dart] => {
                enumerate_choices(
                    d.split_items(f_far, d.view().walk_of[&far_dart]),
                    f_far == d.outer_face(),
                )
            }
            _ => vec![SplitChoice::plain()],
        };
        let mut out = Vec::new();
        for n in &near {
            for f in &far {
                out.push((n.clone(), f.clone()));
            }
        }
        out
    }
}

/// All boolean assignments over the given items, with or without the outer
/// side choice.
fn enumerate_choices(items: Vec<NestItem>, split_outer: bool) -> Vec<SplitChoice> {
    let outer_opts: Vec<Option<bool>> = if split_outer {
        vec![Some(true), Some(false)]
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    let k = items.len();
    for bits in 0..(1u32 << k) {
        let nest: BTreeMap<NestItem, bool> = items
            .iter()
            .enumerate()
            .map(|(i, &it)| (it, bits & (1 << i) != 0))
            .collect();
        for &o in &outer_opts {
            out.push(SplitChoice {
                nest: nest.clone(),
                outer_with_u: o,
            });
        }
    }
    out
}

/// Enumerates extensions, invoking `visit` per (deduplicated) solution.
/// Returns the number of expanded states, or budget exhaustion.
pub fn enumerate_with(
    inst: &ExtensionInstance,
    cfg: &OracleConfig,
    visit: &mut dyn FnMut(&OnePlanarDrawing) -> Step,
) -> Result<u64, OracleError> {
    let mut search = Search {
        inst,
        cfg,
        edges: insertion_order(inst),
        expanded: 0,
        seen_final: BTreeSet::new(),
        seen_partial: BTreeSet::new(),
        stopped: false,
        exhausted: false,
    };
    search.run(visit);
    if search.exhausted {
        Err(OracleError::BudgetExhausted {
            expanded: search.expanded,
        })
    } else {
        Ok(search.expanded)
    }
}

/// All extensions (embedding-equivalence classes when deduplicating).
pub fn enumerate_extensions(
    inst: &ExtensionInstance,
    cfg: &OracleConfig,
) -> Result<Vec<OnePlanarDrawing>, OracleError> {
    let mut out = Vec::new();
    enumerate_with(inst, cfg, &mut |d| {
        out.push(d.clone());
        Step::Continue
    })?;
    Ok(out)
}

/// First extension found, or a definitive `None` when the search is
/// exhaustive within budget.
pub fn exists_extension(
    inst: &ExtensionInstance,
    cfg: &OracleConfig,
) -> Result<Option<OnePlanarDrawing>, OracleError> {
    let mut found = None;
    let res = enumerate_with(inst, cfg, &mut |d| {
        found = Some(d.clone());
        Step::Stop
    });
    match (found, res) {
        (Some(d), _) => Ok(Some(d)),
        (None, Err(e)) => Err(e),
        (None, Ok(_)) => Ok(None),
    }
}

/// Crossings between pairs of missing edges in a solution.
pub fn added_pair_crossings(solution: &OnePlanarDrawing, base: &OnePlanarDrawing) -> usize {
    let base_keys = base.base_graph().edge_set();
    solution
        .crossing_pairs()
        .iter()
        .filter(|&&(e, f)| {
            !base_keys.contains(&solution.edge_key(e)) && !base_keys.contains(&solution.edge_key(f))
        })
        .count()
}

/// Maximum over all enumerated solutions of the added-pair crossing count.
/// `None` when the instance has no extension.
pub fn max_added_pair_crossings(
    inst: &ExtensionInstance,
    cfg: &OracleConfig,
) -> Result<Option<usize>, OracleError> {
    let mut best: Option<usize> = None;
    enumerate_with(inst, cfg, &mut |d| {
        let c = added_pair_crossings(d, &inst.drawing);
        best = Some(best.map_or(c, |b| b.max(c)));
        Step::Continue
    })?;
    Ok(best)
}

// ----------------------------------------------------------------------
// base regions
// ----------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("solution is not untangled")]
    NotUntangled,
    #[error("vertex {0:?} is not marked")]
    VertexNotMarked(VertexId),
    #[error("solution does not extend the instance drawing")]
    NotAnExtension,
}

/// One base region of a marked vertex inside a cell: either a union of
/// solution subfaces (with the incident vertex-edge parts), or a single
/// squeezed edge part.
#[derive(Clone, Debug)]
pub struct BaseRegion {
    pub subfaces: BTreeSet<usize>,
    pub v_parts: BTreeSet<PlanEdge>,
    pub degenerate: bool,
}

/// Base regions of `v` per cell (cells are face indices of the instance
/// drawing), computed on the planarized solution: the cell is partitioned by
/// the added-edge parts; pieces touching other marked vertices' incident
/// parts are excluded, the rest group along `v`'s parts.
pub fn extract_base_regions(
    solution: &OnePlanarDrawing,
    inst: &UntangledInstance,
    v: VertexId,
) -> Result<BTreeMap<usize, Vec<BaseRegion>>, RegionError> {
    if !inst.marked.contains(&v) {
        return Err(RegionError::VertexNotMarked(v));
    }
    let h_keys = inst.drawing.base_graph().edge_set();
    // untangled: no crossing pair with both edges missing
    for (e, f) in solution.crossing_pairs() {
        let ke = solution.edge_key(e);
        let kf = solution.edge_key(f);
        if !h_keys.contains(&ke) && !h_keys.contains(&kf) {
            return Err(RegionError::NotUntangled);
        }
    }
    if !solution.is_extension_of(&inst.drawing).unwrap_or(false) {
        return Err(RegionError::NotAnExtension);
    }
    let tags = face_tags(solution, &inst.drawing);
    // classify added plan edges
    let added = |e: EdgeId| !h_keys.contains(&solution.edge_key(e));
    #[derive(PartialEq, Clone, Copy)]
    enum Part {
        VPart,
        OtherMarked,
        Far,
        Boundary,
    }
    let classify = |pe: PlanEdge| -> Part {
        let e = pe.base();
        if !added(e) {
            return Part::Boundary;
        }
        let (a, b) = solution.pe_endpoints(pe);
        let touches = |x: VertexId| a == x || b == x;
        if touches(v) {
            Part::VPart
        } else if inst.marked.iter().any(|&wm| wm != v && touches(wm)) {
            Part::OtherMarked
        } else {
            Part::Far
        }
    };
    // cells of the instance drawing having v on their boundary
    let cells_at_v: BTreeSet<usize> = {
        let dview = inst.drawing.view();
        (0..dview.faces.len())
            .filter(|&f| {
                dview.faces[f]
                    .iter()
                    .flat_map(|&w| dview.walks[w].iter())
                    .any(|dd| dd.origin == v)
            })
            .collect()
    };
    let nf = solution.view().faces.len();
    let mut result: BTreeMap<usize, Vec<BaseRegion>> = BTreeMap::new();
    for &cell in &cells_at_v {
        let subfaces: Vec<usize> = (0..nf).filter(|&f| tags[f] == cell).collect();
        if subfaces.is_empty() {
            continue;
        }
        let inside: BTreeSet<usize> = subfaces.iter().copied().collect();
        // plan edges interior to the cell (both sides inside)
        let mut interior_parts: BTreeMap<PlanEdge, (usize, usize)> = BTreeMap::new();
        for &f in &subfaces {
            for &wk in &solution.view().faces[f] {
                for &dd in &solution.view().walks[wk] {
                    let g = solution.view().face_of_dart(solution.twin(dd));
                    if inside.contains(&g) {
                        interior_parts.entry(dd.pe).or_insert((f, g));
                    }
                }
            }
        }
        // union-find over subfaces, merging across far parts
        let mut parent: BTreeMap<usize, usize> =
            subfaces.iter().map(|&f| (f, f)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, mut x: usize) -> usize {
            while p[&x] != x {
                let g = p[&p[&x]];
                p.insert(x, g);
                x = g;
            }
            x
        }
        for (&pe, &(f, g)) in &interior_parts {
            if classify(pe) == Part::Far {
                let (a, b) = (find(&mut parent, f), find(&mut parent, g));
                parent.insert(a, b);
            }
        }
        // a piece is unclean when an other-marked part touches it (from
        // inside the cell or as part of its boundary walks)
        let mut unclean: BTreeSet<usize> = BTreeSet::new();
        for &f in &subfaces {
            'scan: for &wk in &solution.view().faces[f] {
                for &dd in &solution.view().walks[wk] {
                    if classify(dd.pe) == Part::OtherMarked {
                        unclean.insert(find(&mut parent, f));
                        break 'scan;
                    }
                }
            }
        }
        // group clean pieces along v-parts
        let mut vparts: Vec<(PlanEdge, usize, usize)> = Vec::new();
        for (&pe, &(f, g)) in &interior_parts {
            if classify(pe) == Part::VPart {
                vparts.push((pe, find(&mut parent, f), find(&mut parent, g)));
            }
        }
        for &(_, a, b) in &vparts {
            if !unclean.contains(&a) && !unclean.contains(&b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent.insert(ra, rb);
            }
        }
        // collect regions
        let mut regions: BTreeMap<usize, BaseRegion> = BTreeMap::new();
        for &(pe, a, b) in &vparts {
            let (ca, cb) = (find(&mut parent, a), find(&mut parent, b));
            let a_clean = !unclean.contains(&ca);
            let b_clean = !unclean.contains(&cb);
            if a_clean || b_clean {
                let root = if a_clean { ca } else { cb };
                let entry = regions.entry(root).or_insert_with(|| BaseRegion {
                    subfaces: BTreeSet::new(),
                    v_parts: BTreeSet::new(),
                    degenerate: false,
                });
                entry.v_parts.insert(pe);
            } else {
                // squeezed between unclean pieces: a degenerate region
                result.entry(cell).or_default().push(BaseRegion {
                    subfaces: BTreeSet::new(),
                    v_parts: [pe].into_iter().collect(),
                    degenerate: true,
                });
            }
        }
        for (&root, region) in regions.iter_mut() {
            for &f in &subfaces {
                if find(&mut parent, f) == root {
                    region.subfaces.insert(f);
                }
            }
        }
        let list = result.entry(cell).or_default();
        list.extend(regions.into_values());
        if list.is_empty() {
            result.remove(&cell);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::testutil;

    fn wheel_instance() -> ExtensionInstance {
        let d = testutil::c4();
        let mut g = d.base_graph();
        let v = VertexId(4);
        g.vertices.insert(v);
        for u in 0..4 {
            g.add_edge(v, VertexId(u));
        }
        ExtensionInstance::new(g, d).unwrap()
    }

    #[test]
    fn kappa_zero_yields_exactly_the_input() {
        let d = testutil::k4();
        let inst = ExtensionInstance::new(d.base_graph(), d.clone()).unwrap();
        let sols = enumerate_extensions(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].signature(), d.signature());
    }

    #[test]
    fn wheel_has_crossing_free_solution() {
        let inst = wheel_instance();
        let sols = enumerate_extensions(&inst, &OracleConfig::default()).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().any(|s| s.crossing_pairs().is_empty()));
        for s in &sols {
            assert!(s.validate_one_planar().is_empty());
            assert!(s.is_extension_of(&inst.drawing).unwrap());
        }
    }

    #[test]
    fn k5_needs_a_crossing() {
        // K4 drawn planar, apex adjacent to all four: every solution crosses
        let d = testutil::k4();
        let mut g = d.base_graph();
        let v = VertexId(4);
        g.vertices.insert(v);
        for u in 0..4 {
            g.add_edge(v, VertexId(u));
        }
        let inst = ExtensionInstance::new(g, d).unwrap();
        let sols = enumerate_extensions(&inst, &OracleConfig::default()).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            assert!(!s.crossing_pairs().is_empty());
        }
        let min = sols
            .iter()
            .map(|s| s.crossing_pairs().len())
            .min()
            .unwrap();
        assert_eq!(min, 1);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let inst = wheel_instance();
        let cfg = OracleConfig {
            budget: 3,
            ..OracleConfig::default()
        };
        assert!(matches!(
            enumerate_extensions(&inst, &cfg),
            Err(OracleError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn single_added_vertex_has_no_added_pair_crossings() {
        let inst = wheel_instance();
        let max = max_added_pair_crossings(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(max, Some(0));
    }

    #[test]
    fn base_regions_whole_cell_when_alone() {
        // square + marked vertex z attached by one edge drawn inside; one
        // missing edge z-2 to the opposite corner
        let d = testutil::c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        let (d2, _) = d
            .insert_edge_in_face(
                inner,
                crate::drawing::Anchor::Corner(cu),
                crate::drawing::Anchor::Floating(VertexId(5)),
                &SplitChoice::plain(),
            )
            .unwrap();
        let mut g = d2.base_graph();
        g.add_edge(VertexId(5), VertexId(2));
        let uinst = UntangledInstance::new(g.clone(), d2.clone(), [VertexId(5)].into()).unwrap();
        let iext = ExtensionInstance::new(g, d2).unwrap();
        let sols = enumerate_extensions(&iext, &OracleConfig::default()).unwrap();
        let mut seen_region = false;
        for s in &sols {
            if added_pair_crossings(s, &iext.drawing) > 0 {
                continue;
            }
            let regions = extract_base_regions(s, &uinst, VertexId(5)).unwrap();
            for (_, rs) in &regions {
                assert!(rs.len() <= 1, "one added vertex: at most one region per cell");
                seen_region = true;
            }
        }
        assert!(seen_region);
    }

    #[test]
    fn insertion_order_is_deterministic() {
        let inst = wheel_instance();
        let o1 = insertion_order(&inst);
        let o2 = insertion_order(&inst);
        assert_eq!(o1, o2);
        assert_eq!(o1.len(), 4);
        let _ = Graph::new();
    }
}
