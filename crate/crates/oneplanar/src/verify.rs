//! Drawing validation diagnostics, canonical forms, and the extension check.

use crate::drawing::{Dart, DrawingError, OnePlanarDrawing, PlanEdge};
use crate::graph::{EdgeId, VertexId};
use std::collections::BTreeSet;

/// Lexicographically minimal rotation of a cyclic sequence.
pub(crate) fn min_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    if seq.is_empty() {
        return Vec::new();
    }
    let mut best = seq.to_vec();
    for s in 1..seq.len() {
        let cand: Vec<T> = seq[s..].iter().chain(seq[..s].iter()).cloned().collect();
        if cand < best {
            best = cand;
        }
    }
    best
}

impl OnePlanarDrawing {
    /// Canonical name of a planarization vertex: real labels are kept;
    /// dummies are renamed by the sorted list of crossing-pair keys, so that
    /// two drawings of the same labeled graph compare by embedding only.
    fn canon_vertex(&self, v: VertexId) -> String {
        if !v.is_dummy() {
            return format!("v{}", v.0);
        }
        let mut pairs: Vec<((VertexId, VertexId), (VertexId, VertexId), VertexId)> = self
            .crossings
            .iter()
            .filter(|(e, f)| e < f)
            .map(|(&e, &f)| {
                let (a, b) = (self.edge_key(e), self.edge_key(f));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (a, b, self.dummy_of(e).unwrap())
            })
            .collect();
        pairs.sort();
        let i = pairs.iter().position(|&(_, _, d)| d == v).expect("known dummy");
        format!("x{i}")
    }

    fn canon_pe(&self, pe: PlanEdge) -> String {
        let e = pe.base();
        let (a, b) = self.edge_key(e);
        match pe {
            PlanEdge::Whole(_) => format!("w{}-{}", a.0, b.0),
            PlanEdge::HalfA(_) => format!("h{}-{}@{}", a.0, b.0, self.endpoints(e).0 .0),
            PlanEdge::HalfB(_) => format!("h{}-{}@{}", a.0, b.0, self.endpoints(e).1 .0),
        }
    }

    fn canon_dart(&self, d: Dart) -> String {
        format!("{}:{}", self.canon_vertex(d.origin), self.canon_pe(d.pe))
    }

    fn canon_face(&self, face: usize) -> String {
        let mut walks: Vec<String> = self.view().faces[face]
            .iter()
            .map(|&w| {
                let seq: Vec<String> = self.view().walks[w]
                    .iter()
                    .map(|&d| self.canon_dart(d))
                    .collect();
                min_rotation(&seq).join(" ")
            })
            .collect();
        walks.sort();
        format!("<{}>", walks.join("|"))
    }

    /// Canonical embedding signature: rotations in minimal cyclic form, face
    /// grouping, outer face, and isolated-vertex hosts, all over stable
    /// labels. Drawings of the same labeled graph have equal signatures
    /// exactly when they are the same embedding.
    pub fn signature(&self) -> String {
        let mut out = String::new();
        let vs: Vec<String> = self.vertices().iter().map(|&v| self.canon_vertex(v)).collect();
        out.push_str(&format!("V[{}]", vs.join(",")));
        let mut es: Vec<String> = (0..self.edge_list().len() as u32)
            .map(|i| {
                let (a, b) = self.edge_key(EdgeId(i));
                format!("{}-{}", a.0, b.0)
            })
            .collect();
        es.sort();
        out.push_str(&format!("E[{}]", es.join(",")));
        let mut xs: Vec<String> = self
            .crossing_pairs()
            .iter()
            .map(|&(e, f)| {
                let (a, b) = (self.edge_key(e), self.edge_key(f));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                format!("{}-{}x{}-{}", a.0 .0, a.1 .0, b.0 .0, b.1 .0)
            })
            .collect();
        xs.sort();
        out.push_str(&format!("X[{}]", xs.join(",")));
        let mut rots: Vec<(String, String)> = self
            .rotations()
            .iter()
            .map(|(&v, list)| {
                let labels: Vec<String> = list.iter().map(|&pe| self.canon_pe(pe)).collect();
                (self.canon_vertex(v), min_rotation(&labels).join(">"))
            })
            .collect();
        rots.sort();
        out.push_str("R{");
        for (v, r) in rots {
            out.push_str(&format!("{v}:({r});"));
        }
        out.push('}');
        let mut faces: Vec<(String, bool)> = (0..self.view().faces.len())
            .map(|f| (self.canon_face(f), f == self.outer_face()))
            .collect();
        faces.sort();
        out.push_str("F{");
        for (fs, outer) in &faces {
            out.push_str(fs);
            if *outer {
                out.push('*');
            }
        }
        out.push('}');
        let mut iso: Vec<String> = self
            .isolated_vertices()
            .iter()
            .map(|(&v, &host)| format!("{}@{}", self.canon_vertex(v), self.canon_face(host)))
            .collect();
        iso.sort();
        out.push_str(&format!("I[{}]", iso.join(",")));
        out
    }

    /// Diagnostics for every violated drawing invariant; empty means valid.
    pub fn validate_one_planar(&self) -> Vec<String> {
        let mut report = Vec::new();
        for (&e, &f) in self.crossings() {
            if e == f {
                report.push(format!("edge {e:?} crosses itself"));
                continue;
            }
            if self.crossings().get(&f) != Some(&e) {
                report.push(format!("crossing map not symmetric at {e:?}"));
            }
            if e.0 as usize >= self.edge_list().len() || f.0 as usize >= self.edge_list().len() {
                report.push(format!("crossing references unknown edge {e:?}/{f:?}"));
                continue;
            }
            let (a, b) = self.endpoints(e);
            let (c, d) = self.endpoints(f);
            if a == c || a == d || b == c || b == d {
                report.push(format!("adjacent edges cross: {e:?} and {f:?}"));
            }
        }
        for e in (0..self.edge_list().len() as u32).map(EdgeId) {
            let (a, b) = self.endpoints(e);
            if a == b {
                report.push(format!("loop edge {e:?}"));
                continue;
            }
            let count = |v: VertexId, pe: PlanEdge| {
                self.rotation(v)
                    .map(|l| l.iter().filter(|&&x| x == pe).count())
                    .unwrap_or(0)
            };
            if self.is_crossed(e) {
                let Some(dm) = self.dummy_of(e) else {
                    report.push(format!("crossed edge {e:?} has no dummy"));
                    continue;
                };
                for (v, pe, what) in [
                    (a, PlanEdge::HalfA(e), "half A at endpoint"),
                    (dm, PlanEdge::HalfA(e), "half A at dummy"),
                    (dm, PlanEdge::HalfB(e), "half B at dummy"),
                    (b, PlanEdge::HalfB(e), "half B at endpoint"),
                ] {
                    if count(v, pe) != 1 {
                        report.push(format!("edge {e:?}: {what} not present exactly once"));
                    }
                }
                if count(a, PlanEdge::Whole(e)) + count(b, PlanEdge::Whole(e)) > 0 {
                    report.push(format!("crossed edge {e:?} still has a whole piece"));
                }
            } else if count(a, PlanEdge::Whole(e)) != 1 || count(b, PlanEdge::Whole(e)) != 1 {
                report.push(format!("edge {e:?} missing from an endpoint rotation"));
            }
        }
        let dummies: BTreeSet<VertexId> = self.dummy_of.values().copied().collect();
        for &dm in &dummies {
            let Some(list) = self.rotation(dm) else {
                report.push(format!("dummy {dm:?} has no rotation"));
                continue;
            };
            if list.len() != 4 {
                report.push(format!("dummy {dm:?} has degree {} (want 4)", list.len()));
                continue;
            }
            let bases: Vec<EdgeId> = list.iter().map(|pe| pe.base()).collect();
            if bases[0] != bases[2] || bases[1] != bases[3] || bases[0] == bases[1] {
                report.push(format!("dummy {dm:?} rotation does not alternate its two edges"));
            } else if self.crossings().get(&bases[0]) != Some(&bases[1]) {
                report.push(format!("dummy {dm:?} joins edges that are not a crossing pair"));
            }
        }
        for v in self.rotations().keys() {
            if !v.is_dummy() && !self.vertices().contains(v) {
                report.push(format!("rotation for undeclared vertex {v:?}"));
            }
        }
        for &v in self.vertices() {
            let has_rot = self.rotation(v).map(|l| !l.is_empty()).unwrap_or(false);
            let is_iso = self.isolated_vertices().contains_key(&v);
            if has_rot == is_iso {
                report.push(format!("{v:?}: isolated bookkeeping inconsistent"));
            }
        }
        match self.trace() {
            Err(e) => report.push(format!("face tracing failed: {e}")),
            Ok(view) => {
                let total: usize = view.walks.iter().map(|w| w.len()).sum();
                if total != self.all_darts().len() {
                    report.push("face walks do not partition the darts".into());
                }
                let (v, e, f, c) = self.euler_counts();
                if v + f != e + 1 + c {
                    report.push(format!("Euler identity violated: V={v} E={e} F={f} C={c}"));
                }
            }
        }
        report
    }

    /// True iff `self` extends `base`: the planarization of `self` restricted
    /// to `base`'s graph is the same labeled embedding (rotations, nesting,
    /// outer face).
    pub fn is_extension_of(&self, base: &OnePlanarDrawing) -> Result<bool, DrawingError> {
        let bg = base.base_graph();
        if !bg.is_subgraph_of(&self.base_graph()) {
            return Err(DrawingError::NotASubgraph);
        }
        let restricted = self.restrict_to(&bg)?;
        Ok(restricted.signature() == base.signature())
    }
}

#[cfg(test)]
mod tests {
    use crate::drawing::{Anchor, Dart, PlanEdge, SplitChoice};
    use crate::graph::{EdgeId, VertexId};
    use crate::testutil;

    #[test]
    fn valid_drawing_reports_nothing() {
        assert!(testutil::c4().validate_one_planar().is_empty());
        assert!(testutil::k4().validate_one_planar().is_empty());
    }

    #[test]
    fn signature_stable_under_edge_reordering() {
        assert_eq!(testutil::c4().signature(), testutil::c4_shuffled().signature());
    }

    #[test]
    fn extension_reflexive_and_detects_additions() {
        let d = testutil::c4();
        assert!(d.is_extension_of(&d).unwrap());
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        let cw = d.corners_on_face(VertexId(2), inner)[0];
        let (d2, _) = d
            .insert_edge_in_face(inner, Anchor::Corner(cu), Anchor::Corner(cw), &SplitChoice::plain())
            .unwrap();
        assert!(d2.is_extension_of(&d).unwrap());
    }

    #[test]
    fn crossing_insert_restricts_back_cleanly() {
        let d = testutil::c4();
        let inner = 1 - d.outer_face();
        let cu = d.corners_on_face(VertexId(0), inner)[0];
        let crossed = d
            .view()
            .faces[inner]
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
        assert!(d2.validate_one_planar().is_empty());
        assert!(d2.is_extension_of(&d).unwrap());
    }

    #[test]
    fn rotation_change_breaks_extension() {
        let base = testutil::k4();
        // same graph, vertex 3's rotation reversed: a different embedding
        let mut rots: std::collections::BTreeMap<VertexId, Vec<EdgeId>> = base
            .rotations()
            .iter()
            .map(|(&v, l)| (v, l.iter().map(|pe| pe.base()).collect()))
            .collect();
        rots.get_mut(&VertexId(3)).unwrap().reverse();
        let redrawn = crate::drawing::OnePlanarDrawing::from_rotations(
            base.vertices(),
            base.edge_list(),
            &rots,
            Dart { origin: VertexId(0), pe: PlanEdge::Whole(EdgeId(0)) },
            &[],
            &std::collections::BTreeMap::new(),
        )
        .unwrap();
        assert_ne!(redrawn.signature(), base.signature());
        assert!(!redrawn.is_extension_of(&base).unwrap());
    }
}
