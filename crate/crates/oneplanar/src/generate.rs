//! Seeded random instance generation and the disconnected witness family.

use crate::drawing::{Anchor, Dart, OnePlanarDrawing, PlanEdge, SplitChoice};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::instance::ExtensionInstance;
use crate::oracle::{self, OracleConfig};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("generation failed after {0} attempts")]
    GenerationFailed(u32),
}

/// Plane triangulation on `n` vertices grown by repeated vertex insertion
/// into a random face.
fn random_triangulation(n: u32, rng: &mut ChaCha8Rng) -> OnePlanarDrawing {
    let vs: BTreeSet<VertexId> = (0..3).map(VertexId).collect();
    let edges = vec![
        (VertexId(0), VertexId(1)),
        (VertexId(1), VertexId(2)),
        (VertexId(2), VertexId(0)),
    ];
    let mut rot = BTreeMap::new();
    rot.insert(VertexId(0), vec![EdgeId(0), EdgeId(2)]);
    rot.insert(VertexId(1), vec![EdgeId(1), EdgeId(0)]);
    rot.insert(VertexId(2), vec![EdgeId(2), EdgeId(1)]);
    let outer = Dart {
        origin: VertexId(0),
        pe: PlanEdge::Whole(EdgeId(0)),
    };
    let mut d =
        OnePlanarDrawing::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap();
    let keep_u_outer = SplitChoice {
        nest: BTreeMap::new(),
        outer_with_u: Some(true),
    };
    for v in 3..n {
        let v = VertexId(v);
        let face = rng.gen_range(0..d.view().faces.len());
        let walk = &d.view().walks[d.view().faces[face][0]];
        assert_eq!(walk.len(), 3, "triangulation faces stay triangles");
        let corners: Vec<Dart> = walk.iter().map(|&dd| d.corner_of_walk_position(dd)).collect();
        let (d1, _) = d
            .insert_edge_in_face(face, Anchor::Corner(corners[0]), Anchor::Floating(v), &keep_u_outer)
            .unwrap();
        d = d1;
        for &c in &corners[1..] {
            let f = d.corner_face(c);
            let vc = d
                .corners_on_face(v, f)
                .into_iter()
                .next()
                .expect("new vertex sees the face");
            let (d1, _) = d
                .insert_edge_in_face(f, Anchor::Corner(c), Anchor::Corner(vc), &keep_u_outer)
                .unwrap();
            d = d1;
        }
    }
    d
}

impl OnePlanarDrawing {
    /// The corner at a walk position: the corner of `d.origin` whose
    /// rotation successor continues the walk through `d`.
    pub fn corner_of_walk_position(&self, d: Dart) -> Dart {
        // the walk enters origin via twin(prev); corner c satisfies rot_next(c) = d
        let list = self.rotation(d.origin).expect("drawn vertex");
        let i = list.iter().position(|&pe| pe == d.pe).expect("dart");
        let prev = list[(i + list.len() - 1) % list.len()];
        Dart {
            origin: d.origin,
            pe: prev,
        }
    }
}

/// Deletes random edges (keeping the graph connected) down to `target` edges.
fn thin_out(mut d: OnePlanarDrawing, target: usize, rng: &mut ChaCha8Rng) -> OnePlanarDrawing {
    while d.edge_list().len() > target {
        let candidates: Vec<EdgeId> = (0..d.edge_list().len() as u32)
            .map(EdgeId)
            .filter(|&e| {
                let mut g = d.base_graph();
                let key = g.edge_key(e);
                g.edges.retain(|&(a, b)| {
                    (a, b) != (key.0, key.1) && (a, b) != (key.1, key.0)
                });
                g.is_connected()
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let e = candidates[rng.gen_range(0..candidates.len())];
        d = d.remove_edge(e);
    }
    d
}

/// Redraws up to `count` edges with one crossing each, keeping validity.
fn add_random_crossings(
    mut d: OnePlanarDrawing,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> OnePlanarDrawing {
    for _ in 0..count {
        let uncrossed: Vec<EdgeId> = (0..d.edge_list().len() as u32)
            .map(EdgeId)
            .filter(|&e| !d.is_crossed(e))
            .collect();
        if uncrossed.len() < 2 {
            break;
        }
        let e = uncrossed[rng.gen_range(0..uncrossed.len())];
        let (a, b) = d.endpoints(e);
        let removed = d.remove_edge(e);
        // candidate re-insertions crossing one other edge
        let mut moves = Vec::new();
        for g in (0..removed.edge_list().len() as u32).map(EdgeId) {
            if removed.is_crossed(g) {
                continue;
            }
            let (x, y) = removed.endpoints(g);
            if [x, y].contains(&a) || [x, y].contains(&b) {
                continue;
            }
            for origin in [x, y] {
                let crossed = Dart {
                    origin,
                    pe: PlanEdge::Whole(g),
                };
                let f1 = removed.view().face_of_dart(crossed);
                let f2 = removed.view().face_of_dart(removed.twin(crossed));
                for ca in removed.corners_on_face(a, f1) {
                    for cb in removed.corners_on_face(b, f2) {
                        moves.push((ca, crossed, cb));
                    }
                }
            }
        }
        if moves.is_empty() {
            continue; // keep the original drawing of e
        }
        let (ca, crossed, cb) = moves[rng.gen_range(0..moves.len())];
        match removed.insert_crossing_edge(
            Anchor::Corner(ca),
            crossed,
            Anchor::Corner(cb),
            &SplitChoice::plain(),
            &SplitChoice::plain(),
        ) {
            Ok((nd, _)) if nd.validate_one_planar().is_empty() => d = nd,
            _ => {}
        }
    }
    d
}

/// Random extension instance: a connected 1-planar drawn `H` plus `kappa`
/// worth of added vertices/edges. Deterministic in `seed`.
pub fn generate_random_instance(
    n: u32,
    kappa: usize,
    seed: u64,
) -> Result<ExtensionInstance, GenError> {
    assert!(n >= 3, "need at least a triangle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: u32 = 64;
    for _ in 0..ATTEMPTS {
        let tri = random_triangulation(n, &mut rng);
        let max_e = tri.edge_list().len();
        let min_e = (n as usize).saturating_sub(1);
        let target = rng.gen_range(min_e..=max_e);
        let thinned = thin_out(tri, target, &mut rng);
        let crossings = rng.gen_range(0..=thinned.edge_list().len() / 10);
        let h = add_random_crossings(thinned, crossings, &mut rng);
        if !h.validate_one_planar().is_empty() {
            continue;
        }
        // distribute kappa over added vertices and H-H edges
        let nv = rng.gen_range(0..=kappa.min(2));
        let ne_h = kappa - nv;
        let mut g = h.base_graph();
        let h_verts: Vec<VertexId> = g.vertices.iter().copied().collect();
        let mut ok = true;
        let mut added: Vec<VertexId> = Vec::new();
        for i in 0..nv {
            let v = VertexId(n + i as u32);
            g.vertices.insert(v);
            added.push(v);
            let deg = rng.gen_range(1..=4.min(h_verts.len()));
            let mut targets = h_verts.clone();
            targets.shuffle(&mut rng);
            for &t in targets.iter().take(deg) {
                g.add_edge(v, t);
            }
        }
        if added.len() == 2 && rng.gen_bool(0.3) {
            g.add_edge(added[0], added[1]);
        }
        for _ in 0..ne_h {
            let mut placed = false;
            for _ in 0..40 {
                let a = h_verts[rng.gen_range(0..h_verts.len())];
                let b = h_verts[rng.gen_range(0..h_verts.len())];
                if a != b && !g.has_edge(a, b) {
                    g.add_edge(a, b);
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if let Ok(inst) = ExtensionInstance::new(g, h) {
            return Ok(inst);
        }
    }
    Err(GenError::GenerationFailed(ATTEMPTS))
}

/// The disconnected witness family: two disjoint cycles of length `2(m+1)`
/// drawn woven so that every edge of each cycle is crossed once; every cell
/// boundary is then saturated. Two added vertices attach to the `m+1`
/// corners of each cycle on the shared central cell, interleaved, so added
/// edges are forced to cross each other.
pub fn disconnected_family(m: usize) -> ExtensionInstance {
    assert!(m >= 1, "family starts at m = 1");
    let k = m + 1;
    let ring = 2 * k as u32;
    // drawn A-cycle: vertices 0..ring
    let vs: BTreeSet<VertexId> = (0..ring).map(VertexId).collect();
    let mut edges = Vec::new();
    let mut rot: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for i in 0..ring {
        edges.push((VertexId(i), VertexId((i + 1) % ring)));
    }
    for i in 0..ring {
        let prev = EdgeId((i + ring - 1) % ring);
        let cur = EdgeId(i);
        rot.insert(VertexId(i), vec![prev, cur]);
    }
    let outer = Dart {
        origin: VertexId(1),
        pe: PlanEdge::Whole(EdgeId(0)),
    };
    let a_cycle =
        OnePlanarDrawing::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap();
    // scaffold: B-cycle vertices ring..2*ring, edge b_i-b_{i+1} for all i
    let mut scaffold = a_cycle.base_graph();
    for i in 0..ring {
        scaffold.vertices.insert(VertexId(ring + i));
    }
    for i in 0..ring {
        scaffold.add_edge(VertexId(ring + i), VertexId(ring + (i + 1) % ring));
    }
    let pre = ExtensionInstance::new(scaffold, a_cycle).expect("scaffold instance");
    // search for the woven drawing: every B-edge crosses its matching A-edge
    let cfg = OracleConfig::default();
    let mut woven: Option<(OnePlanarDrawing, usize)> = None;
    oracle::enumerate_with(&pre, &cfg, &mut |d| {
        let pairs = d.crossing_pairs();
        if pairs.len() != ring as usize {
            return oracle::Step::Continue;
        }
        let matched = pairs.iter().all(|&(e, f)| {
            let (ka, kb) = (d.edge_key(e), d.edge_key(f));
            let (a_key, b_key) = if ka.0 .0 < ring { (ka, kb) } else { (kb, ka) };
            // A-edge i-(i+1) must cross B-edge (ring+i)-(ring+i+1)
            let i = if (a_key.1 .0 + 1) % ring == a_key.0 .0 || a_key.1 .0 == (a_key.0 .0 + 1) % ring {
                if a_key.0 .0 == 0 && a_key.1 .0 == ring - 1 {
                    ring - 1
                } else {
                    a_key.0 .0
                }
            } else {
                return false;
            };
            let want = (
                VertexId((ring + i).min(ring + (i + 1) % ring)),
                VertexId((ring + i).max(ring + (i + 1) % ring)),
            );
            b_key == want
        });
        if !matched {
            return oracle::Step::Continue;
        }
        // find a central cell: k A-corners and k B-corners alternating
        for f in 0..d.view().faces.len() {
            if d.view().faces[f].len() != 1 {
                continue;
            }
            let reals: Vec<VertexId> = d.view().faces[f]
                .iter()
                .flat_map(|&wk| d.view().walks[wk].iter())
                .map(|dd| dd.origin)
                .filter(|v| !v.is_dummy())
                .collect();
            if reals.len() != 2 * k {
                continue;
            }
            let alternating = reals
                .iter()
                .zip(reals.iter().cycle().skip(1))
                .all(|(x, y)| (x.0 < ring) != (y.0 < ring));
            if alternating {
                woven = Some((d.clone(), f));
                return oracle::Step::Stop;
            }
        }
        oracle::Step::Continue
    })
    .expect("woven search within budget");
    let (drawing, central) = woven.expect("woven drawing exists");
    // attach v to the A-corners and w to the B-corners of the central cell
    let mut g = drawing.base_graph();
    let v = VertexId(10 * ring);
    let w = VertexId(10 * ring + 1);
    g.vertices.insert(v);
    g.vertices.insert(w);
    for vid in drawing.view().faces[central]
        .iter()
        .flat_map(|&wk| drawing.view().walks[wk].iter())
        .map(|dd| dd.origin)
        .filter(|x| !x.is_dummy())
    {
        if vid.0 < ring {
            if !g.has_edge(v, vid) {
                g.add_edge(v, vid);
            }
        } else if !g.has_edge(w, vid) {
            g.add_edge(w, vid);
        }
    }
    ExtensionInstance::new(g, drawing).expect("family instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic_and_valid() {
        let a = generate_random_instance(6, 1, 7).unwrap();
        let b = generate_random_instance(6, 1, 7).unwrap();
        assert_eq!(
            crate::codec::serialize_extension(&a),
            crate::codec::serialize_extension(&b)
        );
        assert!(a.drawing.validate_one_planar().is_empty());
        assert_eq!(a.kappa, 1);
    }

    #[test]
    fn generator_respects_kappa() {
        for seed in 0..5 {
            let inst = generate_random_instance(7, 2, seed).unwrap();
            assert_eq!(inst.kappa, inst.v_add.len() + inst.e_add_h.len());
            assert_eq!(inst.kappa, 2);
            for &v in &inst.v_add {
                assert!(inst.e_add.iter().any(|&(a, b)| a == v || b == v));
            }
        }
    }

    #[test]
    fn family_is_disconnected_with_two_added() {
        let inst = disconnected_family(1);
        assert!(!inst.h_connected);
        assert_eq!(inst.v_add.len(), 2);
        assert_eq!(inst.drawing.base_graph().components().len(), 2);
        assert_eq!(inst.drawing.crossing_pairs().len(), 4);
        // every drawn edge is crossed
        for e in 0..inst.drawing.edge_list().len() as u32 {
            assert!(inst.drawing.is_crossed(EdgeId(e)));
        }
    }
}
