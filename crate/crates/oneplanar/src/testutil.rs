//! Shared drawing fixtures for unit tests.

use crate::drawing::{Dart, OnePlanarDrawing, PlanEdge};
use crate::graph::{EdgeId, VertexId};
use std::collections::{BTreeMap, BTreeSet};

pub fn c4() -> OnePlanarDrawing {
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
    OnePlanarDrawing::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap()
}

/// The same square entered with the edge list in a different order.
pub fn c4_shuffled() -> OnePlanarDrawing {
    let vs: BTreeSet<VertexId> = (0..4).map(VertexId).collect();
    let edges = vec![
        (VertexId(2), VertexId(3)),
        (VertexId(0), VertexId(1)),
        (VertexId(3), VertexId(0)),
        (VertexId(1), VertexId(2)),
    ];
    let mut rot = BTreeMap::new();
    rot.insert(VertexId(0), vec![EdgeId(2), EdgeId(1)]);
    rot.insert(VertexId(1), vec![EdgeId(1), EdgeId(3)]);
    rot.insert(VertexId(2), vec![EdgeId(3), EdgeId(0)]);
    rot.insert(VertexId(3), vec![EdgeId(0), EdgeId(2)]);
    let outer = Dart {
        origin: VertexId(1),
        pe: PlanEdge::Whole(EdgeId(1)),
    };
    OnePlanarDrawing::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap()
}

pub fn k4() -> OnePlanarDrawing {
    let vs: BTreeSet<VertexId> = (0..4).map(VertexId).collect();
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
    OnePlanarDrawing::from_rotations(&vs, &edges, &rot, outer, &[], &BTreeMap::new()).unwrap()
}
