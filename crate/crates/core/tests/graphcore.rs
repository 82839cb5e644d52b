use dynfpt::graphcore::{DynGraph, GraphError};
use proptest::prelude::*;

#[test]
fn empty_graph() {
    let g = DynGraph::new(0, false, false);
    assert_eq!((g.n(), g.m()), (0, 0));
    let g = DynGraph::simple(5);
    assert!((0..5).all(|v| g.degree(v) == 0));
}

#[test]
fn loops_count_twice() {
    let mut g = DynGraph::new(3, true, true);
    g.insert_edge(0, 0).unwrap();
    g.insert_edge(0, 0).unwrap();
    assert_eq!(g.m(), 2);
    assert_eq!(g.degree(0), 4);
}

#[test]
fn insert_delete_basics() {
    let mut g = DynGraph::simple(2);
    let h = g.insert_edge(0, 1).unwrap();
    assert_eq!((g.m(), g.degree(0), g.degree(1)), (1, 1, 1));
    assert_eq!(g.insert_edge(1, 0), Err(GraphError::DuplicateEdge(1, 0)));
    assert_eq!(g.insert_edge(1, 1), Err(GraphError::LoopForbidden(1)));
    assert_eq!(g.insert_edge(0, 2), Err(GraphError::VertexOutOfRange(2)));
    g.delete_edge(h).unwrap();
    assert_eq!(g.m(), 0);
    assert_eq!(g.delete_edge(h), Err(GraphError::UnknownHandle(h)));
}

#[test]
fn k4_degrees() {
    let mut g = DynGraph::simple(4);
    for u in 0..4 {
        for v in u + 1..4 {
            g.insert_edge(u, v).unwrap();
        }
    }
    assert!((0..4).all(|v| g.degree(v) == 3));
}

#[test]
fn p3_delete_middle_splits() {
    let mut g = DynGraph::simple(3);
    g.insert_edge(0, 1).unwrap();
    let h = g.insert_edge(1, 2).unwrap();
    g.delete_edge(h).unwrap();
    let mut c = dynfpt::dynconn::ConnectivityForest::new(3);
    for (_, u, v) in g.edges() {
        c.insert(u, v);
    }
    assert!(c.connected(0, 1));
    assert!(!c.connected(1, 2));
}

proptest! {
    #[test]
    fn degrees_match_recount(ops in prop::collection::vec((0u32..6, 0u32..6, any::<bool>()), 0..200)) {
        let mut g = DynGraph::new(6, true, true);
        let mut live = Vec::new();
        let mut inserted = 0usize;
        let mut deleted = 0usize;
        for (u, v, ins) in ops {
            if ins || live.is_empty() {
                live.push(g.insert_edge(u, v).unwrap());
                inserted += 1;
            } else {
                let i = (u as usize * 7 + v as usize) % live.len();
                g.delete_edge(live.swap_remove(i)).unwrap();
                deleted += 1;
            }
            let mut deg = [0usize; 6];
            for v in 0..6u32 {
                for &(w, h) in g.neighbors(v) {
                    prop_assert!(g.endpoints(h).is_some());
                    let _ = w;
                    deg[v as usize] += 1;
                }
            }
            for v in 0..6u32 {
                prop_assert_eq!(deg[v as usize], g.degree(v));
            }
            prop_assert_eq!(g.m(), inserted - deleted);
            prop_assert_eq!(2 * g.m(), deg.iter().sum::<usize>());
        }
    }
}
