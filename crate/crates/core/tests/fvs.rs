use dynfpt::fvs::{scratch_resolved, FvsError, FvsLevel, FvsState, ResolvedGraph};
use dynfpt::graphcore::GraphError;
use dynfpt::oracle::{check, multigraph_isomorphic, oracle_fvs, GraphSnapshot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn snap(st: &FvsState) -> GraphSnapshot {
    GraphSnapshot::new(st.graph().n(), st.graph().edge_pairs())
}

fn assert_answer(st: &mut FvsState, ctx: &str) {
    let g = snap(st);
    let want = oracle_fvs(&g, st.k()).unwrap();
    let got = st.query();
    match (&got, &want) {
        (Some(s), Some(w)) => {
            assert_eq!(s.len(), w.len(), "{ctx}: not minimum");
            assert!(check::is_fvs(&g, s), "{ctx}: {s:?} leaves a cycle");
        }
        (None, None) => {}
        _ => panic!("{ctx}: got {got:?}, want {want:?}"),
    }
}

/// Child inputs equal G* minus their branch vertex, recursively.
fn assert_windows(level: &mut FvsLevel) {
    let Some(res) = level.resolved() else {
        return;
    };
    let gstar = res.gstar().edge_pairs();
    for (b, child) in level.children() {
        let want: Vec<(u32, u32)> = gstar.iter().copied().filter(|&(x, y)| x != b && y != b).collect();
        assert_eq!(child.input_edges(), want, "child at {b}");
        assert_windows(child);
    }
}

fn assert_resolved(res: &mut ResolvedGraph) {
    res.check_invariants();
    let n = res.input().n();
    let (present, edges) = scratch_resolved(n, &res.input().edge_pairs());
    assert!(multigraph_isomorphic(n, &res.gstar().edge_pairs(), &edges));
    let isolated = |p: &dyn Fn(u32) -> bool, e: &[(u32, u32)]| {
        (0..n as u32).filter(|&v| p(v) && !e.iter().any(|&(a, b)| a == v || b == v)).count()
    };
    let mine = res.gstar().edge_pairs();
    assert_eq!(isolated(&|v| res.present(v), &mine), isolated(&|v| present[v as usize], &edges));
}

#[test]
fn path_stays_acyclic() {
    let mut st = FvsState::new(5, 1).unwrap();
    for v in 0..4 {
        st.insert_edge(v, v + 1).unwrap();
        assert_eq!(st.query(), Some(vec![]));
    }
    let res = st.top().resolved().unwrap();
    assert_eq!(res.gstar().m(), 0);
    assert_eq!((0..5).filter(|&v| res.present(v)).count(), 1);
    assert_resolved(res);
}

#[test]
fn cycle_needs_one_vertex() {
    let mut st = FvsState::new(6, 1).unwrap();
    for v in 0..6 {
        st.insert_edge(v, (v + 1) % 6).unwrap();
    }
    let s = st.query().unwrap();
    assert_eq!(s.len(), 1);
    assert!(check::is_fvs(&snap(&st), &s));
    let res = st.top().resolved().unwrap();
    assert_eq!(res.loop_vertices().len(), 1);
    assert_resolved(res);
}

#[test]
fn two_triangles_exceed_one() {
    let mut st = FvsState::new(6, 1).unwrap();
    for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
        st.insert_edge(u, v).unwrap();
    }
    assert_eq!(st.query(), None);
    let mut two = FvsState::new(6, 2).unwrap();
    for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
        two.insert_edge(u, v).unwrap();
    }
    assert_eq!(two.query().map(|s| s.len()), Some(2));
}

#[test]
fn theta_graph_breaks_at_a_junction() {
    // Three paths of length 3 between 0 and 1.
    let mut st = FvsState::new(8, 1).unwrap();
    for (a, b) in [(2, 3), (4, 5), (6, 7)] {
        st.insert_edge(0, a).unwrap();
        st.insert_edge(a, b).unwrap();
        st.insert_edge(b, 1).unwrap();
    }
    let s = st.query().unwrap();
    assert!(s == vec![0] || s == vec![1], "{s:?}");
    let res = st.top().resolved().unwrap();
    assert_eq!(res.gstar().edge_pairs(), vec![(0, 1), (0, 1), (0, 1)]);
    assert_resolved(res);
}

#[test]
fn errors() {
    assert_eq!(FvsState::new(3, 9).unwrap_err(), FvsError::BadParameter(9));
    let mut st = FvsState::new(3, 1).unwrap();
    st.insert_edge(0, 1).unwrap();
    assert_eq!(st.insert_edge(0, 1), Err(FvsError::Graph(GraphError::DuplicateEdge(0, 1))));
    assert!(st.insert_edge(2, 2).is_err());
    assert!(st.delete_edge(1, 2).is_err());
    assert!(st.insert_edge(0, 7).is_err());
}

#[test]
fn random_sequences_match_oracle() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 14;
        let k = 1 + seed as usize % 3;
        let mut st = FvsState::new(n, k).unwrap();
        for step in 0..250 {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if u == v {
                continue;
            }
            if st.graph().has_edge(u, v) {
                st.delete_edge(u, v).unwrap();
            } else if st.graph().m() < 20 {
                st.insert_edge(u, v).unwrap();
            }
            let ctx = format!("seed {seed} step {step}");
            assert_resolved(st.top().resolved().unwrap());
            assert!(st.top().resolved().unwrap().loop_tree_sizes().iter().all(|&c| c >= 2), "{ctx}");
            assert_windows(st.top());
            assert_answer(&mut st, &ctx);
        }
        assert!(st.stats().max_diff <= 17, "seed {seed}: {:?}", st.stats());
    }
}

#[test]
fn resolved_graph_handles_multigraph_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 9;
    let mut res = ResolvedGraph::new(n);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for _ in 0..600 {
        if !edges.is_empty() && rng.gen_bool(0.45) {
            let (u, v) = edges.swap_remove(rng.gen_range(0..edges.len()));
            let diff = res.delete_edge(u, v).unwrap();
            assert!(diff.iter().map(|d| d.2.unsigned_abs()).sum::<u64>() <= 17);
        } else if edges.len() < 16 {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            edges.push((u, v));
            let diff = res.insert_edge(u, v).unwrap();
            assert!(diff.iter().map(|d| d.2.unsigned_abs()).sum::<u64>() <= 17);
        }
        assert_resolved(&mut res);
    }
}

#[test]
fn rebuild_of_empty_graph_and_hub_in_branch_set() {
    let mut st = FvsState::new(9, 2).unwrap();
    st.rebuild();
    assert_eq!(st.query(), Some(vec![]));
    // Wheel: hub 0 on a rim 1..=8.
    for v in 1..=8 {
        st.insert_edge(0, v).unwrap();
        st.insert_edge(v, v % 8 + 1).unwrap();
    }
    st.rebuild();
    assert!(st.top().high_degree_set().contains(&0));
    assert_answer(&mut st, "wheel");
}

#[test]
fn rebuild_work_is_amortized() {
    // Work per update should not grow with the sequence length.
    let per_update = |ops: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 40;
        let mut st = FvsState::new(n, 2).unwrap();
        for _ in 0..ops {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if u == v {
                continue;
            }
            if st.graph().has_edge(u, v) {
                st.delete_edge(u, v).unwrap();
            } else if st.graph().m() < 60 {
                st.insert_edge(u, v).unwrap();
            }
            st.query();
        }
        let s = st.stats();
        (s.rebuild_work + s.forwarded) as f64 / ops as f64
    };
    let (short, long) = (per_update(500), per_update(4000));
    assert!(long <= 2.0 * short + 50.0, "short {short}, long {long}");
}

#[test]
fn level_zero_tracks_cycles() {
    let mut l = FvsLevel::build(4, 0, &[(0, 1), (1, 2)]);
    assert_eq!(l.query(), Some(vec![]));
    l.insert_edge(2, 0).unwrap();
    assert_eq!(l.query(), None);
    l.delete_edge(1, 2).unwrap();
    assert_eq!(l.query(), Some(vec![]));
    l.insert_edge(3, 3).unwrap();
    assert_eq!(l.query(), None);
    l.delete_edge(3, 3).unwrap();
    l.insert_edge(0, 1).unwrap();
    assert_eq!(l.query(), None, "parallel edges form a cycle");
}

#[test]
fn levels_accept_loops_and_parallel_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 8;
    for k in 1..=3 {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut l = FvsLevel::build(n, k, &[]);
        for step in 0..300 {
            if !edges.is_empty() && rng.gen_bool(0.4) {
                let (u, v) = edges.swap_remove(rng.gen_range(0..edges.len()));
                l.delete_edge(u, v).unwrap();
            } else if edges.len() < 14 {
                let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
                edges.push((u, v));
                l.insert_edge(u, v).unwrap();
            }
            let g = GraphSnapshot::new(n, edges.clone());
            let want = oracle_fvs(&g, k).unwrap();
            let got = l.query();
            assert_eq!(got.as_ref().map(|s| s.len()), want.map(|s| s.len()), "k {k} step {step}");
            if let Some(s) = got {
                assert!(check::is_fvs(&g, &s));
            }
            assert_windows(&mut l);
        }
    }
}
