use dynfpt::mlst::{scratch_chains, static_k_leaf, MlstAnswer, MlstState};
use dynfpt::oracle::{check, oracle_mlst, tree_leaves, GraphSnapshot, MlstOracle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn snap(st: &MlstState) -> GraphSnapshot {
    GraphSnapshot::new(st.graph().n(), st.graph().edge_pairs())
}

fn assert_answer(st: &mut MlstState, ctx: &str) {
    let g = snap(st);
    let k = st.k();
    let got = st.query();
    match (oracle_mlst(&g).unwrap(), got) {
        (MlstOracle::NotConnected, MlstAnswer::NotConnected) => {}
        (MlstOracle::Best(best, _), MlstAnswer::Tree(t)) => {
            assert!(best >= k, "{ctx}: tree returned but optimum is {best}");
            assert!(check::is_spanning_tree(&g, &t), "{ctx}: not a spanning tree");
            assert!(tree_leaves(g.n, &t) >= k, "{ctx}: too few leaves");
        }
        (MlstOracle::Best(best, _), MlstAnswer::NoTreeWithKLeaves) => assert!(best < k, "{ctx}: missed a tree"),
        (want, got) => panic!("{ctx}: {want:?} vs {got:?}"),
    }
}

#[test]
fn path_contracts_inner_useless_run() {
    let mut st = MlstState::new(10, 3);
    for v in 0..9 {
        st.insert_edge(v, v + 1).unwrap();
        st.check_invariants();
    }
    // 1 and 8 have a degree-one neighbour, so only 2..=7 are useless.
    let chains: Vec<Vec<u32>> = st.chains().into_iter().collect();
    assert_eq!(chains, vec![vec![0, 1], vec![1, 2, 3, 4, 5, 6, 7, 8], vec![8, 9]]);
    assert_eq!(st.gstar_vertex_count(), 4);
    assert_eq!(st.query(), MlstAnswer::NoTreeWithKLeaves);
    st.delete_edge(4, 5).unwrap();
    st.check_invariants();
    // 2 and 7 stay useless on each side of the cut.
    assert_eq!(st.gstar_vertex_count(), 8);
    assert_eq!(st.query(), MlstAnswer::NotConnected);
}

#[test]
fn bare_cycle_keeps_an_anchor() {
    let mut st = MlstState::new(6, 2);
    for v in 0..5 {
        st.insert_edge(v + 1, (v + 2) % 6).unwrap();
    }
    st.insert_edge(0, 1).unwrap();
    st.check_invariants();
    assert_eq!(st.chains().into_iter().collect::<Vec<_>>(), vec![vec![0, 1, 2, 3, 4, 5, 0]]);
    assert_eq!(st.gstar_vertex_count(), 1);
    assert_eq!(st.forest().len(), 5);
    assert_answer(&mut st, "cycle");
    st.set_k(3);
    assert_eq!(st.query(), MlstAnswer::NoTreeWithKLeaves);
}

#[test]
fn star_and_grid_examples() {
    let mut star = MlstState::new(6, 5);
    for v in 1..6 {
        star.insert_edge(0, v).unwrap();
    }
    match star.query() {
        MlstAnswer::Tree(t) => assert_eq!(tree_leaves(6, &t), 5),
        other => panic!("{other:?}"),
    }

    let mut grid = MlstState::new(9, 4);
    for r in 0..3u32 {
        for c in 0..3u32 {
            let v = r * 3 + c;
            if c < 2 {
                grid.insert_edge(v, v + 1).unwrap();
            }
            if r < 2 {
                grid.insert_edge(v, v + 3).unwrap();
            }
        }
    }
    grid.check_invariants();
    let before = grid.forest();
    assert_answer(&mut grid, "grid");
    assert_eq!(grid.forest(), before, "query leaves T untouched");
    grid.check_invariants();
}

#[test]
fn star_tree_reroutes_through_hub() {
    // A long path with a hub attached to its far vertices: T starts as the path.
    let mut st = MlstState::new(8, 3);
    for v in 0..6 {
        st.insert_edge(v, v + 1).unwrap();
    }
    for v in [0, 3, 6] {
        st.insert_edge(7, v).unwrap();
    }
    st.check_invariants();
    assert_answer(&mut st, "hub");
    st.check_invariants();
}

#[test]
fn errors() {
    let mut st = MlstState::new(3, 1);
    st.insert_edge(0, 1).unwrap();
    assert!(st.insert_edge(0, 1).is_err());
    assert!(st.insert_edge(1, 1).is_err());
    assert!(st.insert_edge(0, 9).is_err());
    assert!(st.delete_edge(1, 2).is_err());
}

#[test]
fn random_sequences_match_scratch_and_oracle() {
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 14;
        let mut st = MlstState::new(n, 2 + seed as usize % 4);
        for step in 0..300 {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if u == v {
                continue;
            }
            // Sparse graphs keep many degree-two runs around.
            if st.graph().has_edge(u, v) {
                st.delete_edge(u, v).unwrap();
            } else if st.graph().m() < 18 {
                st.insert_edge(u, v).unwrap();
            }
            st.check_invariants();
            assert_eq!(st.chains(), scratch_chains(st.graph()));
            assert_answer(&mut st, &format!("seed {seed} step {step}"));
        }
    }
}

#[test]
fn random_sequences_small_n_all_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let n = 10;
    let mut st = MlstState::new(n, 1);
    for step in 0..400 {
        let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        if u == v {
            continue;
        }
        if st.graph().has_edge(u, v) {
            st.delete_edge(u, v).unwrap();
        } else {
            st.insert_edge(u, v).unwrap();
        }
        st.check_invariants();
        for k in 0..=n {
            st.set_k(k);
            assert_answer(&mut st, &format!("step {step} k {k}"));
        }
    }
}

#[test]
fn partial_kernel_merge_on_long_ladder() {
    // A ladder has max degree 3 and no useless vertices, so for k = 4 G* exceeds
    // the 4k²+12k+8 = 120 threshold and the query merges a local tree into T.
    let len = 70u32;
    let n = 2 * len as usize;
    let mut st = MlstState::new(n, 4);
    for i in 0..len {
        st.insert_edge(i, i + len).unwrap();
        if i + 1 < len {
            st.insert_edge(i, i + 1).unwrap();
            st.insert_edge(i + len, i + 1 + len).unwrap();
        }
    }
    assert!(st.gstar_vertex_count() > 120);
    match st.query() {
        MlstAnswer::Tree(t) => {
            assert_eq!(t.len(), n - 1);
            let mut uf: Vec<usize> = (0..n).collect();
            fn find(uf: &mut [usize], x: usize) -> usize {
                if uf[x] != x {
                    uf[x] = find(uf, uf[x]);
                }
                uf[x]
            }
            for &(a, b) in &t {
                assert!(st.graph().has_edge(a, b));
                let (ra, rb) = (find(&mut uf, a as usize), find(&mut uf, b as usize));
                assert_ne!(ra, rb);
                uf[ra] = rb;
            }
            assert!(tree_leaves(n, &t) >= 4);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(st.stats().kernel_fallbacks, 0);
}

fn arb_graph() -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (2usize..9).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
        let m = pairs.len();
        (Just(n), proptest::sample::subsequence(pairs, 0..=m))
    })
}

proptest! {
    #[test]
    fn static_solver_matches_oracle((n, edges) in arb_graph()) {
        let g = GraphSnapshot::new(n, edges.clone());
        if let MlstOracle::Best(best, _) = oracle_mlst(&g).unwrap() {
            let mut adj = vec![Vec::new(); n];
            for &(a, b) in &edges {
                adj[a as usize].push(b as usize);
                adj[b as usize].push(a as usize);
            }
            for k in 0..=n {
                let got = static_k_leaf(&adj, k);
                prop_assert_eq!(got.is_some(), best >= k);
                if let Some(t) = got {
                    let t: Vec<(u32, u32)> = t.into_iter().map(|(a, b)| (a as u32, b as u32)).collect();
                    prop_assert!(check::is_spanning_tree(&g, &t));
                    prop_assert!(tree_leaves(n, &t) >= k);
                }
            }
        }
    }
}
