use dynfpt::promisekernels::ecc::{scratch_classes, EccAnswer, EccError, EccState};
use dynfpt::promisekernels::plc::{Line, PlcAnswer, PlcError, PlcState};
use dynfpt::promisekernels::Point;
use dynfpt::oracle::{check, oracle_ecc, oracle_plc, GraphSnapshot, OraclePoint};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn snap(st: &EccState) -> GraphSnapshot {
    GraphSnapshot::new(st.graph().n(), st.graph().edge_pairs())
}

#[test]
fn ecc_triangle_is_one_class() {
    let mut st = EccState::new(5, 2).unwrap();
    st.insert_edge(0, 1).unwrap();
    st.insert_edge(1, 2).unwrap();
    st.insert_edge(0, 2).unwrap();
    st.check_invariants();
    assert_eq!(st.classes().len(), 1);
    assert_eq!(st.query(1), EccAnswer::Cover(vec![vec![0, 1, 2]]));
    assert_eq!(st.cliques_of(1), vec![0]);
    assert_eq!(st.members_of(0), vec![0, 1, 2]);
    assert!(st.cliques_of(4).is_empty());
}

#[test]
fn ecc_examples() {
    let mut st = EccState::new(4, 2).unwrap();
    assert_eq!(st.query(0), EccAnswer::Cover(vec![]));
    st.insert_edge(0, 1).unwrap();
    st.delete_edge(0, 1).unwrap();
    assert!(st.classes().is_empty());
    st.insert_edge(0, 1).unwrap();
    st.insert_edge(1, 2).unwrap();
    assert_eq!(st.query(1), EccAnswer::No);
    assert_eq!(st.query(2), EccAnswer::Cover(vec![vec![0, 1], vec![1, 2]]));
    assert_eq!(st.delete_edge(0, 2), Err(EccError::Graph(dynfpt::graphcore::GraphError::NoSuchEdge(0, 2))));
    assert_eq!(EccState::new(3, 5).unwrap_err(), EccError::BadBound(5));
}

#[test]
fn ecc_matches_scratch_and_oracle() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 10;
        let mut st = EccState::new(n, 4).unwrap();
        for step in 0..200 {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if u == v {
                continue;
            }
            if st.graph().has_edge(u, v) {
                st.delete_edge(u, v).unwrap();
            } else {
                st.insert_edge(u, v).unwrap();
                // Keep the promise: undo insertions that need too many cliques.
                if oracle_ecc(&snap(&st), 4).unwrap().is_none() {
                    st.delete_edge(u, v).unwrap();
                }
            }
            st.check_invariants();
            assert!(!st.degraded());
            assert!(st.classes().len() <= 16);
            let g = snap(&st);
            for k in 0..=4 {
                let want = oracle_ecc(&g, k).unwrap();
                match (st.query(k), want) {
                    (EccAnswer::Cover(c), Some(w)) => {
                        assert_eq!(c.len(), w.len(), "seed {seed} step {step} k {k}");
                        assert!(check::is_clique_cover(&g, &c));
                    }
                    (EccAnswer::No, None) => {}
                    (got, want) => panic!("seed {seed} step {step} k {k}: {got:?} vs {want:?}"),
                }
            }
        }
    }
}

#[test]
fn ecc_degraded_then_recovers() {
    // A perfect matching on 34 vertices has 17 classes, over 2^4.
    let mut st = EccState::new(34, 4).unwrap();
    for i in 0..17 {
        st.insert_edge(2 * i, 2 * i + 1).unwrap();
    }
    assert!(st.degraded());
    assert_eq!(st.query(20), EccAnswer::Unknown);
    st.delete_edge(0, 1).unwrap();
    assert!(!st.degraded());
    st.rebuild();
    st.check_invariants();
    match st.query(16) {
        EccAnswer::Cover(c) => assert_eq!(c.len(), 16),
        other => panic!("{other:?}"),
    }
    let classes: BTreeSet<_> = scratch_classes(st.graph()).into_values().collect();
    assert_eq!(classes.len(), 16);
}

fn pt(x: i64, y: i64) -> Point {
    Point::int(x, y)
}

fn oracle_points(st: &PlcState) -> Vec<OraclePoint> {
    st.points().iter().map(|p| (p.x, p.y)).collect()
}

#[test]
fn plc_promotion_and_dissolve() {
    let mut st = PlcState::new(2).unwrap();
    st.insert(pt(0, 0)).unwrap();
    st.insert(pt(1, 1)).unwrap();
    assert!(st.heavy_lines().is_empty());
    st.insert(pt(2, 2)).unwrap();
    assert_eq!(st.heavy_lines().len(), 1);
    assert!(st.residual().is_empty());
    st.delete(pt(1, 1)).unwrap();
    assert!(st.heavy_lines().is_empty());
    assert_eq!(st.residual().len(), 2);
    assert_eq!(st.insert(pt(0, 0)), Err(PlcError::DuplicatePoint));
    assert_eq!(st.delete(pt(5, 5)), Err(PlcError::NoSuchPoint));
}

#[test]
fn plc_examples() {
    let st = PlcState::new(3).unwrap();
    assert_eq!(st.query(0), PlcAnswer::Cover(vec![]));

    let mut grid = PlcState::new(3).unwrap();
    for x in 0..3 {
        for y in 0..3 {
            grid.insert(pt(x, y)).unwrap();
        }
    }
    assert_eq!(grid.query(2), PlcAnswer::No);
    match grid.query(3) {
        PlcAnswer::Cover(lines) => {
            assert_eq!(lines.len(), 3);
            assert!(grid.points().iter().all(|p| lines.iter().any(|l| l.contains(p))));
        }
        other => panic!("{other:?}"),
    }

    let mut general = PlcState::new(2).unwrap();
    for p in [pt(0, 0), pt(1, 3), pt(4, 1), pt(7, 9)] {
        general.insert(p).unwrap();
    }
    assert_eq!(general.query(1), PlcAnswer::No);

    let k = 3;
    let mut pairs = PlcState::new(k).unwrap();
    for i in 0..k as i64 {
        pairs.insert(pt(i, i * i)).unwrap();
        pairs.insert(pt(i + 10, i * i * i + 7)).unwrap();
    }
    match pairs.query(k) {
        PlcAnswer::Cover(lines) => assert_eq!(lines.len(), k),
        other => panic!("{other:?}"),
    }
}

#[test]
fn plc_rational_points_exact() {
    let half = |n: i64| Ratio::new(n, 2);
    let mut st = PlcState::new(2).unwrap();
    for i in 0..3 {
        st.insert(Point::new(half(i), half(3 * i))).unwrap();
    }
    assert_eq!(st.heavy_lines(), vec![Line::through(&pt(0, 0), &pt(1, 3))]);
}

#[test]
fn plc_matches_oracle_and_scratch() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = 3;
        let mut st = PlcState::new(g).unwrap();
        for _ in 0..120 {
            // Points on three fixed lines keep the promise.
            let line = rng.gen_range(0..3);
            let t = rng.gen_range(-4..5);
            let p = match line {
                0 => pt(t, 0),
                1 => pt(t, t + 1),
                _ => pt(2, t),
            };
            if st.points().contains(&p) {
                st.delete(p).unwrap();
            } else if st.len() < 12 {
                st.insert(p).unwrap();
            }
            let mut scratch = st.clone();
            scratch.rebuild();
            assert_eq!(scratch.heavy_lines(), st.heavy_lines());
            assert_eq!(scratch.residual(), st.residual());
            assert!(st.heavy_lines().len() <= g && st.residual().len() <= g * g);
            let pts = oracle_points(&st);
            for k in 0..=g {
                let want = oracle_plc(&pts, k).unwrap();
                match (st.query(k), want) {
                    (PlcAnswer::Cover(lines), Some(w)) => {
                        assert_eq!(lines.len(), w.len());
                        assert!(st.points().iter().all(|p| lines.iter().any(|l| l.contains(p))));
                    }
                    (PlcAnswer::No, None) => {}
                    (got, want) => panic!("seed {seed} k {k}: {got:?} vs {want:?}"),
                }
            }
        }
    }
}

#[test]
fn plc_degraded_then_rebuild() {
    let mut st = PlcState::new(1).unwrap();
    st.insert(pt(0, 0)).unwrap();
    st.insert(pt(1, 5)).unwrap();
    assert_eq!(st.insert(pt(3, 2)), Err(PlcError::PromiseViolated));
    assert_eq!(st.query(5), PlcAnswer::Unknown);
    st.delete(pt(3, 2)).unwrap();
    st.rebuild();
    assert!(!st.degraded());
    assert!(matches!(st.query(1), PlcAnswer::Cover(_)));
}
