use dynfpt::branchtree::{BranchError, BranchTree};
use dynfpt::oracle::{self, check};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::BTreeSet;

#[test]
fn single_edge_then_delete() {
    let mut t = BranchTree::new(1, 2, 1).unwrap();
    assert_eq!(t.query(), Some(vec![]));
    t.insert(&[3, 7]).unwrap();
    assert_eq!(t.root_witness(), Some(vec![3, 7]));
    assert_eq!(t.query(), Some(vec![3]));
    t.check_invariants();
    t.delete(&[7, 3]).unwrap();
    assert_eq!(t.root_witness(), None);
    assert_eq!(t.query(), Some(vec![]));
    assert_eq!(t.delete(&[3, 7]), Err(BranchError::NoSuchSet));
}

#[test]
fn constructor_and_set_errors() {
    assert!(matches!(BranchTree::new(2, 7, 0), Err(BranchError::BadArity(7))));
    let mut t = BranchTree::new(2, 2, 0).unwrap();
    assert_eq!(t.insert(&[1, 2, 3]), Err(BranchError::SetTooLarge(3)));
    assert_eq!(t.insert(&[]), Err(BranchError::EmptySet));
    t.insert(&[1, 2]).unwrap();
    assert_eq!(t.insert(&[2, 1]), Err(BranchError::DuplicateSet));
}

#[test]
fn disjoint_sets_exceed_budget() {
    for k in 0..4u32 {
        let mut t = BranchTree::new(k as usize, 3, 5).unwrap();
        for i in 0..=k {
            t.insert(&[3 * i, 3 * i + 1, 3 * i + 2]).unwrap();
        }
        assert_eq!(t.query(), None);
        t.check_invariants();
    }
}

#[test]
fn small_answers() {
    let mut tri = BranchTree::new(1, 2, 3).unwrap();
    for e in [[0, 1], [1, 2], [0, 2]] {
        tri.insert(&e).unwrap();
    }
    assert_eq!(tri.query(), None);
    let mut t = BranchTree::new(1, 3, 3).unwrap();
    t.insert(&[0, 1, 2]).unwrap();
    t.insert(&[0, 3, 4]).unwrap();
    assert_eq!(t.query(), Some(vec![0]));
}

#[test]
fn deleting_a_non_witness_rebuilds_nothing() {
    let mut t = BranchTree::new(2, 2, 11).unwrap();
    for e in [[0, 1], [2, 3], [4, 5], [6, 7]] {
        t.insert(&e).unwrap();
    }
    // If the set was also not a witness deeper down, no node is rebuilt.
    let mut witness_free = None;
    for e in [[0u32, 1], [2, 3], [4, 5], [6, 7]] {
        let mut c = t.clone();
        let before = c.rebuilt();
        c.delete(&e).unwrap();
        if c.rebuilt() == before {
            witness_free = Some(e);
        }
    }
    // With 4 disjoint edges and k = 2, leaves at depth 2 still hold two sets, so some set is never a witness.
    assert!(witness_free.is_some());
}

fn run_against_oracle(seed: u64, d: usize, k: usize, universe: u32, ops: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
    let mut t = BranchTree::new(k, d, seed).unwrap();
    let mut family: BTreeSet<Vec<u32>> = BTreeSet::new();
    for _ in 0..ops {
        let size = rng.gen_range(1..=d);
        let mut s: Vec<u32> = Vec::new();
        while s.len() < size {
            let x = rng.gen_range(0..universe);
            if !s.contains(&x) {
                s.push(x);
            }
        }
        s.sort_unstable();
        if family.contains(&s) {
            t.delete(&s).unwrap();
            family.remove(&s);
        } else {
            t.insert(&s).unwrap();
            family.insert(s);
        }
        let fam: Vec<Vec<u32>> = family.iter().cloned().collect();
        let want = oracle::oracle_hs(&fam, k).unwrap();
        let got = t.query();
        assert_eq!(got.as_ref().map(Vec::len), want.as_ref().map(Vec::len), "seed {seed}");
        if let Some(x) = got {
            assert!(check::is_hitting_set(&fam, &x));
        }
        assert_eq!(t.scan_yes_leaves().is_some(), t.query().is_some());
    }
    t.check_invariants();
}

#[test]
fn vertex_cover_tree_matches_oracle() {
    for seed in 0..25 {
        run_against_oracle(seed, 2, 1 + seed as usize % 3, 10, 200);
    }
}

#[test]
fn three_hitting_set_matches_oracle() {
    for seed in 0..25 {
        run_against_oracle(100 + seed, 3, 3, 12, 200);
    }
}

#[test]
fn root_witness_is_uniform() {
    let edges = [[0u32, 1], [2, 3], [4, 5], [6, 7], [8, 9]];
    let mut counts = [0f64; 5];
    let seeds = 10_000;
    for seed in 0..seeds {
        let mut t = BranchTree::new(2, 2, seed).unwrap();
        for e in &edges {
            t.insert(e).unwrap();
        }
        let w = t.root_witness().unwrap();
        let i = edges.iter().position(|e| e.to_vec() == w).unwrap();
        counts[i] += 1.0;
    }
    let expected = seeds as f64 / 5.0;
    let stat: f64 = counts.iter().map(|c| (c - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new(4.0).unwrap().cdf(stat);
    assert!(p > 0.01, "chi2 = {stat}, p = {p}, counts = {counts:?}");
}

#[test]
fn witness_stays_uniform_after_deletes() {
    // Insert six sets, delete one, the root witness must be uniform on the remaining five.
    let sets = [[0u32, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11]];
    let mut counts = [0f64; 6];
    let seeds = 10_000;
    for seed in 0..seeds {
        let mut t = BranchTree::new(2, 2, seed).unwrap();
        for e in &sets {
            t.insert(e).unwrap();
        }
        t.delete(&sets[2]).unwrap();
        let w = t.root_witness().unwrap();
        counts[sets.iter().position(|e| e.to_vec() == w).unwrap()] += 1.0;
    }
    assert_eq!(counts[2], 0.0);
    let expected = seeds as f64 / 5.0;
    let stat: f64 = counts.iter().enumerate().filter(|(i, _)| *i != 2).map(|(_, c)| (c - expected).powi(2) / expected).sum();
    let p = 1.0 - ChiSquared::new(4.0).unwrap().cdf(stat);
    assert!(p > 0.01, "chi2 = {stat}, p = {p}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_answer_independent_of_seed(
        sets in proptest::collection::vec(proptest::collection::btree_set(0u32..8, 1..=3), 0..14),
        k in 0usize..4,
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        let mut a = BranchTree::new(k, 3, s1).unwrap();
        let mut b = BranchTree::new(k, 3, s2).unwrap();
        let mut seen = BTreeSet::new();
        for s in sets {
            let s: Vec<u32> = s.into_iter().collect();
            if seen.insert(s.clone()) {
                a.insert(&s).unwrap();
                b.insert(&s).unwrap();
            }
        }
        a.check_invariants();
        prop_assert_eq!(a.query().map(|x| x.len()), b.query().map(|x| x.len()));
    }
}
