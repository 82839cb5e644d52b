use dynfpt::linkcut::{LinkCutError, LinkCutForest, NodeHandle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Undirected forest kept as adjacency lists.
struct Naive {
    adj: Vec<Vec<usize>>,
}

impl Naive {
    fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        let mut q = VecDeque::from([a]);
        prev[a] = a;
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut p = vec![b];
        while *p.last().unwrap() != a {
            p.push(prev[*p.last().unwrap()]);
        }
        p.reverse();
        Some(p)
    }

    fn nca(&self, root: usize, a: usize, b: usize) -> usize {
        let pa = self.path(root, a).unwrap();
        let pb = self.path(root, b).unwrap();
        let mut last = root;
        for (x, y) in pa.iter().zip(&pb) {
            if x == y {
                last = *x;
            } else {
                break;
            }
        }
        last
    }
}

#[test]
fn singletons() {
    let mut f = LinkCutForest::new();
    let a = f.maketree();
    let b = f.maketree();
    assert!(!f.connected(a, b));
    f.evert(a);
    assert_eq!(f.find_root(a), a);
}

#[test]
fn link_and_cut() {
    let mut f = LinkCutForest::new();
    let a = f.maketree();
    let b = f.maketree();
    f.link(a, b).unwrap();
    assert!(f.connected(a, b));
    assert_eq!(f.link(a, b), Err(LinkCutError::WouldCreateCycle));
    f.cut(a, b).unwrap();
    assert!(!f.connected(a, b));
    assert_eq!(f.cut(a, b), Err(LinkCutError::NoSuchTreeEdge));
}

#[test]
fn after_on_small_paths() {
    let mut f = LinkCutForest::new();
    let (a, x, b) = (f.maketree(), f.maketree(), f.maketree());
    f.link(a, x).unwrap();
    assert_eq!(f.after(a, x), Ok(x));
    f.link(x, b).unwrap();
    assert_eq!(f.after(a, b), Ok(x));
    assert_eq!(f.after(a, a), Err(LinkCutError::SameNode));
    let c = f.maketree();
    assert_eq!(f.after(a, c), Err(LinkCutError::NotConnected));
}

#[test]
fn evert_and_nca() {
    let mut f = LinkCutForest::new();
    let (r, a, b) = (f.maketree(), f.maketree(), f.maketree());
    f.link(a, r).unwrap();
    f.link(b, r).unwrap();
    f.evert(r);
    f.evert(r);
    assert_eq!(f.find_root(a), r);
    assert_eq!(f.nca(a, b), Ok(r));
    assert_eq!(f.nca(a, a), Ok(a));
}

#[test]
fn chain_of_ten() {
    let mut f = LinkCutForest::new();
    let v: Vec<NodeHandle> = (0..10).map(|_| f.maketree()).collect();
    for i in 0..9 {
        f.link(v[i], v[i + 1]).unwrap();
    }
    for i in 0..9 {
        assert_eq!(f.after(v[i], v[9]), Ok(v[i + 1]));
        assert_eq!(f.after(v[i + 1], v[0]), Ok(v[i]));
    }
}

fn differential(seed: u64, n: usize, ops: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = LinkCutForest::new();
    let h: Vec<NodeHandle> = (0..n).map(|_| f.maketree()).collect();
    let mut naive = Naive { adj: vec![Vec::new(); n] };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..ops {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        match rng.gen_range(0..6) {
            0 | 1 => {
                let conn = a == b || naive.path(a, b).is_some();
                let r = f.link(h[a], h[b]);
                if conn {
                    assert_eq!(r, Err(LinkCutError::WouldCreateCycle));
                } else {
                    r.unwrap();
                    naive.adj[a].push(b);
                    naive.adj[b].push(a);
                    edges.push((a, b));
                }
            }
            2 if !edges.is_empty() => {
                let (x, y) = edges.swap_remove(rng.gen_range(0..edges.len()));
                f.cut(h[y], h[x]).unwrap();
                naive.adj[x].retain(|&z| z != y);
                naive.adj[y].retain(|&z| z != x);
            }
            3 => {
                let p = naive.path(a, b);
                match (p, f.after(h[a], h[b])) {
                    (None, r) => assert_eq!(r, Err(LinkCutError::NotConnected)),
                    (Some(p), r) if p.len() == 1 => assert_eq!(r, Err(LinkCutError::SameNode)),
                    (Some(p), r) => assert_eq!(r, Ok(h[p[1]])),
                }
            }
            4 => {
                let c = rng.gen_range(0..n);
                if naive.path(a, b).is_some() && naive.path(a, c).is_some() {
                    f.evert(h[a]);
                    let want = naive.nca(a, b, c);
                    assert_eq!(f.nca(h[b], h[c]), Ok(h[want]));
                    assert_eq!(f.find_root(h[b]), h[a]);
                }
            }
            _ => {
                assert_eq!(f.connected(h[a], h[b]), naive.path(a, b).is_some());
            }
        }
    }
    f.rotations()
}

#[test]
fn random_against_naive() {
    for seed in 0..20 {
        differential(seed, 30, 2000);
    }
}

#[test]
fn rotations_stay_logarithmic() {
    let ops = 20_000usize;
    let n = 500usize;
    let rot = differential(7, n, ops);
    let bound = 40.0 * ops as f64 * (n as f64).log2();
    assert!((rot as f64) <= bound, "rotations {rot} above {bound}");
}
