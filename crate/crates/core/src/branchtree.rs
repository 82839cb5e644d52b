//! Randomized dynamic branching tree for d-Hitting Set (vertex cover when d = 2).
//!
//! Each inner node branches on a set drawn uniformly from the sets its
//! ancestors' choices leave unhit. Answers never depend on the seed; only the
//! amount of rebuilding does.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use thiserror::Error;

pub const MAX_ARITY: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchError {
    #[error("arity {0} unsupported")]
    BadArity(usize),
    #[error("set of size {0} exceeds the arity")]
    SetTooLarge(usize),
    #[error("empty set")]
    EmptySet,
    #[error("set already present")]
    DuplicateSet,
    #[error("set not present")]
    NoSuchSet,
}

type SetId = u32;
type NodeId = u32;

#[derive(Clone, Debug)]
struct Node {
    depth: usize,
    /// Sets not hit by the choices on the path to this node, sorted by id.
    sets: Vec<SetId>,
    witness: Option<SetId>,
    children: Vec<NodeId>,
    /// Depth of the shallowest yes-leaf in this subtree.
    best: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BranchTree {
    k: usize,
    d: usize,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
    free: Vec<NodeId>,
    root: NodeId,
    sets: Vec<Option<Vec<u32>>>,
    ids: HashMap<Vec<u32>, SetId>,
    mutations: u64,
    rebuilt: u64,
}

impl BranchTree {
    pub fn new(k: usize, d: usize, seed: u64) -> Result<Self, BranchError> {
        if d == 0 || d > MAX_ARITY {
            return Err(BranchError::BadArity(d));
        }
        let root = Node { depth: 0, sets: Vec::new(), witness: None, children: Vec::new(), best: Some(0) };
        Ok(BranchTree {
            k,
            d,
            rng: ChaCha8Rng::seed_from_u64(seed),
            nodes: vec![root],
            free: Vec::new(),
            root: 0,
            sets: Vec::new(),
            ids: HashMap::new(),
            mutations: 0,
            rebuilt: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Set-list edits plus node rebuilds.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    /// Nodes rebuilt so far.
    pub fn rebuilt(&self) -> u64 {
        self.rebuilt
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    /// The set branched on at the root.
    pub fn root_witness(&self) -> Option<Vec<u32>> {
        self.nodes[self.root as usize].witness.map(|s| self.set(s).to_vec())
    }

    fn set(&self, s: SetId) -> &[u32] {
        self.sets[s as usize].as_deref().expect("live set")
    }

    fn canonical(&self, f: &[u32]) -> Result<Vec<u32>, BranchError> {
        let mut f = f.to_vec();
        f.sort_unstable();
        f.dedup();
        if f.is_empty() {
            return Err(BranchError::EmptySet);
        }
        if f.len() > self.d {
            return Err(BranchError::SetTooLarge(f.len()));
        }
        Ok(f)
    }

    fn alloc(&mut self, node: Node) -> NodeId {
        if let Some(i) = self.free.pop() {
            self.nodes[i as usize] = node;
            i
        } else {
            self.nodes.push(node);
            self.nodes.len() as NodeId - 1
        }
    }

    fn release_below(&mut self, v: NodeId) {
        let mut stack = std::mem::take(&mut self.nodes[v as usize].children);
        while let Some(c) = stack.pop() {
            stack.append(&mut self.nodes[c as usize].children);
            self.nodes[c as usize].sets = Vec::new();
            self.free.push(c);
        }
    }

    fn recompute_best(&mut self, v: NodeId) {
        let node = &self.nodes[v as usize];
        let best = if node.witness.is_none() {
            if node.sets.is_empty() {
                Some(node.depth)
            } else {
                None
            }
        } else {
            node.children.iter().filter_map(|&c| self.nodes[c as usize].best).min()
        };
        self.nodes[v as usize].best = best;
    }

    /// Redraws the witness of v uniformly (or forces `forced`) and rebuilds everything below.
    fn rebuild(&mut self, v: NodeId, forced: Option<SetId>) {
        self.release_below(v);
        self.rebuilt += 1;
        self.mutations += 1;
        let depth = self.nodes[v as usize].depth;
        if depth == self.k || self.nodes[v as usize].sets.is_empty() {
            self.nodes[v as usize].witness = None;
            self.recompute_best(v);
            return;
        }
        let w = forced.unwrap_or_else(|| {
            let sets = &self.nodes[v as usize].sets;
            sets[self.rng.gen_range(0..sets.len())]
        });
        self.nodes[v as usize].witness = Some(w);
        let elems = self.set(w).to_vec();
        let mut children = Vec::with_capacity(elems.len());
        for u in elems {
            let sub: Vec<SetId> = self.nodes[v as usize]
                .sets
                .iter()
                .copied()
                .filter(|&s| self.set(s).binary_search(&u).is_err())
                .collect();
            self.mutations += sub.len() as u64;
            let c = self.alloc(Node { depth: depth + 1, sets: sub, witness: None, children: Vec::new(), best: None });
            children.push(c);
        }
        self.nodes[v as usize].children = children.clone();
        for c in children {
            self.rebuild(c, None);
        }
        self.recompute_best(v);
    }

    pub fn insert(&mut self, f: &[u32]) -> Result<(), BranchError> {
        let f = self.canonical(f)?;
        if self.ids.contains_key(&f) {
            return Err(BranchError::DuplicateSet);
        }
        let id = self.sets.len() as SetId;
        self.sets.push(Some(f.clone()));
        self.ids.insert(f, id);
        self.insert_at(self.root, id);
        Ok(())
    }

    fn insert_at(&mut self, v: NodeId, id: SetId) {
        let pos = self.nodes[v as usize].sets.binary_search(&id).unwrap_err();
        self.nodes[v as usize].sets.insert(pos, id);
        self.mutations += 1;
        let x = self.nodes[v as usize].sets.len();
        if self.nodes[v as usize].depth == self.k {
            self.recompute_best(v);
            return;
        }
        if self.rng.gen_range(0..x) == 0 {
            self.rebuild(v, Some(id));
            return;
        }
        let w = self.nodes[v as usize].witness.expect("inner node with sets");
        let elems = self.set(w).to_vec();
        let children = self.nodes[v as usize].children.clone();
        for (u, c) in elems.into_iter().zip(children) {
            if self.set(id).binary_search(&u).is_err() {
                self.insert_at(c, id);
            }
        }
        self.recompute_best(v);
    }

    pub fn delete(&mut self, f: &[u32]) -> Result<(), BranchError> {
        let f = self.canonical(f)?;
        let id = self.ids.remove(&f).ok_or(BranchError::NoSuchSet)?;
        self.delete_at(self.root, id);
        self.sets[id as usize] = None;
        Ok(())
    }

    fn delete_at(&mut self, v: NodeId, id: SetId) {
        let pos = self.nodes[v as usize].sets.binary_search(&id).expect("set in sub-instance");
        self.nodes[v as usize].sets.remove(pos);
        self.mutations += 1;
        match self.nodes[v as usize].witness {
            Some(w) if w == id => self.rebuild(v, None),
            Some(w) => {
                let elems = self.set(w).to_vec();
                let children = self.nodes[v as usize].children.clone();
                for (u, c) in elems.into_iter().zip(children) {
                    if self.set(id).binary_search(&u).is_err() {
                        self.delete_at(c, id);
                    }
                }
                self.recompute_best(v);
            }
            None => self.recompute_best(v),
        }
    }

    /// A minimum hitting set if one of size ≤ k exists: follows the shallowest yes-leaf.
    pub fn query(&self) -> Option<Vec<u32>> {
        let mut v = self.root;
        let target = self.nodes[v as usize].best?;
        let mut out = Vec::new();
        loop {
            let node = &self.nodes[v as usize];
            let Some(w) = node.witness else {
                break;
            };
            let (i, &c) = node
                .children
                .iter()
                .enumerate()
                .find(|(_, &c)| self.nodes[c as usize].best == Some(target))
                .expect("child on shallowest path");
            out.push(self.set(w)[i]);
            v = c;
        }
        out.sort_unstable();
        Some(out)
    }

    /// Depth of the shallowest yes-leaf, found by scanning every leaf.
    pub fn scan_yes_leaves(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v as usize];
            if node.witness.is_none() {
                if node.sets.is_empty() {
                    best = Some(best.map_or(node.depth, |b| b.min(node.depth)));
                }
            } else {
                stack.extend(node.children.iter().copied());
            }
        }
        best
    }

    /// Checks sub-instances against the definition; panics on mismatch.
    pub fn check_invariants(&self) {
        let all: Vec<SetId> = {
            let mut v: Vec<SetId> = self.ids.values().copied().collect();
            v.sort_unstable();
            v
        };
        assert_eq!(self.nodes[self.root as usize].sets, all);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v as usize];
            match node.witness {
                None => assert!(node.depth == self.k || node.sets.is_empty()),
                Some(w) => {
                    assert!(node.sets.binary_search(&w).is_ok());
                    assert!(node.depth < self.k);
                    for (&u, &c) in self.set(w).iter().zip(&node.children) {
                        let want: Vec<SetId> =
                            node.sets.iter().copied().filter(|&s| self.set(s).binary_search(&u).is_err()).collect();
                        assert_eq!(self.nodes[c as usize].sets, want);
                        assert_eq!(self.nodes[c as usize].depth, node.depth + 1);
                        stack.push(c);
                    }
                }
            }
        }
        assert_eq!(self.nodes[self.root as usize].best, self.scan_yes_leaves());
    }
}
