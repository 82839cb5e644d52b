//! Undirected k-Path: one connectivity structure per (coloring, color order).
//!
//! In member (h, π) an edge is kept iff its endpoints get consecutive
//! positions π(h(·)); s is joined to position 0 and t to position k−1. A
//! shortest path from position 0 to position k−1 moves one position per edge,
//! so it is a simple path on at least k vertices; a k-path colored 0..k−1 in
//! order connects s and t in the matching member.

use super::{ColorError, ColoringFamily, Mode, MAX_MEMBERS};
use crate::dynconn::ConnectivityForest;
use crate::graphcore::{DynGraph, GraphError, VertexId};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct KPathState {
    k: usize,
    n: usize,
    g: DynGraph,
    family: ColoringFamily,
    /// perms[p][color] = position of the color in order p.
    perms: Vec<Vec<u8>>,
    members: Vec<ConnectivityForest>,
    mutations: u64,
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                cur.push(c as u8);
                rec(cur, used, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

impl KPathState {
    pub fn new(n: usize, k: usize, mode: Mode) -> Result<Self, ColorError> {
        let family = ColoringFamily::new(n, k, mode)?;
        let perms = if k == 0 { Vec::new() } else { permutations(k) };
        let count = family.len() * perms.len();
        if count > MAX_MEMBERS {
            return Err(ColorError::TooManyMembers(count));
        }
        let mut state = KPathState { k, n, g: DynGraph::simple(n), family, perms, members: Vec::with_capacity(count), mutations: 0 };
        let (s, t) = (n as VertexId, n as VertexId + 1);
        for i in 0..state.family.len() {
            for p in 0..state.perms.len() {
                let mut forest = ConnectivityForest::new(n + 2);
                for v in 0..n as VertexId {
                    let pos = state.position(i, p, v);
                    if pos == 0 {
                        forest.insert(s, v);
                    }
                    if pos + 1 == k {
                        forest.insert(v, t);
                    }
                }
                state.members.push(forest);
            }
        }
        Ok(state)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn family(&self) -> &ColoringFamily {
        &self.family
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// Member edge insertions and deletions so far.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    fn position(&self, i: usize, p: usize, v: VertexId) -> usize {
        self.perms[p][self.family.coloring(i)[v as usize] as usize] as usize
    }

    /// Whether edge {u, v} belongs in member (i, p).
    pub fn in_member(&self, i: usize, p: usize, u: VertexId, v: VertexId) -> bool {
        self.position(i, p, u).abs_diff(self.position(i, p, v)) == 1
    }

    fn affected(&self, u: VertexId, v: VertexId) -> Vec<usize> {
        let np = self.perms.len();
        (0..self.members.len()).filter(|&m| self.in_member(m / np, m % np, u, v)).collect()
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), ColorError> {
        self.g.insert_edge(u, v)?;
        for m in self.affected(u, v) {
            self.members[m].insert(u, v);
            self.mutations += 1;
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), ColorError> {
        let h = self.g.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        self.g.delete_edge(h)?;
        for m in self.affected(u, v) {
            self.members[m].delete(u, v).expect("member holds the edge");
            self.mutations += 1;
        }
        Ok(())
    }

    fn first_yes_member(&mut self) -> Option<usize> {
        let (s, t) = (self.n as VertexId, self.n as VertexId + 1);
        (0..self.members.len()).find(|&m| self.members[m].connected(s, t))
    }

    /// Whether some member connects s and t.
    pub fn query(&mut self) -> bool {
        self.k == 0 || self.first_yes_member().is_some()
    }

    /// A path on k vertices read off the first member connecting s and t.
    pub fn witness(&mut self) -> Option<Vec<VertexId>> {
        if self.k == 0 {
            return Some(Vec::new());
        }
        let m = self.first_yes_member()?;
        let np = self.perms.len();
        let path = self.layered_path(m / np, m % np);
        assert!(path.is_some(), "member connects s and t but has no layered path");
        path
    }

    /// First k vertices of a shortest path from position 0 to position k−1 along member edges.
    fn layered_path(&self, i: usize, p: usize) -> Option<Vec<VertexId>> {
        let n = self.n;
        let mut prev: Vec<Option<VertexId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for v in 0..n as VertexId {
            if self.position(i, p, v) == 0 {
                seen[v as usize] = true;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            if self.position(i, p, x) + 1 == self.k {
                let mut path = vec![x];
                let mut cur = x;
                while let Some(y) = prev[cur as usize] {
                    path.push(y);
                    cur = y;
                }
                path.reverse();
                path.truncate(self.k);
                return (path.len() == self.k).then_some(path);
            }
            for &(y, _) in self.g.neighbors(x) {
                if !seen[y as usize] && self.in_member(i, p, x, y) {
                    seen[y as usize] = true;
                    prev[y as usize] = Some(x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Per member: edge count and component label of every vertex.
    pub fn canonical(&mut self) -> Vec<(usize, Vec<VertexId>)> {
        self.members.iter_mut().map(|f| (f.m(), (0..f.n() as VertexId).map(|v| f.component_of(v)).collect())).collect()
    }

    /// Checks every member's edge set against the membership rule; panics on mismatch.
    pub fn check_membership(&mut self) {
        let np = self.perms.len();
        let edges = self.g.edge_pairs();
        for m in 0..self.members.len() {
            let (i, p) = (m / np, m % np);
            let mut expected = edges.iter().filter(|&&(u, v)| self.in_member(i, p, u, v)).count();
            let mut uf: Vec<usize> = (0..self.n + 2).collect();
            fn find(uf: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while uf[r] != r {
                    r = uf[r];
                }
                uf[x] = r;
                r
            }
            let mut union = |a: usize, b: usize| {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf[ra] = rb;
            };
            for &(u, v) in &edges {
                if self.in_member(i, p, u, v) {
                    union(u as usize, v as usize);
                }
            }
            for v in 0..self.n as VertexId {
                let pos = self.position(i, p, v);
                if pos == 0 {
                    expected += 1;
                    union(self.n, v as usize);
                }
                if pos + 1 == self.k {
                    expected += 1;
                    union(v as usize, self.n + 1);
                }
            }
            let forest = &mut self.members[m];
            assert_eq!(forest.m(), expected, "member {m} edge count");
            for v in 0..self.n + 2 {
                for w in v + 1..self.n + 2 {
                    let same = find(&mut uf, v) == find(&mut uf, w);
                    assert_eq!(forest.connected(v as VertexId, w as VertexId), same);
                }
            }
        }
    }
}
