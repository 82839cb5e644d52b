//! Dense Subgraph in graphs of maximum degree Δ.
//!
//! Member (h, U) keeps the components of G[L], L = h⁻¹(U). When h is injective
//! on an optimal H together with its neighbourhood and U = h(H), H is a union
//! of components of G[L]. Components of size ≤ k are filed in A by size and
//! internal edge count; the query picks, per partition of k into component
//! sizes, the densest components of each size.

use super::{ColorError, ColoringFamily, Mode, MAX_MEMBERS};
use crate::dynconn::ConnectivityForest;
use crate::graphcore::{DynGraph, GraphError, VertexId};
use indexmap::IndexSet;
use std::collections::HashMap;

#[derive(Clone, Debug)]
struct Member {
    coloring: usize,
    in_l: Vec<bool>,
    forest: ConnectivityForest,
    /// a[size][internal edges] = names of L-components.
    a: Vec<Vec<IndexSet<VertexId>>>,
    /// Back-pointers: name → (size, internal edges).
    filed: HashMap<VertexId, (usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct DenseSubState {
    k: usize,
    delta: usize,
    g: DynGraph,
    family: ColoringFamily,
    members: Vec<Member>,
    mutations: u64,
}

/// Partitions of k into descending positive parts.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

fn k_subsets(items: &[u8], k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn rec(items: &[u8], k: usize, from: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

impl Member {
    fn file(&mut self, v: VertexId, k: usize) -> u64 {
        let size = self.forest.component_size(v);
        if size > k {
            return 0;
        }
        let name = self.forest.component_of(v);
        if self.filed.contains_key(&name) {
            return 0;
        }
        let internal = self.forest.component_edges(v);
        self.a[size][internal].insert(name);
        self.filed.insert(name, (size, internal));
        1
    }

    fn unfile(&mut self, v: VertexId) -> u64 {
        let name = self.forest.component_of(v);
        match self.filed.remove(&name) {
            Some((size, internal)) => {
                self.a[size][internal].swap_remove(&name);
                1
            }
            None => 0,
        }
    }

    fn bump_weight(&mut self, v: VertexId, by: i64) {
        let w = self.forest.vertex_weight(v);
        self.forest.set_vertex_weight(v, w + by);
    }

    /// Best (edges, component names) over partitions of k.
    fn best(&self, k: usize, parts: &[Vec<usize>]) -> Option<(usize, Vec<VertexId>)> {
        // top[s] = the densest ⌊k/s⌋ components of size s.
        let mut top: Vec<Vec<(usize, VertexId)>> = vec![Vec::new(); k + 1];
        for (s, slot) in top.iter_mut().enumerate().skip(1) {
            let want = k / s;
            'fill: for e in (0..self.a[s].len()).rev() {
                for &name in &self.a[s][e] {
                    if slot.len() == want {
                        break 'fill;
                    }
                    slot.push((e, name));
                }
            }
        }
        let mut best: Option<(usize, Vec<VertexId>)> = None;
        for p in parts {
            let mut used = vec![0usize; k + 1];
            let mut total = 0;
            let mut names = Vec::new();
            let mut ok = true;
            for &s in p {
                match top[s].get(used[s]) {
                    Some(&(e, name)) => {
                        total += e;
                        names.push(name);
                        used[s] += 1;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && best.as_ref().is_none_or(|b| total > b.0) {
                best = Some((total, names));
            }
        }
        best
    }
}

impl DenseSubState {
    /// Colors k(Δ+1); one member per coloring and k-set of colors that coloring uses.
    pub fn new(n: usize, k: usize, delta: usize, mode: Mode) -> Result<Self, ColorError> {
        let family = ColoringFamily::new(n, k * (delta + 1), mode)?;
        let mut subsets = Vec::new();
        for i in 0..family.len() {
            let mut used: Vec<u8> = family.coloring(i).to_vec();
            used.sort_unstable();
            used.dedup();
            for u in k_subsets(&used, k) {
                subsets.push((i, u));
                if subsets.len() > MAX_MEMBERS {
                    return Err(ColorError::TooManyMembers(subsets.len()));
                }
            }
        }
        let max_internal = k * delta / 2;
        let mut members = Vec::with_capacity(subsets.len());
        for (i, u) in subsets {
            let in_l: Vec<bool> = family.coloring(i).iter().map(|c| u.contains(c)).collect();
            let mut m = Member {
                coloring: i,
                in_l,
                forest: ConnectivityForest::new(n),
                a: vec![vec![IndexSet::new(); max_internal + 1]; k + 1],
                filed: HashMap::new(),
            };
            for v in 0..n as VertexId {
                if m.in_l[v as usize] {
                    m.file(v, k);
                }
            }
            members.push(m);
        }
        Ok(DenseSubState { k, delta, g: DynGraph::simple(n), family, members, mutations: 0 })
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

    /// Forest updates, weight changes and A-cell edits so far.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    pub fn insert_edge(&mut self, x: VertexId, y: VertexId) -> Result<(), ColorError> {
        let n = self.g.n();
        for v in [x, y] {
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v).into());
            }
        }
        if x != y && !self.g.has_edge(x, y) && (self.g.degree(x) >= self.delta || self.g.degree(y) >= self.delta) {
            return Err(ColorError::DegreeBoundViolated(x, y));
        }
        self.g.insert_edge(x, y)?;
        self.apply(x, y, true);
        Ok(())
    }

    pub fn delete_edge(&mut self, x: VertexId, y: VertexId) -> Result<(), ColorError> {
        let h = self.g.find_edge(x, y).ok_or(GraphError::NoSuchEdge(x, y))?;
        self.g.delete_edge(h)?;
        self.apply(x, y, false);
        Ok(())
    }

    fn apply(&mut self, x: VertexId, y: VertexId, insert: bool) {
        let k = self.k;
        let mut count = 0;
        for m in &mut self.members {
            match (m.in_l[x as usize], m.in_l[y as usize]) {
                (false, false) => {}
                (true, false) | (false, true) => {
                    // Boundary edge: m(C) moves, the internal count does not.
                    let inner = if m.in_l[x as usize] { x } else { y };
                    m.bump_weight(inner, if insert { 1 } else { -1 });
                    count += 1;
                }
                (true, true) => {
                    count += m.unfile(x) + m.unfile(y);
                    if insert {
                        m.forest.insert(x, y);
                    } else {
                        m.forest.delete(x, y).expect("member holds the edge");
                    }
                    count += 1 + m.file(x, k) + m.file(y, k);
                }
            }
        }
        self.mutations += count;
    }

    /// Maximum number of edges induced by k vertices, with such a vertex set.
    pub fn query(&self) -> Option<(usize, Vec<VertexId>)> {
        if self.k == 0 {
            return Some((0, Vec::new()));
        }
        let parts = partitions(self.k);
        let mut best: Option<(usize, usize, Vec<VertexId>)> = None;
        for (i, m) in self.members.iter().enumerate() {
            if let Some((e, names)) = m.best(self.k, &parts) {
                if best.as_ref().is_none_or(|b| e > b.0) {
                    best = Some((e, i, names));
                }
            }
        }
        let (e, i, names) = best?;
        let mut forest = self.members[i].forest.clone();
        let mut out: Vec<VertexId> = names.into_iter().flat_map(|c| forest.component_vertices(c)).collect();
        out.sort_unstable();
        Some((e, out))
    }

    pub fn in_l(&self, i: usize, v: VertexId) -> bool {
        self.members[i].in_l[v as usize]
    }

    /// m(C) for the L-component of v in member i: internal edges plus edges into R.
    pub fn touching_edges(&mut self, i: usize, v: VertexId) -> usize {
        let f = &mut self.members[i].forest;
        f.component_edges(v) + f.component_weight(v) as usize
    }

    /// Recounts every filed component and m(C) from the graph; panics on mismatch.
    pub fn check_invariants(&mut self) {
        let k = self.k;
        let n = self.g.n();
        let edges = self.g.edge_pairs();
        for i in 0..self.members.len() {
            let m = &mut self.members[i];
            assert!(m.coloring < self.family.len());
            let mut expected: HashMap<VertexId, (usize, usize)> = HashMap::new();
            for v in 0..n as VertexId {
                if !m.in_l[v as usize] {
                    continue;
                }
                let comp = m.forest.component_vertices(v);
                let inside = |w: VertexId| comp.binary_search(&w).is_ok();
                let internal = edges.iter().filter(|&&(a, b)| inside(a) && inside(b)).count();
                let boundary =
                    edges.iter().filter(|&&(a, b)| (inside(a) && !m.in_l[b as usize]) || (inside(b) && !m.in_l[a as usize])).count();
                assert_eq!(m.forest.component_edges(v) + m.forest.component_weight(v) as usize, internal + boundary);
                for &(a, b) in &edges {
                    if inside(a) != inside(b) {
                        assert!(!(m.in_l[a as usize] && m.in_l[b as usize]), "L-edge leaves its component");
                    }
                }
                if comp.len() <= k {
                    expected.insert(comp[0], (comp.len(), internal));
                }
            }
            assert_eq!(m.filed, expected, "member {i} filing");
            let cells: usize = m.a.iter().flatten().map(|c| c.len()).sum();
            assert_eq!(cells, expected.len());
            for (name, &(s, e)) in &expected {
                assert!(m.a[s][e].contains(name));
            }
        }
    }
}
