//! Undirected Feedback Vertex Set by a dynamic branching tree over resolved graphs.
//!
//! Level k′ keeps the resolved multigraph G* of its input (degree-one vertices
//! deleted, loop-free degree-two vertices contracted). Contracted vertices live
//! in trees of a link/cut forest D: T_x holds what was folded into x, L_e the
//! path (with hanging trees) that became edge e, with copies of e's endpoints
//! as leaves. A rebuild picks the branch set B = B_H ∪ B_L and builds one
//! level k′−1 per b ∈ B on G* − b; G*-edge changes are forwarded to them until
//! more than δ = m*/(6k′+1) have accumulated. Level 0 is a cycle detector.

use crate::dynconn::ConnectivityForest;
use crate::graphcore::{DynGraph, EdgeHandle, GraphError, VertexId};
use crate::linkcut::{LinkCutForest, NodeHandle};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// Largest supported parameter.
pub const MAX_K: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FvsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parameter k = {0} unsupported")]
    BadParameter(usize),
}

/// Net change to a G* edge multiset: (u ≤ v, signed multiplicity change).
pub type EdgeDiff = Vec<(VertexId, VertexId, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    None,
    T(VertexId),
    L(EdgeHandle),
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// G* of a multigraph H together with the contraction forest D.
#[derive(Clone, Debug)]
pub struct ResolvedGraph {
    h: DynGraph,
    gstar: DynGraph,
    present: Vec<bool>,
    d: LinkCutForest,
    orig: Vec<VertexId>,
    tag: Vec<Tag>,
    /// x_x for vertices of G*, the single node of a contracted vertex otherwise.
    pos: Vec<NodeHandle>,
    /// Endpoint copies of each G* edge; the first is the root of L_e.
    copies: HashMap<EdgeHandle, (NodeHandle, NodeHandle)>,
    log: BTreeMap<(VertexId, VertexId), i64>,
    raw_changes: u64,
}

impl ResolvedGraph {
    pub fn new(n: usize) -> Self {
        let mut r = ResolvedGraph {
            h: DynGraph::new(n, true, true),
            gstar: DynGraph::new(n, true, true),
            present: vec![true; n],
            d: LinkCutForest::new(),
            orig: Vec::new(),
            tag: Vec::new(),
            pos: Vec::with_capacity(n),
            copies: HashMap::new(),
            log: BTreeMap::new(),
            raw_changes: 0,
        };
        for v in 0..n as VertexId {
            let a = r.node(v, Tag::T(v));
            r.pos.push(a);
        }
        r
    }

    pub fn input(&self) -> &DynGraph {
        &self.h
    }

    pub fn gstar(&self) -> &DynGraph {
        &self.gstar
    }

    pub fn present(&self, v: VertexId) -> bool {
        self.present[v as usize]
    }

    /// G*-edge insertions and deletions before netting.
    pub fn raw_changes(&self) -> u64 {
        self.raw_changes
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.gstar.has_edge(v, v)
    }

    /// Vertices of G* carrying a self-loop.
    pub fn loop_vertices(&self) -> BTreeSet<VertexId> {
        self.gstar.edges().filter(|&(_, a, b)| a == b).map(|(_, a, _)| a).collect()
    }

    fn node(&mut self, orig: VertexId, tag: Tag) -> NodeHandle {
        let a = self.d.maketree();
        let i = a.0 as usize;
        if i >= self.orig.len() {
            self.orig.resize(i + 1, 0);
            self.tag.resize(i + 1, Tag::None);
        }
        self.orig[i] = orig;
        self.tag[i] = tag;
        a
    }

    fn drop_node(&mut self, a: NodeHandle) {
        self.tag[a.0 as usize] = Tag::None;
        self.d.remove(a).expect("isolated node");
    }

    fn link(&mut self, a: NodeHandle, b: NodeHandle) {
        self.d.link(a, b).expect("D stays a forest");
    }

    fn cut(&mut self, a: NodeHandle, b: NodeHandle) {
        self.d.cut(a, b).expect("D edge");
    }

    fn after(&mut self, a: NodeHandle, b: NodeHandle) -> NodeHandle {
        self.d.after(a, b).expect("same D tree")
    }

    fn tree_of(&mut self, a: NodeHandle) -> Tag {
        let r = self.d.find_root(a);
        self.tag[r.0 as usize]
    }

    fn gstar_add(&mut self, x: VertexId, y: VertexId, cx: NodeHandle, cy: NodeHandle) -> EdgeHandle {
        let (first, second) = if x == y && cy < cx { (cy, cx) } else { (cx, cy) };
        self.d.evert(first);
        let h = self.gstar.insert_edge(x, y).expect("G* is a multigraph");
        self.copies.insert(h, (first, second));
        self.tag[first.0 as usize] = Tag::L(h);
        *self.log.entry(key(x, y)).or_default() += 1;
        self.raw_changes += 1;
        h
    }

    fn gstar_remove(&mut self, h: EdgeHandle) -> (NodeHandle, NodeHandle) {
        let (x, y) = self.gstar.delete_edge(h).expect("live G* edge");
        let c = self.copies.remove(&h).expect("copies of G* edge");
        self.tag[c.0 .0 as usize] = Tag::None;
        *self.log.entry(key(x, y)).or_default() -= 1;
        self.raw_changes += 1;
        c
    }

    /// Folds copy `leaf` (a leaf of its tree, `other` in the same tree) into `into`.
    fn absorb(&mut self, into: NodeHandle, leaf: NodeHandle, other: NodeHandle) {
        let a = self.after(leaf, other);
        self.cut(leaf, a);
        self.drop_node(leaf);
        self.link(a, into);
    }

    /// Copies of h ordered as (copy of v, the other copy).
    fn copies_at(&self, h: EdgeHandle, v: VertexId) -> (NodeHandle, NodeHandle) {
        let (a, b) = self.copies[&h];
        if self.orig[a.0 as usize] == v {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn delete_degree_one(&mut self, v: VertexId) {
        let (x, h) = self.gstar.neighbors(v)[0];
        let (cv, cx) = self.copies_at(h, v);
        self.gstar_remove(h);
        let vv = self.pos[v as usize];
        self.absorb(vv, cv, cx);
        self.absorb(self.pos[x as usize], cx, vv);
        self.tag[vv.0 as usize] = Tag::None;
        self.present[v as usize] = false;
    }

    fn contract_degree_two(&mut self, v: VertexId) {
        let [(x, h1), (y, h2)] = [self.gstar.neighbors(v)[0], self.gstar.neighbors(v)[1]];
        let (cv1, cx) = self.copies_at(h1, v);
        let (cv2, cy) = self.copies_at(h2, v);
        self.gstar_remove(h1);
        self.gstar_remove(h2);
        let vv = self.pos[v as usize];
        self.absorb(vv, cv1, cx);
        self.absorb(vv, cv2, cy);
        self.tag[vv.0 as usize] = Tag::None;
        self.present[v as usize] = false;
        self.gstar_add(x, y, cx, cy);
    }

    /// Puts s (a node on the copy-to-copy path of L_h) into G* between h's endpoints.
    fn split_at(&mut self, s: NodeHandle, h: EdgeHandle) {
        let su = self.orig[s.0 as usize];
        let (c0, c1) = self.gstar_remove(h);
        for c in [c0, c1] {
            self.d.evert(s);
            let b = self.after(s, c);
            self.cut(s, b);
            let n = self.node(su, Tag::None);
            self.link(n, b);
            self.gstar_add(self.orig[c.0 as usize], su, c, n);
        }
        self.d.evert(s);
        self.tag[s.0 as usize] = Tag::T(su);
        self.present[su as usize] = true;
    }

    fn reintroduce(&mut self, u: VertexId) {
        if self.present[u as usize] {
            return;
        }
        let p = self.pos[u as usize];
        match self.tree_of(p) {
            Tag::T(v) => {
                let vv = self.pos[v as usize];
                let w = self.after(p, vv);
                self.cut(p, w);
                self.d.evert(p);
                self.tag[p.0 as usize] = Tag::T(u);
                self.present[u as usize] = true;
                let cu = self.node(u, Tag::None);
                let cv = self.node(v, Tag::None);
                if w == vv {
                    self.link(cu, cv);
                } else {
                    self.link(cu, w);
                    let x = self.after(vv, w);
                    self.cut(vv, x);
                    self.link(cv, x);
                }
                self.gstar_add(u, v, cu, cv);
            }
            Tag::L(h) => {
                let (c0, c1) = self.copies[&h];
                self.d.evert(p);
                let z = self.d.nca(c0, c1).expect("same D tree");
                self.d.evert(c0);
                self.split_at(z, h);
                if z != p {
                    self.reintroduce(u);
                }
            }
            Tag::None => unreachable!("every D tree has a tagged root"),
        }
    }

    fn simplify(&mut self, mut work: Vec<VertexId>) {
        while let Some(x) = work.pop() {
            if !self.present[x as usize] {
                continue;
            }
            match self.gstar.degree(x) {
                1 => {
                    let y = self.gstar.neighbors(x)[0].0;
                    self.delete_degree_one(x);
                    work.push(y);
                }
                2 if !self.has_loop(x) => self.contract_degree_two(x),
                _ => {}
            }
        }
    }

    fn take_diff(&mut self) -> EdgeDiff {
        std::mem::take(&mut self.log).into_iter().filter(|&(_, c)| c != 0).map(|((a, b), c)| (a, b, c)).collect()
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeDiff, GraphError> {
        self.h.insert_edge(u, v)?;
        self.reintroduce(u);
        self.reintroduce(v);
        let cu = self.node(u, Tag::None);
        let cv = self.node(v, Tag::None);
        self.link(cu, cv);
        self.gstar_add(u, v, cu, cv);
        let work = self.log.keys().flat_map(|&(a, b)| [a, b]).collect();
        self.simplify(work);
        Ok(self.take_diff())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeDiff, GraphError> {
        let e = self.h.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        self.h.delete_edge(e)?;
        self.reintroduce(u);
        self.reintroduce(v);
        let direct: Vec<EdgeHandle> =
            self.gstar.neighbors(u).iter().filter(|&&(x, _)| x == v).map(|&(_, h)| h).collect();
        let h = direct
            .into_iter()
            .find(|h| {
                let (a, b) = self.copies[h];
                self.d.after(a, b) == Ok(b)
            })
            .expect("an edge between G* vertices is a direct G* edge");
        let (a, b) = self.gstar_remove(h);
        self.cut(a, b);
        self.drop_node(a);
        self.drop_node(b);
        let work = self.log.keys().flat_map(|&(a, b)| [a, b]).collect();
        self.simplify(work);
        Ok(self.take_diff())
    }

    fn live_nodes(&self) -> Vec<NodeHandle> {
        (0..self.orig.len() as u32).map(NodeHandle).filter(|&a| self.d.is_live(a)).collect()
    }

    /// Number of contracted vertices inside the L-tree of every G* self-loop.
    pub fn loop_tree_sizes(&mut self) -> Vec<usize> {
        let loops: Vec<EdgeHandle> = self.gstar.edges().filter(|&(_, a, b)| a == b).map(|(h, _, _)| h).collect();
        let nodes = self.live_nodes();
        loops
            .into_iter()
            .map(|h| {
                let root = self.copies[&h].0;
                nodes.iter().filter(|&&a| self.d.find_root(a) == root).count() - 2
            })
            .collect()
    }

    /// Checks D against H and the reduction rules; panics on mismatch.
    pub fn check_invariants(&mut self) {
        let n = self.h.n();
        let nodes = self.live_nodes();
        let mut d_edges: Vec<(VertexId, VertexId)> = Vec::new();
        for &a in &nodes {
            if let Some(p) = self.d.parent(a) {
                d_edges.push(key(self.orig[a.0 as usize], self.orig[p.0 as usize]));
            }
        }
        d_edges.sort_unstable();
        assert_eq!(d_edges, self.h.edge_pairs(), "D edges are H edges");
        let copy_nodes: BTreeSet<NodeHandle> = self.copies.values().flat_map(|&(a, b)| [a, b]).collect();
        for &a in &nodes {
            let o = self.orig[a.0 as usize];
            let is_pos = self.pos[o as usize] == a;
            assert!(is_pos != copy_nodes.contains(&a), "node is a vertex or a copy");
            match self.tree_of(a) {
                Tag::T(x) => {
                    assert!(self.present[x as usize]);
                    assert_eq!(self.d.find_root(a), self.pos[x as usize]);
                    assert!(is_pos, "T trees hold no copies");
                    assert!(a == self.pos[x as usize] || !self.present[o as usize]);
                }
                Tag::L(h) => {
                    assert_eq!(self.d.find_root(a), self.copies[&h].0);
                    assert!(copy_nodes.contains(&a) || !self.present[o as usize]);
                }
                Tag::None => panic!("untagged D root"),
            }
        }
        let gedges: Vec<(EdgeHandle, VertexId, VertexId)> = self.gstar.edges().collect();
        for (h, x, y) in gedges {
            let (a, b) = self.copies[&h];
            let mut ends = [self.orig[a.0 as usize], self.orig[b.0 as usize]];
            ends.sort_unstable();
            assert_eq!(ends, [x.min(y), x.max(y)]);
            for c in [a, b] {
                let other = if c == a { b } else { a };
                let next = self.after(c, other);
                assert!(self.d.parent(c) == Some(next) || self.d.parent(next) == Some(c));
                // Leaves: no second neighbour.
                let deg = nodes.iter().filter(|&&z| self.d.parent(z) == Some(c)).count() + usize::from(self.d.parent(c).is_some());
                assert_eq!(deg, 1, "copy is a leaf of L_e");
            }
        }
        assert_eq!(self.copies.len(), self.gstar.m());
        for v in 0..n as VertexId {
            if self.present[v as usize] {
                let deg = self.gstar.degree(v);
                assert!(deg != 1 && (deg != 2 || self.has_loop(v)), "unreduced vertex {v}");
            } else {
                assert_eq!(self.gstar.degree(v), 0);
            }
        }
    }
}

/// G* of H by static reduction in ascending vertex order: (present flags, edges).
pub fn scratch_resolved(n: usize, edges: &[(VertexId, VertexId)]) -> (Vec<bool>, Vec<(VertexId, VertexId)>) {
    let mut g = DynGraph::new(n, true, true);
    for &(u, v) in edges {
        g.insert_edge(u, v).expect("in range");
    }
    let mut present = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n as VertexId {
            if !present[v as usize] {
                continue;
            }
            if g.degree(v) == 1 {
                let h = g.neighbors(v)[0].1;
                g.delete_edge(h).expect("live");
                present[v as usize] = false;
                changed = true;
            } else if g.degree(v) == 2 && !g.has_edge(v, v) {
                let [(x, h1), (y, h2)] = [g.neighbors(v)[0], g.neighbors(v)[1]];
                g.delete_edge(h1).expect("live");
                g.delete_edge(h2).expect("live");
                g.insert_edge(x, y).expect("multigraph");
                present[v as usize] = false;
                changed = true;
            }
        }
        if !changed {
            return (present, g.edge_pairs());
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FvsStats {
    pub updates: u64,
    pub rebuilds: u64,
    /// G* edges handed to children during rebuilds.
    pub rebuild_work: u64,
    /// Largest net G* change of a single update.
    pub max_diff: u64,
    /// G* edge changes forwarded to children.
    pub forwarded: u64,
}

impl std::ops::AddAssign for FvsStats {
    fn add_assign(&mut self, o: Self) {
        self.updates += o.updates;
        self.rebuilds += o.rebuilds;
        self.rebuild_work += o.rebuild_work;
        self.max_diff = self.max_diff.max(o.max_diff);
        self.forwarded += o.forwarded;
    }
}

#[derive(Clone, Debug)]
struct Branch {
    res: ResolvedGraph,
    m_star: usize,
    counter: usize,
    b_h: BTreeSet<VertexId>,
    b_l: BTreeSet<VertexId>,
    children: Option<Vec<(VertexId, FvsLevel)>>,
}

#[derive(Clone, Debug)]
enum Kind {
    Zero { h: Box<DynGraph>, conn: Box<ConnectivityForest>, tree_edges: usize },
    Branch(Box<Branch>),
}

/// One node of the branching tree, for parameter k′.
#[derive(Clone, Debug)]
pub struct FvsLevel {
    k: usize,
    kind: Kind,
    stats: FvsStats,
}

impl FvsLevel {
    /// A level on the given multigraph, freshly initialized.
    pub fn build(n: usize, k: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let kind = if k == 0 {
            let mut h = DynGraph::new(n, true, true);
            let mut conn = ConnectivityForest::new(n);
            for &(u, v) in edges {
                h.insert_edge(u, v).expect("in range");
                conn.insert(u, v);
            }
            let tree_edges = conn.forest_edges().len();
            conn.take_forest_changes();
            Kind::Zero { h: Box::new(h), conn: Box::new(conn), tree_edges }
        } else {
            let mut res = ResolvedGraph::new(n);
            for &(u, v) in edges {
                res.insert_edge(u, v).expect("in range");
            }
            Kind::Branch(Box::new(Branch {
                res,
                m_star: 0,
                counter: 0,
                b_h: BTreeSet::new(),
                b_l: BTreeSet::new(),
                children: None,
            }))
        };
        let mut level = FvsLevel { k, kind, stats: FvsStats::default() };
        level.rebuild();
        level
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn input_edges(&self) -> Vec<(VertexId, VertexId)> {
        match &self.kind {
            Kind::Zero { h, .. } => h.edge_pairs(),
            Kind::Branch(b) => b.res.input().edge_pairs(),
        }
    }

    pub fn resolved(&mut self) -> Option<&mut ResolvedGraph> {
        match &mut self.kind {
            Kind::Zero { .. } => None,
            Kind::Branch(b) => Some(&mut b.res),
        }
    }

    /// Branch vertices with their children, when instantiated.
    pub fn children(&mut self) -> Vec<(VertexId, &mut FvsLevel)> {
        match &mut self.kind {
            Kind::Branch(b) => b.children.iter_mut().flatten().map(|(v, c)| (*v, c)).collect(),
            Kind::Zero { .. } => Vec::new(),
        }
    }

    pub fn high_degree_set(&self) -> Vec<VertexId> {
        match &self.kind {
            Kind::Branch(b) => b.b_h.iter().copied().collect(),
            Kind::Zero { .. } => Vec::new(),
        }
    }

    /// Own counters only.
    pub fn stats(&self) -> FvsStats {
        self.stats
    }

    /// Counters summed over the whole subtree.
    pub fn total_stats(&self) -> FvsStats {
        let mut s = self.stats;
        if let Kind::Branch(b) = &self.kind {
            for (_, c) in b.children.iter().flatten() {
                s += c.total_stats();
            }
        }
        s
    }

    /// Recomputes δ, the branch set and the children from the current G*.
    pub fn rebuild(&mut self) {
        let k = self.k;
        let n = match &self.kind {
            Kind::Zero { h, .. } => h.n(),
            Kind::Branch(b) => b.res.input().n(),
        };
        let Kind::Branch(b) = &mut self.kind else {
            return;
        };
        self.stats.rebuilds += 1;
        let g = b.res.gstar();
        b.m_star = g.m();
        b.counter = 0;
        b.b_l = b.res.loop_vertices();
        // Degree ≥ δ = m*/(6k+1), compared in integers.
        b.b_h = (0..n as VertexId).filter(|&v| g.degree(v) > 0 && g.degree(v) * (6 * k + 1) >= b.m_star).collect();
        if b.b_l.len() > k {
            b.children = None;
            return;
        }
        let branch: BTreeSet<VertexId> = b.b_h.union(&b.b_l).copied().collect();
        let edges = g.edge_pairs();
        let mut children = Vec::with_capacity(branch.len());
        for v in branch {
            let rest: Vec<(VertexId, VertexId)> = edges.iter().copied().filter(|&(x, y)| x != v && y != v).collect();
            self.stats.rebuild_work += rest.len() as u64 + 1;
            children.push((v, FvsLevel::build(n, k - 1, &rest)));
        }
        b.children = Some(children);
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.update(u, v, true)
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.update(u, v, false)
    }

    fn update(&mut self, u: VertexId, v: VertexId, insert: bool) -> Result<(), GraphError> {
        self.stats.updates += 1;
        let k = self.k;
        match &mut self.kind {
            Kind::Zero { h, conn, tree_edges } => {
                if insert {
                    h.insert_edge(u, v)?;
                    conn.insert(u, v);
                } else {
                    let e = h.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
                    h.delete_edge(e)?;
                    conn.delete(u, v).expect("edge mirrored in dynconn");
                }
                for c in conn.take_forest_changes() {
                    if c.added {
                        *tree_edges += 1;
                    } else {
                        *tree_edges -= 1;
                    }
                }
                Ok(())
            }
            Kind::Branch(b) => {
                let diff = if insert { b.res.insert_edge(u, v)? } else { b.res.delete_edge(u, v)? };
                let size: u64 = diff.iter().map(|d| d.2.unsigned_abs()).sum();
                self.stats.max_diff = self.stats.max_diff.max(size);
                b.counter += size as usize;
                let loops = b.res.loop_vertices();
                let had_children = b.children.is_some();
                let stray_loop = had_children && loops.iter().any(|x| !b.b_h.contains(x) && !b.b_l.contains(x));
                b.b_l = loops;
                let window_over = b.counter * (6 * k + 1) > b.m_star;
                if b.b_l.len() > k {
                    b.children = None;
                    return Ok(());
                }
                if !had_children || window_over || stray_loop {
                    self.rebuild();
                    return Ok(());
                }
                let children = b.children.as_mut().expect("children present");
                for (bv, child) in children.iter_mut() {
                    // Deletions first keep the child's edge multiset valid.
                    for &(x, y, c) in diff.iter().filter(|d| d.2 < 0).chain(diff.iter().filter(|d| d.2 > 0)) {
                        if x == *bv || y == *bv {
                            continue;
                        }
                        for _ in 0..c.unsigned_abs() {
                            if c > 0 {
                                child.insert_edge(x, y).expect("forwarded insertion");
                            } else {
                                child.delete_edge(x, y).expect("forwarded deletion");
                            }
                            self.stats.forwarded += 1;
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// A minimum feedback vertex set of this level's graph if one of size ≤ k′ exists.
    pub fn query(&mut self) -> Option<Vec<VertexId>> {
        match &mut self.kind {
            Kind::Zero { h, tree_edges, .. } => (h.m() == *tree_edges).then(Vec::new),
            Kind::Branch(b) => {
                if b.b_l.len() > self.k {
                    return None;
                }
                if b.res.gstar().m() == 0 {
                    return Some(Vec::new());
                }
                let mut best: Option<Vec<VertexId>> = None;
                for (bv, child) in b.children.as_mut().expect("children while |B_L| ≤ k") {
                    if let Some(mut s) = child.query() {
                        if best.as_ref().is_none_or(|x| s.len() + 1 < x.len()) {
                            s.push(*bv);
                            s.sort_unstable();
                            best = Some(s);
                        }
                    }
                }
                best
            }
        }
    }
}

/// Dynamic FVS on a simple graph.
#[derive(Clone, Debug)]
pub struct FvsState {
    g: DynGraph,
    top: FvsLevel,
}

impl FvsState {
    pub fn new(n: usize, k: usize) -> Result<Self, FvsError> {
        if k > MAX_K {
            return Err(FvsError::BadParameter(k));
        }
        Ok(FvsState { g: DynGraph::simple(n), top: FvsLevel::build(n, k, &[]) })
    }

    pub fn k(&self) -> usize {
        self.top.k()
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn top(&mut self) -> &mut FvsLevel {
        &mut self.top
    }

    pub fn stats(&self) -> FvsStats {
        self.top.total_stats()
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), FvsError> {
        self.g.insert_edge(u, v)?;
        self.top.insert_edge(u, v)?;
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), FvsError> {
        let h = self.g.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        self.g.delete_edge(h)?;
        self.top.delete_edge(u, v)?;
        Ok(())
    }

    pub fn rebuild(&mut self) {
        self.top.rebuild();
    }

    pub fn query(&mut self) -> Option<Vec<VertexId>> {
        self.top.query()
    }
}
