//! Max Leaf Spanning Tree over a maintained resolved graph.
//!
//! A vertex is useless when it and both of its neighbours have degree two.
//! G* drops useless vertices; every G*-edge carries the G-path it stands for
//! (its chain). A component that is a bare cycle keeps its smallest vertex as
//! an anchor with a self-loop. T* is the spanning forest of G* kept by
//! dynconn, and T takes every chain edge except the last one, plus the last
//! one when the chain is a T* edge. D mirrors T for `after` queries.

use crate::dynconn::{ConnectivityForest, EdgeId};
use crate::graphcore::{DynGraph, EdgeHandle, GraphError, VertexId};
use crate::linkcut::{LinkCutForest, NodeHandle};
use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MlstAnswer {
    NotConnected,
    NoTreeWithKLeaves,
    /// Spanning tree edges (u < v), sorted.
    Tree(Vec<(VertexId, VertexId)>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MlstStats {
    /// G*-edge insertions plus removals.
    pub gstar_changes: u64,
    /// Link and cut operations on D, including query-time ones.
    pub d_ops: u64,
    pub static_calls: u64,
    /// Queries on a partial kernel whose static solve came back empty.
    pub kernel_fallbacks: u64,
}

#[derive(Clone, Debug)]
struct Chain {
    /// Endpoints first and last; a loop repeats its anchor.
    path: Vec<VertexId>,
    handle: EdgeHandle,
    conn: Option<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct MlstState {
    k: usize,
    g: DynGraph,
    gstar: DynGraph,
    chains: Vec<Option<Chain>>,
    free_chains: Vec<usize>,
    owner: Vec<Option<usize>>,
    edge_chain: HashMap<(VertexId, VertexId), usize>,
    anchor: Vec<bool>,
    tstar: ConnectivityForest,
    tstar_chain: HashMap<EdgeId, usize>,
    t: BTreeSet<(VertexId, VertexId)>,
    d: LinkCutForest,
    nodes: Vec<NodeHandle>,
    by_degree: BTreeSet<(usize, Reverse<VertexId>)>,
    stats: MlstStats,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

fn useless(g: &DynGraph, v: VertexId) -> bool {
    g.degree(v) == 2 && g.neighbors(v).iter().all(|&(x, _)| g.degree(x) == 2)
}

/// Chain path in canonical orientation.
fn canonical(mut path: Vec<VertexId>) -> Vec<VertexId> {
    let last = path.len() - 1;
    let flip = if path[0] == path[last] { path.len() > 2 && path[1] > path[last - 1] } else { path[0] > path[last] };
    if flip {
        path.reverse();
    }
    path
}

/// The resolved graph of g as its set of canonical chains.
pub fn scratch_chains(g: &DynGraph) -> BTreeSet<Vec<VertexId>> {
    let n = g.n();
    let mut out = BTreeSet::new();
    let mut done: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let is_end = |v: VertexId| !useless(g, v);
    for (_, a, b) in g.edges() {
        if done.contains(&key(a, b)) {
            continue;
        }
        let mut path = vec![a, b];
        let mut cycle = false;
        while !is_end(*path.last().unwrap()) {
            let (prev, cur) = (path[path.len() - 2], *path.last().unwrap());
            let next = g.neighbors(cur).iter().map(|&(x, _)| x).find(|&x| x != prev).unwrap();
            if next == path[0] {
                cycle = !is_end(next);
                path.push(next);
                break;
            }
            path.push(next);
        }
        if !cycle {
            while !is_end(path[0]) {
                let next = g.neighbors(path[0]).iter().map(|&(x, _)| x).find(|&x| x != path[1]).unwrap();
                path.insert(0, next);
            }
        } else {
            // Bare cycle: rotate onto its smallest vertex.
            path.pop();
            let at = (0..path.len()).min_by_key(|&i| path[i]).unwrap();
            path.rotate_left(at);
            path.push(path[0]);
        }
        for w in path.windows(2) {
            done.insert(key(w[0], w[1]));
        }
        out.insert(canonical(path));
    }
    debug_assert!(out.iter().flatten().all(|&v| (v as usize) < n));
    out
}

impl MlstState {
    pub fn new(n: usize, k: usize) -> Self {
        let mut d = LinkCutForest::new();
        let nodes = (0..n).map(|_| d.maketree()).collect();
        MlstState {
            k,
            g: DynGraph::simple(n),
            gstar: DynGraph::new(n, true, true),
            chains: Vec::new(),
            free_chains: Vec::new(),
            owner: vec![None; n],
            edge_chain: HashMap::new(),
            anchor: vec![false; n],
            tstar: ConnectivityForest::new(n),
            tstar_chain: HashMap::new(),
            t: BTreeSet::new(),
            d,
            nodes,
            by_degree: (0..n as VertexId).map(|v| (0, Reverse(v))).collect(),
            stats: MlstStats::default(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set_k(&mut self, k: usize) {
        self.k = k;
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn stats(&self) -> MlstStats {
        self.stats
    }

    /// Maintained chains in canonical orientation.
    pub fn chains(&self) -> BTreeSet<Vec<VertexId>> {
        self.chains.iter().flatten().map(|c| canonical(c.path.clone())).collect()
    }

    pub fn in_gstar(&self, v: VertexId) -> bool {
        !useless(&self.g, v) || self.anchor[v as usize]
    }

    pub fn gstar_vertex_count(&self) -> usize {
        (0..self.g.n() as VertexId).filter(|&v| self.in_gstar(v)).count()
    }

    pub fn gstar(&self) -> &DynGraph {
        &self.gstar
    }

    /// Edges of the maintained spanning forest T.
    pub fn forest(&self) -> Vec<(VertexId, VertexId)> {
        self.t.iter().copied().collect()
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for x in [u, v] {
            if x as usize >= self.g.n() {
                return Err(GraphError::VertexOutOfRange(x));
            }
        }
        if u == v {
            return Err(GraphError::LoopForbidden(u));
        }
        if self.g.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.update(u, v, true)
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u as usize >= self.g.n() || v as usize >= self.g.n() || !self.g.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        self.update(u, v, false)
    }

    fn update(&mut self, u: VertexId, v: VertexId, insert: bool) -> Result<(), GraphError> {
        let mut cand: BTreeSet<VertexId> = [u, v].into();
        cand.extend(self.g.neighbors(u).iter().chain(self.g.neighbors(v)).map(|&(x, _)| x));
        let before: Vec<(VertexId, bool)> = cand.iter().map(|&x| (x, useless(&self.g, x))).collect();
        let mut dissolve: BTreeSet<usize> = BTreeSet::new();
        if insert {
            self.g.insert_edge(u, v)?;
        } else {
            dissolve.insert(self.edge_chain[&key(u, v)]);
            let h = self.g.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
            self.g.delete_edge(h)?;
        }
        for x in [u, v] {
            let d = self.g.degree(x);
            let old = if insert { d - 1 } else { d + 1 };
            self.by_degree.remove(&(old, Reverse(x)));
            self.by_degree.insert((d, Reverse(x)));
        }
        let changed: Vec<VertexId> = before.iter().filter(|&&(x, was)| useless(&self.g, x) != was).map(|&(x, _)| x).collect();
        for &x in changed.iter().chain(&[u, v]) {
            if let Some(c) = self.owner[x as usize] {
                dissolve.insert(c);
            }
        }
        for &x in &changed {
            for &(y, _) in self.g.neighbors(x) {
                if let Some(&c) = self.edge_chain.get(&key(x, y)) {
                    dissolve.insert(c);
                }
            }
        }
        let mut touched: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut pending: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for c in dissolve {
            for e in self.remove_chain(c) {
                touched.insert(e);
                if self.g.has_edge(e.0, e.1) {
                    pending.insert(e);
                }
            }
        }
        if insert {
            pending.insert(key(u, v));
        }
        let mut recheck: BTreeSet<usize> = BTreeSet::new();
        while let Some(&e) = pending.iter().next() {
            let path = self.walk(e);
            for w in path.windows(2) {
                let removed = pending.remove(&key(w[0], w[1]));
                assert!(removed, "chain leaves the rebuilt region");
            }
            recheck.insert(self.add_chain(path));
        }
        for change in self.tstar.take_forest_changes() {
            if let Some(&c) = self.tstar_chain.get(&change.edge) {
                recheck.insert(c);
            }
        }
        for c in recheck {
            touched.extend(self.chain_edges(c));
        }
        self.reconcile(touched);
        Ok(())
    }

    fn chain_edges(&self, c: usize) -> Vec<(VertexId, VertexId)> {
        let ch = self.chains[c].as_ref().expect("live chain");
        ch.path.windows(2).map(|w| key(w[0], w[1])).collect()
    }

    fn remove_chain(&mut self, c: usize) -> Vec<(VertexId, VertexId)> {
        let edges = self.chain_edges(c);
        let ch = self.chains[c].take().expect("live chain");
        self.free_chains.push(c);
        self.gstar.delete_edge(ch.handle).expect("G* edge of chain");
        if let Some(id) = ch.conn {
            self.tstar.delete_edge(id).expect("T* edge of chain");
            self.tstar_chain.remove(&id);
        }
        for &x in &ch.path[1..ch.path.len() - 1] {
            self.owner[x as usize] = None;
        }
        if ch.path[0] == ch.path[ch.path.len() - 1] {
            self.anchor[ch.path[0] as usize] = false;
        }
        for e in &edges {
            self.edge_chain.remove(e);
        }
        self.stats.gstar_changes += 1;
        edges
    }

    fn next_on(&self, prev: VertexId, cur: VertexId) -> VertexId {
        self.g.neighbors(cur).iter().map(|&(x, _)| x).find(|&x| x != prev).expect("degree two")
    }

    /// The G-path through edge e between G* vertices, anchoring bare cycles.
    fn walk(&mut self, e: (VertexId, VertexId)) -> Vec<VertexId> {
        let mut path = vec![e.0, e.1];
        loop {
            let cur = *path.last().unwrap();
            if self.in_gstar(cur) {
                break;
            }
            let next = self.next_on(path[path.len() - 2], cur);
            if next == path[0] && !self.in_gstar(next) {
                let at = (0..path.len()).min_by_key(|&i| path[i]).unwrap();
                path.rotate_left(at);
                path.push(path[0]);
                self.anchor[path[0] as usize] = true;
                return path;
            }
            path.push(next);
        }
        while !self.in_gstar(path[0]) {
            let next = self.next_on(path[1], path[0]);
            path.insert(0, next);
        }
        path
    }

    fn add_chain(&mut self, path: Vec<VertexId>) -> usize {
        let (a, b) = (path[0], path[path.len() - 1]);
        let handle = self.gstar.insert_edge(a, b).expect("G* accepts multi-edges and loops");
        let conn = (a != b).then(|| self.tstar.insert(a, b));
        let c = match self.free_chains.pop() {
            Some(c) => c,
            None => {
                self.chains.push(None);
                self.chains.len() - 1
            }
        };
        for &x in &path[1..path.len() - 1] {
            self.owner[x as usize] = Some(c);
        }
        for w in path.windows(2) {
            self.edge_chain.insert(key(w[0], w[1]), c);
        }
        if let Some(id) = conn {
            self.tstar_chain.insert(id, c);
        }
        self.chains[c] = Some(Chain { path, handle, conn });
        self.stats.gstar_changes += 1;
        c
    }

    /// Whether edge e belongs to T under the chain rule.
    fn wanted(&self, e: (VertexId, VertexId)) -> bool {
        let Some(&c) = self.edge_chain.get(&e) else {
            return false;
        };
        let ch = self.chains[c].as_ref().expect("live chain");
        let last = key(ch.path[ch.path.len() - 2], ch.path[ch.path.len() - 1]);
        e != last || ch.conn.is_some_and(|id| self.tstar.is_tree_edge(id))
    }

    fn reconcile(&mut self, edges: BTreeSet<(VertexId, VertexId)>) {
        let (mut cut, mut link) = (Vec::new(), Vec::new());
        for e in edges {
            match (self.t.contains(&e), self.wanted(e)) {
                (true, false) => cut.push(e),
                (false, true) => link.push(e),
                _ => {}
            }
        }
        for (a, b) in cut {
            self.t.remove(&(a, b));
            self.d.cut(self.nodes[a as usize], self.nodes[b as usize]).expect("T edge in D");
            self.stats.d_ops += 1;
        }
        for (a, b) in link {
            self.t.insert((a, b));
            self.d.link(self.nodes[a as usize], self.nodes[b as usize]).expect("T stays a forest");
            self.stats.d_ops += 1;
        }
    }

    fn d_cut(&mut self, a: VertexId, b: VertexId, log: &mut Vec<(bool, VertexId, VertexId)>) {
        self.d.cut(self.nodes[a as usize], self.nodes[b as usize]).expect("edge in D");
        self.stats.d_ops += 1;
        log.push((false, a, b));
    }

    fn d_link(&mut self, a: VertexId, b: VertexId, log: &mut Vec<(bool, VertexId, VertexId)>) -> bool {
        self.stats.d_ops += 1;
        let ok = self.d.link(self.nodes[a as usize], self.nodes[b as usize]).is_ok();
        if ok {
            log.push((true, a, b));
        }
        ok
    }

    fn undo(&mut self, log: Vec<(bool, VertexId, VertexId)>) {
        for (linked, a, b) in log.into_iter().rev() {
            let (x, y) = (self.nodes[a as usize], self.nodes[b as usize]);
            if linked {
                self.d.cut(x, y).expect("undo link");
            } else {
                self.d.link(x, y).expect("undo cut");
            }
            self.stats.d_ops += 1;
        }
    }

    /// A spanning tree with at least k leaves, built from T without changing it.
    pub fn query(&mut self) -> MlstAnswer {
        let n = self.g.n();
        let k = self.k;
        if n == 0 {
            return if k == 0 { MlstAnswer::Tree(Vec::new()) } else { MlstAnswer::NoTreeWithKLeaves };
        }
        if self.t.len() + 1 != n {
            return MlstAnswer::NotConnected;
        }
        if k == 0 {
            return MlstAnswer::Tree(self.forest());
        }
        let &(deg, Reverse(v)) = self.by_degree.last().expect("n > 0");
        if deg >= k {
            return MlstAnswer::Tree(self.star_tree(v));
        }
        let threshold = 4 * k * k + 12 * k + 8;
        if self.gstar_vertex_count() <= threshold {
            let all: Vec<VertexId> = (0..n as VertexId).collect();
            return match self.solve_on(&all) {
                Some(tree) => MlstAnswer::Tree(tree),
                None => MlstAnswer::NoTreeWithKLeaves,
            };
        }
        let region = self.kernel_region(threshold);
        if let Some(ts) = self.solve_on(&region) {
            return MlstAnswer::Tree(self.merge(&region, ts));
        }
        self.stats.kernel_fallbacks += 1;
        let all: Vec<VertexId> = (0..n as VertexId).collect();
        match self.solve_on(&all) {
            Some(tree) => MlstAnswer::Tree(tree),
            None => MlstAnswer::NoTreeWithKLeaves,
        }
    }

    /// T with k edges of v forced in, each replacing the first edge of its
    /// endpoint on the way to v.
    fn star_tree(&mut self, v: VertexId) -> Vec<(VertexId, VertexId)> {
        let mut tree = self.t.clone();
        let mut log = Vec::new();
        let ys: Vec<VertexId> = {
            let mut ys: Vec<VertexId> = self.g.neighbors(v).iter().map(|&(y, _)| y).collect();
            ys.sort_unstable();
            ys.truncate(self.k);
            ys
        };
        for y in ys {
            let w = self.d.after(self.nodes[y as usize], self.nodes[v as usize]).expect("connected");
            let w = w.0 as VertexId;
            if w == v {
                continue;
            }
            self.d_cut(y, w, &mut log);
            tree.remove(&key(y, w));
            self.d_link(y, v, &mut log);
            tree.insert(key(y, v));
        }
        self.undo(log);
        tree.into_iter().collect()
    }

    /// BFS ball of `threshold` G* vertices, grown by radius two, expanded by
    /// the chains running inside it.
    fn kernel_region(&self, threshold: usize) -> Vec<VertexId> {
        let n = self.g.n();
        let r = (0..n as VertexId).find(|&v| self.in_gstar(v)).expect("G* nonempty");
        let mut dist = vec![usize::MAX; n];
        let mut order = vec![r];
        dist[r as usize] = 0;
        let mut queue = VecDeque::from([r]);
        let mut core = 1;
        while let Some(x) = queue.pop_front() {
            if core >= threshold && dist[x as usize] > 0 {
                break;
            }
            for &(y, _) in self.gstar.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    order.push(y);
                    queue.push_back(y);
                    core += 1;
                }
            }
        }
        let mut s: BTreeSet<VertexId> = order.iter().copied().collect();
        let mut frontier: Vec<VertexId> = order;
        for _ in 0..2 {
            let mut next = Vec::new();
            for &x in &frontier {
                for &(y, _) in self.gstar.neighbors(x) {
                    if s.insert(y) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut region = s.clone();
        for ch in self.chains.iter().flatten() {
            if s.contains(&ch.path[0]) && s.contains(&ch.path[ch.path.len() - 1]) {
                region.extend(&ch.path);
            }
        }
        region.into_iter().collect()
    }

    /// Static solve on G[vs] (vs sorted); tree edges in G's ids.
    fn solve_on(&mut self, vs: &[VertexId]) -> Option<Vec<(VertexId, VertexId)>> {
        self.stats.static_calls += 1;
        let idx = |x: VertexId| vs.binary_search(&x).ok();
        let adj: Vec<Vec<usize>> = vs
            .iter()
            .map(|&v| {
                let mut a: Vec<usize> = self.g.neighbors(v).iter().filter_map(|&(y, _)| idx(y)).collect();
                a.sort_unstable();
                a
            })
            .collect();
        let tree = static_k_leaf(&adj, self.k)?;
        let mut out: Vec<(VertexId, VertexId)> = tree.into_iter().map(|(a, b)| key(vs[a], vs[b])).collect();
        out.sort_unstable();
        Some(out)
    }

    /// T_S plus T-edges outside the region, joined by T-edges leaving the region.
    fn merge(&mut self, region: &[VertexId], ts: Vec<(VertexId, VertexId)>) -> Vec<(VertexId, VertexId)> {
        let inside = |x: VertexId| region.binary_search(&x).is_ok();
        let mut log = Vec::new();
        let mut tree: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut boundary = Vec::new();
        let t: Vec<(VertexId, VertexId)> = self.t.iter().copied().collect();
        for (a, b) in t {
            match (inside(a), inside(b)) {
                (false, false) => {
                    tree.insert((a, b));
                }
                (x, y) => {
                    self.d_cut(a, b, &mut log);
                    if x != y {
                        boundary.push((a, b));
                    }
                }
            }
        }
        for (a, b) in ts {
            assert!(self.d_link(a, b, &mut log), "T_S is a tree");
            tree.insert((a, b));
        }
        for (a, b) in boundary {
            if self.d_link(a, b, &mut log) {
                tree.insert((a, b));
            }
        }
        self.undo(log);
        tree.into_iter().collect()
    }

    /// Recomputes G*, T and D expectations from G; panics on mismatch.
    pub fn check_invariants(&mut self) {
        let n = self.g.n();
        assert_eq!(self.chains(), scratch_chains(&self.g), "resolved graph");
        for v in 0..n as VertexId {
            if self.gstar.degree(v) > 0 || self.owner[v as usize].is_none() {
                assert!(!useless(&self.g, v) || self.anchor[v as usize] || self.g.degree(v) == 0, "useless vertex {v} in G*");
            }
        }
        for ch in self.chains.iter().flatten() {
            let p = &ch.path;
            for w in p[..p.len() - 1].windows(2) {
                assert!(self.t.contains(&key(w[0], w[1])), "inner chain edge missing from T");
            }
            let last = key(p[p.len() - 2], p[p.len() - 1]);
            let in_tstar = ch.conn.is_some_and(|id| self.tstar.is_tree_edge(id));
            assert_eq!(self.t.contains(&last), in_tstar, "last chain edge vs T*");
        }
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for &(a, b) in &self.t {
            assert!(self.g.has_edge(a, b));
            let (ra, rb) = (find(&mut uf, a as usize), find(&mut uf, b as usize));
            assert_ne!(ra, rb, "T has a cycle");
            uf[ra] = rb;
        }
        for (_, a, b) in self.g.edges() {
            assert_eq!(find(&mut uf, a as usize), find(&mut uf, b as usize), "T does not span");
        }
        for &(a, b) in &self.t {
            let x = self.d.after(self.nodes[a as usize], self.nodes[b as usize]).expect("D connected");
            assert_eq!(x, self.nodes[b as usize], "D misses a T edge");
        }
        for a in 0..n {
            for b in a + 1..n {
                let same = find(&mut uf, a) == find(&mut uf, b);
                assert_eq!(self.d.connected(self.nodes[a], self.nodes[b]), same, "D components");
            }
        }
    }
}

/// Spanning tree of a connected graph with at least k leaves (vertices of
/// tree degree ≤ 1), by branching on each leaf of a growing subtree: keep it
/// as a leaf, or make it internal with every outside neighbour as a child.
pub fn static_k_leaf(adj: &[Vec<usize>], k: usize) -> Option<Vec<(usize, usize)>> {
    let n = adj.len();
    match n {
        0 => return (k == 0).then(Vec::new),
        1 => return (k <= 1).then(Vec::new),
        _ => {}
    }
    if k <= 2 {
        return Some(extend(adj, &[0], &mut vec![false; n], Vec::new()));
    }
    for r in 0..n {
        let mut grow = Grow { adj, k, in_tree: vec![false; n], deg: vec![0; n], fixed: vec![false; n], edges: Vec::new(), size: 1 };
        grow.in_tree[r] = true;
        grow.attach_all(r);
        if grow.search() {
            let seeds: Vec<usize> = (0..n).filter(|&v| grow.in_tree[v]).collect();
            let edges = std::mem::take(&mut grow.edges);
            return Some(extend(adj, &seeds, &mut grow.in_tree, edges));
        }
    }
    None
}

/// Attaches every vertex outside the tree by BFS; never lowers the leaf count.
fn extend(adj: &[Vec<usize>], seeds: &[usize], in_tree: &mut [bool], mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
    for &s in seeds {
        in_tree[s] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !in_tree[y] {
                in_tree[y] = true;
                edges.push((x, y));
                queue.push_back(y);
            }
        }
    }
    edges
}

struct Grow<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    in_tree: Vec<bool>,
    deg: Vec<usize>,
    fixed: Vec<bool>,
    edges: Vec<(usize, usize)>,
    size: usize,
}

impl Grow<'_> {
    fn attach_all(&mut self, v: usize) -> usize {
        let mut added = 0;
        for &y in &self.adj[v] {
            if !self.in_tree[y] {
                self.in_tree[y] = true;
                self.deg[y] += 1;
                self.deg[v] += 1;
                self.edges.push((v, y));
                added += 1;
            }
        }
        self.size += added;
        added
    }

    fn detach(&mut self, v: usize, added: usize) {
        for _ in 0..added {
            let (x, y) = self.edges.pop().expect("attached edge");
            debug_assert_eq!(x, v);
            self.in_tree[y] = false;
            self.deg[y] -= 1;
            self.deg[v] -= 1;
        }
        self.size -= added;
    }

    fn search(&mut self) -> bool {
        let n = self.adj.len();
        let leaves = (0..n).filter(|&v| self.in_tree[v] && self.deg[v] <= 1).count();
        if leaves >= self.k {
            return true;
        }
        // Each later vertex adds at most one leaf.
        if leaves + (n - self.size) < self.k {
            return false;
        }
        let Some(v) = (0..n).find(|&v| self.in_tree[v] && self.deg[v] == 1 && !self.fixed[v]) else {
            return false;
        };
        let added = self.attach_all(v);
        if added > 0 && self.search() {
            return true;
        }
        self.detach(v, added);
        self.fixed[v] = true;
        let ok = self.search();
        self.fixed[v] = false;
        ok
    }
}
