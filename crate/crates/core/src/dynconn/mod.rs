//! Fully dynamic connectivity (level-based replacement search) with a
//! maintained spanning forest and per-component aggregates.

mod ett;

use crate::graphcore::VertexId;
use ett::{EttArena, Flag};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

/// Smallest vertex of a component.
pub type ComponentId = VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnError {
    #[error("no edge ({0}, {1})")]
    NoSuchEdge(VertexId, VertexId),
    #[error("unknown edge id {0:?}")]
    UnknownEdge(EdgeId),
    #[error("{0} does not name a component")]
    UnknownComponent(ComponentId),
}

/// A spanning-forest edge that appeared or disappeared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForestChange {
    pub edge: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub added: bool,
}

#[derive(Clone, Debug)]
struct EdgeRec {
    u: VertexId,
    v: VertexId,
    level: usize,
    tree: bool,
    /// Arc pair per level 0..=level for tree edges.
    arcs: Vec<(u32, u32)>,
    pos_u: usize,
    pos_v: usize,
}

#[derive(Clone, Debug)]
pub struct ConnectivityForest {
    n: usize,
    levels: usize,
    ett: EttArena,
    edges: Vec<Option<EdgeRec>>,
    free_edges: Vec<u32>,
    /// nontree[level][v]: non-tree edges of that level at v.
    nontree: Vec<Vec<Vec<u32>>>,
    by_pair: HashMap<(VertexId, VertexId), Vec<u32>>,
    m: usize,
    changes: Vec<ForestChange>,
    scans: u64,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl ConnectivityForest {
    pub fn new(n: usize) -> Self {
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        ConnectivityForest {
            n,
            levels,
            ett: EttArena::new_vertices(levels, n),
            edges: Vec::new(),
            free_edges: Vec::new(),
            nontree: vec![vec![Vec::new(); n]; levels],
            by_pair: HashMap::new(),
            m: 0,
            changes: Vec::new(),
            scans: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Non-tree edges examined by replacement searches so far.
    pub fn replacement_scans(&self) -> u64 {
        self.scans
    }

    fn vnode(&self, level: usize, v: VertexId) -> u32 {
        (level * self.n) as u32 + v
    }

    fn rec(&self, e: u32) -> &EdgeRec {
        self.edges[e as usize].as_ref().expect("live edge")
    }

    fn rec_mut(&mut self, e: u32) -> &mut EdgeRec {
        self.edges[e as usize].as_mut().expect("live edge")
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!((u as usize) < self.n && (v as usize) < self.n, "vertex out of range");
        let rec = EdgeRec { u, v, level: 0, tree: false, arcs: Vec::new(), pos_u: 0, pos_v: 0 };
        let e = if let Some(e) = self.free_edges.pop() {
            self.edges[e as usize] = Some(rec);
            e
        } else {
            self.edges.push(Some(rec));
            self.edges.len() as u32 - 1
        };
        self.by_pair.entry(key(u, v)).or_default().push(e);
        self.m += 1;
        let u0 = self.vnode(0, u);
        self.ett.add_edge_count(u0, 1);
        if u != v {
            let v0 = self.vnode(0, v);
            if self.ett.same_tree(u0, v0) {
                self.add_nontree(e, 0);
            } else {
                self.make_tree(e, 0);
                self.changes.push(ForestChange { edge: EdgeId(e), u, v, added: true });
            }
        }
        EdgeId(e)
    }

    fn add_nontree(&mut self, e: u32, level: usize) {
        let (u, v) = (self.rec(e).u, self.rec(e).v);
        let pu = self.nontree[level][u as usize].len();
        self.nontree[level][u as usize].push(e);
        let pv = self.nontree[level][v as usize].len();
        self.nontree[level][v as usize].push(e);
        let r = self.rec_mut(e);
        r.level = level;
        r.tree = false;
        r.pos_u = pu;
        r.pos_v = pv;
        if pu == 0 {
            let x = self.vnode(level, u);
            self.ett.set_flag(x, Flag::NonTree, true);
        }
        if pv == 0 {
            let x = self.vnode(level, v);
            self.ett.set_flag(x, Flag::NonTree, true);
        }
    }

    fn remove_nontree_slot(&mut self, level: usize, x: VertexId, pos: usize) {
        let list = &mut self.nontree[level][x as usize];
        list.swap_remove(pos);
        if pos < list.len() {
            let moved = list[pos];
            let old = list.len();
            let r = self.edges[moved as usize].as_mut().expect("live edge");
            if r.u == x && r.pos_u == old {
                r.pos_u = pos;
            } else {
                r.pos_v = pos;
            }
        }
        if self.nontree[level][x as usize].is_empty() {
            let node = self.vnode(level, x);
            self.ett.set_flag(node, Flag::NonTree, false);
        }
    }

    fn remove_nontree(&mut self, e: u32) {
        let r = self.rec(e);
        let (u, v, level, pu, pv) = (r.u, r.v, r.level, r.pos_u, r.pos_v);
        self.remove_nontree_slot(level, u, pu);
        self.remove_nontree_slot(level, v, pv);
    }

    /// Makes e a tree edge of the given level, linking it on levels 0..=level.
    fn make_tree(&mut self, e: u32, level: usize) {
        let (u, v) = (self.rec(e).u, self.rec(e).v);
        let mut arcs = Vec::with_capacity(level + 1);
        for i in 0..=level {
            let (a, b) = (self.vnode(i, u), self.vnode(i, v));
            arcs.push(self.ett.link(a, b, e, i == level));
        }
        let r = self.rec_mut(e);
        r.tree = true;
        r.level = level;
        r.arcs = arcs;
    }

    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), ConnError> {
        let list = self.by_pair.get(&key(u, v)).ok_or(ConnError::NoSuchEdge(u, v))?;
        let e = list
            .iter()
            .rev()
            .copied()
            .find(|&e| !self.rec(e).tree)
            .unwrap_or(*list.last().expect("nonempty pair list"));
        self.delete_edge(EdgeId(e)).map(|_| ())
    }

    pub fn delete_edge(&mut self, id: EdgeId) -> Result<(VertexId, VertexId), ConnError> {
        let e = id.0;
        if self.edges.get(e as usize).is_none_or(|r| r.is_none()) {
            return Err(ConnError::UnknownEdge(id));
        }
        let (u, v, tree, level) = {
            let r = self.rec(e);
            (r.u, r.v, r.tree, r.level)
        };
        let k = key(u, v);
        let list = self.by_pair.get_mut(&k).expect("pair index");
        let i = list.iter().position(|&x| x == e).expect("pair entry");
        list.swap_remove(i);
        if list.is_empty() {
            self.by_pair.remove(&k);
        }
        self.m -= 1;
        let u0 = self.vnode(0, u);
        self.ett.add_edge_count(u0, -1);
        if u == v {
            // loops carry no forest state
        } else if !tree {
            self.remove_nontree(e);
        } else {
            let arcs = std::mem::take(&mut self.rec_mut(e).arcs);
            for &(a, b) in &arcs {
                self.ett.cut(a, b);
            }
            self.changes.push(ForestChange { edge: id, u, v, added: false });
            self.replace(u, v, level);
        }
        self.edges[e as usize] = None;
        self.free_edges.push(e);
        Ok((u, v))
    }

    fn replace(&mut self, u: VertexId, v: VertexId, top: usize) {
        for i in (0..=top).rev() {
            let (nu, nv) = (self.vnode(i, u), self.vnode(i, v));
            let su = self.ett.vertex_count(nu);
            let sv = self.ett.vertex_count(nv);
            let (small, big) = if su <= sv { (nu, nv) } else { (nv, nu) };
            let small_size = su.min(sv);
            // Push the small side's level-i tree edges one level up.
            while let Some(arc) = self.ett.find_flag(small, Flag::Tree) {
                debug_assert!(small_size << (i + 1) <= self.n && i + 1 < self.levels, "level size invariant");
                let f = self.ett.edge_of(arc);
                self.ett.set_flag(arc, Flag::Tree, false);
                let (fu, fv) = (self.rec(f).u, self.rec(f).v);
                let (a, b) = (self.vnode(i + 1, fu), self.vnode(i + 1, fv));
                let pair = self.ett.link(a, b, f, true);
                let r = self.rec_mut(f);
                r.level = i + 1;
                r.arcs.push(pair);
            }
            while let Some(xn) = self.ett.find_flag(small, Flag::NonTree) {
                let x = self.ett_vertex(xn);
                while let Some(&f) = self.nontree[i][x as usize].last() {
                    self.scans += 1;
                    let r = self.rec(f);
                    let other = if r.u == x { r.v } else { r.u };
                    let on = self.vnode(i, other);
                    if self.ett.same_tree(on, big) {
                        self.remove_nontree(f);
                        self.make_tree(f, i);
                        let r = self.rec(f);
                        self.changes.push(ForestChange { edge: EdgeId(f), u: r.u, v: r.v, added: true });
                        return;
                    }
                    debug_assert!(small_size << (i + 1) <= self.n && i + 1 < self.levels, "level size invariant");
                    self.remove_nontree(f);
                    self.add_nontree(f, i + 1);
                }
            }
        }
    }

    fn ett_vertex(&self, node: u32) -> VertexId {
        node % self.n as u32
    }

    pub fn connected(&mut self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = (self.vnode(0, u), self.vnode(0, v));
        self.ett.same_tree(a, b)
    }

    pub fn component_of(&mut self, u: VertexId) -> ComponentId {
        let x = self.vnode(0, u);
        self.ett.min_vertex(x)
    }

    pub fn component_stats(&mut self, id: ComponentId) -> Result<(usize, usize), ConnError> {
        if id as usize >= self.n || self.component_of(id) != id {
            return Err(ConnError::UnknownComponent(id));
        }
        Ok((self.component_size(id), self.component_edges(id)))
    }

    pub fn component_size(&mut self, u: VertexId) -> usize {
        let x = self.vnode(0, u);
        self.ett.vertex_count(x)
    }

    pub fn component_edges(&mut self, u: VertexId) -> usize {
        let x = self.vnode(0, u);
        self.ett.edge_sum(x) as usize
    }

    pub fn component_vertices(&mut self, u: VertexId) -> Vec<VertexId> {
        let x = self.vnode(0, u);
        let mut out = self.ett.vertices(x);
        out.sort_unstable();
        out
    }

    pub fn set_vertex_weight(&mut self, v: VertexId, w: i64) {
        let x = self.vnode(0, v);
        self.ett.set_weight(x, w);
    }

    pub fn vertex_weight(&self, v: VertexId) -> i64 {
        self.ett.weight(self.vnode(0, v))
    }

    pub fn component_weight(&mut self, u: VertexId) -> i64 {
        let x = self.vnode(0, u);
        self.ett.weight_sum(x)
    }

    pub fn is_tree_edge(&self, id: EdgeId) -> bool {
        self.edges.get(id.0 as usize).and_then(|r| r.as_ref()).is_some_and(|r| r.tree)
    }

    pub fn endpoints(&self, id: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(id.0 as usize)?.as_ref().map(|r| (r.u, r.v))
    }

    /// Forest edges gained or lost since the last call.
    pub fn take_forest_changes(&mut self) -> Vec<ForestChange> {
        std::mem::take(&mut self.changes)
    }

    /// Current spanning-forest edges.
    pub fn forest_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, r)| r.as_ref().is_some_and(|r| r.tree))
            .map(|(i, _)| EdgeId(i as u32))
            .collect()
    }
}
