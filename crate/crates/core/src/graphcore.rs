//! Mutable undirected multigraph over a fixed vertex universe.

use rustc_hash::FxHashMap as HashMap;
use smallvec::SmallVec;
use thiserror::Error;

pub type VertexId = u32;

/// Names one edge copy. Handles are never reused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeHandle(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop at {0} not allowed")]
    LoopForbidden(VertexId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("unknown edge handle {0:?}")]
    UnknownHandle(EdgeHandle),
    #[error("no edge ({0}, {1})")]
    NoSuchEdge(VertexId, VertexId),
}

#[derive(Clone, Debug)]
struct EdgeRec {
    u: VertexId,
    v: VertexId,
    pos_u: usize,
    pos_v: usize,
}

#[derive(Clone, Debug)]
pub struct DynGraph {
    n: usize,
    adj: Vec<Vec<(VertexId, EdgeHandle)>>,
    degree: Vec<usize>,
    edges: Vec<Option<EdgeRec>>,
    by_pair: HashMap<(VertexId, VertexId), SmallVec<[EdgeHandle; 1]>>,
    m: usize,
    allows_multi: bool,
    allows_loops: bool,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl DynGraph {
    pub fn new(n: usize, allows_multi: bool, allows_loops: bool) -> Self {
        DynGraph {
            n,
            adj: vec![Vec::new(); n],
            degree: vec![0; n],
            edges: Vec::new(),
            by_pair: HashMap::default(),
            m: 0,
            allows_multi,
            allows_loops,
        }
    }

    /// Simple graph: no parallel edges, no loops.
    pub fn simple(n: usize) -> Self {
        Self::new(n, false, false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v as usize]
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeHandle, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v && !self.allows_loops {
            return Err(GraphError::LoopForbidden(u));
        }
        let k = key(u, v);
        if !self.allows_multi && self.by_pair.get(&k).is_some_and(|l| !l.is_empty()) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let h = EdgeHandle(self.edges.len() as u32);
        let pos_u = self.adj[u as usize].len();
        self.adj[u as usize].push((v, h));
        let pos_v = self.adj[v as usize].len();
        self.adj[v as usize].push((u, h));
        self.edges.push(Some(EdgeRec { u, v, pos_u, pos_v }));
        self.by_pair.entry(k).or_default().push(h);
        self.degree[u as usize] += 1;
        self.degree[v as usize] += 1;
        self.m += 1;
        Ok(h)
    }

    fn remove_slot(&mut self, x: VertexId, pos: usize) {
        let list = &mut self.adj[x as usize];
        list.swap_remove(pos);
        if pos < list.len() {
            let (_, moved) = list[pos];
            let rec = self.edges[moved.0 as usize].as_mut().expect("live edge");
            // A loop has two slots in the same list; fix whichever one moved.
            if rec.u == x && rec.pos_u == list.len() {
                rec.pos_u = pos;
            } else {
                rec.pos_v = pos;
            }
        }
    }

    pub fn delete_edge(&mut self, h: EdgeHandle) -> Result<(VertexId, VertexId), GraphError> {
        let rec = self
            .edges
            .get_mut(h.0 as usize)
            .and_then(|r| r.take())
            .ok_or(GraphError::UnknownHandle(h))?;
        // Remove the higher position first so the lower one stays valid for loops.
        if rec.u == rec.v {
            let (a, b) = if rec.pos_u > rec.pos_v { (rec.pos_u, rec.pos_v) } else { (rec.pos_v, rec.pos_u) };
            self.remove_slot(rec.u, a);
            self.remove_slot(rec.u, b);
        } else {
            self.remove_slot(rec.u, rec.pos_u);
            self.remove_slot(rec.v, rec.pos_v);
        }
        let k = key(rec.u, rec.v);
        let list = self.by_pair.get_mut(&k).expect("pair index");
        let i = list.iter().position(|&x| x == h).expect("pair index entry");
        list.remove(i);
        if list.is_empty() {
            self.by_pair.remove(&k);
        }
        self.degree[rec.u as usize] -= 1;
        self.degree[rec.v as usize] -= 1;
        self.m -= 1;
        Ok((rec.u, rec.v))
    }

    pub fn endpoints(&self, h: EdgeHandle) -> Option<(VertexId, VertexId)> {
        self.edges.get(h.0 as usize)?.as_ref().map(|r| (r.u, r.v))
    }

    /// Most recently inserted copy of (u, v), if any.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeHandle> {
        self.by_pair.get(&key(u, v)).and_then(|l| l.last().copied())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.find_edge(u, v).is_some()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.by_pair.get(&key(u, v)).map_or(0, |l| l.len())
    }

    /// Adjacency entries of `v`; a loop appears twice.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeHandle)] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeHandle, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (EdgeHandle(i as u32), r.u, r.v)))
    }

    /// Sorted list of (min, max) endpoint pairs, one per edge copy.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self.edges().map(|(_, u, v)| key(u, v)).collect();
        out.sort_unstable();
        out
    }
}

/// One instance mutation, as recorded in traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpdateEvent {
    EdgeInsert(VertexId, VertexId),
    EdgeDelete(VertexId, VertexId),
    SetInsert(Vec<u32>),
    SetDelete(Vec<u32>),
    PointInsert(crate::promisekernels::Point),
    PointDelete(crate::promisekernels::Point),
    LineInsert(i64, i64, i64),
    LineDelete(i64, i64, i64),
    TerminalActivate(VertexId),
    TerminalDeactivate(VertexId),
}
