//! Edge clique cover under the promise that g cliques always suffice.
//!
//! G* drops isolated vertices and keeps one vertex per class of vertices
//! with equal closed neighbourhoods. Each class is a clique, and two classes
//! are either completely joined or not joined at all, so a cover of G* in
//! which every class of size ≥ 2 lies in some clique expands to a cover of G.

use crate::graphcore::{DynGraph, GraphError, VertexId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Largest supported promise bound; G* then has at most 2^g vertices.
pub const MAX_G: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EccError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("promise bound {0} unsupported")]
    BadBound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EccAnswer {
    /// Cliques of G, each a sorted vertex list.
    Cover(Vec<Vec<VertexId>>),
    No,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct EccState {
    g: usize,
    graph: DynGraph,
    /// L(u) for every G* vertex u, keyed by its current name.
    classes: BTreeMap<VertexId, BTreeSet<VertexId>>,
    /// p(v): name of the class holding v.
    owner: Vec<Option<VertexId>>,
    /// Last computed cover of G*, as lists of G* names.
    cover: Vec<Vec<VertexId>>,
    mutations: u64,
}

impl EccState {
    pub fn new(n: usize, g: usize) -> Result<Self, EccError> {
        if g == 0 || g > MAX_G {
            return Err(EccError::BadBound(g));
        }
        Ok(EccState {
            g,
            graph: DynGraph::simple(n),
            classes: BTreeMap::new(),
            owner: vec![None; n],
            cover: Vec::new(),
            mutations: 0,
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    /// Classes of G* keyed by name.
    pub fn classes(&self) -> &BTreeMap<VertexId, BTreeSet<VertexId>> {
        &self.classes
    }

    /// True while G* is larger than the promise allows.
    pub fn degraded(&self) -> bool {
        self.classes.len() > 1 << self.g
    }

    fn same_closed_neighbourhood(&self, u: VertexId, w: VertexId) -> bool {
        if !self.graph.has_edge(u, w) || self.graph.degree(u) != self.graph.degree(w) {
            return false;
        }
        self.graph.neighbors(u).iter().all(|&(x, _)| x == w || self.graph.has_edge(w, x))
    }

    fn detach(&mut self, u: VertexId) {
        let Some(name) = self.owner[u as usize].take() else {
            return;
        };
        let members = self.classes.get_mut(&name).expect("class of owner");
        members.remove(&u);
        self.mutations += 1;
        if members.is_empty() {
            self.classes.remove(&name);
        } else if name == u {
            let members = self.classes.remove(&name).expect("class of owner");
            let renamed = *members.iter().next().expect("nonempty class");
            for &x in &members {
                self.owner[x as usize] = Some(renamed);
            }
            self.mutations += members.len() as u64;
            self.classes.insert(renamed, members);
        }
    }

    fn attach(&mut self, u: VertexId) {
        if self.graph.degree(u) == 0 {
            return;
        }
        let twin = self.classes.keys().copied().find(|&w| self.same_closed_neighbourhood(u, w));
        let name = twin.unwrap_or(u);
        self.classes.entry(name).or_default().insert(u);
        self.owner[u as usize] = Some(name);
        self.mutations += 1;
    }

    fn update(&mut self, u: VertexId, v: VertexId) {
        self.detach(u);
        self.detach(v);
        self.attach(u);
        self.attach(v);
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), EccError> {
        self.graph.insert_edge(u, v)?;
        self.update(u, v);
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), EccError> {
        let h = self.graph.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        self.graph.delete_edge(h)?;
        self.update(u, v);
        Ok(())
    }

    /// Recomputes G* from the graph alone.
    pub fn rebuild(&mut self) {
        self.classes = scratch_classes(&self.graph);
        self.owner.iter_mut().for_each(|o| *o = None);
        for (&name, members) in &self.classes {
            for &x in members {
                self.owner[x as usize] = Some(name);
            }
        }
        self.mutations += self.graph.n() as u64;
    }

    /// A minimum edge clique cover of G if one of size ≤ k exists.
    pub fn query(&mut self, k: usize) -> EccAnswer {
        self.cover.clear();
        if self.degraded() {
            return EccAnswer::Unknown;
        }
        let names: Vec<VertexId> = self.classes.keys().copied().collect();
        let idx = |x: VertexId| names.binary_search(&x).expect("G* name");
        let n = names.len();
        let mut adj = vec![0u32; n];
        let mut items: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, &a) in names.iter().enumerate() {
            for &(x, _) in self.graph.neighbors(a) {
                let o = self.owner[x as usize].expect("neighbour of a G* vertex is in G*");
                if o != a {
                    let j = idx(o);
                    adj[i] |= 1 << j;
                    items.insert((i.min(j), i.max(j)));
                }
            }
            if self.classes[&a].len() >= 2 {
                items.insert((i, i));
            }
        }
        let items: Vec<(usize, usize)> = items.into_iter().collect();
        let Some(cliques) = (0..=k).find_map(|c| cover_search(&adj, &items, c)) else {
            return EccAnswer::No;
        };
        self.cover = cliques
            .into_iter()
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| names[i]).collect())
            .collect();
        let mut out: Vec<Vec<VertexId>> = (0..self.cover.len()).map(|c| self.members_of(c)).collect();
        out.sort_unstable();
        EccAnswer::Cover(out)
    }

    /// Vertices of clique `name` from the last query.
    pub fn members_of(&self, name: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.cover[name].iter().flat_map(|u| self.classes[u].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// Names of the cliques of the last query that contain v.
    pub fn cliques_of(&self, v: VertexId) -> Vec<usize> {
        let Some(o) = self.owner[v as usize] else {
            return Vec::new();
        };
        (0..self.cover.len()).filter(|&c| self.cover[c].contains(&o)).collect()
    }

    /// Checks the maintained classes against a from-scratch reduction; panics on mismatch.
    pub fn check_invariants(&self) {
        let want: BTreeSet<BTreeSet<VertexId>> = scratch_classes(&self.graph).into_values().collect();
        let have: BTreeSet<BTreeSet<VertexId>> = self.classes.values().cloned().collect();
        assert_eq!(have, want);
        for (&name, members) in &self.classes {
            assert!(members.contains(&name));
            for &x in members {
                assert_eq!(self.owner[x as usize], Some(name));
            }
        }
        let owned = self.owner.iter().filter(|o| o.is_some()).count();
        assert_eq!(owned, self.classes.values().map(|m| m.len()).sum::<usize>());
    }
}

/// Classes of non-isolated vertices by closed neighbourhood, named by their smallest member.
pub fn scratch_classes(graph: &DynGraph) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut by_nbhd: BTreeMap<Vec<VertexId>, BTreeSet<VertexId>> = BTreeMap::new();
    for v in 0..graph.n() as VertexId {
        if graph.degree(v) == 0 {
            continue;
        }
        let mut closed: Vec<VertexId> = graph.neighbors(v).iter().map(|&(x, _)| x).collect();
        closed.push(v);
        closed.sort_unstable();
        by_nbhd.entry(closed).or_default().insert(v);
    }
    by_nbhd.into_values().map(|c| (*c.iter().next().unwrap(), c)).collect()
}

/// Covers every item (an edge (i, j) or a vertex (i, i)) with at most c cliques, as bitmasks.
fn cover_search(adj: &[u32], items: &[(usize, usize)], c: usize) -> Option<Vec<u32>> {
    fn rec(adj: &[u32], items: &[(usize, usize)], at: usize, c: usize, cliques: &mut Vec<u32>) -> bool {
        let Some(pos) = (at..items.len()).find(|&t| {
            let (i, j) = items[t];
            !cliques.iter().any(|&q| q >> i & 1 == 1 && q >> j & 1 == 1)
        }) else {
            return true;
        };
        let (i, j) = items[pos];
        let need = 1u32 << i | 1 << j;
        for q in 0..cliques.len() {
            let old = cliques[q];
            let add = need & !old;
            // Every new vertex must be adjacent to the clique and to each other.
            let ok = (0..adj.len()).filter(|&x| add >> x & 1 == 1).all(|x| (old | add) & !(1 << x) & !adj[x] == 0);
            if ok {
                cliques[q] = old | add;
                if rec(adj, items, pos + 1, c, cliques) {
                    return true;
                }
                cliques[q] = old;
            }
        }
        if cliques.len() < c {
            cliques.push(need);
            if rec(adj, items, pos + 1, c, cliques) {
                return true;
            }
            cliques.pop();
        }
        false
    }
    let mut cliques = Vec::new();
    rec(adj, items, 0, c, &mut cliques).then_some(cliques)
}
