//! Connected vertex cover kernel: S = vertices of degree > k, the vertices
//! with an edge outside S, and one representative per neighbourhood class
//! of the vertices whose neighbours all lie in S.

use crate::graphcore::{DynGraph, GraphError, VertexId};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    None,
    L,
    Class(Vec<VertexId>),
}

#[derive(Clone, Debug)]
pub struct CvcKernel {
    k: usize,
    g: DynGraph,
    in_s: Vec<bool>,
    s: BTreeSet<VertexId>,
    /// Degree inside G − S, for vertices outside S.
    dgs: Vec<usize>,
    edges_outside: usize,
    l: BTreeSet<VertexId>,
    /// L_Y keyed by the sorted neighbour list Y.
    classes: HashMap<Vec<VertexId>, BTreeSet<VertexId>>,
    slot: Vec<Slot>,
    mutations: u64,
}

impl CvcKernel {
    pub fn new(n: usize, k: usize) -> Self {
        CvcKernel {
            k,
            g: DynGraph::simple(n),
            in_s: vec![false; n],
            s: BTreeSet::new(),
            dgs: vec![0; n],
            edges_outside: 0,
            l: BTreeSet::new(),
            classes: HashMap::new(),
            slot: vec![Slot::None; n],
            mutations: 0,
        }
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    pub fn high_vertices(&self) -> Vec<VertexId> {
        self.s.iter().copied().collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    fn sorted_neighbors(&self, q: VertexId) -> Vec<VertexId> {
        let mut y: Vec<VertexId> = self.g.neighbors(q).iter().map(|&(x, _)| x).collect();
        y.sort_unstable();
        y
    }

    /// Moves q to the list it belongs in now.
    fn reclassify(&mut self, q: VertexId) {
        let qi = q as usize;
        let want = if self.in_s[qi] {
            Slot::None
        } else if self.dgs[qi] > 0 {
            Slot::L
        } else if self.g.degree(q) > 0 {
            Slot::Class(self.sorted_neighbors(q))
        } else {
            Slot::None
        };
        if want == self.slot[qi] {
            return;
        }
        match std::mem::replace(&mut self.slot[qi], Slot::None) {
            Slot::None => {}
            Slot::L => {
                self.l.remove(&q);
                self.mutations += 1;
            }
            Slot::Class(y) => {
                let members = self.classes.get_mut(&y).expect("class list");
                members.remove(&q);
                if members.is_empty() {
                    self.classes.remove(&y);
                }
                self.mutations += 1;
            }
        }
        match &want {
            Slot::None => {}
            Slot::L => {
                self.l.insert(q);
                self.mutations += 1;
            }
            Slot::Class(y) => {
                self.classes.entry(y.clone()).or_default().insert(q);
                self.mutations += 1;
            }
        }
        self.slot[qi] = want;
    }

    fn enter_s(&mut self, x: VertexId) -> Vec<VertexId> {
        self.in_s[x as usize] = true;
        self.s.insert(x);
        self.edges_outside -= self.dgs[x as usize];
        self.dgs[x as usize] = 0;
        let nb: Vec<VertexId> = self.g.neighbors(x).iter().map(|&(a, _)| a).collect();
        for &a in &nb {
            if !self.in_s[a as usize] {
                self.dgs[a as usize] -= 1;
                self.mutations += 1;
            }
        }
        nb
    }

    fn leave_s(&mut self, x: VertexId) -> Vec<VertexId> {
        self.in_s[x as usize] = false;
        self.s.remove(&x);
        let nb: Vec<VertexId> = self.g.neighbors(x).iter().map(|&(a, _)| a).collect();
        let mut d = 0;
        for &a in &nb {
            if !self.in_s[a as usize] {
                self.dgs[a as usize] += 1;
                d += 1;
                self.mutations += 1;
            }
        }
        self.dgs[x as usize] = d;
        self.edges_outside += d;
        nb
    }

    pub fn insert_edge(&mut self, x: VertexId, y: VertexId) -> Result<(), GraphError> {
        self.g.insert_edge(x, y)?;
        if !self.in_s[x as usize] && !self.in_s[y as usize] {
            self.dgs[x as usize] += 1;
            self.dgs[y as usize] += 1;
            self.edges_outside += 1;
        }
        let mut touched = vec![x, y];
        for z in [x, y] {
            if !self.in_s[z as usize] && self.g.degree(z) > self.k {
                touched.extend(self.enter_s(z));
            }
        }
        for q in touched {
            self.reclassify(q);
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, x: VertexId, y: VertexId) -> Result<(), GraphError> {
        let h = self.g.find_edge(x, y).ok_or(GraphError::NoSuchEdge(x, y))?;
        self.g.delete_edge(h)?;
        if !self.in_s[x as usize] && !self.in_s[y as usize] {
            self.dgs[x as usize] -= 1;
            self.dgs[y as usize] -= 1;
            self.edges_outside -= 1;
        }
        let mut touched = vec![x, y];
        for z in [x, y] {
            if self.in_s[z as usize] && self.g.degree(z) <= self.k {
                touched.extend(self.leave_s(z));
            }
        }
        for q in touched {
            self.reclassify(q);
        }
        Ok(())
    }

    /// Vertex set of the query-time kernel, or None when a size bound already rules out a solution.
    pub fn kernel_vertices(&self) -> Option<Vec<VertexId>> {
        let k = self.k;
        if self.s.len() > k || self.edges_outside > k * k || self.l.len() > 2 * k * k {
            return None;
        }
        let mut keep: BTreeSet<VertexId> = self.s.iter().copied().collect();
        keep.extend(self.l.iter().copied());
        for &s in &self.s {
            keep.extend(self.g.neighbors(s).iter().take(k + 1).map(|&(a, _)| a));
        }
        for members in self.classes.values() {
            keep.insert(*members.iter().next().expect("nonempty class"));
        }
        Some(keep.into_iter().collect())
    }

    /// A minimum connected vertex cover of G if one of size ≤ k exists.
    pub fn query(&self) -> Option<Vec<VertexId>> {
        let verts = self.kernel_vertices()?;
        let index: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &(w, _) in self.g.neighbors(v) {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let forced: Vec<usize> = self.s.iter().map(|s| index[s]).collect();
        let free: Vec<usize> = (0..verts.len()).filter(|i| !self.in_s[verts[*i] as usize]).collect();
        let found = min_connected_cover(verts.len(), &edges, &forced, &free, self.k)?;
        let mut out: Vec<VertexId> = found.into_iter().map(|i| verts[i]).collect();
        out.sort_unstable();
        Some(out)
    }
}

/// Smallest connected cover containing `forced`, extended from `free`, of size ≤ k.
fn min_connected_cover(
    n: usize,
    edges: &[(usize, usize)],
    forced: &[usize],
    free: &[usize],
    k: usize,
) -> Option<Vec<usize>> {
    if forced.len() > k {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut inside = vec![false; n];
    for &f in forced {
        inside[f] = true;
    }
    let check = |inside: &[bool]| -> bool {
        if !edges.iter().all(|&(a, b)| inside[a] || inside[b]) {
            return false;
        }
        let Some(start) = (0..n).find(|&i| inside[i]) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == inside.iter().filter(|&&b| b).count()
    };
    fn pick(
        free: &[usize],
        from: usize,
        left: usize,
        inside: &mut Vec<bool>,
        check: &dyn Fn(&[bool]) -> bool,
    ) -> bool {
        if left == 0 {
            return check(inside);
        }
        for i in from..free.len() {
            inside[free[i]] = true;
            if pick(free, i + 1, left - 1, inside, check) {
                return true;
            }
            inside[free[i]] = false;
        }
        false
    }
    for extra in 0..=(k - forced.len()).min(free.len()) {
        if pick(free, 0, extra, &mut inside, &check) {
            return Some((0..n).filter(|&i| inside[i]).collect());
        }
    }
    None
}
