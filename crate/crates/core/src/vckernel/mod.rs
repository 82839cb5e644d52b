//! Dynamic vertex cover kernels, plus connected vertex cover and edge
//! dominating set built on the same bookkeeping.

mod cvc;
mod eds;
pub mod solve;

pub use cvc::CvcKernel;
pub use eds::EdsKernel;

use crate::graphcore::{DynGraph, EdgeHandle, GraphError, VertexId};

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// High means degree ≥ k+1; O(k) work per update.
    WorstCase,
    /// Low ≤ k, high ≥ 2k+1, medium in between; O(1) amortized.
    Amortized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeClass {
    Low,
    Medium,
    High,
}

#[derive(Clone, Copy, Debug, Default)]
struct Side {
    selected: bool,
    in_r: bool,
    prev: u32,
    next: u32,
}

#[derive(Clone, Debug)]
struct EdgeState {
    ends: [VertexId; 2],
    side: [Side; 2],
    live: bool,
    in_kernel: bool,
    kpos: u32,
}

#[derive(Clone, Debug)]
pub struct VcKernel {
    k: usize,
    variant: Variant,
    g: DynGraph,
    edges: Vec<EdgeState>,
    /// R_v exists; for the worst-case variant this is exactly "v is high".
    has_r: Vec<bool>,
    r_head: Vec<u32>,
    r_tail: Vec<u32>,
    r_len: Vec<usize>,
    selected: Vec<usize>,
    kernel: Vec<u32>,
    kdeg: Vec<usize>,
    kernel_vertices: usize,
    mutations: u64,
}

impl VcKernel {
    pub fn new(n: usize, k: usize, variant: Variant) -> Self {
        VcKernel {
            k,
            variant,
            g: DynGraph::simple(n),
            edges: Vec::new(),
            has_r: vec![false; n],
            r_head: vec![NIL; n],
            r_tail: vec![NIL; n],
            r_len: vec![0; n],
            selected: vec![0; n],
            kernel: Vec::new(),
            kdeg: vec![0; n],
            kernel_vertices: 0,
            mutations: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    /// Pointer-level changes made to E′, S(v) and R_v so far.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    pub fn kernel_size(&self) -> usize {
        self.kernel.len()
    }

    pub fn kernel_vertex_count(&self) -> usize {
        self.kernel_vertices
    }

    pub fn kernel_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .kernel
            .iter()
            .map(|&h| {
                let [u, v] = self.edges[h as usize].ends;
                (u.min(v), u.max(v))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn class(&self, v: VertexId) -> DegreeClass {
        let d = self.g.degree(v);
        match self.variant {
            Variant::WorstCase if d > self.k => DegreeClass::High,
            Variant::WorstCase => DegreeClass::Low,
            Variant::Amortized if d <= self.k => DegreeClass::Low,
            Variant::Amortized if d > 2 * self.k => DegreeClass::High,
            Variant::Amortized => DegreeClass::Medium,
        }
    }

    /// Whether v keeps a list R_v (behaves as high degree).
    pub fn looks_high(&self, v: VertexId) -> bool {
        self.has_r[v as usize]
    }

    pub fn selected_count(&self, v: VertexId) -> usize {
        self.selected[v as usize]
    }

    pub fn kernel_edge_bound(&self) -> usize {
        match self.variant {
            Variant::WorstCase => self.k * (self.k + 1),
            Variant::Amortized => 2 * self.k * (self.k + 1),
        }
    }

    pub fn kernel_vertex_bound(&self) -> usize {
        match self.variant {
            Variant::WorstCase => self.k * (self.k + 2),
            Variant::Amortized => 2 * self.k * (self.k + 2),
        }
    }

    fn side_of(&self, h: u32, x: VertexId) -> usize {
        (self.edges[h as usize].ends[0] != x) as usize
    }

    fn set_selected(&mut self, h: u32, s: usize, on: bool) {
        let e = &mut self.edges[h as usize];
        if e.side[s].selected != on {
            e.side[s].selected = on;
            let x = e.ends[s] as usize;
            if on {
                self.selected[x] += 1;
            } else {
                self.selected[x] -= 1;
            }
            self.mutations += 1;
        }
    }

    fn r_push(&mut self, h: u32, s: usize) {
        let x = self.edges[h as usize].ends[s] as usize;
        let tail = self.r_tail[x];
        self.edges[h as usize].side[s] = Side { selected: false, in_r: true, prev: tail, next: NIL };
        if tail == NIL {
            self.r_head[x] = h;
        } else {
            let ts = self.side_of(tail, x as VertexId);
            self.edges[tail as usize].side[ts].next = h;
        }
        self.r_tail[x] = h;
        self.r_len[x] += 1;
        self.mutations += 1;
    }

    fn r_unlink(&mut self, h: u32, s: usize) {
        let x = self.edges[h as usize].ends[s];
        let Side { prev, next, .. } = self.edges[h as usize].side[s];
        if prev == NIL {
            self.r_head[x as usize] = next;
        } else {
            let ps = self.side_of(prev, x);
            self.edges[prev as usize].side[ps].next = next;
        }
        if next == NIL {
            self.r_tail[x as usize] = prev;
        } else {
            let ns = self.side_of(next, x);
            self.edges[next as usize].side[ns].prev = prev;
        }
        let side = &mut self.edges[h as usize].side[s];
        side.in_r = false;
        side.prev = NIL;
        side.next = NIL;
        self.r_len[x as usize] -= 1;
        self.mutations += 1;
    }

    fn add_kernel(&mut self, h: u32) {
        self.edges[h as usize].in_kernel = true;
        self.edges[h as usize].kpos = self.kernel.len() as u32;
        self.kernel.push(h);
        for x in self.edges[h as usize].ends {
            self.kdeg[x as usize] += 1;
            if self.kdeg[x as usize] == 1 {
                self.kernel_vertices += 1;
            }
        }
        self.mutations += 1;
    }

    fn remove_kernel(&mut self, h: u32) {
        let pos = self.edges[h as usize].kpos as usize;
        self.kernel.swap_remove(pos);
        if let Some(&moved) = self.kernel.get(pos) {
            self.edges[moved as usize].kpos = pos as u32;
        }
        self.edges[h as usize].in_kernel = false;
        for x in self.edges[h as usize].ends {
            self.kdeg[x as usize] -= 1;
            if self.kdeg[x as usize] == 0 {
                self.kernel_vertices -= 1;
            }
        }
        self.mutations += 1;
    }

    fn wants_kernel(&self, h: u32) -> bool {
        let e = &self.edges[h as usize];
        e.side[0].selected
            || e.side[1].selected
            || (!self.has_r[e.ends[0] as usize] && !self.has_r[e.ends[1] as usize])
    }

    fn refresh(&mut self, h: u32) {
        let want = self.wants_kernel(h);
        if want != self.edges[h as usize].in_kernel {
            if want {
                self.add_kernel(h);
            } else {
                self.remove_kernel(h);
            }
        }
    }

    fn incident(&self, x: VertexId) -> Vec<u32> {
        self.g.neighbors(x).iter().map(|&(_, h)| h.0).collect()
    }

    /// x selects every incident edge and gets an empty R_x.
    fn make_high(&mut self, x: VertexId) {
        self.has_r[x as usize] = true;
        self.mutations += 1;
        for h in self.incident(x) {
            let s = self.side_of(h, x);
            self.set_selected(h, s, true);
            self.refresh(h);
        }
    }

    /// Drops R_x (already empty) and rechecks every incident edge.
    fn make_low(&mut self, x: VertexId) {
        debug_assert_eq!(self.r_len[x as usize], 0);
        self.has_r[x as usize] = false;
        self.mutations += 1;
        for h in self.incident(x) {
            let s = self.side_of(h, x);
            self.set_selected(h, s, false);
            self.refresh(h);
        }
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeHandle, GraphError> {
        let h = self.g.insert_edge(u, v)?;
        debug_assert_eq!(h.0 as usize, self.edges.len());
        self.edges.push(EdgeState {
            ends: [u, v],
            side: [Side { prev: NIL, next: NIL, ..Default::default() }; 2],
            live: true,
            in_kernel: false,
            kpos: 0,
        });
        let k = self.k;
        for s in 0..2 {
            let x = self.edges[h.0 as usize].ends[s];
            let d = self.g.degree(x);
            match self.variant {
                Variant::WorstCase => {
                    if d == k + 1 {
                        self.make_high(x);
                    } else if d > k + 1 {
                        self.r_push(h.0, s);
                    }
                }
                Variant::Amortized => {
                    if self.has_r[x as usize] {
                        if self.selected[x as usize] <= 2 * k {
                            self.set_selected(h.0, s, true);
                        } else {
                            self.r_push(h.0, s);
                        }
                    } else if d == 2 * k + 1 {
                        self.make_high(x);
                    }
                }
            }
        }
        self.refresh(h.0);
        Ok(h)
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let h = self.g.find_edge(u, v).ok_or(GraphError::NoSuchEdge(u, v))?;
        self.g.delete_edge(h)?;
        let h = h.0;
        if self.edges[h as usize].in_kernel {
            self.remove_kernel(h);
        }
        self.edges[h as usize].live = false;
        let k = self.k;
        for s in 0..2 {
            let x = self.edges[h as usize].ends[s];
            if !self.has_r[x as usize] {
                continue;
            }
            let d = self.g.degree(x);
            if self.edges[h as usize].side[s].in_r {
                self.r_unlink(h, s);
            } else {
                self.set_selected(h, s, false);
                let head = self.r_head[x as usize];
                if head != NIL {
                    let hs = self.side_of(head, x);
                    self.r_unlink(head, hs);
                    self.set_selected(head, hs, true);
                    self.refresh(head);
                }
            }
            if d == k {
                self.make_low(x);
            }
        }
        Ok(())
    }

    /// A minimum vertex cover of G if one of size ≤ k exists.
    pub fn query(&self) -> Option<Vec<VertexId>> {
        if self.kernel.len() > self.kernel_edge_bound() || self.kernel_vertices > self.kernel_vertex_bound() {
            return None;
        }
        solve::min_vertex_cover(&self.kernel_edges(), self.k)
    }

    /// Recomputes every invariant from scratch; panics with a description on failure.
    pub fn check_invariants(&self) {
        let k = self.k;
        let mut kernel_count = 0;
        for (h, e) in self.edges.iter().enumerate() {
            if !e.live {
                assert!(!e.in_kernel, "dead edge {h} in kernel");
                continue;
            }
            assert_eq!(e.in_kernel, self.wants_kernel(h as u32), "kernel membership of edge {h}");
            kernel_count += e.in_kernel as usize;
            for s in 0..2 {
                let x = e.ends[s] as usize;
                if !self.has_r[x] {
                    assert!(!e.side[s].selected && !e.side[s].in_r, "edge {h} tracked by list-less vertex {x}");
                } else {
                    assert!(e.side[s].selected != e.side[s].in_r, "edge {h} must be selected xor in R_{x}");
                }
            }
        }
        assert_eq!(kernel_count, self.kernel.len());
        for x in 0..self.g.n() as VertexId {
            let d = self.g.degree(x);
            let xi = x as usize;
            match self.variant {
                Variant::WorstCase => {
                    assert_eq!(self.has_r[xi], d > k, "vertex {x} high flag");
                    if d > k {
                        assert_eq!(self.selected[xi], k + 1, "vertex {x} selects k+1");
                    }
                }
                Variant::Amortized => {
                    if d > 2 * k {
                        assert!(self.has_r[xi], "high vertex {x} lacks R");
                    }
                    if d <= k {
                        assert!(!self.has_r[xi], "low vertex {x} keeps R");
                    }
                    if self.has_r[xi] {
                        let s = self.selected[xi];
                        assert!(s <= 2 * k + 1 && s > k, "vertex {x} selects {s}");
                    }
                }
            }
            if self.has_r[xi] {
                assert_eq!(self.selected[xi] + self.r_len[xi], d);
            }
        }
    }
}
