//! Edge dominating set on top of a vertex cover kernel with parameter 2k.
//!
//! The endpoints of an edge dominating set of size ≤ k form a vertex cover of
//! size ≤ 2k. Conversely a vertex cover X yields an edge dominating set of
//! size |X| − ν(G[X]): a maximum matching of G[X] plus one edge at every
//! unmatched vertex. The optimum is the minimum of that quantity over covers
//! found by branching on the kernel.

use super::{solve, VcKernel, Variant};
use crate::graphcore::{GraphError, VertexId};

#[derive(Clone, Debug)]
pub struct EdsKernel {
    k: usize,
    vc: VcKernel,
    high: usize,
}

impl EdsKernel {
    pub fn new(n: usize, k: usize) -> Self {
        EdsKernel { k, vc: VcKernel::new(n, 2 * k, Variant::Amortized), high: 0 }
    }

    pub fn inner(&self) -> &VcKernel {
        &self.vc
    }

    pub fn mutations(&self) -> u64 {
        self.vc.mutations()
    }

    /// Vertices of degree above 2k.
    pub fn high_count(&self) -> usize {
        self.high
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.vc.insert_edge(u, v)?;
        for x in [u, v] {
            if self.vc.graph().degree(x) == 2 * self.k + 1 {
                self.high += 1;
            }
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.vc.delete_edge(u, v)?;
        for x in [u, v] {
            if self.vc.graph().degree(x) == 2 * self.k {
                self.high -= 1;
            }
        }
        Ok(())
    }

    /// A minimum edge dominating set if one of size ≤ k exists, as sorted pairs.
    pub fn query(&self) -> Option<Vec<(VertexId, VertexId)>> {
        let k2 = 2 * self.k;
        let vc = &self.vc;
        if self.high > k2 || vc.kernel_size() > vc.kernel_edge_bound() || vc.kernel_vertex_count() > vc.kernel_vertex_bound() {
            return None;
        }
        let g = vc.graph();
        let mut best: Option<(usize, Vec<VertexId>)> = None;
        solve::enumerate_covers(&vc.kernel_edges(), k2, |x| {
            let nu = solve::max_matching(x, |a, b| g.has_edge(a, b)).len();
            let value = x.len() - nu;
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, x.to_vec()));
            }
        });
        let (value, mut x) = best?;
        if value > self.k {
            return None;
        }
        x.sort_unstable();
        let matching = solve::max_matching(&x, |a, b| g.has_edge(a, b));
        let mut matched: Vec<VertexId> = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
        matched.sort_unstable();
        let mut out: Vec<(VertexId, VertexId)> = matching.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for &v in &x {
            if matched.binary_search(&v).is_err() {
                if let Some(&(w, _)) = g.neighbors(v).iter().min() {
                    out.push((v.min(w), v.max(w)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        debug_assert!(out.len() <= value);
        Some(out)
    }
}
