//! Exhaustive reference solvers on small snapshots.
//!
//! Nothing here touches the dynamic modules; answers come from direct
//! enumeration so they can serve as ground truth.

mod goodsets;

pub use goodsets::{oracle_goodsets, oracle_goodsets_recursive, GoodTable};

use num_rational::Ratio;
use std::collections::{BTreeSet, HashSet};
use thiserror::Error;

pub const MAX_N: usize = 20;
pub const MAX_SETS: usize = 1 << 12;
pub const MAX_POINTS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
}

/// Snapshot of an undirected graph; `edges` may repeat pairs or hold loops
/// only where the problem allows it (fvs).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSnapshot {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl GraphSnapshot {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        GraphSnapshot { n, edges: edges.into_iter().collect() }
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.n > MAX_N {
            return Err(OracleError::InstanceTooLarge(format!("n = {}", self.n)));
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u as usize] |= 1 << v;
                adj[v as usize] |= 1 << u;
            }
        }
        adj
    }
}

/// Calls `f` on each k-subset of 0..n in lexicographic order until it returns true.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<u32> = (0..k as u32).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if (idx[i] as usize) < n - k + i {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        if (idx[i] as usize) >= n - k + i {
            return false;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mask_of(s: &[u32]) -> u32 {
    s.iter().fold(0, |m, &v| m | 1 << v)
}

/// Smallest vertex set of size ≤ k touching every edge; lexicographically first among the smallest.
pub fn oracle_vc(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<u32>>, OracleError> {
    g.check()?;
    for s in 0..=k.min(g.n) {
        let mut found = None;
        for_each_subset(g.n, s, |c| {
            let m = mask_of(c);
            if g.edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1) {
                found = Some(c.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn induced_connected(adj: &[u32], m: u32) -> bool {
    if m == 0 {
        return true;
    }
    let start = m.trailing_zeros();
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let x = frontier.trailing_zeros();
        frontier &= frontier - 1;
        let nb = adj[x as usize] & m & !seen;
        seen |= nb;
        frontier |= nb;
    }
    seen == m
}

/// Smallest vertex cover of size ≤ k inducing a connected subgraph.
pub fn oracle_cvc(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<u32>>, OracleError> {
    g.check()?;
    let adj = g.adjacency();
    for s in 0..=k.min(g.n) {
        let mut found = None;
        for_each_subset(g.n, s, |c| {
            let m = mask_of(c);
            let covers = g.edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1);
            if covers && induced_connected(&adj, m) {
                found = Some(c.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Smallest set of ≤ k edges such that every edge shares an endpoint with one of them.
pub fn oracle_eds(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<(u32, u32)>>, OracleError> {
    g.check()?;
    let mut edges: Vec<(u32, u32)> = g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    for s in 0..=k.min(edges.len()) {
        let mut found = None;
        for_each_subset(edges.len(), s, |c| {
            let m = c.iter().fold(0u32, |m, &i| m | 1 << edges[i as usize].0 | 1 << edges[i as usize].1);
            if edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1) {
                found = Some(c.iter().map(|&i| edges[i as usize]).collect());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Smallest hitting set of size ≤ k; elements drawn from the union of the sets.
pub fn oracle_hs(family: &[Vec<u32>], k: usize) -> Result<Option<Vec<u32>>, OracleError> {
    if family.len() > MAX_SETS {
        return Err(OracleError::InstanceTooLarge(format!("{} sets", family.len())));
    }
    if family.iter().any(|s| s.is_empty()) {
        return Ok(None);
    }
    let universe: Vec<u32> = family.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if universe.len() > 64 {
        return Err(OracleError::InstanceTooLarge(format!("{} elements", universe.len())));
    }
    let masks: Vec<u64> = family
        .iter()
        .map(|s| s.iter().fold(0u64, |m, e| m | 1 << universe.binary_search(e).unwrap()))
        .collect();
    for s in 0..=k.min(universe.len()) {
        let mut found = None;
        for_each_subset(universe.len(), s, |c| {
            let m = c.iter().fold(0u64, |m, &i| m | 1 << i);
            if masks.iter().all(|&f| f & m != 0) {
                found = Some(c.iter().map(|&i| universe[i as usize]).collect());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn acyclic_without(n: usize, edges: &[(u32, u32)], removed: u32) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        if removed >> u & 1 == 1 || removed >> v & 1 == 1 {
            continue;
        }
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Smallest vertex set of size ≤ k whose removal leaves a forest (multigraph, loops allowed).
pub fn oracle_fvs(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<u32>>, OracleError> {
    g.check()?;
    for s in 0..=k.min(g.n) {
        let mut found = None;
        for_each_subset(g.n, s, |c| {
            if acyclic_without(g.n, &g.edges, mask_of(c)) {
                found = Some(c.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MlstOracle {
    NotConnected,
    /// Maximum leaf count and one spanning tree attaining it.
    Best(usize, Vec<(u32, u32)>),
}

/// Leaves are vertices of tree degree at most one.
pub fn tree_leaves(n: usize, tree: &[(u32, u32)]) -> usize {
    let mut deg = vec![0usize; n];
    for &(u, v) in tree {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg.iter().filter(|&&d| d <= 1).count()
}

/// Maximum number of leaves over all spanning trees, by enumerating the
/// non-leaf (internal) vertex set: it must be connected and dominate the rest.
pub fn oracle_mlst(g: &GraphSnapshot) -> Result<MlstOracle, OracleError> {
    g.check()?;
    let n = g.n;
    let adj = g.adjacency();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if !induced_connected(&adj, all) {
        return Ok(MlstOracle::NotConnected);
    }
    if n <= 2 {
        let tree = if n == 2 { vec![(0, 1)] } else { vec![] };
        return Ok(MlstOracle::Best(n, tree));
    }
    for s in 1..=n {
        let mut found = None;
        for_each_subset(n, s, |c| {
            let m = mask_of(c);
            let dominated = (0..n).all(|v| m >> v & 1 == 1 || adj[v] & m != 0);
            if dominated && induced_connected(&adj, m) {
                found = Some(m);
                true
            } else {
                false
            }
        });
        if let Some(m) = found {
            let mut tree = Vec::new();
            let start = m.trailing_zeros();
            let mut seen = 1u32 << start;
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                let mut nb = adj[x as usize] & m & !seen;
                while nb != 0 {
                    let y = nb.trailing_zeros();
                    nb &= nb - 1;
                    seen |= 1 << y;
                    tree.push((x.min(y), x.max(y)));
                    queue.push(y);
                }
            }
            for v in 0..n as u32 {
                if m >> v & 1 == 0 {
                    let p = (adj[v as usize] & m).trailing_zeros();
                    tree.push((v.min(p), v.max(p)));
                }
            }
            tree.sort_unstable();
            let leaves = tree_leaves(n, &tree);
            return Ok(MlstOracle::Best(leaves, tree));
        }
    }
    unreachable!("the full vertex set dominates a connected graph")
}

/// A simple path on exactly k vertices, by depth-first search.
pub fn oracle_kpath(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<u32>>, OracleError> {
    g.check()?;
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let adj = g.adjacency();
    fn dfs(adj: &[u32], path: &mut Vec<u32>, used: u32, k: usize) -> bool {
        if path.len() == k {
            return true;
        }
        let x = *path.last().unwrap();
        let mut nb = adj[x as usize] & !used;
        while nb != 0 {
            let y = nb.trailing_zeros();
            nb &= nb - 1;
            path.push(y);
            if dfs(adj, path, used | 1 << y, k) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in 0..g.n as u32 {
        let mut path = vec![s];
        if dfs(&adj, &mut path, 1 << s, k) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Maximum number of edges induced by k vertices, with the first maximizing subset.
pub fn oracle_densesub(g: &GraphSnapshot, k: usize) -> Result<Option<(usize, Vec<u32>)>, OracleError> {
    g.check()?;
    let mut best: Option<(usize, Vec<u32>)> = None;
    for_each_subset(g.n, k, |c| {
        let m = mask_of(c);
        let e = g.edges.iter().filter(|&&(u, v)| m >> u & 1 == 1 && m >> v & 1 == 1).count();
        if best.as_ref().is_none_or(|b| e > b.0) {
            best = Some((e, c.to_vec()));
        }
        false
    });
    if k == 0 {
        return Ok(Some((0, Vec::new())));
    }
    Ok(best)
}

fn maximal_cliques(adj: &[u32], n: usize) -> Vec<u32> {
    fn bk(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros();
            bk(adj, r | 1 << v, p & adj[v as usize], x & adj[v as usize], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    bk(adj, 0, all, 0, &mut out);
    out.retain(|c| c.count_ones() >= 2);
    out.sort_unstable();
    out
}

/// Minimum number (≤ k) of cliques covering every edge; cliques are vertex lists.
pub fn oracle_ecc(g: &GraphSnapshot, k: usize) -> Result<Option<Vec<Vec<u32>>>, OracleError> {
    g.check()?;
    let adj = g.adjacency();
    let cliques = maximal_cliques(&adj, g.n);
    let mut edges: Vec<(u32, u32)> = g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges.dedup();
    fn search(edges: &[(u32, u32)], cliques: &[u32], chosen: &mut Vec<u32>, budget: usize) -> bool {
        let open = edges.iter().find(|&&(u, v)| !chosen.iter().any(|c| c >> u & 1 == 1 && c >> v & 1 == 1));
        let Some(&(u, v)) = open else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &c in cliques {
            if c >> u & 1 == 1 && c >> v & 1 == 1 {
                chosen.push(c);
                if search(edges, cliques, chosen, budget - 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    for b in 0..=k {
        let mut chosen = Vec::new();
        if search(&edges, &cliques, &mut chosen, b) {
            let out = chosen.iter().map(|&c| (0..g.n as u32).filter(|&v| c >> v & 1 == 1).collect()).collect();
            return Ok(Some(out));
        }
    }
    Ok(None)
}

pub type OraclePoint = (Ratio<i64>, Ratio<i64>);

fn collinear(p: &OraclePoint, q: &OraclePoint, r: &OraclePoint) -> bool {
    let w = |x: Ratio<i64>| Ratio::new(*x.numer() as i128, *x.denom() as i128);
    (w(q.0) - w(p.0)) * (w(r.1) - w(p.1)) == (w(q.1) - w(p.1)) * (w(r.0) - w(p.0))
}

/// Minimum number (≤ k) of lines covering every point. Each line is reported
/// as the indices of the points it covers.
pub fn oracle_plc(points: &[OraclePoint], k: usize) -> Result<Option<Vec<Vec<usize>>>, OracleError> {
    if points.len() > MAX_POINTS {
        return Err(OracleError::InstanceTooLarge(format!("{} points", points.len())));
    }
    let n = points.len();
    let mut lines: HashSet<u32> = HashSet::new();
    for i in 0..n {
        lines.insert(1 << i);
        for j in i + 1..n {
            let m = (0..n).filter(|&r| collinear(&points[i], &points[j], &points[r])).fold(0u32, |m, r| m | 1 << r);
            lines.insert(m);
        }
    }
    let mut lines: Vec<u32> = lines.into_iter().collect();
    lines.sort_unstable_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    fn search(lines: &[u32], covered: u32, all: u32, budget: usize, chosen: &mut Vec<u32>) -> bool {
        if covered == all {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let p = (!covered & all).trailing_zeros();
        for &l in lines {
            if l >> p & 1 == 1 {
                chosen.push(l);
                if search(lines, covered | l, all, budget - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    for b in 0..=k {
        let mut chosen = Vec::new();
        if search(&lines, 0, all, b, &mut chosen) {
            return Ok(Some(chosen.iter().map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()));
        }
    }
    Ok(None)
}

/// Isomorphism of two multigraphs (loops allowed) on their non-isolated vertices, by backtracking.
pub fn multigraph_isomorphic(n: usize, a: &[(u32, u32)], b: &[(u32, u32)]) -> bool {
    fn matrix(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; n]; n];
        for &(u, v) in edges {
            m[u as usize][v as usize] += 1;
            if u != v {
                m[v as usize][u as usize] += 1;
            }
        }
        m
    }
    fn used(m: &[Vec<usize>]) -> Vec<usize> {
        (0..m.len()).filter(|&v| m[v].iter().any(|&c| c > 0)).collect()
    }
    fn rec(ma: &[Vec<usize>], mb: &[Vec<usize>], va: &[usize], vb: &[usize], map: &mut Vec<usize>, taken: &mut [bool]) -> bool {
        let i = map.len();
        if i == va.len() {
            return true;
        }
        let x = va[i];
        for (j, &y) in vb.iter().enumerate() {
            if taken[j] || ma[x][x] != mb[y][y] {
                continue;
            }
            let deg = |m: &[Vec<usize>], v: usize| m[v].iter().sum::<usize>();
            if deg(ma, x) != deg(mb, y) || (0..i).any(|p| ma[x][va[p]] != mb[y][map[p]]) {
                continue;
            }
            taken[j] = true;
            map.push(y);
            if rec(ma, mb, va, vb, map, taken) {
                return true;
            }
            map.pop();
            taken[j] = false;
        }
        false
    }
    if a.len() != b.len() {
        return false;
    }
    let (ma, mb) = (matrix(n, a), matrix(n, b));
    let (va, vb) = (used(&ma), used(&mb));
    va.len() == vb.len() && rec(&ma, &mb, &va, &vb, &mut Vec::new(), &mut vec![false; vb.len()])
}

/// Witness checks shared by tests and the harness.
pub mod check {
    use super::*;

    pub fn is_vertex_cover(edges: &[(u32, u32)], s: &[u32]) -> bool {
        let s: HashSet<u32> = s.iter().copied().collect();
        edges.iter().all(|(u, v)| s.contains(u) || s.contains(v))
    }

    pub fn is_connected_vertex_cover(g: &GraphSnapshot, s: &[u32]) -> bool {
        is_vertex_cover(&g.edges, s) && induced_connected(&g.adjacency(), mask_of(s))
    }

    pub fn is_edge_dominating(edges: &[(u32, u32)], d: &[(u32, u32)]) -> bool {
        let present: HashSet<(u32, u32)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let touched: HashSet<u32> = d.iter().flat_map(|&(u, v)| [u, v]).collect();
        d.iter().all(|&(u, v)| present.contains(&(u.min(v), u.max(v))))
            && edges.iter().all(|(u, v)| touched.contains(u) || touched.contains(v))
    }

    pub fn is_hitting_set(family: &[Vec<u32>], s: &[u32]) -> bool {
        family.iter().all(|f| f.iter().any(|e| s.contains(e)))
    }

    pub fn is_fvs(g: &GraphSnapshot, s: &[u32]) -> bool {
        s.iter().all(|&v| (v as usize) < g.n) && acyclic_without(g.n, &g.edges, mask_of(s))
    }

    pub fn is_spanning_tree(g: &GraphSnapshot, tree: &[(u32, u32)]) -> bool {
        if g.n == 0 {
            return tree.is_empty();
        }
        let present: HashSet<(u32, u32)> = g.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        tree.len() == g.n - 1
            && tree.iter().all(|&(u, v)| present.contains(&(u.min(v), u.max(v))))
            && acyclic_without(g.n, tree, 0)
    }

    pub fn is_path(g: &GraphSnapshot, path: &[u32]) -> bool {
        let adj = g.adjacency();
        let distinct: HashSet<u32> = path.iter().copied().collect();
        distinct.len() == path.len() && path.windows(2).all(|w| adj[w[0] as usize] >> w[1] & 1 == 1)
    }

    pub fn induced_edges(g: &GraphSnapshot, s: &[u32]) -> usize {
        let m = mask_of(s);
        g.edges.iter().filter(|&&(u, v)| m >> u & 1 == 1 && m >> v & 1 == 1).count()
    }

    pub fn is_clique_cover(g: &GraphSnapshot, cliques: &[Vec<u32>]) -> bool {
        let adj = g.adjacency();
        let masks: Vec<u32> = cliques.iter().map(|c| mask_of(c)).collect();
        let cliques_ok = cliques
            .iter()
            .all(|c| c.iter().all(|&u| c.iter().all(|&v| u == v || adj[u as usize] >> v & 1 == 1)));
        cliques_ok && g.edges.iter().all(|&(u, v)| masks.iter().any(|m| m >> u & 1 == 1 && m >> v & 1 == 1))
    }

    /// Each group of point indices must be collinear, and together they cover all points.
    pub fn is_line_cover(points: &[OraclePoint], groups: &[Vec<usize>]) -> bool {
        let mut covered = vec![false; points.len()];
        for g in groups {
            if g.len() >= 3 && !g.iter().all(|&r| collinear(&points[g[0]], &points[g[1]], &points[r])) {
                return false;
            }
            for &i in g {
                covered[i] = true;
            }
        }
        covered.iter().all(|&c| c)
    }
}
