//! Small exact solvers run on kernels at query time.

use std::collections::HashMap;

struct Local {
    ids: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

fn localize(edges: &[(u32, u32)]) -> Local {
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut ids = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut id_of = |x: u32, ids: &mut Vec<u32>, adj: &mut Vec<Vec<usize>>| {
        *index.entry(x).or_insert_with(|| {
            ids.push(x);
            adj.push(Vec::new());
            ids.len() - 1
        })
    };
    for &(u, v) in edges {
        let a = id_of(u, &mut ids, &mut adj);
        let b = id_of(v, &mut ids, &mut adj);
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    Local { ids, adj }
}

fn live_degree(adj: &[Vec<usize>], taken: &[bool], x: usize) -> usize {
    adj[x].iter().filter(|&&y| !taken[y]).count()
}

/// Branches on a maximum-degree vertex v: take v, or take all of N(v).
fn branch(adj: &[Vec<usize>], taken: &mut Vec<bool>, chosen: &mut Vec<usize>, budget: usize) -> bool {
    let mut best = None;
    for x in 0..adj.len() {
        if taken[x] {
            continue;
        }
        let d = live_degree(adj, taken, x);
        if d > 0 && best.is_none_or(|(_, bd)| d > bd) {
            best = Some((x, d));
        }
    }
    let Some((v, d)) = best else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    taken[v] = true;
    chosen.push(v);
    if branch(adj, taken, chosen, budget - 1) {
        return true;
    }
    chosen.pop();
    taken[v] = false;
    if d > budget {
        return false;
    }
    let nb: Vec<usize> = adj[v].iter().copied().filter(|&y| !taken[y]).collect();
    for &y in &nb {
        taken[y] = true;
        chosen.push(y);
    }
    // v is now isolated; mark it so it is skipped.
    taken[v] = true;
    if branch(adj, taken, chosen, budget - d) {
        taken[v] = false;
        return true;
    }
    taken[v] = false;
    for &y in &nb {
        taken[y] = false;
        chosen.pop();
    }
    false
}

/// A minimum vertex cover if its size is at most k, sorted by vertex id.
pub fn min_vertex_cover(edges: &[(u32, u32)], k: usize) -> Option<Vec<u32>> {
    let local = localize(edges);
    for b in 0..=k {
        let mut taken = vec![false; local.ids.len()];
        let mut chosen = Vec::new();
        if branch(&local.adj, &mut taken, &mut chosen, b) {
            let mut out: Vec<u32> = chosen.iter().map(|&x| local.ids[x]).collect();
            out.sort_unstable();
            return Some(out);
        }
    }
    None
}

/// Every vertex cover of size at most `limit` that the standard two-way
/// branching reaches; each cover of size ≤ limit contains one of them.
pub fn enumerate_covers(edges: &[(u32, u32)], limit: usize, mut visit: impl FnMut(&[u32])) {
    let local = localize(edges);
    fn go(
        adj: &[Vec<usize>],
        taken: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        budget: usize,
        ids: &[u32],
        visit: &mut dyn FnMut(&[u32]),
    ) {
        let open = (0..adj.len()).find(|&x| !taken[x] && live_degree(adj, taken, x) > 0);
        let Some(u) = open else {
            let out: Vec<u32> = chosen.iter().map(|&x| ids[x]).collect();
            visit(&out);
            return;
        };
        if budget == 0 {
            return;
        }
        taken[u] = true;
        chosen.push(u);
        go(adj, taken, chosen, budget - 1, ids, visit);
        chosen.pop();
        let nb: Vec<usize> = adj[u].iter().copied().filter(|&y| !taken[y]).collect();
        if nb.len() <= budget {
            for &y in &nb {
                taken[y] = true;
                chosen.push(y);
            }
            go(adj, taken, chosen, budget - nb.len(), ids, visit);
            for &y in &nb {
                taken[y] = false;
                chosen.pop();
            }
        }
        taken[u] = false;
    }
    let mut taken = vec![false; local.ids.len()];
    go(&local.adj, &mut taken, &mut Vec::new(), limit, &local.ids, &mut visit);
}

/// Maximum matching on a graph with at most 64 vertices, by recursion on the lowest free vertex.
pub fn max_matching(vertices: &[u32], has_edge: impl Fn(u32, u32) -> bool) -> Vec<(u32, u32)> {
    let n = vertices.len();
    assert!(n <= 64);
    let adj: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && has_edge(vertices[i], vertices[j])).fold(0u64, |m, j| m | 1 << j))
        .collect();
    fn go(adj: &[u64], free: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if free == 0 {
            return 0;
        }
        if let Some(&r) = memo.get(&free) {
            return r;
        }
        let i = free.trailing_zeros() as usize;
        let rest = free & !(1 << i);
        let mut best = go(adj, rest, memo);
        let mut nb = adj[i] & rest;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            best = best.max(1 + go(adj, rest & !(1 << j), memo));
        }
        memo.insert(free, best);
        best
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    let mut free = full;
    let mut out = Vec::new();
    // Walk back through the memo to recover one optimal matching.
    while free != 0 {
        let target = go(&adj, free, &mut memo);
        let i = free.trailing_zeros() as usize;
        let rest = free & !(1 << i);
        if go(&adj, rest, &mut memo) == target {
            free = rest;
            continue;
        }
        let mut nb = adj[i] & rest;
        while nb != 0 {
            let j = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if 1 + go(&adj, rest & !(1 << j), &mut memo) == target {
                out.push((vertices[i], vertices[j]));
                free = rest & !(1 << j);
                break;
            }
        }
    }
    out
}
