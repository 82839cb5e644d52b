//! Problem instances and the strategies that answer queries on them.

use super::trace::Event;
use crate::branchtree::BranchTree;
use crate::colorcoded::{DenseSubState, KPathState, Mode};
use crate::fvs::{FvsLevel, FvsState};
use crate::graphcore::DynGraph;
use crate::hskernel::GoodSetIndex;
use crate::mlst::{static_k_leaf, MlstAnswer, MlstState};
use crate::promisekernels::ecc::{EccAnswer, EccState};
use crate::promisekernels::plc::{Line, PlcAnswer, PlcState};
use crate::promisekernels::Point;
use crate::vckernel::{solve, CvcKernel, EdsKernel, Variant, VcKernel};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Problem {
    Vc,
    Cvc,
    Eds,
    Hs,
    Fvs,
    Mlst,
    Kpath,
    Densesub,
    Ecc,
    Plc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    KernelWorstcase,
    KernelAmortized,
    Branchtree,
    Hskernel,
    Fvs,
    Mlst,
    KpathExh,
    KpathRand,
    Densesub,
    Ecc,
    Plc,
    Scratch,
}

impl Problem {
    pub const ALL: [Problem; 10] = [
        Problem::Vc,
        Problem::Cvc,
        Problem::Eds,
        Problem::Hs,
        Problem::Fvs,
        Problem::Mlst,
        Problem::Kpath,
        Problem::Densesub,
        Problem::Ecc,
        Problem::Plc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Vc => "vc",
            Problem::Cvc => "cvc",
            Problem::Eds => "eds",
            Problem::Hs => "hs",
            Problem::Fvs => "fvs",
            Problem::Mlst => "mlst",
            Problem::Kpath => "kpath",
            Problem::Densesub => "densesub",
            Problem::Ecc => "ecc",
            Problem::Plc => "plc",
        }
    }

    /// Accepted strategies; the first is the default.
    pub fn strategies(self) -> &'static [Strategy] {
        use Strategy::*;
        match self {
            Problem::Vc => &[KernelAmortized, KernelWorstcase, Branchtree, Scratch],
            Problem::Cvc | Problem::Eds => &[KernelAmortized, KernelWorstcase, Scratch],
            Problem::Hs => &[Hskernel, Branchtree, Scratch],
            Problem::Fvs => &[Fvs, Scratch],
            Problem::Mlst => &[Mlst, Scratch],
            Problem::Kpath => &[KpathExh, KpathRand, Scratch],
            Problem::Densesub => &[Densesub, Scratch],
            Problem::Ecc => &[Ecc, Scratch],
            Problem::Plc => &[Plc, Scratch],
        }
    }

    pub fn takes_edges(self) -> bool {
        !matches!(self, Problem::Hs | Problem::Plc)
    }
}

impl Strategy {
    pub const ALL: [Strategy; 12] = [
        Strategy::KernelWorstcase,
        Strategy::KernelAmortized,
        Strategy::Branchtree,
        Strategy::Hskernel,
        Strategy::Fvs,
        Strategy::Mlst,
        Strategy::KpathExh,
        Strategy::KpathRand,
        Strategy::Densesub,
        Strategy::Ecc,
        Strategy::Plc,
        Strategy::Scratch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::KernelWorstcase => "kernel-worstcase",
            Strategy::KernelAmortized => "kernel-amortized",
            Strategy::Branchtree => "branchtree",
            Strategy::Hskernel => "hskernel",
            Strategy::Fvs => "fvs",
            Strategy::Mlst => "mlst",
            Strategy::KpathExh => "kpath-exh",
            Strategy::KpathRand => "kpath-rand",
            Strategy::Densesub => "densesub",
            Strategy::Ecc => "ecc",
            Strategy::Plc => "plc",
            Strategy::Scratch => "scratch",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Problem::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown problem {s:?}"))
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Strategy::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

/// Knobs shared by replay, gen and bench.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub seed: u64,
    /// Failure probability of randomized color coding.
    pub epsilon: f64,
    /// Hitting-set arity.
    pub d: usize,
    /// Degree bound for dense subgraph.
    pub delta: usize,
    /// Promise bound for ecc and plc.
    pub g: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0, epsilon: 1e-6, d: 3, delta: 3, g: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Vertices(Vec<u32>),
    Edges(Vec<(u32, u32)>),
    Lines(Vec<Line>),
    Cliques(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes { size: usize, witness: Witness },
    No,
    Unknown,
}

impl Answer {
    fn vertices(v: Option<Vec<u32>>) -> Answer {
        match v {
            Some(v) => Answer::Yes { size: v.len(), witness: Witness::Vertices(v) },
            None => Answer::No,
        }
    }

    pub fn verdict(&self) -> String {
        match self {
            Answer::Yes { size, .. } => format!("YES {size}"),
            Answer::No => "NO".into(),
            Answer::Unknown => "UNKNOWN".into(),
        }
    }

    /// Verdict line plus the witness line for YES answers.
    pub fn lines(&self) -> Vec<String> {
        let Answer::Yes { witness, .. } = self else {
            return vec![self.verdict()];
        };
        let mut w = String::new();
        match witness {
            Witness::Vertices(v) => {
                w.push('V');
                v.iter().for_each(|x| write!(w, " {x}").expect("write to string"));
            }
            Witness::Edges(e) => {
                w.push('E');
                e.iter().for_each(|(a, b)| write!(w, " {a}-{b}").expect("write to string"));
            }
            Witness::Lines(l) => {
                w.push('L');
                l.iter().for_each(|l| write!(w, " {} {} {}", l.a, l.b, l.c).expect("write to string"));
            }
            Witness::Cliques(c) => {
                w.push('C');
                for q in c {
                    let q: Vec<String> = q.iter().map(u32::to_string).collect();
                    write!(w, " {}", q.join(",")).expect("write to string");
                }
            }
        }
        vec![self.verdict(), w]
    }
}

/// Why an update was refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpdateError {
    Invalid(String),
    /// Dense subgraph edge beyond the degree bound.
    DegreeBound(String),
}

/// The current instance, validated independently of any strategy.
#[derive(Clone, Debug)]
pub struct Instance {
    pub problem: Problem,
    pub params: Params,
    pub graph: DynGraph,
    pub family: BTreeSet<Vec<u32>>,
    pub points: BTreeSet<Point>,
}

/// Sorted, deduplicated copy of a set.
pub fn canonical_set(s: &[u32]) -> Vec<u32> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

impl Instance {
    pub fn new(problem: Problem, n: usize, params: Params) -> Self {
        Instance { problem, params, graph: DynGraph::simple(n), family: BTreeSet::new(), points: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Applies an update event; queries and comments are ignored.
    pub fn apply(&mut self, e: &Event) -> Result<(), UpdateError> {
        let bad = |m: String| Err(UpdateError::Invalid(m));
        let p = self.problem;
        match e {
            Event::Insert(..) | Event::Delete(..) if !p.takes_edges() => bad(format!("edge event on problem {p}")),
            Event::SetInsert(_) | Event::SetDelete(_) if p != Problem::Hs => bad(format!("set event on problem {p}")),
            Event::PointInsert(_) | Event::PointDelete(_) if p != Problem::Plc => bad(format!("point event on problem {p}")),
            &Event::Insert(u, v) => {
                if p == Problem::Densesub
                    && u != v
                    && !self.graph.has_edge(u, v)
                    && (self.graph.degree(u) >= self.params.delta || self.graph.degree(v) >= self.params.delta)
                {
                    return Err(UpdateError::DegreeBound(format!("edge {u} {v} exceeds degree {}", self.params.delta)));
                }
                self.graph.insert_edge(u, v).map(|_| ()).map_err(|e| UpdateError::Invalid(e.to_string()))
            }
            &Event::Delete(u, v) => {
                let h = self.graph.find_edge(u, v).ok_or_else(|| UpdateError::Invalid(format!("no edge {u} {v}")))?;
                self.graph.delete_edge(h).map(|_| ()).map_err(|e| UpdateError::Invalid(e.to_string()))
            }
            Event::SetInsert(s) => {
                let s = canonical_set(s);
                if s.len() > self.params.d {
                    return bad(format!("set of size {} exceeds d = {}", s.len(), self.params.d));
                }
                if !self.family.insert(s) {
                    return bad("set already present".into());
                }
                Ok(())
            }
            Event::SetDelete(s) => {
                if !self.family.remove(&canonical_set(s)) {
                    return bad("no such set".into());
                }
                Ok(())
            }
            Event::PointInsert(q) => {
                if !self.points.insert(*q) {
                    return bad(format!("point {q} already present"));
                }
                Ok(())
            }
            Event::PointDelete(q) => {
                if !self.points.remove(q) {
                    return bad(format!("no point {q}"));
                }
                Ok(())
            }
            Event::Query(_) | Event::Comment(_) => Ok(()),
        }
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.graph.edge_pairs()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n() as u32).map(|v| self.graph.neighbors(v).iter().map(|&(w, _)| w as usize).collect()).collect()
    }
}

/// A strategy: receives every valid update and answers queries.
pub trait Solver {
    fn update(&mut self, e: &Event);
    fn query(&mut self, inst: &Instance, k: usize) -> Answer;
    fn mutations(&self) -> u64;
}

/// A structure built for one fixed parameter.
trait Keyed {
    fn apply(&mut self, e: &Event);
    fn answer(&mut self, k: usize) -> Answer;
    fn mutations(&self) -> u64;
}

/// One structure per queried parameter, all fed the same updates.
struct PerK<T> {
    by_k: BTreeMap<usize, T>,
}

impl<T: Keyed> Solver for PerK<T> {
    fn update(&mut self, e: &Event) {
        self.by_k.values_mut().for_each(|t| t.apply(e));
    }

    fn query(&mut self, _: &Instance, k: usize) -> Answer {
        self.by_k.get_mut(&k).expect("structure for every queried k").answer(k)
    }

    fn mutations(&self) -> u64 {
        self.by_k.values().map(Keyed::mutations).sum()
    }
}

fn edge(e: &Event) -> Option<(bool, u32, u32)> {
    match *e {
        Event::Insert(u, v) => Some((true, u, v)),
        Event::Delete(u, v) => Some((false, u, v)),
        _ => None,
    }
}

macro_rules! graph_apply {
    ($self:expr, $e:ident) => {
        if let Some((ins, u, v)) = edge($e) {
            if ins {
                $self.insert_edge(u, v).expect("validated update");
            } else {
                $self.delete_edge(u, v).expect("validated update");
            }
        }
    };
}

impl Keyed for VcKernel {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, _: usize) -> Answer {
        Answer::vertices(self.query())
    }
    fn mutations(&self) -> u64 {
        VcKernel::mutations(self)
    }
}

impl Keyed for CvcKernel {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, _: usize) -> Answer {
        Answer::vertices(self.query())
    }
    fn mutations(&self) -> u64 {
        CvcKernel::mutations(self)
    }
}

fn edges_answer(e: Option<Vec<(u32, u32)>>) -> Answer {
    match e {
        Some(e) => Answer::Yes { size: e.len(), witness: Witness::Edges(e) },
        None => Answer::No,
    }
}

impl Keyed for EdsKernel {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, _: usize) -> Answer {
        edges_answer(self.query())
    }
    fn mutations(&self) -> u64 {
        EdsKernel::mutations(self)
    }
}

impl Keyed for BranchTree {
    fn apply(&mut self, e: &Event) {
        match e {
            &Event::Insert(u, v) => self.insert(&[u, v]).expect("validated update"),
            &Event::Delete(u, v) => self.delete(&[u, v]).expect("validated update"),
            Event::SetInsert(s) => self.insert(s).expect("validated update"),
            Event::SetDelete(s) => self.delete(s).expect("validated update"),
            _ => {}
        }
    }
    fn answer(&mut self, _: usize) -> Answer {
        Answer::vertices(self.query())
    }
    fn mutations(&self) -> u64 {
        BranchTree::mutations(self)
    }
}

impl Keyed for GoodSetIndex {
    fn apply(&mut self, e: &Event) {
        match e {
            Event::SetInsert(s) => self.insert(s).expect("validated update"),
            Event::SetDelete(s) => self.delete(s).expect("validated update"),
            _ => {}
        }
    }
    fn answer(&mut self, _: usize) -> Answer {
        Answer::vertices(self.query())
    }
    fn mutations(&self) -> u64 {
        GoodSetIndex::mutations(self)
    }
}

impl Keyed for FvsState {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, _: usize) -> Answer {
        Answer::vertices(self.query())
    }
    fn mutations(&self) -> u64 {
        let s = self.stats();
        s.updates + s.rebuild_work + s.forwarded
    }
}

impl Keyed for MlstState {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, k: usize) -> Answer {
        match self.query() {
            MlstAnswer::Tree(t) => Answer::Yes { size: k, witness: Witness::Edges(t) },
            MlstAnswer::NotConnected | MlstAnswer::NoTreeWithKLeaves => Answer::No,
        }
    }
    fn mutations(&self) -> u64 {
        let s = self.stats();
        s.gstar_changes + s.d_ops
    }
}

impl Keyed for KPathState {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, k: usize) -> Answer {
        match self.witness() {
            Some(p) => Answer::Yes { size: k, witness: Witness::Vertices(p) },
            None => Answer::No,
        }
    }
    fn mutations(&self) -> u64 {
        KPathState::mutations(self)
    }
}

impl Keyed for DenseSubState {
    fn apply(&mut self, e: &Event) {
        graph_apply!(self, e);
    }
    fn answer(&mut self, _: usize) -> Answer {
        match self.query() {
            Some((e, v)) => Answer::Yes { size: e, witness: Witness::Vertices(v) },
            None => Answer::No,
        }
    }
    fn mutations(&self) -> u64 {
        DenseSubState::mutations(self)
    }
}

fn ecc_answer(a: EccAnswer) -> Answer {
    match a {
        EccAnswer::Cover(c) => Answer::Yes { size: c.len(), witness: Witness::Cliques(c) },
        EccAnswer::No => Answer::No,
        EccAnswer::Unknown => Answer::Unknown,
    }
}

fn plc_answer(a: PlcAnswer) -> Answer {
    match a {
        PlcAnswer::Cover(l) => Answer::Yes { size: l.len(), witness: Witness::Lines(l) },
        PlcAnswer::No => Answer::No,
        PlcAnswer::Unknown => Answer::Unknown,
    }
}

struct EccSolver(EccState);

impl Solver for EccSolver {
    fn update(&mut self, e: &Event) {
        graph_apply!((self.0), e);
    }
    fn query(&mut self, _: &Instance, k: usize) -> Answer {
        ecc_answer(self.0.query(k))
    }
    fn mutations(&self) -> u64 {
        self.0.mutations()
    }
}

struct PlcSolver(PlcState);

impl Solver for PlcSolver {
    fn update(&mut self, e: &Event) {
        // A promise violation is reported through UNKNOWN answers; the point is applied either way.
        let _ = match *e {
            Event::PointInsert(p) => self.0.insert(p),
            Event::PointDelete(p) => self.0.delete(p),
            _ => Ok(()),
        };
    }
    fn query(&mut self, _: &Instance, k: usize) -> Answer {
        plc_answer(self.0.query(k))
    }
    fn mutations(&self) -> u64 {
        self.0.mutations()
    }
}

/// Recomputes a static kernel or solver from the instance at every query.
struct Scratch {
    work: u64,
}

/// Vertex cover by the high-degree rule followed by branching on the rest.
pub fn scratch_vc(edges: &[(u32, u32)], n: usize, k: usize) -> Option<Vec<u32>> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let high: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] > k).collect();
    if high.len() > k {
        return None;
    }
    let budget = k - high.len();
    let rest: Vec<(u32, u32)> = edges.iter().copied().filter(|&(u, v)| deg[u as usize] <= k && deg[v as usize] <= k).collect();
    if rest.len() > budget * k {
        return None;
    }
    let mut out = solve::min_vertex_cover(&rest, budget)?;
    out.extend(high);
    out.sort_unstable();
    Some(out)
}

/// A simple path on k vertices by depth-first search from every start vertex.
pub fn scratch_kpath(adj: &[Vec<usize>], k: usize) -> Option<Vec<u32>> {
    fn dfs(adj: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool], k: usize) -> bool {
        if path.len() == k {
            return true;
        }
        let x = *path.last().expect("nonempty path");
        for &y in &adj[x] {
            if !on[y] {
                on[y] = true;
                path.push(y);
                if dfs(adj, path, on, k) {
                    return true;
                }
                path.pop();
                on[y] = false;
            }
        }
        false
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let mut on = vec![false; adj.len()];
    for s in 0..adj.len() {
        let mut path = vec![s];
        on[s] = true;
        if dfs(adj, &mut path, &mut on, k) {
            return Some(path.into_iter().map(|x| x as u32).collect());
        }
        on[s] = false;
    }
    None
}

/// Most edges induced by k vertices, by enumerating k-subsets.
pub fn scratch_densesub(adj: &[Vec<usize>], k: usize) -> Option<(usize, Vec<u32>)> {
    fn rec(adj: &[Vec<usize>], k: usize, from: usize, cur: &mut Vec<usize>, inside: usize, best: &mut Option<(usize, Vec<u32>)>) {
        if cur.len() == k {
            if best.as_ref().is_none_or(|b| inside > b.0) {
                *best = Some((inside, cur.iter().map(|&x| x as u32).collect()));
            }
            return;
        }
        for v in from..adj.len() {
            let add = adj[v].iter().filter(|w| cur.contains(w)).count();
            cur.push(v);
            rec(adj, k, v + 1, cur, inside + add, best);
            cur.pop();
        }
    }
    let mut best = None;
    rec(adj, k, 0, &mut Vec::new(), 0, &mut best);
    best
}

impl Solver for Scratch {
    fn update(&mut self, _: &Event) {}

    fn query(&mut self, inst: &Instance, k: usize) -> Answer {
        let n = inst.n();
        let edges = inst.edges();
        self.work += (edges.len() + inst.family.len() + inst.points.len()) as u64;
        let fill = |insert: &mut dyn FnMut(u32, u32)| edges.iter().for_each(|&(u, v)| insert(u, v));
        match inst.problem {
            Problem::Vc => Answer::vertices(scratch_vc(&edges, n, k)),
            Problem::Cvc => {
                let mut c = CvcKernel::new(n, k);
                fill(&mut |u, v| c.insert_edge(u, v).expect("simple graph"));
                Answer::vertices(c.query())
            }
            Problem::Eds => {
                let mut c = EdsKernel::new(n, k);
                fill(&mut |u, v| c.insert_edge(u, v).expect("simple graph"));
                edges_answer(c.query())
            }
            Problem::Hs => {
                let family: Vec<Vec<u32>> = inst.family.iter().cloned().collect();
                let idx = GoodSetIndex::static_build(&family, k, inst.params.d).expect("parameters checked at build");
                Answer::vertices(idx.query())
            }
            Problem::Fvs => Answer::vertices(FvsLevel::build(n, k, &edges).query()),
            Problem::Mlst => {
                let adj = inst.adjacency();
                let mut uf: Vec<usize> = (0..n).collect();
                fn find(uf: &mut [usize], x: usize) -> usize {
                    if uf[x] != x {
                        uf[x] = find(uf, uf[x]);
                    }
                    uf[x]
                }
                let mut comps = n;
                for &(u, v) in &edges {
                    let (a, b) = (find(&mut uf, u as usize), find(&mut uf, v as usize));
                    if a != b {
                        uf[a] = b;
                        comps -= 1;
                    }
                }
                if comps > 1 {
                    return Answer::No;
                }
                match static_k_leaf(&adj, k) {
                    Some(t) => Answer::Yes {
                        size: k,
                        witness: Witness::Edges(t.into_iter().map(|(a, b)| (a.min(b) as u32, a.max(b) as u32)).collect()),
                    },
                    None => Answer::No,
                }
            }
            Problem::Kpath => match scratch_kpath(&inst.adjacency(), k) {
                Some(p) => Answer::Yes { size: k, witness: Witness::Vertices(p) },
                None => Answer::No,
            },
            Problem::Densesub => match scratch_densesub(&inst.adjacency(), k) {
                Some((e, v)) => Answer::Yes { size: e, witness: Witness::Vertices(v) },
                None => Answer::No,
            },
            Problem::Ecc => {
                let mut s = EccState::new(n, inst.params.g).expect("bound checked at build");
                fill(&mut |u, v| s.insert_edge(u, v).expect("simple graph"));
                ecc_answer(s.query(k))
            }
            Problem::Plc => {
                let mut s = PlcState::new(inst.params.g).expect("bound checked at build");
                for &p in &inst.points {
                    let _ = s.insert(p);
                }
                plc_answer(s.query(k))
            }
        }
    }

    fn mutations(&self) -> u64 {
        self.work
    }
}

fn per_k<T: Keyed + 'static>(ks: &[usize], mut make: impl FnMut(usize) -> Result<T, String>) -> Result<Box<dyn Solver>, String> {
    let by_k = ks.iter().map(|&k| make(k).map(|t| (k, t))).collect::<Result<BTreeMap<usize, T>, String>>()?;
    Ok(Box::new(PerK { by_k }))
}

/// Builds a strategy for a trace on n ids whose queries use the parameters `ks`.
pub fn build_solver(problem: Problem, strategy: Strategy, n: usize, ks: &[usize], params: Params) -> Result<Box<dyn Solver>, String> {
    if !problem.strategies().contains(&strategy) {
        return Err(format!("strategy {strategy} does not apply to problem {problem}"));
    }
    let max_k = ks.iter().copied().max().unwrap_or(0);
    let err = |e: &dyn fmt::Display| e.to_string();
    // Parameter checks shared with the scratch strategy.
    match problem {
        Problem::Hs => {
            GoodSetIndex::new(max_k, params.d).map_err(|e| err(&e))?;
        }
        Problem::Fvs => {
            FvsState::new(0, max_k).map_err(|e| err(&e))?;
        }
        Problem::Ecc => {
            EccState::new(0, params.g).map_err(|e| err(&e))?;
        }
        Problem::Plc => {
            PlcState::new(params.g).map_err(|e| err(&e))?;
        }
        _ => {}
    }
    let dense_mode = |n: usize| {
        if n <= crate::colorcoded::MAX_EXHAUSTIVE_N {
            Mode::Exhaustive
        } else {
            Mode::Randomized { epsilon: params.epsilon, seed: params.seed }
        }
    };
    use Strategy::*;
    match (problem, strategy) {
        (_, Scratch) => Ok(Box::new(self::Scratch { work: 0 })),
        (Problem::Vc, KernelAmortized) => per_k(ks, |k| Ok(VcKernel::new(n, k, Variant::Amortized))),
        (Problem::Vc, KernelWorstcase) => per_k(ks, |k| Ok(VcKernel::new(n, k, Variant::WorstCase))),
        (Problem::Vc, Branchtree) => per_k(ks, |k| BranchTree::new(k, 2, params.seed).map_err(|e| err(&e))),
        (Problem::Cvc, _) => per_k(ks, |k| Ok(CvcKernel::new(n, k))),
        (Problem::Eds, _) => per_k(ks, |k| Ok(EdsKernel::new(n, k))),
        (Problem::Hs, Hskernel) => per_k(ks, |k| GoodSetIndex::new(k, params.d).map_err(|e| err(&e))),
        (Problem::Hs, Branchtree) => per_k(ks, |k| BranchTree::new(k, params.d, params.seed).map_err(|e| err(&e))),
        (Problem::Fvs, _) => per_k(ks, |k| FvsState::new(n, k).map_err(|e| err(&e))),
        (Problem::Mlst, _) => per_k(ks, |k| Ok(MlstState::new(n, k))),
        (Problem::Kpath, KpathExh) => per_k(ks, |k| KPathState::new(n, k, Mode::Exhaustive).map_err(|e| err(&e))),
        (Problem::Kpath, _) => {
            per_k(ks, |k| KPathState::new(n, k, Mode::Randomized { epsilon: params.epsilon, seed: params.seed }).map_err(|e| err(&e)))
        }
        (Problem::Densesub, _) => per_k(ks, |k| DenseSubState::new(n, k, params.delta, dense_mode(n)).map_err(|e| err(&e))),
        (Problem::Ecc, _) => Ok(Box::new(EccSolver(EccState::new(n, params.g).map_err(|e| err(&e))?))),
        (Problem::Plc, _) => Ok(Box::new(PlcSolver(PlcState::new(params.g).map_err(|e| err(&e))?))),
        _ => unreachable!("strategy list checked above"),
    }
}
