//! Workload generators.

use super::run::HarnessError;
use super::solvers::{canonical_set, Instance, Params, Problem};
use super::trace::{Event, TraceFile};
use crate::fvs::FvsState;
use crate::oracle::{self, GraphSnapshot, OraclePoint};
use crate::promisekernels::Point;
use indexmap::IndexSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Random,
    /// Hammers the current high-degree vertices.
    Adversarial,
    /// Keeps a solution of size ≤ g at every prefix (ecc, plc).
    Promise,
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Model::Random),
            "adversarial" => Ok(Model::Adversarial),
            "promise" => Ok(Model::Promise),
            _ => Err(format!("unknown model {s:?}")),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Random => "random",
            Model::Adversarial => "adversarial",
            Model::Promise => "promise",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenConfig {
    pub problem: Problem,
    /// Vertex count, universe size, or the cap on live points for plc.
    pub n: usize,
    pub k: usize,
    pub ops: usize,
    pub model: Model,
    pub params: Params,
    /// A query after every this many updates.
    pub query_every: usize,
}

const TRIES: usize = 10_000;

struct Gen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    inst: Instance,
    target: usize,
    /// Live edges in a sampling order that depends only on the trace so far.
    edges: IndexSet<(u32, u32)>,
}

impl Gen {
    fn unsat(msg: impl Into<String>) -> HarnessError {
        HarnessError::Unsatisfiable(msg.into())
    }

    fn pair(&mut self) -> (u32, u32) {
        let n = self.cfg.n as u32;
        loop {
            let (u, v) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
            if u != v {
                return (u.min(v), u.max(v));
            }
        }
    }

    fn fits_degree(&self, u: u32, v: u32) -> bool {
        self.cfg.problem != Problem::Densesub
            || (self.inst.graph.degree(u) < self.cfg.params.delta && self.inst.graph.degree(v) < self.cfg.params.delta)
    }

    fn toggle(&mut self, u: u32, v: u32) -> Option<Event> {
        if self.inst.graph.has_edge(u, v) {
            Some(Event::Delete(u, v))
        } else if self.fits_degree(u, v) {
            Some(Event::Insert(u, v))
        } else {
            None
        }
    }

    fn random_edge_op(&mut self) -> Event {
        let m = self.inst.graph.m();
        let p_insert = if m < self.target { 0.7 } else { 0.3 };
        if m == 0 || self.rng.gen_bool(p_insert) {
            for _ in 0..TRIES {
                let (u, v) = self.pair();
                if !self.inst.graph.has_edge(u, v) && self.fits_degree(u, v) {
                    return Event::Insert(u, v);
                }
            }
        }
        let i = self.rng.gen_range(0..self.edges.len());
        let (u, v) = self.edges[i];
        Event::Delete(u, v)
    }

    fn adversarial_edge_op(&mut self, fvs: &mut Option<FvsState>) -> Event {
        let n = self.cfg.n as u32;
        let hubs: Vec<u32> = match fvs {
            Some(st) => st.top().high_degree_set(),
            None => {
                let max = (0..n).map(|v| self.inst.graph.degree(v)).max().unwrap_or(0);
                (0..n).filter(|&v| self.inst.graph.degree(v) == max && max > 0).collect()
            }
        };
        for _ in 0..TRIES {
            let Some(&h) = hubs.choose(&mut self.rng) else {
                break;
            };
            let v = self.rng.gen_range(0..n);
            if v != h {
                if let Some(e) = self.toggle(h.min(v), h.max(v)) {
                    return e;
                }
            }
        }
        self.random_edge_op()
    }

    fn ecc_promise_op(&mut self) -> Result<Event, HarnessError> {
        for _ in 0..TRIES {
            let (u, v) = self.pair();
            let e = self.toggle(u, v).expect("no degree bound for ecc");
            let mut next = self.inst.clone();
            next.apply(&e).expect("toggle is valid");
            let g = GraphSnapshot::new(next.n(), next.edges());
            if oracle::oracle_ecc(&g, self.cfg.params.g).map_err(|e| HarnessError::Other(e.to_string()))?.is_some() {
                return Ok(e);
            }
        }
        Err(Self::unsat("no promise-preserving edge toggle found"))
    }

    fn set_op(&mut self) -> Event {
        let n = self.cfg.n as u32;
        if self.inst.family.is_empty() || (self.inst.family.len() < self.target && self.rng.gen_bool(0.7)) || self.rng.gen_bool(0.3) {
            for _ in 0..TRIES {
                let size = self.rng.gen_range(1..=self.cfg.params.d);
                let s = canonical_set(&(0..size).map(|_| self.rng.gen_range(0..n)).collect::<Vec<u32>>());
                if !self.inst.family.contains(&s) {
                    return Event::SetInsert(s);
                }
            }
        }
        let sets: Vec<Vec<u32>> = self.inst.family.iter().cloned().collect();
        Event::SetDelete(sets.choose(&mut self.rng).expect("nonempty family").clone())
    }

    fn point_op(&mut self, candidates: &[Point]) -> Event {
        let full = self.inst.points.len() >= self.cfg.n;
        let absent: Vec<Point> = candidates.iter().copied().filter(|p| !self.inst.points.contains(p)).collect();
        if !full && !absent.is_empty() && (self.inst.points.is_empty() || self.rng.gen_bool(0.6)) {
            return Event::PointInsert(*absent.choose(&mut self.rng).expect("nonempty"));
        }
        let present: Vec<Point> = self.inst.points.iter().copied().collect();
        Event::PointDelete(*present.choose(&mut self.rng).expect("points present"))
    }
}

/// Generates a deterministic trace for the configuration.
pub fn gen(cfg: GenConfig) -> Result<TraceFile, HarnessError> {
    let p = cfg.problem;
    let unsat = |m: &str| Gen::unsat(m);
    if p.takes_edges() && cfg.n < 2 {
        return Err(unsat("graph problems need n ≥ 2"));
    }
    if cfg.n == 0 {
        return Err(unsat("n must be positive"));
    }
    if cfg.query_every == 0 {
        return Err(unsat("query interval must be positive"));
    }
    match cfg.model {
        Model::Promise if !matches!(p, Problem::Ecc | Problem::Plc) => return Err(unsat("the promise model applies to ecc and plc")),
        Model::Promise if p == Problem::Ecc && cfg.n > oracle::MAX_N => return Err(unsat("promise certification needs n ≤ 20")),
        Model::Promise if p == Problem::Plc && cfg.n > oracle::MAX_POINTS => return Err(unsat("promise certification needs ≤ 12 points")),
        Model::Adversarial if !p.takes_edges() => return Err(unsat("the adversarial model applies to graph problems")),
        _ => {}
    }
    if p == Problem::Densesub && cfg.params.delta == 0 {
        return Err(unsat("degree bound must be positive"));
    }
    if p == Problem::Hs && cfg.params.d == 0 {
        return Err(unsat("arity must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.params.seed);
    let target = rng.gen_range(cfg.n / 2..=2 * cfg.n);
    let mut g = Gen { cfg, rng, inst: Instance::new(p, cfg.n, cfg.params), target, edges: IndexSet::new() };
    let mut fvs = (p == Problem::Fvs && cfg.model == Model::Adversarial)
        .then(|| FvsState::new(cfg.n, cfg.k).map_err(|e| Gen::unsat(e.to_string())))
        .transpose()?;
    let candidates: Vec<Point> = if p != Problem::Plc {
        Vec::new()
    } else if cfg.model == Model::Promise {
        // Integer points on g random lines y = a·x + b.
        let mut lines = Vec::new();
        while lines.len() < cfg.params.g {
            let l = (g.rng.gen_range(-2i64..=2), g.rng.gen_range(-3i64..=3));
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
        let mut pts: Vec<Point> = lines.iter().flat_map(|&(a, b)| (-3..=3).map(move |x| Point::int(x, a * x + b))).collect();
        pts.sort();
        pts.dedup();
        pts
    } else {
        (-2..=2).flat_map(|x| (-2..=2).map(move |y| Point::int(x, y))).collect()
    };

    let mut t = TraceFile::new(cfg.n);
    let pr = cfg.params;
    t.events.push(Event::Comment(format!(
        " gen {p} model={} n={} k={} ops={} seed={} d={} delta={} g={}",
        cfg.model, cfg.n, cfg.k, cfg.ops, pr.seed, pr.d, pr.delta, pr.g
    )));
    for op in 0..cfg.ops {
        let e = match (p, cfg.model) {
            (Problem::Hs, _) => g.set_op(),
            (Problem::Plc, _) => g.point_op(&candidates),
            (Problem::Ecc, Model::Promise) => g.ecc_promise_op()?,
            (_, Model::Adversarial) => g.adversarial_edge_op(&mut fvs),
            _ => g.random_edge_op(),
        };
        g.inst.apply(&e).expect("generated update is valid");
        match e {
            Event::Insert(u, v) => {
                g.edges.insert((u, v));
            }
            Event::Delete(u, v) => {
                g.edges.swap_remove(&(u, v));
            }
            _ => {}
        }
        if let Some(st) = fvs.as_mut() {
            match e {
                Event::Insert(u, v) => st.insert_edge(u, v).expect("valid"),
                Event::Delete(u, v) => st.delete_edge(u, v).expect("valid"),
                _ => {}
            }
        }
        if p == Problem::Plc && cfg.model == Model::Promise {
            let pts: Vec<OraclePoint> = g.inst.points.iter().map(|q| (q.x, q.y)).collect();
            if oracle::oracle_plc(&pts, pr.g).map_err(|e| HarnessError::Other(e.to_string()))?.is_none() {
                return Err(unsat("points on g lines not coverable by g lines"));
            }
        }
        t.events.push(e);
        if (op + 1) % cfg.query_every == 0 {
            t.events.push(Event::Query(cfg.k));
        }
    }
    Ok(t)
}
