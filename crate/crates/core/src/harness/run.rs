//! Replay, oracle cross-checking and strategy comparison.

use super::solvers::{build_solver, Answer, Instance, Params, Problem, Strategy, UpdateError, Witness};
use super::trace::{Event, ParseError, TraceFile};
use crate::oracle::{self, check, GraphSnapshot, MlstOracle, OraclePoint};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("step {step}: {msg}")]
    Step { step: usize, msg: String },
    #[error("step {step}: oracle mismatch, got {got}, want {want}")]
    OracleMismatch { step: usize, got: String, want: String },
    #[error("step {step}: promise violated")]
    PromiseViolated { step: usize },
    #[error("answer digests differ: {0}")]
    DigestMismatch(String),
    #[error("unsatisfiable parameters: {0}")]
    Unsatisfiable(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Other(String),
}

impl HarnessError {
    /// 0 success, 2 parse error, 3 oracle mismatch, 4 promise violation; 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse(_) | HarnessError::Step { .. } | HarnessError::Config(_) | HarnessError::Unsatisfiable(_) => 2,
            HarnessError::OracleMismatch { .. } | HarnessError::DigestMismatch(_) => 3,
            HarnessError::PromiseViolated { .. } => 4,
            HarnessError::Other(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplayOptions {
    pub params: Params,
    pub check_oracle: bool,
}

/// Counts per power-of-two nanosecond bucket: bucket i holds [2^i, 2^(i+1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub buckets: [u64; 128],
    pub count: u64,
    pub total_ns: u128,
}

impl Default for Histogram {
    fn default() -> Self {
        Histogram { buckets: [0; 128], count: 0, total_ns: 0 }
    }
}

impl Histogram {
    pub fn record(&mut self, ns: u128) {
        let b = 127 - ns.max(1).leading_zeros();
        self.buckets[b as usize] += 1;
        self.count += 1;
        self.total_ns += ns;
    }

    pub fn render(&self) -> String {
        self.buckets.iter().enumerate().filter(|(_, &c)| c > 0).map(|(b, c)| format!("2^{b}ns:{c}")).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub problem: String,
    pub strategy: String,
    pub updates: u64,
    pub queries: u64,
    /// Answer lines in query order.
    pub output: Vec<String>,
    /// SHA-256 over the verdict lines.
    pub digest: String,
    pub counters: BTreeMap<String, u64>,
    pub update_latency: Histogram,
    pub query_latency: Histogram,
    /// First step whose query answered UNKNOWN.
    pub promise_violation: Option<usize>,
}

impl BenchReport {
    pub fn total_ns(&self) -> u128 {
        self.update_latency.total_ns + self.query_latency.total_ns
    }

    /// Copy with the timing histograms cleared.
    pub fn without_timing(&self) -> BenchReport {
        BenchReport { update_latency: Histogram::default(), query_latency: Histogram::default(), ..self.clone() }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "problem {} strategy {}", self.problem, self.strategy).unwrap();
        writeln!(s, "updates {} queries {} total {:.3} ms", self.updates, self.queries, self.total_ns() as f64 / 1e6).unwrap();
        writeln!(s, "digest {}", self.digest).unwrap();
        for (k, v) in &self.counters {
            writeln!(s, "counter {k} {v}").unwrap();
        }
        writeln!(s, "update latency {}", self.update_latency.render()).unwrap();
        writeln!(s, "query latency {}", self.query_latency.render()).unwrap();
        if let Some(step) = self.promise_violation {
            writeln!(s, "promise violated at step {step}").unwrap();
        }
        s
    }

    /// Machine-readable key=value lines.
    pub fn kv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "problem={}\nstrategy={}", self.problem, self.strategy).unwrap();
        writeln!(s, "updates={}\nqueries={}\ndigest={}", self.updates, self.queries, self.digest).unwrap();
        writeln!(s, "total_ns={}", self.total_ns()).unwrap();
        for (k, v) in &self.counters {
            writeln!(s, "counter.{k}={v}").unwrap();
        }
        if let Some(step) = self.promise_violation {
            writeln!(s, "promise_violation={step}").unwrap();
        }
        s
    }
}

fn snapshot(inst: &Instance) -> GraphSnapshot {
    GraphSnapshot::new(inst.n(), inst.edges())
}

fn vertices(a: &Answer) -> &[u32] {
    match a {
        Answer::Yes { witness: Witness::Vertices(v), .. } => v,
        _ => &[],
    }
}

fn edges(a: &Answer) -> &[(u32, u32)] {
    match a {
        Answer::Yes { witness: Witness::Edges(e), .. } => e,
        _ => &[],
    }
}

/// Compares an answer with the oracle; Err holds (want, reason).
fn oracle_check(inst: &Instance, k: usize, a: &Answer) -> Result<Result<(), String>, HarnessError> {
    let oe = |e: oracle::OracleError| HarnessError::Other(e.to_string());
    let size = |a: &Answer| match a {
        Answer::Yes { size, .. } => Some(*size),
        _ => None,
    };
    let mismatch = |want: String| Ok(Err(want));
    let g = snapshot(inst);
    let expect_size = |want: Option<usize>, valid: bool| -> Result<Result<(), String>, HarnessError> {
        if size(a) != want {
            return mismatch(want.map_or("NO".into(), |s| format!("YES {s}")));
        }
        if want.is_some() && !valid {
            return mismatch("a valid witness".into());
        }
        Ok(Ok(()))
    };
    match inst.problem {
        Problem::Vc => {
            let want = oracle::oracle_vc(&g, k).map_err(oe)?;
            expect_size(want.map(|w| w.len()), check::is_vertex_cover(&g.edges, vertices(a)))
        }
        Problem::Cvc => {
            let want = oracle::oracle_cvc(&g, k).map_err(oe)?;
            expect_size(want.map(|w| w.len()), check::is_connected_vertex_cover(&g, vertices(a)))
        }
        Problem::Eds => {
            let want = oracle::oracle_eds(&g, k).map_err(oe)?;
            let ok = edges(a).iter().all(|&(u, v)| inst.graph.has_edge(u, v)) && check::is_edge_dominating(&g.edges, edges(a));
            expect_size(want.map(|w| w.len()), ok)
        }
        Problem::Hs => {
            let family: Vec<Vec<u32>> = inst.family.iter().cloned().collect();
            let want = oracle::oracle_hs(&family, k).map_err(oe)?;
            expect_size(want.map(|w| w.len()), check::is_hitting_set(&family, vertices(a)))
        }
        Problem::Fvs => {
            let want = oracle::oracle_fvs(&g, k).map_err(oe)?;
            expect_size(want.map(|w| w.len()), check::is_fvs(&g, vertices(a)))
        }
        Problem::Mlst => {
            let want = match oracle::oracle_mlst(&g).map_err(oe)? {
                MlstOracle::Best(best, _) if best >= k => Some(k),
                _ => None,
            };
            let t = edges(a);
            expect_size(want, check::is_spanning_tree(&g, t) && oracle::tree_leaves(g.n, t) >= k)
        }
        Problem::Kpath => {
            let want = oracle::oracle_kpath(&g, k).map_err(oe)?.map(|_| k);
            let p = vertices(a);
            expect_size(want, p.len() == k && check::is_path(&g, p))
        }
        Problem::Densesub => {
            let want = oracle::oracle_densesub(&g, k).map_err(oe)?.map(|(e, _)| e);
            let v = vertices(a);
            let mut distinct = v.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            expect_size(want, v.len() == k && distinct.len() == k && check::induced_edges(&g, v) == want.unwrap_or(0))
        }
        Problem::Ecc => {
            // UNKNOWN is only correct when no cover of size ≤ g exists.
            if *a == Answer::Unknown {
                let promise = oracle::oracle_ecc(&g, inst.params.g).map_err(oe)?;
                return Ok(if promise.is_some() { Err("a definitive answer".into()) } else { Ok(()) });
            }
            let want = oracle::oracle_ecc(&g, k).map_err(oe)?;
            let ok = match a {
                Answer::Yes { witness: Witness::Cliques(c), .. } => check::is_clique_cover(&g, c),
                _ => false,
            };
            expect_size(want.map(|w| w.len()), ok)
        }
        Problem::Plc => {
            let pts: Vec<OraclePoint> = inst.points.iter().map(|p| (p.x, p.y)).collect();
            if *a == Answer::Unknown {
                let promise = oracle::oracle_plc(&pts, inst.params.g).map_err(oe)?;
                return Ok(if promise.is_some() && k <= inst.params.g { Err("a definitive answer".into()) } else { Ok(()) });
            }
            let want = oracle::oracle_plc(&pts, k).map_err(oe)?;
            let ok = match a {
                Answer::Yes { witness: Witness::Lines(lines), .. } => {
                    let groups: Vec<Vec<usize>> = lines
                        .iter()
                        .map(|l| inst.points.iter().enumerate().filter(|(_, p)| l.contains(p)).map(|(i, _)| i).collect())
                        .collect();
                    check::is_line_cover(&pts, &groups)
                }
                _ => false,
            };
            expect_size(want.map(|w| w.len()), ok)
        }
    }
}

/// Applies every event of the trace in order and answers its queries.
pub fn replay(trace: &TraceFile, problem: Problem, strategy: Strategy, opts: ReplayOptions) -> Result<BenchReport, HarnessError> {
    let mut report = BenchReport { problem: problem.name().into(), strategy: strategy.name().into(), ..Default::default() };
    let mut hasher = Sha256::new();
    if let Some(n) = trace.n {
        let mut inst = Instance::new(problem, n, opts.params);
        let mut solver = build_solver(problem, strategy, n, &trace.query_ks(), opts.params).map_err(HarnessError::Config)?;
        let mut step = 0;
        for e in &trace.events {
            if matches!(e, Event::Comment(_)) {
                continue;
            }
            step += 1;
            if let Event::Query(k) = *e {
                let t = Instant::now();
                let a = solver.query(&inst, k);
                report.query_latency.record(t.elapsed().as_nanos());
                report.queries += 1;
                if opts.check_oracle {
                    if let Err(want) = oracle_check(&inst, k, &a)? {
                        return Err(HarnessError::OracleMismatch { step, got: a.lines().join(" / "), want });
                    }
                }
                if a == Answer::Unknown && report.promise_violation.is_none() {
                    report.promise_violation = Some(step);
                }
                hasher.update(a.verdict().as_bytes());
                hasher.update(b"\n");
                report.output.extend(a.lines());
            } else {
                inst.apply(e).map_err(|err| match err {
                    UpdateError::Invalid(msg) => HarnessError::Step { step, msg },
                    UpdateError::DegreeBound(_) => HarnessError::PromiseViolated { step },
                })?;
                let t = Instant::now();
                solver.update(e);
                report.update_latency.record(t.elapsed().as_nanos());
                report.updates += 1;
            }
        }
        report.counters.insert("mutations".into(), solver.mutations());
    }
    report.digest = hex::encode(hasher.finalize());
    Ok(report)
}

/// Replays the trace under each strategy and checks that the answer digests agree.
pub fn bench(trace: &TraceFile, problem: Problem, strategies: &[Strategy], params: Params) -> Result<Vec<BenchReport>, HarnessError> {
    let opts = ReplayOptions { params, check_oracle: false };
    let reports = strategies.iter().map(|&s| replay(trace, problem, s, opts)).collect::<Result<Vec<_>, _>>()?;
    if let Some(first) = reports.first() {
        if let Some(r) = reports.iter().find(|r| r.digest != first.digest) {
            return Err(HarnessError::DigestMismatch(format!("{} {} vs {} {}", first.strategy, first.digest, r.strategy, r.digest)));
        }
    }
    Ok(reports)
}

/// Comparison table; speedups are relative to the scratch row when present.
pub fn comparison_table(reports: &[BenchReport]) -> String {
    let scratch = reports.iter().find(|r| r.strategy == "scratch").map(BenchReport::total_ns);
    let mut s = format!("{:<18} {:>10} {:>12} {:>14} {:>9}  digest\n", "strategy", "queries", "total_ms", "mutations", "speedup");
    for r in reports {
        let speedup = scratch.map_or("-".to_string(), |b| format!("{:.2}", b as f64 / r.total_ns().max(1) as f64));
        writeln!(
            s,
            "{:<18} {:>10} {:>12.3} {:>14} {:>9}  {}",
            r.strategy,
            r.queries,
            r.total_ns() as f64 / 1e6,
            r.counters.get("mutations").copied().unwrap_or(0),
            speedup,
            &r.digest[..16]
        )
        .unwrap();
    }
    s
}
