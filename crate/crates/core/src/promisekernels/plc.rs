//! Point line cover under the promise that few lines suffice.

use num_integer::Integer;
use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type Rat = Ratio<i64>;

/// Exact rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: Rat::from_integer(x), y: Rat::from_integer(y) }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} {}/{}", self.x.numer(), self.x.denom(), self.y.numer(), self.y.denom())
    }
}

/// Line a·x + b·y = c with integer coefficients, gcd 1, first nonzero of (a, b) positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("line coefficient overflow")
}

impl Line {
    fn normalize(a: Ratio<i128>, b: Ratio<i128>, c: Ratio<i128>) -> Line {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let (mut a, mut b, mut c) = ((a * l).to_integer(), (b * l).to_integer(), (c * l).to_integer());
        let g = a.gcd(&b).gcd(&c);
        assert!(g != 0, "degenerate line");
        a /= g;
        b /= g;
        c /= g;
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Line { a: to_i64(a), b: to_i64(b), c: to_i64(c) }
    }

    /// Line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Line {
        assert!(p != q, "line through coincident points");
        let (px, py, qx, qy) = (wide(p.x), wide(p.y), wide(q.x), wide(q.y));
        let a = qy - py;
        let b = px - qx;
        let c = a * px + b * py;
        Line::normalize(a, b, c)
    }

    /// Horizontal line through p.
    pub fn horizontal(p: &Point) -> Line {
        Line::normalize(Ratio::from_integer(0), Ratio::from_integer(1), wide(p.y))
    }

    pub fn contains(&self, p: &Point) -> bool {
        let lhs = Ratio::from_integer(self.a as i128) * wide(p.x) + Ratio::from_integer(self.b as i128) * wide(p.y);
        lhs == Ratio::from_integer(self.c as i128)
    }
}

fn wide(r: Rat) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlcError {
    #[error("point already present")]
    DuplicatePoint,
    #[error("point not present")]
    NoSuchPoint,
    #[error("promise violated: more than g lines needed")]
    PromiseViolated,
    #[error("promise bound g = {0} unsupported")]
    BadBound(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlcAnswer {
    Cover(Vec<Line>),
    No,
    Unknown,
}

/// Heavy lines (more than g points) and the points on no heavy line.
#[derive(Clone, Debug)]
pub struct PlcState {
    g: usize,
    heavy: BTreeMap<Line, BTreeSet<Point>>,
    residual: BTreeSet<Point>,
    all: BTreeSet<Point>,
    mutations: u64,
}

impl PlcState {
    pub fn new(g: usize) -> Result<Self, PlcError> {
        if g == 0 || g > 64 {
            return Err(PlcError::BadBound(g));
        }
        Ok(PlcState { g, heavy: BTreeMap::new(), residual: BTreeSet::new(), all: BTreeSet::new(), mutations: 0 })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    pub fn heavy_lines(&self) -> Vec<Line> {
        self.heavy.keys().copied().collect()
    }

    pub fn residual(&self) -> Vec<Point> {
        self.residual.iter().copied().collect()
    }

    pub fn points(&self) -> Vec<Point> {
        self.all.iter().copied().collect()
    }

    /// True while the promise evidently fails.
    pub fn degraded(&self) -> bool {
        self.heavy.len() > self.g || self.residual.len() > self.g * self.g
    }

    /// Lines through p and another point, with their point counts.
    fn lines_through(&self, p: &Point) -> BTreeMap<Line, usize> {
        let mut tally: BTreeMap<Line, usize> = BTreeMap::new();
        for q in &self.all {
            if q != p {
                *tally.entry(Line::through(p, q)).or_insert(1) += 1;
            }
        }
        tally
    }

    fn place(&mut self, p: Point) {
        let mut covered = false;
        for (line, pts) in self.heavy.iter_mut() {
            if line.contains(&p) {
                pts.insert(p);
                self.mutations += 1;
                covered = true;
            }
        }
        for (line, count) in self.lines_through(&p) {
            if count > self.g && !self.heavy.contains_key(&line) {
                let on: BTreeSet<Point> = self.all.iter().filter(|r| line.contains(r)).copied().collect();
                for q in &on {
                    self.residual.remove(q);
                }
                self.mutations += on.len() as u64 + 1;
                self.heavy.insert(line, on);
                covered = true;
            }
        }
        if !covered {
            self.residual.insert(p);
            self.mutations += 1;
        }
    }

    /// Applies the insertion; reports PromiseViolated if the state is now degraded.
    pub fn insert(&mut self, p: Point) -> Result<(), PlcError> {
        if !self.all.insert(p) {
            return Err(PlcError::DuplicatePoint);
        }
        let before = self.degraded();
        self.place(p);
        if self.degraded() && !before {
            return Err(PlcError::PromiseViolated);
        }
        Ok(())
    }

    pub fn delete(&mut self, p: Point) -> Result<(), PlcError> {
        if !self.all.remove(&p) {
            return Err(PlcError::NoSuchPoint);
        }
        let before = self.degraded();
        if self.residual.remove(&p) {
            self.mutations += 1;
        }
        let lines: Vec<Line> = self.heavy.iter().filter(|(_, pts)| pts.contains(&p)).map(|(l, _)| *l).collect();
        for line in lines {
            let pts = self.heavy.get_mut(&line).expect("heavy line");
            pts.remove(&p);
            self.mutations += 1;
            if pts.len() <= self.g {
                let pts = self.heavy.remove(&line).expect("heavy line");
                for q in pts {
                    if !self.heavy.values().any(|other| other.contains(&q)) {
                        self.residual.insert(q);
                        self.mutations += 1;
                    }
                }
            }
        }
        if self.degraded() && !before {
            return Err(PlcError::PromiseViolated);
        }
        Ok(())
    }

    /// Rebuilds from the current points.
    pub fn rebuild(&mut self) {
        let pts: Vec<Point> = self.all.iter().copied().collect();
        self.heavy.clear();
        self.residual.clear();
        for p in pts {
            self.place(p);
        }
    }

    /// Cover with at most k lines. Heavy lines are forced; the residual is solved exactly.
    pub fn query(&self, k: usize) -> PlcAnswer {
        if self.degraded() {
            return PlcAnswer::Unknown;
        }
        let budget = k.min(self.g);
        if self.heavy.len() > budget {
            return if k <= self.g { PlcAnswer::No } else { PlcAnswer::Unknown };
        }
        let pts: Vec<Point> = self.residual.iter().copied().collect();
        let mut chosen = Vec::new();
        let mut best = None;
        for b in 0..=budget - self.heavy.len() {
            if cover_points(&pts, b, &mut chosen, &mut best) {
                break;
            }
        }
        match best {
            Some(lines) => {
                let mut out: Vec<Line> = self.heavy.keys().copied().collect();
                out.extend(lines);
                out.sort();
                out.dedup();
                PlcAnswer::Cover(out)
            }
            None if k > self.g => PlcAnswer::Unknown,
            None => PlcAnswer::No,
        }
    }
}

/// Branching on the first uncovered point: every line through it and another
/// uncovered point, or a horizontal line through it alone.
fn cover_points(pts: &[Point], budget: usize, chosen: &mut Vec<Line>, best: &mut Option<Vec<Line>>) -> bool {
    let first = pts.iter().position(|p| !chosen.iter().any(|l| l.contains(p)));
    let Some(i) = first else {
        *best = Some(chosen.clone());
        return true;
    };
    if budget == 0 {
        return false;
    }
    let p = pts[i];
    let mut tried = BTreeSet::new();
    for q in &pts[i + 1..] {
        if chosen.iter().any(|l| l.contains(q)) {
            continue;
        }
        let line = Line::through(&p, q);
        if !tried.insert(line) {
            continue;
        }
        chosen.push(line);
        let ok = cover_points(pts, budget - 1, chosen, best);
        chosen.pop();
        if ok {
            return true;
        }
    }
    chosen.push(Line::horizontal(&p));
    let ok = cover_points(pts, budget - 1, chosen, best);
    chosen.pop();
    ok
}
