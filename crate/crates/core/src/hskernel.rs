//! Dynamic good-set kernel for d-Hitting Set.
//!
//! A set S of size ℓ is (ℓ, r)-good when it is in F or lies in at least
//! ν_r = r!(k+1)^r sets of size ℓ+r that are (ℓ+r, r)-strong, and a good set of
//! size ℓ′ is (ℓ′, r)-strong when it has no (ℓ′−j, j)-good subset for j < r.
//! The kernel F′ holds the good sets with no good proper subset; every hitting
//! set of size ≤ k hits all good sets, so F′ and F have the same answers.
//!
//! Each record stores m(S) = the largest r with S (|S|, r)-strong (0 when S is
//! not good, capped at |S|−1), and S sits in L_{T,r} for every T ⊂ S with
//! |T| = |S|−r and 1 ≤ r ≤ m(S). An update re-derives m for the sets whose
//! inputs changed; the four procedure kinds are the four ways m can move.

use indexmap::IndexSet;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

pub const MAX_D: usize = 4;
pub const MAX_K: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HsError {
    #[error("unsupported parameters k = {0}, d = {1}")]
    BadParameters(usize, usize),
    #[error("set of size {0} exceeds d")]
    SetTooLarge(usize),
    #[error("empty set")]
    EmptySet,
    #[error("set already in the family")]
    DuplicateSet,
    #[error("set not in the family")]
    NoSuchSet,
}

/// Which of the four procedures a recorded call corresponds to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Procedure {
    /// A set becomes good.
    DownIns,
    /// A good set loses strongness above some level.
    UpWeak,
    /// A set stops being good.
    DownDel,
    /// A good set gains strongness.
    UpStrong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub procedure: Procedure,
    pub set: Vec<u32>,
    pub depth: usize,
    /// Strong level before and after.
    pub from: usize,
    pub to: usize,
}

/// Read-only view of one record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordView {
    pub in_family: bool,
    pub good: bool,
    /// counts[r-1] = c(S, r).
    pub counts: Vec<u64>,
    pub strong_up_to: usize,
}

type Id = u32;

#[derive(Clone, Debug)]
struct Rec {
    key: Vec<u32>,
    in_f: bool,
    good: bool,
    m: usize,
    in_fprime: bool,
    /// lists[r-1] = L_{S,r}.
    lists: Vec<IndexSet<Id>>,
    /// Update in which the record was created.
    born: u64,
}

#[derive(Clone, Debug)]
pub struct GoodSetIndex {
    k: usize,
    d: usize,
    nu: Vec<u64>,
    recs: Vec<Option<Rec>>,
    free: Vec<Id>,
    ids: HashMap<Vec<u32>, Id>,
    family: BTreeSet<Vec<u32>>,
    fprime: BTreeSet<Vec<u32>>,
    epoch: u64,
    /// Original membership of every list slot edited in the current update.
    journal: HashMap<(Id, usize, Id), bool>,
    good_before: HashMap<Id, bool>,
    touched: Vec<Id>,
    mutations: u64,
    last_mutations: u64,
    depth_now: usize,
    last_depth: usize,
    max_depth: usize,
    trace: Option<Vec<Call>>,
}

/// ν_r = r!(k+1)^r for r = 0..=d.
fn nu_table(k: usize, d: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    for r in 1..=d as u64 {
        let prev = *out.last().unwrap();
        out.push(prev * r * (k as u64 + 1));
    }
    out
}

fn subsets_of_size(s: &[u32], size: usize) -> Vec<Vec<u32>> {
    let n = s.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

impl GoodSetIndex {
    pub fn new(k: usize, d: usize) -> Result<Self, HsError> {
        if d == 0 || d > MAX_D || k > MAX_K {
            return Err(HsError::BadParameters(k, d));
        }
        Ok(GoodSetIndex {
            k,
            d,
            nu: nu_table(k, d),
            recs: Vec::new(),
            free: Vec::new(),
            ids: HashMap::new(),
            family: BTreeSet::new(),
            fprime: BTreeSet::new(),
            epoch: 0,
            journal: HashMap::new(),
            good_before: HashMap::new(),
            touched: Vec::new(),
            mutations: 0,
            last_mutations: 0,
            depth_now: 0,
            last_depth: 0,
            max_depth: 0,
            trace: None,
        })
    }

    /// Builds the index for a whole family at once, one superset size at a time.
    pub fn static_build(family: &[Vec<u32>], k: usize, d: usize) -> Result<Self, HsError> {
        let mut idx = GoodSetIndex::new(k, d)?;
        let mut canon = BTreeSet::new();
        for f in family {
            canon.insert(idx.canonical(f)?);
        }
        idx.epoch = 1;
        for q in &canon {
            let id = idx.get_or_create(q);
            idx.rec_mut(id).in_f = true;
        }
        idx.family = canon;
        for s in (1..=d).rev() {
            let mut members: Vec<(Vec<u32>, Id)> =
                idx.ids.iter().filter(|(key, _)| key.len() == s).map(|(key, &id)| (key.clone(), id)).collect();
            members.sort_unstable();
            for &(_, id) in &members {
                let good = idx.compute_good(id);
                idx.rec_mut(id).good = good;
            }
            // Level r of every size-s set is final once level r−1 has been filled in for all of them.
            for r in 1..s {
                for (key, id) in &members {
                    let rec = idx.rec(*id);
                    if !rec.good || rec.m != r - 1 {
                        continue;
                    }
                    if r > 1 && idx.blocked_at(key, r - 1) {
                        continue;
                    }
                    for t in subsets_of_size(key, s - r) {
                        let tid = idx.get_or_create(&t);
                        idx.rec_mut(tid).lists[r - 1].insert(*id);
                        idx.mutations += 1;
                    }
                    idx.rec_mut(*id).m = r;
                }
            }
        }
        let keys: Vec<(Vec<u32>, Id)> = idx.ids.iter().map(|(key, &id)| (key.clone(), id)).collect();
        for (key, id) in keys {
            if idx.rec(id).good && !idx.has_good_proper_subset(&key) {
                idx.rec_mut(id).in_fprime = true;
                idx.fprime.insert(key);
            }
        }
        idx.touched.clear();
        Ok(idx)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn family(&self) -> &BTreeSet<Vec<u32>> {
        &self.family
    }

    /// The kernel family F′.
    pub fn f_prime(&self) -> &BTreeSet<Vec<u32>> {
        &self.fprime
    }

    /// Elements of F′.
    pub fn universe_prime(&self) -> BTreeSet<u32> {
        self.fprime.iter().flatten().copied().collect()
    }

    pub fn mutations(&self) -> u64 {
        self.mutations
    }

    /// Mutations performed by the most recent update.
    pub fn last_update_mutations(&self) -> u64 {
        self.last_mutations
    }

    /// Deepest procedure nesting in the most recent update.
    pub fn last_update_depth(&self) -> usize {
        self.last_depth
    }

    /// Deepest procedure nesting over all updates.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn record_count(&self) -> usize {
        self.ids.len()
    }

    /// Starts recording procedure calls; the returned trace covers the updates since.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<Call> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub fn record(&self, s: &[u32]) -> Option<RecordView> {
        let rec = self.rec(*self.ids.get(s)?);
        Some(RecordView {
            in_family: rec.in_f,
            good: rec.good,
            counts: rec.lists.iter().map(|l| l.len() as u64).collect(),
            strong_up_to: rec.m,
        })
    }

    /// Keys of all stored records, sorted.
    pub fn record_keys(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = self.ids.keys().cloned().collect();
        v.sort_unstable();
        v
    }

    /// Canonical text form: identical for identical logical states.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k {} d {}", self.k, self.d);
        for f in &self.family {
            let _ = writeln!(out, "F {f:?}");
        }
        let sorted: BTreeMap<&Vec<u32>, Id> = self.ids.iter().map(|(key, &id)| (key, id)).collect();
        for (key, id) in sorted {
            let rec = self.rec(id);
            let _ = write!(out, "R {key:?} f{} g{} m{} p{}", rec.in_f as u8, rec.good as u8, rec.m, rec.in_fprime as u8);
            for list in &rec.lists {
                let mut members: Vec<&Vec<u32>> = list.iter().map(|&x| &self.rec(x).key).collect();
                members.sort_unstable();
                let _ = write!(out, " {members:?}");
            }
            out.push('\n');
        }
        for f in &self.fprime {
            let _ = writeln!(out, "P {f:?}");
        }
        out
    }

    fn canonical(&self, q: &[u32]) -> Result<Vec<u32>, HsError> {
        let mut q = q.to_vec();
        q.sort_unstable();
        q.dedup();
        if q.is_empty() {
            return Err(HsError::EmptySet);
        }
        if q.len() > self.d {
            return Err(HsError::SetTooLarge(q.len()));
        }
        Ok(q)
    }

    fn rec(&self, id: Id) -> &Rec {
        self.recs[id as usize].as_ref().expect("live record")
    }

    fn rec_mut(&mut self, id: Id) -> &mut Rec {
        self.recs[id as usize].as_mut().expect("live record")
    }

    fn get_or_create(&mut self, key: &[u32]) -> Id {
        if let Some(&id) = self.ids.get(key) {
            return id;
        }
        let rec = Rec {
            key: key.to_vec(),
            in_f: false,
            good: false,
            m: 0,
            in_fprime: false,
            lists: vec![IndexSet::new(); self.d - key.len()],
            born: self.epoch,
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.recs[id as usize] = Some(rec);
                id
            }
            None => {
                self.recs.push(Some(rec));
                self.recs.len() as Id - 1
            }
        };
        self.ids.insert(key.to_vec(), id);
        self.touched.push(id);
        id
    }

    fn level_good(&self, id: Id, r: usize) -> bool {
        let rec = self.rec(id);
        rec.in_f || rec.lists[r - 1].len() as u64 >= self.nu[r]
    }

    fn compute_good(&self, id: Id) -> bool {
        let rec = self.rec(id);
        rec.in_f || (1..=rec.lists.len()).any(|r| rec.lists[r - 1].len() as u64 >= self.nu[r])
    }

    /// Some subset of size |s| − j is (|s|−j, j)-good.
    fn blocked_at(&self, s: &[u32], j: usize) -> bool {
        subsets_of_size(s, s.len() - j).iter().any(|t| self.ids.get(t).is_some_and(|&tid| self.level_good(tid, j)))
    }

    fn target_m(&self, id: Id, good: bool) -> usize {
        if !good {
            return 0;
        }
        let key = &self.rec(id).key;
        (1..key.len()).find(|&j| self.blocked_at(key, j)).unwrap_or(key.len()).min(key.len() - 1)
    }

    fn has_good_proper_subset(&self, s: &[u32]) -> bool {
        (1..s.len()).any(|size| {
            subsets_of_size(s, size).iter().any(|t| self.ids.get(t).is_some_and(|&tid| self.rec(tid).good))
        })
    }

    fn list_insert(&mut self, owner: Id, r: usize, member: Id) {
        self.journal.entry((owner, r, member)).or_insert(false);
        let added = self.rec_mut(owner).lists[r - 1].insert(member);
        debug_assert!(added);
        self.mutations += 1;
        self.touched.push(owner);
    }

    fn list_remove(&mut self, owner: Id, r: usize, member: Id) {
        self.journal.entry((owner, r, member)).or_insert(true);
        let removed = self.rec_mut(owner).lists[r - 1].swap_remove(&member);
        debug_assert!(removed);
        self.mutations += 1;
        self.touched.push(owner);
    }

    /// L_{S,r} as it was when the current update began.
    fn old_list(&self, owner: Id, r: usize) -> Vec<Id> {
        let mut out: Vec<Id> = self.rec(owner).lists[r - 1]
            .iter()
            .copied()
            .filter(|&x| self.journal.get(&(owner, r, x)).copied().unwrap_or(true))
            .collect();
        for (&(o, level, x), &orig) in &self.journal {
            if o == owner && level == r && orig && !self.rec(owner).lists[r - 1].contains(&x) {
                out.push(x);
            }
        }
        out.sort_unstable();
        out
    }

    /// Re-derives goodness and strong level of one set and propagates the consequences.
    fn resync(&mut self, id: Id, depth: usize) {
        let good = self.compute_good(id);
        let target = self.target_m(id, good);
        let (was_good, old_m) = {
            let rec = self.rec(id);
            (rec.good, rec.m)
        };
        if good == was_good && target == old_m {
            return;
        }
        let procedure = match (was_good, good) {
            (false, true) => Procedure::DownIns,
            (true, false) => Procedure::DownDel,
            _ if target < old_m => Procedure::UpWeak,
            _ => Procedure::UpStrong,
        };
        self.depth_now = self.depth_now.max(depth);
        self.touched.push(id);
        if good != was_good {
            self.good_before.entry(id).or_insert(was_good);
            self.rec_mut(id).good = good;
            self.mutations += 1;
        }
        let key = self.rec(id).key.clone();
        let mut flips: Vec<(Id, usize, bool)> = Vec::new();
        let mut m = old_m;
        if target > old_m {
            for r in old_m + 1..=target {
                for t in subsets_of_size(&key, key.len() - r) {
                    let tid = self.get_or_create(&t);
                    let before = self.level_good(tid, r);
                    self.list_insert(tid, r, id);
                    if !before && self.level_good(tid, r) {
                        flips.push((tid, r, true));
                    }
                }
                m = r;
                // A subset that just became good at level r blocks every higher level.
                if flips.iter().any(|f| f.1 == r) {
                    break;
                }
            }
        } else {
            for r in (target + 1..=old_m).rev() {
                for t in subsets_of_size(&key, key.len() - r) {
                    let tid = self.ids[&t];
                    let before = self.level_good(tid, r);
                    self.list_remove(tid, r, id);
                    if before && !self.level_good(tid, r) {
                        flips.push((tid, r, false));
                    }
                }
            }
            m = target;
        }
        if m != old_m {
            self.rec_mut(id).m = m;
            self.mutations += 1;
        }
        if let Some(trace) = self.trace.as_mut() {
            trace.push(Call { procedure, set: key, depth, from: old_m, to: m });
        }
        for (tid, r, became) in flips {
            self.resync(tid, depth + 1);
            self.up_calls(tid, r, became, Some(id), depth + 1);
        }
    }

    /// Revisits the listed supersets of T after T's (·, r)-goodness flipped.
    fn up_calls(&mut self, tid: Id, r: usize, became: bool, skip: Option<Id>, depth: usize) {
        let members: Vec<Id> = self.rec(tid).lists[r - 1].iter().copied().filter(|&x| Some(x) != skip).collect();
        for x in members {
            let mx = self.rec(x).m;
            if (became && mx > r) || (!became && mx == r) {
                self.resync(x, depth);
            }
        }
    }

    fn begin_update(&mut self) {
        self.epoch += 1;
        self.depth_now = 0;
        self.journal.clear();
        self.good_before.clear();
        self.touched.clear();
        self.last_mutations = self.mutations;
    }

    fn set_in_fprime(&mut self, id: Id, on: bool) {
        let rec = self.rec_mut(id);
        if rec.in_fprime == on {
            return;
        }
        rec.in_fprime = on;
        let key = rec.key.clone();
        if on {
            self.fprime.insert(key);
        } else {
            self.fprime.remove(&key);
        }
        self.mutations += 1;
        self.touched.push(id);
    }

    /// Brings F′ up to date from the sets whose goodness changed, smallest first.
    fn reconcile_fprime(&mut self) {
        let mut changed: Vec<(usize, Vec<u32>, Id, bool)> = self
            .good_before
            .iter()
            .map(|(&id, &before)| {
                let rec = self.rec(id);
                (rec.key.len(), rec.key.clone(), id, before)
            })
            .collect();
        changed.sort_unstable();
        for (_, key, id, before) in changed {
            debug_assert!(self.recs[id as usize].is_some(), "record reclaimed mid-update");
            let now = self.rec(id).good;
            if now {
                let minimal = !self.has_good_proper_subset(&key);
                self.set_in_fprime(id, minimal);
                if !before {
                    // Supersets that were minimal were strong at every level, hence listed before the update.
                    for r in 1..=self.d - key.len() {
                        for x in self.old_list(id, r) {
                            debug_assert!(self.rec(x).born <= self.epoch);
                            if self.rec(x).in_fprime {
                                self.set_in_fprime(x, false);
                            }
                        }
                    }
                }
            } else if before {
                self.set_in_fprime(id, false);
                if !self.has_good_proper_subset(&key) {
                    for r in 1..=self.d - key.len() {
                        let members: Vec<Id> = self.rec(id).lists[r - 1].iter().copied().collect();
                        for x in members {
                            if self.rec(x).good && !self.has_good_proper_subset(&self.rec(x).key.clone()) {
                                self.set_in_fprime(x, true);
                            }
                        }
                    }
                }
            }
        }
    }

    fn end_update(&mut self) {
        self.reconcile_fprime();
        let mut touched = std::mem::take(&mut self.touched);
        touched.sort_unstable();
        touched.dedup();
        for id in touched {
            let Some(rec) = self.recs[id as usize].as_ref() else {
                continue;
            };
            let trivial = !rec.in_f && !rec.good && rec.m == 0 && !rec.in_fprime && rec.lists.iter().all(|l| l.is_empty());
            if trivial {
                let key = rec.key.clone();
                self.ids.remove(&key);
                self.recs[id as usize] = None;
                self.free.push(id);
            }
        }
        if self.ids.is_empty() {
            self.recs.clear();
            self.free.clear();
        }
        self.journal.clear();
        self.good_before.clear();
        self.last_mutations = self.mutations - self.last_mutations;
        self.last_depth = self.depth_now;
        self.max_depth = self.max_depth.max(self.depth_now);
    }

    pub fn insert(&mut self, q: &[u32]) -> Result<(), HsError> {
        let q = self.canonical(q)?;
        if self.family.contains(&q) {
            return Err(HsError::DuplicateSet);
        }
        self.begin_update();
        let id = self.get_or_create(&q);
        let levels: Vec<usize> = (1..=self.d - q.len()).filter(|&r| !self.level_good(id, r)).collect();
        self.rec_mut(id).in_f = true;
        self.mutations += 1;
        self.family.insert(q);
        self.resync(id, 1);
        for r in levels {
            self.up_calls(id, r, true, None, 1);
        }
        self.end_update();
        Ok(())
    }

    pub fn delete(&mut self, q: &[u32]) -> Result<(), HsError> {
        let q = self.canonical(q)?;
        if !self.family.remove(&q) {
            return Err(HsError::NoSuchSet);
        }
        self.begin_update();
        let id = self.ids[&q];
        self.touched.push(id);
        self.rec_mut(id).in_f = false;
        self.mutations += 1;
        let levels: Vec<usize> = (1..=self.d - q.len()).filter(|&r| !self.level_good(id, r)).collect();
        self.resync(id, 1);
        for r in levels {
            self.up_calls(id, r, false, None, 1);
        }
        self.end_update();
        Ok(())
    }

    /// Whether |F′| exceeds the size a yes-instance can have.
    pub fn over_bound(&self) -> bool {
        let size = self.fprime.len() as u128;
        let (k1, d) = (self.k as u128 + 1, self.d as u128);
        if d == 1 {
            return size > self.k as u128;
        }
        let fact: u128 = (1..=d).product();
        // |F′| > (1 + 2/((k+1)(d−1)))·d!·(k+1)^d, cleared of denominators.
        size * (d - 1) > fact * k1.pow(d as u32) * (d - 1) + 2 * fact * k1.pow(d as u32 - 1)
    }

    /// A minimum hitting set of F if one of size ≤ k exists.
    pub fn query(&self) -> Option<Vec<u32>> {
        if self.over_bound() {
            return None;
        }
        let sets: Vec<&Vec<u32>> = self.fprime.iter().collect();
        (0..=self.k).find_map(|budget| {
            let mut chosen = Vec::new();
            branch(&sets, budget, &mut chosen).then(|| {
                chosen.sort_unstable();
                chosen
            })
        })
    }

    /// Checks every record against the local definitions and F′ against its definition; panics on mismatch.
    pub fn check_invariants(&self) {
        for (key, &id) in &self.ids {
            let rec = self.rec(id);
            assert_eq!(&rec.key, key);
            assert_eq!(rec.in_f, self.family.contains(key));
            assert_eq!(rec.good, self.compute_good(id), "good flag of {key:?}");
            assert_eq!(rec.m, self.target_m(id, rec.good), "strong level of {key:?}");
            for (i, list) in rec.lists.iter().enumerate() {
                let r = i + 1;
                for &x in list {
                    let sup = self.rec(x);
                    assert!(sup.m >= r && sup.key.len() == key.len() + r);
                    assert!(key.iter().all(|e| sup.key.binary_search(e).is_ok()));
                }
            }
            for r in 1..=rec.m {
                for t in subsets_of_size(key, key.len() - r) {
                    assert!(self.rec(self.ids[&t]).lists[r - 1].contains(&id));
                }
            }
            let minimal = rec.good && !self.has_good_proper_subset(key);
            assert_eq!(rec.in_fprime, minimal, "F′ membership of {key:?}");
            assert_eq!(self.fprime.contains(key), minimal);
        }
        assert!(self.fprime.iter().all(|f| self.ids.contains_key(f)));
    }
}

/// Branches on the first unhit set.
fn branch(sets: &[&Vec<u32>], budget: usize, chosen: &mut Vec<u32>) -> bool {
    let Some(unhit) = sets.iter().find(|s| !s.iter().any(|e| chosen.contains(e))) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for &e in unhit.iter() {
        chosen.push(e);
        if branch(sets, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Minimal good sets by the static sweep: for sizes i = d−1 down to 1, count
/// the survivors' subsets of size i, promote the ones reaching ν, and drop the
/// survivors that now contain a promoted set.
pub fn sweep_minimal_good(family: &[Vec<u32>], k: usize, d: usize) -> BTreeSet<Vec<u32>> {
    let nu = nu_table(k, d);
    let mut r: BTreeSet<Vec<u32>> = family
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    for i in (1..d).rev() {
        let mut counts: BTreeMap<(Vec<u32>, usize), u64> = BTreeMap::new();
        for s in r.iter().filter(|s| s.len() > i) {
            for t in subsets_of_size(s, i) {
                *counts.entry((t, s.len() - i)).or_default() += 1;
            }
        }
        let mut marked: BTreeSet<Vec<u32>> =
            counts.into_iter().filter(|((_, j), c)| *c >= nu[*j]).map(|((t, _), _)| t).collect();
        // Family members of size i are good as well.
        marked.extend(r.iter().filter(|s| s.len() == i).cloned());
        r.extend(marked.iter().cloned());
        r.retain(|s| s.len() <= i || !subsets_of_size(s, i).iter().any(|t| marked.contains(t)));
    }
    r
}
