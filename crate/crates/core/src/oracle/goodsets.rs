//! Direct evaluation of the inductive good-set definition.

use super::OracleError;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const MAX_FAMILY: usize = 1 << 10;
pub const MAX_D: usize = 3;

/// r!·(k+1)^r
pub fn nu(k: usize, r: usize) -> u64 {
    let mut f: u64 = 1;
    for i in 1..=r as u64 {
        f = f.saturating_mul(i).saturating_mul(k as u64 + 1);
    }
    f
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoodEntry {
    pub in_family: bool,
    /// counts[r-1] = number of (|S|+r, r)-strong supersets, for r in 1..=d-|S|.
    pub counts: Vec<u64>,
    /// good_at[r-1] = S is (|S|, r)-good.
    pub good_at: Vec<bool>,
    /// Largest r for which S is (|S|, r)-strong; 0 if S is not good.
    pub strong_up_to: usize,
}

impl GoodEntry {
    pub fn good(&self) -> bool {
        self.in_family || self.good_at.iter().any(|&g| g)
    }
}

/// Flags for every nonempty subset of a family member, keyed by sorted element list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoodTable {
    pub entries: BTreeMap<Vec<u32>, GoodEntry>,
}

impl GoodTable {
    pub fn good(&self, s: &[u32]) -> bool {
        self.entries.get(s).is_some_and(|e| e.good())
    }

    /// Good sets without a good proper subset.
    pub fn minimal_good(&self) -> BTreeSet<Vec<u32>> {
        self.entries
            .iter()
            .filter(|(s, e)| e.good() && !proper_subsets(s).iter().any(|t| self.good(t)))
            .map(|(s, _)| s.clone())
            .collect()
    }
}

fn proper_subsets(s: &[u32]) -> Vec<Vec<u32>> {
    let n = s.len();
    (1..(1u32 << n) - 1)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

fn canonical(family: &[Vec<u32>], d: usize) -> Result<BTreeSet<Vec<u32>>, OracleError> {
    if family.len() > MAX_FAMILY || d > MAX_D {
        return Err(OracleError::InstanceTooLarge(format!("|F| = {}, d = {}", family.len(), d)));
    }
    let mut out = BTreeSet::new();
    for f in family {
        let mut s = f.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() > d || s.is_empty() {
            return Err(OracleError::InstanceTooLarge(format!("set of size {} with d = {}", s.len(), d)));
        }
        out.insert(s);
    }
    Ok(out)
}

/// Evaluates the definition level by level: sizes from d down to 1, and for
/// each size r from 1 upward.
pub fn oracle_goodsets(family: &[Vec<u32>], k: usize, d: usize) -> Result<GoodTable, OracleError> {
    let fam = canonical(family, d)?;
    let mut entries: BTreeMap<Vec<u32>, GoodEntry> = BTreeMap::new();
    for f in &fam {
        for t in proper_subsets(f).into_iter().chain([f.clone()]) {
            entries.entry(t).or_default();
        }
    }
    for (s, e) in entries.iter_mut() {
        e.in_family = fam.contains(s);
        let levels = d - s.len();
        e.counts = vec![0; levels];
        e.good_at = vec![false; levels];
    }
    let by_size: Vec<Vec<Vec<u32>>> =
        (0..=d).map(|l| entries.keys().filter(|s| s.len() == l).cloned().collect()).collect();

    // (|t|, r)-good, for sets already evaluated.
    let good_lr = |entries: &BTreeMap<Vec<u32>, GoodEntry>, t: &[u32], r: usize| -> bool {
        entries.get(t).is_some_and(|e| e.in_family || e.good_at.get(r - 1).copied().unwrap_or(false))
    };
    let strong = |entries: &BTreeMap<Vec<u32>, GoodEntry>, s: &[u32], r: usize| -> bool {
        if !entries[s].good() {
            return false;
        }
        proper_subsets(s).iter().all(|t| {
            let j = s.len() - t.len();
            j >= r || !good_lr(entries, t, j)
        })
    };

    for l in (1..=d).rev() {
        for r in 1..=d - l {
            for t in &by_size[l] {
                let count = by_size[l + r]
                    .iter()
                    .filter(|s| t.iter().all(|x| s.binary_search(x).is_ok()))
                    .filter(|s| strong(&entries, s, r))
                    .count() as u64;
                let e = entries.get_mut(t).unwrap();
                e.counts[r - 1] = count;
                e.good_at[r - 1] = count >= nu(k, r);
            }
        }
    }
    let keys: Vec<Vec<u32>> = entries.keys().cloned().collect();
    for s in keys {
        let mut top = 0;
        if entries[&s].good() {
            top = 1;
            while top < s.len() && strong(&entries, &s, top + 1) {
                top += 1;
            }
        }
        entries.get_mut(&s).unwrap().strong_up_to = top;
    }
    Ok(GoodTable { entries })
}

/// Second evaluator: memoized recursion on (set, r) with supersets found by
/// extending with single elements of the universe.
pub fn oracle_goodsets_recursive(family: &[Vec<u32>], k: usize, d: usize) -> Result<GoodTable, OracleError> {
    let fam = canonical(family, d)?;
    let universe: Vec<u32> = fam.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();

    struct Ctx<'a> {
        fam: &'a BTreeSet<Vec<u32>>,
        universe: &'a [u32],
        k: usize,
        d: usize,
        memo: HashMap<(Vec<u32>, usize), bool>,
        counts: HashMap<(Vec<u32>, usize), u64>,
    }

    impl Ctx<'_> {
        fn is_good_at(&mut self, s: &[u32], r: usize) -> bool {
            if self.fam.contains(s) {
                return true;
            }
            if r == 0 || s.len() + r > self.d {
                return false;
            }
            if let Some(&g) = self.memo.get(&(s.to_vec(), r)) {
                return g;
            }
            let mut count = 0u64;
            let mut sups = Vec::new();
            self.supersets(s, r, 0, &mut s.to_vec(), &mut sups);
            for sup in sups {
                if self.is_strong(&sup, r) {
                    count += 1;
                }
            }
            let g = count >= nu(self.k, r);
            self.counts.insert((s.to_vec(), r), count);
            self.memo.insert((s.to_vec(), r), g);
            g
        }

        fn is_good(&mut self, s: &[u32]) -> bool {
            self.fam.contains(s) || (1..=self.d - s.len()).any(|r| self.is_good_at(s, r))
        }

        fn is_strong(&mut self, s: &[u32], r: usize) -> bool {
            if !self.is_good(s) {
                return false;
            }
            for j in 1..r {
                if j >= s.len() {
                    break;
                }
                let mut subs = Vec::new();
                choose(s, s.len() - j, 0, &mut Vec::new(), &mut subs);
                for t in subs {
                    if self.is_good_at(&t, j) {
                        return false;
                    }
                }
            }
            true
        }

        /// All sets of size |s|+extra containing s, drawn from the universe.
        fn supersets(&self, s: &[u32], extra: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if extra == 0 {
                let mut v = cur.clone();
                v.sort_unstable();
                out.push(v);
                return;
            }
            for i in from..self.universe.len() {
                let x = self.universe[i];
                if s.contains(&x) {
                    continue;
                }
                cur.push(x);
                self.supersets(s, extra - 1, i + 1, cur, out);
                cur.pop();
            }
        }
    }

    fn choose(s: &[u32], size: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..s.len() {
            cur.push(s[i]);
            choose(s, size, i + 1, cur, out);
            cur.pop();
        }
    }

    let mut ctx = Ctx { fam: &fam, universe: &universe, k, d, memo: HashMap::new(), counts: HashMap::new() };
    let mut keys = BTreeSet::new();
    for f in &fam {
        for size in 1..=f.len() {
            let mut subs = Vec::new();
            choose(f, size, 0, &mut Vec::new(), &mut subs);
            keys.extend(subs);
        }
    }
    let mut entries = BTreeMap::new();
    for s in keys {
        let levels = d - s.len();
        let mut e = GoodEntry { in_family: fam.contains(&s), ..Default::default() };
        for r in 1..=levels {
            // Family members are good outright, so is_good_at would skip the count.
            let g = if e.in_family {
                count_only(&mut ctx, &s, r)
            } else {
                ctx.is_good_at(&s, r)
            };
            e.good_at.push(g);
            e.counts.push(ctx.counts.get(&(s.clone(), r)).copied().unwrap_or(0));
        }
        let mut top = 0;
        if e.good() {
            top = 1;
            while top < s.len() && ctx.is_strong(&s, top + 1) {
                top += 1;
            }
        }
        e.strong_up_to = top;
        entries.insert(s, e);
    }

    fn count_only(ctx: &mut Ctx<'_>, s: &[u32], r: usize) -> bool {
        let mut sups = Vec::new();
        ctx.supersets(s, r, 0, &mut s.to_vec(), &mut sups);
        let mut count = 0u64;
        for sup in sups {
            if ctx.is_strong(&sup, r) {
                count += 1;
            }
        }
        ctx.counts.insert((s.to_vec(), r), count);
        count >= nu(ctx.k, r)
    }

    Ok(GoodTable { entries })
}
