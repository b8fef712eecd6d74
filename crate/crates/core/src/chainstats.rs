//! Exact base statistics of a permutation action.
//!
//! All engines work on pointwise stabilizers stored as explicit member lists and
//! branch only over least representatives of the orbits of the current stabilizer.
//! Subgroups recur across branches, so results are memoized on a hash of the member
//! list in a bounded LRU; an evicted entry is simply recomputed.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::num::NonZeroUsize;
use std::time::Duration;

use lru::LruCache;
use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::error::{Error, Result};
use crate::gaction::{Action, PointId};
use crate::grp::Subgroup;

/// The four statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stat {
    /// Minimum size of a minimal base.
    #[serde(rename = "base")]
    BaseMin,
    /// Maximum size of a minimal base.
    #[serde(rename = "Base")]
    BaseMax,
    /// Maximum size of an independent set.
    #[serde(rename = "Height")]
    Height,
    /// Maximum length of an irredundant base.
    #[serde(rename = "Irred")]
    Irred,
}

impl Stat {
    pub fn label(self) -> &'static str {
        match self {
            Stat::BaseMin => "base",
            Stat::BaseMax => "Base",
            Stat::Height => "Height",
            Stat::Irred => "Irred",
        }
    }

    pub fn parse(s: &str) -> Option<Stat> {
        match s {
            "base" | "base-min" => Some(Stat::BaseMin),
            "Base" | "base-max" => Some(Stat::BaseMax),
            "Height" | "height" => Some(Stat::Height),
            "Irred" | "irred" => Some(Stat::Irred),
            _ => None,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Search nodes before giving up with a flagged, inexact result.
    pub node_cap: u64,
    pub memo_capacity: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_cap: 50_000_000,
            memo_capacity: 1 << 20,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub stat: Stat,
    pub value: u32,
    pub witness: Vec<PointId>,
    pub nodes_visited: u64,
    pub memo_hits: u64,
    pub wall_time: Duration,
    /// False when the node cap cut the search short.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportJson {
    pub stat: Stat,
    pub value: u32,
    pub witness: Vec<String>,
    pub nodes: u64,
    pub memo_hits: u64,
    pub ms: f64,
    pub exact: bool,
}

impl ChainReport {
    pub fn to_json(&self, action: &Action) -> ReportJson {
        ReportJson {
            stat: self.stat,
            value: self.value,
            witness: self.witness.iter().map(|&w| action.label(w)).collect(),
            nodes: self.nodes_visited,
            memo_hits: self.memo_hits,
            ms: self.wall_time.as_secs_f64() * 1e3,
            exact: self.exact,
        }
    }
}

/// The four definitions evaluated literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub is_base: bool,
    pub is_irredundant: bool,
    pub is_independent: bool,
    pub is_minimal_base: bool,
}

/// Evaluates the sequence predicates for `seq` in the group `root`.
pub fn predicates_in(action: &Action, root: &Subgroup, seq: &[PointId]) -> Predicates {
    let stab = |pts: &[PointId]| action.pointwise_stabilizer(root, pts);
    let full = stab(seq);
    let is_base = full.is_trivial();

    let mut is_irredundant = true;
    let mut cur = root.clone();
    for &w in seq {
        let next = action.stabilizer(&cur, w);
        if next.order() == cur.order() {
            is_irredundant = false;
            break;
        }
        cur = next;
    }

    let deleted: Vec<Subgroup> = (0..seq.len())
        .map(|k| {
            let rest: Vec<PointId> = seq
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &w)| w)
                .collect();
            stab(&rest)
        })
        .collect();
    let is_independent = deleted.iter().all(|d| d != &full);
    let is_minimal_base = is_base && deleted.iter().all(|d| !d.is_trivial());
    Predicates {
        is_base,
        is_irredundant,
        is_independent,
        is_minimal_base,
    }
}

pub fn predicates(action: &Action, seq: &[PointId]) -> Predicates {
    predicates_in(action, &action.group().full(), seq)
}

/// Number of prime factors of `n` with multiplicity; bounds the length of any strict
/// subgroup chain in a group of order `n`.
pub fn big_omega(mut n: u64) -> u32 {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

type MemoKey = (usize, u64, u64);

fn subgroup_key(s: &Subgroup) -> MemoKey {
    let mut h1 = DefaultHasher::new();
    s.members().hash(&mut h1);
    let mut h2 = DefaultHasher::new();
    0x9e37_79b9_7f4a_7c15u64.hash(&mut h2);
    s.members().hash(&mut h2);
    (s.order(), h1.finish(), h2.finish())
}

struct Search<'a, V> {
    action: &'a Action,
    cfg: &'a SearchConfig,
    memo: LruCache<MemoKey, V>,
    nodes: u64,
    memo_hits: u64,
    truncated: bool,
}

impl<'a, V: Clone> Search<'a, V> {
    fn new(action: &'a Action, cfg: &'a SearchConfig) -> Self {
        let cap = NonZeroUsize::new(cfg.memo_capacity.max(1)).expect("nonzero");
        Search {
            action,
            cfg,
            memo: LruCache::new(cap),
            nodes: 0,
            memo_hits: 0,
            truncated: false,
        }
    }

    fn tick(&mut self) {
        self.nodes += 1;
        if self.nodes > self.cfg.node_cap {
            self.truncated = true;
        }
    }

    fn lookup(&mut self, key: &MemoKey) -> Option<V> {
        let v = self.memo.get(key).cloned();
        if v.is_some() {
            self.memo_hits += 1;
        }
        v
    }

    /// Least representatives of the orbits of `s` of size at least two.
    fn moving_reps(&self, s: &Subgroup) -> Vec<(PointId, usize)> {
        self.action
            .orbits(s)
            .into_iter()
            .filter(|o| o.len() > 1)
            .map(|o| (o[0], o.len()))
            .collect()
    }

    fn report(&self, stat: Stat, value: u32, witness: Vec<PointId>, start: Instant) -> ChainReport {
        ChainReport {
            stat,
            value,
            witness,
            nodes_visited: self.nodes,
            memo_hits: self.memo_hits,
            wall_time: start.elapsed(),
            exact: !self.truncated,
        }
    }
}

fn require_faithful(action: &Action) -> Result<()> {
    if action.is_faithful() {
        Ok(())
    } else {
        Err(Error::NotFaithful)
    }
}

// --- Irred ----------------------------------------------------------------------

fn irred_rec(search: &mut Search<'_, (u32, Vec<PointId>)>, s: &Subgroup) -> (u32, Vec<PointId>) {
    if s.is_trivial() {
        return (0, Vec::new());
    }
    let key = subgroup_key(s);
    if let Some(v) = search.lookup(&key) {
        return v;
    }
    search.tick();
    let reps = search.moving_reps(s);
    assert!(
        !reps.is_empty(),
        "nontrivial stabilizer of a faithful action moves a point"
    );
    let ceiling = big_omega(s.order() as u64);
    let mut best: Option<(u32, Vec<PointId>)> = None;
    for (w, _) in reps {
        let t = search.action.stabilizer(s, w);
        if let Some((b, _)) = &best {
            if big_omega(t.order() as u64) < *b {
                continue;
            }
        }
        let (v, mut tail) = irred_rec(search, &t);
        if best.as_ref().is_none_or(|(b, _)| 1 + v > *b) {
            tail.insert(0, w);
            best = Some((1 + v, tail));
        }
        if search.truncated || best.as_ref().map(|b| b.0) == Some(ceiling) {
            break;
        }
    }
    let best = best.expect("at least one branch");
    if !search.truncated {
        search.memo.put(key, best.clone());
    }
    best
}

/// Longest irredundant base of `action` restricted to the subgroup `root`.
pub fn irred_max_in(action: &Action, root: &Subgroup, cfg: &SearchConfig) -> Result<ChainReport> {
    require_faithful(action)?;
    let start = Instant::now();
    let mut search = Search::new(action, cfg);
    let (value, witness) = irred_rec(&mut search, root);
    let floor_log2 = usize::BITS - 1 - root.order().leading_zeros();
    assert!(value <= floor_log2, "chain longer than log2 |G|");
    let rep = search.report(Stat::Irred, value, witness, start);
    debug_assert!({
        let p = predicates_in(action, root, &rep.witness);
        p.is_base && p.is_irredundant
    });
    Ok(rep)
}

pub fn irred_max(action: &Action, cfg: &SearchConfig) -> Result<ChainReport> {
    irred_max_in(action, &action.group().full(), cfg)
}

// --- base (minimum) -----------------------------------------------------------------

fn greedy_base(action: &Action, root: &Subgroup) -> Vec<PointId> {
    let mut s = root.clone();
    let mut seq = Vec::new();
    while !s.is_trivial() {
        // largest drop |S| / |S_w|; orbit representatives suffice
        let (w, t) = action
            .orbits(&s)
            .into_iter()
            .filter(|o| o.len() > 1)
            .map(|o| (o[0], action.stabilizer(&s, o[0])))
            .min_by_key(|(w, t)| (t.order(), *w))
            .expect("faithful action");
        seq.push(w);
        s = t;
    }
    seq
}

fn base_exists(search: &mut Search<'_, ()>, s: &Subgroup, depth: u32) -> Option<Vec<PointId>> {
    if s.is_trivial() {
        return Some(Vec::new());
    }
    if depth == 0 || search.truncated {
        return None;
    }
    let mut reps = search.moving_reps(s);
    let largest = reps.iter().map(|r| r.1).max().unwrap_or(1) as u128;
    if largest
        .checked_pow(depth)
        .is_some_and(|m| m < s.order() as u128)
    {
        return None;
    }
    let (len, h1, h2) = subgroup_key(s);
    let key = (len, h1, h2 ^ depth as u64);
    if search.lookup(&key).is_some() {
        return None;
    }
    search.tick();
    reps.sort_by_key(|&(w, size)| (std::cmp::Reverse(size), w));
    for (w, _) in reps {
        let t = search.action.stabilizer(s, w);
        if let Some(mut tail) = base_exists(search, &t, depth - 1) {
            tail.insert(0, w);
            return Some(tail);
        }
        if search.truncated {
            return None;
        }
    }
    search.memo.put(key, ());
    None
}

/// Minimum base size by iterative deepening below a greedy upper bound.
pub fn base_min_in(action: &Action, root: &Subgroup, cfg: &SearchConfig) -> Result<ChainReport> {
    require_faithful(action)?;
    let start = Instant::now();
    let greedy = greedy_base(action, root);
    let mut search: Search<'_, ()> = Search::new(action, cfg);
    let n = action.omega_size().max(2) as u128;
    let mut lower = 0u32;
    while n.pow(lower) < root.order() as u128 {
        lower += 1;
    }
    for depth in lower..greedy.len() as u32 {
        if let Some(w) = base_exists(&mut search, root, depth) {
            return Ok(search.report(Stat::BaseMin, depth, w, start));
        }
        if search.truncated {
            break;
        }
    }
    let len = greedy.len() as u32;
    Ok(search.report(Stat::BaseMin, len, greedy, start))
}

pub fn base_min(action: &Action, cfg: &SearchConfig) -> Result<ChainReport> {
    base_min_in(action, &action.group().full(), cfg)
}

// --- Height and Base (independent sets) -----------------------------------------

type IndepValue = Option<(u32, Vec<PointId>)>;

fn state_key(t: &Subgroup, dels: &[Subgroup]) -> MemoKey {
    let (len, a, b) = subgroup_key(t);
    let mut parts: Vec<MemoKey> = dels.iter().map(subgroup_key).collect();
    parts.sort_unstable();
    let mut h1 = DefaultHasher::new();
    (a, &parts).hash(&mut h1);
    let mut h2 = DefaultHasher::new();
    (b, 17u8, &parts).hash(&mut h2);
    (len * 1_000_003 + dels.len(), h1.finish(), h2.finish())
}

/// State: `t` is the stabilizer of the current set, `dels[k]` the stabilizer of the set
/// with its `k`-th point removed. Returns the largest number of further points keeping
/// the set independent (and, when `need_base`, ending at the trivial group).
fn indep_rec(
    search: &mut Search<'_, IndepValue>,
    t: &Subgroup,
    dels: &[Subgroup],
    need_base: bool,
) -> IndepValue {
    if t.is_trivial() {
        return Some((0, Vec::new()));
    }
    let key = state_key(t, dels);
    if let Some(v) = search.lookup(&key) {
        return v;
    }
    search.tick();
    let ceiling = big_omega(t.order() as u64);
    let mut best: IndepValue = if need_base {
        None
    } else {
        Some((0, Vec::new()))
    };
    for (w, _) in search.moving_reps(t) {
        let t2 = search.action.stabilizer(t, w);
        if let Some((b, _)) = &best {
            if big_omega(t2.order() as u64) < *b {
                continue;
            }
        }
        let mut next: Vec<Subgroup> = Vec::with_capacity(dels.len() + 1);
        let mut ok = true;
        for d in dels {
            let d2 = search.action.stabilizer(d, w);
            if d2.order() == t2.order() {
                ok = false;
                break;
            }
            next.push(d2);
        }
        if !ok {
            continue;
        }
        next.push(t.clone());
        if let Some((v, mut tail)) = indep_rec(search, &t2, &next, need_base) {
            if best.as_ref().is_none_or(|(b, _)| 1 + v > *b) {
                tail.insert(0, w);
                best = Some((1 + v, tail));
            }
        }
        if search.truncated || best.as_ref().map(|b| b.0) == Some(ceiling) {
            break;
        }
    }
    if !search.truncated {
        search.memo.put(key, best.clone());
    }
    best
}

fn indep_search(
    action: &Action,
    root: &Subgroup,
    cfg: &SearchConfig,
    need_base: bool,
) -> Result<ChainReport> {
    require_faithful(action)?;
    let start = Instant::now();
    let mut search: Search<'_, IndepValue> = Search::new(action, cfg);
    let found = indep_rec(&mut search, root, &[], need_base);
    let stat = if need_base {
        Stat::BaseMax
    } else {
        Stat::Height
    };
    let (value, witness) = found.unwrap_or_default();
    let mut rep = search.report(stat, value, witness, start);
    if need_base && value == 0 && !root.is_trivial() {
        rep.exact = false;
    }
    Ok(rep)
}

/// Largest independent set.
pub fn height_max_in(action: &Action, root: &Subgroup, cfg: &SearchConfig) -> Result<ChainReport> {
    indep_search(action, root, cfg, false)
}

pub fn height_max(action: &Action, cfg: &SearchConfig) -> Result<ChainReport> {
    height_max_in(action, &action.group().full(), cfg)
}

/// Largest minimal base, found as the largest independent set that is a base.
pub fn base_max_minimal_in(
    action: &Action,
    root: &Subgroup,
    cfg: &SearchConfig,
) -> Result<ChainReport> {
    indep_search(action, root, cfg, true)
}

pub fn base_max_minimal(action: &Action, cfg: &SearchConfig) -> Result<ChainReport> {
    base_max_minimal_in(action, &action.group().full(), cfg)
}

// --- all four, inequalities -------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourStats {
    pub base: u32,
    #[serde(rename = "Base")]
    pub base_max: u32,
    pub height: u32,
    pub irred: u32,
}

#[derive(Clone, Debug)]
pub struct AllReports {
    pub base: ChainReport,
    pub base_max: ChainReport,
    pub height: ChainReport,
    pub irred: ChainReport,
}

impl AllReports {
    pub fn values(&self) -> FourStats {
        FourStats {
            base: self.base.value,
            base_max: self.base_max.value,
            height: self.height.value,
            irred: self.irred.value,
        }
    }

    pub fn exact(&self) -> bool {
        [&self.base, &self.base_max, &self.height, &self.irred]
            .iter()
            .all(|r| r.exact)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ChainReport> {
        [&self.base, &self.base_max, &self.height, &self.irred].into_iter()
    }
}

pub fn all_stats_in(action: &Action, root: &Subgroup, cfg: &SearchConfig) -> Result<AllReports> {
    Ok(AllReports {
        base: base_min_in(action, root, cfg)?,
        base_max: base_max_minimal_in(action, root, cfg)?,
        height: height_max_in(action, root, cfg)?,
        irred: irred_max_in(action, root, cfg)?,
    })
}

pub fn all_stats(action: &Action, cfg: &SearchConfig) -> Result<AllReports> {
    all_stats_in(action, &action.group().full(), cfg)
}

pub fn stat(action: &Action, which: Stat, cfg: &SearchConfig) -> Result<ChainReport> {
    match which {
        Stat::BaseMin => base_min(action, cfg),
        Stat::BaseMax => base_max_minimal(action, cfg),
        Stat::Height => height_max(action, cfg),
        Stat::Irred => irred_max(action, cfg),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InequalityReport {
    pub stats: FourStats,
    /// `RC <= Height + 1`; the relational complexity itself is not computed.
    pub rc_upper_bound: u32,
    pub holds: bool,
}

/// Checks `base <= Base <= Height <= Irred`.
pub fn check_inequalities(stats: FourStats) -> Result<InequalityReport> {
    let holds = stats.base <= stats.base_max
        && stats.base_max <= stats.height
        && stats.height <= stats.irred;
    if !holds {
        return Err(Error::InequalityViolation(format!("{stats:?}")));
    }
    Ok(InequalityReport {
        stats,
        rc_upper_bound: stats.height + 1,
        holds,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SocleReport {
    pub irred_group: u32,
    pub irred_subgroup: u32,
    pub index: u64,
    pub log2_index: f64,
    pub holds: bool,
    pub exact: bool,
}

/// `Irred(G) <= Irred(S) + log2 |G:S|` for a normal subgroup `s` acting on the same set.
pub fn socle_chain_check(action: &Action, s: &Subgroup, cfg: &SearchConfig) -> Result<SocleReport> {
    let g = action.group();
    if !g.order().is_multiple_of(s.order()) {
        return Err(Error::InvalidParameter(
            "order of S does not divide |G|".into(),
        ));
    }
    let full = irred_max(action, cfg)?;
    let sub = irred_max_in(action, s, cfg)?;
    let index = (g.order() / s.order()) as u64;
    // exact integer form: 2^(Irred(G) - Irred(S)) <= |G:S|
    let holds = full.value <= sub.value || {
        let gap = full.value - sub.value;
        gap < 64 && (1u64 << gap) <= index
    };
    Ok(SocleReport {
        irred_group: full.value,
        irred_subgroup: sub.value,
        index,
        log2_index: (index as f64).log2(),
        holds,
        exact: full.exact && sub.exact,
    })
}

// --- brute-force oracle ---------------------------------------------------------

pub const ORACLE_MAX_POINTS: usize = 12;
pub const ORACLE_MAX_ORDER: usize = 10_000;

/// All four statistics by unpruned enumeration, for tiny instances only. Shares no
/// code with the engines above beyond the action's point images.
pub fn oracle_stats(action: &Action) -> Result<FourStats> {
    let n = action.omega_size();
    let order = action.group().order();
    if n > ORACLE_MAX_POINTS || order > ORACLE_MAX_ORDER {
        return Err(Error::OracleGuard(format!("|Omega| = {n}, |G| = {order}")));
    }
    if !action.is_faithful() {
        return Err(Error::NotFaithful);
    }
    // images[g][w]
    let images: Vec<Vec<u32>> = (0..order as u32)
        .map(|g| (0..n as u32).map(|w| action.apply(w, g)).collect())
        .collect();
    let fixes_all =
        |g: usize, mask: u32| (0..n).all(|w| mask >> w & 1 == 0 || images[g][w] == w as u32);
    let stab_order: Vec<usize> = (0..1u32 << n)
        .map(|mask| (0..order).filter(|&g| fixes_all(g, mask)).count())
        .collect();
    let is_base = |mask: u32| stab_order[mask as usize] == 1;

    let mut base = u32::MAX;
    let mut base_max = 0;
    let mut height = 0;
    for mask in 0..1u32 << n {
        let size = mask.count_ones();
        let independent = (0..n)
            .filter(|&w| mask >> w & 1 == 1)
            .all(|w| stab_order[(mask & !(1 << w)) as usize] != stab_order[mask as usize]);
        if independent {
            height = height.max(size);
        }
        if is_base(mask) {
            base = base.min(size);
            // no proper subset is a base
            let mut minimal = true;
            let mut sub = mask;
            while sub > 0 {
                sub = (sub - 1) & mask;
                if is_base(sub) {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                base_max = base_max.max(size);
            }
        }
    }

    // longest irredundant sequence that is a base
    fn extend(images: &[Vec<u32>], members: Vec<usize>, used: u32, len: u32, best: &mut u32) {
        if members.len() == 1 {
            *best = (*best).max(len);
            return;
        }
        for w in 0..images[0].len() {
            if used >> w & 1 == 1 {
                continue;
            }
            let next: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&g| images[g][w] == w as u32)
                .collect();
            if next.len() < members.len() {
                extend(images, next, used | 1 << w, len + 1, best);
            }
        }
    }
    let mut irred = 0;
    extend(&images, (0..order).collect(), 0, 0, &mut irred);

    Ok(FourStats {
        base,
        base_max,
        height,
        irred,
    })
}
