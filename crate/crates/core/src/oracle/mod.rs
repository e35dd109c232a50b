//! Exhaustive branch-and-bound search for ex(p; family) on small orders.
//!
//! The search walks the vertex pairs in a fixed order and decides for each
//! whether it becomes an edge, keeping the graph family-free at every step.
//! Because family-freeness is monotone under edge deletion, a pair that
//! cannot be added now can never be added deeper in the same branch, so the
//! count of still-addable pairs bounds what a branch can reach.
//!
//! Orders are processed upwards. Deleting a vertex from an extremal graph on
//! q vertices leaves a family-free graph on q-1 vertices, which gives two
//! further cuts once ex(q-1) is known exactly:
//!
//! * ex(q) ≤ ⌊q·ex(q-1)/(q-2)⌋ (averaging over the q vertex deletions), and
//! * a graph with T edges has every degree at least T - ex(q-1).
//!
//! With symmetry breaking on, vertex 0 is a maximum-degree vertex adjacent to
//! exactly 1..=d, and vertex 1's neighbors form a prefix both inside and
//! outside N(0). The top-level split is over d and runs on rayon.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::ops::RangeInclusive;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::constructors::{extremal, Audit};
use crate::error::{OracleError, VerifyError};
use crate::formulas::ex_pattern;
use crate::graph::{Graph, GraphBuilder};
use crate::patterns::{counting_check, BitRows, Embedder, ForbiddenFamily, Host, TreePattern, Variant};
use crate::util::binom2;

/// Orders above this cannot be represented by the search state at all.
pub const HARD_MAX_P: usize = 16;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Largest order searched without complaint; raise it explicitly for
    /// bigger runs (up to [`HARD_MAX_P`]).
    pub max_p: usize,
    /// Wall-clock limit for one call; exceeding it makes the result
    /// non-exhaustive instead of failing.
    pub budget: Option<Duration>,
    pub symmetry_breaking: bool,
    /// Re-test the whole graph after each insertion instead of only the
    /// embeddings through the new edge.
    pub full_recheck: bool,
    pub parallel: bool,
    /// Pair order used when symmetry breaking is off; must be a permutation
    /// of all pairs `u < v` of the order being searched.
    pub slot_order: Option<Vec<(usize, usize)>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_p: 9,
            budget: None,
            symmetry_breaking: true,
            full_recheck: false,
            parallel: true,
            slot_order: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub p: usize,
    /// Best edge count found; equal to ex(p) when `exhaustive`.
    pub value: usize,
    pub exhaustive: bool,
    #[serde(skip)]
    pub witness: Graph,
    pub nodes: u64,
}

/// Small adjacency-row graph mutated in place by the search.
#[derive(Debug, Clone)]
struct Board {
    p: usize,
    rows: [u64; HARD_MAX_P],
    edges: usize,
}

impl Board {
    fn new(p: usize) -> Board {
        Board { p, rows: [0; HARD_MAX_P], edges: 0 }
    }

    fn deg(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    fn add(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.edges += 1;
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        self.edges -= 1;
    }

    fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.p);
        for u in 0..self.p {
            for v in u + 1..self.p {
                if self.rows[u] >> v & 1 == 1 {
                    b.add_edge(u, v).expect("board vertices are in range");
                }
            }
        }
        b.build()
    }
}

impl Host for Board {
    fn order(&self) -> usize {
        self.p
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    fn degree(&self, v: usize) -> usize {
        self.deg(v)
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.rows[v];
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w)
        })
    }
}

impl BitRows for Board {
    fn order(&self) -> usize {
        self.p
    }

    fn row(&self, v: usize) -> &[u64] {
        std::slice::from_ref(&self.rows[v])
    }
}

enum Check {
    /// Star K_{1,n-1}: degrees must stay at most n-2.
    DegreeCap(usize),
    /// Broom or spider: decided on the whole board by neighborhood counting.
    Count(TreePattern),
    Embed(Embedder),
}

struct Family {
    checks: Vec<Check>,
    full_recheck: bool,
}

impl Family {
    fn new(patterns: &[TreePattern], full_recheck: bool) -> Family {
        let checks = patterns
            .iter()
            .map(|pat| match pat.variant() {
                _ if full_recheck => Check::Embed(pat.embedder()),
                Variant::Star => Check::DegreeCap(pat.order() - 2),
                Variant::Broom | Variant::Spider => Check::Count(*pat),
                Variant::Path => Check::Embed(pat.embedder()),
            })
            .collect();
        Family { checks, full_recheck }
    }

    /// Whether `board + uv` is still family-free, given `board` is.
    fn can_add(&self, board: &mut Board, u: usize, v: usize) -> bool {
        for c in &self.checks {
            if let Check::DegreeCap(cap) = c {
                if board.deg(u) >= *cap || board.deg(v) >= *cap {
                    return false;
                }
            }
        }
        board.add(u, v);
        let ok = self.checks.iter().all(|c| match c {
            Check::DegreeCap(_) => true,
            Check::Count(pat) => counting_check(&*board, pat) == Some(false),
            Check::Embed(e) if self.full_recheck => !e.find(&*board),
            Check::Embed(e) => !e.find_through_edge(&*board, u, v),
        });
        board.remove(u, v);
        ok
    }
}

/// Shared state of one order's search.
struct Shared<'a> {
    family: &'a Family,
    slots: Vec<(usize, usize)>,
    /// Per vertex, the slot bits touching it.
    incident: Vec<u128>,
    best: AtomicUsize,
    witness: Mutex<Option<Graph>>,
    /// Stop once `best` reaches this.
    ceiling: usize,
    /// Exact ex(q-1), when known, for the degree cut.
    prev_exact: Option<usize>,
    symmetry: bool,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
}

impl Shared<'_> {
    fn record(&self, board: &Board) {
        let mut current = self.best.load(Ordering::Relaxed);
        while board.edges > current {
            match self.best.compare_exchange(current, board.edges, Ordering::SeqCst, Ordering::Relaxed) {
                Ok(_) => {
                    let mut w = self.witness.lock().expect("witness lock poisoned");
                    // a concurrent, larger record may have landed first
                    if w.as_ref().map_or(true, |g| g.edge_count() < board.edges) {
                        *w = Some(board.to_graph());
                    }
                    return;
                }
                Err(actual) => current = actual,
            }
        }
    }

    fn stopped(&self) -> bool {
        self.timed_out.load(Ordering::Relaxed) || self.best.load(Ordering::Relaxed) >= self.ceiling
    }
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    board: Board,
    /// With symmetry breaking: the degree of vertex 0, which caps all degrees.
    cap: usize,
    /// With symmetry breaking: vertex 1's neighbor classes split at this vertex.
    class_split: usize,
    local_nodes: u64,
}

impl Worker<'_, '_> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes % 1024 == 0 {
            self.shared.nodes.fetch_add(1024, Ordering::Relaxed);
            if let Some(d) = self.shared.deadline {
                if Instant::now() >= d {
                    self.shared.timed_out.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.shared.stopped()
    }

    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.local_nodes % 1024, Ordering::Relaxed);
        self.local_nodes = 0;
    }

    fn addable(&mut self, u: usize, v: usize) -> bool {
        if self.board.deg(u) >= self.cap || self.board.deg(v) >= self.cap {
            return false;
        }
        self.shared.family.can_add(&mut self.board, u, v)
    }

    /// Slots after `i` that symmetry breaking forbids once slot `i` is left empty.
    fn forced_empty_after(&self, i: usize) -> u128 {
        if !self.shared.symmetry {
            return 0;
        }
        let (u, v) = self.shared.slots[i];
        if u > 1 {
            return 0;
        }
        let mut mask = 0u128;
        for (j, &(a, b)) in self.shared.slots.iter().enumerate().skip(i + 1) {
            if a != u {
                break;
            }
            let same_class = u == 0 || (b <= self.class_split) == (v <= self.class_split);
            if same_class {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// Prunes on the bounds. Unless `exact` says `alive` already lists
    /// precisely the addable pairs, they are re-tested first.
    fn bound_ok(&mut self, i: usize, alive: &mut u128, exact: bool, best: usize) -> bool {
        let p = self.board.p;
        let remaining = *alive >> i << i;
        let cap_bound = self.cap * p / 2;
        if self.board.edges + (remaining.count_ones() as usize) <= best || cap_bound <= best {
            return false;
        }
        // refine: drop pairs that can no longer be added
        let mut bits = if exact { 0 } else { remaining };
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = self.shared.slots[j];
            if !self.addable(u, v) {
                *alive &= !(1u128 << j);
            }
        }
        let remaining = *alive >> i << i;
        if self.board.edges + (remaining.count_ones() as usize) <= best {
            return false;
        }
        if let Some(prev) = self.shared.prev_exact {
            let need = (best + 1).saturating_sub(prev);
            for v in 0..p {
                let reach = self.board.deg(v) + (remaining & self.shared.incident[v]).count_ones() as usize;
                if reach < need {
                    return false;
                }
            }
        }
        true
    }

    /// `exact`: the board has not changed since `alive` was last refined,
    /// so every live pair at or after `i` is addable.
    fn dfs(&mut self, i: usize, mut alive: u128, exact: bool) {
        if !self.tick() {
            return;
        }
        self.shared.record(&self.board);
        if i == self.shared.slots.len() {
            return;
        }
        let best = self.shared.best.load(Ordering::Relaxed);
        if !self.bound_ok(i, &mut alive, exact, best) {
            return;
        }
        let (u, v) = self.shared.slots[i];
        if alive >> i & 1 == 1 {
            self.board.add(u, v);
            self.dfs(i + 1, alive, false);
            self.board.remove(u, v);
        }
        let skip = alive & !(1u128 << i) & !self.forced_empty_after(i);
        self.dfs(i + 1, skip, true);
    }
}

fn all_pairs(p: usize) -> Vec<(usize, usize)> {
    (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect()
}

/// One order `q`, given the exact value at `q-1` if known.
fn search_order(
    family: &Family,
    q: usize,
    prev_exact: Option<usize>,
    cfg: &SearchConfig,
    deadline: Option<Instant>,
) -> OracleResult {
    let symmetry = cfg.symmetry_breaking;
    let slots = match (&cfg.slot_order, symmetry) {
        (Some(order), false) => order.clone(),
        _ => all_pairs(q),
    };
    debug_assert_eq!(slots.len(), binom2(q));
    let mut incident = vec![0u128; q];
    for (j, &(u, v)) in slots.iter().enumerate() {
        incident[u] |= 1 << j;
        incident[v] |= 1 << j;
    }
    let mut ceiling = binom2(q);
    if let (Some(prev), true) = (prev_exact, q >= 3) {
        ceiling = ceiling.min(q * prev / (q - 2));
    }
    let shared = Shared {
        family,
        slots,
        incident,
        best: AtomicUsize::new(0),
        witness: Mutex::new(None),
        ceiling,
        prev_exact,
        symmetry,
        nodes: AtomicU64::new(0),
        deadline,
        timed_out: AtomicBool::new(false),
    };
    let full: u128 = if binom2(q) == 128 { u128::MAX } else { (1u128 << binom2(q)) - 1 };

    // Each task: a fixed prefix of decisions, then a DFS from the next slot.
    let run = |prefix: &[bool], cap: usize, class_split: usize| {
        let mut w = Worker { shared: &shared, board: Board::new(q), cap, class_split, local_nodes: 0 };
        let mut alive = full;
        for (j, &take) in prefix.iter().enumerate() {
            let (u, v) = shared.slots[j];
            if take {
                if !w.addable(u, v) {
                    return;
                }
                w.board.add(u, v);
            } else {
                alive &= !(1u128 << j);
            }
        }
        w.dfs(prefix.len(), alive, false);
        w.flush();
    };

    if q < 2 {
        shared.record(&Board::new(q));
    } else if symmetry {
        // Row 0 is 1..=d; vertex 0 has the maximum degree d.
        let tasks: Vec<usize> = (0..q).rev().collect();
        let task = |&d: &usize| {
            let prefix: Vec<bool> = (1..q).map(|v| v <= d).collect();
            run(&prefix, d, d);
        };
        if cfg.parallel {
            tasks.par_iter().for_each(task);
        } else {
            tasks.iter().for_each(task);
        }
    } else {
        let depth = binom2(q).min(2);
        let tasks: Vec<Vec<bool>> =
            (0..1usize << depth).map(|m| (0..depth).map(|b| m >> (depth - 1 - b) & 1 == 0).collect()).collect();
        let task = |prefix: &Vec<bool>| run(prefix, q, q);
        if cfg.parallel {
            tasks.par_iter().for_each(task);
        } else {
            tasks.iter().for_each(task);
        }
    }

    let value = shared.best.load(Ordering::SeqCst);
    let witness = shared.witness.lock().expect("witness lock poisoned").take().unwrap_or_else(|| Graph::empty(q));
    debug_assert_eq!(witness.edge_count(), value);
    OracleResult {
        p: q,
        value,
        exhaustive: !shared.timed_out.load(Ordering::SeqCst),
        witness,
        nodes: shared.nodes.load(Ordering::SeqCst),
    }
}

fn check_cap(p: usize, cfg: &SearchConfig) -> Result<(), OracleError> {
    let cap = cfg.max_p.min(HARD_MAX_P);
    if p > cap {
        return Err(OracleError::OverCap { p, cap });
    }
    Ok(())
}

/// ex(q; patterns) for every q in 0..=p. An empty pattern list forbids
/// nothing, so every value is C(q, 2).
pub fn oracle_series_for(patterns: &[TreePattern], p: usize, cfg: &SearchConfig) -> Result<Vec<OracleResult>, OracleError> {
    check_cap(p, cfg)?;
    if let Some(order) = &cfg.slot_order {
        if !cfg.symmetry_breaking {
            let mut sorted: Vec<(usize, usize)> = order.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            sorted.sort_unstable();
            if sorted != all_pairs(p) {
                return Err(OracleError::BadSlotOrder { p });
            }
        }
    }
    let family = Family::new(patterns, cfg.full_recheck);
    let deadline = cfg.budget.map(|b| Instant::now() + b);
    let mut out: Vec<OracleResult> = Vec::with_capacity(p + 1);
    for q in 0..=p {
        let prev_exact = out.last().filter(|r| r.exhaustive).map(|r| r.value);
        // a custom pair order only applies to the requested order itself
        let local;
        let cfg_q = if q == p || cfg.slot_order.is_none() {
            cfg
        } else {
            local = SearchConfig { slot_order: None, ..cfg.clone() };
            &local
        };
        out.push(search_order(&family, q, prev_exact, cfg_q, deadline));
    }
    Ok(out)
}

pub fn oracle_series(family: &ForbiddenFamily, p: usize, cfg: &SearchConfig) -> Result<Vec<OracleResult>, OracleError> {
    oracle_series_for(family.patterns(), p, cfg)
}

/// ex(p; family) by exhaustive search.
pub fn oracle_ex(family: &ForbiddenFamily, p: usize, cfg: &SearchConfig) -> Result<OracleResult, OracleError> {
    Ok(oracle_series(family, p, cfg)?.pop().expect("series covers 0..=p"))
}

/// ex(p; family) for a family of several patterns; a graph must avoid
/// every member. Same search as [`oracle_ex`].
pub fn oracle_mixed(p: usize, family: &ForbiddenFamily, cfg: &SearchConfig) -> Result<OracleResult, OracleError> {
    oracle_ex(family, p, cfg)
}

/// The family {K_{1,n-2}, T*_n} whose extremal number at order n-1+r is
/// given by [`crate::formulas::ex_mixed`].
pub fn star_spider_family(n: usize) -> Result<ForbiddenFamily, OracleError> {
    Ok(ForbiddenFamily::new([TreePattern::star(n - 1)?, TreePattern::spider(n)?])?)
}

/// One row of a formula-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub pattern: String,
    pub p: usize,
    pub formula: u64,
    pub oracle: usize,
    pub exhaustive: bool,
    /// Edge count of the audited constructor witness.
    pub witness: usize,
}

impl SweepRow {
    /// Exhaustive and equal; a non-exhaustive row only refutes when the
    /// search already beat the formula.
    pub fn agrees(&self) -> bool {
        if self.witness as u64 != self.formula {
            return false;
        }
        if self.exhaustive {
            self.formula == self.oracle as u64
        } else {
            self.oracle as u64 <= self.formula
        }
    }
}

/// Compares the closed form, the oracle and the constructed witness for
/// `pattern` at every order in `p_range`.
pub fn verify_sweep(
    pattern: &TreePattern,
    p_range: RangeInclusive<usize>,
    cfg: &SearchConfig,
) -> Result<Vec<SweepRow>, VerifyError> {
    let (lo, hi) = (*p_range.start(), *p_range.end());
    if hi < lo {
        return Ok(Vec::new());
    }
    let series = oracle_series(&ForbiddenFamily::single(*pattern), hi, cfg)?;
    let mut rows = Vec::new();
    for res in series.into_iter().skip(lo) {
        let formula = ex_pattern(res.p, pattern)?.value;
        let witness = extremal(pattern, res.p, Audit::Full)?.edge_count();
        rows.push(SweepRow {
            pattern: pattern.to_string(),
            p: res.p,
            formula,
            oracle: res.value,
            exhaustive: res.exhaustive,
            witness,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::family_free;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(s: &str) -> ForbiddenFamily {
        s.parse().unwrap()
    }

    #[test]
    fn empty_family_is_complete() {
        let series = oracle_series_for(&[], 6, &SearchConfig::default()).unwrap();
        for r in series {
            assert_eq!(r.value, binom2(r.p));
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn single_patterns_match_formulas() {
        for s in ["star:4", "star:5", "path:4", "path:5", "broom:5", "broom:6", "spider:6", "spider:7"] {
            let pat: TreePattern = s.parse().unwrap();
            let series = oracle_series(&ForbiddenFamily::single(pat), 8, &SearchConfig::default()).unwrap();
            for r in series.iter().skip(1) {
                assert!(r.exhaustive);
                assert_eq!(r.value as u64, ex_pattern(r.p, &pat).unwrap().value, "{s} p={}", r.p);
                assert_eq!(r.witness.edge_count(), r.value);
                assert!(family_free(&r.witness, &ForbiddenFamily::single(pat)));
            }
        }
    }

    #[test]
    fn mixed_small_cases() {
        let cfg = SearchConfig::default();
        assert_eq!(oracle_mixed(7, &star_spider_family(7).unwrap(), &cfg).unwrap().value, 13);
        // K_{1,5} is the 6-vertex star
        assert_eq!(oracle_mixed(8, &fam("star:6,spider:7"), &cfg).unwrap().value, 16);
        assert_eq!(oracle_mixed(8, &fam("star:5,spider:7"), &cfg).unwrap().value, 12);
        assert_eq!(oracle_mixed(4, &fam("star:3"), &cfg).unwrap().value, 2);
        for p in 0..=9 {
            assert_eq!(oracle_mixed(p, &fam("path:2"), &cfg).unwrap().value, 0);
        }
    }

    #[test]
    fn named_values() {
        let cfg = SearchConfig::default();
        assert_eq!(oracle_ex(&fam("path:4"), 5, &cfg).unwrap().value, 4);
        assert_eq!(oracle_ex(&fam("spider:6"), 6, &cfg).unwrap().value, 10);
        assert_eq!(oracle_ex(&fam("star:4"), 6, &cfg).unwrap().value, 6);
    }

    #[test]
    fn sweep_rows() {
        let rows = verify_sweep(&TreePattern::spider(6).unwrap(), 6..=8, &SearchConfig::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(SweepRow::agrees), "{rows:?}");
        let rows = verify_sweep(&TreePattern::star(4).unwrap(), 3..=8, &SearchConfig::default()).unwrap();
        assert_eq!(rows.iter().map(|r| r.oracle).collect::<Vec<_>>(), vec![3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn modes_agree() {
        let family = fam("spider:6,broom:6");
        let base = oracle_ex(&family, 7, &SearchConfig::default()).unwrap().value;
        let plain = SearchConfig { symmetry_breaking: false, parallel: false, ..SearchConfig::default() };
        assert_eq!(oracle_ex(&family, 7, &plain).unwrap().value, base);
        let recheck = SearchConfig { full_recheck: true, ..SearchConfig::default() };
        assert_eq!(oracle_ex(&family, 7, &recheck).unwrap().value, base);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let mut order = all_pairs(7);
            order.shuffle(&mut rng);
            let cfg = SearchConfig { symmetry_breaking: false, slot_order: Some(order), ..SearchConfig::default() };
            assert_eq!(oracle_ex(&family, 7, &cfg).unwrap().value, base);
        }
    }

    #[test]
    fn cap_and_budget() {
        let cfg = SearchConfig::default();
        assert!(matches!(oracle_ex(&fam("path:5"), 10, &cfg), Err(OracleError::OverCap { p: 10, cap: 9 })));
        let tight = SearchConfig { max_p: 12, budget: Some(Duration::from_millis(1)), ..SearchConfig::default() };
        let r = oracle_ex(&fam("spider:7"), 12, &tight).unwrap();
        assert!(!r.exhaustive);
        assert!(r.value as u64 <= ex_pattern(12, &TreePattern::spider(7).unwrap()).unwrap().value);
    }

    #[test]
    fn rejects_partial_slot_order() {
        let cfg = SearchConfig { symmetry_breaking: false, slot_order: Some(vec![(0, 1)]), ..SearchConfig::default() };
        assert!(matches!(oracle_ex(&fam("path:4"), 4, &cfg), Err(OracleError::BadSlotOrder { p: 4 })));
    }
}
