//! Exact `ex(n, H, F)` for tiny `n` by exhaustive search.
//!
//! The search walks the `C(n,2)` vertex pairs in lexicographic order and
//! branches on include/exclude. Including a pair is only allowed when it
//! does not complete a copy of `F`; the check is anchored at the new edge,
//! so it only looks at copies that use it.
//!
//! Only edge-maximal `F`-free graphs are evaluated. Copy counts are
//! monotone under adding edges, and every `F`-free graph is contained in an
//! edge-maximal one, so the maximum over maximal graphs is the maximum over
//! all `F`-free graphs. `sweep_ex` re-derives small values from all
//! `2^C(n,2)` labeled graphs as a check on this argument.
//!
//! Pruning:
//! * bound: after excluding a pair, the count of `H` in the current graph
//!   plus all undecided pairs bounds every leaf below; the branch is cut
//!   only when that bound is strictly below the best value found, so every
//!   optimal leaf survives and witness tie-breaking stays exact;
//! * isomorphism memo: when the rows of vertices `0..=i` are fully decided
//!   (for `i < 3`), the remaining search depends only on the decided graph
//!   up to permutations that keep `{0..=i}` and the rest as blocks. A state
//!   whose colored canonical key was already seen is skipped.
//!
//! Branches below the second row boundary run in parallel, sharing the best
//! value as a monotone bound. Witnesses are chosen as the lexicographically
//! least canonical graph6 among the optimal graphs, which does not depend
//! on the schedule.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph6, colored_key};
use crate::counting::{automorphism_count, count_copies, count_embeddings, CountOptions, EmbeddingPlan};
use crate::error::{Error, Result};
use crate::graph::{BitAdj, Graph};
use crate::graph6;
use crate::util::{deserialize_biguint, serialize_biguint};

pub const MAX_ORACLE_N: usize = 9;
pub const MAX_SWEEP_N: usize = 6;
const MEMO_ROWS: usize = 3;
const MEMO_CAPACITY: usize = 1_000_000;
const DEADLINE_CHECK_MASK: u64 = 0xfff;
pub const CACHE_ENV: &str = "TURAN_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".turan-cache";
const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStats {
    pub nodes: u64,
    pub maximal_graphs: u64,
    pub memo_hits: u64,
    pub pruned: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub schema: u32,
    pub n: usize,
    pub h_g6: String,
    pub f_g6: String,
    #[serde(serialize_with = "serialize_biguint", deserialize_with = "deserialize_biguint")]
    pub value: BigUint,
    pub witness_g6: String,
    pub stats: OracleStats,
    /// false when the search stopped at the timeout; `value` is then only a
    /// lower bound
    pub complete: bool,
}

impl ExtremalResult {
    pub fn witness(&self) -> Result<Graph> {
        graph6::decode(&self.witness_g6)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleOptions {
    /// worker threads; `None` uses the global pool
    pub jobs: Option<usize>,
    pub timeout: Option<Duration>,
    /// `false` runs the whole search on the calling thread
    pub serial: bool,
}

fn check_inputs(n: usize, h: Option<&Graph>, f: &Graph) -> Result<()> {
    if n > MAX_ORACLE_N {
        return Err(Error::UnsupportedSize(format!(
            "exact search is capped at n = {MAX_ORACLE_N}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if f.order() <= 1 {
        return Err(Error::InvalidArgument(
            "forbidden graph with at most one vertex is trivial".into(),
        ));
    }
    if h.is_some_and(|h| h.order() == 0) {
        return Err(Error::InvalidArgument("pattern graph is empty".into()));
    }
    if f.edge_count() == 0 && n >= f.order() {
        return Err(Error::Infeasible(format!(
            "every graph on {n} vertices contains {} isolated vertices",
            f.order()
        )));
    }
    Ok(())
}

/// Forbidden-graph test localized to one new edge: one anchored plan per
/// orbit of directed edges of `F`.
struct EdgeCheck {
    plans: Vec<EmbeddingPlan>,
}

impl EdgeCheck {
    fn new(f: &Graph) -> Self {
        let mut seen = HashSet::new();
        let mut plans = Vec::new();
        for (a, b) in f.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let mut colors = vec![0u32; f.order()];
                colors[x] = 1;
                colors[y] = 2;
                if seen.insert(colored_key(f, &colors)) {
                    plans.push(EmbeddingPlan::new(f, &[x, y]));
                }
            }
        }
        EdgeCheck { plans }
    }

    /// Whether the graph in `rows` (which contains the edge `uv`) has a copy
    /// of `F` through `uv`.
    fn hits(&self, rows: &[u64], u: usize, v: usize) -> bool {
        let host = BitAdj {
            order: rows.len(),
            words: 1,
            bits: rows,
        };
        let opts = CountOptions {
            existence_only: true,
            parallel: false,
        };
        self.plans.iter().any(|p| p.count(host, &[u, v], opts) > 0)
    }
}

struct HCounter {
    plan: EmbeddingPlan,
    aut: u128,
}

impl HCounter {
    fn count(&self, rows: &[u64]) -> u64 {
        let host = BitAdj {
            order: rows.len(),
            words: 1,
            bits: rows,
        };
        let opts = CountOptions {
            existence_only: false,
            parallel: false,
        };
        (self.plan.count(host, &[], opts) / self.aut) as u64
    }
}

struct Search {
    n: usize,
    slots: Vec<(usize, usize)>,
    /// slot index at which the rows of `0..=i` are decided, for `i < MEMO_ROWS`
    boundaries: Vec<usize>,
    check: EdgeCheck,
    h: Option<HCounter>,
    memo: Mutex<HashSet<Vec<u64>>>,
    best: AtomicU64,
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

#[derive(Clone)]
struct State {
    rows: Vec<u64>,
    open: Vec<u64>,
}

impl State {
    fn set(rows: &mut [u64], u: usize, v: usize, on: bool) {
        if on {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        } else {
            rows[u] &= !(1 << v);
            rows[v] &= !(1 << u);
        }
    }
}

#[derive(Default)]
struct Local {
    stats: OracleStats,
    best: Option<(u64, String)>,
    collected: Vec<Graph>,
    frontier: Vec<(usize, State)>,
}

impl Local {
    fn merge(mut self, other: Local) -> Local {
        self.stats.nodes += other.stats.nodes;
        self.stats.maximal_graphs += other.stats.maximal_graphs;
        self.stats.memo_hits += other.stats.memo_hits;
        self.stats.pruned += other.stats.pruned;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(better(a, b)),
            (a, b) => a.or(b),
        };
        self.collected.extend(other.collected);
        self
    }
}

/// Higher value wins; ties go to the lexicographically least graph6.
fn better(a: (u64, String), b: (u64, String)) -> (u64, String) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

impl Search {
    fn new(n: usize, h: Option<&Graph>, f: &Graph, deadline: Option<Instant>) -> Result<Self> {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut boundaries = Vec::new();
        let mut end = 0;
        for i in 0..MEMO_ROWS.min(n) {
            end += n - 1 - i;
            boundaries.push(end);
        }
        let h = match h {
            Some(h) if h.order() <= n => Some(HCounter {
                plan: EmbeddingPlan::new(h, &[]),
                aut: automorphism_count(h)?
                    .to_u128()
                    .ok_or_else(|| Error::Internal("automorphism count overflow".into()))?,
            }),
            _ => None,
        };
        Ok(Search {
            n,
            slots,
            boundaries,
            check: EdgeCheck::new(f),
            h,
            memo: Mutex::new(HashSet::new()),
            best: AtomicU64::new(0),
            deadline,
            aborted: AtomicBool::new(false),
        })
    }

    fn initial_state(&self) -> State {
        let full = |u: usize| ((1u64 << self.n) - 1) & !(1 << u);
        State {
            rows: vec![0; self.n],
            open: (0..self.n).map(full).collect(),
        }
    }

    fn memo_seen(&self, slot: usize, rows: &[u64]) -> bool {
        let Some(level) = self.boundaries.iter().position(|&b| b == slot) else {
            return false;
        };
        let g = Graph::from_bits(self.n, rows.to_vec());
        let colors: Vec<u32> = (0..self.n).map(|v| (v > level) as u32).collect();
        let mut key = colored_key(&g, &colors);
        key.push(level as u64);
        let mut memo = self.memo.lock().expect("memo lock");
        if memo.len() >= MEMO_CAPACITY {
            return false;
        }
        !memo.insert(key)
    }

    fn is_maximal(&self, rows: &mut [u64]) -> bool {
        for &(u, v) in &self.slots {
            if rows[u] >> v & 1 == 1 {
                continue;
            }
            State::set(rows, u, v, true);
            let hit = self.check.hits(rows, u, v);
            State::set(rows, u, v, false);
            if !hit {
                return false;
            }
        }
        true
    }

    fn leaf(&self, st: &mut State, local: &mut Local, collect: bool) {
        if !self.is_maximal(&mut st.rows) {
            return;
        }
        local.stats.maximal_graphs += 1;
        if collect {
            local.collected.push(Graph::from_bits(self.n, st.rows.clone()));
        }
        let value = self.h.as_ref().map_or(0, |h| h.count(&st.rows));
        if local.best.as_ref().is_some_and(|b| value < b.0) {
            return;
        }
        let g6 = canonical_graph6(&Graph::from_bits(self.n, st.rows.clone()))
            .expect("oracle orders fit graph6");
        local.best = Some(match local.best.take() {
            Some(b) => better(b, (value, g6)),
            None => (value, g6),
        });
        self.best.fetch_max(value, Ordering::Relaxed);
    }

    /// `resume` marks a frontier state that already passed its memo check.
    fn dfs(
        &self,
        st: &mut State,
        slot: usize,
        local: &mut Local,
        stop: Option<usize>,
        collect: bool,
        resume: bool,
    ) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        local.stats.nodes += 1;
        if local.stats.nodes & DEADLINE_CHECK_MASK == 1
            && self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        if !resume {
            if slot < self.slots.len() && self.memo_seen(slot, &st.rows) {
                local.stats.memo_hits += 1;
                return;
            }
            if stop == Some(slot) {
                local.frontier.push((slot, st.clone()));
                return;
            }
        }
        if slot == self.slots.len() {
            self.leaf(st, local, collect);
            return;
        }
        let (u, v) = self.slots[slot];
        State::set(&mut st.open, u, v, false);

        State::set(&mut st.rows, u, v, true);
        if !self.check.hits(&st.rows, u, v) {
            self.dfs(st, slot + 1, local, stop, collect, false);
        }
        State::set(&mut st.rows, u, v, false);

        let cut = match &self.h {
            Some(h) => {
                let best = self.best.load(Ordering::Relaxed);
                best > 0 && {
                    let union: Vec<u64> = st.rows.iter().zip(&st.open).map(|(r, o)| r | o).collect();
                    h.count(&union) < best
                }
            }
            None => false,
        };
        if cut {
            local.stats.pruned += 1;
        } else {
            self.dfs(st, slot + 1, local, stop, collect, false);
        }
        State::set(&mut st.open, u, v, true);
    }

    fn run(&self, parallel: bool, collect: bool) -> Local {
        let mut st = self.initial_state();
        let mut top = Local::default();
        let stop = if parallel && self.boundaries.len() >= 2 {
            Some(self.boundaries[1])
        } else {
            None
        };
        self.dfs(&mut st, 0, &mut top, stop, collect, false);
        let frontier = std::mem::take(&mut top.frontier);
        let rest = frontier
            .into_par_iter()
            .map(|(slot, mut st)| {
                let mut local = Local::default();
                self.dfs(&mut st, slot, &mut local, None, collect, true);
                local
            })
            .reduce(Local::default, Local::merge);
        top.merge(rest)
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Exact maximum number of copies of `h` over `F`-free graphs on `n`
/// vertices, with a witness.
pub fn exact_ex(n: usize, h: &Graph, f: &Graph, opts: OracleOptions) -> Result<ExtremalResult> {
    check_inputs(n, Some(h), f)?;
    let start = Instant::now();
    let search = Search::new(n, Some(h), f, opts.timeout.map(|t| start + t))?;
    let local = in_pool(opts.jobs, || search.run(!opts.serial, false))?;
    let complete = !search.aborted.load(Ordering::Relaxed);

    let witness_g6 = match local.best {
        Some((_, g6)) => g6,
        // only reachable after a timeout: the empty graph is always F-free
        None => canonical_graph6(&Graph::empty(n))?,
    };
    let witness = graph6::decode(&witness_g6)?;
    // re-verify with the generic counters, not the incremental check
    if !count_embeddings(f, &witness, true).is_zero() {
        return Err(Error::Internal(format!("witness {witness_g6} contains F")));
    }
    let value = count_copies(h, &witness)?.value;
    let mut stats = local.stats;
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(ExtremalResult {
        schema: SCHEMA,
        n,
        h_g6: canonical_graph6(h)?,
        f_g6: canonical_graph6(f)?,
        value,
        witness_g6,
        stats,
        complete,
    })
}

/// Every edge-maximal `F`-free graph on `n` vertices, one labeled
/// representative per isomorphism class, ordered by canonical graph6. Every
/// `F`-free graph is a subgraph of some relabeling of a returned graph.
pub fn enumerate_maximal_free(n: usize, f: &Graph) -> Result<Vec<Graph>> {
    check_inputs(n, None, f)?;
    let search = Search::new(n, None, f, None)?;
    let mut classes = std::collections::BTreeMap::new();
    for g in search.run(false, true).collected {
        classes.entry(canonical_graph6(&g)?).or_insert(g);
    }
    Ok(classes.into_values().collect())
}

/// Reference value from all `2^C(n,2)` labeled graphs, for small `n`.
/// Returns the value and the least canonical graph6 among optimal
/// edge-maximal graphs.
/// Sorts after every graph6 string, so non-maximal graphs never win a tie.
const NOT_MAXIMAL: &str = "\u{7f}";

pub fn sweep_ex(n: usize, h: &Graph, f: &Graph) -> Result<(BigUint, String)> {
    if n > MAX_SWEEP_N {
        return Err(Error::UnsupportedSize(format!("sweep is capped at n = {MAX_SWEEP_N}, got {n}")));
    }
    check_inputs(n, Some(h), f)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let best = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|mask| -> Result<Option<(BigUint, String)>> {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::new(n, edges)?;
            if !count_embeddings(f, &g, true).is_zero() {
                return Ok(None);
            }
            // witnesses are compared among edge-maximal graphs, as in the search
            let maximal = pairs.iter().all(|&(u, v)| {
                g.has_edge(u, v)
                    || !count_embeddings(f, &g.with_edge(u, v).expect("valid pair"), true).is_zero()
            });
            let key = if maximal { canonical_graph6(&g)? } else { NOT_MAXIMAL.to_string() };
            Ok(Some((count_copies(h, &g)?.value, key)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    best.ok_or_else(|| Error::Internal("the empty graph should be F-free".into()))
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn cache_path(dir: &Path, n: usize, h_g6: &str, f_g6: &str) -> PathBuf {
    let key = format!("{n}|{h_g6}|{f_g6}");
    dir.join(format!("{}.json", hex::encode(key)))
}

/// Loads a cached result if it parses and re-verifies.
fn load_verified(path: &Path, n: usize, h: &Graph, f: &Graph, h_g6: &str, f_g6: &str) -> Option<ExtremalResult> {
    let text = fs::read_to_string(path).ok()?;
    let r: ExtremalResult = serde_json::from_str(&text).ok()?;
    if r.schema != SCHEMA || !r.complete || r.n != n || r.h_g6 != h_g6 || r.f_g6 != f_g6 {
        return None;
    }
    let w = r.witness().ok()?;
    let ok = w.order() == n
        && count_embeddings(f, &w, true).is_zero()
        && count_copies(h, &w).ok()?.value == r.value;
    ok.then_some(r)
}

/// `exact_ex` through the on-disk cache in `dir`. Returns the result and
/// whether it came from the cache. Only complete results are stored;
/// entries that fail to parse or re-verify are recomputed and replaced.
pub fn exact_ex_cached(
    n: usize,
    h: &Graph,
    f: &Graph,
    opts: OracleOptions,
    dir: &Path,
) -> Result<(ExtremalResult, bool)> {
    check_inputs(n, Some(h), f)?;
    let (h_g6, f_g6) = (canonical_graph6(h)?, canonical_graph6(f)?);
    let path = cache_path(dir, n, &h_g6, &f_g6);
    if let Some(r) = load_verified(&path, n, h, f, &h_g6, &f_g6) {
        return Ok((r, true));
    }
    let r = exact_ex(n, h, f, opts)?;
    if r.complete {
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension("tmp");
        let json = serde_json::to_string_pretty(&r)
            .map_err(|e| Error::Internal(format!("serializing result: {e}")))?;
        fs::write(&tmp, json)?;
        fs::rename(&tmp, &path)?;
    }
    Ok((r, false))
}
