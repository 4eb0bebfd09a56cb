//! Embedding and copy counting.
//!
//! An embedding of `h` into `g` is an injective map `V(h) -> V(g)` sending
//! edges to edges (non-edges unconstrained). The counter places a *prefix*
//! of pattern vertices by backtracking over bitset candidate sets, then
//! counts the remaining *tail* in closed form: the tail is an independent
//! set whose neighbors all lie in the prefix, so once the prefix is placed
//! each tail vertex has a fixed candidate set `S_i` and the number of
//! injective completions is
//!
//!   sum over set partitions P of the tail of
//!       prod over blocks B of (-1)^(|B|-1) (|B|-1)! |intersection of S_i, i in B|
//!
//! which collapses to a falling factorial when all `S_i` coincide.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{iter_bits, words_for, BitAdj, Graph};
use crate::tree;

/// Largest non-tree pattern accepted by `automorphism_count`.
pub const MAX_GENERIC_AUT_ORDER: usize = 12;
/// Tails with several distinct candidate sets are capped so the number of
/// set partitions (Bell(7) = 877) stays small.
const MAX_MIXED_TAIL: usize = 7;
/// Hosts below this order are counted serially.
const PARALLEL_MIN_HOST: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    Total,
    FixedAnchors,
    Existence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCount {
    #[serde(serialize_with = "crate::util::serialize_biguint")]
    pub value: BigUint,
    pub mode: CountMode,
}

impl EmbeddingCount {
    fn new(value: impl Into<BigUint>, mode: CountMode) -> Self {
        EmbeddingCount {
            value: value.into(),
            mode,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.value.to_u128()
    }
}

impl fmt::Display for EmbeddingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub existence_only: bool,
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            existence_only: false,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug)]
enum TailKind {
    None,
    /// every tail vertex has the same candidate set
    Falling,
    /// (coefficient, blocks as bitmasks over tail indices)
    Mobius(Vec<(i128, Vec<u32>)>),
}

/// A precomputed placement order for one pattern and anchor set. Plans are
/// reusable across hosts, which the oracle relies on.
#[derive(Clone, Debug)]
pub struct EmbeddingPlan {
    pattern_order: usize,
    prefix: Vec<usize>,
    back: Vec<Vec<usize>>,
    need_degree: Vec<usize>,
    anchors: usize,
    tail: Vec<Vec<usize>>,
    tail_kind: TailKind,
}

impl EmbeddingPlan {
    /// Plan for `h` with `anchors` placed first, in the given order.
    pub fn new(h: &Graph, anchors: &[usize]) -> Self {
        let m = h.order();
        let is_anchor = {
            let mut v = vec![false; m];
            for &a in anchors {
                v[a] = true;
            }
            v
        };

        // Tail: greedy independent set, low degree first.
        let mut by_degree: Vec<usize> = (0..m).filter(|&v| !is_anchor[v]).collect();
        by_degree.sort_by_key(|&v| (h.degree(v), v));
        let mut in_tail = vec![false; m];
        let mut tail_vs = Vec::new();
        for v in by_degree {
            if h.neighbors(v).iter().all(|&w| !in_tail[w]) {
                in_tail[v] = true;
                tail_vs.push(v);
            }
        }
        let distinct_sets = |vs: &[usize]| {
            let mut sets: Vec<&[usize]> = vs.iter().map(|&v| h.neighbors(v)).collect();
            sets.sort();
            sets.dedup();
            sets.len()
        };
        while tail_vs.len() > MAX_MIXED_TAIL && distinct_sets(&tail_vs) > 1 {
            let v = tail_vs.pop().unwrap();
            in_tail[v] = false;
        }

        // Prefix: anchors, then most-constrained first.
        let mut prefix: Vec<usize> = anchors.to_vec();
        let mut placed = is_anchor.clone();
        let mut position = vec![usize::MAX; m];
        for (i, &a) in anchors.iter().enumerate() {
            position[a] = i;
        }
        let prefix_len = m - tail_vs.len();
        while prefix.len() < prefix_len {
            let next = (0..m)
                .filter(|&v| !placed[v] && !in_tail[v])
                .max_by_key(|&v| {
                    let placed_nbrs = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (placed_nbrs, h.degree(v), std::cmp::Reverse(v))
                })
                .expect("prefix vertices remain");
            position[next] = prefix.len();
            placed[next] = true;
            prefix.push(next);
        }
        let back = prefix
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                h.neighbors(v)
                    .iter()
                    .map(|&w| position[w])
                    .filter(|&p| p < i)
                    .collect()
            })
            .collect();
        let need_degree = prefix.iter().map(|&v| h.degree(v)).collect();
        let tail: Vec<Vec<usize>> = tail_vs
            .iter()
            .map(|&v| {
                let mut b: Vec<usize> = h.neighbors(v).iter().map(|&w| position[w]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let tail_kind = if tail.is_empty() {
            TailKind::None
        } else if tail.iter().all(|b| b == &tail[0]) {
            TailKind::Falling
        } else {
            TailKind::Mobius(set_partitions(tail.len()))
        };
        EmbeddingPlan {
            pattern_order: m,
            prefix,
            back,
            need_degree,
            anchors: anchors.len(),
            tail,
            tail_kind,
        }
    }

    pub fn pattern_order(&self) -> usize {
        self.pattern_order
    }

    /// Counts embeddings into `host` whose anchors map to `images`. In
    /// existence mode the result is 0 or 1.
    pub fn count(&self, host: BitAdj<'_>, images: &[usize], opts: CountOptions) -> u128 {
        debug_assert_eq!(images.len(), self.anchors);
        if self.pattern_order > host.order {
            return 0;
        }
        let mut run = Run::new(self, host, opts.existence_only);
        for (i, &x) in images.iter().enumerate() {
            if !run.anchor_fits(i, x) {
                return 0;
            }
            run.place(i, x);
        }
        let depth = self.anchors;
        if opts.parallel && !opts.existence_only && host.order >= PARALLEL_MIN_HOST && depth < self.prefix.len() {
            let cands: Vec<usize> = run.candidates(depth).collect();
            let need = self.need_degree[depth];
            cands
                .into_par_iter()
                .filter(|&x| run.host_degree[x] >= need)
                .map(|x| {
                    let mut local = run.clone();
                    local.place(depth, x);
                    local.dfs(depth + 1)
                })
                .sum()
        } else {
            run.dfs(depth)
        }
    }
}

#[derive(Clone)]
struct Run<'a> {
    plan: &'a EmbeddingPlan,
    host: BitAdj<'a>,
    host_degree: Vec<usize>,
    images: Vec<usize>,
    used: Vec<u64>,
    full: Vec<u64>,
    scratch: Vec<Vec<u64>>,
    inter: Vec<u64>,
    inter_pop: Vec<u64>,
    existence: bool,
}

impl<'a> Run<'a> {
    fn new(plan: &'a EmbeddingPlan, host: BitAdj<'a>, existence: bool) -> Self {
        let words = host.words;
        let mut full = vec![0u64; words];
        for v in 0..host.order {
            full[v / 64] |= 1 << (v % 64);
        }
        let tail_masks = 1usize << plan.tail.len();
        Run {
            plan,
            host,
            host_degree: (0..host.order).map(|v| host.degree(v)).collect(),
            images: vec![usize::MAX; plan.prefix.len()],
            used: vec![0; words],
            full,
            scratch: vec![vec![0; words]; plan.prefix.len() + 1],
            inter: vec![0; tail_masks * words],
            inter_pop: vec![0; tail_masks],
            existence,
        }
    }

    fn anchor_fits(&self, depth: usize, x: usize) -> bool {
        x < self.host.order
            && self.used[x / 64] >> (x % 64) & 1 == 0
            && self.plan.back[depth]
                .iter()
                .all(|&b| self.host.has_edge(self.images[b], x))
    }

    #[inline]
    fn place(&mut self, depth: usize, x: usize) {
        self.images[depth] = x;
        self.used[x / 64] |= 1 << (x % 64);
    }

    #[inline]
    fn unplace(&mut self, depth: usize) {
        let x = self.images[depth];
        self.used[x / 64] &= !(1 << (x % 64));
    }

    /// Fills `out` with the candidate set for a vertex adjacent to the
    /// images of `back`.
    fn fill_candidates(
        host: BitAdj<'_>,
        images: &[usize],
        used: &[u64],
        full: &[u64],
        back: &[usize],
        out: &mut [u64],
    ) {
        match back.split_first() {
            None => out.copy_from_slice(full),
            Some((&first, rest)) => {
                out.copy_from_slice(host.row(images[first]));
                for &b in rest {
                    for (o, r) in out.iter_mut().zip(host.row(images[b])) {
                        *o &= r;
                    }
                }
            }
        }
        for (o, u) in out.iter_mut().zip(used) {
            *o &= !u;
        }
    }

    fn candidates(&mut self, depth: usize) -> impl Iterator<Item = usize> + '_ {
        let mut buf = std::mem::take(&mut self.scratch[depth]);
        Self::fill_candidates(
            self.host,
            &self.images,
            &self.used,
            &self.full,
            &self.plan.back[depth],
            &mut buf,
        );
        self.scratch[depth] = buf;
        iter_bits(&self.scratch[depth])
    }

    fn dfs(&mut self, depth: usize) -> u128 {
        if depth == self.plan.prefix.len() {
            return self.tail_count();
        }
        let mut buf = std::mem::take(&mut self.scratch[depth]);
        Self::fill_candidates(
            self.host,
            &self.images,
            &self.used,
            &self.full,
            &self.plan.back[depth],
            &mut buf,
        );
        let need = self.plan.need_degree[depth];
        let mut total = 0u128;
        for wi in 0..buf.len() {
            let mut word = buf[wi];
            while word != 0 {
                let x = wi * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if self.host_degree[x] < need {
                    continue;
                }
                self.place(depth, x);
                total += self.dfs(depth + 1);
                self.unplace(depth);
                if self.existence && total > 0 {
                    self.scratch[depth] = buf;
                    return 1;
                }
            }
        }
        self.scratch[depth] = buf;
        total
    }

    fn tail_count(&mut self) -> u128 {
        let words = self.host.words;
        match &self.plan.tail_kind {
            TailKind::None => 1,
            TailKind::Falling => {
                let mut set = std::mem::take(&mut self.inter);
                Self::fill_candidates(
                    self.host,
                    &self.images,
                    &self.used,
                    &self.full,
                    &self.plan.tail[0],
                    &mut set[..words],
                );
                let c = popcount(&set[..words]) as u128;
                self.inter = set;
                let m = self.plan.tail.len() as u128;
                if c < m {
                    return 0;
                }
                let value = (0..m).map(|j| c - j).product::<u128>();
                if self.existence {
                    (value > 0) as u128
                } else {
                    value
                }
            }
            TailKind::Mobius(parts) => {
                let m = self.plan.tail.len();
                let mut inter = std::mem::take(&mut self.inter);
                for i in 0..m {
                    let mask = 1usize << i;
                    Self::fill_candidates(
                        self.host,
                        &self.images,
                        &self.used,
                        &self.full,
                        &self.plan.tail[i],
                        &mut inter[mask * words..(mask + 1) * words],
                    );
                }
                for mask in 1usize..(1 << m) {
                    let low = mask & mask.wrapping_neg();
                    let rest = mask ^ low;
                    if rest != 0 {
                        let (head, tail) = inter.split_at_mut(mask * words);
                        let target = &mut tail[..words];
                        let a = &head[rest * words..(rest + 1) * words];
                        let b = &head[low * words..(low + 1) * words];
                        for ((t, x), y) in target.iter_mut().zip(a).zip(b) {
                            *t = x & y;
                        }
                    }
                    self.inter_pop[mask] = popcount(&inter[mask * words..(mask + 1) * words]);
                }
                self.inter = inter;
                let mut total: i128 = 0;
                for (coef, blocks) in parts {
                    let mut prod = *coef;
                    for &b in blocks {
                        prod *= self.inter_pop[b as usize] as i128;
                        if prod == 0 {
                            break;
                        }
                    }
                    total += prod;
                }
                debug_assert!(total >= 0);
                let value = total as u128;
                if self.existence {
                    (value > 0) as u128
                } else {
                    value
                }
            }
        }
    }
}

#[inline]
fn popcount(row: &[u64]) -> u64 {
    row.iter().map(|w| w.count_ones() as u64).sum()
}

/// All set partitions of `{0..m}` with their Moebius coefficients.
fn set_partitions(m: usize) -> Vec<(i128, Vec<u32>)> {
    fn rec(i: usize, m: usize, blocks: &mut Vec<u32>, out: &mut Vec<(i128, Vec<u32>)>) {
        if i == m {
            let coef = blocks
                .iter()
                .map(|b| {
                    let size = b.count_ones() as i128;
                    let fact: i128 = (1..size).product();
                    if size % 2 == 0 {
                        -fact
                    } else {
                        fact
                    }
                })
                .product();
            out.push((coef, blocks.clone()));
            return;
        }
        for j in 0..blocks.len() {
            blocks[j] |= 1 << i;
            rec(i + 1, m, blocks, out);
            blocks[j] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, m, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::new(), &mut out);
    out
}

pub fn count_embeddings(h: &Graph, g: &Graph, existence_only: bool) -> EmbeddingCount {
    count_embeddings_with(
        h,
        g,
        CountOptions {
            existence_only,
            parallel: true,
        },
    )
}

pub fn count_embeddings_with(h: &Graph, g: &Graph, opts: CountOptions) -> EmbeddingCount {
    let plan = EmbeddingPlan::new(h, &[]);
    let value = plan.count(g.bit_adj(), &[], opts);
    let mode = if opts.existence_only {
        CountMode::Existence
    } else {
        CountMode::Total
    };
    EmbeddingCount::new(value, mode)
}

/// Anchored count together with the fixed-leaf bound bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct FixedCount {
    pub count: EmbeddingCount,
    /// For a tree with leaf anchors: whether anchors are pairwise more than
    /// distance 2 apart in the tree. `None` when not applicable.
    pub distance_hypothesis: Option<bool>,
    /// `(t-1)^((|V|-1)/2) * n^((|V|-2l+1)/2)` for the caller's `t`.
    pub bound: Option<f64>,
}

pub fn count_embeddings_fixed(
    t_graph: &Graph,
    anchors: &[usize],
    g: &Graph,
    images: &[usize],
    t: Option<u64>,
) -> Result<FixedCount> {
    if anchors.len() != images.len() {
        return Err(Error::InvalidArgument(format!(
            "{} anchors but {} images",
            anchors.len(),
            images.len()
        )));
    }
    if has_repeat(anchors) || has_repeat(images) {
        return Err(Error::InvalidArgument("anchors and images must be distinct".into()));
    }
    if let Some(&a) = anchors.iter().find(|&&a| a >= t_graph.order()) {
        return Err(Error::InvalidArgument(format!("anchor {a} is not a pattern vertex")));
    }
    if let Some(&x) = images.iter().find(|&&x| x >= g.order()) {
        return Err(Error::InvalidArgument(format!("image {x} is not a host vertex")));
    }
    let plan = EmbeddingPlan::new(t_graph, anchors);
    let value = plan.count(g.bit_adj(), images, CountOptions::default());

    let leaf_anchored = t_graph.is_tree() && anchors.iter().all(|&a| t_graph.degree(a) == 1);
    let distance_hypothesis = leaf_anchored.then(|| {
        anchors.iter().enumerate().all(|(i, &a)| {
            let dist = t_graph.distances_from(a);
            anchors[i + 1..].iter().all(|&b| dist[b].is_some_and(|d| d > 2))
        })
    });
    let bound = t.map(|t| {
        let v = t_graph.order() as f64;
        let l = anchors.len() as f64;
        let n = g.order() as f64;
        ((t - 1) as f64).powf((v - 1.0) / 2.0) * n.powf((v - 2.0 * l + 1.0) / 2.0)
    });
    Ok(FixedCount {
        count: EmbeddingCount::new(value, CountMode::FixedAnchors),
        distance_hypothesis,
        bound,
    })
}

fn has_repeat(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

/// |Aut(h)|: rooted canonical forms for trees, self-embedding count
/// otherwise.
pub fn automorphism_count(h: &Graph) -> Result<BigUint> {
    if h.is_tree() {
        return Ok(tree::tree_automorphism_count(h));
    }
    if h.order() > MAX_GENERIC_AUT_ORDER {
        return Err(Error::UnsupportedSize(format!(
            "automorphism count of a non-tree with {} > {MAX_GENERIC_AUT_ORDER} vertices",
            h.order()
        )));
    }
    Ok(count_embeddings(h, h, false).value)
}

/// Unlabeled (not necessarily induced) copies of `h` in `g`.
pub fn count_copies(h: &Graph, g: &Graph) -> Result<EmbeddingCount> {
    let aut = automorphism_count(h)?;
    let emb = count_embeddings(h, g, false).value;
    if !(&emb % &aut).is_zero() {
        return Err(Error::Internal(format!(
            "{emb} embeddings are not divisible by {aut} automorphisms"
        )));
    }
    Ok(EmbeddingCount::new(emb / aut, CountMode::Total))
}

/// Histogram of codegrees over unordered vertex pairs.
pub fn codegree_histogram(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let words = words_for(n);
    let bits = g.bit_adj();
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut hist = vec![0u64; n + 1];
            let ru = &bits.bits[u * words..(u + 1) * words];
            for v in u + 1..n {
                let c: u32 = ru
                    .iter()
                    .zip(bits.row(v))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                hist[c as usize] += 1;
            }
            hist
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    for row in rows {
        for (h, r) in hist.iter_mut().zip(row) {
            *h += r;
        }
    }
    hist
}

/// Copies of `K_{2,t}` via the codegree sum `sum_{u<v} C(codeg(u,v), t)`.
/// For `t = 2` every 4-cycle is seen from both diagonals, so the sum is
/// halved.
pub fn count_k2t(g: &Graph, t: u64) -> Result<EmbeddingCount> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    let hist = codegree_histogram(g);
    let mut total = BigUint::zero();
    for (c, &pairs) in hist.iter().enumerate() {
        if pairs > 0 && c as u64 >= t {
            total += crate::util::binomial(c as u64, t) * pairs;
        }
    }
    if t == 2 {
        if total.bit(0) {
            return Err(Error::Internal("odd 4-cycle diagonal count".into()));
        }
        total >>= 1;
    }
    Ok(EmbeddingCount::new(total, CountMode::Total))
}
