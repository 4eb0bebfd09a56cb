//! Extremal and lower-bound constructions, plus the small optimization
//! problems around them.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{bipartite_beta, chromatic_number};
use crate::counting::{count_embeddings, count_embeddings_fixed, count_k2t};
use crate::error::{Error, Result};
use crate::furedi::{build_furedi, select_q, FurediGraph};
use crate::graph::Graph;
use crate::tree::decompose_tree;
use crate::util::{binomial, serialize_biguint};

/// `K_{2,r}` with hubs `u = 0` and `v = 1`, common neighbors `2..2+r`, then
/// `p` pendants on `u` and `q` pendants on `v`.
pub fn build_k2rpq(p: usize, q: usize, r: usize) -> Result<Graph> {
    if p + q + r == 0 {
        return Err(Error::InvalidArgument(
            "K_{2,0}^{0,0} is two isolated vertices".into(),
        ));
    }
    let n = 2 + r + p + q;
    let mut edges = Vec::with_capacity(2 * r + p + q);
    for w in 2..2 + r {
        edges.push((0, w));
        edges.push((1, w));
    }
    for w in 2 + r..2 + r + p {
        edges.push((0, w));
    }
    for w in 2 + r + p..n {
        edges.push((1, w));
    }
    Graph::new(n, edges)
}

/// `floor(n/m)` disjoint copies of `K_m`, plus a clique on the `n mod m`
/// leftover vertices (or leftover isolated vertices).
pub fn clique_blocks_with(n: usize, m: usize, leftover_clique: bool) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidArgument("block size must be >= 1".into()));
    }
    let mut parts = vec![Graph::complete(m); n / m];
    let rest = n % m;
    if rest > 0 {
        parts.push(if leftover_clique {
            Graph::complete(rest)
        } else {
            Graph::empty(rest)
        });
    }
    Ok(Graph::disjoint_union(&parts))
}

pub fn clique_blocks(n: usize, m: usize) -> Result<Graph> {
    clique_blocks_with(n, m, true)
}

fn binomial_table(n: usize, t: u64) -> Vec<BigUint> {
    (0..=n as u64).map(|m| binomial(m, t)).collect()
}

fn multipartite_count_with(parts: &[usize], t: u64, table: &[BigUint]) -> BigUint {
    let n: usize = parts.iter().sum();
    let mut total = BigUint::zero();
    for (i, &a) in parts.iter().enumerate() {
        if a >= 2 {
            total += &table[n - a] * (a * (a - 1) / 2);
        }
        for &b in &parts[i + 1..] {
            total += &table[n - a - b] * (a * b);
        }
    }
    if t == 2 {
        total >>= 1;
    }
    total
}

/// Copies of `K_{2,t}` in the complete multipartite graph on `parts`, by
/// choosing the pair of degree-t vertices: same part, or two parts.
pub fn multipartite_k2t(parts: &[usize], t: u64) -> Result<BigUint> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidArgument("parts must be a non-empty list of positive sizes".into()));
    }
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    let n = parts.iter().sum();
    Ok(multipartite_count_with(parts, t, &binomial_table(n, t)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultipartiteProfile {
    pub parts: Vec<usize>,
    pub t: u64,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
}

pub const MAX_EXACT_N: usize = 200;
const MAX_PROFILES: u128 = 5_000_000;

/// Partitions of `n` into at most `k` parts.
fn partition_count(n: usize, k: usize) -> u128 {
    // table[j][s]: partitions of s into at most j parts; either fewer than j
    // parts, or exactly j parts (remove one from each)
    let mut table = vec![vec![0u128; n + 1]; k + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for j in 1..=k {
        for s in 1..=n {
            let exact = if s >= j { table[j][s - j] } else { 0 };
            table[j][s] = table[j - 1][s].saturating_add(exact);
        }
    }
    table[k][n]
}

fn for_each_partition(
    remaining: usize,
    max_part: usize,
    slots: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(current);
        return;
    }
    if slots == 0 {
        return;
    }
    let lo = remaining.div_ceil(slots);
    for part in (lo..=max_part.min(remaining)).rev() {
        current.push(part);
        for_each_partition(remaining - part, part, slots - 1, current, visit);
        current.pop();
    }
}

/// Exact optimum over complete multipartite graphs with at most `k` parts on
/// `n` vertices. Ties go to the lexicographically largest part list.
pub fn optimize_multipartite(n: usize, k: usize, t: u64) -> Result<MultipartiteProfile> {
    if k < 1 || k > n || n > MAX_EXACT_N {
        return Err(Error::UnsupportedSize(format!(
            "need 1 <= k <= n <= {MAX_EXACT_N}, got n = {n}, k = {k}"
        )));
    }
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    let total = partition_count(n, k);
    if total > MAX_PROFILES {
        return Err(Error::UnsupportedSize(format!(
            "{total} part profiles exceed the enumeration budget of {MAX_PROFILES}"
        )));
    }
    let table = binomial_table(n, t);
    // fan out over the first part, largest first
    let best = (n.div_ceil(k)..=n)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(BigUint, Vec<usize>)> = None;
            let mut current = vec![first];
            for_each_partition(n - first, first, k - 1, &mut current, &mut |parts| {
                let count = multipartite_count_with(parts, t, &table);
                if best.as_ref().is_none_or(|(c, _)| count > *c) {
                    best = Some((count, parts.to_vec()));
                }
            });
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        // collected in descending first-part order, so a strict comparison
        // keeps the lexicographically largest among ties
        .fold(None::<(BigUint, Vec<usize>)>, |acc, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        })
        .expect("at least one profile exists");
    Ok(MultipartiteProfile {
        parts: best.1,
        t,
        count: best.0,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionProfile {
    pub fractions: Vec<f64>,
    pub objective: f64,
    pub balanced_objective: f64,
    pub resolution: f64,
}

/// Leading coefficient of the copy count in the complete multipartite graph
/// with part fractions `x`: `sum_i (x_i^2/2)(1-x_i)^t + sum_{i<j} x_i x_j
/// (1-x_i-x_j)^t`, halved for `t = 2`. The common `n^(t+2)/t!` is dropped.
pub fn fraction_objective(x: &[f64], t: u64) -> f64 {
    let t = t as i32;
    let mut total = 0.0;
    for (i, &a) in x.iter().enumerate() {
        total += a * a / 2.0 * (1.0 - a).max(0.0).powi(t);
        for &b in &x[i + 1..] {
            total += a * b * (1.0 - a - b).max(0.0).powi(t);
        }
    }
    if t == 2 {
        total / 2.0
    } else {
        total
    }
}

const MAX_GRID_POINTS: u128 = 5_000_000;

/// Grid search over sorted fraction vectors at `resolution`, then pairwise
/// transfer descent with halving steps.
pub fn asymptotic_profile(k: usize, t: u64, resolution: f64) -> Result<FractionProfile> {
    if k < 2 || t < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2 and t >= 2, got k = {k}, t = {t}")));
    }
    if !(resolution > 0.0 && resolution <= 0.01) {
        return Err(Error::InvalidArgument(format!(
            "resolution must lie in (0, 0.01], got {resolution}"
        )));
    }
    let steps = (1.0 / resolution).round() as usize;
    let points = partition_count(steps, k);
    if points > MAX_GRID_POINTS {
        return Err(Error::UnsupportedSize(format!(
            "{points} grid points exceed the budget of {MAX_GRID_POINTS}"
        )));
    }
    let balanced = vec![1.0 / k as f64; k];
    let balanced_objective = fraction_objective(&balanced, t);
    let mut best = (balanced_objective, balanced);
    let mut current = Vec::with_capacity(k);
    for_each_partition(steps, steps, k, &mut current, &mut |parts| {
        let mut x: Vec<f64> = parts.iter().map(|&p| p as f64 / steps as f64).collect();
        x.resize(k, 0.0);
        let v = fraction_objective(&x, t);
        if v > best.0 {
            best = (v, x);
        }
    });

    let (mut value, mut x) = best;
    let mut step = resolution;
    while step > 1e-12 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..k {
                for j in 0..k {
                    if i == j || x[j] < step {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] += step;
                    y[j] -= step;
                    let v = fraction_objective(&y, t);
                    if v > value + 1e-15 {
                        value = v;
                        x = y;
                        improved = true;
                    }
                }
            }
        }
        step /= 2.0;
    }
    x.sort_by(|a, b| b.total_cmp(a));
    Ok(FractionProfile {
        fractions: x,
        objective: value,
        balanced_objective,
        resolution,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct G0Block {
    pub q: u64,
    pub block_order: usize,
    /// G_0 vertices of the T_j attachment points
    pub attachments: Vec<usize>,
    /// block vertices identified with the attachments
    pub anchors: Vec<usize>,
    pub anchored_embeddings: String,
    pub tuples_scored: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct G0Construction {
    #[serde(skip)]
    pub graph: Graph,
    pub order: usize,
    pub n_prime: usize,
    /// tree vertex of each Q'-vertex, indexed by its G_0 vertex
    pub q_prime: Vec<usize>,
    pub pendant_hubs: Vec<usize>,
    pub blocks: Vec<G0Block>,
}

const ANCHOR_SAMPLES: usize = 200;

/// Up to `ANCHOR_SAMPLES` distinct tuples of pairwise non-adjacent vertices,
/// built greedily with non-special vertices first.
fn anchor_tuples(fg: &FurediGraph, ell: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let g = fg.graph();
    let n = g.order();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if ell == 1 {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.sort_by_key(|&v| (fg.is_special(v), v));
        return vs.into_iter().take(ANCHOR_SAMPLES).map(|v| vec![v]).collect();
    }
    let mut attempts = 0;
    while out.len() < ANCHOR_SAMPLES && attempts < ANCHOR_SAMPLES * 20 {
        attempts += 1;
        let mut tuple: Vec<usize> = Vec::with_capacity(ell);
        for _ in 0..ell {
            let mut pool: Vec<usize> = (0..n)
                .filter(|&v| !tuple.contains(&v) && tuple.iter().all(|&w| !g.has_edge(v, w)))
                .collect();
            if pool.is_empty() {
                break;
            }
            pool.shuffle(rng);
            let pick = pool
                .iter()
                .copied()
                .find(|&v| !fg.is_special(v) || rng.gen_bool(0.1))
                .unwrap_or(pool[0]);
            tuple.push(pick);
        }
        if tuple.len() == ell && !out.contains(&tuple) {
            out.push(tuple);
        }
    }
    out
}

/// Lower-bound graph for a tree that is not nice: the Q' forest, `n'`
/// pendant leaves on each Q'-vertex that has a leaf neighbor, and for every
/// `T_j` a fresh pair-class graph `F(n', t)` glued along `l_j` pairwise
/// non-adjacent vertices to the attachment vertices.
pub fn construct_g0(tree: &Graph, n: usize, t: u64, seed: u64) -> Result<G0Construction> {
    let d = decompose_tree(tree)?;
    if d.nice || d.q_prime.is_empty() {
        return Err(Error::NotApplicable(
            "the G_0 construction needs a tree that is not nice and has non-leaf B-vertices".into(),
        ));
    }
    let v_t = tree.order();
    if n < d.q_prime.len() + v_t {
        return Err(Error::UnsupportedSize(format!("n = {n} is too small for a {v_t}-vertex tree")));
    }
    let n_prime = (n - d.q_prime.len()) / v_t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut id_of = vec![usize::MAX; v_t];
    for (i, &v) in d.q_prime.iter().enumerate() {
        id_of[v] = i;
    }
    let mut order = d.q_prime.len();
    let mut edges: Vec<(usize, usize)> = tree
        .edges()
        .filter(|&(a, b)| id_of[a] != usize::MAX && id_of[b] != usize::MAX)
        .map(|(a, b)| (id_of[a], id_of[b]))
        .collect();

    let mut pendant_hubs = Vec::new();
    for &v in &d.q_prime {
        if tree.neighbors(v).iter().any(|&w| tree.degree(w) == 1) {
            pendant_hubs.push(id_of[v]);
            for _ in 0..n_prime {
                edges.push((id_of[v], order));
                order += 1;
            }
        }
    }

    let mut blocks = Vec::new();
    for comp in &d.t_components {
        let sel = select_q(n_prime as u64, t)?;
        let fg = build_furedi(sel.q, t)?;
        // T_j' = T_j plus its attachment vertices, which become leaves
        let mut members = comp.vertices.clone();
        members.extend(&comp.attachments);
        let pattern = tree.induced(&members);
        let pattern_anchors: Vec<usize> = (comp.vertices.len()..members.len()).collect();

        let tuples = anchor_tuples(&fg, comp.ell, &mut rng);
        if tuples.is_empty() {
            return Err(Error::Infeasible(format!(
                "no {} pairwise non-adjacent vertices in the q = {} block",
                comp.ell, sel.q
            )));
        }
        let mut best: Option<(BigUint, Vec<usize>)> = None;
        for tuple in &tuples {
            let c = count_embeddings_fixed(&pattern, &pattern_anchors, fg.graph(), tuple, None)?
                .count
                .value;
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, tuple.clone()));
            }
        }
        let (score, anchors) = best.unwrap();

        let bg = fg.graph();
        let mut map = vec![usize::MAX; bg.order()];
        for (&x, &att) in anchors.iter().zip(&comp.attachments) {
            map[x] = id_of[att];
        }
        for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
            *slot = order;
            order += 1;
        }
        edges.extend(bg.edges().map(|(a, b)| (map[a], map[b])));
        blocks.push(G0Block {
            q: sel.q,
            block_order: bg.order(),
            attachments: comp.attachments.iter().map(|&a| id_of[a]).collect(),
            anchors,
            anchored_embeddings: score.to_string(),
            tuples_scored: tuples.len(),
        });
    }

    let graph = Graph::new(order, edges)?;
    if !count_k2t(&graph, t)?.is_zero() {
        return Err(Error::Internal(format!("G_0 contains a copy of K_(2,{t})")));
    }
    Ok(G0Construction {
        order: graph.order(),
        graph,
        n_prime,
        q_prime: d.q_prime.clone(),
        pendant_hubs,
        blocks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ForbiddenCase {
    Zero,
    CliqueBlocks,
    FurediQuadratic,
    BipartiteOther,
    Chromatic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct K2rpqParams {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: ForbiddenCase,
    pub params: Option<K2rpqParams>,
    pub beta: Option<usize>,
    pub chi: usize,
    /// growth regime of ex(n, K_{2,t}, F) for this case
    pub regime: String,
}

/// Recognizes `K_{2,r}^{p,q}`: two non-adjacent hubs, every other vertex
/// adjacent to one or both hubs and to nothing else. Among several hub
/// choices the largest `r` wins, then `p >= q` is reported.
pub fn match_k2rpq(f: &Graph) -> Option<K2rpqParams> {
    let n = f.order();
    let mut best: Option<K2rpqParams> = None;
    for u in 0..n {
        for v in u + 1..n {
            if f.has_edge(u, v) {
                continue;
            }
            let (mut p, mut q, mut r) = (0, 0, 0);
            let ok = (0..n).filter(|&w| w != u && w != v).all(|w| {
                let (au, av) = (f.has_edge(w, u), f.has_edge(w, v));
                let hubs = au as usize + av as usize;
                match (au, av) {
                    (true, true) => r += 1,
                    (true, false) => p += 1,
                    (false, true) => q += 1,
                    (false, false) => return false,
                }
                f.degree(w) == hubs
            });
            if !ok {
                continue;
            }
            let cand = K2rpqParams { p: p.max(q), q: p.min(q), r };
            if best.is_none_or(|b| (cand.r, cand.p) > (b.r, b.p)) {
                best = Some(cand);
            }
        }
    }
    best
}

pub fn classify_forbidden(f: &Graph, t: u64) -> Result<Classification> {
    if f.order() == 0 {
        return Err(Error::InvalidArgument("forbidden graph is empty".into()));
    }
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    let chi = chromatic_number(f);
    let beta = bipartite_beta(f);
    let k2t = Graph::complete_multipartite(&[2, t as usize])?;
    let classification = |case, params, regime: String| Classification {
        case,
        params,
        beta,
        chi,
        regime,
    };
    if !count_embeddings(f, &k2t, true).is_zero() {
        return Ok(classification(ForbiddenCase::Zero, None, "0".into()));
    }
    if let Some(params) = match_k2rpq(f) {
        let t = t as usize;
        if params.r > t {
            return Ok(classification(
                ForbiddenCase::FurediQuadratic,
                Some(params),
                format!("(1+o(1)) C(n,2) C({}, {t})", params.r - 1),
            ));
        }
        if params.p + params.q + params.r <= t {
            return Err(Error::Internal(format!(
                "{params:?} should embed in K_(2,{t})"
            )));
        }
        return Ok(classification(
            ForbiddenCase::CliqueBlocks,
            Some(params),
            format!(
                "floor(n/{m}) N(K_(2,{t}), K_{m}) + O(1)",
                m = params.p + params.q + params.r + 1
            ),
        ));
    }
    if let Some(b) = beta {
        let t = t as usize;
        let regime = if b < t {
            format!("Theta(n^{t}), asymptotically N(K_(2,{t}), K_({},n-{})) ", b - 1, b - 1)
        } else if b == t {
            format!("Theta(n^{t})")
        } else {
            format!("Omega(n^{t}) and O(n^({t}+2-2*{t}/{b}))")
        };
        return Ok(classification(ForbiddenCase::BipartiteOther, None, regime.trim().to_string()));
    }
    Ok(classification(
        ForbiddenCase::Chromatic,
        None,
        format!("(1+o(1)) N(K_(2,{t}), M({}, {t}))", chi - 1),
    ))
}
