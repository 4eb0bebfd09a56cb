//! The K_{2,t}-free pair-class graph over GF(q).
//!
//! Vertices are the classes of nonzero pairs `(a, b)` under scaling by the
//! order-(t-1) subgroup `H = {h, ..., h^(t-1)}`; classes `(a, b)` and `(c, d)`
//! are adjacent iff `ac + bd` lies in `H`. Classes adjacent to themselves are
//! "special": their loop is dropped and they end up with degree `q - 1`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counting::count_k2t;
use crate::error::{Error, Result};
use crate::galois::{prime_power, FieldElement, GaloisField, MAX_FIELD_ORDER};
use crate::graph::Graph;

/// Outcome of choosing the field size for a target vertex budget.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSelection {
    pub q: u64,
    pub vertices: u64,
    /// `sqrt(n t) - n^(1/3)`, reported only; small `n` may fall below it.
    pub gap_bound: f64,
    pub gap_bound_holds: bool,
}

fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

fn class_count(q: u64, t: u64) -> u64 {
    (q * q - 1) / (t - 1)
}

fn admissible(q: u64, t: u64) -> bool {
    q >= 2 && is_prime_power(q) && (q - 1) % (t - 1) == 0
}

/// Largest prime power `q` with `(t-1) | (q-1)` and `(q^2-1)/(t-1) <= n`.
pub fn select_q(n: u64, t: u64) -> Result<QSelection> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    let start = ((n as f64 * (t - 1) as f64 + 1.0).sqrt().floor() as u64).min(MAX_FIELD_ORDER);
    // the float sqrt can be off by one near perfect squares
    let mut q = start + 1;
    while q >= 2 {
        if admissible(q, t) && class_count(q, t) <= n {
            let gap_bound = (n as f64 * t as f64).sqrt() - (n as f64).cbrt();
            return Ok(QSelection {
                q,
                vertices: class_count(q, t),
                gap_bound,
                gap_bound_holds: (q as f64) > gap_bound,
            });
        }
        q -= 1;
    }
    let smallest = (2..)
        .find(|&q| admissible(q, t))
        .map(|q| class_count(q, t))
        .unwrap();
    Err(Error::Infeasible(format!(
        "no admissible field size for n = {n}, t = {t}; the smallest feasible n for t = {t} is {smallest}"
    )))
}

#[derive(Clone, Debug)]
pub struct FurediGraph {
    graph: Graph,
    q: u64,
    t: u64,
    h: FieldElement,
    reps: Vec<(FieldElement, FieldElement)>,
    special: Vec<bool>,
}

impl FurediGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn h(&self) -> FieldElement {
        self.h
    }

    /// Canonical (least-code) pair of each class, indexed by vertex.
    pub fn representatives(&self) -> &[(FieldElement, FieldElement)] {
        &self.reps
    }

    pub fn is_special(&self, v: usize) -> bool {
        self.special[v]
    }

    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.special.len()).filter(|&v| self.special[v]).collect()
    }

    /// Same metadata over a different graph; used to exercise the verifier
    /// on tampered inputs.
    pub fn with_graph(mut self, graph: Graph) -> Self {
        self.graph = graph;
        self
    }
}

/// Builds the pair-class graph for field size `q` and parameter `t`.
pub fn build_furedi(q: u64, t: u64) -> Result<FurediGraph> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t must be >= 2, got {t}")));
    }
    if !is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    let field = GaloisField::with_order(q)?;
    let d = t - 1;
    let h = field.element_of_order(d)?;
    let in_h = field.subgroup_mask(d)?;
    let subgroup: Vec<FieldElement> = field.elements().filter(|x| in_h[x.0 as usize]).collect();

    let qs = q as usize;
    let pair = |a: FieldElement, b: FieldElement| a.0 as usize * qs + b.0 as usize;
    // Scanning pairs in lexicographic code order makes the first member seen
    // of every class its least representative.
    let mut class_of = vec![usize::MAX; qs * qs];
    let mut reps = Vec::new();
    for a in field.elements() {
        for b in field.elements() {
            if (a.0 == 0 && b.0 == 0) || class_of[pair(a, b)] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push((a, b));
            for &s in &subgroup {
                class_of[pair(field.mul(s, a), field.mul(s, b))] = id;
            }
        }
    }
    debug_assert_eq!(reps.len() as u64, class_count(q, t));

    let n = reps.len();
    let mut special = vec![false; n];
    let mut edges = Vec::new();
    for (u, &(a, b)) in reps.iter().enumerate() {
        special[u] = in_h[field.add(field.mul(a, a), field.mul(b, b)).0 as usize];
        // Solve a c + b d = s for every s in H, sweeping the free coordinate.
        for &s in &subgroup {
            for free in field.elements() {
                let (c, dd) = if b.0 != 0 {
                    let rest = field.sub(s, field.mul(a, free));
                    (free, field.mul(rest, field.inv(b)?))
                } else {
                    let rest = field.sub(s, field.mul(b, free));
                    (field.mul(rest, field.inv(a)?), free)
                };
                let v = class_of[pair(c, dd)];
                if v > u {
                    edges.push((u, v));
                }
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    Ok(FurediGraph {
        graph,
        q,
        t,
        h,
        reps,
        special,
    })
}

/// Structural checks on a built graph. Failures are data, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct FurediReport {
    pub q: u64,
    pub t: u64,
    pub vertex_count: usize,
    pub expected_vertex_count: u64,
    pub vertex_count_ok: bool,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub special_count: usize,
    /// special vertices have degree q-1, the others degree q
    pub degree_dichotomy_ok: bool,
    pub max_codegree: usize,
    pub codegree_histogram: BTreeMap<usize, usize>,
    pub pairs_at_t_minus_1: usize,
    /// non-adjacent pairs whose codegree differs from t-1
    pub nonadjacent_off_t_minus_1: usize,
    /// adjacent pairs with a special endpoint whose codegree exceeds t-2
    pub adjacent_special_above_t_minus_2: usize,
    /// adjacent pairs with both endpoints ordinary whose codegree differs from t-1
    pub adjacent_ordinary_off_t_minus_1: usize,
    pub k2t_count: String,
    pub k2t_free: bool,
    pub well_defined: bool,
    pub all_ok: bool,
}

impl FurediReport {
    pub fn all_ok(&self) -> bool {
        self.all_ok
    }
}

/// Runs every structural check. Adjacency is also rebuilt from 20 random
/// alternative representatives per class and compared edge for edge.
pub fn verify_furedi(fg: &FurediGraph) -> Result<FurediReport> {
    let g = &fg.graph;
    let (q, t) = (fg.q, fg.t);
    let n = g.order();
    let expected = class_count(q, t);

    let mut degree_histogram = BTreeMap::new();
    let mut dichotomy = true;
    for v in 0..n {
        let d = g.degree(v);
        *degree_histogram.entry(d).or_insert(0) += 1;
        let want = if fg.special[v] { q - 1 } else { q };
        dichotomy &= d as u64 == want;
    }

    let mut codegree_histogram = BTreeMap::new();
    let mut max_codegree = 0;
    let mut at_t1 = 0;
    let mut nonadj_off = 0;
    let mut adj_special_high = 0;
    let mut adj_ordinary_off = 0;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.codegree_unchecked(u, v);
            *codegree_histogram.entry(c).or_insert(0) += 1;
            max_codegree = max_codegree.max(c);
            let c = c as u64;
            if c == t - 1 {
                at_t1 += 1;
            }
            if !g.has_edge(u, v) {
                nonadj_off += (c != t - 1) as usize;
            } else if fg.special[u] || fg.special[v] {
                adj_special_high += (c + 2 > t) as usize;
            } else {
                adj_ordinary_off += (c != t - 1) as usize;
            }
        }
    }

    let k2t = count_k2t(g, t)?;
    let k2t_free = k2t.is_zero();
    let well_defined = rerepresented_matches(fg, 20)?;
    let vertex_count_ok = n as u64 == expected;
    let all_ok = vertex_count_ok
        && dichotomy
        && (max_codegree as u64) < t
        && k2t_free
        && well_defined;
    Ok(FurediReport {
        q,
        t,
        vertex_count: n,
        expected_vertex_count: expected,
        vertex_count_ok,
        degree_histogram,
        special_count: fg.special.iter().filter(|&&s| s).count(),
        degree_dichotomy_ok: dichotomy,
        max_codegree,
        codegree_histogram,
        pairs_at_t_minus_1: at_t1,
        nonadjacent_off_t_minus_1: nonadj_off,
        adjacent_special_above_t_minus_2: adj_special_high,
        adjacent_ordinary_off_t_minus_1: adj_ordinary_off,
        k2t_count: k2t.to_string(),
        k2t_free,
        well_defined,
        all_ok,
    })
}

/// Rebuilds adjacency from the defining relation with each class represented
/// by `(h^p a, h^p b)` for random `p`, `rounds` times.
fn rerepresented_matches(fg: &FurediGraph, rounds: usize) -> Result<bool> {
    let field = GaloisField::with_order(fg.q)?;
    let in_h = field.subgroup_mask(fg.t - 1)?;
    let g = &fg.graph;
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(fg.q * 1_000 + fg.t);
    let mut reps = fg.reps.clone();
    for _ in 0..rounds {
        for (i, r) in reps.iter_mut().enumerate() {
            let p = rng.gen_range(0..fg.t - 1);
            let s = field.pow(fg.h, p);
            let (a, b) = fg.reps[i];
            *r = (field.mul(s, a), field.mul(s, b));
        }
        for u in 0..n {
            let (a, b) = reps[u];
            for v in u + 1..n {
                let (c, d) = reps[v];
                let dot = field.add(field.mul(a, c), field.mul(b, d));
                if in_h[dot.0 as usize] != g.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
