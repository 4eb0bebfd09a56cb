//! The verification battery behind `verify-paper` and the acceptance tests.
//!
//! Items are grouped by criterion number; criterion 0 collects report-only
//! items that answer open questions rather than assert anything. Hard items
//! decide the exit status; soft items are trend checks that are reported
//! with their observed values but never fail the run.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::constructions::{
    asymptotic_profile, clique_blocks, construct_g0, classify_forbidden, optimize_multipartite,
    ForbiddenCase, K2rpqParams,
};
use crate::counting::{count_copies, count_embeddings, count_k2t};
use crate::error::{Error, Result};
use crate::furedi::{build_furedi, select_q, verify_furedi};
use crate::graph::Graph;
use crate::oracle::{exact_ex, sweep_ex, OracleOptions};
use crate::patterns::spider;
use crate::report::Report;
use crate::tree::{
    decompose_tree, enumerate_trees, literal_exponent, partition_ab,
    proof_exponent, tree_canonical_form, Exponent,
};
use crate::util::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::InvalidArgument(format!("level must be quick or full, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteItem {
    pub criterion: u8,
    pub name: String,
    pub hard: bool,
    pub passed: bool,
    pub observed: String,
    pub expected: String,
}

impl fmt::Display for SuiteItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "SOFT-FAIL",
        };
        write!(
            f,
            "[{status}] {:>2} {}: observed {}; expected {}",
            self.criterion, self.name, self.observed, self.expected
        )
    }
}

fn item(criterion: u8, name: impl Into<String>, hard: bool, passed: bool, observed: impl Into<String>, expected: impl Into<String>) -> SuiteItem {
    SuiteItem {
        criterion,
        name: name.into(),
        hard,
        passed,
        observed: observed.into(),
        expected: expected.into(),
    }
}

fn hard(criterion: u8, name: impl Into<String>, passed: bool, observed: impl Into<String>, expected: impl Into<String>) -> SuiteItem {
    item(criterion, name, true, passed, observed, expected)
}

fn soft(criterion: u8, name: impl Into<String>, passed: bool, observed: impl Into<String>, expected: impl Into<String>) -> SuiteItem {
    item(criterion, name, false, passed, observed, expected)
}

/// Errors inside a criterion become a failed hard item.
fn guarded(criterion: u8, run: impl FnOnce() -> Result<Vec<SuiteItem>>) -> Vec<SuiteItem> {
    run().unwrap_or_else(|e| vec![hard(criterion, "error", false, e.to_string(), "no error")])
}

fn k2t(g: &Graph, t: u64) -> Result<BigUint> {
    Ok(count_k2t(g, t)?.value)
}

pub fn criterion(k: u8, level: Level, seed: u64) -> Vec<SuiteItem> {
    match k {
        1 => guarded(1, || furedi_structure(level)),
        2 => guarded(2, paper_numbers),
        3 => guarded(3, || clique_equality(level)),
        4 => guarded(4, quadratic_finite_check),
        5 => guarded(5, || counting_equivalence(seed)),
        6 => guarded(6, || tree_machinery(seed)),
        7 => guarded(7, || embedding_trend(level)),
        8 => guarded(8, g0_validity),
        9 => guarded(9, optimizers),
        10 => guarded(10, classification_battery),
        11 => guarded(11, oracle_self_check),
        0 => guarded(0, open_question_reports),
        _ => Vec::new(),
    }
}

pub const CRITERIA: [u8; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0];

pub struct SuiteOutcome {
    pub items: Vec<SuiteItem>,
    pub report: Report,
}

impl SuiteOutcome {
    pub fn hard_failures(&self) -> usize {
        self.items.iter().filter(|i| i.hard && !i.passed).count()
    }
}

pub fn run_suite(level: Level, seed: u64) -> SuiteOutcome {
    let mut report = Report::new("verify-paper");
    report.param("level", level).expect("plain value");
    report.seed(seed);
    let mut items = Vec::new();
    for k in CRITERIA {
        let start = Instant::now();
        items.extend(criterion(k, level, seed));
        report.time(&format!("criterion {k}"), start);
    }
    for it in &items {
        report.push(&format!("criterion {}", it.criterion), it).expect("plain value");
    }
    SuiteOutcome { items, report }
}

pub const FUREDI_CASES: [(u64, u64); 5] = [(5, 2), (7, 3), (7, 4), (9, 3), (13, 3)];

fn furedi_structure(level: Level) -> Result<Vec<SuiteItem>> {
    let mut out = Vec::new();
    for (q, t) in FUREDI_CASES {
        if level == Level::Quick && q >= 11 {
            continue;
        }
        let fg = build_furedi(q, t)?;
        let r = verify_furedi(&fg)?;
        let ok = r.vertex_count_ok && r.degree_dichotomy_ok && r.max_codegree as u64 <= t - 1 && r.k2t_free;
        out.push(hard(
            1,
            format!("F(q={q}, t={t})"),
            ok,
            format!(
                "{} vertices, degrees {:?}, {} special, max codegree {}, {} copies of K_(2,{t})",
                r.vertex_count, r.degree_histogram, r.special_count, r.max_codegree, r.k2t_count
            ),
            format!(
                "{} vertices, degrees in {{{}, {}}}, max codegree <= {}, 0 copies",
                (q * q - 1) / (t - 1),
                q - 1,
                q,
                t - 1
            ),
        ));
    }
    Ok(out)
}

fn paper_numbers() -> Result<Vec<SuiteItem>> {
    let blocks = Graph::disjoint_union(&[Graph::complete(9), Graph::complete(5)]);
    let a = k2t(&blocks, 7)?;
    let b = k2t(&Graph::complete_multipartite(&[7, 7])?, 7)?;
    let m = optimize_multipartite(14, 2, 7)?;
    Ok(vec![
        hard(2, "K_9 + K_5, t = 7", a == BigUint::from(36u32), a.to_string(), "36"),
        hard(2, "K_(7,7), t = 7", b == BigUint::from(42u32), b.to_string(), "42"),
        hard(
            2,
            "best 2-part profile on 14 vertices, t = 7",
            m.count == BigUint::from(990u32) && m.count >= b,
            format!("{:?} with {}", m.parts, m.count),
            "990 >= 42",
        ),
    ])
}

fn clique_equality(level: Level) -> Result<Vec<SuiteItem>> {
    let c4 = Graph::cycle(4)?;
    let p5 = Graph::path(5);
    let r = exact_ex(4, &c4, &p5, OracleOptions::default())?;
    let blocks = k2t(&Graph::complete(4), 2)?;
    let mut out = vec![hard(
        3,
        "ex(4, C_4, P_5)",
        r.value == BigUint::from(3u32) && r.value == blocks,
        format!("{} (floor(4/4) * N(C_4, K_4) = {blocks})", r.value),
        "3",
    )];
    if level == Level::Full {
        let r = exact_ex(8, &c4, &p5, OracleOptions::default())?;
        let two_k4 = Graph::disjoint_union(&[Graph::complete(4), Graph::complete(4)]);
        let iso = is_isomorphic(&r.witness()?, &two_k4);
        out.push(hard(
            3,
            "ex(8, C_4, P_5)",
            r.value == BigUint::from(6u32) && iso && r.complete,
            format!("{} with witness {} (2K_4: {iso})", r.value, r.witness_g6),
            "6 with witness 2K_4",
        ));
    }
    Ok(out)
}

fn quadratic_finite_check() -> Result<Vec<SuiteItem>> {
    let c4 = Graph::cycle(4)?;
    let k23 = Graph::complete_multipartite(&[2, 3])?;
    let mut out = Vec::new();
    for n in 5..=7usize {
        let r = exact_ex(n, &c4, &k23, OracleOptions::default())?;
        let sel = select_q(n as u64, 3)?;
        let fured = build_furedi(sel.q, 3)?.into_graph().padded(n - sel.vertices as usize);
        let blocks = clique_blocks(n, 4)?;
        for g in [&fured, &blocks] {
            if !k2t(g, 3)?.is_zero() {
                return Err(Error::Internal("construction contains K_(2,3)".into()));
            }
        }
        let (cf, cb) = (k2t(&fured, 2)?, k2t(&blocks, 2)?);
        let best = cf.clone().max(cb.clone());
        out.push(hard(
            4,
            format!("ex({n}, C_4, K_(2,3)) vs constructions"),
            r.value >= best,
            format!("{} vs Furedi q={} {cf}, clique blocks {cb}", r.value, sel.q),
            format!(">= {best}"),
        ));
        let scale = binomial(n as u64, 2) * binomial(2, 2);
        let ratio = r.value.to_f64().unwrap_or(f64::NAN) / scale.to_f64().unwrap_or(f64::NAN);
        out.push(soft(
            4,
            format!("ex({n}, C_4, K_(2,3)) / [C({n},2) C(2,2)]"),
            true,
            format!("{ratio:.4}"),
            "reported only",
        ));
    }
    Ok(out)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("generated pairs are valid")
}

/// Every injection of V(h) into V(g), checked edge by edge.
fn naive_embeddings(h: &Graph, g: &Graph) -> u64 {
    fn rec(h: &Graph, g: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let i = map.len();
        if i == h.order() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.order() {
            if used[x] || !h.neighbors(i).iter().filter(|&&j| j < i).all(|&j| g.has_edge(map[j], x)) {
                continue;
            }
            used[x] = true;
            map.push(x);
            total += rec(h, g, map, used);
            map.pop();
            used[x] = false;
        }
        total
    }
    rec(h, g, &mut Vec::new(), &mut vec![false; g.order()])
}

fn counting_equivalence(seed: u64) -> Result<Vec<SuiteItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for i in 0..100 {
        let t = [2u64, 3, 4][i % 3];
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.95);
        let g = random_graph(&mut rng, n, p);
        let pattern = Graph::complete_multipartite(&[2, t as usize])?;
        let a = k2t(&g, t)?;
        let b = count_copies(&pattern, &g)?.value;
        if a != b {
            mismatches.push(format!("t={t} n={n}: {a} vs {b}"));
        }
    }
    let mut emb_mismatches = Vec::new();
    for _ in 0..30 {
        let k = rng.gen_range(1..=5);
        let h = random_graph(&mut rng, k, 0.5);
        let n = rng.gen_range(k..=8);
        let p = rng.gen_range(0.3..0.9);
        let g = random_graph(&mut rng, n, p);
        let fast = count_embeddings(&h, &g, false).value;
        let slow = BigUint::from(naive_embeddings(&h, &g));
        if fast != slow {
            emb_mismatches.push(format!("{k} in {n}: {fast} vs {slow}"));
        }
    }
    Ok(vec![
        hard(
            5,
            "codegree K_(2,t) count vs generic copy count (100 graphs)",
            mismatches.is_empty(),
            format!("{} mismatches {:?}", mismatches.len(), mismatches),
            "0 mismatches",
        ),
        hard(
            5,
            "embedding count vs all injections (30 pairs)",
            emb_mismatches.is_empty(),
            format!("{} mismatches {:?}", emb_mismatches.len(), emb_mismatches),
            "0 mismatches",
        ),
    ])
}

/// Star with three leaves plus a pendant path of length two at the center.
pub fn broom_6() -> Graph {
    Graph::new(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).expect("valid tree")
}

fn tree_machinery(seed: u64) -> Result<Vec<SuiteItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trees: Vec<Graph> = (3..=10).flat_map(enumerate_trees).collect();
    let ten = enumerate_trees(10).len();

    let (mut order_dep, mut nice_mismatch, mut nice_exp, mut strict, mut literal_below) =
        (0, 0, 0, 0, 0);
    let mut disagreements: Vec<(Graph, Exponent, Exponent)> = Vec::new();
    for t in &trees {
        let base = partition_ab(t)?;
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..t.order()).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            let moved = partition_ab(&t.relabel(&perm)?)?;
            let mut back: Vec<usize> = base.a.iter().map(|&v| perm[v]).collect();
            back.sort_unstable();
            if back != moved.a {
                order_dep += 1;
            }
        }
        let d = decompose_tree(t)?;
        let b_all_leaves = d.b.iter().all(|&v| t.degree(v) == 1);
        if d.nice != b_all_leaves {
            nice_mismatch += 1;
        }
        let proof = proof_exponent(&d);
        let half = Exponent::from_twice(t.order() as u64 + 1);
        if d.nice && proof != half {
            nice_exp += 1;
        }
        if !d.nice {
            if proof.twice() <= half.twice() {
                strict += 1;
            }
            let literal = literal_exponent(&d)?;
            if literal.twice() < proof.twice() {
                literal_below += 1;
            }
            if literal != proof {
                disagreements.push((t.clone(), literal, proof));
            }
        }
    }
    let broom = tree_canonical_form(&broom_6());
    let broom_entry = disagreements
        .iter()
        .find(|(t, _, _)| tree_canonical_form(t) == broom)
        .map(|(_, l, p)| format!("literal {l}, proof {p}"));
    Ok(vec![
        hard(6, "trees on 10 vertices", ten == 106, ten.to_string(), "106"),
        hard(
            6,
            format!("A/B partition under 20 relabelings of {} trees", trees.len()),
            order_dep == 0,
            format!("{order_dep} changed partitions"),
            "0",
        ),
        hard(6, "nice iff every B-vertex is a leaf", nice_mismatch == 0, format!("{nice_mismatch} mismatches"), "0"),
        hard(6, "nice trees: proof exponent (|V|+1)/2", nice_exp == 0, format!("{nice_exp} violations"), "0"),
        hard(6, "other trees: proof exponent > (|V|+1)/2", strict == 0, format!("{strict} violations"), "0"),
        hard(6, "literal exponent >= proof exponent", literal_below == 0, format!("{literal_below} violations"), "0"),
        hard(
            6,
            "disagreement set",
            !disagreements.is_empty() && broom_entry.as_deref() == Some("literal 5, proof 4"),
            format!(
                "{} trees disagree; broom {}",
                disagreements.len(),
                broom_entry.as_deref().unwrap_or("absent")
            ),
            "non-empty; broom literal 5, proof 4",
        ),
    ])
}

pub const TREND_QS: [u64; 3] = [7, 9, 13];

/// count_embeddings(T, F) / [(t-1)^((|V|-1)/2) N^((|V|+1)/2)] for each q.
pub fn embedding_ratios(tree: &Graph, t: u64, qs: &[u64]) -> Result<Vec<f64>> {
    let v = tree.order() as f64;
    qs.iter()
        .map(|&q| {
            let g = build_furedi(q, t)?.into_graph();
            let count = count_embeddings(tree, &g, false).value.to_f64().unwrap_or(f64::NAN);
            let n = g.order() as f64;
            Ok(count / (((t - 1) as f64).powf((v - 1.0) / 2.0) * n.powf((v + 1.0) / 2.0)))
        })
        .collect()
}

fn embedding_trend(level: Level) -> Result<Vec<SuiteItem>> {
    let qs: Vec<u64> = TREND_QS
        .iter()
        .copied()
        .filter(|&q| level == Level::Full || q < 11)
        .collect();
    let mut out = Vec::new();
    for (name, tree) in [("P_4", Graph::path(4)), ("7-vertex spider", spider(3, 2))] {
        let ratios = embedding_ratios(&tree, 3, &qs)?;
        let in_band = ratios.iter().all(|r| (0.5..=1.5).contains(r));
        let approaching = ratios.windows(2).all(|w| (w[1] - 1.0).abs() <= (w[0] - 1.0).abs());
        let last = *ratios.last().expect("at least one q");
        let ok = in_band && approaching && (0.8..=1.25).contains(&last);
        out.push(soft(
            7,
            format!("{name} in F(q, 3), q = {qs:?}"),
            ok,
            format!("ratios {:?}", ratios.iter().map(|r| format!("{r:.4}")).collect::<Vec<_>>()),
            "in [0.5, 1.5], monotonically approaching 1, last in [0.8, 1.25]",
        ));
    }
    Ok(out)
}

/// Five trees of order at most 7 that are not nice.
pub fn g0_trees() -> Vec<(&'static str, Graph)> {
    let t = |n, e: &[(usize, usize)]| Graph::new(n, e.iter().copied()).expect("valid tree");
    vec![
        ("K_(1,3)", Graph::star(3)),
        ("K_(1,4)", Graph::star(4)),
        ("broom", broom_6()),
        ("double star", t(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])),
        ("long broom", t(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6)])),
    ]
}

pub const G0_SIZES: [usize; 2] = [200, 800];

fn g0_validity() -> Result<Vec<SuiteItem>> {
    let mut out = Vec::new();
    for (name, tree) in g0_trees() {
        let d = decompose_tree(&tree)?;
        let proof = proof_exponent(&d).as_f64();
        let mut counts = Vec::new();
        for n in G0_SIZES {
            let g0 = construct_g0(&tree, n, 3, 1)?;
            let free = k2t(&g0.graph, 3)?;
            out.push(hard(
                8,
                format!("G_0({name}, n = {n}) is K_(2,3)-free"),
                free == BigUint::from(0u32) && g0.order <= n,
                format!("{free} copies on {} vertices", g0.order),
                format!("0 copies on <= {n} vertices"),
            ));
            counts.push(count_copies(&tree, &g0.graph)?.value.to_f64().unwrap_or(f64::NAN));
        }
        let slope = (counts[1] / counts[0]).ln() / (G0_SIZES[1] as f64 / G0_SIZES[0] as f64).ln();
        out.push(soft(
            8,
            format!("G_0({name}) copy-count slope"),
            (slope - proof).abs() <= 0.5,
            format!("{slope:.3}"),
            format!("within 0.5 of {proof}"),
        ));
    }
    Ok(out)
}

fn optimizers() -> Result<Vec<SuiteItem>> {
    let m = optimize_multipartite(8, 2, 2)?;
    let a4 = asymptotic_profile(2, 4, 0.005)?;
    let a5 = asymptotic_profile(2, 5, 0.005)?;
    Ok(vec![
        hard(
            9,
            "optimize_multipartite(8, 2, 2)",
            m.parts == [4, 4] && m.count == BigUint::from(36u32),
            format!("{:?} / {}", m.parts, m.count),
            "[4, 4] / 36",
        ),
        hard(
            9,
            "asymptotic profile k = 2, t = 4",
            (a4.fractions[0] - 0.5).abs() <= 0.01,
            format!("{:.4?}", a4.fractions),
            "balanced within 0.01",
        ),
        hard(
            9,
            "asymptotic profile k = 2, t = 5",
            !(0.49..=0.51).contains(&a5.fractions[0]),
            format!("{:.4?}", a5.fractions),
            "largest fraction outside [0.49, 0.51]",
        ),
    ])
}

fn classification_battery() -> Result<Vec<SuiteItem>> {
    use ForbiddenCase::*;
    let k2rpq = |p, q, r| Some(K2rpqParams { p, q, r });
    let battery: Vec<(&str, Graph, [(ForbiddenCase, Option<K2rpqParams>); 2])> = vec![
        ("K_2", Graph::path(2), [(Zero, None), (Zero, None)]),
        ("P_5", Graph::path(5), [(CliqueBlocks, k2rpq(1, 1, 1)), (Zero, None)]),
        ("C_4", Graph::cycle(4)?, [(Zero, None), (Zero, None)]),
        ("C_6", Graph::cycle(6)?, [(BipartiteOther, None), (BipartiteOther, None)]),
        (
            "K_(2,9)",
            Graph::complete_multipartite(&[2, 9])?,
            [(FurediQuadratic, k2rpq(0, 0, 9)), (FurediQuadratic, k2rpq(0, 0, 9))],
        ),
        ("K_3", Graph::complete(3), [(Chromatic, None), (Chromatic, None)]),
        ("K_4", Graph::complete(4), [(Chromatic, None), (Chromatic, None)]),
        ("Petersen", Graph::petersen(), [(Chromatic, None), (Chromatic, None)]),
    ];
    let mut out = Vec::new();
    for (name, f, expected) in battery {
        for (t, (case, params)) in [2u64, 3].into_iter().zip(expected) {
            let c = classify_forbidden(&f, t)?;
            // the cases are an if/else chain, so each graph lands in exactly
            // one; the extra fields must be consistent with that case
            let consistent = match c.case {
                Chromatic => c.beta.is_none() && c.chi >= 3,
                BipartiteOther => c.beta.is_some() && c.params.is_none(),
                CliqueBlocks | FurediQuadratic => c.params.is_some(),
                Zero => c.chi <= 2,
            };
            let mut ok = c.case == case && consistent && (params.is_none() || c.params == params);
            if name == "C_6" {
                ok &= c.beta == Some(3);
            }
            if matches!(name, "K_3" | "Petersen") {
                ok &= c.chi == 3;
            }
            if name == "K_4" {
                ok &= c.chi == 4;
            }
            out.push(hard(
                10,
                format!("classify({name}, t = {t})"),
                ok,
                format!("{:?} params {:?} beta {:?} chi {}", c.case, c.params, c.beta, c.chi),
                format!("{case:?} params {params:?}"),
            ));
        }
    }
    Ok(out)
}

fn oracle_self_check() -> Result<Vec<SuiteItem>> {
    let c4 = Graph::cycle(4)?;
    let mut out = Vec::new();
    for (name, h, f) in [("P_3 / C_4", Graph::path(3), c4.clone()), ("C_4 / K_3", c4.clone(), Graph::complete(3))] {
        let mut observed = Vec::new();
        let mut ok = true;
        for n in 2..=5 {
            let r = exact_ex(n, &h, &f, OracleOptions::default())?;
            let (value, witness) = sweep_ex(n, &h, &f)?;
            ok &= r.value == value && r.witness_g6 == witness && r.complete;
            observed.push(format!("n={n}: {} vs {value}", r.value));
        }
        out.push(hard(
            11,
            format!("search vs full sweep, H / F = {name}"),
            ok,
            observed.join(", "),
            "equal values and witnesses",
        ));
    }
    Ok(out)
}

fn open_question_reports() -> Result<Vec<SuiteItem>> {
    let c4 = Graph::cycle(4)?;
    let mut parity = Vec::new();
    for n in 4..=7usize {
        let r = exact_ex(n, &Graph::path(3), &c4, OracleOptions::default())?;
        let full = binomial(n as u64, 2);
        let label = if r.value == full {
            "C(n,2)".to_string()
        } else if &r.value + 1u32 == full {
            "C(n,2)-1".to_string()
        } else {
            r.value.to_string()
        };
        parity.push(format!("n={n}: {} = {label}", r.value));
    }
    let mut readings = Vec::new();
    for r in [3usize, 4] {
        for n in 5..=7usize {
            let target = binomial(n as u64 - 1, r as u64 - 1);
            let vertices = exact_ex(n, &Graph::star(r - 1), &c4, OracleOptions::default())?.value;
            let leaves = exact_ex(n, &Graph::star(r), &c4, OracleOptions::default())?.value;
            readings.push(format!(
                "r={r} n={n}: C(n-1,r-1)={target}, r vertices {vertices}, r leaves {leaves}"
            ));
        }
    }
    Ok(vec![
        soft(0, "ex(n, P_3, C_4) by parity", true, parity.join("; "), "reported only"),
        soft(0, "ex(n, S_r, C_4) under both star readings", true, readings.join("; "), "reported only"),
    ])
}
