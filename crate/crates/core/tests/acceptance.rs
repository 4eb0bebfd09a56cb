//! Acceptance battery: every criterion at its stated tolerance, one line of
//! output per criterion. Hard items must pass; soft items (trend checks) are
//! printed with their observed values and never fail the test.
//!
//! Besides the library battery, derived values are re-checked here against
//! independent test-side oracles: a prime-field pair-class construction
//! written with plain modular arithmetic, naive codegree and subgraph
//! counting, brute force over all small graphs, and labeled-tree counting
//! through Prüfer sequences.

use std::collections::{BTreeMap, BTreeSet};

use turan_core::furedi::build_furedi;
use turan_core::suite::{criterion, Level, SuiteItem};
use turan_core::tree::{enumerate_trees, from_pruefer, tree_canonical_form};
use turan_core::Graph;

const SEED: u64 = 2024;

/// Plain adjacency matrix, independent of the library's bitsets.
struct Matrix {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Matrix {
    fn from_graph(g: &Graph) -> Self {
        let n = g.order();
        let adj = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
        Matrix { n, adj }
    }

    fn codegree(&self, u: usize, v: usize) -> usize {
        (0..self.n).filter(|&w| self.adj[u][w] && self.adj[v][w]).count()
    }

    fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for u in 0..self.n {
            *h.entry(self.adj[u].iter().filter(|&&b| b).count()).or_insert(0) += 1;
        }
        h
    }

    fn codegree_histogram(&self) -> BTreeMap<(bool, usize), usize> {
        let mut h = BTreeMap::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                *h.entry((self.adj[u][v], self.codegree(u, v))).or_insert(0) += 1;
            }
        }
        h
    }

    /// Copies of K_{2,t}: choose the two degree-t vertices, then t common
    /// neighbors; for t = 2 each 4-cycle has two such pairs.
    fn k2t(&self, t: usize) -> u64 {
        let mut total = 0u64;
        for u in 0..self.n {
            for v in u + 1..self.n {
                total += choose(self.codegree(u, v) as u64, t as u64);
            }
        }
        if t == 2 {
            total / 2
        } else {
            total
        }
    }
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Pair classes over the prime field Z_q under the order-(t-1) subgroup,
/// adjacent when ac + bd lands in the subgroup.
fn prime_field_pair_classes(q: u64, t: u64) -> Matrix {
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        b %= q;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    };
    let generator = (2..q)
        .find(|&g| (1..q - 1).all(|e| pow(g, e) != 1))
        .unwrap_or(1);
    let h = pow(generator, (q - 1) / (t - 1));
    let subgroup: BTreeSet<u64> = (0..t - 1).map(|i| pow(h, i)).collect();
    let mut reps: Vec<(u64, u64)> = Vec::new();
    let mut seen = BTreeSet::new();
    for a in 0..q {
        for b in 0..q {
            if (a, b) == (0, 0) || seen.contains(&(a, b)) {
                continue;
            }
            for &s in &subgroup {
                seen.insert((a * s % q, b * s % q));
            }
            reps.push((a, b));
        }
    }
    let n = reps.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = reps[i];
            let (c, d) = reps[j];
            adj[i][j] = i != j && subgroup.contains(&((a * c + b * d) % q));
        }
    }
    Matrix { n, adj }
}

/// Naive check for a copy of `f` (as subgraph) in the matrix graph.
fn contains(host: &Matrix, f: &Graph) -> bool {
    fn rec(host: &Matrix, f: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == f.order() {
            return true;
        }
        for x in 0..host.n {
            if map.contains(&x) {
                continue;
            }
            if (0..i).all(|j| !f.has_edge(i, j) || host.adj[map[j]][x]) {
                map.push(x);
                if rec(host, f, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    rec(host, f, &mut Vec::new())
}

fn independent_checks(k: u8) -> Vec<String> {
    let mut problems = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            problems.push(what);
        }
    };
    match k {
        1 => {
            for (q, t) in [(5u64, 2u64), (7, 3), (7, 4), (13, 3)] {
                let lib = Matrix::from_graph(build_furedi(q, t).unwrap().graph());
                let ind = prime_field_pair_classes(q, t);
                check(lib.n == ind.n, format!("q={q} t={t}: order {} vs {}", lib.n, ind.n));
                check(
                    lib.degree_histogram() == ind.degree_histogram(),
                    format!("q={q} t={t}: degree histograms differ"),
                );
                check(
                    lib.codegree_histogram() == ind.codegree_histogram(),
                    format!("q={q} t={t}: codegree histograms differ"),
                );
                check(lib.k2t(t as usize) == 0, format!("q={q} t={t}: naive K_(2,t) count nonzero"));
            }
        }
        2 => {
            let blocks = Matrix::from_graph(&Graph::disjoint_union(&[Graph::complete(9), Graph::complete(5)]));
            check(blocks.k2t(7) == 36, format!("naive K_9+K_5 count {}", blocks.k2t(7)));
            let k77 = Matrix::from_graph(&Graph::complete_multipartite(&[7, 7]).unwrap());
            check(k77.k2t(7) == 42, format!("naive K_(7,7) count {}", k77.k2t(7)));
            let best = (1..14)
                .map(|a| Matrix::from_graph(&Graph::complete_multipartite(&[a, 14 - a]).unwrap()).k2t(7))
                .max()
                .unwrap()
                .max(Matrix::from_graph(&Graph::empty(14)).k2t(7));
            check(best == 990, format!("naive best 2-part count {best}"));
        }
        3 => {
            // all 64 graphs on 4 vertices
            let p5 = Graph::path(5);
            let best = (0u32..64)
                .map(|mask| {
                    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                    Matrix::from_graph(&Graph::new(4, edges).unwrap())
                })
                .filter(|m| !contains(m, &p5))
                .map(|m| m.k2t(2))
                .max()
                .unwrap();
            check(best == 3, format!("brute-force ex(4, C_4, P_5) = {best}"));
            let two_k4 = Matrix::from_graph(&Graph::disjoint_union(&[Graph::complete(4), Graph::complete(4)]));
            check(!contains(&two_k4, &p5) && two_k4.k2t(2) == 6, "2K_4 is not a P_5-free graph with 6 C_4".into());
        }
        6 => {
            // unlabeled trees through canonical forms of all Prüfer sequences
            for (n, expected) in [(3usize, 1usize), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)] {
                let mut forms = BTreeSet::new();
                let total = n.pow(n as u32 - 2);
                for code in 0..total {
                    let seq: Vec<usize> = (0..n - 2).map(|i| code / n.pow(i as u32) % n).collect();
                    forms.insert(tree_canonical_form(&from_pruefer(&seq).unwrap()));
                }
                check(forms.len() == expected, format!("{} trees on {n} vertices via Prüfer", forms.len()));
                check(
                    enumerate_trees(n).len() == expected,
                    format!("enumerator gives {} trees on {n} vertices", enumerate_trees(n).len()),
                );
            }
        }
        9 => {
            let best = (1..8)
                .map(|a| (Matrix::from_graph(&Graph::complete_multipartite(&[a, 8 - a]).unwrap()).k2t(2), a))
                .max()
                .unwrap();
            check(best == (36, 4), format!("naive best 2-part profile on 8 vertices {best:?}"));
        }
        _ => {}
    }
    problems
}

fn summarize(k: u8, items: &[SuiteItem], problems: &[String]) -> (bool, String) {
    let hard: Vec<&SuiteItem> = items.iter().filter(|i| i.hard).collect();
    let soft: Vec<&SuiteItem> = items.iter().filter(|i| !i.hard).collect();
    let hard_failed: Vec<&SuiteItem> = hard.iter().copied().filter(|i| !i.passed).collect();
    let soft_failed: Vec<&SuiteItem> = soft.iter().copied().filter(|i| !i.passed).collect();
    let passed = hard_failed.is_empty() && problems.is_empty();
    let status = match (passed, soft_failed.is_empty(), hard.is_empty()) {
        (false, _, _) => "FAIL",
        (true, false, true) => "FAIL (soft)",
        (true, false, false) => "PASS (soft items failing)",
        (true, true, _) => "PASS",
    };
    let mut line = format!(
        "criterion {k:>2}: {status} - hard {}/{}, soft {}/{}, independent oracle mismatches {}",
        hard.len() - hard_failed.len(),
        hard.len(),
        soft.len() - soft_failed.len(),
        soft.len(),
        problems.len()
    );
    for i in hard_failed.iter().chain(&soft_failed) {
        line.push_str(&format!(" | {}: observed {}; expected {}", i.name, i.observed, i.expected));
    }
    for p in problems {
        line.push_str(&format!(" | {p}"));
    }
    (passed, line)
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for k in 1..=11u8 {
        let items = criterion(k, Level::Full, SEED);
        assert!(!items.is_empty(), "criterion {k} produced no items");
        let problems = independent_checks(k);
        let (passed, line) = summarize(k, &items, &problems);
        println!("{line}");
        if !passed {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "hard failures in criteria {failed:?}");
}

#[test]
fn open_question_reports() {
    for item in criterion(0, Level::Full, SEED) {
        println!("report: {}: {}", item.name, item.observed);
        assert!(item.passed, "{item}");
    }
}
