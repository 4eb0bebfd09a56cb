//! Tree machinery: the greedy A/B partition, nice-tree recognition, the
//! decomposition around the non-leaf B-vertices, the competing exponent
//! formulas, and AHU canonical forms (automorphisms and enumeration).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A non-negative multiple of 1/2, stored as its double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    twice: u64,
}

impl Exponent {
    pub fn from_twice(twice: u64) -> Self {
        Exponent { twice }
    }

    pub fn twice(self) -> u64 {
        self.twice
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.order() < 2 {
        return Err(Error::NotATree(format!(
            "need at least 2 vertices, got {}",
            t.order()
        )));
    }
    if !t.is_tree() {
        return Err(Error::NotATree(format!(
            "{} vertices, {} edges, connected = {}",
            t.order(),
            t.edge_count(),
            t.is_connected()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbPartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// Vertices of degree other than 2, in the order they entered A.
    pub add_order: Vec<usize>,
}

/// A starts as the degree-2 vertices; any non-leaf B-vertex with at most two
/// B-neighbors then moves to A, scanning in ascending index until nothing
/// moves.
pub fn partition_ab(t: &Graph) -> Result<AbPartition> {
    require_tree(t)?;
    let n = t.order();
    let mut in_a: Vec<bool> = (0..n).map(|v| t.degree(v) == 2).collect();
    let mut add_order = Vec::new();
    loop {
        let mut moved = false;
        for v in 0..n {
            if in_a[v] || t.degree(v) < 2 {
                continue;
            }
            let b_nbrs = t.neighbors(v).iter().filter(|&&w| !in_a[w]).count();
            if b_nbrs <= 2 {
                in_a[v] = true;
                add_order.push(v);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(AbPartition {
        a: (0..n).filter(|&v| in_a[v]).collect(),
        b: (0..n).filter(|&v| !in_a[v]).collect(),
        add_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeComponent {
    pub vertices: Vec<usize>,
    /// number of Q'-vertices adjacent to this component
    pub ell: usize,
    #[serde(skip)]
    pub attachments: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    #[serde(skip)]
    pub order: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub add_order: Vec<usize>,
    pub leaves: Vec<usize>,
    pub leaves_adj_qprime: Vec<usize>,
    pub q_prime: Vec<usize>,
    pub q_components: Vec<Vec<usize>>,
    /// Components of T - Q' containing at least one A-vertex. Empty when
    /// Q' is empty.
    pub t_components: Vec<TreeComponent>,
    pub s: usize,
    pub nice: bool,
}

pub fn decompose_tree(t: &Graph) -> Result<TreeDecomposition> {
    let ab = partition_ab(t)?;
    let n = t.order();
    let mut in_a = vec![false; n];
    for &v in &ab.a {
        in_a[v] = true;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 1).collect();
    let q_prime: Vec<usize> = ab.b.iter().copied().filter(|&v| t.degree(v) != 1).collect();
    let mut in_qp = vec![false; n];
    for &v in &q_prime {
        in_qp[v] = true;
    }
    let leaves_adj_qprime = leaves
        .iter()
        .copied()
        .filter(|&l| t.neighbors(l).iter().any(|&w| in_qp[w]))
        .collect();

    let q_components = t
        .induced(&q_prime)
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| q_prime[i]).collect())
        .collect();

    let mut t_components = Vec::new();
    if !q_prime.is_empty() {
        let rest: Vec<usize> = (0..n).filter(|&v| !in_qp[v]).collect();
        for comp in t.induced(&rest).components() {
            let vertices: Vec<usize> = comp.into_iter().map(|i| rest[i]).collect();
            if !vertices.iter().any(|&v| in_a[v]) {
                continue;
            }
            let attachments: BTreeSet<usize> = vertices
                .iter()
                .flat_map(|&v| t.neighbors(v).iter().copied())
                .filter(|&w| in_qp[w])
                .collect();
            t_components.push(TreeComponent {
                vertices,
                ell: attachments.len(),
                attachments: attachments.into_iter().collect(),
            });
        }
    }
    let nice = n >= 3 && q_prime.is_empty();
    Ok(TreeDecomposition {
        order: n,
        s: t_components.len(),
        a: ab.a,
        b: ab.b,
        add_order: ab.add_order,
        leaves,
        leaves_adj_qprime,
        q_prime,
        q_components,
        t_components,
        nice,
    })
}

/// `(|V(T)| + 1) / 2`, the exponent of the copy count in the pair-class graph.
pub fn furedi_exponent(t: &Graph) -> Result<Exponent> {
    require_tree(t)?;
    Ok(Exponent::from_twice(t.order() as u64 + 1))
}

/// `|L| + (|A| + s) / 2` read literally, with L all leaves.
pub fn literal_exponent(d: &TreeDecomposition) -> Result<Exponent> {
    if d.nice {
        return Err(Error::NotApplicable(
            "the leaf formula covers trees that are not nice; use furedi_exponent".into(),
        ));
    }
    if d.order < 3 {
        return Err(Error::NotApplicable(
            "the leaf formula covers trees on at least 3 vertices".into(),
        ));
    }
    Ok(Exponent::from_twice(
        2 * d.leaves.len() as u64 + d.a.len() as u64 + d.s as u64,
    ))
}

/// `|L_adj| + sum_j (|V(T_j)| - l_j + 1) / 2`: free leaves at Q' plus the
/// fixed-leaf bound for each `T_j` extended by its attachment vertices.
pub fn proof_exponent(d: &TreeDecomposition) -> Exponent {
    if d.q_prime.is_empty() {
        return Exponent::from_twice(d.order as u64 + 1);
    }
    let pieces: u64 = d
        .t_components
        .iter()
        .map(|c| (c.vertices.len() + 1 - c.ell) as u64)
        .sum();
    Exponent::from_twice(2 * d.leaves_adj_qprime.len() as u64 + pieces)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    pub furedi_exp: Exponent,
    /// `None` for nice trees and K_2, where the leaf formula does not apply.
    #[serde(serialize_with = "literal_or_marker")]
    pub literal_exp: Option<Exponent>,
    pub proof_exp: Exponent,
    pub agreement: bool,
}

fn literal_or_marker<S: Serializer>(v: &Option<Exponent>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(e) => e.serialize(s),
        None => s.serialize_str("nice"),
    }
}

pub fn exponent_report(d: &TreeDecomposition) -> ExponentReport {
    let literal = literal_exponent(d).ok();
    let proof = proof_exponent(d);
    ExponentReport {
        furedi_exp: Exponent::from_twice(d.order as u64 + 1),
        literal_exp: literal,
        proof_exp: proof,
        agreement: literal.is_none_or(|l| l == proof),
    }
}

// AHU canonical forms.

fn rooted(t: &Graph, root: usize, blocked: Option<usize>) -> (String, BigUint) {
    // iterative post-order to avoid deep recursion on paths
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    let mut i = 0;
    parent[root] = root;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if parent[w] == usize::MAX && Some(w) != blocked {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut code: Vec<Option<String>> = vec![None; n];
    let mut aut: Vec<BigUint> = vec![BigUint::from(1u32); n];
    for &u in order.iter().rev() {
        let mut kids: Vec<(String, usize)> = t
            .neighbors(u)
            .iter()
            .filter(|&&w| parent[w] == u && w != u)
            .map(|&w| (code[w].take().unwrap(), w))
            .collect();
        kids.sort();
        let mut a = BigUint::from(1u32);
        let mut run = 0u32;
        for (j, (c, w)) in kids.iter().enumerate() {
            a *= &aut[*w];
            run = if j > 0 && kids[j - 1].0 == *c { run + 1 } else { 1 };
            a *= run;
        }
        let mut s = String::with_capacity(2 + kids.iter().map(|k| k.0.len()).sum::<usize>());
        s.push('(');
        for (c, _) in &kids {
            s.push_str(c);
        }
        s.push(')');
        code[u] = Some(s);
        aut[u] = a;
    }
    (code[root].take().unwrap(), aut[root].clone())
}

fn centroids(t: &Graph) -> Vec<usize> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u]] += size[u];
    }
    (0..n)
        .filter(|&v| {
            let largest = t
                .neighbors(v)
                .iter()
                .map(|&w| if parent[w] == v && w != 0 { size[w] } else { n - size[v] })
                .max()
                .unwrap_or(0);
            largest * 2 <= n
        })
        .collect()
}

/// Canonical string of an unlabeled tree: equal iff isomorphic.
pub fn tree_canonical_form(t: &Graph) -> String {
    if t.order() == 1 {
        return "()".into();
    }
    match centroids(t).as_slice() {
        [c] => rooted(t, *c, None).0,
        [c1, c2] => {
            let mut halves = [rooted(t, *c1, Some(*c2)).0, rooted(t, *c2, Some(*c1)).0];
            halves.sort();
            format!("[{}|{}]", halves[0], halves[1])
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// |Aut(T)| from centroid-rooted canonical forms.
pub fn tree_automorphism_count(t: &Graph) -> BigUint {
    if t.order() <= 1 {
        return BigUint::from(1u32);
    }
    match centroids(t).as_slice() {
        [c] => rooted(t, *c, None).1,
        [c1, c2] => {
            let (s1, a1) = rooted(t, *c1, Some(*c2));
            let (s2, a2) = rooted(t, *c2, Some(*c1));
            let swap = if s1 == s2 { 2u32 } else { 1 };
            a1 * a2 * swap
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// One representative of every unlabeled tree on `n` vertices, ordered by
/// canonical form. Grows trees leaf by leaf and deduplicates.
pub fn enumerate_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<(String, Graph)> = vec![("()".into(), Graph::empty(1))];
    for k in 1..n {
        let mut next = std::collections::BTreeMap::new();
        for (_, g) in &level {
            for v in 0..k {
                let grown = Graph::new(k + 1, g.edges().chain(std::iter::once((v, k))))
                    .expect("adding a leaf keeps the tree valid");
                next.entry(tree_canonical_form(&grown)).or_insert(grown);
            }
        }
        level = next.into_iter().collect();
    }
    level.into_iter().map(|(_, g)| g).collect()
}

/// Labeled tree from a Pruefer sequence over `0..seq.len() + 2`.
pub fn from_pruefer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if seq.iter().any(|&x| x >= n) {
        return Err(Error::InvalidArgument("Pruefer entry out of range".into()));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    /// c = 0, leaves 1..=3, a = 4, b = 5
    fn broom() -> Graph {
        tree(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    }

    #[test]
    fn partition_examples() {
        let p5 = partition_ab(&Graph::path(5)).unwrap();
        assert_eq!(p5.a, vec![1, 2, 3]);
        assert_eq!(p5.b, vec![0, 4]);
        let star = partition_ab(&Graph::star(4)).unwrap();
        assert!(star.a.is_empty());
        assert_eq!(star.b.len(), 5);
        let spider = tree(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        let sp = partition_ab(&spider).unwrap();
        assert_eq!(sp.a, vec![0, 1, 3, 5]);
        assert_eq!(sp.b, vec![2, 4, 6]);
        assert_eq!(sp.add_order, vec![0]);
        assert!(matches!(partition_ab(&Graph::cycle(4).unwrap()), Err(Error::NotATree(_))));
        assert!(matches!(partition_ab(&Graph::empty(1)), Err(Error::NotATree(_))));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_tree(&Graph::star(4)).unwrap();
        assert_eq!(d.leaves.len(), 4);
        assert_eq!(d.q_prime, vec![0]);
        assert_eq!(d.s, 0);
        assert!(!d.nice);

        let double_star = tree(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        let d = decompose_tree(&double_star).unwrap();
        assert_eq!(d.q_prime, vec![0, 1]);
        assert_eq!(d.q_components, vec![vec![0, 1]]);
        assert_eq!(d.s, 0);
        assert!(!d.nice);

        let d = decompose_tree(&broom()).unwrap();
        assert_eq!(d.q_prime, vec![0]);
        assert_eq!(d.a, vec![4]);
        assert_eq!(d.t_components.len(), 1);
        assert_eq!(d.t_components[0].vertices, vec![4, 5]);
        assert_eq!(d.t_components[0].ell, 1);
        assert_eq!(d.s, 1);
        assert_eq!(d.leaves_adj_qprime, vec![1, 2, 3]);
    }

    #[test]
    fn exponent_examples() {
        let d = decompose_tree(&Graph::star(5)).unwrap();
        assert_eq!(literal_exponent(&d).unwrap(), Exponent::from_twice(10));
        let double_star = tree(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(
            literal_exponent(&decompose_tree(&double_star).unwrap()).unwrap(),
            Exponent::from_twice(8)
        );
        let d = decompose_tree(&broom()).unwrap();
        assert_eq!(literal_exponent(&d).unwrap(), Exponent::from_twice(10));
        assert_eq!(proof_exponent(&d), Exponent::from_twice(8));
        let r = exponent_report(&d);
        assert!(!r.agreement);

        // c-l1, c-l2, c-l3, c-a, a-d, d-b1, d-b2
        let forked = tree(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (5, 7)]);
        assert_eq!(proof_exponent(&decompose_tree(&forked).unwrap()), Exponent::from_twice(10));

        let spider = tree(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        let d = decompose_tree(&spider).unwrap();
        assert!(d.nice);
        assert!(matches!(literal_exponent(&d), Err(Error::NotApplicable(_))));
        assert_eq!(proof_exponent(&d), Exponent::from_twice(8));
        assert_eq!(furedi_exponent(&spider).unwrap().to_string(), "4");
        assert_eq!(furedi_exponent(&Graph::path(4)).unwrap().to_string(), "5/2");
        assert_eq!(furedi_exponent(&Graph::path(2)).unwrap().to_string(), "3/2");
        let k2 = decompose_tree(&Graph::path(2)).unwrap();
        assert!(!k2.nice);
        assert_eq!(proof_exponent(&k2).to_string(), "3/2");
    }

    #[test]
    fn tree_counts_and_automorphisms() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(tree_automorphism_count(&Graph::path(3)), BigUint::from(2u32));
        assert_eq!(tree_automorphism_count(&Graph::path(4)), BigUint::from(2u32));
        assert_eq!(tree_automorphism_count(&Graph::star(3)), BigUint::from(6u32));
        let double_star = tree(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(tree_automorphism_count(&double_star), BigUint::from(8u32));
    }

    #[test]
    fn pruefer_round() {
        let t = from_pruefer(&[3, 3, 3]).unwrap();
        assert_eq!(tree_canonical_form(&t), tree_canonical_form(&Graph::star(4)));
        assert!(from_pruefer(&[0, 1, 2, 3]).unwrap().is_tree());
    }
}
