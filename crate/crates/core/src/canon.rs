//! Canonical labeling by partition refinement plus individualization.
//!
//! The search branches on every vertex of the first smallest non-singleton
//! cell and keeps the relabeling whose graph6 bit string is least. Twin
//! vertices (equal neighborhoods up to each other) are interchangeable by a
//! transposition that fixes the current partition, so only one twin per
//! class is tried.

use crate::error::Result;
use crate::graph::Graph;
use crate::graph6;

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Cells = Vec::with_capacity(n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Packs the upper triangle (graph6 slot order) under `label`, most
/// significant bit first, so word-wise comparison is bit-sequence order.
fn packed(g: &Graph, at: &[usize]) -> Vec<u64> {
    let n = g.order();
    let slots = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; slots.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(at[i], at[j]) {
                out[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    twin_rep: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, cells: Cells) {
        let cells = refine(self.g, cells);
        if cells.len() == self.g.order() {
            // at[label] = vertex
            let at: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let key = packed(self.g, &at);
            if self.best.as_ref().is_none_or(|(b, _)| key < *b) {
                self.best = Some((key, at));
            }
            return;
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .unwrap();
        let mut tried_reps: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            let rep = self.twin_rep[v];
            if tried_reps.contains(&rep) {
                continue;
            }
            tried_reps.push(rep);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.run(next);
        }
    }
}

fn twin_representatives(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut rep: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if rep[u] != u {
                continue;
            }
            let twins = g.row(u).iter().zip(g.row(v)).enumerate().all(|(wi, (&a, &b))| {
                let mut a = a;
                let mut b = b;
                if v / 64 == wi {
                    a &= !(1 << (v % 64));
                }
                if u / 64 == wi {
                    b &= !(1 << (u % 64));
                }
                a == b
            });
            if twins {
                rep[v] = u;
                break;
            }
        }
    }
    rep
}

/// Returns `at`, where `at[i]` is the vertex that receives canonical label
/// `i`. Vertices are only ever mapped onto equally colored positions, and
/// colors are ordered ascending.
pub fn canonical_order(g: &Graph, colors: Option<&[u32]>) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let cells: Cells = match colors {
        None => vec![(0..n).collect()],
        Some(c) => {
            let mut distinct: Vec<u32> = c.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            distinct
                .iter()
                .map(|&col| (0..n).filter(|&v| c[v] == col).collect())
                .collect()
        }
    };
    let mut search = Search {
        g,
        twin_rep: twin_representatives(g),
        best: None,
    };
    search.run(cells);
    search.best.unwrap().1
}

pub fn canonical_form(g: &Graph) -> Graph {
    let at = canonical_order(g, None);
    let mut perm = vec![0; g.order()];
    for (label, &v) in at.iter().enumerate() {
        perm[v] = label;
    }
    g.relabel(&perm).expect("canonical order is a permutation")
}

pub fn canonical_graph6(g: &Graph) -> Result<String> {
    graph6::encode(&canonical_form(g))
}

/// Key identifying a vertex-colored graph up to color-preserving isomorphism.
pub fn colored_key(g: &Graph, colors: &[u32]) -> Vec<u64> {
    let at = canonical_order(g, Some(colors));
    let mut key = packed(g, &at);
    key.extend(at.iter().map(|&v| colors[v] as u64));
    key
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn relabelings_share_a_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let graphs = [
            Graph::petersen(),
            Graph::complete_multipartite(&[2, 9]).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(),
            Graph::disjoint_union(&[Graph::complete(4), Graph::complete(4)]),
        ];
        for g in graphs {
            let form = canonical_form(&g);
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..g.order()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&perm).unwrap()), form);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // same degree sequence, different graphs
        let c6 = Graph::cycle(6).unwrap();
        let two_triangles = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert!(!is_isomorphic(&c6, &two_triangles));
        assert!(is_isomorphic(&Graph::path(4), &Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap()));
    }

    #[test]
    fn exhaustive_five_vertex_classes() {
        // 2^10 labeled graphs on 5 vertices fall into 34 isomorphism classes
        let mut forms = std::collections::BTreeSet::new();
        for mask in 0u32..1024 {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..5 {
                for i in 0..j {
                    if mask >> k & 1 == 1 {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            forms.insert(canonical_graph6(&Graph::new(5, edges).unwrap()).unwrap());
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn colors_are_respected() {
        let p3 = Graph::path(3);
        // center colored differently from one end vs. the other end
        let a = colored_key(&p3, &[1, 0, 0]);
        let b = colored_key(&p3, &[0, 0, 1]);
        let c = colored_key(&p3, &[0, 1, 0]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
