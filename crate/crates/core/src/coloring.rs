//! Exact chromatic number and the bipartite side parameter beta.

use crate::graph::Graph;

/// Exact chromatic number by DSATUR-ordered branch and bound, seeded with a
/// greedy clique lower bound. Intended for small forbidden graphs.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g);
    let mut search = Dsatur {
        g,
        colors: vec![usize::MAX; n],
        best: n + 1,
        lower,
    };
    // A greedy DSATUR pass gives the initial upper bound.
    search.best = search.greedy_upper_bound();
    if search.best > lower {
        search.colors.fill(usize::MAX);
        search.branch(0, 0);
    }
    search.best
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for start in 0..g.order() {
        let mut clique = vec![start];
        let mut cands: Vec<usize> = g.neighbors(start).to_vec();
        while !cands.is_empty() {
            let &pick = cands.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
            clique.push(pick);
            cands.retain(|&v| v != pick && g.has_edge(v, pick));
        }
        best = best.max(clique.len());
    }
    best
}

struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    best: usize,
    lower: usize,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = 0u128;
        let mut extra = Vec::new();
        for &w in self.g.neighbors(v) {
            let c = self.colors[w];
            if c == usize::MAX {
                continue;
            }
            if c < 128 {
                seen |= 1 << c;
            } else if !extra.contains(&c) {
                extra.push(c);
            }
        }
        seen.count_ones() as usize + extra.len()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.order())
            .filter(|&v| self.colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let uncolored_deg = self
                    .g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| self.colors[w] == usize::MAX)
                    .count();
                (self.saturation(v), uncolored_deg, std::cmp::Reverse(v))
            })
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        self.g.neighbors(v).iter().all(|&w| self.colors[w] != c)
    }

    fn greedy_upper_bound(&mut self) -> usize {
        let mut used = 0;
        while let Some(v) = self.pick() {
            let c = (0..).find(|&c| self.allowed(v, c)).unwrap();
            self.colors[v] = c;
            used = used.max(c + 1);
        }
        used
    }

    fn branch(&mut self, colored: usize, used: usize) {
        if used >= self.best || self.best == self.lower {
            return;
        }
        if colored == self.g.order() {
            self.best = used;
            return;
        }
        let v = self.pick().expect("an uncolored vertex remains");
        for c in 0..=used.min(self.best.saturating_sub(2)) {
            if !self.allowed(v, c) {
                continue;
            }
            self.colors[v] = c;
            self.branch(colored + 1, used.max(c + 1));
            self.colors[v] = usize::MAX;
            if self.best == self.lower {
                return;
            }
        }
    }
}

/// Proper 2-coloring per component, or `None` if some component has an odd
/// cycle. Returns `(color, component_sides)` where each entry of
/// `component_sides` is the pair of side sizes.
pub fn two_coloring(g: &Graph) -> Option<(Vec<u8>, Vec<(usize, usize)>)> {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    let mut sides = Vec::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut counts = (1, 0);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    if color[w] == 0 {
                        counts.0 += 1;
                    } else {
                        counts.1 += 1;
                    }
                    stack.push(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
        sides.push(counts);
    }
    Some((color, sides))
}

/// Least `p` such that `g` is a subgraph of some `K_{p,q}`, or `None` when
/// `g` is not bipartite. Components flip independently and `q` is
/// unbounded, so each component contributes its smaller side.
pub fn bipartite_beta(g: &Graph) -> Option<usize> {
    let (_, sides) = two_coloring(g)?;
    Some(sides.iter().map(|&(a, b)| a.min(b)).sum())
}
