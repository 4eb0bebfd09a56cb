use num_bigint::BigUint;
use proptest::prelude::*;

use turan_core::canon::canonical_graph6;
use turan_core::coloring::{bipartite_beta, chromatic_number};
use turan_core::constructions::{
    asymptotic_profile, classify_forbidden, clique_blocks, construct_g0, fraction_objective,
    multipartite_k2t, optimize_multipartite, ForbiddenCase,
};
use turan_core::counting::{
    automorphism_count, count_copies, count_embeddings, count_embeddings_fixed,
    count_embeddings_with, count_k2t, CountOptions,
};
use turan_core::furedi::build_furedi;
use turan_core::galois::GaloisField;
use turan_core::graph6;
use turan_core::oracle::{exact_ex, OracleOptions};
use turan_core::tree::{decompose_tree, from_pruefer, partition_ab, proof_exponent, tree_automorphism_count};
use turan_core::Graph;

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (0..=max_order).prop_flat_map(|n| {
        let slots = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(mask).filter(|(_, on)| *on).map(|(e, _)| e).collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn tree_strategy(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(|seq| from_pruefer(&seq).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(10)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn adjacency_and_codegree_are_symmetric(g in graph_strategy(12)) {
        let edges: Vec<_> = g.edges().collect();
        prop_assert_eq!(edges.len(), g.edge_count());
        for u in 0..g.order() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.order() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                prop_assert_eq!(g.has_edge(u, v), edges.contains(&(u.min(v), u.max(v))));
                if u != v {
                    prop_assert_eq!(g.codegree(u, v).unwrap(), g.codegree(v, u).unwrap());
                }
            }
        }
    }

    #[test]
    fn beta_and_chromatic_number(g in graph_strategy(10)) {
        let beta = bipartite_beta(&g);
        if let Some(b) = beta {
            prop_assert!(b <= g.order() / 2);
        }
        prop_assert_eq!(chromatic_number(&g) == 2, beta.is_some() && g.edge_count() > 0);
    }
}

#[test]
fn multipartite_codegrees() {
    for parts in [vec![3, 3, 3], vec![2, 5]] {
        let g = Graph::complete_multipartite(&parts).unwrap();
        let n = g.order();
        let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &s)| vec![i; s]).collect();
        for u in 0..n {
            for v in u + 1..n {
                let expected = if part_of[u] == part_of[v] {
                    n - parts[part_of[u]]
                } else {
                    n - parts[part_of[u]] - parts[part_of[v]]
                };
                assert_eq!(g.codegree(u, v).unwrap(), expected);
            }
        }
    }
}

#[test]
fn field_laws_on_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 243, 256] {
        let f = GaloisField::with_order(q).unwrap();
        let el = |rng: &mut rand_chacha::ChaCha8Rng| f.element(rng.gen_range(0..q as u32)).unwrap();
        for _ in 0..1000 {
            let (x, y, z) = (el(&mut rng), el(&mut rng), el(&mut rng));
            assert_eq!(f.mul(x, y), f.mul(y, x));
            assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
            assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            let m = rng.gen_range(0..3 * q);
            assert_eq!(f.pow(f.mul(x, y), m), f.mul(f.pow(x, m), f.pow(y, m)));
        }
        for d in (1..q).filter(|d| (q - 1) % d == 0) {
            let h = f.element_of_order(d).unwrap();
            assert_eq!(f.pow(h, d).code(), 1);
            for e in (1..d).filter(|e| d % e == 0) {
                assert_ne!(f.pow(h, e).code(), 1, "q = {q}, d = {d}, e = {e}");
            }
            let group: Vec<_> = (1..=d).map(|i| f.pow(h, i)).collect();
            let mut codes: Vec<u32> = group.iter().map(|x| x.code()).collect();
            codes.sort_unstable();
            codes.dedup();
            assert_eq!(codes.len() as u64, d);
            for &a in &group {
                for &b in &group {
                    assert!(group.contains(&f.mul(a, b)));
                }
            }
        }
    }
}

#[test]
fn furedi_degree_sums_and_generic_k2t_count() {
    for (q, t) in [(3u64, 2u64), (4, 4), (5, 2), (7, 3), (4, 2), (9, 5)] {
        let fg = build_furedi(q, t).unwrap();
        let g = fg.graph();
        let n = g.order() as u64;
        let degree_sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
        let e = g.edge_count() as u64;
        assert!(n * (q - 1) <= 2 * e && 2 * e <= n * q, "q = {q}, t = {t}");
        let k2t = Graph::complete_multipartite(&[2, t as usize]).unwrap();
        assert!(count_embeddings(&k2t, g, true).is_zero(), "q = {q}, t = {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn k2t_codegree_count_matches_generic(g in graph_strategy(10), t in 2u64..=4) {
        let k2t = Graph::complete_multipartite(&[2, t as usize]).unwrap();
        prop_assert_eq!(count_k2t(&g, t).unwrap().value, count_copies(&k2t, &g).unwrap().value);
    }

    #[test]
    fn anchored_counts_sum_to_total(h in graph_strategy(4), g in graph_strategy(6), pick in 0usize..4) {
        prop_assume!(h.order() >= 1);
        let a = pick % h.order();
        let total: BigUint = (0..g.order())
            .map(|x| count_embeddings_fixed(&h, &[a], &g, &[x], None).unwrap().count.value)
            .sum();
        prop_assert_eq!(total, count_embeddings(&h, &g, false).value);
    }

    #[test]
    fn anchored_pairs_sum_to_total(h in graph_strategy(4), g in graph_strategy(6)) {
        prop_assume!(h.order() >= 2);
        let mut total = BigUint::from(0u32);
        for x in 0..g.order() {
            for y in (0..g.order()).filter(|&y| y != x) {
                total += count_embeddings_fixed(&h, &[1, 0], &g, &[x, y], None).unwrap().count.value;
            }
        }
        prop_assert_eq!(total, count_embeddings(&h, &g, false).value);
    }

    #[test]
    fn self_embeddings_are_automorphisms(h in graph_strategy(8)) {
        prop_assert_eq!(count_embeddings(&h, &h, false).value, automorphism_count(&h).unwrap());
    }

    #[test]
    fn tree_automorphisms_match_self_embeddings(t in tree_strategy(2, 9)) {
        prop_assert_eq!(tree_automorphism_count(&t), count_embeddings(&t, &t, false).value);
    }

    #[test]
    fn adding_an_edge_never_lowers_counts(h in graph_strategy(4), g in graph_strategy(8), pick in any::<usize>()) {
        let missing: Vec<(usize, usize)> = (0..g.order())
            .flat_map(|u| (u + 1..g.order()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick % missing.len()];
        let bigger = g.with_edge(u, v).unwrap();
        prop_assert!(count_embeddings(&h, &bigger, false).value >= count_embeddings(&h, &g, false).value);
    }

    #[test]
    fn relabeling_keeps_counts(h in graph_strategy(4), g in graph_strategy(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(
            count_embeddings(&h, &g.relabel(&perm).unwrap(), false).value,
            count_embeddings(&h, &g, false).value
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parallel_and_serial_counts_agree(h in graph_strategy(5), g in (24usize..=32).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(mask).filter(|(_, on)| *on).map(|(e, _)| e)).unwrap()
        })
    })) {
        let par = count_embeddings_with(&h, &g, CountOptions { existence_only: false, parallel: true });
        let ser = count_embeddings_with(&h, &g, CountOptions { existence_only: false, parallel: false });
        prop_assert_eq!(par.value, ser.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn partition_is_order_independent(t in tree_strategy(2, 12), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let base = partition_ab(&t).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..t.order()).collect();
            perm.shuffle(&mut rng);
            let moved = partition_ab(&t.relabel(&perm).unwrap()).unwrap();
            let mut a: Vec<usize> = base.a.iter().map(|&v| perm[v]).collect();
            a.sort_unstable();
            prop_assert_eq!(a, moved.a);
        }
    }

    #[test]
    fn decomposition_invariants(t in tree_strategy(2, 12)) {
        let d = decompose_tree(&t).unwrap();
        let n = t.order();
        let mut all: Vec<usize> = d.a.iter().chain(&d.b).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for v in 0..n {
            if t.degree(v) == 1 {
                prop_assert!(d.b.contains(&v));
            }
            if t.degree(v) == 2 {
                prop_assert!(d.a.contains(&v));
            }
        }
        prop_assert_eq!(d.nice, n >= 3 && d.b.iter().all(|&v| t.degree(v) == 1));
        if d.nice {
            prop_assert!(d.q_prime.is_empty());
            prop_assert_eq!(d.s, 0);
        }
        if !d.q_prime.is_empty() {
            for c in &d.t_components {
                prop_assert!(c.ell >= 1);
                prop_assert!(t.induced(&c.vertices).is_connected());
                prop_assert!(c.vertices.iter().all(|v| !d.q_prime.contains(v)));
            }
        }
        let proof = proof_exponent(&d);
        let furedi = n as u64 + 1;
        if d.nice {
            prop_assert_eq!(proof.twice(), furedi);
        } else if n >= 3 {
            prop_assert!(proof.twice() > furedi);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn multipartite_closed_form_matches_counter(parts in proptest::collection::vec(1usize..=8, 1..=4), t in 2u64..=4) {
        prop_assume!(parts.iter().sum::<usize>() <= 30);
        let g = Graph::complete_multipartite(&parts).unwrap();
        prop_assert_eq!(multipartite_k2t(&parts, t).unwrap(), count_k2t(&g, t).unwrap().value);
    }

    #[test]
    fn clique_blocks_divisible_case(m in 1usize..=9, blocks in 1usize..=4, t in 2u64..=5) {
        let g = clique_blocks(m * blocks, m).unwrap();
        let one = count_k2t(&Graph::complete(m), t).unwrap().value;
        prop_assert_eq!(count_k2t(&g, t).unwrap().value, one * blocks);
    }

    #[test]
    fn classification_is_consistent(f in graph_strategy(8), t in 2u64..=3) {
        prop_assume!(f.order() >= 1);
        let c = classify_forbidden(&f, t).unwrap();
        let bipartite = bipartite_beta(&f).is_some();
        prop_assert_eq!(c.beta.is_some(), bipartite);
        prop_assert_eq!(
            c.params.is_some(),
            matches!(c.case, ForbiddenCase::CliqueBlocks | ForbiddenCase::FurediQuadratic)
        );
        prop_assert_eq!(c.case == ForbiddenCase::Chromatic, !bipartite);
        let k2t = Graph::complete_multipartite(&[2, t as usize]).unwrap();
        prop_assert_eq!(c.case == ForbiddenCase::Zero, !count_embeddings(&f, &k2t, true).is_zero());
    }
}

#[test]
fn balanced_bipartite_is_optimal_for_c4() {
    // on two vertices every profile has zero copies; the tie goes to [2]
    assert_eq!(optimize_multipartite(2, 2, 2).unwrap().count, BigUint::from(0u32));
    for n in (4..=40).step_by(2) {
        let p = optimize_multipartite(n, 2, 2).unwrap();
        assert_eq!(p.parts, vec![n / 2, n / 2], "n = {n}");
        assert_eq!(p.count, multipartite_k2t(&p.parts, 2).unwrap());
    }
}

#[test]
fn asymptotic_profiles_beat_balance() {
    for (k, t) in [(2, 2), (2, 3), (2, 6), (3, 2), (3, 4), (4, 3)] {
        let p = asymptotic_profile(k, t, 0.01).unwrap();
        assert!(p.objective >= fraction_objective(&vec![1.0 / k as f64; k], t));
        assert!((p.fractions.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(p.fractions.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn g0_is_always_k2t_free() {
    let trees = [
        Graph::star(3),
        Graph::new(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap(),
        Graph::new(7, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6)]).unwrap(),
        Graph::new(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (5, 7)]).unwrap(),
    ];
    for tree in &trees {
        for (n, t) in [(120, 3), (150, 2), (200, 4)] {
            match construct_g0(tree, n, t, 3) {
                Ok(g0) => {
                    assert!(count_k2t(&g0.graph, t).unwrap().is_zero());
                    assert!(g0.order <= n);
                }
                Err(e) => panic!("n = {n}, t = {t}: {e}"),
            }
        }
    }
}

#[test]
fn oracle_is_deterministic_and_dominates_constructions() {
    let c4 = Graph::cycle(4).unwrap();
    let p5 = Graph::path(5);
    for n in 4..=7 {
        let a = exact_ex(n, &c4, &p5, OracleOptions::default()).unwrap();
        let b = exact_ex(n, &c4, &p5, OracleOptions { serial: true, ..Default::default() }).unwrap();
        assert_eq!((&a.value, &a.witness_g6), (&b.value, &b.witness_g6));
        let w = a.witness().unwrap();
        assert!(count_embeddings(&p5, &w, true).is_zero());
        assert_eq!(count_copies(&c4, &w).unwrap().value, a.value);
        let blocks = count_k2t(&clique_blocks(n, 4).unwrap(), 2).unwrap().value;
        assert!(a.value >= blocks);
        if n % 4 == 0 {
            assert_eq!(a.value, blocks);
        }
    }
    // K_{2,2} plus isolated vertices is K_{2,3}-free
    let k23 = Graph::complete_multipartite(&[2, 3]).unwrap();
    for n in 5..=7 {
        let r = exact_ex(n, &c4, &k23, OracleOptions::default()).unwrap();
        let k22 = count_k2t(&Graph::complete_multipartite(&[2, 2]).unwrap().padded(n - 4), 2).unwrap().value;
        assert!(r.value >= k22);
        assert_eq!(canonical_graph6(&r.witness().unwrap()).unwrap(), r.witness_g6);
    }
}

#[test]
fn suite_results_are_reproducible() {
    use turan_core::suite::{run_suite, Level};
    let a = run_suite(Level::Quick, 9);
    let b = run_suite(Level::Quick, 9);
    assert_eq!(a.report.results, b.report.results);
    assert_eq!(a.hard_failures(), 0);
}
