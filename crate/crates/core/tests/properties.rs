use proptest::prelude::*;

use twinreduce_core::diversity::{diversity, neighbourhood_traces, trivial_bound};
use twinreduce_core::gadgets::{gen_grid, gen_s, s_adjacent};
use twinreduce_core::product::{product_path_sequence, verify_product_sequence, ProductError};
use twinreduce_core::oracle::{reduced_f_exact, reduced_f_upper_greedy, OracleConfig, Strategy as Greedy};
use twinreduce_core::params::{
    bandwidth_exact, col_s_exact, degeneracy, max_degree, pathwidth_exact, treewidth_exact, Limits, ParamKind,
};
use twinreduce_core::sequence::sequence_from_pairs;
use twinreduce_core::trigraph::{quotient, Colour};
use twinreduce_core::{Graph, Trigraph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

/// Random merge order, as indices into the live vertex list.
fn with_picks(max_n: usize) -> impl Strategy<Value = (Graph, Vec<(usize, usize)>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec((any::<usize>(), any::<usize>()), n.saturating_sub(1)))
    })
}

fn all_pairs(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for v in g.neighbours(u).iter() {
            d[u][v] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn contraction_follows_the_colour_rule((g, picks) in with_picks(8)) {
        let mut t = Trigraph::from_graph(&g);
        for (a, b) in picks {
            let live: Vec<usize> = t.vertices().collect();
            let u = live[a % live.len()];
            let v = live[(a % live.len() + 1 + b % (live.len() - 1)) % live.len()];
            let (next, w) = t.contract(u, v).unwrap();
            for x in next.vertices().filter(|&x| x != w) {
                let expected = match (t.colour(u, x), t.colour(v, x)) {
                    (Colour::Black, Colour::Black) => Colour::Black,
                    (Colour::Absent, Colour::Absent) => Colour::Absent,
                    _ => Colour::Red,
                };
                prop_assert_eq!(next.colour(w, x), expected);
            }
            prop_assert_eq!(w, t.next_id());
            t = next;
        }
        prop_assert_eq!(t.n(), 1);
    }

    #[test]
    fn sequences_match_quotients((g, picks) in with_picks(8)) {
        let base = Trigraph::from_graph(&g);
        let mut t = base.clone();
        let mut pairs = Vec::new();
        for (a, b) in picks.into_iter().take(g.n() / 2 + 1) {
            let live: Vec<usize> = t.vertices().collect();
            if live.len() < 2 {
                break;
            }
            let u = live[a % live.len()];
            let v = live[(a % live.len() + 1 + b % (live.len() - 1)) % live.len()];
            t.contract_in_place(u, v).unwrap();
            pairs.push((u, v));
        }
        let s = sequence_from_pairs(base.clone(), &pairs).unwrap();
        let last = s.validate().unwrap();
        let q = quotient(&base, &last.partition()).unwrap();
        prop_assert!(last.same_by_labels(&q));
    }

    #[test]
    fn evaluators_agree(g in graph(8)) {
        let l = Limits::default();
        let bw = bandwidth_exact(&g, None, &l).unwrap().value;
        let pw = pathwidth_exact(&g, &l).unwrap().value;
        let tw = treewidth_exact(&g, &l).unwrap().value;
        prop_assert!(tw <= pw && pw <= bw);
        prop_assert!(max_degree(&g) <= 2 * bw);
        prop_assert_eq!(col_s_exact(&g, 1, &l).unwrap().value, degeneracy(&g).value + 1);
        for s in 1..5 {
            prop_assert!(col_s_exact(&g, s, &l).unwrap().value <= tw + 1);
        }
    }

    #[test]
    fn diversity_matches_pairwise_comparison(g in graph(12), mask in any::<u16>(), r in 1usize..4) {
        let a: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let rep = diversity(&g, &a, r).unwrap();
        let d = all_pairs(&g);
        let prof = |v: usize| -> Vec<Option<usize>> {
            a.iter().map(|&w| d[v][w].filter(|&x| x <= r)).collect()
        };
        let outside: Vec<usize> = (0..g.n()).filter(|v| !a.contains(v)).collect();
        let mut distinct = 0;
        for (i, &v) in outside.iter().enumerate() {
            if outside[..i].iter().all(|&u| prof(u) != prof(v)) {
                distinct += 1;
            }
        }
        prop_assert_eq!(rep.count, distinct);
        let members: usize = rep.classes.iter().map(|c| c.1.len()).sum();
        prop_assert_eq!(members, outside.len());
        prop_assert!(rep.count as u128 <= trivial_bound(a.len(), r));
        if r == 1 {
            prop_assert_eq!(rep.count, neighbourhood_traces(&g, &a).unwrap());
        } else {
            // classes for r refine those for r - 1
            let coarse = diversity(&g, &a, r - 1).unwrap();
            for (_, m) in &rep.classes {
                let home = coarse.classes.iter().position(|c| c.1.contains(&m[0])).unwrap();
                prop_assert!(m.iter().all(|v| coarse.classes[home].1.contains(v)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn oracle_is_consistent(g in graph(6)) {
        let f = ParamKind::MaxDegree;
        let t = Trigraph::from_graph(&g);
        let exact = reduced_f_exact(&t, &OracleConfig::new(&f)).unwrap();
        prop_assert!(exact.exact);
        prop_assert_eq!(exact.sequence.width(&f).unwrap(), exact.value);
        let greedy = reduced_f_upper_greedy(&t, &f, &[Greedy::MinRedParam, Greedy::LeafMerge]).unwrap();
        prop_assert!(exact.value <= greedy.value);
        let comp = reduced_f_exact(&Trigraph::from_graph(&g.complement()), &OracleConfig::new(&f)).unwrap();
        prop_assert_eq!(comp.value, exact.value);
        if g.n() > 1 {
            let sub: Vec<usize> = (1..g.n()).collect();
            let h = reduced_f_exact(&Trigraph::from_graph(&g.induced(&sub)), &OracleConfig::new(&f)).unwrap();
            prop_assert!(h.value <= exact.value);
        }
    }
}

#[test]
fn gadget_edges_follow_distances() {
    for x in 1..4 {
        for q in 2..4 {
            for r in 1..4 {
                let s = gen_s(x, q, r).unwrap();
                for a in 0..s.vertices.len() {
                    for b in a + 1..s.vertices.len() {
                        assert_eq!(s.graph.has_edge(a, b), s_adjacent(s.vertices[a], s.vertices[b], r));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn grid_subgraphs_give_verified_sequences(m in 1usize..6, n in 1usize..6, keep in any::<u64>()) {
        let (full, cert) = gen_grid(m, n).unwrap();
        let g = Graph::from_edges(full.n(), full.edges().enumerate().filter(|(i, _)| keep >> (i % 64) & 1 == 1).map(|(_, e)| e));
        let f = Trigraph::from_graph(&g);
        let mut q = 2;
        let s = loop {
            match product_path_sequence(&f, &cert, q) {
                Ok(s) => break s,
                Err(ProductError::Pigeonhole(fail)) => q = (q + 1).max(fail.signatures.len()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        };
        let st = verify_product_sequence(&s).unwrap();
        prop_assert!(st.projected_max_witness_bandwidth <= 4 * q - 2);
        prop_assert!(st.projected_max_red_degree <= 5 * q - 2);
        prop_assert_eq!(s.projected.merges.len(), g.n() - 1);
    }
}
