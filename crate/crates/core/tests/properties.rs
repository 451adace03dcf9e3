use std::collections::BTreeMap;

use dim_core::coloring::{Color, Coloring};
use dim_core::gen::{generate_planted, GenMode, GenSpec};
use dim_core::oracle::{brute_force_dims, canonical_code, oracle_forced_edges, oracle_solve, OracleMode};
use dim_core::pattern::{self, find_induced_sijk, find_induced_sijk_through_edge, forced_edges_initial};
use dim_core::solver::{Solver, SolverOptions, Verdict};
use dim_core::{Edge, Graph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.1f64..0.9).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn arb_weighted(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_flat_map(|g| {
        let m = g.m();
        proptest::collection::vec(1u32..=10, m).prop_map(move |ws| {
            let weights: BTreeMap<Edge, f64> = g.edges().zip(ws).map(|(e, w)| (e, w as f64)).collect();
            g.clone().with_weights(weights).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|e| (perm[e.u()], perm[e.v()]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracle_matches_subset_enumeration(g in arb_graph(7)) {
        let all = oracle_solve(&g, None, OracleMode::Enumerate).all_dims.unwrap();
        let mut brute = brute_force_dims(&g);
        brute.sort();
        prop_assert_eq!(&all, &brute);
        let best = oracle_solve(&g, None, OracleMode::MinWeight).best.map(|b| b.1);
        let brute_best = brute.iter().map(|m| g.matching_weight(m)).min_by(f64::total_cmp);
        prop_assert_eq!(best, brute_best);
        prop_assert_eq!(oracle_solve(&g, None, OracleMode::Exists).feasible, !brute.is_empty());
    }

    #[test]
    fn oracle_respects_precoloring(g in arb_graph(8), pick in any::<prop::sample::Index>(), keep in any::<u64>()) {
        let all = oracle_solve(&g, None, OracleMode::Enumerate).all_dims.unwrap();
        prop_assume!(!all.is_empty());
        let m = &all[pick.index(all.len())];
        let full = Coloring::from_matching(g.n(), m);
        let mut partial = Coloring::new(g.n());
        for v in g.vertices() {
            if keep >> (v % 64) & 1 == 1 {
                partial.assign(v, full.color(v)).unwrap();
            }
        }
        let res = oracle_solve(&g, Some(&partial), OracleMode::Enumerate);
        prop_assert!(res.all_dims.as_ref().unwrap().contains(m));
        for d in res.all_dims.unwrap() {
            prop_assert!(g.is_dim(&d));
            prop_assert!(partial.admits(g.n(), &d));
        }
    }

    #[test]
    fn dims_color_completely(g in arb_graph(8)) {
        for m in oracle_solve(&g, None, OracleMode::Enumerate).all_dims.unwrap() {
            let c = Coloring::from_matching(g.n(), &m);
            prop_assert!(c.check_complete(&g).is_ok());
            prop_assert_eq!(c.count(Color::Black), 2 * m.len());
        }
    }

    #[test]
    fn forced_edges_are_in_every_dim(g in arb_graph(8)) {
        prop_assume!(oracle_solve(&g, None, OracleMode::Exists).feasible);
        let forced = oracle_forced_edges(&g);
        for e in forced_edges_initial(&g) {
            prop_assert!(forced.contains(&e), "{} not forced", e);
        }
    }

    #[test]
    fn witnesses_verify(g in arb_graph(9)) {
        for w in pattern::find_all_diamonds(&g).iter().chain(&pattern::find_all_butterflies(&g)) {
            prop_assert!(w.verify(&g));
        }
        for w in [pattern::find_k4(&g), pattern::find_gem(&g), pattern::find_c4(&g), find_induced_sijk(&g, 1, 1, 2)].into_iter().flatten() {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn spider_search_through_an_edge_is_consistent(g in arb_graph(9)) {
        let anywhere = find_induced_sijk(&g, 1, 1, 3);
        let mut through_any = false;
        for e in g.edges() {
            if let Some(w) = find_induced_sijk_through_edge(&g, 1, 1, 3, e) {
                prop_assert!(w.verify(&g));
                prop_assert!(w.vertices.contains(&e.u()) && w.vertices.contains(&e.v()));
                through_any = true;
            }
        }
        prop_assert_eq!(anywhere.is_some(), through_any);
    }

    #[test]
    fn canonical_code_ignores_labels(g in arb_graph(8), perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v < g.n()).collect();
        prop_assert_eq!(canonical_code(&g), canonical_code(&relabel(&g, &perm)));
    }

    #[test]
    fn solver_matches_oracle_on_class_members(g in arb_weighted(9)) {
        prop_assume!(find_induced_sijk(&g, 1, 2, 4).is_none());
        let opts = SolverOptions { minimize: true, structural_checks: true, ..Default::default() };
        let out = Solver::new(opts).solve(&g);
        let want = oracle_solve(&g, None, OracleMode::MinWeight).best.map(|b| b.1);
        match &out.verdict {
            Verdict::Found { matching, weight } => {
                prop_assert!(g.is_dim(matching));
                prop_assert_eq!(Some(*weight), want);
            }
            Verdict::NoDim { .. } => prop_assert_eq!(want, None),
            v => prop_assert!(false, "unexpected {:?}", v),
        }
        prop_assert_eq!(out.stats.violations(), 0);
    }

    #[test]
    fn solver_is_deterministic(g in arb_graph(9)) {
        let a = Solver::default().solve(&g);
        let b = Solver::default().solve(&g);
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.trace, b.trace);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn planted_instances_are_solved(n in 2usize..120, deg in 1.0f64..5.0, seed in any::<u64>()) {
        let (g, m) = generate_planted(&GenSpec::new(n, deg, seed, GenMode::Planted)).unwrap();
        prop_assert!(g.is_dim(&m));
        prop_assert!(find_induced_sijk(&g, 1, 2, 4).is_none());
        prop_assert!(pattern::find_k4(&g).is_none());
        prop_assert!(Solver::default().solve(&g).is_found());
    }
}
