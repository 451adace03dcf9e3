use dim_core::oracle::{enumerate_all_graphs, oracle_solve, OracleMode};
use dim_core::pattern::find_induced_sijk;
use dim_core::solver::{Solver, SolverOptions, Verdict};
use dim_core::Graph;

fn check(g: &Graph, solver: &Solver) -> usize {
    let want = oracle_solve(g, None, OracleMode::MinWeight).best.map(|b| b.1);
    let out = solver.solve(g);
    let have = match &out.verdict {
        Verdict::Found { weight, .. } => Some(*weight),
        Verdict::NoDim { .. } => None,
        v => panic!("unexpected {v:?} on {:?}", g.edges().collect::<Vec<_>>()),
    };
    assert_eq!(have, want, "{:?}", g.edges().collect::<Vec<_>>());
    out.stats.violations()
}

#[test]
fn all_small_s124_free_graphs() {
    let solver = Solver::new(SolverOptions { minimize: true, structural_checks: true, ..Default::default() });
    let max_n: usize = std::env::var("DIM_DIFF_N").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    for n in 1..=max_n {
        let graphs = enumerate_all_graphs(n, |g| find_induced_sijk(g, 1, 2, 4).is_none()).unwrap();
        let mut violations = 0;
        for g in &graphs {
            violations += check(g, &solver);
        }
        eprintln!("n={n}: {} graphs, {violations} violations", graphs.len());
        assert_eq!(violations, 0, "structural violations at n={n}");
    }
}

