//! Regression metric for the heuristic search against exact enumeration on
//! small random regular graphs: the heuristic never exceeds the exact maximum
//! (soundness) and matches it on at least 90 of 100 seeds at the default budget.

use mixcert_core::construct::random_regular;
use mixcert_core::density::{certify_exact, search_witness, SearchBudget};
use mixcert_core::graph::ordered_edge_count;

#[test]
fn search_is_conservative_and_usually_tight_on_n12() {
    let mut matches = 0usize;
    let total = 100usize;
    for seed in 0..total as u64 {
        let g = random_regular(12, 3, seed).unwrap();
        let exact = certify_exact(&g, 0.0, 1.0).unwrap();
        let heur = search_witness(&g, 0.0, 1.0, &SearchBudget::default_for(12), seed);
        assert!(
            heur.max_surplus_found <= exact.max_surplus_found + 1e-12,
            "seed {seed}: heuristic {} exceeds exact {}",
            heur.max_surplus_found,
            exact.max_surplus_found
        );
        // any reported witness must survive an independent recount
        if let Some(w) = &heur.witness {
            assert_eq!(ordered_edge_count(&g, &w.s, &w.t), w.est, "seed {seed}");
        }
        if heur.max_surplus_found == exact.max_surplus_found {
            matches += 1;
        }
    }
    assert!(
        matches >= 90,
        "heuristic matched exact max on only {matches}/{total} seeds"
    );
}
