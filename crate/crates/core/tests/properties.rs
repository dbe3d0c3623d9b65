mod common;

use bisectlab::analyzer::analyze;
use bisectlab::analyzer::partition::edge_partition;
use bisectlab::analyzer::special_path::{special_path, trimmed_sigma};
use bisectlab::bisection::{audit_run, run_once, sigma, stage1};
use bisectlab::generators::{self, gadget_for_config, GadgetRequest};
use bisectlab::harness::{CorpusEntry, ExperimentConfig, GeneratorSpec};
use bisectlab::io::{parse_graph_str, write_graph_string};
use bisectlab::matching::{quasi_perfect_matching, verify_qpm};
use bisectlab::oracle::{cut_probability_exact, max_bisection_exact, PAIR_CAP};
use bisectlab::Graph;
use proptest::prelude::*;

fn free_graph() -> impl Strategy<Value = Graph> {
    (8usize..40, any::<u64>()).prop_filter_map("pruned away", |(n, seed)| {
        generators::random_free_graph(n, 2 * n, seed)
            .ok()
            .and_then(|g| g.parity_augment().ok())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn runs_respect_invariants(g in free_graph(), seed in any::<u64>(), run in 0u64..1000) {
        let q = quasi_perfect_matching(&g, seed, 4).unwrap();
        prop_assert!(verify_qpm(&g, q.pairs()).passed());
        let r = run_once(&g, &q, seed, run);
        let audit = audit_run(&g, &q, &r);
        prop_assert!(audit.passed(), "{:?}", audit.findings);
        prop_assert!(r.cut_size >= r.stage1_cut || !r.active_pairs.is_empty());
        prop_assert_eq!(run_once(&g, &q, seed, run), r);
    }

    #[test]
    fn trimming_preserves_sigma(g in free_graph(), seed in any::<u64>()) {
        let q = quasi_perfect_matching(&g, seed, 4).unwrap();
        let l = stage1(&q, seed, 0);
        for i in 0..q.num_pairs() {
            prop_assert_eq!(sigma(&g, &q, &l, i).unwrap(), trimmed_sigma(&g, &q, &l, i));
        }
    }

    #[test]
    fn structural_counts_hold(g in free_graph(), seed in any::<u64>()) {
        let q = quasi_perfect_matching(&g, seed, 16).unwrap();
        let part = edge_partition(&g, &q).unwrap();
        prop_assert!(part.e2.len() <= g.n());
        prop_assert_eq!(part.pair_e2.iter().sum::<usize>(), 2 * part.e2.len());
        prop_assert!(part.quasi_triangles.iter().all(|t| t.apex.is_some()));
        let report = analyze(&g, &q).unwrap();
        prop_assert!(report.violations.iter().all(|f| f.kind == "restart_surrogate_miss"));
    }

    #[test]
    fn edge_list_round_trips(g in free_graph()) {
        let back = parse_graph_str(&write_graph_string(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn gadget_relabelling_keeps_probability(seed in 1u64..10_000) {
        let all = common::all_gadgets();
        let g0 = &all[(seed as usize) % all.len()];
        let g1 = gadget_for_config(&g0.request, seed).unwrap();
        let p0 = cut_probability_exact(&g0.graph, &g0.qpm, g0.edge, PAIR_CAP).unwrap();
        let p1 = cut_probability_exact(&g1.graph, &g1.qpm, g1.edge, PAIR_CAP).unwrap();
        prop_assert_eq!(p0, p1);
    }
}

#[test]
fn exact_cut_matches_enumerated_special_path() {
    for g in common::gadget_suite(&common::all_gadgets(), 4) {
        let sp = special_path(&g.graph, &g.qpm, g.edge).unwrap();
        let exact = cut_probability_exact(&g.graph, &g.qpm, g.edge, PAIR_CAP).unwrap();
        let enumerated = bisectlab::analyzer::closed_form::pij_enumerated(&sp).unwrap();
        assert_eq!(exact.pij, enumerated, "{:?}", g.request);
    }
}

#[test]
fn algorithm_never_beats_the_optimum() {
    for (name, g) in common::corpus().iter().filter(|(_, g)| g.n() <= 18) {
        let (opt, _) = max_bisection_exact(g, 18).unwrap();
        let even = g.parity_augment().unwrap();
        let q = quasi_perfect_matching(&even, 1, 16).unwrap();
        for run in 0..50 {
            let r = run_once(&even, &q, 1, run).restricted(g);
            assert!(r.cut_size <= opt, "{name}: {} > {opt}", r.cut_size);
        }
    }
}

#[test]
fn experiment_config_shapes() {
    let cfg = ExperimentConfig::from_json(
        r#"{"corpus": ["a.txt", {"family": "cycle", "n": 8}, {"family": "random", "n": 20, "m": 30, "seed": 7}]}"#,
    )
    .unwrap();
    assert_eq!(cfg.restarts, 200);
    assert_eq!(cfg.qpm_restarts, 16);
    assert!(cfg.bounds.xi.is_none() && cfg.bounds.c.is_none());
    assert_eq!(cfg.corpus[0], CorpusEntry::File("a.txt".into()));
    assert_eq!(cfg.corpus[1], CorpusEntry::Generator(GeneratorSpec::Cycle { n: 8 }));
    let spec: GeneratorSpec = "subdivide:complete:4".parse().unwrap();
    assert_eq!(spec.to_string(), "subdivide:complete:4");
    assert_eq!(spec.build().unwrap().n(), 16);
    let gadget: GeneratorSpec = "gadget:0,0,0,0,0,0,1,0,0,0:1:2:3".parse().unwrap();
    assert_eq!(gadget.to_string().parse::<GeneratorSpec>().unwrap(), gadget);
    assert!(
        GadgetRequest::new(Default::default(), 0, 0)
            .completed()
            .complete_min_degree
    );
}
