//! Partitions the non-pair edges of a random {C4,C6}-free graph and lists the
//! special paths with their k vectors, cases and exact cut probabilities.

use bisectlab::analyzer::analyze;
use bisectlab::analyzer::partition::edge_partition;
use bisectlab::generators;
use bisectlab::matching::quasi_perfect_matching;

fn main() {
    let g = generators::random_free_graph(40, 60, 11).unwrap();
    let g = g.parity_augment().unwrap();
    let q = quasi_perfect_matching(&g, 0, 64).unwrap();
    let part = edge_partition(&g, &q).unwrap();
    println!("n={} m={} {:?}", g.n(), g.m(), part.summary());
    for t in part.quasi_triangles.iter().take(3) {
        println!(
            "quasi-triangle on pairs {:?}: edges {:?}, apex {:?}",
            t.pairs, t.edges, t.apex
        );
    }

    let report = analyze(&g, &q).unwrap();
    for p in report.special_paths.iter().take(12) {
        println!(
            "uv={:?} k={:?} s=({},{}) case={} p_cut={}",
            p.edge,
            p.k.ks(),
            p.s1,
            p.s2,
            p.case.map_or("-".into(), |c| c.to_string()),
            p.p_cut.as_deref().unwrap_or("unclassified")
        );
    }
    println!(
        "{} special paths, {} findings",
        report.special_paths.len(),
        report.violations.len()
    );
    for f in &report.violations {
        println!("  {}: {}", f.kind, f.detail);
    }
}
