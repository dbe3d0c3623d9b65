//! Maximum matchings by the blossom engine against brute force, then the
//! three-layer pairing and its audit.

use bisectlab::generators;
use bisectlab::matching::{maximum_matching, quasi_perfect_matching, verify_qpm};
use bisectlab::oracle::{max_matching_exact, MATCHING_CAP};
use bisectlab::PairTag;

fn main() {
    for (name, g) in [
        ("K4", generators::complete(4)),
        ("C7", generators::cycle(7).unwrap()),
        ("Petersen", generators::petersen()),
        ("star(5)", generators::star(5)),
    ] {
        let m = maximum_matching(&g);
        let exact = max_matching_exact(&g, MATCHING_CAP).unwrap();
        println!("{name:<9} blossom={} brute-force={exact}", m.len());
    }

    let g = generators::two_subdivision(&generators::petersen());
    let q = quasi_perfect_matching(&g, 3, 16).unwrap();
    println!(
        "\nS(Petersen): n={} pairs={} M1={} M2={} M3={}",
        g.n(),
        q.num_pairs(),
        q.count(PairTag::M1),
        q.count(PairTag::M2),
        q.count(PairTag::M3)
    );
    for c in verify_qpm(&g, q.pairs()).checks {
        println!("  {:<22} {}", c.name, if c.passed { "ok" } else { "FAILED" });
    }
    for p in q.pairs().iter().filter(|p| p.tag == PairTag::M2).take(3) {
        println!("  M2 pair {}{} via common neighbour {:?}", p.u, p.v, p.witness);
    }
}
