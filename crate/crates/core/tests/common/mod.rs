#![allow(dead_code)]

use bisectlab::analyzer::closed_form::{Case, CaseConfig};
use bisectlab::analyzer::special_path::special_path;
use bisectlab::generators::{self, gadget_catalogue, Gadget};
use bisectlab::oracle::PAIR_CAP;
use bisectlab::Graph;

pub const RANDOM_GRAPHS: u64 = 20;

/// The fixed corpus: C8, C9, the 2-subdivisions of K4 and Petersen,
/// Tutte-Coxeter, and 20 random {C4,C6}-free graphs whose parity fix exists
/// (the first ten small enough for the exact bisection oracle).
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("C8".to_string(), generators::cycle(8).unwrap()),
        ("C9".to_string(), generators::cycle(9).unwrap()),
        (
            "S(K4)".to_string(),
            generators::two_subdivision(&generators::complete(4)),
        ),
        (
            "S(Petersen)".to_string(),
            generators::two_subdivision(&generators::petersen()),
        ),
        ("Tutte-Coxeter".to_string(), generators::tutte_coxeter()),
    ];
    let mut seed = 0;
    let mut found = 0;
    while found < RANDOM_GRAPHS {
        let n = if found < RANDOM_GRAPHS / 2 { 18 } else { 36 };
        if let Ok(g) = generators::random_free_graph(n, 3 * n / 2, seed) {
            if g.parity_augment().is_ok() {
                out.push((format!("random({n},{},{seed})", 3 * n / 2), g));
                found += 1;
            }
        }
        seed += 1;
    }
    out
}

pub fn case_of(g: &Gadget) -> Option<Case> {
    let sp = special_path(&g.graph, &g.qpm, g.edge).ok()?;
    CaseConfig::from_k(&sp.k).ok().map(|c| c.case)
}

/// Every gadget within the pair cap, relabelled by seed 1.
pub fn all_gadgets() -> Vec<Gadget> {
    gadget_catalogue(PAIR_CAP, 2, 1)
}

/// An evenly spread selection of up to `per_case` gadgets from each case.
pub fn gadget_suite(all: &[Gadget], per_case: usize) -> Vec<Gadget> {
    let mut out = Vec::new();
    for case in [Case::One, Case::Two, Case::Three, Case::FourA, Case::FourB] {
        let of_case: Vec<&Gadget> = all.iter().filter(|g| case_of(g) == Some(case)).collect();
        let step = (of_case.len() / per_case).max(1);
        out.extend(of_case.iter().step_by(step).take(per_case).map(|g| (*g).clone()));
    }
    out
}
