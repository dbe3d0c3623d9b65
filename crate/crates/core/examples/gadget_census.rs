//! Builds every small gadget and prints its case, k vector and exact cut
//! probability from three independent computations.

use bisectlab::analyzer::closed_form::{cut_probability_closed_form, CaseConfig};
use bisectlab::analyzer::special_path::special_path;
use bisectlab::generators::gadget_catalogue;
use bisectlab::oracle::{cut_probability_exact, PAIR_CAP};

fn main() {
    let gadgets = gadget_catalogue(PAIR_CAP, 2, 1);
    let mut mismatches = 0;
    for g in &gadgets {
        let sp = special_path(&g.graph, &g.qpm, g.edge).expect("gadget edge is in E1");
        let case = CaseConfig::from_k(&sp.k)
            .map(|c| format!("{:?}", c.case))
            .unwrap_or("-".into());
        let exact = cut_probability_exact(&g.graph, &g.qpm, g.edge, PAIR_CAP).expect("under the cap");
        let closed = cut_probability_closed_form(&sp).ok();
        let identity = exact.pij.cut_probability();
        if identity != exact.p_cut || closed.as_ref().is_some_and(|c| *c != exact.p_cut) {
            mismatches += 1;
        }
        println!(
            "{case:>6} n={:>2} k={:?} s=({},{}) p_cut={}",
            g.graph.n(),
            sp.k.ks(),
            sp.s1,
            sp.s2,
            exact.p_cut
        );
    }
    println!("{} gadgets, {mismatches} mismatches", gadgets.len());
}
