//! One gadget's middle edge: exact enumeration over all stage-1 labellings,
//! the case-table closed form, the neighbourhood enumeration and a Monte
//! Carlo estimate.

use bisectlab::analyzer::closed_form::{cut_probability_closed_form, pij_enumerated};
use bisectlab::analyzer::special_path::{special_path, KVector};
use bisectlab::generators::{gadget_for_config, GadgetRequest};
use bisectlab::oracle::{cut_probability_exact, estimate_cut_probability, PAIR_CAP};

fn main() {
    let k = KVector {
        k21: 1,
        k6: 1,
        ..KVector::default()
    };
    let g = gadget_for_config(&GadgetRequest::new(k, 2, 1).completed(), 4).unwrap();
    let sp = special_path(&g.graph, &g.qpm, g.edge).unwrap();
    println!(
        "gadget n={} m={} pairs={} uv={:?}",
        g.graph.n(),
        g.graph.m(),
        g.qpm.num_pairs(),
        g.edge
    );
    println!("k={:?} s=({},{})", sp.k, sp.s1, sp.s2);

    let exact = cut_probability_exact(&g.graph, &g.qpm, g.edge, PAIR_CAP).unwrap();
    println!("exact        {}", exact.p_cut);
    println!("P_ij         {:?}", exact.pij.to_strings());
    println!(
        "1/2+(p-q)/4  {}  (p={}, q={})",
        exact.pij.cut_probability(),
        exact.p_uv(),
        exact.q_uv()
    );
    println!("closed form  {}", cut_probability_closed_form(&sp).unwrap());
    println!(
        "neighbourhood enumeration {}",
        pij_enumerated(&sp).unwrap().cut_probability()
    );

    let mc = estimate_cut_probability(&g.graph, &g.qpm, g.edge, 20_000, 7);
    println!(
        "monte carlo  {:.5} ± {:.5} over {} runs",
        mc.estimate, mc.std_error, mc.samples
    );
}
