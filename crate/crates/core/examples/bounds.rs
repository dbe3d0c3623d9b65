//! Lower bounds on the maximum bisection evaluated as rational brackets, and
//! the degeneracy-ordering chain on 6-cycle-free graphs.

use bisectlab::analyzer::bounds::{
    default_precision, degeneracy_chain_check, hou_yan_bound, shearer_bisection_bound, theorem2_bound,
};
use bisectlab::generators;
use bisectlab::tail::rat;

fn main() {
    let eps = default_precision();
    let xi = rat(1, 32);
    let c = rat(1, 10);
    for (name, g) in [
        ("C8", generators::cycle(8).unwrap()),
        ("S(Petersen)", generators::two_subdivision(&generators::petersen())),
        ("Tutte-Coxeter", generators::tutte_coxeter()),
        ("random(60,90,3)", generators::random_free_graph(60, 90, 3).unwrap()),
    ] {
        let shearer = shearer_bisection_bound(&g, &xi, &eps);
        let t2 = theorem2_bound(g.m(), 3, &c, &eps);
        println!(
            "{name:<16} m={:<3} hou-yan={:<6} shearer(xi=1/32)={:.6} m/2+c m^(7/8) (c=1/10)={:.6}",
            g.m(),
            hou_yan_bound(&g).to_string(),
            shearer.midpoint(),
            t2.midpoint()
        );
        let chain = degeneracy_chain_check(&g, 3, &eps).unwrap();
        println!(
            "    sum sqrt d={:.4} >= sum sqrt d+={:.4} >= m/sqrt(D)={:.4} (D={}): {}",
            chain.sum_sqrt_degree.midpoint(),
            chain.sum_sqrt_back_degree.midpoint(),
            chain.edge_term.midpoint(),
            chain.d_cap,
            chain.holds()
        );
    }
    let c6 = generators::cycle(6).unwrap();
    println!(
        "C6 refused with cycle {:?}",
        degeneracy_chain_check(&c6, 3, &eps).unwrap_err()
    );
}
