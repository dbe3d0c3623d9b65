//! Exhaustive optima for small graphs: the maximum bisection against the
//! m/2 + (n-1)/4 bound, and the best of the randomized algorithm.

use bisectlab::analyzer::bounds::hou_yan_bound;
use bisectlab::bisection::{run_bisection, BisectionParams};
use bisectlab::generators;
use bisectlab::oracle::{max_bisection_exact, BISECTION_CAP};
use bisectlab::tail::Rational;

fn main() {
    let params = BisectionParams::default();
    for seed in 0..8 {
        let Ok(g) = generators::random_free_graph(18, 30, seed) else {
            continue;
        };
        if !g.is_connected() {
            continue;
        }
        let (opt, l) = max_bisection_exact(&g, BISECTION_CAP).unwrap();
        let best = run_bisection(&g, &params).unwrap().best.cut_size;
        let hy = hou_yan_bound(&g);
        println!(
            "seed {seed}: n={:<2} m={:<2} exact={opt:<2} algorithm={best:<2} bound={:<5} holds={} sides={:?}",
            g.n(),
            g.m(),
            hy.to_string(),
            Rational::from_integer(opt.into()) >= hy,
            l.side_sizes()
        );
    }
}
