//! Best-of-R runs of the two-stage algorithm, with the per-run audit and the
//! exact optimum for comparison.

use bisectlab::analyzer::bounds::hou_yan_bound;
use bisectlab::bisection::{audit_run, run_bisection, BisectionParams};
use bisectlab::generators;
use bisectlab::oracle::{max_bisection_exact, BISECTION_CAP};

fn main() {
    let params = BisectionParams {
        restarts: 200,
        seed: 42,
        qpm_restarts: 16,
    };
    let graphs = [
        ("C9", generators::cycle(9).unwrap()),
        ("S(K4)", generators::two_subdivision(&generators::complete(4))),
        ("Petersen", generators::petersen()),
        ("S(Petersen)", generators::two_subdivision(&generators::petersen())),
        ("Tutte-Coxeter", generators::tutte_coxeter()),
    ];
    for (name, g) in &graphs {
        let run = run_bisection(g, &params).unwrap();
        let audit = audit_run(&run.graph, &run.qpm, &run.best_run);
        let exact = (g.n() <= BISECTION_CAP).then(|| max_bisection_exact(g, BISECTION_CAP).unwrap().0);
        println!(
            "{name:<14} m={:<3} best={:<3} exact={:<5} hou-yan={:<6} active={} audit={}",
            g.m(),
            run.best.cut_size,
            exact.map_or("-".into(), |e| e.to_string()),
            hou_yan_bound(g).to_string(),
            run.best_run.active_pairs.len(),
            if audit.passed() { "ok" } else { "FAILED" }
        );
    }
    let g = &graphs[2].1;
    let run = run_bisection(g, &params).unwrap();
    println!("\n{}", serde_json::to_string_pretty(&run.best.to_json()).unwrap());
}
