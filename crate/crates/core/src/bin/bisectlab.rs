use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bisectlab::analyzer::analyze;
use bisectlab::analyzer::bounds::{
    default_precision, degeneracy_chain_check, hou_yan_bound, shearer_bisection_bound, theorem2_bound,
};
use bisectlab::analyzer::closed_form::{cut_probability_closed_form, pij_enumerated};
use bisectlab::analyzer::special_path::special_path;
use bisectlab::bisection::{audit_run, run_bisection, BisectionParams};
use bisectlab::generators::{gadget_for_config, GadgetRequest};
use bisectlab::harness::{parse_rational, run_experiment, ExperimentConfig, GeneratorSpec};
use bisectlab::io::{parse_graph, write_graph, write_graph_string};
use bisectlab::matching::{maximum_matching, quasi_perfect_matching, verify_qpm, QpmPair};
use bisectlab::oracle::{
    cut_probability_exact, estimate_cut_probability, max_bisection_exact, max_matching_exact, BISECTION_CAP,
    MATCHING_CAP, PAIR_CAP,
};
use bisectlab::tail::{
    verify_lemma_appendix, verify_lemma_diff_identity, verify_lemma_sym_a, verify_lemma_sym_b, LemmaGrid,
};
use bisectlab::{Graph, QuasiPerfectMatching, Rational};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "bisectlab",
    about = "Two-stage randomized bisection lab for {C4,C6}-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    restarts: usize,
    #[arg(long, global = true, default_value_t = 16)]
    qpm_restarts: usize,
    /// Constant for the sqrt-degree bound, as p/q.
    #[arg(long, global = true)]
    xi: Option<String>,
    /// Constant for the m^((2k+1)/(2k+2)) bound, as p/q.
    #[arg(long, global = true)]
    c: Option<String>,
    /// Half the forbidden even cycle length.
    #[arg(long, global = true)]
    k: Option<u32>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated graph, e.g. `cycle:8`, `subdivide:petersen`,
    /// `random:20:30:7`, `gadget:0,0,0,0,0,0,1,0,0,0:1:2:3`.
    Gen {
        spec: String,
        /// For gadgets, also write the pairing as JSON.
        #[arg(long)]
        qpm_out: Option<PathBuf>,
    },
    /// Forbidden cycles, degrees and the degeneracy chain.
    Check { graph: PathBuf },
    /// Best-of-restarts bisection with its invariant audit.
    Bisect { graph: PathBuf },
    /// Cut probability of one edge: exact, closed form, and sampled.
    Prob {
        graph: PathBuf,
        /// The edge as `u,v`.
        #[arg(long, value_parser = parse_edge)]
        edge: (usize, usize),
        #[arg(long)]
        qpm: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Edge partition, special paths and structural findings.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        qpm: Option<PathBuf>,
    },
    /// Exact tail-inequality grids.
    Lemmas {
        #[arg(long, default_value_t = 12)]
        t_max: i64,
        #[arg(long, default_value_t = 24)]
        s_max: usize,
    },
    /// Brute-force maximum bisection and matching.
    Oracle { graph: PathBuf },
    /// Run a JSON experiment config.
    Experiment { config: PathBuf },
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

fn emit(cli: &Cli, text: &str) -> Res<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(cli: &Cli, v: &Value) -> Res<()> {
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_pairing(cli: &Cli, g: &Graph, qpm: &Option<PathBuf>) -> Res<(Graph, QuasiPerfectMatching)> {
    match qpm {
        Some(path) => {
            let pairs: Vec<QpmPair> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            Ok((g.clone(), QuasiPerfectMatching::new(g.n(), pairs)?))
        }
        None => {
            let work = g.parity_augment()?;
            let q = quasi_perfect_matching(&work, cli.seed, cli.qpm_restarts)?;
            Ok((work, q))
        }
    }
}

fn gen(cli: &Cli, spec: &str, qpm_out: &Option<PathBuf>) -> Res<ExitCode> {
    let spec: GeneratorSpec = spec.parse()?;
    let graph = match (&spec, qpm_out) {
        (
            GeneratorSpec::Gadget {
                k,
                s1,
                s2,
                complete_min_degree,
                seed,
            },
            Some(path),
        ) => {
            let req = GadgetRequest {
                k: *k,
                s1: *s1,
                s2: *s2,
                complete_min_degree: *complete_min_degree,
            };
            let gadget = gadget_for_config(&req, *seed)?;
            std::fs::write(path, serde_json::to_string_pretty(&gadget.qpm.to_json())?)?;
            eprintln!("middle edge {},{}", gadget.edge.0, gadget.edge.1);
            gadget.graph
        }
        _ => spec.build()?,
    };
    match &cli.out {
        Some(path) => write_graph(&graph, path)?,
        None => print!("{}", write_graph_string(&graph)),
    }
    Ok(ExitCode::SUCCESS)
}

fn check(cli: &Cli, g: &Graph) -> Res<ExitCode> {
    let forbidden = g.forbidden_cycle(&[4, 6]);
    let k = cli.k.unwrap_or(3) as usize;
    let chain = degeneracy_chain_check(g, k, &default_precision());
    let v = json!({
        "n": g.n(),
        "m": g.m(),
        "free": forbidden.is_none(),
        "forbidden_cycle": forbidden,
        "connected": g.is_connected(),
        "min_degree": g.min_degree(),
        "degeneracy_chain": match &chain {
            Ok(r) => json!({"holds": r.holds(), "report": r}),
            Err(cycle) => json!({"holds": false, "cycle": cycle}),
        },
    });
    emit_json(cli, &v)?;
    Ok(status(forbidden.is_none() && chain.is_ok_and(|r| r.holds())))
}

fn bisect(cli: &Cli, g: &Graph) -> Res<ExitCode> {
    let params = BisectionParams {
        restarts: cli.restarts,
        seed: cli.seed,
        qpm_restarts: cli.qpm_restarts,
    };
    let run = run_bisection(g, &params)?;
    let audit = audit_run(&run.graph, &run.qpm, &run.best_run);
    let eps = default_precision();
    let xi = cli.xi.as_deref().map(parse_rational).transpose()?;
    let v = json!({
        "result": run.best.to_json(),
        "run": run.best_run.run,
        "audit": audit,
        "hou_yan_bound": hou_yan_bound(g).to_string(),
        "shearer_bound": xi.map(|xi| shearer_bisection_bound(g, &xi, &eps)),
        "pairs": run.qpm.to_json(),
    });
    emit_json(cli, &v)?;
    Ok(status(audit.passed()))
}

fn prob(cli: &Cli, g: &Graph, edge: (usize, usize), qpm: &Option<PathBuf>, samples: usize) -> Res<ExitCode> {
    let (work, q) = load_pairing(cli, g, qpm)?;
    let exact = cut_probability_exact(&work, &q, edge, PAIR_CAP)?;
    let sp = special_path(&work, &q, edge)?;
    let closed = cut_probability_closed_form(&sp).ok();
    let enumerated = pij_enumerated(&sp).ok().map(|p| p.cut_probability());
    let identity = exact.p_cut == exact.pij.cut_probability();
    let agrees = closed.as_ref().map_or(true, |c| *c == exact.p_cut);
    let mut v = json!({
        "edge": edge,
        "exact": exact.to_json(),
        "identity_holds": identity,
        "closed_form": closed.as_ref().map(Rational::to_string),
        "neighbourhood_enumeration": enumerated.as_ref().map(Rational::to_string),
        "k": sp.k,
        "s1": sp.s1,
        "s2": sp.s2,
    });
    if samples > 0 {
        v["monte_carlo"] = serde_json::to_value(estimate_cut_probability(&work, &q, edge, samples, cli.seed))?;
    }
    emit_json(cli, &v)?;
    Ok(status(identity && agrees))
}

fn lemmas(cli: &Cli, t_max: i64, s_max: usize) -> Res<ExitCode> {
    let grid = LemmaGrid { t_max, s_max };
    let reports = [
        verify_lemma_sym_a(&grid),
        verify_lemma_sym_b(&grid),
        verify_lemma_appendix(&grid),
        verify_lemma_diff_identity(s_max),
    ];
    emit_json(cli, &serde_json::to_value(&reports)?)?;
    Ok(status(reports.iter().all(|r| r.passed())))
}

fn oracle(cli: &Cli, g: &Graph) -> Res<ExitCode> {
    let (size, witness) = max_bisection_exact(g, BISECTION_CAP)?;
    let hy = hou_yan_bound(g);
    let applies = g.is_connected() && g.min_degree() >= 2 && g.is_free(&[4]);
    let meets = Rational::from_integer(size.into()) >= hy;
    let blossom = maximum_matching(g).len();
    let brute = max_matching_exact(g, MATCHING_CAP).ok();
    let c = cli.c.as_deref().map(parse_rational).transpose()?;
    let v = json!({
        "max_bisection": size,
        "sides": witness.sides(),
        "hou_yan_bound": hy.to_string(),
        "hou_yan_applies": applies,
        "meets_hou_yan": meets,
        "max_matching_blossom": blossom,
        "max_matching_exact": brute,
        "theorem2_bound": match (c, cli.k) {
            (Some(c), Some(k)) => Some(theorem2_bound(g.m(), k, &c, &default_precision())),
            _ => None,
        },
    });
    emit_json(cli, &v)?;
    Ok(status((!applies || meets) && brute.map_or(true, |b| b == blossom)))
}

fn experiment(cli: &Cli, config: &Path) -> Res<ExitCode> {
    let cfg = ExperimentConfig::load(config)?;
    let base = config.parent().unwrap_or(Path::new("."));
    let report = run_experiment(&cfg, base)?;
    match cli.format {
        Format::Json => emit_json(cli, &serde_json::to_value(&report)?)?,
        Format::Csv => emit(cli, &report.to_csv())?,
    }
    Ok(status(report.passed()))
}

fn run(cli: &Cli) -> Res<ExitCode> {
    if cli.format == Format::Csv && !matches!(cli.cmd, Cmd::Experiment { .. }) {
        return Err("--format csv is only available for `experiment`".into());
    }
    match &cli.cmd {
        Cmd::Gen { spec, qpm_out } => gen(cli, spec, qpm_out),
        Cmd::Check { graph } => check(cli, &parse_graph(graph)?),
        Cmd::Bisect { graph } => bisect(cli, &parse_graph(graph)?),
        Cmd::Prob {
            graph,
            edge,
            qpm,
            samples,
        } => prob(cli, &parse_graph(graph)?, *edge, qpm, *samples),
        Cmd::Analyze { graph, qpm } => {
            let g = parse_graph(graph)?;
            let (work, q) = load_pairing(cli, &g, qpm)?;
            let report = analyze(&work, &q)?;
            let audit = verify_qpm(&work, q.pairs());
            emit_json(
                cli,
                &json!({"report": report, "pairing_audit": audit, "pairs": q.to_json()}),
            )?;
            Ok(status(report.passed() && audit.passed()))
        }
        Cmd::Lemmas { t_max, s_max } => lemmas(cli, *t_max, *s_max),
        Cmd::Oracle { graph } => oracle(cli, &parse_graph(graph)?),
        Cmd::Experiment { config } => experiment(cli, config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
