//! Corpus experiments: configuration, per-graph runs and report emission.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analyzer::bounds::{default_precision, hou_yan_bound, shearer_bisection_bound, theorem2_bound, Interval};
use crate::analyzer::special_path::KVector;
use crate::analyzer::{analyze, AnalyzerReport};
use crate::bisection::{audit_run, run_bisection, BisectionParams, RunAudit};
use crate::generators::{self, gadget_for_config, GadgetRequest, GenerateError};
use crate::graph::Graph;
use crate::io::{parse_graph, ParseError};
use crate::oracle::{max_bisection_exact, BISECTION_CAP};
use crate::tail::{
    verify_lemma_appendix, verify_lemma_diff_identity, verify_lemma_sym_a, verify_lemma_sym_b, GridReport, LemmaGrid,
    Rational,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read config {path}: {source}")]
    ConfigIo { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    ConfigJson(#[from] serde_json::Error),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("unknown generator spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

/// A named generator invocation, written `family:arg:arg` on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Petersen,
    TutteCoxeter,
    TwoSubdivision {
        of: Box<GeneratorSpec>,
    },
    Random {
        n: usize,
        m: usize,
        seed: u64,
    },
    Gadget {
        k: KVector,
        #[serde(default)]
        s1: usize,
        #[serde(default)]
        s2: usize,
        #[serde(default)]
        complete_min_degree: bool,
        #[serde(default)]
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph, GenerateError> {
        Ok(match self {
            GeneratorSpec::Cycle { n } => generators::cycle(*n)?,
            GeneratorSpec::Path { n } => generators::path(*n),
            GeneratorSpec::Complete { n } => generators::complete(*n),
            GeneratorSpec::Petersen => generators::petersen(),
            GeneratorSpec::TutteCoxeter => generators::tutte_coxeter(),
            GeneratorSpec::TwoSubdivision { of } => generators::two_subdivision(&of.build()?),
            GeneratorSpec::Random { n, m, seed } => generators::random_free_graph(*n, *m, *seed)?,
            GeneratorSpec::Gadget {
                k,
                s1,
                s2,
                complete_min_degree,
                seed,
            } => {
                let req = GadgetRequest {
                    k: *k,
                    s1: *s1,
                    s2: *s2,
                    complete_min_degree: *complete_min_degree,
                };
                gadget_for_config(&req, *seed)?.graph
            }
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GeneratorSpec::Path { n } => write!(f, "path:{n}"),
            GeneratorSpec::Complete { n } => write!(f, "complete:{n}"),
            GeneratorSpec::Petersen => write!(f, "petersen"),
            GeneratorSpec::TutteCoxeter => write!(f, "tutte-coxeter"),
            GeneratorSpec::TwoSubdivision { of } => write!(f, "subdivide:{of}"),
            GeneratorSpec::Random { n, m, seed } => write!(f, "random:{n}:{m}:{seed}"),
            GeneratorSpec::Gadget { k, s1, s2, seed, .. } => {
                let ks = [k.k11, k.k12, k.k13, k.k21, k.k22, k.k23, k.k3, k.k4, k.k5, k.k6];
                let ks: Vec<String> = ks.iter().map(ToString::to_string).collect();
                write!(f, "gadget:{}:{s1}:{s2}:{seed}", ks.join(","))
            }
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = HarnessError;

    /// `cycle:8`, `path:4`, `complete:4`, `petersen`, `tutte-coxeter`,
    /// `subdivide:<spec>`, `random:n:m:seed`, and
    /// `gadget:k11,k12,k13,k21,k22,k23,k3,k4,k5,k6:s1:s2:seed`.
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let bad = || HarnessError::BadSpec(s.to_string());
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("subdivide:") {
            return Ok(GeneratorSpec::TwoSubdivision {
                of: Box::new(rest.parse()?),
            });
        }
        let parts: Vec<&str> = s.split(':').collect();
        Ok(match parts.as_slice() {
            ["cycle", n] => GeneratorSpec::Cycle { n: num(n)? as usize },
            ["path", n] => GeneratorSpec::Path { n: num(n)? as usize },
            ["complete", n] => GeneratorSpec::Complete { n: num(n)? as usize },
            ["petersen"] => GeneratorSpec::Petersen,
            ["tutte-coxeter"] => GeneratorSpec::TutteCoxeter,
            ["random", n, m, seed] => GeneratorSpec::Random {
                n: num(n)? as usize,
                m: num(m)? as usize,
                seed: num(seed)?,
            },
            ["gadget", ks, s1, s2, seed] => {
                let v = ks
                    .split(',')
                    .map(|x| num(x).map(|x| x as usize))
                    .collect::<Result<Vec<_>, _>>()?;
                let [k11, k12, k13, k21, k22, k23, k3, k4, k5, k6] = v.as_slice().try_into().map_err(|_| bad())?;
                GeneratorSpec::Gadget {
                    k: KVector {
                        k11,
                        k12,
                        k13,
                        k21,
                        k22,
                        k23,
                        k3,
                        k4,
                        k5,
                        k6,
                    },
                    s1: num(s1)? as usize,
                    s2: num(s2)? as usize,
                    complete_min_degree: true,
                    seed: num(seed)?,
                }
            }
            _ => return Err(bad()),
        })
    }
}

/// A graph file or a generator spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CorpusEntry {
    File(PathBuf),
    Generator(GeneratorSpec),
}

impl CorpusEntry {
    pub fn id(&self) -> String {
        match self {
            CorpusEntry::File(p) => p.display().to_string(),
            CorpusEntry::Generator(g) => g.to_string(),
        }
    }

    pub fn load(&self, base: &Path) -> Result<Graph, HarnessError> {
        match self {
            CorpusEntry::File(p) => Ok(parse_graph(base.join(p))?),
            CorpusEntry::Generator(g) => Ok(g.build()?),
        }
    }
}

/// Bound parameters. None has a default: the constants are inputs, not facts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsConfig {
    /// `ξ` for `m/2 + ξ Σ √d`, as `p/q`.
    #[serde(default)]
    pub xi: Option<String>,
    /// `c` for `m/2 + c m^((2k+1)/(2k+2))`, as `p/q`.
    #[serde(default)]
    pub c: Option<String>,
    #[serde(default)]
    pub k: Option<u32>,
}

pub fn parse_rational(s: &str) -> Result<Rational, HarnessError> {
    Rational::from_str(s.trim()).map_err(|_| HarnessError::BadRational(s.to_string()))
}

fn default_restarts() -> usize {
    BisectionParams::default().restarts
}

fn default_qpm_restarts() -> usize {
    BisectionParams::default().qpm_restarts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub corpus: Vec<CorpusEntry>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_qpm_restarts")]
    pub qpm_restarts: usize,
    #[serde(default)]
    pub bounds: BoundsConfig,
    #[serde(default)]
    pub lemma_grids: Option<LemmaGrid>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields default")
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::ConfigIo {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    /// Set when the graph could not be run; the other fields are then empty.
    pub error: Option<String>,
    pub skipped: bool,
    pub free: bool,
    pub connected: bool,
    pub min_degree: usize,
    pub best_cut: Option<usize>,
    pub hou_yan_bound: Option<String>,
    /// Whether the Hou-Yan bound is claimed for this graph (connected,
    /// C4-free, minimum degree 2).
    pub hou_yan_applies: bool,
    pub best_meets_hou_yan: Option<bool>,
    pub exact_max_bisection: Option<usize>,
    pub shearer_bound: Option<Interval>,
    pub theorem2_bound: Option<Interval>,
    pub audit: Option<RunAudit>,
    pub analyzer: Option<AnalyzerReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSummary {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    pub passed: bool,
}

impl From<&GridReport> for LemmaSummary {
    fn from(r: &GridReport) -> Self {
        LemmaSummary {
            name: r.name.to_string(),
            checked: r.checked,
            violations: r.violations.len(),
            passed: r.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub restart_surrogate_misses: usize,
    pub algorithm_invariants: bool,
    pub hou_yan: bool,
    pub structural_counting: bool,
    pub lemma_grids: Option<bool>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub restarts: usize,
    pub qpm_restarts: usize,
    pub graphs: Vec<GraphReport>,
    pub lemmas: Vec<LemmaSummary>,
    pub summary: Summary,
}

pub const CSV_HEADER: &str = "graph_id,n,m,best_cut,hou_yan_bound,shearer_bound,passed";

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for g in &self.graphs {
            let status = if g.skipped {
                "skipped".to_string()
            } else {
                g.passed.to_string()
            };
            let cells = [
                csv_quote(&g.graph_id),
                g.n.to_string(),
                g.m.to_string(),
                g.best_cut.map(|c| c.to_string()).unwrap_or_default(),
                g.hou_yan_bound.clone().unwrap_or_default(),
                g.shearer_bound
                    .as_ref()
                    .map(|b| format!("{:.9}", b.midpoint()))
                    .unwrap_or_default(),
                status,
            ];
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.summary.all_passed
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Bounds {
    xi: Option<Rational>,
    c: Option<Rational>,
    k: Option<u32>,
}

fn run_graph(id: String, g: &Graph, cfg: &ExperimentConfig, bounds: &Bounds) -> GraphReport {
    let free = g.is_free(&[4, 6]);
    let mut r = GraphReport {
        graph_id: id,
        n: g.n(),
        m: g.m(),
        error: None,
        skipped: !free,
        free,
        connected: g.is_connected(),
        min_degree: g.min_degree(),
        best_cut: None,
        hou_yan_bound: None,
        hou_yan_applies: false,
        best_meets_hou_yan: None,
        exact_max_bisection: None,
        shearer_bound: None,
        theorem2_bound: None,
        audit: None,
        analyzer: None,
        passed: false,
    };
    if !free {
        return r;
    }
    let eps = default_precision();
    let hy = hou_yan_bound(g);
    r.hou_yan_bound = Some(hy.to_string());
    r.hou_yan_applies = r.connected && r.min_degree >= 2 && g.n() >= 2;
    r.shearer_bound = bounds.xi.as_ref().map(|xi| shearer_bisection_bound(g, xi, &eps));
    if let (Some(c), Some(k)) = (&bounds.c, bounds.k) {
        r.theorem2_bound = Some(theorem2_bound(g.m(), k, c, &eps));
    }
    if g.n() <= BISECTION_CAP {
        r.exact_max_bisection = max_bisection_exact(g, BISECTION_CAP).ok().map(|(s, _)| s);
    }

    let params = BisectionParams {
        restarts: cfg.restarts,
        seed: cfg.seed,
        qpm_restarts: cfg.qpm_restarts,
    };
    let run = match run_bisection(g, &params) {
        Ok(run) => run,
        Err(e) => {
            r.error = Some(e.to_string());
            return r;
        }
    };
    let best = run.best.cut_size;
    r.best_cut = Some(best);
    if r.hou_yan_applies {
        r.best_meets_hou_yan = Some(Rational::from_integer(best.into()) >= hy);
    }
    let audit = audit_run(&run.graph, &run.qpm, &run.best_run);
    match analyze(&run.graph, &run.qpm) {
        Ok(report) => r.analyzer = Some(report),
        Err(e) => r.error = Some(e.to_string()),
    }
    let structural_ok = r
        .analyzer
        .as_ref()
        .is_some_and(|a| a.violations.iter().all(|v| v.kind == "restart_surrogate_miss"));
    r.passed = audit.passed() && structural_ok && r.best_meets_hou_yan != Some(false) && r.error.is_none();
    r.audit = Some(audit);
    r
}

/// Runs every corpus entry and, when configured, the lemma grids. Entries
/// that fail to load are recorded and the run continues.
pub fn run_experiment(cfg: &ExperimentConfig, base: &Path) -> Result<ExperimentReport, HarnessError> {
    let parse = |s: &Option<String>| s.as_deref().map(parse_rational).transpose();
    let bounds = Bounds {
        xi: parse(&cfg.bounds.xi)?,
        c: parse(&cfg.bounds.c)?,
        k: cfg.bounds.k,
    };
    let graphs: Vec<GraphReport> = cfg
        .corpus
        .iter()
        .map(|entry| match entry.load(base) {
            Ok(g) => run_graph(entry.id(), &g, cfg, &bounds),
            Err(e) => GraphReport {
                graph_id: entry.id(),
                n: 0,
                m: 0,
                error: Some(e.to_string()),
                skipped: false,
                free: false,
                connected: false,
                min_degree: 0,
                best_cut: None,
                hou_yan_bound: None,
                hou_yan_applies: false,
                best_meets_hou_yan: None,
                exact_max_bisection: None,
                shearer_bound: None,
                theorem2_bound: None,
                audit: None,
                analyzer: None,
                passed: false,
            },
        })
        .collect();

    let lemmas: Vec<LemmaSummary> = match &cfg.lemma_grids {
        None => Vec::new(),
        Some(grid) => [
            verify_lemma_sym_a(grid),
            verify_lemma_sym_b(grid),
            verify_lemma_appendix(grid),
            verify_lemma_diff_identity(grid.s_max),
        ]
        .iter()
        .map(LemmaSummary::from)
        .collect(),
    };

    let ran: Vec<&GraphReport> = graphs.iter().filter(|g| !g.skipped).collect();
    let algorithm_invariants = ran.iter().all(|g| g.audit.as_ref().is_some_and(RunAudit::passed));
    let hou_yan = ran.iter().all(|g| g.best_meets_hou_yan != Some(false));
    let structural_counting = ran.iter().all(|g| {
        g.analyzer
            .as_ref()
            .is_some_and(|a| a.violations.iter().all(|v| v.kind == "restart_surrogate_miss"))
    });
    let restart_surrogate_misses = ran
        .iter()
        .filter_map(|g| g.analyzer.as_ref())
        .flat_map(|a| &a.violations)
        .filter(|v| v.kind == "restart_surrogate_miss")
        .count();
    let lemma_grids = (!lemmas.is_empty()).then(|| lemmas.iter().all(|l| l.passed));
    let passed = ran.iter().filter(|g| g.passed).count();
    let summary = Summary {
        graphs: graphs.len(),
        passed,
        failed: ran.len() - passed,
        skipped: graphs.len() - ran.len(),
        restart_surrogate_misses,
        algorithm_invariants,
        hou_yan,
        structural_counting,
        lemma_grids,
        all_passed: ran.len() == passed && lemma_grids != Some(false),
    };
    Ok(ExperimentReport {
        seed: cfg.seed,
        restarts: cfg.restarts,
        qpm_restarts: cfg.qpm_restarts,
        graphs,
        lemmas,
        summary,
    })
}
