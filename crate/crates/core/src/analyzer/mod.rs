//! Structural analysis of a graph under a quasi-perfect matching.

pub mod bounds;
pub mod closed_form;
pub mod partition;
pub mod special_path;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::matching::{PairTag, QuasiPerfectMatching};
use closed_form::{cut_probability_closed_form, pij_enumerated, CaseConfig, Counts};
use partition::{edge_partition, OverfullPairs, PartitionSummary};
use special_path::{special_path, KVector, SpecialPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzerError {
    #[error(transparent)]
    Overfull(#[from] OverfullPairs),
    #[error("edge {0}-{1} is not the unique edge between its pairs")]
    NotE1(Vertex, Vertex),
    #[error("neither endpoint of {0}-{1} lies in an M1 pair")]
    NoMatchedEnd(Vertex, Vertex),
    #[error("counts {1:?} out of range for {0:?}")]
    CountsOutOfRange(KVector, Counts),
    #[error("conditioning ({0}, {1}) is not a pair of bits")]
    BadConditioning(u8, u8),
    #[error("k vector {0:?} matches no tabled case")]
    Untabled(KVector),
    #[error("path neighbourhood has unclassified dependencies: {0:?}")]
    Unclassified(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSummary {
    pub edge: (Vertex, Vertex),
    pub k: KVector,
    pub s1: usize,
    pub s2: usize,
    pub case: Option<u8>,
    /// Exact cut probability as a reduced fraction, when the neighbourhood is
    /// fully classified.
    pub p_cut: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: &'static str,
    pub edge: Option<(Vertex, Vertex)>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzerReport {
    pub edge_partition_summary: PartitionSummary,
    pub special_paths: Vec<PathSummary>,
    pub violations: Vec<Finding>,
}

impl AnalyzerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn summarize(sp: &SpecialPath) -> PathSummary {
    let case = CaseConfig::from_k(&sp.k).ok().map(|c| c.case.number());
    let p_cut = if !sp.is_classified() {
        None
    } else if case.is_some() {
        cut_probability_closed_form(sp).ok()
    } else {
        pij_enumerated(sp).ok().map(|p| p.cut_probability())
    };
    PathSummary {
        edge: sp.edge(),
        k: sp.k,
        s1: sp.s1,
        s2: sp.s2,
        case,
        p_cut: p_cut.map(|r| r.to_string()),
    }
}

fn pair_witness(q: &QuasiPerfectMatching, x: Vertex) -> String {
    let p = q.pair(q.pair_index(x));
    match (p.tag, p.witness) {
        (PairTag::M2, Some(z)) => format!("{}{} in M2 via {z}", p.u, p.v),
        (tag, _) => format!("{}{} in {tag:?}", p.u, p.v),
    }
}

/// Partition, every special path, and every structural finding.
pub fn analyze(g: &Graph, q: &QuasiPerfectMatching) -> Result<AnalyzerReport, AnalyzerError> {
    let part = edge_partition(g, q)?;
    let mut violations = Vec::new();
    if part.e2.len() > g.n() {
        violations.push(Finding {
            kind: "structural",
            edge: None,
            detail: format!("|E2| = {} exceeds n = {}", part.e2.len(), g.n()),
        });
    }
    let k_sum: usize = part.pair_e2.iter().sum();
    if k_sum != 2 * part.e2.len() {
        violations.push(Finding {
            kind: "structural",
            edge: None,
            detail: format!("per-pair E2 counts sum to {k_sum}, expected {}", 2 * part.e2.len()),
        });
    }

    let mut special_paths = Vec::with_capacity(part.e1.len());
    for &edge in &part.e1 {
        let sp = special_path(g, q, edge)?;
        for f in &sp.constraint_failures {
            violations.push(Finding {
                kind: "restart_surrogate_miss",
                edge: Some(sp.edge()),
                detail: format!(
                    "rule {}: {}; pairs {} and {}",
                    f.rule,
                    f.detail,
                    pair_witness(q, sp.u),
                    pair_witness(q, sp.v)
                ),
            });
        }
        if !sp.degree_bound_holds {
            violations.push(Finding {
                kind: "structural",
                edge: Some(sp.edge()),
                detail: format!("degree sums below s + k total for s1 = {}, s2 = {}", sp.s1, sp.s2),
            });
        }
        special_paths.push(summarize(&sp));
    }
    Ok(AnalyzerReport {
        edge_partition_summary: part.summary(),
        special_paths,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::matching::QpmPair;

    #[test]
    fn p4_report() {
        let g = generators::path(4);
        let q = QuasiPerfectMatching::new(
            4,
            vec![QpmPair::new(0, 1, PairTag::M1), QpmPair::new(2, 3, PairTag::M1)],
        )
        .unwrap();
        let r = analyze(&g, &q).unwrap();
        assert!(r.passed());
        assert_eq!(r.special_paths.len(), 1);
        assert_eq!(r.special_paths[0].case, Some(4));
        assert_eq!(r.special_paths[0].p_cut.as_deref(), Some("3/4"));
    }
}
