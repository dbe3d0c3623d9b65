//! The special path `u′ u v v′` around an E₁ edge `uv`: trimmed
//! neighbourhoods `S(x)`, the vertex types that correlate the stability of the
//! two pairs, their counts `k`, and the free sizes `s1`, `s2`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::partition::edge_partition;
use super::AnalyzerError;
use crate::bisection::Labeling;
use crate::graph::{Graph, Vertex};
use crate::matching::{PairTag, QuasiPerfectMatching};

/// Type counts. `k1 = k11 + k12 + k13` and `k2 = k21 + k22 + k23` split the
/// pair types by the tag of the pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
pub struct KVector {
    pub k11: usize,
    pub k12: usize,
    pub k13: usize,
    pub k21: usize,
    pub k22: usize,
    pub k23: usize,
    pub k3: usize,
    pub k4: usize,
    pub k5: usize,
    pub k6: usize,
}

impl KVector {
    pub fn k1(&self) -> usize {
        self.k11 + self.k12 + self.k13
    }

    pub fn k2(&self) -> usize {
        self.k21 + self.k22 + self.k23
    }

    /// `[k1, k2, k3, k4, k5, k6]`.
    pub fn ks(&self) -> [usize; 6] {
        [self.k1(), self.k2(), self.k3, self.k4, self.k5, self.k6]
    }

    pub fn total(&self) -> usize {
        self.ks().iter().sum()
    }

    /// `κ = k1 + k2 + k3 - k4`, which selects the case.
    pub fn kappa(&self) -> i64 {
        (self.k1() + self.k2() + self.k3) as i64 - self.k4 as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintFailure {
    pub rule: &'static str,
    pub detail: String,
}

/// Which structural constraint on `k` fail, given whether `vv′` is a graph
/// edge of `M1`.
pub fn check_k_constraints(k: &KVector, v_pair_in_m1: bool) -> Vec<ConstraintFailure> {
    let mut out = Vec::new();
    let mut fail = |rule, detail: String| out.push(ConstraintFailure { rule, detail });
    if k.k12 + k.k13 + k.k22 != 0 {
        fail("I", format!("k12 = {}, k13 = {}, k22 = {}", k.k12, k.k13, k.k22));
    }
    let bounded = [
        ("k11", k.k11),
        ("k21", k.k21),
        ("k23", k.k23),
        ("k3", k.k3),
        ("k4", k.k4),
        ("k5", k.k5),
    ];
    for (name, value) in bounded {
        if value > 1 {
            fail("II", format!("{name} = {value}"));
        }
    }
    for (a, b, x, y) in [
        ("k11", "k23", k.k11, k.k23),
        ("k11", "k4", k.k11, k.k4),
        ("k21", "k3", k.k21, k.k3),
    ] {
        if x * y != 0 {
            fail("III", format!("{a} * {b} = {}", x * y));
        }
    }
    if v_pair_in_m1 {
        for (a, b, x, y) in [("k3", "k4", k.k3, k.k4), ("k21", "k4", k.k21, k.k4)] {
            if x * y != 0 {
                fail("IV", format!("{a} * {b} = {} with vv' in M1", x * y));
            }
        }
    }
    if !(-1..=2).contains(&k.kappa()) {
        fail("V", format!("k1 + k2 + k3 - k4 = {}", k.kappa()));
    }
    out
}

/// `S(x)`: `N(x)` without the partner `x′`, without common neighbours of
/// `x` and `x′`, and without any pair lying entirely inside `N(x)`.
pub fn trimmed_neighborhood(g: &Graph, q: &QuasiPerfectMatching, x: Vertex) -> Vec<Vertex> {
    let xp = q.partner(x);
    g.neighbors(x)
        .iter()
        .copied()
        .filter(|&w| w != xp && !g.has_edge(w, xp))
        .filter(|&w| !g.has_edge(x, q.partner(w)))
        .collect()
}

/// `σ` of pair `i` evaluated over the trimmed neighbourhoods only.
pub fn trimmed_sigma(g: &Graph, q: &QuasiPerfectMatching, l: &Labeling, i: usize) -> i64 {
    let p = q.pair(i);
    [p.u, p.v]
        .into_iter()
        .map(|x| {
            trimmed_neighborhood(g, q, x)
                .into_iter()
                .map(|w| if l.h(w) != l.h(x) { 1 } else { -1 })
                .sum::<i64>()
        })
        .sum()
}

/// Vertices of the path neighbourhood by type. Pairs are stored with the
/// member adjacent to the `u`-side first: `(x, x′)`, `(y, y′)`, `(z, z′)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathTypes {
    /// `x ∈ S(u)`, `x′ ∈ S(v′)`.
    pub s1: Vec<(Vertex, Vertex, PairTag)>,
    /// `y ∈ S(v)`, `y′ ∈ S(u′)`.
    pub s2: Vec<(Vertex, Vertex, PairTag)>,
    /// Common to `S(u)` and `S(v)`.
    pub s3: Vec<Vertex>,
    /// Common to `S(u′)` and `S(v′)`.
    pub s4: Vec<Vertex>,
    /// Common to `S(u)` and `S(v′)`.
    pub s5: Vec<Vertex>,
    /// `z ∈ S(v)`, `z′ ∈ S(u)`.
    pub s6: Vec<(Vertex, Vertex, PairTag)>,
    /// Dependencies outside the seven types; the closed form does not apply.
    pub unclassified: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialPath {
    pub u_prime: Vertex,
    pub u: Vertex,
    pub v: Vertex,
    pub v_prime: Vertex,
    /// Whether `u` and `v` were exchanged relative to the requested edge.
    pub swapped: bool,
    pub v_pair_in_m1: bool,
    pub s_sets: PathSets,
    pub t_sets: PathSets,
    pub types: PathTypes,
    pub k: KVector,
    pub s1: usize,
    pub s2: usize,
    pub constraint_failures: Vec<ConstraintFailure>,
    /// `d(u) + d(u′) ≥ s1 + Σk` and the same on the `v` side.
    pub degree_bound_holds: bool,
}

/// One set per path vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathSets {
    pub u_prime: Vec<Vertex>,
    pub u: Vec<Vertex>,
    pub v: Vec<Vertex>,
    pub v_prime: Vec<Vertex>,
}

impl PathSets {
    fn len_pair(&self) -> (usize, usize) {
        (self.u.len() + self.u_prime.len(), self.v.len() + self.v_prime.len())
    }
}

const IN_UP: u8 = 1;
const IN_U: u8 = 2;
const IN_V: u8 = 4;
const IN_VP: u8 = 8;

impl SpecialPath {
    pub fn is_classified(&self) -> bool {
        self.types.unclassified.is_empty()
    }

    pub fn edge(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// Each free binary choice of the labels in the path neighbourhood, as
    /// `(vertex, partner-or-none)`; `u` and `v` are excluded.
    fn degrees_of_freedom(&self) -> Vec<(Vertex, Option<Vertex>)> {
        let t = &self.types;
        let pairs = t.s1.iter().chain(&t.s2).chain(&t.s6).map(|&(a, b, _)| (a, Some(b)));
        let singles = t.s3.iter().chain(&t.s4).chain(&t.s5).map(|&a| (a, None));
        pairs.chain(singles).collect()
    }

    /// `t(u, u′)` and `t(v, v′)` for labels `h`: same-side minus
    /// opposite-side members of `T(x)` summed over the pair.
    pub fn t_values(&self, h: &BTreeMap<Vertex, u8>) -> (i64, i64) {
        let t_of = |x: Vertex, set: &[Vertex]| -> i64 { set.iter().map(|w| if h[w] == h[&x] { 1 } else { -1 }).sum() };
        let t = &self.t_sets;
        (
            t_of(self.u, &t.u) + t_of(self.u_prime, &t.u_prime),
            t_of(self.v, &t.v) + t_of(self.v_prime, &t.v_prime),
        )
    }

    /// Every labelling of the path neighbourhood with `h(u) = i`,
    /// `h(v) = j`, pairs split; `2^Σk` maps in all.
    pub fn neighbourhood_labelings(&self, i: u8, j: u8) -> Vec<BTreeMap<Vertex, u8>> {
        let dof = self.degrees_of_freedom();
        (0u64..1 << dof.len())
            .map(|bits| {
                let mut h = BTreeMap::from([(self.u, i), (self.u_prime, 1 - i), (self.v, j), (self.v_prime, 1 - j)]);
                for (idx, &(a, partner)) in dof.iter().enumerate() {
                    let bit = ((bits >> idx) & 1) as u8;
                    h.insert(a, bit);
                    if let Some(b) = partner {
                        h.insert(b, 1 - bit);
                    }
                }
                h
            })
            .collect()
    }
}

fn classify(
    g: &Graph,
    q: &QuasiPerfectMatching,
    (u_prime, u, v, v_prime): (Vertex, Vertex, Vertex, Vertex),
) -> (PathSets, PathTypes) {
    let sets = PathSets {
        u_prime: trimmed_neighborhood(g, q, u_prime),
        u: trimmed_neighborhood(g, q, u),
        v: trimmed_neighborhood(g, q, v),
        v_prime: trimmed_neighborhood(g, q, v_prime),
    };
    let mut mask: BTreeMap<Vertex, u8> = BTreeMap::new();
    for (set, bit) in [
        (&sets.u_prime, IN_UP),
        (&sets.u, IN_U),
        (&sets.v, IN_V),
        (&sets.v_prime, IN_VP),
    ] {
        for &w in set {
            *mask.entry(w).or_default() |= bit;
        }
    }
    let m = |w: Vertex| mask.get(&w).copied().unwrap_or(0);

    let mut types = PathTypes::default();
    let path = [u_prime, u, v, v_prime];
    for (&w, &bits) in &mask {
        if path.contains(&w) {
            let expected = (w == v && bits == IN_U) || (w == u && bits == IN_V);
            if !expected {
                types
                    .unclassified
                    .push(format!("path vertex {w} in S-mask {bits:#06b}"));
            }
            continue;
        }
        let wp = q.partner(w);
        let pm = m(wp);
        let tag = q.tag_of(w);
        match (bits, pm) {
            (b, 0) if b == IN_U | IN_V => types.s3.push(w),
            (b, 0) if b == IN_UP | IN_VP => types.s4.push(w),
            (b, 0) if b == IN_U | IN_VP => types.s5.push(w),
            (IN_U, IN_VP) => types.s1.push((w, wp, tag)),
            (IN_V, IN_UP) => types.s2.push((w, wp, tag)),
            (IN_V, IN_U) => types.s6.push((w, wp, tag)),
            // counted from the partner's side
            (IN_VP, IN_U) | (IN_UP, IN_V) | (IN_U, IN_V) => {}
            (IN_UP | IN_U | IN_V | IN_VP, 0) => {}
            _ => types.unclassified.push(format!(
                "vertex {w} (S-mask {bits:#06b}) with partner {wp} (S-mask {pm:#06b})"
            )),
        }
    }
    (sets, types)
}

fn count(types: &PathTypes) -> KVector {
    let by_tag = |list: &[(Vertex, Vertex, PairTag)], tag| list.iter().filter(|p| p.2 == tag).count();
    KVector {
        k11: by_tag(&types.s1, PairTag::M1),
        k12: by_tag(&types.s1, PairTag::M2),
        k13: by_tag(&types.s1, PairTag::M3),
        k21: by_tag(&types.s2, PairTag::M1),
        k22: by_tag(&types.s2, PairTag::M2),
        k23: by_tag(&types.s2, PairTag::M3),
        k3: types.s3.len(),
        k4: types.s4.len(),
        k5: types.s5.len(),
        k6: types.s6.len(),
    }
}

fn build(g: &Graph, q: &QuasiPerfectMatching, u: Vertex, v: Vertex, swapped: bool) -> SpecialPath {
    let (u_prime, v_prime) = (q.partner(u), q.partner(v));
    let (s_sets, types) = classify(g, q, (u_prime, u, v, v_prime));
    let k = count(&types);

    let mut in_sp: std::collections::BTreeSet<Vertex> = [u, v].into();
    for &(a, b, _) in types.s1.iter().chain(&types.s2).chain(&types.s6) {
        in_sp.extend([a, b]);
    }
    in_sp.extend(types.s3.iter().chain(&types.s4).chain(&types.s5));
    let restrict = |set: &[Vertex]| set.iter().copied().filter(|w| in_sp.contains(w)).collect();
    let t_sets = PathSets {
        u_prime: restrict(&s_sets.u_prime),
        u: restrict(&s_sets.u),
        v: restrict(&s_sets.v),
        v_prime: restrict(&s_sets.v_prime),
    };
    let (su, sv) = s_sets.len_pair();
    let (tu, tv) = t_sets.len_pair();
    let (s1, s2) = (su - tu, sv - tv);
    let v_pair_in_m1 = q.tag_of(v) == PairTag::M1;
    let degree_bound_holds =
        g.degree(u) + g.degree(u_prime) >= s1 + k.total() && g.degree(v) + g.degree(v_prime) >= s2 + k.total();
    SpecialPath {
        u_prime,
        u,
        v,
        v_prime,
        swapped,
        v_pair_in_m1,
        constraint_failures: check_k_constraints(&k, v_pair_in_m1),
        s_sets,
        t_sets,
        types,
        k,
        s1,
        s2,
        degree_bound_holds,
    }
}

/// Analyzes the special path of the E₁ edge `ab`. The endpoint whose pair is
/// in `M1` becomes `u`; when both are, the orientation with `k12 + k13 = 0`
/// is preferred.
pub fn special_path(
    g: &Graph,
    q: &QuasiPerfectMatching,
    (a, b): (Vertex, Vertex),
) -> Result<SpecialPath, AnalyzerError> {
    let part = edge_partition(g, q)?;
    if !part.is_e1(a, b) {
        return Err(AnalyzerError::NotE1(a, b));
    }
    let (u, v, swapped) = match (q.tag_of(a), q.tag_of(b)) {
        (PairTag::M1, _) => (a, b, false),
        (_, PairTag::M1) => (b, a, true),
        _ => return Err(AnalyzerError::NoMatchedEnd(a, b)),
    };
    let sp = build(g, q, u, v, swapped);
    if sp.v_pair_in_m1 && sp.k.k12 + sp.k.k13 > 0 {
        let flipped = build(g, q, v, u, !swapped);
        if flipped.k.k12 + flipped.k.k13 == 0 {
            return Ok(flipped);
        }
    }
    Ok(sp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisection::{sigma, stage1};
    use crate::generators;
    use crate::matching::{quasi_perfect_matching, QpmPair};

    fn m1(n: usize, list: &[(Vertex, Vertex)]) -> QuasiPerfectMatching {
        let pairs = list.iter().map(|&(a, b)| QpmPair::new(a, b, PairTag::M1)).collect();
        QuasiPerfectMatching::new(n, pairs).unwrap()
    }

    #[test]
    fn p4_has_no_types() {
        let g = generators::path(4);
        let q = m1(4, &[(0, 1), (2, 3)]);
        let sp = special_path(&g, &q, (1, 2)).unwrap();
        assert_eq!((sp.u_prime, sp.u, sp.v, sp.v_prime), (0, 1, 2, 3));
        assert_eq!(sp.k, KVector::default());
        assert_eq!((sp.s1, sp.s2), (0, 0));
        assert!(sp.is_classified());
        assert!(sp.constraint_failures.is_empty());
        assert_eq!(sp.t_sets.u, vec![2]);
        assert_eq!(sp.t_sets.v, vec![1]);
    }

    #[test]
    fn common_neighbour_is_type_three() {
        // u'=0 u=1 v=2 v'=3, p=4 with pendant 5
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4), (4, 5)]).unwrap();
        let q = m1(6, &[(0, 1), (2, 3), (4, 5)]);
        let sp = special_path(&g, &q, (1, 2)).unwrap();
        assert_eq!(sp.k.k3, 1);
        assert_eq!(sp.types.s3, vec![4]);
        assert_eq!(sp.k.kappa(), 1);
    }

    #[test]
    fn cross_pair_is_type_one() {
        // x=4 adjacent to u, x'=5 adjacent to v'
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 3)]).unwrap();
        let q = m1(6, &[(0, 1), (2, 3), (4, 5)]);
        let sp = special_path(&g, &q, (1, 2)).unwrap();
        assert_eq!(sp.k.k1(), 1);
        assert_eq!(sp.k.k11, 1);
        assert_eq!(sp.types.s1, vec![(4, 5, PairTag::M1)]);
        // asking from the other end gives the mirrored view
        let sp = special_path(&g, &q, (2, 1)).unwrap();
        assert_eq!(sp.k.k21, 1);
    }

    #[test]
    fn rejects_non_e1_edges() {
        let g = Graph::new(4, &[(0, 1), (2, 3), (0, 2), (1, 2)]).unwrap();
        let q = m1(4, &[(0, 1), (2, 3)]);
        assert_eq!(special_path(&g, &q, (0, 2)).unwrap_err(), AnalyzerError::NotE1(0, 2));
    }

    #[test]
    fn constraint_rules() {
        let ok = KVector {
            k4: 1,
            k5: 1,
            ..KVector::default()
        };
        assert!(check_k_constraints(&ok, false).is_empty());
        let bad = KVector {
            k11: 1,
            k4: 1,
            ..KVector::default()
        };
        let rules: Vec<_> = check_k_constraints(&bad, true).iter().map(|f| f.rule).collect();
        assert_eq!(rules, vec!["III"]);
        let bad = KVector {
            k3: 1,
            k4: 1,
            k12: 1,
            ..KVector::default()
        };
        let rules: Vec<_> = check_k_constraints(&bad, true).iter().map(|f| f.rule).collect();
        assert_eq!(rules, vec!["I", "IV"]);
        let far = KVector {
            k21: 1,
            k23: 1,
            k3: 1,
            ..KVector::default()
        };
        assert!(check_k_constraints(&far, false).iter().any(|f| f.rule == "V"));
    }

    #[test]
    fn trimming_is_sigma_neutral_on_random_graphs() {
        let mut checked = 0;
        for seed in 0..100 {
            let Ok(g) = generators::random_free_graph(16, 24, seed) else {
                continue;
            };
            let Ok(g) = g.parity_augment() else { continue };
            let q = quasi_perfect_matching(&g, seed, 4).unwrap();
            for run in 0..4 {
                let l = stage1(&q, seed, run);
                for i in 0..q.num_pairs() {
                    assert_eq!(sigma(&g, &q, &l, i).unwrap(), trimmed_sigma(&g, &q, &l, i));
                }
            }
            checked += 1;
        }
        assert!(checked >= 50, "{checked}");
    }
}
