//! Closed-form stability probabilities `P_ij` for the two pairs of a special
//! path, from the case tables, from the generic count formulas, and by
//! enumerating the labels of the path neighbourhood.

use num_traits::{One, Zero};
use serde::Serialize;

use super::special_path::{KVector, SpecialPath};
use super::AnalyzerError;
use crate::tail::{rat, Binomials, PhiTable, Rational};

/// How many members of each type carry the label counted by the formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
}

impl Counts {
    fn fits(&self, k: &KVector) -> bool {
        self.a <= k.k1() && self.b <= k.k2() && self.c <= k.k3 && self.d <= k.k4 && self.e <= k.k5 && self.f <= k.k6
    }

    /// Every count vector for `k`, with its multiplicity.
    fn all(k: &KVector, bin: &mut Binomials) -> Vec<(Counts, num_bigint::BigInt)> {
        let [k1, k2, k3, k4, k5, k6] = k.ks();
        let mut out = Vec::new();
        for a in 0..=k1 {
            for b in 0..=k2 {
                for c in 0..=k3 {
                    for d in 0..=k4 {
                        for e in 0..=k5 {
                            for f in 0..=k6 {
                                let w = [(k1, a), (k2, b), (k3, c), (k4, d), (k5, e), (k6, f)]
                                    .into_iter()
                                    .map(|(n, r)| bin.choose(n, r as i64))
                                    .product();
                                out.push((Counts { a, b, c, d, e, f }, w));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `(t1, t2)` given the counts and the conditioning `h(u) = i`, `h(v) = j`.
pub fn st_values(k: &KVector, n: &Counts, (i, j): (u8, u8)) -> Result<(i64, i64), AnalyzerError> {
    if !n.fits(k) {
        return Err(AnalyzerError::CountsOutOfRange(*k, *n));
    }
    let alpha = (n.a + n.b + n.c) as i64 - n.d as i64;
    let ef = n.e as i64 - n.f as i64;
    let k56 = k.k6 as i64 - k.k5 as i64;
    let kappa = k.kappa();
    let t1 = 2 * alpha + 2 * ef - kappa + k56 - 1;
    let t2 = -2 * alpha + 2 * ef + kappa + k56 - 1;
    Ok(match (i, j) {
        (0, 1) => (t1, t2),
        (0, 0) => (t1 + 2, -t2),
        (1, 0) => (-t1 - 2, -t2 - 2),
        (1, 1) => (-t1, t2 + 2),
        _ => return Err(AnalyzerError::BadConditioning(i, j)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    One,
    Two,
    Three,
    /// `k4 = 1`, `k1 = 0`, `k2 + k3 = 1`.
    FourA,
    /// `k1 = k2 = k3 = k4 = 0`.
    FourB,
}

impl Case {
    pub fn number(&self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
            Case::Three => 3,
            Case::FourA | Case::FourB => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseConfig {
    pub case: Case,
    pub k: KVector,
}

impl CaseConfig {
    pub fn from_k(k: &KVector) -> Result<CaseConfig, AnalyzerError> {
        let [k1, k2, k3, k4, _, _] = k.ks();
        let case = match (k.kappa(), k4) {
            (-1, 1) if k1 + k2 + k3 == 0 => Case::One,
            (1, 0) => Case::Two,
            (2, 0) => Case::Three,
            (0, 1) if k1 == 0 && k2 + k3 == 1 => Case::FourA,
            (0, 0) if k1 + k2 + k3 == 0 => Case::FourB,
            _ => return Err(AnalyzerError::Untabled(*k)),
        };
        Ok(CaseConfig { case, k: *k })
    }

    /// Base value of `t` for the given `e`, `f`.
    pub fn t_base(&self, e: usize, f: usize) -> i64 {
        let t = 2 * e as i64 - 2 * f as i64 - self.k.k5 as i64 + self.k.k6 as i64;
        match self.case {
            Case::One | Case::Two => t,
            _ => t - 1,
        }
    }

    /// The tabled `(t1, t2)` rows under `h(u) = 0`, `h(v) = 1`.
    pub fn rows(&self, t: i64) -> Vec<(i64, i64)> {
        match self.case {
            Case::One | Case::Two => vec![(t, t - 2), (t - 2, t)],
            Case::Three => vec![(t - 2, t + 2), (t, t), (t, t), (t + 2, t - 2)],
            Case::FourA => vec![(t, t), (t + 2, t - 2), (t - 2, t + 2), (t, t)],
            Case::FourB => vec![(t, t)],
        }
    }
}

/// `[P00, P01, P10, P11]`, where `P_ij` is the probability that both pairs are
/// stable given `h(u) = i`, `h(v) = j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pij(pub [Rational; 4]);

impl Pij {
    pub fn get(&self, i: u8, j: u8) -> &Rational {
        &self.0[(2 * i + j) as usize]
    }

    /// `p_uv`: both pairs stable and `u`, `v` on opposite sides.
    pub fn p(&self) -> Rational {
        (self.get(0, 1) + self.get(1, 0)) / rat(2, 1)
    }

    /// `q_uv`: both pairs stable and `u`, `v` on the same side.
    pub fn q(&self) -> Rational {
        (self.get(0, 0) + self.get(1, 1)) / rat(2, 1)
    }

    /// `1/2 + (p - q)/4`, the probability that `uv` is cut.
    pub fn cut_probability(&self) -> Rational {
        rat(1, 2) + (self.p() - self.q()) / rat(4, 1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.get(0, 1) == self.get(1, 0) && self.get(0, 0) == self.get(1, 1)
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.0.clone().map(|r| r.to_string())
    }
}

const CONDITIONS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn mirror((t1, t2): (i64, i64), (i, j): (u8, u8)) -> (i64, i64) {
    match (i, j) {
        (0, 1) => (t1, t2),
        (0, 0) => (t1 + 2, -t2),
        (1, 0) => (-t1 - 2, -t2 - 2),
        _ => (-t1, t2 + 2),
    }
}

/// `P_ij` from the case tables.
pub fn pij_closed_form(cfg: &CaseConfig, s1: usize, s2: usize) -> Pij {
    let mut bin = Binomials::default();
    let tab = PhiTable::new(s1, s2, &mut bin);
    let k = &cfg.k;
    let scale = Rational::new(One::one(), num_bigint::BigInt::one() << k.total());
    Pij(CONDITIONS.map(|ij| {
        let mut sum = Rational::zero();
        for e in 0..=k.k5 {
            for f in 0..=k.k6 {
                let w = Rational::from_integer(bin.choose(k.k5, e as i64) * bin.choose(k.k6, f as i64));
                let rows: Rational = cfg
                    .rows(cfg.t_base(e, f))
                    .into_iter()
                    .map(|row| {
                        let (t1, t2) = mirror(row, ij);
                        tab.phi(t1, t2)
                    })
                    .sum();
                sum += w * rows;
            }
        }
        sum * &scale
    }))
}

/// `P_ij` from the generic `t` formulas, summed over all count vectors.
/// Applies to any `k`, tabled or not.
pub fn pij_generic(k: &KVector, s1: usize, s2: usize) -> Pij {
    let mut bin = Binomials::default();
    let tab = PhiTable::new(s1, s2, &mut bin);
    let all = Counts::all(k, &mut bin);
    let scale = Rational::new(One::one(), num_bigint::BigInt::one() << k.total());
    Pij(CONDITIONS.map(|ij| {
        let sum: Rational = all
            .iter()
            .map(|(n, w)| {
                let (t1, t2) = st_values(k, n, ij).expect("counts enumerated within range");
                Rational::from_integer(w.clone()) * tab.phi(t1, t2)
            })
            .sum();
        sum * &scale
    }))
}

/// `P_ij` by enumerating every label assignment of the path neighbourhood
/// and measuring `t` on the actual `T` sets.
pub fn pij_enumerated(sp: &SpecialPath) -> Result<Pij, AnalyzerError> {
    if !sp.is_classified() {
        return Err(AnalyzerError::Unclassified(sp.types.unclassified.clone()));
    }
    let mut bin = Binomials::default();
    let tab = PhiTable::new(sp.s1, sp.s2, &mut bin);
    let scale = Rational::new(One::one(), num_bigint::BigInt::one() << sp.k.total());
    Ok(Pij(CONDITIONS.map(|(i, j)| {
        let sum: Rational = sp
            .neighbourhood_labelings(i, j)
            .iter()
            .map(|h| {
                let (t1, t2) = sp.t_values(h);
                tab.phi(t1, t2)
            })
            .sum();
        sum * &scale
    })))
}

/// Cut probability of the path's middle edge from the case tables.
pub fn cut_probability_closed_form(sp: &SpecialPath) -> Result<Rational, AnalyzerError> {
    if !sp.is_classified() {
        return Err(AnalyzerError::Unclassified(sp.types.unclassified.clone()));
    }
    let cfg = CaseConfig::from_k(&sp.k)?;
    Ok(pij_closed_form(&cfg, sp.s1, sp.s2).cut_probability())
}
