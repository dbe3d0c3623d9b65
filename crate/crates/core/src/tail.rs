//! Exact binomial tails `B(N, r)`, the product `Φ(t1, t2)` and grid
//! verifiers for the tail inequalities used in the stability analysis.
//!
//! Everything here is exact rational arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error("B(N, r) needs N >= 0, got {0}")]
    NegativeCount(i64),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Pascal rows `C(N, 0..=N)` for `N <= max_n`, grown on demand.
#[derive(Debug, Clone)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Default for Binomials {
    fn default() -> Self {
        Binomials {
            rows: vec![vec![BigInt::one()]],
        }
    }
}

impl Binomials {
    pub fn new(max_n: usize) -> Self {
        let mut b = Binomials::default();
        b.grow(max_n);
        b
    }

    fn grow(&mut self, n: usize) {
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("row 0 exists");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            self.rows.push(row);
        }
    }

    /// `C(n, k)`, zero outside `0..=n`.
    pub fn choose(&mut self, n: usize, k: i64) -> BigInt {
        if k < 0 || k as usize > n {
            return BigInt::zero();
        }
        self.grow(n);
        self.rows[n][k as usize].clone()
    }

    /// `2^-n C(n, k)`.
    pub fn point(&mut self, n: usize, k: i64) -> Rational {
        Rational::new(self.choose(n, k), BigInt::one() << n)
    }

    /// `B(n, k) = 2^-n Σ_{i <= k} C(n, i)` for integer cutoff `k`.
    pub fn tail(&mut self, n: usize, k: i64) -> Rational {
        if k < 0 {
            return Rational::zero();
        }
        if k as usize >= n {
            return Rational::one();
        }
        self.grow(n);
        let sum: BigInt = self.rows[n][..=k as usize].iter().sum();
        Rational::new(sum, BigInt::one() << n)
    }
}

/// `B(N, r)`: the probability that at most `⌊r⌋` of `N` fair coins land heads.
pub fn btail(n: i64, r: &Rational) -> Result<Rational, TailError> {
    if n < 0 {
        return Err(TailError::NegativeCount(n));
    }
    let k = r.floor().to_integer();
    let k: i64 = k.clamp(BigInt::from(-1), BigInt::from(n)).try_into().expect("clamped");
    Ok(Binomials::default().tail(n as usize, k))
}

/// `f(x) = B(s, (s - x) / 2)` for one side.
fn side_tail(bin: &mut Binomials, s: usize, x: i64) -> Rational {
    bin.tail(s, (s as i64 - x).div_euclid(2))
}

/// `Φ(t1, t2) = B(s1, (s1 - t1)/2) · B(s2, (s2 - t2)/2)`.
pub fn phi(t1: i64, t2: i64, s1: usize, s2: usize) -> Rational {
    let mut bin = Binomials::default();
    side_tail(&mut bin, s1, t1) * side_tail(&mut bin, s2, t2)
}

/// `Φ` for fixed `(s1, s2)`, with `f1`, `f2` memoised over their support.
///
/// `f_i(x)` is 1 for `x <= -s_i` and 0 for `x > s_i`, so only `2 s_i + 1`
/// values are stored per side.
#[derive(Debug, Clone)]
pub struct PhiTable {
    s1: usize,
    s2: usize,
    f1: Vec<Rational>,
    f2: Vec<Rational>,
}

impl PhiTable {
    pub fn new(s1: usize, s2: usize, bin: &mut Binomials) -> Self {
        let side = |bin: &mut Binomials, s: usize| {
            (-(s as i64)..=s as i64)
                .map(|x| side_tail(bin, s, x))
                .collect::<Vec<_>>()
        };
        PhiTable {
            s1,
            s2,
            f1: side(bin, s1),
            f2: side(bin, s2),
        }
    }

    pub fn s(&self) -> (usize, usize) {
        (self.s1, self.s2)
    }

    fn lookup(values: &[Rational], s: usize, x: i64) -> Rational {
        let s = s as i64;
        if x < -s {
            Rational::one()
        } else if x > s {
            Rational::zero()
        } else {
            values[(x + s) as usize].clone()
        }
    }

    pub fn f1(&self, x: i64) -> Rational {
        Self::lookup(&self.f1, self.s1, x)
    }

    pub fn f2(&self, x: i64) -> Rational {
        Self::lookup(&self.f2, self.s2, x)
    }

    pub fn phi(&self, t1: i64, t2: i64) -> Rational {
        self.f1(t1) * self.f2(t2)
    }
}

/// A labelled grid point, serialized as a JSON object.
pub type Point = BTreeMap<&'static str, i64>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub part: &'static str,
    pub point: Point,
    pub lhs: String,
    pub rhs: String,
    /// `"<s1 parity><s2 parity><t parity>"` with `e`/`o`, when the point has a `t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub name: &'static str,
    pub bounds: BTreeMap<&'static str, (i64, i64)>,
    pub checked: usize,
    pub skipped: usize,
    /// Points checked per part, e.g. `"i"`, `"ii"`, `"symmetry"`.
    pub checked_by_part: BTreeMap<&'static str, usize>,
    pub violations: Vec<Violation>,
    /// Observed `[min, max]` of a reported ratio, as exact fractions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_band: Option<(String, String)>,
}

impl GridReport {
    fn new(name: &'static str, bounds: &[(&'static str, (i64, i64))]) -> Self {
        GridReport {
            name,
            bounds: bounds.iter().cloned().collect(),
            checked: 0,
            skipped: 0,
            checked_by_part: BTreeMap::new(),
            violations: Vec::new(),
            ratio_band: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_in(&self, part: &str) -> usize {
        self.violations.iter().filter(|v| v.part == part).count()
    }

    fn tally(&mut self, part: &'static str) {
        *self.checked_by_part.entry(part).or_default() += 1;
    }

    fn finish(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (a.part, &a.point).cmp(&(b.part, &b.point)));
        self
    }
}

/// Integer `t` in `[-t_max, t_max]`, `s1, s2` in `[0, s_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LemmaGrid {
    pub t_max: i64,
    pub s_max: usize,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        LemmaGrid { t_max: 12, s_max: 24 }
    }
}

impl LemmaGrid {
    fn bounds(&self) -> [(&'static str, (i64, i64)); 3] {
        let s = self.s_max as i64;
        [("t", (-self.t_max, self.t_max)), ("s1", (0, s)), ("s2", (0, s))]
    }

    fn tables(&self) -> Vec<PhiTable> {
        let mut bin = Binomials::new(self.s_max);
        (0..=self.s_max)
            .flat_map(|s1| (0..=self.s_max).map(move |s2| (s1, s2)))
            .map(|(s1, s2)| PhiTable::new(s1, s2, &mut bin))
            .collect()
    }
}

fn parity(s1: usize, s2: usize, t: i64) -> String {
    let p = |x: i64| if x.rem_euclid(2) == 0 { 'e' } else { 'o' };
    [p(s1 as i64), p(s2 as i64), p(t)].iter().collect()
}

fn tst_point(t: i64, s1: usize, s2: usize) -> Point {
    BTreeMap::from([("t", t), ("s1", s1 as i64), ("s2", s2 as i64)])
}

fn violation(part: &'static str, t: i64, tab: &PhiTable, lhs: &Rational, rhs: &Rational) -> Violation {
    let (s1, s2) = tab.s();
    Violation {
        part,
        point: tst_point(t, s1, s2),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        parity: Some(parity(s1, s2, t)),
        terms: Vec::new(),
    }
}

/// The two lower bounds shared by the symmetric-difference lemmas.
fn branch_rhs(tab: &PhiTable, t: i64) -> (&'static str, Rational) {
    if t >= 0 {
        ("i", tab.phi(-t, -t) - tab.phi(-t + 2, -t + 2))
    } else {
        ("ii", tab.phi(t, t) - tab.phi(t + 2, t + 2))
    }
}

/// `Φ(t,t) + Φ(-t-2,-t-2) - Φ(t+2,-t) - Φ(-t,t+2)`.
pub fn lambda_sym_a(tab: &PhiTable, t: i64) -> Rational {
    tab.phi(t, t) + tab.phi(-t - 2, -t - 2) - tab.phi(t + 2, -t) - tab.phi(-t, t + 2)
}

/// `Φ(t,t-2) + Φ(-t,-t-2) - Φ(t+2,-t+2) - Φ(-t+2,t+2)`.
pub fn lambda_sym_b(tab: &PhiTable, t: i64) -> Rational {
    tab.phi(t, t - 2) + tab.phi(-t, -t - 2) - tab.phi(t + 2, -t + 2) - tab.phi(-t + 2, t + 2)
}

/// `Φ(t-2,t) + Φ(-t-2,-t) - Φ(t,-t) - Φ(-t,t)`.
pub fn lambda_sym_b_iii(tab: &PhiTable, t: i64) -> Rational {
    tab.phi(t - 2, t) + tab.phi(-t - 2, -t) - tab.phi(t, -t) - tab.phi(-t, t)
}

/// The eight `(t1, t2, sign)` terms of the appendix quantity `Λ(t)`.
pub fn lambda8_terms(t: i64) -> [(i64, i64, i8); 8] {
    [
        (t - 2, t + 2, 1),
        (t + 2, t - 2, 1),
        (-t - 4, -t, 1),
        (-t, -t - 4, 1),
        (t, -t - 2, -1),
        (-t + 2, t + 4, -1),
        (-t - 2, t, -1),
        (t + 4, -t + 2, -1),
    ]
}

pub fn lambda8(tab: &PhiTable, t: i64) -> Rational {
    lambda8_terms(t)
        .iter()
        .map(|&(a, b, sign)| {
            let v = tab.phi(a, b);
            if sign > 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// Checks `Λ ≥ Φ(-t,-t) - Φ(-t+2,-t+2)` for `t ≥ 0` (part i) and
/// `Λ ≥ Φ(t,t) - Φ(t+2,t+2)` for `t < 0` (part ii), where
/// `Λ = Φ(t,t) + Φ(-t-2,-t-2) - Φ(t+2,-t) - Φ(-t,t+2)`.
pub fn verify_lemma_sym_a(grid: &LemmaGrid) -> GridReport {
    let mut report = GridReport::new("sym_a", &grid.bounds());
    for tab in grid.tables() {
        for t in -grid.t_max..=grid.t_max {
            let lhs = lambda_sym_a(&tab, t);
            let (part, rhs) = branch_rhs(&tab, t);
            report.checked += 1;
            report.tally(part);
            if lhs < rhs {
                report.violations.push(violation(part, t, &tab, &lhs, &rhs));
            }
        }
    }
    report.finish()
}

/// Parts i and ii as in [`verify_lemma_sym_a`] for
/// `Λ = Φ(t,t-2) + Φ(-t,-t-2) - Φ(t+2,-t+2) - Φ(-t+2,t+2)`, and part iii:
/// `Φ(t-2,t) + Φ(-t-2,-t) - Φ(t,-t) - Φ(-t,t) ≥ 0` for every `t`.
pub fn verify_lemma_sym_b(grid: &LemmaGrid) -> GridReport {
    let mut report = GridReport::new("sym_b", &grid.bounds());
    for tab in grid.tables() {
        for t in -grid.t_max..=grid.t_max {
            report.checked += 1;
            let lhs = lambda_sym_b(&tab, t);
            let (part, rhs) = branch_rhs(&tab, t);
            report.tally(part);
            if lhs < rhs {
                report.violations.push(violation(part, t, &tab, &lhs, &rhs));
            }
            let lhs = lambda_sym_b_iii(&tab, t);
            report.tally("iii");
            if lhs.is_negative() {
                report
                    .violations
                    .push(violation("iii", t, &tab, &lhs, &Rational::zero()));
            }
        }
    }
    report.finish()
}

/// `α_i = 2^-s C(s, ⌊(s-3)/2⌋ + i)` for `i = 1, 2, 3`.
pub fn appendix_alphas(bin: &mut Binomials, s: usize) -> [Rational; 3] {
    let base = (s as i64 - 3).div_euclid(2);
    [1, 2, 3].map(|i| bin.point(s, base + i))
}

/// `Σ = α3 β1 + α1 β1 + α1 β3 - α2 β2`.
pub fn appendix_sigma(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[2] * &b[0] + &a[0] * &b[0] + &a[0] * &b[2] - &a[1] * &b[1]
}

/// Checks the eight-term `Λ(t) ≥ 0` at every grid point (part
/// `inequality`), `Λ(t) = Λ(-t-2)` (part `symmetry`), and at `t = -1` with
/// `s1, s2 ≥ 3` both `Σ ≥ 0` (part `sigma`) and the decomposition
/// `½Λ(-1) = (α1+α3) f2(3) + (β1+β3) f1(3) + Σ` (part `decomposition`).
pub fn verify_lemma_appendix(grid: &LemmaGrid) -> GridReport {
    let mut report = GridReport::new("appendix", &grid.bounds());
    let mut bin = Binomials::new(grid.s_max);
    for tab in grid.tables() {
        let (s1, s2) = tab.s();
        for t in -grid.t_max..=grid.t_max {
            report.checked += 1;
            let lam = lambda8(&tab, t);
            report.tally("inequality");
            if lam.is_negative() {
                let mut v = violation("inequality", t, &tab, &lam, &Rational::zero());
                v.terms = lambda8_terms(t)
                    .iter()
                    .map(|&(a, b, sign)| {
                        let s = if sign > 0 { '+' } else { '-' };
                        format!("{s}Φ({a},{b}) = {}", tab.phi(a, b))
                    })
                    .collect();
                report.violations.push(v);
            }
            let mirrored = lambda8(&tab, -t - 2);
            report.tally("symmetry");
            if lam != mirrored {
                report.violations.push(violation("symmetry", t, &tab, &lam, &mirrored));
            }
            if t == -1 && s1 >= 3 && s2 >= 3 {
                let a = appendix_alphas(&mut bin, s1);
                let b = appendix_alphas(&mut bin, s2);
                let sigma = appendix_sigma(&a, &b);
                report.tally("sigma");
                if sigma.is_negative() {
                    report
                        .violations
                        .push(violation("sigma", t, &tab, &sigma, &Rational::zero()));
                }
                let half = &lam / int(2);
                let rhs = (&a[0] + &a[2]) * tab.f2(3) + (&b[0] + &b[2]) * tab.f1(3) + sigma;
                report.tally("decomposition");
                if half != rhs {
                    report.violations.push(violation("decomposition", t, &tab, &half, &rhs));
                }
            }
        }
    }
    report.finish()
}

/// Both sides of `B(a,c)B(b,d) - B(a,c-1)B(b,d-1) =
/// 2^-a C(a,c) B(b,d) + B(a,c-1) 2^-b C(b,d)`.
pub fn diff_identity_sides(bin: &mut Binomials, a: usize, b: usize, c: i64, d: i64) -> (Rational, Rational) {
    let lhs = bin.tail(a, c) * bin.tail(b, d) - bin.tail(a, c - 1) * bin.tail(b, d - 1);
    let rhs = bin.point(a, c) * bin.tail(b, d) + bin.tail(a, c - 1) * bin.point(b, d);
    (lhs, rhs)
}

/// Checks the exact difference identity for `1 <= a, b <= ab_max`,
/// `1 <= c <= a`, `1 <= d <= b`, skipping points outside `2c >= a-1`,
/// `2d >= b-1`, and records the band of `LHS / (2^-a C(a,c) + 2^-b C(b,d))`.
pub fn verify_lemma_diff_identity(ab_max: usize) -> GridReport {
    let m = ab_max as i64;
    let mut report = GridReport::new(
        "diff_identity",
        &[("a", (1, m)), ("b", (1, m)), ("c", (1, m)), ("d", (1, m))],
    );
    let mut bin = Binomials::new(ab_max);
    let mut band: Option<(Rational, Rational)> = None;
    for a in 1..=ab_max {
        for b in 1..=ab_max {
            for c in 1..=a as i64 {
                for d in 1..=b as i64 {
                    if 2 * c < a as i64 - 1 || 2 * d < b as i64 - 1 {
                        report.skipped += 1;
                        continue;
                    }
                    report.checked += 1;
                    report.tally("identity");
                    let (lhs, rhs) = diff_identity_sides(&mut bin, a, b, c, d);
                    let theta = bin.point(a, c) + bin.point(b, d);
                    let ratio = &lhs / &theta;
                    band = Some(match band {
                        None => (ratio.clone(), ratio),
                        Some((lo, hi)) => (lo.min(ratio.clone()), hi.max(ratio)),
                    });
                    if lhs != rhs {
                        report.violations.push(Violation {
                            part: "identity",
                            point: BTreeMap::from([("a", a as i64), ("b", b as i64), ("c", c), ("d", d)]),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                            parity: None,
                            terms: Vec::new(),
                        });
                    }
                }
            }
        }
    }
    report.ratio_band = band.map(|(lo, hi)| (lo.to_string(), hi.to_string()));
    report.finish()
}
