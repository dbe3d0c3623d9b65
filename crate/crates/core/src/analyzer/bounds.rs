//! Lower-bound formulas for bisections, with roots evaluated as rational
//! brackets so comparisons never lose to floating-point error.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::tail::{int, rat, Rational};

/// Default bracket width, `10^-9`.
pub fn default_precision() -> Rational {
    rat(1, 1_000_000_000)
}

/// A closed rational interval known to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn exact(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Multiplies by a nonnegative rational.
    pub fn scale(&self, c: &Rational) -> Interval {
        assert!(!c.is_negative(), "scale factor must be nonnegative");
        Interval {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    /// `self >= other` up to `tol`: `self.lo + tol >= other.hi`.
    pub fn at_least(&self, other: &Interval, tol: &Rational) -> bool {
        &self.lo + tol >= other.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &self.midpoint())?;
        st.end()
    }
}

/// Smallest power of two `D` with `1/D <= eps`.
fn denominator_for(eps: &Rational) -> BigInt {
    assert!(eps.is_positive(), "precision must be positive");
    let mut d = BigInt::one();
    while Rational::new(BigInt::one(), d.clone()) > *eps {
        d <<= 1;
    }
    d
}

/// Bracket of `x^(1/n)` of width at most `eps`, for `x >= 0`.
pub fn nth_root_bracket(x: &Rational, n: u32, eps: &Rational) -> Interval {
    assert!(!x.is_negative(), "root of a negative number");
    assert!(n >= 1);
    let d = denominator_for(eps);
    let scaled = (x * Rational::from_integer(d.pow(n))).floor().to_integer();
    let r = scaled.nth_root(n);
    let lo = Rational::new(r.clone(), d.clone());
    let hi = if Rational::from_integer(r.pow(n)) == x * Rational::from_integer(d.pow(n)) {
        lo.clone()
    } else {
        Rational::new(r + 1, d)
    };
    Interval { lo, hi }
}

pub fn sqrt_bracket(x: &Rational, eps: &Rational) -> Interval {
    nth_root_bracket(x, 2, eps)
}

/// `Σ √d_i` bracketed to total width `eps`.
pub fn sum_sqrt(values: impl ExactSizeIterator<Item = usize>, eps: &Rational) -> Interval {
    let per = eps / int(values.len().max(1) as i64);
    values.fold(Interval::exact(Rational::zero()), |acc, d| {
        acc.add(&sqrt_bracket(&int(d as i64), &per))
    })
}

/// `m/2 + ξ Σ √d_i`.
pub fn shearer_bisection_bound(g: &Graph, xi: &Rational, eps: &Rational) -> Interval {
    let degrees = g.degree_sequence();
    let inner_eps = if xi.is_zero() { eps.clone() } else { eps / xi };
    sum_sqrt(degrees.into_iter(), &inner_eps)
        .scale(xi)
        .add(&Interval::exact(rat(g.m() as i64, 2)))
}

/// `m/2 + (n - 1)/4`.
pub fn hou_yan_bound(g: &Graph) -> Rational {
    rat(g.m() as i64, 2) + rat(g.n() as i64 - 1, 4)
}

/// `m/2 + c · m^((2k+1)/(2k+2))`.
pub fn theorem2_bound(m: usize, k: u32, c: &Rational, eps: &Rational) -> Interval {
    let power = Rational::from_integer(BigInt::from(m).pow(2 * k + 1));
    let inner_eps = if c.is_zero() { eps.clone() } else { eps / c };
    nth_root_bracket(&power, 2 * k + 2, &inner_eps)
        .scale(c)
        .add(&Interval::exact(rat(m as i64, 2)))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub k: usize,
    /// `max d⁺ + 1` over the degeneracy ordering.
    pub d_cap: usize,
    pub sum_sqrt_degree: Interval,
    pub sum_sqrt_back_degree: Interval,
    /// `m / √D`.
    pub edge_term: Interval,
    pub first_holds: bool,
    pub second_holds: bool,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.first_holds && self.second_holds
    }
}

/// Checks `Σ √d_i >= Σ √d⁺_i >= m / √D` on a `C_{2k}`-free graph. Returns the
/// cycle when the graph is not `C_{2k}`-free.
pub fn degeneracy_chain_check(g: &Graph, k: usize, eps: &Rational) -> Result<ChainReport, Vec<Vertex>> {
    if let Some(cycle) = g.forbidden_cycle(&[2 * k]) {
        return Err(cycle);
    }
    let order = g.degeneracy_ordering();
    let d_cap = order.max_back_degree() + 1;
    let sum_sqrt_degree = sum_sqrt(g.degree_sequence().into_iter(), eps);
    let sum_sqrt_back_degree = sum_sqrt(order.back_degrees.iter().copied(), eps);
    let m = g.m() as i64;
    let edge_term = sqrt_bracket(&rat(m * m, d_cap as i64), eps);
    Ok(ChainReport {
        k,
        d_cap,
        first_holds: sum_sqrt_degree.at_least(&sum_sqrt_back_degree, eps),
        second_holds: sum_sqrt_back_degree.at_least(&edge_term, eps),
        sum_sqrt_degree,
        sum_sqrt_back_degree,
        edge_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;

    #[test]
    fn brackets_contain_roots() {
        let eps = default_precision();
        let s = sqrt_bracket(&int(2), &eps);
        assert!(s.width() <= eps);
        assert!(&s.lo * &s.lo <= int(2) && &s.hi * &s.hi >= int(2));
        assert_eq!(sqrt_bracket(&int(49), &eps), Interval::exact(int(7)));
        assert_eq!(nth_root_bracket(&int(27), 3, &eps), Interval::exact(int(3)));
    }

    #[test]
    fn bound_examples() {
        let eps = default_precision();
        let c8 = generators::cycle(8).unwrap();
        let b = shearer_bisection_bound(&c8, &rat(1, 32), &eps);
        assert!(b.width() <= eps);
        assert!((b.midpoint() - (4.0 + 8.0 * 2f64.sqrt() / 32.0)).abs() < 1e-9);
        assert_eq!(hou_yan_bound(&c8), rat(23, 4));
        let t = theorem2_bound(100, 3, &int(1), &eps);
        assert!(t.width() <= eps);
        assert!((t.midpoint() - (50.0 + 100f64.powf(7.0 / 8.0))).abs() < 1e-6);
    }

    #[test]
    fn chain_on_c8() {
        let c8 = generators::cycle(8).unwrap();
        let r = degeneracy_chain_check(&c8, 3, &default_precision()).unwrap();
        assert_eq!(r.d_cap, 3);
        assert!(r.holds());
        let c6 = generators::cycle(6).unwrap();
        assert_eq!(
            degeneracy_chain_check(&c6, 3, &default_precision()).unwrap_err().len(),
            6
        );
    }

    proptest! {
        #[test]
        fn sqrt_bracket_is_tight(num in 0i64..1_000_000, den in 1i64..1000) {
            let x = rat(num, den);
            let eps = rat(1, 1 << 20);
            let s = sqrt_bracket(&x, &eps);
            prop_assert!(s.width() <= eps);
            prop_assert!(&s.lo * &s.lo <= x);
            prop_assert!(&s.hi * &s.hi >= x);
        }
    }
}
