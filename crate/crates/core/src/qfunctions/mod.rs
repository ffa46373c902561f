//! Special series: q-Pochhammer products, theta, sigma, phi, and the
//! summation engine for sums whose terms have growing valuation.

mod hyper;

pub use hyper::{Factor, FactorLen, HyperTerm};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{LaurentSeries, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// `(base; Q)_length` with `Q = sign * q^step_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub base: Monomial,
    pub step_exp: i64,
    pub negative_step: bool,
    pub length: Length,
}

impl PochhammerSpec {
    pub fn finite(base: Monomial, step_exp: i64, n: u64) -> Self {
        PochhammerSpec {
            base,
            step_exp,
            negative_step: false,
            length: Length::Finite(n),
        }
    }

    pub fn infinite(base: Monomial, step_exp: i64) -> Self {
        PochhammerSpec {
            base,
            step_exp,
            negative_step: false,
            length: Length::Infinite,
        }
    }

    /// Use `Q = -q^step_exp` instead.
    pub fn with_negative_step(mut self) -> Self {
        self.negative_step = true;
        self
    }

    /// The `k`-th factor is `1 - c q^e`; returns `(c, e)`.
    fn factor(&self, k: u64) -> (Rational, i64) {
        let mut c = self.base.coeff.clone();
        if self.negative_step && k % 2 == 1 {
            c = -c;
        }
        (c, self.base.exp + self.step_exp * k as i64)
    }

    fn check(&self) -> Result<()> {
        if self.step_exp < 1 {
            return Err(Error::PreconditionViolated(format!(
                "pochhammer step exponent must be >= 1, got {}",
                self.step_exp
            )));
        }
        if self.base.is_zero() || self.base.exp > 0 {
            return Ok(());
        }
        // the only candidate for a factor 1 - 1*q^0
        let span = -self.base.exp;
        if span % self.step_exp != 0 {
            return Ok(());
        }
        let k = (span / self.step_exp) as u64;
        if let Length::Finite(n) = self.length {
            if k >= n {
                return Ok(());
            }
        }
        let (c, _) = self.factor(k);
        if c.is_one() {
            return Err(Error::ZeroFactor {
                factor: format!("k = {k} of ({}; q^{})", self.base, self.step_exp),
            });
        }
        Ok(())
    }
}

/// Exact truncated q-Pochhammer product.
///
/// Infinite products stop once further factors cannot reach the window.
pub fn pochhammer(spec: &PochhammerSpec, trunc: i64) -> Result<LaurentSeries> {
    spec.check()?;
    let count = match spec.length {
        Length::Finite(n) => Some(n),
        Length::Infinite => None,
    };
    if spec.base.is_zero() {
        return Ok(LaurentSeries::one(trunc));
    }
    let mut slack = 0;
    let mut k = 0u64;
    while count.map_or(true, |n| k < n) {
        let (_, e) = spec.factor(k);
        if e >= 0 {
            break;
        }
        slack -= e;
        k += 1;
    }
    let mut s = LaurentSeries::one(trunc + slack);
    let mut k = 0u64;
    while count.map_or(true, |n| k < n) {
        let (c, e) = spec.factor(k);
        if count.is_none() && e > 0 && e >= s.trunc() - s.vmin() {
            break;
        }
        s = s.mul_binomial(&c, e);
        k += 1;
    }
    Ok(s.truncate(trunc))
}

/// Shorthand for `(base; q^step)_n`, infinite when `n` is `None`.
pub fn poch(base: Monomial, step: i64, n: Option<u64>, trunc: i64) -> Result<LaurentSeries> {
    let spec = match n {
        Some(n) => PochhammerSpec::finite(base, step, n),
        None => PochhammerSpec::infinite(base, step),
    };
    pochhammer(&spec, trunc)
}

/// Jacobi theta `sum_{n in Z} q^(n^2)`.
pub fn theta(trunc: i64) -> LaurentSeries {
    let mut coeffs = vec![Rational::zero(); trunc.max(0) as usize];
    if trunc >= 1 {
        coeffs[0] = Rational::one();
    }
    let mut n = 1i64;
    while n * n < trunc {
        coeffs[(n * n) as usize] = rational::int(2);
        n += 1;
    }
    LaurentSeries::from_coeffs(0, coeffs)
}

/// Ramanujan's `sigma(q) = sum_{n>=0} q^(n(n+1)/2) / (-q; q)_n`.
pub fn sigma(trunc: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .q_power_half(1, 1, 0)
        .den(Monomial::int(-1, 1), 1, FactorLen::Shifted(0))
        .sum(trunc)
}

/// Third order mock theta `phi(q) = sum_{n>=0} q^(n^2) / (-q^2; q^2)_n`.
pub fn phi(trunc: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .q_power(1, 0, 0)
        .den(Monomial::int(-1, 2), 2, FactorLen::Shifted(0))
        .sum(trunc)
}

pub fn default_cap(trunc: i64) -> u64 {
    10 * trunc.max(0) as u64 + 64
}

/// `sum_{n>=0} term(n)`, exact below `trunc`.
///
/// `val_bound(n)` must be a lower bound for the valuation of every term with
/// index `>= n`; summation stops at the first `n` where it reaches `trunc`.
pub fn sum_series<T, B>(term: T, val_bound: B, trunc: i64) -> Result<LaurentSeries>
where
    T: Fn(u64) -> Result<LaurentSeries>,
    B: Fn(u64) -> i64,
{
    sum_series_capped(term, val_bound, trunc, default_cap(trunc))
}

pub fn sum_series_capped<T, B>(term: T, val_bound: B, trunc: i64, cap: u64) -> Result<LaurentSeries>
where
    T: Fn(u64) -> Result<LaurentSeries>,
    B: Fn(u64) -> i64,
{
    let mut acc = LaurentSeries::zero(trunc);
    for n in 0..cap {
        if val_bound(n) >= trunc {
            return Ok(acc);
        }
        acc = acc.add(&term(n)?);
    }
    Err(Error::NonConvergent { iterations: cap })
}

/// Coefficients of `a^0, ..., a^n` in `prod_{k<n} (1 - a q^k)`.
pub fn pochhammer_in_a(n: u64, trunc: i64) -> Vec<LaurentSeries> {
    let mut poly = vec![LaurentSeries::one(trunc)];
    for k in 0..n as i64 {
        let mut next = Vec::with_capacity(poly.len() + 1);
        for j in 0..=poly.len() {
            let keep = poly.get(j).cloned();
            let moved = j
                .checked_sub(1)
                .map(|i| poly[i].shift(&Monomial::int(-1, k)).truncate(trunc));
            next.push(match (keep, moved) {
                (Some(a), Some(b)) => a.add(&b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            });
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(s: &LaurentSeries, hi: i64) -> Vec<i64> {
        (0..hi)
            .map(|k| i64::try_from(s.coefficient(k).unwrap().to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn finite_pochhammer() {
        let p = poch(Monomial::q(1), 1, Some(2), 5).unwrap();
        assert_eq!(ints(&p, 5), vec![1, -1, -1, 1, 0]);
    }

    #[test]
    fn euler_product_in_q_squared() {
        let trunc = 60;
        let p = poch(Monomial::q(2), 2, None, trunc).unwrap();
        // generalized pentagonal numbers k(3k-1)/2, k in Z, with sign (-1)^k
        let mut expected = vec![0i64; trunc as usize];
        for k in -10i64..=10 {
            let g = k * (3 * k - 1) / 2;
            if 2 * g < trunc {
                expected[(2 * g) as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(ints(&p, trunc), expected);
        assert_eq!(&ints(&p, 8)[..], &[1, 0, -1, 0, -1, 0, 0, 0]);
    }

    #[test]
    fn overlined_odd_product() {
        // (1+2q)(1+2q^3)(1+2q^5) = 1 + 2q + 2q^3 + 4q^4 + 2q^5 + ...
        let p = poch(Monomial::int(-2, 1), 2, None, 6).unwrap();
        assert_eq!(ints(&p, 6), vec![1, 2, 0, 2, 4, 2]);
    }

    #[test]
    fn zero_factor_is_rejected() {
        let spec = PochhammerSpec::finite(Monomial::q(-2), 1, 4);
        assert!(matches!(pochhammer(&spec, 5), Err(Error::ZeroFactor { .. })));
        // the vanishing factor is beyond the length
        let spec = PochhammerSpec::finite(Monomial::q(-2), 1, 2);
        assert!(pochhammer(&spec, 5).is_ok());
        let spec = PochhammerSpec::infinite(Monomial::int(-1, -2), 2).with_negative_step();
        assert!(matches!(pochhammer(&spec, 5), Err(Error::ZeroFactor { .. })));
    }

    #[test]
    fn signed_step_matches_sign_substitution() {
        let trunc = 40;
        let direct = pochhammer(
            &PochhammerSpec::infinite(Monomial::int(-1, 1), 1).with_negative_step(),
            trunc,
        )
        .unwrap();
        let via_sub = poch(Monomial::q(1), 1, None, trunc).unwrap().substitute_sign();
        assert_eq!(direct, via_sub);
    }

    #[test]
    fn laurent_base_keeps_full_window() {
        // (2q^-1; q)_3 = (1 - 2q^-1)(1 - 2)(1 - 2q)
        let p = poch(Monomial::int(2, -1), 1, Some(3), 4).unwrap();
        assert_eq!(p.trunc(), 4);
        // (1 - 2/q)(-1)(1 - 2q) = 2/q - 5 + 2q
        let expected = LaurentSeries::from_integers(-1, &[2, -5, 2, 0, 0]);
        assert_eq!(p, expected);
    }

    #[test]
    fn theta_values() {
        assert_eq!(ints(&theta(5), 5), vec![1, 2, 0, 0, 2]);
        assert_eq!(ints(&theta(1), 1), vec![1]);
        let t = theta(9);
        assert_eq!(ints(&(&t * &t), 9), vec![1, 4, 4, 0, 4, 8, 0, 0, 4]);
    }

    #[test]
    fn theta_squared_counts_lattice_points() {
        let n = 60;
        let t = theta(n);
        let t2 = &t * &t;
        for m in 0..n {
            let mut r2 = 0;
            for x in -8i64..=8 {
                for y in -8i64..=8 {
                    if x * x + y * y == m {
                        r2 += 1;
                    }
                }
            }
            assert_eq!(t2.coefficient(m).unwrap(), int(r2), "r2({m})");
        }
    }

    #[test]
    fn sigma_leading_terms() {
        let s = sigma(4).unwrap();
        assert_eq!(ints(&s, 4), vec![1, 1, -1, 2]);
        assert_eq!(ints(&sigma(1).unwrap(), 1), vec![1]);
    }

    #[test]
    fn phi_leading_terms() {
        let p = phi(5).unwrap();
        assert_eq!(ints(&p, 5), vec![1, 1, 0, -1, 1]);
        assert_eq!(ints(&phi(1).unwrap(), 1), vec![1]);
    }

    #[test]
    fn sum_engine_basic() {
        let s = sum_series(
            |n| Ok(LaurentSeries::from_monomial(&Monomial::q(2 * n as i64), 7)),
            |n| 2 * n as i64,
            7,
        )
        .unwrap();
        assert_eq!(ints(&s, 7), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn sum_engine_counts_laurent_offsets() {
        // bound n - 1: terms n = 0..=3 are below trunc 3
        use std::cell::Cell;
        let seen = Cell::new(0u64);
        let s = sum_series(
            |n| {
                seen.set(seen.get().max(n + 1));
                Ok(LaurentSeries::from_monomial(&Monomial::q(n as i64 - 1), 3))
            },
            |n| n as i64 - 1,
            3,
        )
        .unwrap();
        assert_eq!(seen.get(), 4);
        assert_eq!(s.coefficient(-1).unwrap(), int(1));
        assert_eq!(s.coefficient(2).unwrap(), int(1));
    }

    #[test]
    fn sum_engine_non_convergent() {
        let r = sum_series_capped(|_| Ok(LaurentSeries::one(5)), |_| 0, 5, 100);
        assert_eq!(r, Err(Error::NonConvergent { iterations: 100 }));
    }

    #[test]
    fn twisted_inner_sum_first_terms() {
        // sum 2^n q^(n^2) / (-q^2; q^2)_n by hand:
        // n=0: 1; n=1: 2q/(1+q^2) = 2q - 2q^3 + ...; n=2: 4q^4/... = 4q^4 + ...
        let s = HyperTerm::new()
            .ratio(Monomial::int(2, 0))
            .q_power(1, 0, 0)
            .den(Monomial::int(-1, 2), 2, FactorLen::Shifted(0))
            .sum(5)
            .unwrap();
        assert_eq!(ints(&s, 5), vec![1, 2, 0, -2, 4]);
    }

    #[test]
    fn top_coefficient_in_a() {
        let p = pochhammer_in_a(0, 5);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0], LaurentSeries::one(5));

        let p = pochhammer_in_a(2, 5);
        assert_eq!(p[0], LaurentSeries::one(5));
        assert_eq!(p[1], LaurentSeries::from_integers(0, &[-1, -1, 0, 0, 0]));
        assert_eq!(p[2], LaurentSeries::from_monomial(&Monomial::q(1), 5));

        for n in 0..=20u64 {
            let p = pochhammer_in_a(n, 200);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected =
                LaurentSeries::from_monomial(&Monomial::int(sign, (n * n.saturating_sub(1) / 2) as i64), 200);
            assert_eq!(p[n as usize], expected, "n = {n}");
        }
    }

    #[test]
    fn pochhammer_recurrence_on_rational_base() {
        let base = Monomial::new(frac(-3, 2), 1);
        for n in 0..12u64 {
            let p = poch(base.clone(), 2, Some(n), 40).unwrap();
            let p1 = poch(base.clone(), 2, Some(n + 1), 40).unwrap();
            let factor = base.shift(2 * n as i64);
            assert_eq!(p1, p.mul_binomial(&factor.coeff, factor.exp));
        }
    }
}
