//! Terms of q-hypergeometric sums.
//!
//! A [`HyperTerm`] describes the `n`-th term
//!
//! ```text
//! scalar * z^n * q^((a n^2 + b n)/2 + c) * prod (base q^(drift n); q^step)_len^(+-1)
//! ```
//!
//! and knows a certified lower bound for the valuation of every term from `n`
//! onwards, which is what [`sum_series`](super::sum_series) needs to stop.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{LaurentSeries, Monomial};

/// Stand-in for "valuation is +infinity".
pub(crate) const VAL_INFINITY: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorLen {
    /// A fixed number of factors.
    Fixed(u64),
    /// `n + k` factors for the `n`-th term.
    Shifted(i64),
    Infinite,
}

/// `(base q^(drift n); q^step)_len`, in the numerator or the denominator.
#[derive(Clone, Debug)]
pub struct Factor {
    pub base: Monomial,
    pub drift: i64,
    pub step: i64,
    pub len: FactorLen,
    pub denominator: bool,
}

impl Factor {
    fn count(&self, n: u64) -> Option<u64> {
        match self.len {
            FactorLen::Fixed(l) => Some(l),
            FactorLen::Shifted(k) => {
                let l = n as i64 + k;
                assert!(l >= 0, "pochhammer length n{k:+} is negative at n = {n}");
                Some(l as u64)
            }
            FactorLen::Infinite => None,
        }
    }

    fn exponent(&self, n: u64, k: u64) -> i64 {
        self.base.exp + self.drift * n as i64 + self.step * k as i64
    }

    /// Sum of the negative factor exponents at `n`, over `limit` factors (all
    /// factors when `None`).
    fn negative_part(&self, n: u64, limit: Option<u64>) -> i64 {
        if self.base.is_zero() {
            return 0;
        }
        let mut total = 0;
        let mut k = 0u64;
        loop {
            if limit.is_some_and(|l| k >= l) {
                break;
            }
            let e = self.exponent(n, k);
            if e >= 0 {
                break;
            }
            total += e;
            k += 1;
        }
        total
    }
}

#[derive(Clone, Debug)]
pub struct HyperTerm {
    scalar: Rational,
    ratio: Monomial,
    quad: i64,
    lin: i64,
    offset: i64,
    factors: Vec<Factor>,
}

impl Default for HyperTerm {
    fn default() -> Self {
        Self::new()
    }
}

impl HyperTerm {
    /// The constant term `1` for every `n`.
    pub fn new() -> Self {
        HyperTerm {
            scalar: Rational::one(),
            ratio: Monomial::one(),
            quad: 0,
            lin: 0,
            offset: 0,
            factors: Vec::new(),
        }
    }

    pub fn scalar(mut self, c: Rational) -> Self {
        self.scalar *= c;
        self
    }

    /// Multiply the `n`-th term by `z^n`.
    pub fn ratio(mut self, z: Monomial) -> Self {
        self.ratio = self.ratio.mul(&z);
        self
    }

    /// Multiply by `q^(a n^2 + b n + c)`.
    pub fn q_power(mut self, a: i64, b: i64, c: i64) -> Self {
        self.quad += 2 * a;
        self.lin += 2 * b;
        self.offset += c;
        self
    }

    /// Multiply by `q^((a n^2 + b n)/2 + c)`; `a + b` must be even.
    pub fn q_power_half(mut self, a: i64, b: i64, c: i64) -> Self {
        assert!((a + b) % 2 == 0, "(a n^2 + b n)/2 must be integral");
        self.quad += a;
        self.lin += b;
        self.offset += c;
        self
    }

    fn push(mut self, base: Monomial, drift: i64, step: i64, len: FactorLen, den: bool) -> Self {
        assert!(step >= 1, "pochhammer step must be positive");
        assert!(drift >= 0, "base exponent must not decrease with n");
        self.factors.push(Factor {
            base,
            drift,
            step,
            len,
            denominator: den,
        });
        self
    }

    /// Numerator factor `(base; q^step)_len`.
    pub fn num(self, base: Monomial, step: i64, len: FactorLen) -> Self {
        self.push(base, 0, step, len, false)
    }

    /// Denominator factor `1 / (base; q^step)_len`.
    pub fn den(self, base: Monomial, step: i64, len: FactorLen) -> Self {
        self.push(base, 0, step, len, true)
    }

    /// Numerator factor whose base gains `q^drift` per `n`.
    pub fn num_drift(self, base: Monomial, drift: i64, step: i64, len: FactorLen) -> Self {
        self.push(base, drift, step, len, false)
    }

    pub fn den_drift(self, base: Monomial, drift: i64, step: i64, len: FactorLen) -> Self {
        self.push(base, drift, step, len, true)
    }

    /// Exponent of the leading monomial `z^n q^(...)`, times two.
    fn double_exponent(&self, n: i64) -> i64 {
        let ratio_exp = if self.ratio.is_zero() { 0 } else { self.ratio.exp };
        self.quad * n * n + (self.lin + 2 * ratio_exp) * n + 2 * self.offset
    }

    fn leading_exponent(&self, n: u64) -> i64 {
        self.double_exponent(n as i64) / 2
    }

    /// Whether term valuations grow without bound.
    pub fn converges(&self) -> bool {
        if self.scalar.is_zero() || self.ratio.is_zero() {
            return true;
        }
        let ratio_exp = self.ratio.exp;
        self.quad > 0 || (self.quad == 0 && self.lin + 2 * ratio_exp > 0)
    }

    /// Lower bound for the valuation of every term with index `>= n`.
    /// Non-decreasing in `n`.
    pub fn tail_bound(&self, n: u64) -> i64 {
        if self.scalar.is_zero() || (self.ratio.is_zero() && n >= 1) {
            return VAL_INFINITY;
        }
        if !self.converges() {
            return i64::MIN / 4;
        }
        let lead = if self.ratio.is_zero() {
            self.offset
        } else {
            self.min_leading_from(n as i64)
        };
        let factors: i64 = self
            .factors
            .iter()
            .filter(|f| !f.denominator)
            .map(|f| match f.len {
                FactorLen::Fixed(l) => f.negative_part(n, Some(l)),
                _ => f.negative_part(n, None),
            })
            .sum();
        lead + factors
    }

    fn min_leading_from(&self, n: i64) -> i64 {
        let a = self.quad;
        let b = self.lin + 2 * self.ratio.exp;
        if a == 0 {
            return self.double_exponent(n) / 2;
        }
        // vertex of a m^2 + b m
        let vertex = -b as f64 / (2.0 * a as f64);
        if (n as f64) >= vertex {
            return self.double_exponent(n) / 2;
        }
        let lo = vertex.floor() as i64;
        [lo, lo + 1]
            .into_iter()
            .filter(|&m| m >= n)
            .map(|m| self.double_exponent(m) / 2)
            .min()
            .unwrap_or(self.double_exponent(n) / 2)
    }

    /// The `n`-th term, known at least below `trunc`.
    pub fn term(&self, n: u64, trunc: i64) -> Result<LaurentSeries> {
        let coeff = &self.scalar * rational::pow(&self.ratio.coeff, n);
        if coeff.is_zero() {
            return Ok(LaurentSeries::zero(trunc));
        }
        let slack: i64 = self
            .factors
            .iter()
            .filter(|f| !f.denominator)
            .map(|f| -f.negative_part(n, f.count(n)))
            .sum();
        let lead = Monomial::new(coeff, self.leading_exponent(n));
        let mut s = LaurentSeries::from_monomial(&lead, trunc + slack);
        for f in &self.factors {
            if f.base.is_zero() {
                continue;
            }
            let count = f.count(n);
            let mut k = 0u64;
            loop {
                if count.is_some_and(|c| k >= c) {
                    break;
                }
                let e = f.exponent(n, k);
                if count.is_none() && e > 0 && e >= s.trunc() - s.vmin() {
                    break;
                }
                let c = &f.base.coeff;
                if f.denominator {
                    s = s.div_binomial(c, e)?;
                } else {
                    if e == 0 && c.is_one() {
                        return Ok(LaurentSeries::zero(trunc));
                    }
                    s = s.mul_binomial(c, e);
                }
                k += 1;
            }
        }
        debug_assert!(s.trunc() >= trunc, "term {n} lost precision");
        Ok(s.truncate(trunc))
    }

    /// Sum over all `n >= 0`, exact below `trunc`.
    pub fn sum(&self, trunc: i64) -> Result<LaurentSeries> {
        if !self.converges() {
            return Err(Error::NonConvergent { iterations: 0 });
        }
        super::sum_series(|n| self.term(n, trunc), |n| self.tail_bound(n), trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_is_below_true_valuation() {
        // 2^n q^(n^2) / (-q^2; q^2)_n and a Laurent numerator
        let terms = [
            HyperTerm::new()
                .ratio(Monomial::int(2, 0))
                .q_power(1, 0, 0)
                .den(Monomial::int(-1, 2), 2, FactorLen::Shifted(0)),
            HyperTerm::new()
                .ratio(Monomial::q(3))
                .num(Monomial::int(2, -5), 2, FactorLen::Shifted(1))
                .den(Monomial::int(3, -1), 1, FactorLen::Shifted(0)),
            HyperTerm::new()
                .ratio(Monomial::int(-1, 0))
                .q_power(1, -4, 0)
                .num_drift(Monomial::int(-2, 2), 2, 2, FactorLen::Infinite),
        ];
        for t in &terms {
            for n in 0..12 {
                let s = t.term(n, 60).unwrap();
                let b = t.tail_bound(n);
                assert!(s.is_zero() || s.val() >= b, "term {n}: val {} < bound {b}", s.val());
                assert!(t.tail_bound(n + 1) >= b, "bound not monotone at {n}");
            }
        }
    }

    #[test]
    fn divergent_sum_is_rejected() {
        let t = HyperTerm::new().ratio(Monomial::int(2, 0));
        assert_eq!(t.sum(10), Err(Error::NonConvergent { iterations: 0 }));
    }

    #[test]
    fn zero_ratio_keeps_only_first_term() {
        let t = HyperTerm::new()
            .ratio(Monomial::zero())
            .num(Monomial::int(-1, 1), 1, FactorLen::Shifted(0));
        assert_eq!(t.sum(5).unwrap(), LaurentSeries::one(5));
    }

    #[test]
    fn vanishing_numerator_factor_gives_zero_term() {
        // (1; q)_n vanishes for n >= 1
        let t = HyperTerm::new()
            .ratio(Monomial::q(1))
            .num(Monomial::one(), 1, FactorLen::Shifted(0));
        assert_eq!(t.term(0, 5).unwrap(), LaurentSeries::one(5));
        assert!(t.term(3, 5).unwrap().is_zero());
        assert_eq!(t.sum(5).unwrap(), LaurentSeries::one(5));
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        let t = HyperTerm::new()
            .ratio(Monomial::q(1))
            .den(Monomial::q(-1), 1, FactorLen::Shifted(0));
        assert_eq!(t.term(2, 5), Err(Error::ZeroDivision));
        assert!(t.term(1, 5).is_ok());
    }
}
