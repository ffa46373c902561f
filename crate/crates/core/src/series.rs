//! Truncated Laurent series in `q` over exact rationals.
//!
//! A [`LaurentSeries`] stores the coefficients of `q^vmin, ..., q^(trunc-1)`.
//! Coefficients below `vmin` are known to be zero and coefficients at or above
//! `trunc` are unknown. Every operation propagates the truncation
//! pessimistically, so a coefficient that is reported is always exact.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A parameter value `coeff * q^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Rational,
    pub exp: i64,
}

impl Monomial {
    pub fn new(coeff: Rational, exp: i64) -> Self {
        Monomial { coeff, exp }
    }

    /// `c * q^e` with integer `c`.
    pub fn int(c: i64, exp: i64) -> Self {
        Monomial::new(rational::int(c), exp)
    }

    pub fn constant(c: Rational) -> Self {
        Monomial::new(c, 0)
    }

    /// `q^e`.
    pub fn q(exp: i64) -> Self {
        Monomial::int(1, exp)
    }

    pub fn one() -> Self {
        Monomial::int(1, 0)
    }

    pub fn zero() -> Self {
        Monomial::int(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_zero() || other.is_zero() {
            return Monomial::zero();
        }
        Monomial::new(&self.coeff * &other.coeff, self.exp + other.exp)
    }

    pub fn inverse(&self) -> Result<Monomial> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Monomial::new(self.coeff.recip(), -self.exp))
    }

    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, n: u64) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        if self.is_zero() {
            return Monomial::zero();
        }
        Monomial::new(rational::pow(&self.coeff, n), self.exp * n as i64)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Monomial {
        if self.is_zero() {
            return Monomial::zero();
        }
        Monomial::new(self.coeff.clone(), self.exp + e)
    }

    pub fn scale(&self, c: &Rational) -> Monomial {
        self.mul(&Monomial::constant(c.clone()))
    }
}

impl Neg for Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        Monomial::new(-self.coeff, self.exp)
    }
}

impl Neg for &Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        Monomial::new(-self.coeff.clone(), self.exp)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.exp == 0 {
            return write!(f, "{}", self.coeff);
        }
        let q = if self.exp == 1 {
            "q".to_string()
        } else {
            format!("q^{}", self.exp)
        };
        if self.coeff.is_one() {
            write!(f, "{q}")
        } else if (-&self.coeff).is_one() {
            write!(f, "-{q}")
        } else if rational::is_integer(&self.coeff) {
            write!(f, "{}{q}", self.coeff)
        } else {
            write!(f, "({}){q}", self.coeff)
        }
    }
}

/// Exact truncated Laurent series.
///
/// Equality compares coefficients below the smaller of the two truncations,
/// with zero padding below each `vmin`.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    vmin: i64,
    trunc: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// The zero series known below `trunc`.
    pub fn zero(trunc: i64) -> Self {
        LaurentSeries {
            vmin: trunc,
            trunc,
            coeffs: Vec::new(),
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::from_monomial(&Monomial::one(), trunc)
    }

    pub fn from_monomial(m: &Monomial, trunc: i64) -> Self {
        if m.exp >= trunc || m.is_zero() {
            return Self::zero(trunc);
        }
        let mut coeffs = vec![Rational::zero(); (trunc - m.exp) as usize];
        coeffs[0] = m.coeff.clone();
        LaurentSeries {
            vmin: m.exp,
            trunc,
            coeffs,
        }
    }

    /// Coefficients for `q^vmin, q^(vmin+1), ...`; the truncation is the end
    /// of the slice.
    pub fn from_coeffs(vmin: i64, coeffs: Vec<Rational>) -> Self {
        let trunc = vmin + coeffs.len() as i64;
        LaurentSeries {
            vmin,
            trunc,
            coeffs,
        }
    }

    pub fn from_integers(vmin: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(vmin, coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn from_fn(vmin: i64, trunc: i64, mut f: impl FnMut(i64) -> Rational) -> Self {
        if trunc <= vmin {
            return Self::zero(trunc);
        }
        Self::from_coeffs(vmin, (vmin..trunc).map(&mut f).collect())
    }

    pub fn vmin(&self) -> i64 {
        self.vmin
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Tracked coefficients, starting at `q^vmin`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: i64) -> Result<Rational> {
        if k >= self.trunc {
            return Err(Error::OutOfPrecision {
                exponent: k,
                trunc: self.trunc,
            });
        }
        Ok(self.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    /// `None` for exponents below `vmin` (known zero) or at/after `trunc`.
    fn get(&self, k: i64) -> Option<&Rational> {
        if k < self.vmin || k >= self.trunc {
            None
        } else {
            Some(&self.coeffs[(k - self.vmin) as usize])
        }
    }

    /// Iterate `(exponent, coefficient)` over the tracked window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.vmin + i as i64, c))
    }

    /// Exponent of the lowest nonzero coefficient, if any is nonzero.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.vmin + i as i64)
    }

    /// Valuation, with the zero series treated as having valuation `trunc`.
    pub fn val(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Forget every coefficient at or above `trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        if trunc <= self.vmin {
            return Self::zero(trunc);
        }
        LaurentSeries {
            vmin: self.vmin,
            trunc,
            coeffs: self.coeffs[..(trunc - self.vmin) as usize].to_vec(),
        }
    }

    /// Same series with leading zeros dropped from storage.
    pub fn trimmed(&self) -> Self {
        match self.valuation() {
            None => Self::zero(self.trunc),
            Some(v) => LaurentSeries {
                vmin: v,
                trunc: self.trunc,
                coeffs: self.coeffs[(v - self.vmin) as usize..].to_vec(),
            },
        }
    }

    /// Lowest exponent at which the two series provably differ.
    pub fn first_mismatch(&self, other: &LaurentSeries) -> Option<i64> {
        let lo = min(self.vmin, other.vmin);
        let hi = min(self.trunc, other.trunc);
        let zero = Rational::zero();
        (lo..hi).find(|&k| self.get(k).unwrap_or(&zero) != other.get(k).unwrap_or(&zero))
    }

    fn combine(&self, other: &LaurentSeries, sign: bool) -> LaurentSeries {
        let trunc = min(self.trunc, other.trunc);
        let vmin = min(self.vmin, other.vmin);
        if trunc <= vmin {
            return Self::zero(trunc);
        }
        let zero = Rational::zero();
        Self::from_fn(vmin, trunc, |k| {
            let a = self.get(k).unwrap_or(&zero);
            let b = other.get(k).unwrap_or(&zero);
            if sign {
                a + b
            } else {
                a - b
            }
        })
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.combine(other, false)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            vmin: self.vmin,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentSeries {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        LaurentSeries {
            vmin: self.vmin,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by the monomial `m`; the whole window moves by `m.exp`.
    pub fn shift(&self, m: &Monomial) -> LaurentSeries {
        if m.is_zero() {
            return Self::zero(self.trunc);
        }
        let scaled = self.scale(&m.coeff);
        LaurentSeries {
            vmin: scaled.vmin + m.exp,
            trunc: scaled.trunc + m.exp,
            coeffs: scaled.coeffs,
        }
    }

    /// Convolution product.
    ///
    /// The result is known below `min(f.trunc + val(g), g.trunc + val(f))`.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        let vf = self.val();
        let vg = other.val();
        let trunc = min(self.trunc + vg, other.trunc + vf);
        let vmin = self.vmin + other.vmin;
        if trunc <= vmin {
            return Self::zero(trunc);
        }
        let mut out = vec![Rational::zero(); (trunc - vmin) as usize];
        if self.is_zero() || other.is_zero() || vf + vg >= trunc {
            return LaurentSeries {
                vmin,
                trunc,
                coeffs: out,
            };
        }
        let f = &self.coeffs[(vf - self.vmin) as usize..];
        let g = &other.coeffs[(vg - other.vmin) as usize..];
        let len = (trunc - vf - vg) as usize;
        let (fi, df) = integerize(&f[..min(f.len(), len)]);
        let (gi, dg) = integerize(&g[..min(g.len(), len)]);
        let acc = convolve(&fi, &gi, len);
        let den = df * dg;
        let offset = (vf + vg - vmin) as usize;
        for (k, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                out[offset + k] = Rational::new(c, den.clone());
            }
        }
        LaurentSeries {
            vmin,
            trunc,
            coeffs: out,
        }
    }

    /// Multiplicative inverse.
    ///
    /// For `f = c q^v + ...` known below `t`, the inverse starts at `q^-v` and
    /// is known below `t - 2v`.
    pub fn invert(&self) -> Result<LaurentSeries> {
        let v = self.valuation().ok_or(Error::ZeroDivision)?;
        let f = &self.coeffs[(v - self.vmin) as usize..];
        let n = f.len();
        let lead = &f[0];
        let integral = f.iter().all(rational::is_integer) && lead.abs().is_one();
        let g: Vec<Rational> = if integral {
            let fi: Vec<BigInt> = f.iter().map(|c| c.to_integer()).collect();
            let sign = fi[0].clone();
            let mut gi: Vec<BigInt> = Vec::with_capacity(n);
            gi.push(sign.clone());
            for k in 1..n {
                let mut s = BigInt::zero();
                for i in 1..=k {
                    if !fi[i].is_zero() && !gi[k - i].is_zero() {
                        s += &fi[i] * &gi[k - i];
                    }
                }
                gi.push(-(s * &sign));
            }
            gi.into_iter().map(Rational::from_integer).collect()
        } else {
            let inv_lead = lead.recip();
            let h: Vec<Rational> = f.iter().map(|c| c * &inv_lead).collect();
            let mut g: Vec<Rational> = Vec::with_capacity(n);
            g.push(Rational::one());
            for k in 1..n {
                let mut s = Rational::zero();
                for i in 1..=k {
                    if !h[i].is_zero() && !g[k - i].is_zero() {
                        s += &h[i] * &g[k - i];
                    }
                }
                g.push(-s);
            }
            g.into_iter().map(|c| c * &inv_lead).collect()
        };
        Ok(LaurentSeries::from_coeffs(-v, g))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&other.invert()?))
    }

    /// `q -> -q`.
    pub fn substitute_sign(&self) -> LaurentSeries {
        LaurentSeries {
            vmin: self.vmin,
            trunc: self.trunc,
            coeffs: self
                .iter()
                .map(|(k, c)| if k.is_odd() { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `q -> q^m` for `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> LaurentSeries {
        assert!(m >= 1, "substitute_power needs m >= 1, got {m}");
        if m == 1 {
            return self.clone();
        }
        let vmin = self.vmin * m;
        let trunc = self.trunc * m;
        let mut coeffs = vec![Rational::zero(); (trunc - vmin) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        LaurentSeries {
            vmin,
            trunc,
            coeffs,
        }
    }

    /// Multiply by the exact binomial `1 - c q^e`.
    pub fn mul_binomial(&self, c: &Rational, e: i64) -> LaurentSeries {
        if c.is_zero() {
            return self.clone();
        }
        if e == 0 {
            return self.scale(&(Rational::one() - c));
        }
        if e > 0 {
            if e >= self.trunc - self.vmin {
                return self.clone();
            }
            let mut out = self.coeffs.clone();
            for k in (e as usize..out.len()).rev() {
                let prev = &self.coeffs[k - e as usize];
                if !prev.is_zero() {
                    out[k] -= c * prev;
                }
            }
            return LaurentSeries {
                vmin: self.vmin,
                trunc: self.trunc,
                coeffs: out,
            };
        }
        // e < 0: the product starts e lower and is known e lower.
        let vmin = self.vmin + e;
        let trunc = self.trunc + e;
        let zero = Rational::zero();
        Self::from_fn(vmin, trunc, |k| {
            let a = self.get(k).unwrap_or(&zero);
            let b = self.get(k - e).unwrap_or(&zero);
            a - c * b
        })
    }

    /// Divide by the exact binomial `1 - c q^e`.
    pub fn div_binomial(&self, c: &Rational, e: i64) -> Result<LaurentSeries> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        if e == 0 {
            let d = Rational::one() - c;
            if d.is_zero() {
                return Err(Error::ZeroDivision);
            }
            return Ok(self.scale(&d.recip()));
        }
        if e > 0 {
            let mut out = self.coeffs.clone();
            let step = e as usize;
            for k in step..out.len() {
                if !out[k - step].is_zero() {
                    let add = c * &out[k - step];
                    out[k] += add;
                }
            }
            return Ok(LaurentSeries {
                vmin: self.vmin,
                trunc: self.trunc,
                coeffs: out,
            });
        }
        // 1/(1 - c q^e) = -(1/c) q^-e / (1 - (1/c) q^-e)
        let inv = c.recip();
        let g = self.div_binomial(&inv, -e)?;
        Ok(g.shift(&Monomial::new(-inv, -e)))
    }
}

/// Scale a rational slice to integers by the lcm of its denominators.
fn integerize(xs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for x in xs {
        if !x.denom().is_one() {
            d = d.lcm(x.denom());
        }
    }
    let ints = xs
        .iter()
        .map(|x| {
            if d.is_one() {
                x.numer().clone()
            } else {
                x.numer() * (&d / x.denom())
            }
        })
        .collect();
    (ints, d)
}

fn convolve(f: &[BigInt], g: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().take(len - i).enumerate() {
            if !b.is_zero() {
                acc[i + j] += a * b;
            }
        }
    }
    acc
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let m = Monomial::new(c.abs(), k);
            let body = if k != 0 && c.abs().is_one() {
                m.to_string()
            } else if k == 0 {
                c.abs().to_string()
            } else {
                m.to_string()
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c.is_negative() { '-' } else { '+' })?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$inner(self, rhs)
            }
        }
        impl $tr<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                LaurentSeries::$inner(&self, &rhs)
            }
        }
        impl $tr<&LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$inner(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(&self)
    }
}

/// Sum of a list of series, truncated to the least precise summand.
pub fn sum_all<'a>(items: impl IntoIterator<Item = &'a LaurentSeries>, trunc: i64) -> LaurentSeries {
    items
        .into_iter()
        .fold(LaurentSeries::zero(trunc), |acc, s| acc.add(s))
}

/// Exact precision the caller can rely on when mixing windows.
pub fn common_trunc<'a>(items: impl IntoIterator<Item = &'a LaurentSeries>) -> Option<i64> {
    items.into_iter().map(|s| s.trunc()).min()
}
