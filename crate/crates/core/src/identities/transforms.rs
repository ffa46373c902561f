//! Basic hypergeometric transformations at monomial parameter values.
//!
//! Each transformation validates its formal-convergence preconditions, then
//! builds both sides independently with [`HyperTerm`] sums and products.
//! `Q = q^step` is the base.

use std::fmt;

use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qfunctions::{poch, FactorLen, HyperTerm};
use crate::rational::{frac, int, Rational};
use crate::series::{LaurentSeries, Monomial};

use FactorLen::Shifted;

pub trait Transformation: fmt::Debug + Send + Sync {
    fn name(&self) -> &'static str;
    fn validate(&self) -> Result<()>;
    fn lhs(&self, trunc: i64) -> Result<LaurentSeries>;
    fn rhs(&self, trunc: i64) -> Result<LaurentSeries>;
}

fn violated(msg: String) -> Error {
    Error::PreconditionViolated(msg)
}

fn nonzero(name: &str, m: &Monomial) -> Result<()> {
    if m.is_zero() {
        return Err(violated(format!("{name} must be nonzero")));
    }
    Ok(())
}

/// Zero, or exponent at least 1.
fn small(name: &str, m: &Monomial) -> Result<()> {
    if !m.is_zero() && m.exp < 1 {
        return Err(violated(format!("{name} = {m} needs exponent >= 1")));
    }
    Ok(())
}

fn step_ok(step: i64) -> Result<()> {
    if step < 1 {
        return Err(violated(format!("base q^{step} needs a positive exponent")));
    }
    Ok(())
}

/// Whether some factor `1 - base q^(k step)`, `k >= 0`, is zero.
fn has_zero_factor(base: &Monomial, step: i64) -> bool {
    !base.is_zero() && base.coeff.is_one() && base.exp <= 0 && (-base.exp) % step == 0
}

fn no_zero_factor(name: &str, base: &Monomial, step: i64) -> Result<()> {
    if has_zero_factor(base, step) {
        return Err(violated(format!("({name}; q^{step}) has a vanishing factor at {name} = {base}")));
    }
    Ok(())
}

fn inf(base: &Monomial, step: i64, t: i64) -> Result<LaurentSeries> {
    poch(base.clone(), step, None, t)
}

fn binomial(c: &Monomial, t: i64) -> LaurentSeries {
    LaurentSeries::one(t).mul_binomial(&c.coeff, c.exp)
}

/// `sum (a, b; Q)_n / (Q, c; Q)_n t^n = (b, at; Q)_inf / (c, t; Q)_inf sum (c/b, t; Q)_n / (Q, at; Q)_n b^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heine {
    pub step: i64,
    pub a: Monomial,
    pub b: Monomial,
    pub c: Monomial,
    pub t: Monomial,
}

impl Heine {
    pub fn new(step: i64, a: Monomial, b: Monomial, c: Monomial, t: Monomial) -> Self {
        Heine { step, a, b, c, t }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let step = rng.gen_range(1..=2);
        Heine::new(
            step,
            maybe_zero(rng, 0.2, 0, 2),
            random_monomial(rng, 1, 3),
            maybe_zero(rng, 0.1, 1, 4),
            random_monomial(rng, 1, 3),
        )
    }
}

fn hyper_2phi1(step: i64, a: &Monomial, b: &Monomial, c: &Monomial, z: &Monomial) -> HyperTerm {
    HyperTerm::new()
        .ratio(z.clone())
        .num(a.clone(), step, Shifted(0))
        .num(b.clone(), step, Shifted(0))
        .den(Monomial::q(step), step, Shifted(0))
        .den(c.clone(), step, Shifted(0))
}

impl Transformation for Heine {
    fn name(&self) -> &'static str {
        "heine"
    }

    fn validate(&self) -> Result<()> {
        step_ok(self.step)?;
        nonzero("b", &self.b)?;
        small("t", &self.t)?;
        small("b", &self.b)?;
        small("c", &self.c)?;
        small("at", &self.a.mul(&self.t))
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        hyper_2phi1(self.step, &self.a, &self.b, &self.c, &self.t).sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        let at = self.a.mul(&self.t);
        let cb = self.c.div(&self.b)?;
        let sum = hyper_2phi1(s, &cb, &self.t, &at, &self.b).sum(t)?;
        let num = inf(&self.b, s, t)?.mul(&inf(&at, s, t)?);
        let den = inf(&self.c, s, t)?.mul(&inf(&self.t, s, t)?);
        Ok(num.div(&den)?.mul(&sum))
    }
}

/// The `a -> infinity` form of [`Heine`] with `t = twist / a`:
/// `sum (-twist)^n Q^(n(n-1)/2) (b; Q)_n / (Q, c; Q)_n = (b, twist; Q)_inf / (c; Q)_inf sum (c/b; Q)_n / (Q, twist; Q)_n b^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeineLimit {
    pub step: i64,
    pub b: Monomial,
    pub c: Monomial,
    pub twist: Monomial,
}

impl HeineLimit {
    pub fn new(step: i64, b: Monomial, c: Monomial, twist: Monomial) -> Self {
        HeineLimit { step, b, c, twist }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        HeineLimit::new(
            rng.gen_range(1..=2),
            random_monomial(rng, 1, 3),
            maybe_zero(rng, 0.1, 1, 3),
            random_monomial(rng, 1, 2),
        )
    }
}

impl Transformation for HeineLimit {
    fn name(&self) -> &'static str {
        "heine-limit"
    }

    fn validate(&self) -> Result<()> {
        step_ok(self.step)?;
        nonzero("b", &self.b)?;
        small("b", &self.b)?;
        small("c", &self.c)?;
        small("twist", &self.twist)
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        HyperTerm::new()
            .ratio(-&self.twist)
            .q_power_half(s, -s, 0)
            .num(self.b.clone(), s, Shifted(0))
            .den(Monomial::q(s), s, Shifted(0))
            .den(self.c.clone(), s, Shifted(0))
            .sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        let sum = HyperTerm::new()
            .ratio(self.b.clone())
            .num(self.c.div(&self.b)?, s, Shifted(0))
            .den(Monomial::q(s), s, Shifted(0))
            .den(self.twist.clone(), s, Shifted(0))
            .sum(t)?;
        let num = inf(&self.b, s, t)?.mul(&inf(&self.twist, s, t)?);
        Ok(num.div(&inf(&self.c, s, t)?)?.mul(&sum))
    }
}

/// `sum (a, b; Q)_n / (Q, c; Q)_n t^n = (c/b, bt; Q)_inf / (c, t; Q)_inf sum (abt/c, b; Q)_n / (Q, bt; Q)_n (c/b)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedHeine {
    pub step: i64,
    pub a: Monomial,
    pub b: Monomial,
    pub c: Monomial,
    pub t: Monomial,
}

impl IteratedHeine {
    pub fn new(step: i64, a: Monomial, b: Monomial, c: Monomial, t: Monomial) -> Self {
        IteratedHeine { step, a, b, c, t }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let b = random_monomial(rng, 0, 2);
        let c = random_monomial(rng, b.exp + 1, b.exp + 2);
        IteratedHeine::new(
            rng.gen_range(1..=2),
            maybe_zero(rng, 0.2, 0, 2),
            b,
            c,
            random_monomial(rng, 1, 2),
        )
    }
}

impl Transformation for IteratedHeine {
    fn name(&self) -> &'static str {
        "iterated-heine"
    }

    fn validate(&self) -> Result<()> {
        step_ok(self.step)?;
        nonzero("b", &self.b)?;
        nonzero("c", &self.c)?;
        small("t", &self.t)?;
        small("c", &self.c)?;
        let cb = self.c.div(&self.b)?;
        if cb.exp < 1 {
            return Err(violated(format!("c/b = {cb} needs exponent >= 1")));
        }
        small("bt", &self.b.mul(&self.t))
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        hyper_2phi1(self.step, &self.a, &self.b, &self.c, &self.t).sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        let cb = self.c.div(&self.b)?;
        let bt = self.b.mul(&self.t);
        let abtc = self.a.mul(&bt).div(&self.c)?;
        let sum = hyper_2phi1(s, &abtc, &self.b, &bt, &cb).sum(t)?;
        let num = inf(&cb, s, t)?.mul(&inf(&bt, s, t)?);
        let den = inf(&self.c, s, t)?.mul(&inf(&self.t, s, t)?);
        Ok(num.div(&den)?.mul(&sum))
    }
}

/// `sum (x; Q)_n / (y; Q)_n Q^n = Q (x; Q)_inf / (y (1 - xQ/y) (y; Q)_inf) + (1 - Q/y) / (1 - xQ/y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asv {
    pub step: i64,
    pub x: Monomial,
    pub y: Monomial,
}

impl Asv {
    pub fn new(step: i64, x: Monomial, y: Monomial) -> Self {
        Asv { step, x, y }
    }

    /// Never produces `xQ/y = 1`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let step = rng.gen_range(1..=2);
            let x = maybe_zero(rng, 0.1, 1, 3);
            let y = random_monomial(rng, 1, 3);
            let r = x.shift(step).mul(&y.inverse().unwrap());
            if r != Monomial::one() {
                return Asv::new(step, x, y);
            }
        }
    }
}

impl Transformation for Asv {
    fn name(&self) -> &'static str {
        "asv"
    }

    fn validate(&self) -> Result<()> {
        step_ok(self.step)?;
        nonzero("y", &self.y)?;
        small("x", &self.x)?;
        small("y", &self.y)
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        HyperTerm::new()
            .ratio(Monomial::q(s))
            .num(self.x.clone(), s, Shifted(0))
            .den(self.y.clone(), s, Shifted(0))
            .sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let s = self.step;
        let qy = Monomial::q(s).div(&self.y)?;
        let r = self.x.mul(&qy);
        let first = inf(&self.x, s, t)?
            .div(&inf(&self.y, s, t)?)?
            .shift(&qy)
            .div_binomial(&r.coeff, r.exp)?;
        let second = binomial(&qy, t).div_binomial(&r.coeff, r.exp)?;
        Ok(first.add(&second))
    }
}

/// The three-sum partial theta transformation, base `q`:
///
/// ```text
/// sum (B, -Abq)_n q^n / (-aq, -bq)_n
///   = -a^-1 (B, -Abq)_inf / (-bq, -aq)_inf sum (1/A)_n / (-B/a)_(n+1) (Abq/a)^n
///     + (1 + b) sum (-1/a)_(n+1) (-ABq/a)_n / (-B/a, Abq/a)_(n+1) (-b)^n
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTheta {
    pub a: Monomial,
    pub b: Monomial,
    pub big_a: Monomial,
    pub big_b: Monomial,
}

impl PartialTheta {
    pub fn new(a: Monomial, b: Monomial, big_a: Monomial, big_b: Monomial) -> Self {
        PartialTheta { a, b, big_a, big_b }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        PartialTheta::new(
            random_monomial(rng, -1, 2),
            maybe_zero(rng, 0.25, 1, 2),
            random_monomial(rng, -1, 2),
            random_monomial(rng, -1, 2),
        )
    }

    fn abq_a(&self) -> Result<Monomial> {
        self.big_a.mul(&self.b).shift(1).div(&self.a)
    }
}

impl Transformation for PartialTheta {
    fn name(&self) -> &'static str {
        "partial-theta"
    }

    fn validate(&self) -> Result<()> {
        nonzero("a", &self.a)?;
        nonzero("A", &self.big_a)?;
        small("b", &self.b)?;
        let abq_a = self.abq_a()?;
        small("Abq/a", &abq_a)?;
        let minus_aq = -self.a.shift(1);
        let minus_bq = -self.b.shift(1);
        let minus_b_a = -self.big_b.div(&self.a)?;
        no_zero_factor("-aq", &minus_aq, 1)?;
        no_zero_factor("-bq", &minus_bq, 1)?;
        no_zero_factor("-B/a", &minus_b_a, 1)?;
        no_zero_factor("Abq/a", &abq_a, 1)?;
        no_zero_factor("B", &self.big_b, 1)?;
        no_zero_factor("-Abq", &-self.big_a.mul(&self.b).shift(1), 1)
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        HyperTerm::new()
            .ratio(Monomial::q(1))
            .num(self.big_b.clone(), 1, Shifted(0))
            .num(-self.big_a.mul(&self.b).shift(1), 1, Shifted(0))
            .den(-self.a.shift(1), 1, Shifted(0))
            .den(-self.b.shift(1), 1, Shifted(0))
            .sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let a_inv = self.a.inverse()?;
        let abq_a = self.abq_a()?;
        let minus_b_a = -self.big_b.div(&self.a)?;
        let minus_abq = -self.big_a.mul(&self.b).shift(1);
        let s1 = HyperTerm::new()
            .ratio(abq_a.clone())
            .num(self.big_a.inverse()?, 1, Shifted(0))
            .den(minus_b_a.clone(), 1, Shifted(1))
            .sum(t)?;
        let num = inf(&self.big_b, 1, t)?.mul(&inf(&minus_abq, 1, t)?);
        let den = inf(&-self.b.shift(1), 1, t)?.mul(&inf(&-self.a.shift(1), 1, t)?);
        let first = num.div(&den)?.mul(&s1).shift(&-&a_inv);
        let s2 = HyperTerm::new()
            .ratio(-&self.b)
            .num(-&a_inv, 1, Shifted(1))
            .num(-self.big_a.mul(&self.big_b).shift(1).div(&self.a)?, 1, Shifted(0))
            .den(minus_b_a, 1, Shifted(1))
            .den(abq_a, 1, Shifted(1))
            .sum(t)?;
        let second = binomial(&-&self.b, t).mul(&s2);
        Ok(first.add(&second))
    }
}

/// The two-term corollary on the `q^2` lattice:
///
/// ```text
/// sum (-Bq^2, -Aq^2; q^2)_n / (-aq^2; q^2)_n q^(2n)
///   = -a^-1 (-Bq^2, -Aq^2; q^2)_inf / (-aq^2; q^2)_inf sum (Aq^2/a)^n / (Bq^2/a; q^2)_(n+1)
///     + sum (-1/a; q^2)_(n+1) / (Bq^2/a, Aq^2/a; q^2)_(n+1) (AB/a)^n q^(n^2+3n)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialThetaCorollary {
    pub a: Monomial,
    pub big_a: Monomial,
    pub big_b: Monomial,
}

impl PartialThetaCorollary {
    pub fn new(a: Monomial, big_a: Monomial, big_b: Monomial) -> Self {
        PartialThetaCorollary { a, big_a, big_b }
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        PartialThetaCorollary::new(
            random_monomial(rng, -1, 2),
            random_monomial(rng, -1, 2),
            random_monomial(rng, -1, 2),
        )
    }
}

impl Transformation for PartialThetaCorollary {
    fn name(&self) -> &'static str {
        "partial-theta-corollary"
    }

    fn validate(&self) -> Result<()> {
        nonzero("a", &self.a)?;
        let aq_a = self.big_a.shift(2).div(&self.a)?;
        let bq_a = self.big_b.shift(2).div(&self.a)?;
        small("Aq^2/a", &aq_a)?;
        no_zero_factor("-aq^2", &-self.a.shift(2), 2)?;
        no_zero_factor("Bq^2/a", &bq_a, 2)?;
        no_zero_factor("Aq^2/a", &aq_a, 2)?;
        no_zero_factor("-Bq^2", &-self.big_b.shift(2), 2)?;
        no_zero_factor("-Aq^2", &-self.big_a.shift(2), 2)
    }

    fn lhs(&self, t: i64) -> Result<LaurentSeries> {
        HyperTerm::new()
            .ratio(Monomial::q(2))
            .num(-self.big_b.shift(2), 2, Shifted(0))
            .num(-self.big_a.shift(2), 2, Shifted(0))
            .den(-self.a.shift(2), 2, Shifted(0))
            .sum(t)
    }

    fn rhs(&self, t: i64) -> Result<LaurentSeries> {
        let a_inv = self.a.inverse()?;
        let aq_a = self.big_a.shift(2).div(&self.a)?;
        let bq_a = self.big_b.shift(2).div(&self.a)?;
        let s1 = HyperTerm::new()
            .ratio(aq_a.clone())
            .den(bq_a.clone(), 2, Shifted(1))
            .sum(t)?;
        let num = inf(&-self.big_b.shift(2), 2, t)?.mul(&inf(&-self.big_a.shift(2), 2, t)?);
        let first = num
            .div(&inf(&-self.a.shift(2), 2, t)?)?
            .mul(&s1)
            .shift(&-&a_inv);
        let second = HyperTerm::new()
            .ratio(self.big_a.mul(&self.big_b).div(&self.a)?)
            .q_power(1, 3, 0)
            .num(-&a_inv, 2, Shifted(1))
            .den(bq_a, 2, Shifted(1))
            .den(aq_a, 2, Shifted(1))
            .sum(t)?;
        Ok(first.add(&second))
    }
}

// Random parameters.

fn random_coeff<R: Rng>(rng: &mut R) -> Rational {
    const POOL: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-1, 3)];
    let (n, d) = POOL[rng.gen_range(0..POOL.len())];
    if d == 1 {
        int(n)
    } else {
        frac(n, d)
    }
}

fn random_monomial<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Monomial {
    let c = random_coeff(rng);
    Monomial::new(c, rng.gen_range(lo..=hi))
}

fn maybe_zero<R: Rng>(rng: &mut R, p: f64, lo: i64, hi: i64) -> Monomial {
    if rng.gen_bool(p) {
        Monomial::zero()
    } else {
        random_monomial(rng, lo, hi)
    }
}

/// Draw from `gen` until the candidate passes validation.
pub fn sample_valid<T, R, G>(rng: &mut R, gen: G) -> T
where
    T: Transformation,
    R: Rng,
    G: Fn(&mut R) -> T,
{
    for _ in 0..10_000 {
        let cand = gen(rng);
        if cand.validate().is_ok() {
            return cand;
        }
    }
    panic!("no valid parameters found");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(c: i64, e: i64) -> Monomial {
        Monomial::int(c, e)
    }

    fn agree(tr: &dyn Transformation, t: i64) {
        tr.validate().unwrap();
        let l = tr.lhs(t).unwrap();
        let r = tr.rhs(t + 8).unwrap();
        assert!(r.trunc() >= t.min(l.trunc()), "{tr:?}: rhs only to {}", r.trunc());
        assert_eq!(l.first_mismatch(&r), None, "{tr:?}");
    }

    #[test]
    fn heine_named() {
        agree(&Heine::new(2, m(-1, 0), m(1, 1), m(-1, 1), m(1, 2)), 40);
    }

    #[test]
    fn heine_zero_t_is_rejected() {
        let h = Heine::new(1, m(1, 1), m(1, 1), m(1, 2), m(1, 0));
        assert!(matches!(h.validate(), Err(Error::PreconditionViolated(msg)) if msg.contains('t')));
    }

    #[test]
    fn limit_named() {
        agree(&HeineLimit::new(2, m(1, 2), m(-1, 2), m(-2, 1)), 40);
        agree(&HeineLimit::new(2, m(1, 2), m(-1, 2), m(-1, 1)), 40);
        assert!(HeineLimit::new(2, m(1, 0), m(-1, 2), m(-1, 1)).validate().is_err());
    }

    #[test]
    fn iterated_named() {
        agree(&IteratedHeine::new(1, Monomial::zero(), m(1, 1), m(-1, 2), m(1, 1)), 40);
        assert!(IteratedHeine::new(1, m(1, 1), m(1, 1), m(-1, 1), m(1, 1)).validate().is_err());
    }

    #[test]
    fn asv_named() {
        agree(&Asv::new(2, m(-2, 2), m(-2, 3)), 40);
        agree(&Asv::new(2, m(-2, 1), m(-2, 2)), 40);
        agree(&Asv::new(1, m(3, 1), m(3, 1)), 40);
    }

    #[test]
    fn asv_with_vanishing_denominator_divides_by_zero() {
        // xQ/y = 1
        let a = Asv::new(1, m(1, 1), m(1, 2));
        assert!(a.validate().is_ok());
        assert_eq!(a.rhs(10), Err(Error::ZeroDivision));
    }

    #[test]
    fn corollary_named() {
        agree(&PartialThetaCorollary::new(m(1, 0), m(-1, 0), m(2, -1)), 40);
        agree(&PartialThetaCorollary::new(m(1, 1), m(-1, 1), m(2, 0)), 40);
        agree(&PartialThetaCorollary::new(m(1, 0), m(-1, 0), m(1, -1)), 40);
        agree(&PartialThetaCorollary::new(m(1, -1), m(1, -2), m(-1, -1)), 40);
    }

    #[test]
    fn partial_theta_degenerate_b() {
        agree(&PartialTheta::new(m(1, 1), Monomial::zero(), m(-1, 2), m(2, 1)), 40);
        let bad = PartialTheta::new(Monomial::zero(), m(1, 1), m(1, 1), m(1, 1));
        assert!(matches!(bad.validate(), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn random_tuples_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            agree(&sample_valid(&mut rng, Heine::random), 25);
            agree(&sample_valid(&mut rng, HeineLimit::random), 25);
            agree(&sample_valid(&mut rng, IteratedHeine::random), 25);
            agree(&sample_valid(&mut rng, Asv::random), 25);
            agree(&sample_valid(&mut rng, PartialTheta::random), 25);
            agree(&sample_valid(&mut rng, PartialThetaCorollary::random), 25);
        }
    }
}
