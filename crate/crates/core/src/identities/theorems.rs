//! Series builders for the generating-function identities.
//!
//! Every builder takes the requested truncation and returns a series known at
//! least that far; the harness retries with more room when a Laurent
//! intermediate costs precision.

use crate::error::Result;
use crate::qfunctions::{pochhammer_in_a, poch, sigma, theta, phi, FactorLen, HyperTerm, PochhammerSpec};
use crate::qfunctions;
use crate::rational::{frac, int};
use crate::series::{LaurentSeries, Monomial};

use FactorLen::{Fixed, Infinite, Shifted};

fn m(c: i64, e: i64) -> Monomial {
    Monomial::int(c, e)
}

/// `(c q^e; q^step)_inf`.
fn inf(c: i64, e: i64, step: i64, t: i64) -> Result<LaurentSeries> {
    poch(m(c, e), step, None, t)
}

/// `(-q^2; q^2)_inf / (q^2; q^2)_inf`.
fn e_even(t: i64) -> Result<LaurentSeries> {
    inf(-1, 2, 2, t)?.div(&inf(1, 2, 2, t)?)
}

/// `(-q; q^2)_inf / (q; q^2)_inf`.
fn e_odd(t: i64) -> Result<LaurentSeries> {
    inf(-1, 1, 2, t)?.div(&inf(1, 1, 2, t)?)
}

/// `c q^e / (1 - q)`.
fn over_one_minus_q(c: i64, e: i64, t: i64) -> Result<LaurentSeries> {
    LaurentSeries::from_monomial(&m(c, e), t).div_binomial(&int(1), 1)
}

fn mono(c: i64, e: i64, t: i64) -> LaurentSeries {
    LaurentSeries::from_monomial(&m(c, e), t)
}

fn one(t: i64) -> LaurentSeries {
    LaurentSeries::one(t)
}

// Overlined families.

pub fn t1_1_closed(t: i64) -> Result<LaurentSeries> {
    let th = theta(t);
    Ok(e_even(t)?.mul(&one(t).add(&th.mul(&th))).scale(&frac(1, 2)))
}

/// Sum over the largest even part, then one Heine step.
pub fn t1_1_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 0), 2, Shifted(0))
        .num(m(1, 1), 2, Shifted(0))
        .den(m(1, 2), 2, Shifted(0))
        .den(m(-1, 1), 2, Shifted(0))
        .sum(t)?;
    Ok(e_odd(t)?.mul(&s))
}

pub fn t1_2_closed(t: i64) -> Result<LaurentSeries> {
    let e = e_even(t)?;
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 1), 2, Shifted(0))
        .num(m(1, 2), 2, Shifted(0))
        .den(m(1, 3), 2, Shifted(0))
        .den(m(-1, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(e.add(&over_one_minus_q(2, 1, t)?.mul(&e).mul(&s)))
}

/// Largest odd part `2n+1`, everything even above it.
pub fn t1_2_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 2))
        .q_power(0, 0, 1)
        .num(m(-1, 1), 2, Shifted(0))
        .den(m(1, 1), 2, Shifted(1))
        .num_drift(m(-1, 2), 2, 2, Infinite)
        .den_drift(m(1, 2), 2, 2, Infinite)
        .sum(t)?;
    Ok(e_even(t)?.add(&s))
}

pub fn t1_3_closed(t: i64) -> Result<LaurentSeries> {
    let odd = inf(-2, 1, 2, t)?;
    let even = inf(-2, 2, 2, t)?;
    let r = over_one_minus_q(1, 1, t)?;
    Ok(odd.sub(&r.mul(&even)).add(&r.mul(&odd)))
}

pub fn t1_3_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-2, 2), 2, Shifted(0))
        .den(m(-2, 3), 2, Shifted(0))
        .sum(t)?;
    Ok(inf(-2, 1, 2, t)?.add(&mono(2, 2, t).mul(&inf(-2, 3, 2, t)?).mul(&s)))
}

pub fn t1_4_closed(t: i64) -> Result<LaurentSeries> {
    let odd = inf(-2, 1, 2, t)?;
    let even = inf(-2, 2, 2, t)?;
    let r = over_one_minus_q(1, 1, t)?;
    Ok(even.add(&r.mul(&even.scale(&int(3)).sub(&odd))))
}

pub fn t1_4_construction(t: i64) -> Result<LaurentSeries> {
    let even = inf(-2, 2, 2, t)?;
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-2, 1), 2, Shifted(0))
        .den(m(-2, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(even.add(&mono(2, 1, t).mul(&even).mul(&s)))
}

pub fn t1_5_closed(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(2, 0))
        .q_power(1, 0, 0)
        .den(m(-1, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(e_even(t)?.mul(&s))
}

pub fn t1_5_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 0), 2, Shifted(0))
        .den(m(-2, 1), 2, Shifted(0))
        .den(m(1, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(inf(-2, 1, 2, t)?.mul(&s))
}

/// `sum (-1)^n q^(2n) / (2q; q^2)_(n+1)`.
fn alternating_over_2q(t: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .ratio(m(-1, 2))
        .den(m(2, 1), 2, Shifted(1))
        .sum(t)
}

pub fn t1_6_closed(t: i64) -> Result<LaurentSeries> {
    let e = e_even(t)?;
    let s1 = alternating_over_2q(t)?;
    let s2 = HyperTerm::new()
        .ratio(m(-2, 0))
        .q_power(1, 2, 0)
        .den_drift(m(-1, 2), 2, 2, Fixed(1))
        .den(m(2, 1), 2, Shifted(1))
        .sum(t)?;
    let first = mono(2, 1, t).mul(&inf(-2, 1, 2, t)?).mul(&s1);
    let second = mono(4, 1, t).mul(&e).mul(&s2);
    Ok(e.sub(&first).add(&second))
}

pub fn t1_6_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 2))
        .q_power(0, 0, 1)
        .num(m(-2, 1), 2, Shifted(0))
        .num_drift(m(-1, 2), 2, 2, Infinite)
        .den_drift(m(1, 2), 2, 2, Infinite)
        .sum(t)?;
    Ok(e_even(t)?.add(&s))
}

pub fn t1_7_closed(t: i64) -> Result<LaurentSeries> {
    let s1 = alternating_over_2q(t)?;
    let s3 = HyperTerm::new()
        .ratio(m(-2, 0))
        .q_power(1, 3, 0)
        .num(m(-1, 1), 2, Shifted(0))
        .den(m(2, 1), 2, Shifted(1))
        .den(m(-1, 2), 2, Shifted(1))
        .sum(t)?;
    let first = mono(2, 1, t).mul(&inf(-2, 2, 2, t)?).mul(&s1);
    let pre = mono(2, 1, t).mul(&inf(-1, 1, 2, t)?).div(&inf(1, 3, 2, t)?)?;
    Ok(e_odd(t)?.sub(&first).add(&pre.mul(&s3)))
}

pub fn t1_7_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 2))
        .q_power(0, 0, 2)
        .num(m(-2, 2), 2, Shifted(0))
        .num_drift(m(-1, 3), 2, 2, Infinite)
        .den_drift(m(1, 3), 2, 2, Infinite)
        .sum(t)?;
    Ok(e_odd(t)?.add(&s))
}

pub fn t1_8_closed(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 2))
        .q_power(0, 0, 1)
        .num(m(-1, 1), 2, Shifted(0))
        .num_drift(m(-2, 2), 2, 2, Infinite)
        .den(m(1, 1), 2, Shifted(1))
        .sum(t)?;
    Ok(inf(-2, 2, 2, t)?.add(&s))
}

pub fn t1_8_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 1), 2, Shifted(0))
        .den(m(1, 3), 2, Shifted(0))
        .den(m(-2, 2), 2, Shifted(0))
        .sum(t)?;
    let inner = one(t).add(&over_one_minus_q(2, 1, t)?.mul(&s));
    Ok(inf(-2, 2, 2, t)?.mul(&inner))
}

// Modified families.

pub fn t2_1_closed(t: i64) -> Result<LaurentSeries> {
    Ok(e_even(t)?.mul(&phi(t)?))
}

pub fn t2_1_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 0), 2, Shifted(0))
        .den(m(1, 2), 2, Shifted(0))
        .den(m(-1, 1), 2, Shifted(0))
        .sum(t)?;
    Ok(inf(-1, 1, 2, t)?.mul(&s))
}

/// `sum q^n / (-q^2; q^2)_(n+1)`.
fn geometric_over_even(t: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .ratio(m(1, 1))
        .den(m(-1, 2), 2, Shifted(1))
        .sum(t)
}

pub fn t2_2_closed(t: i64) -> Result<LaurentSeries> {
    let e = e_even(t)?;
    let sa = geometric_over_even(t)?;
    let sb = HyperTerm::new()
        .ratio(m(-1, 0))
        .q_power(1, 2, 0)
        .den_drift(m(-1, 2), 2, 2, Fixed(1))
        .den(m(1, 1), 2, Shifted(1))
        .sum(t)?;
    let first = mono(1, 1, t).mul(&inf(-1, 1, 2, t)?).mul(&sa);
    Ok(e.sub(&first).add(&mono(2, 1, t).mul(&e).mul(&sb)))
}

pub fn t2_2_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 1), 2, Shifted(0))
        .num(m(1, 2), 2, Shifted(0))
        .den(m(-1, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(e_even(t)?.mul(&one(t).add(&mono(1, 1, t).mul(&s))))
}

pub fn t2_3_closed(t: i64) -> Result<LaurentSeries> {
    let sa = geometric_over_even(t)?;
    let sd = HyperTerm::new()
        .ratio(m(-1, 0))
        .q_power(1, 1, 0)
        .num(m(-1, 1), 2, Shifted(1))
        .den(m(-1, 2), 2, Shifted(1))
        .den(m(1, 1), 2, Shifted(1))
        .sum(t)?;
    let first = mono(1, 1, t).mul(&inf(-1, 2, 2, t)?).mul(&sa);
    let second = e_odd(t)?.mul(&one(t).add(&sd)).scale(&frac(1, 2));
    Ok(second.sub(&first))
}

pub fn t2_3_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(1, 1), 2, Shifted(0))
        .num(m(-1, 0), 2, Shifted(0))
        .den(m(-1, 1), 2, Shifted(0))
        .sum(t)?;
    Ok(e_odd(t)?.mul(&one(t).add(&s)).scale(&frac(1, 2)))
}

pub fn t2_4_closed(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .num(m(-1, 1), 2, Shifted(0))
        .den(m(1, 1), 2, Shifted(1))
        .den(m(-1, 2), 2, Shifted(0))
        .sum(t)?;
    Ok(inf(-1, 2, 2, t)?.mul(&one(t).add(&mono(2, 1, t).mul(&s))))
}

/// Largest odd part `2n+1`, distinct plain evens above it.
pub fn t2_4_construction(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 2))
        .q_power(0, 0, 1)
        .num(m(-1, 1), 2, Shifted(0))
        .den(m(1, 1), 2, Shifted(1))
        .num_drift(m(-1, 2), 2, 2, Infinite)
        .sum(t)?;
    Ok(inf(-1, 2, 2, t)?.add(&s))
}

// Plain families.

pub fn bg1_closed(t: i64) -> Result<LaurentSeries> {
    one(t).div_binomial(&int(1), 1)?.div(&inf(1, 2, 2, t)?)
}

pub fn bg2_closed(t: i64) -> Result<LaurentSeries> {
    let sigma_neg = sigma(t)?.substitute_sign();
    let euler_neg = qfunctions::pochhammer(&PochhammerSpec::infinite(m(-1, 1), 1).with_negative_step(), t)?;
    let inner = one(t)
        .sub(&sigma_neg.scale(&frac(1, 2)))
        .add(&euler_neg.scale(&frac(1, 2)));
    inner.div(&inf(1, 2, 2, t)?)
}

/// Plain `ed^od`: distinct evens below distinct odds.
pub fn ed_od_plain(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .q_power(0, 0, 2)
        .num(m(-1, 2), 2, Shifted(0))
        .num_drift(m(-1, 3), 2, 2, Infinite)
        .sum(t)?;
    Ok(inf(-1, 1, 2, t)?.add(&s))
}

/// Plain `od^ed`: distinct odds below distinct evens.
pub fn od_ed_plain(t: i64) -> Result<LaurentSeries> {
    let s = HyperTerm::new()
        .ratio(m(1, 2))
        .q_power(0, 0, 1)
        .num(m(-1, 1), 2, Shifted(0))
        .num_drift(m(-1, 2), 2, 2, Infinite)
        .sum(t)?;
    Ok(inf(-1, 2, 2, t)?.add(&s))
}

// Auxiliary identities.

/// `1 + (1/2) sum_{n>=1} r_2(n) q^n`, with `r_2` counted over lattice points.
pub fn lattice_half(t: i64) -> Result<LaurentSeries> {
    let len = t.max(0) as usize;
    let mut r2 = vec![0i64; len];
    let mut x = 0i64;
    while x * x < t {
        let mut y = 0i64;
        while x * x + y * y < t {
            let signs = if x == 0 { 1 } else { 2 } * if y == 0 { 1 } else { 2 };
            r2[(x * x + y * y) as usize] += signs;
            y += 1;
        }
        x += 1;
    }
    Ok(LaurentSeries::from_fn(0, t, |n| {
        if n == 0 {
            int(1)
        } else {
            frac(r2[n as usize], 2)
        }
    }))
}

/// `2 sum_{n>=0} q^n / (1 + q^(2n))`.
pub fn lambert_r2(t: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .scalar(int(2))
        .ratio(m(1, 1))
        .den_drift(m(-1, 0), 2, 1, Fixed(1))
        .sum(t)
}

pub fn theta_half(t: i64) -> Result<LaurentSeries> {
    let th = theta(t);
    Ok(one(t).add(&th.mul(&th)).scale(&frac(1, 2)))
}

/// `sum (-1)^n q^(2n) / (q; q^2)_(n+1)`.
pub fn x_ih_left(t: i64) -> Result<LaurentSeries> {
    HyperTerm::new()
        .ratio(m(-1, 2))
        .den(m(1, 1), 2, Shifted(1))
        .sum(t)
}

pub fn x_ih_right(t: i64) -> Result<LaurentSeries> {
    geometric_over_even(t)
}

/// Coefficient of `a^n` in `(a; q)_n`.
pub fn top_coefficient_in_a(n: u64, t: i64) -> LaurentSeries {
    pochhammer_in_a(n, t).pop().unwrap()
}

/// `(-1)^n q^(n(n-1)/2)`.
pub fn top_coefficient_closed(n: u64, t: i64) -> LaurentSeries {
    let n = n as i64;
    mono(if n % 2 == 0 { 1 } else { -1 }, n * (n - 1) / 2, t)
}
