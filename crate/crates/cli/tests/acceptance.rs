//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so the
//! lines are printed even when cargo captures test output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use overpar::identities::{
    check_asv, check_heine, check_heine_limit, check_iterated_heine, check_partial_theta, check_ptc,
    closed_form_entry, Group,
};
use overpar::{
    check, check_with, count_overpartitions, count_sep, enumerate_sep, lookup, registry, series_sep,
    CheckReport, Error, ExprTag, LaurentSeries, Monomial, Perturbation, Rational, SepConfig, Variant,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(id: &str, r: overpar::Result<CheckReport>) -> Result<(), String> {
    match r {
        Ok(r) if r.passed() => Ok(()),
        Ok(r) => Err(r.to_string()),
        Err(e) => Err(format!("{id}: {e}")),
    }
}

fn spot_values() -> Outcome {
    let od_eu: SepConfig = "od^eu".parse().unwrap();
    let over = count_sep(&od_eu, Variant::Overlined, 3);
    let modified = count_sep(&od_eu, Variant::Modified, 3);
    let all = count_overpartitions(3);
    ensure(over == BigUint::from(6u32), || format!("overlined od^eu(3) = {over}"))?;
    ensure(modified == BigUint::from(3u32), || format!("modified od^eu(3) = {modified}"))?;
    ensure(all == BigUint::from(8u32), || format!("overpartitions of 3 = {all}"))?;
    for (v, want) in [(Variant::Overlined, 6), (Variant::Modified, 3)] {
        let entry = closed_form_entry(&od_eu, v).ok_or(format!("no closed form for {v} od^eu"))?;
        let closed = entry.expression(ExprTag::Closed).unwrap().evaluate(0, 4).map_err(|e| e.to_string())?;
        let c = closed.coefficient(3).unwrap();
        ensure(c == Rational::from_integer(want.into()), || format!("{} closed form gives {c} at n=3", entry.id))?;
    }
    Ok("6, 3 and 8 from enumeration and closed forms".into())
}

fn theorem_suite() -> Outcome {
    let ids: Vec<_> = registry().iter().filter(|e| e.group == Group::Theorem).collect();
    ensure(ids.len() == 12, || format!("{} theorem entries", ids.len()))?;
    let mut three_way = 0;
    for e in &ids {
        ensure(e.expression(ExprTag::Oracle).is_some() && e.expression(ExprTag::Closed).is_some(), || {
            format!("{} lacks an oracle or closed form", e.id)
        })?;
        if e.expression(ExprTag::Construction).is_some() {
            three_way += 1;
        }
        passed(&e.id, check(&e.id, 100))?;
    }
    Ok(format!("12 entries at order 100, {three_way} compared three ways, single thread"))
}

fn background_suite() -> Outcome {
    let ids = ["BG1", "BG2", "RED1", "RED2", "RED3", "RED4", "X-R2", "X-IH", "L-LIM"];
    let failures: Vec<String> = ids
        .par_iter()
        .filter_map(|id| {
            let order = lookup(id).map(|e| e.default_order).unwrap_or(100);
            passed(id, check(id, order)).err()
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    let xr2 = lookup("X-R2").unwrap().default_order;
    ensure(xr2 >= 500, || format!("X-R2 checked only to {xr2}"))?;
    Ok(format!("{} entries, X-R2 to order {xr2}", ids.len()))
}

fn m(c: i64, e: i64) -> Monomial {
    Monomial::int(c, e)
}

fn rejected(r: overpar::Result<CheckReport>) -> bool {
    matches!(r, Err(Error::PreconditionViolated(_)))
}

fn transformation_suite() -> Outcome {
    let named: Vec<&str> = registry()
        .iter()
        .filter(|e| e.group == Group::Transformation && !e.id.ends_with("-RAND"))
        .map(|e| e.id.as_str())
        .collect();
    let random: Vec<&str> = registry()
        .iter()
        .filter(|e| e.id.ends_with("-RAND"))
        .map(|e| e.id.as_str())
        .collect();
    let jobs: Vec<(&str, i64)> = named.iter().map(|id| (*id, 200)).chain(random.iter().map(|id| (*id, 60))).collect();
    let failures: Vec<String> = jobs.par_iter().filter_map(|(id, o)| passed(id, check(id, *o)).err()).collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    for id in &random {
        let c = lookup(id).unwrap().components;
        ensure(c >= 50, || format!("{id} has only {c} tuples"))?;
    }

    let invalid = [
        ("heine t of exponent 0", check_heine(1, m(1, 1), m(1, 1), m(1, 2), m(1, 0), 20)),
        ("heine step 0", check_heine(0, m(1, 1), m(1, 1), m(1, 2), m(1, 1), 20)),
        ("heine b = 0", check_heine(1, m(1, 1), Monomial::zero(), m(1, 2), m(1, 1), 20)),
        ("heine limit b of exponent 0", check_heine_limit(2, m(1, 0), m(-1, 2), m(-1, 1), 20)),
        ("heine limit twist of exponent -1", check_heine_limit(1, m(1, 1), m(1, 1), m(1, -1), 20)),
        ("iterated heine c/b of exponent 0", check_iterated_heine(1, m(1, 1), m(1, 1), m(2, 1), m(1, 1), 20)),
        ("asv x of exponent 0", check_asv(1, m(1, 0), m(1, 1), 20)),
        ("asv y = 0", check_asv(1, m(1, 1), Monomial::zero(), 20)),
        ("partial theta a = 0", check_partial_theta(Monomial::zero(), m(1, 1), m(1, 1), m(1, 1), 20)),
        ("corollary with a zero factor", check_ptc(m(-1, -2), m(1, 0), m(1, 0), 20)),
    ];
    let bad: Vec<&str> = invalid.iter().filter(|(_, r)| !rejected(clone_result(r))).map(|(n, _)| *n).collect();
    ensure(bad.is_empty(), || format!("accepted invalid tuples: {}", bad.join(", ")))?;
    Ok(format!(
        "{} named at order 200, {} random checkers x 50 tuples at order 60, {} invalid tuples rejected",
        named.len(),
        random.len(),
        invalid.len()
    ))
}

fn clone_result(r: &overpar::Result<CheckReport>) -> overpar::Result<CheckReport> {
    match r {
        Ok(r) => Ok(r.clone()),
        Err(Error::PreconditionViolated(s)) => Err(Error::PreconditionViolated(s.clone())),
        Err(e) => Err(Error::UnknownIdentity(e.to_string())),
    }
}

fn oracle_independence() -> Outcome {
    let pairs: Vec<(SepConfig, Variant)> = SepConfig::all()
        .into_iter()
        .flat_map(|c| Variant::all().into_iter().map(move |v| (c, v)))
        .collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(cfg, v)| {
            let series = series_sep(cfg, *v, 31);
            for n in 0..=30u64 {
                let listed = BigUint::from(enumerate_sep(cfg, *v, n).len());
                let dp = series.coefficient(n as i64).unwrap();
                if Rational::from_integer(BigInt::from(listed.clone())) != dp || count_sep(cfg, *v, n) != listed {
                    return Some(format!("{v} {cfg} n={n}: listed {listed}, weighted {dp}"));
                }
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} series, n <= 30", pairs.len()))
}

fn integrality() -> Outcome {
    let mut families = Vec::new();
    for cfg in SepConfig::all() {
        for v in Variant::all() {
            if let Some(e) = closed_form_entry(&cfg, v) {
                families.push((cfg, v, e));
            }
        }
    }
    let failures: Vec<String> = families
        .par_iter()
        .filter_map(|(cfg, v, e)| {
            let s = match e.expression(ExprTag::Closed).unwrap().evaluate(0, 200) {
                Ok(s) => s,
                Err(err) => return Some(format!("{}: {err}", e.id)),
            };
            let bad = (0..200).find(|&n| {
                let c = s.coefficient(n).unwrap();
                !c.is_integer() || c < Rational::from_integer(0.into())
            });
            bad.map(|n| format!("{} ({v} {cfg}) coefficient {n} = {}", e.id, s.coefficient(n).unwrap()))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} family closed forms to order 200", families.len()))
}

fn mutation_sensitivity() -> Outcome {
    let entries: Vec<_> = registry().iter().filter(|e| e.expression(ExprTag::Closed).is_some()).collect();
    let order = 40;
    let failures: Vec<String> = entries
        .par_iter()
        .flat_map_iter(|e| [0i64, 13, order - 1].into_iter().map(move |k| (e, k)))
        .filter_map(|(e, k)| match check_with(&e.id, order, Some(&Perturbation::new(ExprTag::Closed, k))) {
            Ok(r) if !r.passed() && r.mismatch.as_ref().map(|m| m.exponent) == Some(k) => None,
            Ok(r) => Some(format!("{} +q^{k}: {r}", e.id)),
            Err(err) => Some(format!("{} +q^{k}: {err}", e.id)),
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} closed forms, each perturbed at q^0, q^13 and q^39", entries.len()))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=3)))
}

/// A truncated series and the exact polynomial it came from.
fn random_series(rng: &mut ChaCha8Rng) -> (LaurentSeries, LaurentSeries) {
    let vmin = rng.gen_range(-3..=3);
    let coeffs: Vec<Rational> = (0..rng.gen_range(1..10)).map(|_| random_rational(rng)).collect();
    let exact = LaurentSeries::from_fn(vmin, 120, |k| {
        coeffs.get((k - vmin) as usize).cloned().unwrap_or_else(|| Rational::from_integer(0.into()))
    });
    let window = vmin + rng.gen_range(1..8);
    (exact.truncate(window), exact)
}

fn sound(s: &LaurentSeries, exact: &LaurentSeries) -> Result<(), String> {
    ensure(exact.trunc() >= s.trunc(), || "reference too short".into())?;
    for k in s.vmin().min(exact.vmin())..s.trunc() {
        ensure(s.coefficient(k).unwrap() == exact.coefficient(k).unwrap(), || format!("wrong coefficient of q^{k}"))?;
    }
    Ok(())
}

fn property_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ((f, fe), (g, ge), (h, _)) = (random_series(rng), random_series(rng), random_series(rng));
    ensure(f.add(&g) == g.add(&f), || "addition not commutative".into())?;
    ensure(f.mul(&g) == g.mul(&f), || "multiplication not commutative".into())?;
    ensure(f.mul(&g).mul(&h) == f.mul(&g.mul(&h)), || "multiplication not associative".into())?;
    ensure(f.mul(&g.add(&h)) == f.mul(&g).add(&f.mul(&h)), || "not distributive".into())?;
    ensure(f.sub(&f).is_zero(), || "f - f is not zero".into())?;
    if !f.is_zero() {
        let v = f.val();
        let inv = f.invert().map_err(|e| e.to_string())?;
        ensure(f.mul(&inv) == LaurentSeries::one(f.trunc() - v), || "f * f^-1 is not 1".into())?;
        sound(&inv, &fe.invert().unwrap())?;
    }
    let p = rng.gen_range(1..4);
    ensure(f.mul(&g).substitute_sign() == f.substitute_sign().mul(&g.substitute_sign()), || "q -> -q".into())?;
    ensure(f.mul(&g).substitute_power(p) == f.substitute_power(p).mul(&g.substitute_power(p)), || "q -> q^m".into())?;
    sound(&f.mul(&g), &fe.mul(&ge))?;
    sound(&f.add(&g), &fe.add(&ge))?;
    if !g.is_zero() {
        sound(&f.div(&g).map_err(|e| e.to_string())?, &fe.div(&ge).unwrap())?;
    }
    let (c, e) = (random_rational(rng), rng.gen_range(-3..4));
    sound(&f.mul_binomial(&c, e), &fe.mul_binomial(&c, e))?;
    if let Ok(d) = f.div_binomial(&c, e) {
        sound(&d, &fe.div_binomial(&c, e).unwrap())?;
    }
    Ok(())
}

fn series_properties() -> Outcome {
    let cases = 1200;
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..cases {
        property_case(&mut rng).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!("{cases} randomized cases"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("spot values", spot_values),
        ("theorem suite", theorem_suite),
        ("background suite", background_suite),
        ("transformation suite", transformation_suite),
        ("oracle independence", oracle_independence),
        ("integrality and positivity", integrality),
        ("mutation sensitivity", mutation_sensitivity),
        ("series-core properties", series_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
