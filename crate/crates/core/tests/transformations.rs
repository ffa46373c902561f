use overpar::identities::{
    check_asv, check_heine, check_heine_limit, check_iterated_heine, check_partial_theta, check_ptc,
};
use overpar::{CheckReport, Error, Monomial};

fn m(c: i64, e: i64) -> Monomial {
    Monomial::int(c, e)
}

fn pass(r: overpar::Result<CheckReport>) {
    let r = r.unwrap();
    assert!(r.passed(), "{r}");
}

fn rejected(r: overpar::Result<CheckReport>, needle: &str) {
    match r {
        Err(Error::PreconditionViolated(msg)) => assert!(msg.contains(needle), "{msg}"),
        other => panic!("expected a precondition failure, got {other:?}"),
    }
}

#[test]
fn heine() {
    pass(check_heine(2, m(-1, 0), m(1, 1), m(-1, 1), m(1, 2), 80));
    rejected(check_heine(1, m(1, 1), m(1, 1), m(1, 2), m(1, 0), 20), "t =");
}

#[test]
fn heine_limit() {
    pass(check_heine_limit(2, m(1, 2), m(-1, 2), m(-2, 1), 80));
    pass(check_heine_limit(2, m(1, 2), m(-1, 2), m(-1, 1), 80));
    rejected(check_heine_limit(2, m(1, 0), m(-1, 2), m(-1, 1), 20), "b =");
}

#[test]
fn iterated_heine() {
    pass(check_iterated_heine(1, Monomial::zero(), m(1, 1), m(-1, 2), m(1, 1), 80));
    rejected(check_iterated_heine(1, m(1, 1), m(1, 1), m(2, 1), m(1, 1), 20), "c/b");
}

#[test]
fn asv() {
    pass(check_asv(2, m(-2, 2), m(-2, 3), 80));
    pass(check_asv(2, m(-2, 1), m(-2, 2), 80));
    pass(check_asv(1, m(5, 2), m(5, 2), 40));
    assert_eq!(check_asv(1, m(1, 1), m(1, 2), 20), Err(Error::ZeroDivision));
}

#[test]
fn partial_theta() {
    pass(check_partial_theta(m(2, 1), m(1, 1), m(-1, 1), m(3, 2), 40));
    pass(check_partial_theta(m(1, 1), Monomial::zero(), m(-1, 2), m(2, 1), 40));
    rejected(check_partial_theta(Monomial::zero(), m(1, 1), m(1, 1), m(1, 1), 20), "a must be nonzero");
}

#[test]
fn corollary() {
    pass(check_ptc(m(1, 0), m(-1, 0), m(2, -1), 80));
    pass(check_ptc(m(1, 1), m(-1, 1), m(2, 0), 80));
    pass(check_ptc(m(1, 0), m(-1, 0), m(1, -1), 80));
    pass(check_ptc(m(1, -1), m(1, -2), m(-1, -1), 80));
    // (-aq^2; q^2) with a = -q^-2 contains the factor 1 - 1
    rejected(check_ptc(m(-1, -2), m(1, 0), m(1, 0), 20), "-aq^2");
}

#[test]
fn report_round_trips_through_json() {
    let p = overpar::Perturbation::new(overpar::ExprTag::Closed, 5);
    let fail = overpar::check_with("T2.1", 20, Some(&p)).unwrap();
    let pass = overpar::check("T2.1", 20).unwrap();
    for r in [fail, pass] {
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&s).unwrap(), r);
    }
    let v: serde_json::Value = serde_json::to_value(overpar::check_with("T2.1", 20, Some(&p)).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["mismatch"]["exponent"], 5);
    assert!(v["mismatch"]["values"]["closed"].as_str().unwrap().contains('/'));
}
