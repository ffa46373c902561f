use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::theorems::*;
use super::transforms::*;
use super::{sides, Expression, ExprTag, Group, IdentityEntry};
use crate::enumeration::{series_sep, SepConfig, Variant};
use crate::error::Result;
use crate::series::{LaurentSeries, Monomial};

const RANDOM_TUPLES: usize = 50;

fn fam(s: &str) -> SepConfig {
    s.parse().expect("valid family")
}

fn oracle(cfg: SepConfig, v: Variant) -> Expression {
    Expression::single(ExprTag::Oracle, move |t| Ok(series_sep(&cfg, v, t)))
}

type Build = fn(i64) -> Result<LaurentSeries>;

struct Spec {
    id: &'static str,
    group: Group,
    description: String,
    anchor: &'static str,
    families: Vec<(SepConfig, Variant)>,
    expressions: Vec<Expression>,
}

impl Spec {
    fn entry(self, default_order: i64) -> IdentityEntry {
        IdentityEntry {
            id: self.id.to_string(),
            group: self.group,
            description: self.description,
            anchor: self.anchor.to_string(),
            min_order: 1,
            default_order,
            families: self.families,
            components: 1,
            expressions: self.expressions,
        }
    }
}

fn family_entry(
    id: &'static str,
    family: &str,
    v: Variant,
    anchor: &'static str,
    construction: Option<Build>,
    closed: Build,
) -> IdentityEntry {
    let cfg = fam(family);
    let bar = match v {
        Variant::Overlined => "overlined",
        Variant::Modified => "modified",
        Variant::Plain => "plain",
    };
    let mut expressions = vec![oracle(cfg, v)];
    if let Some(c) = construction {
        expressions.push(Expression::single(ExprTag::Construction, c));
    }
    expressions.push(Expression::single(ExprTag::Closed, closed));
    let group = if id.starts_with('T') {
        Group::Theorem
    } else {
        Group::Background
    };
    Spec {
        id,
        group,
        description: format!("{bar} {cfg} generating function"),
        anchor,
        families: vec![(cfg, v)],
        expressions,
    }
    .entry(100)
}

fn reduction(id: &'static str, family: &str, other: Variant, anchor: &'static str, closed: Build) -> IdentityEntry {
    let cfg = fam(family);
    Spec {
        id,
        group: Group::Reduction,
        description: format!("modified {cfg} equals {} {cfg}", if other == Variant::Plain { "plain" } else { "overlined" }),
        anchor,
        families: vec![(cfg, Variant::Modified), (cfg, other)],
        expressions: vec![
            oracle(cfg, Variant::Modified),
            Expression::new(ExprTag::Construction, move |_, t| Ok(series_sep(&cfg, other, t))),
            Expression::single(ExprTag::Closed, closed),
        ],
    }
    .entry(100)
}

fn named<T: Transformation + 'static>(id: &'static str, description: &str, anchor: &'static str, tr: T) -> IdentityEntry {
    tr.validate().expect("named specialization is valid");
    Spec {
        id,
        group: Group::Transformation,
        description: format!("{description}: {tr:?}"),
        anchor,
        families: Vec::new(),
        expressions: sides(Arc::new(tr)).into(),
    }
    .entry(200)
}

fn randomized<T, G>(id: &'static str, description: &str, anchor: &'static str, seed: u64, gen: G) -> IdentityEntry
where
    T: Transformation + 'static,
    G: Fn(&mut ChaCha8Rng) -> T,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Arc<Vec<T>> = Arc::new((0..RANDOM_TUPLES).map(|_| sample_valid(&mut rng, &gen)).collect());
    let (l, r) = (tuples.clone(), tuples);
    IdentityEntry {
        id: id.to_string(),
        group: Group::Transformation,
        description: format!("{description}, {RANDOM_TUPLES} seeded parameter tuples"),
        anchor: anchor.to_string(),
        min_order: 1,
        default_order: 60,
        families: Vec::new(),
        components: RANDOM_TUPLES,
        expressions: vec![
            Expression::new(ExprTag::Construction, move |i, t| l[i].lhs(t)),
            Expression::new(ExprTag::Closed, move |i, t| r[i].rhs(t)),
        ],
    }
}

fn m(c: i64, e: i64) -> Monomial {
    Monomial::int(c, e)
}

const HEINE: &str = "sum (a,b;Q)_n t^n/(Q,c;Q)_n = (b,at;Q)_inf/(c,t;Q)_inf sum (c/b,t;Q)_n b^n/(Q,at;Q)_n";
const HEINE_LIMIT: &str =
    "sum (-z)^n Q^(n(n-1)/2) (b;Q)_n/(Q,c;Q)_n = (b,z;Q)_inf/(c;Q)_inf sum (c/b;Q)_n b^n/(Q,z;Q)_n";
const ITERATED: &str =
    "sum (a,b;Q)_n t^n/(Q,c;Q)_n = (c/b,bt;Q)_inf/(c,t;Q)_inf sum (abt/c,b;Q)_n (c/b)^n/(Q,bt;Q)_n";
const ASV: &str = "sum (x;Q)_n Q^n/(y;Q)_n = Q(x;Q)_inf/(y(1-xQ/y)(y;Q)_inf) + (1-Q/y)/(1-xQ/y)";
const PT: &str = "sum (B,-Abq)_n q^n/(-aq,-bq)_n = -(B,-Abq)_inf/(a(-bq,-aq)_inf) sum (1/A)_n (Abq/a)^n/(-B/a)_(n+1) \
                  + (1+b) sum (-1/a)_(n+1) (-ABq/a)_n (-b)^n/(-B/a,Abq/a)_(n+1)";
const PTC: &str = "sum (-Bq^2,-Aq^2;q^2)_n q^(2n)/(-aq^2;q^2)_n = -(-Bq^2,-Aq^2;q^2)_inf/(a(-aq^2;q^2)_inf) \
                   sum (Aq^2/a)^n/(Bq^2/a;q^2)_(n+1) + sum (-1/a;q^2)_(n+1) (AB/a)^n q^(n^2+3n)/(Bq^2/a,Aq^2/a;q^2)_(n+1)";

pub(super) fn build() -> Vec<IdentityEntry> {
    use Variant::{Modified, Overlined, Plain};
    let mut out = vec![
        family_entry(
            "T1.1",
            "eu^ou",
            Overlined,
            "(-q^2;q^2)_inf (1 + theta^2) / (2 (q^2;q^2)_inf)",
            Some(t1_1_construction),
            t1_1_closed,
        ),
        family_entry(
            "T1.2",
            "ou^eu",
            Overlined,
            "E + 2q/(1-q) E sum (-q,q^2;q^2)_n q^(2n)/(q^3,-q^2;q^2)_n, E = (-q^2;q^2)_inf/(q^2;q^2)_inf",
            Some(t1_2_construction),
            t1_2_closed,
        ),
        family_entry(
            "T1.3",
            "ed^od",
            Overlined,
            "(-2q;q^2)_inf - q/(1-q) (-2q^2;q^2)_inf + q/(1-q) (-2q;q^2)_inf",
            Some(t1_3_construction),
            t1_3_closed,
        ),
        family_entry(
            "T1.4",
            "od^ed",
            Overlined,
            "(-2q^2;q^2)_inf + q/(1-q) (3 (-2q^2;q^2)_inf - (-2q;q^2)_inf)",
            Some(t1_4_construction),
            t1_4_closed,
        ),
        family_entry(
            "T1.5",
            "eu^od",
            Overlined,
            "E sum 2^n q^(n^2)/(-q^2;q^2)_n",
            Some(t1_5_construction),
            t1_5_closed,
        ),
        family_entry(
            "T1.6",
            "od^eu",
            Overlined,
            "E - 2q (-2q;q^2)_inf sum (-1)^n q^(2n)/(2q;q^2)_(n+1) \
             + 4q E sum (-2)^n q^(n^2+2n)/((1+q^(2n+2)) (2q;q^2)_(n+1))",
            Some(t1_6_construction),
            t1_6_closed,
        ),
        family_entry(
            "T1.7",
            "ed^ou",
            Overlined,
            "(-q;q^2)_inf/(q;q^2)_inf - 2q (-2q^2;q^2)_inf sum (-1)^n q^(2n)/(2q;q^2)_(n+1) \
             + 2q (-q;q^2)_inf/(q^3;q^2)_inf sum (-2)^n (-q;q^2)_n q^(n^2+3n)/(2q,-q^2;q^2)_(n+1)",
            Some(t1_7_construction),
            t1_7_closed,
        ),
        family_entry(
            "T1.8",
            "ou^ed",
            Overlined,
            "(-2q^2;q^2)_inf + 2 sum (-q;q^2)_n (-2q^(2n+2);q^2)_inf q^(2n+1)/(q;q^2)_(n+1)",
            Some(t1_8_construction),
            t1_8_closed,
        ),
        family_entry(
            "T2.1",
            "eu^od",
            Modified,
            "E phi(q), phi(q) = sum q^(n^2)/(-q^2;q^2)_n",
            Some(t2_1_construction),
            t2_1_closed,
        ),
        family_entry(
            "T2.2",
            "od^eu",
            Modified,
            "E - q (-q;q^2)_inf sum q^n/(-q^2;q^2)_(n+1) \
             + 2q E sum (-1)^n q^(n^2+2n)/((1+q^(2n+2)) (q;q^2)_(n+1))",
            Some(t2_2_construction),
            t2_2_closed,
        ),
        family_entry(
            "T2.3",
            "ed^ou",
            Modified,
            "-q (-q^2;q^2)_inf sum q^n/(-q^2;q^2)_(n+1) \
             + (-q;q^2)_inf/(2 (q;q^2)_inf) (1 + sum (-1)^n (-q;q^2)_(n+1) q^(n^2+n)/(-q^2,q;q^2)_(n+1))",
            Some(t2_3_construction),
            t2_3_closed,
        ),
        family_entry(
            "T2.4",
            "ou^ed",
            Modified,
            "(-q^2;q^2)_inf (1 + 2q sum (-q;q^2)_n q^(2n)/((q;q^2)_(n+1) (-q^2;q^2)_n))",
            Some(t2_4_construction),
            t2_4_closed,
        ),
        family_entry("BG1", "eu^ou", Plain, "1/((1-q) (q^2;q^2)_inf)", None, bg1_closed),
        family_entry(
            "BG2",
            "od^eu",
            Plain,
            "(1 - sigma(-q)/2 + (-q;-q)_inf/2) / (q^2;q^2)_inf",
            None,
            bg2_closed,
        ),
        reduction("RED1", "eu^ou", Overlined, "modified eu^ou = overlined eu^ou", t1_1_closed),
        reduction("RED2", "ou^eu", Overlined, "modified ou^eu = overlined ou^eu", t1_2_closed),
        reduction(
            "RED3",
            "ed^od",
            Plain,
            "modified ed^od = plain ed^od = (-q;q^2)_inf + sum q^(2n+2) (-q^2;q^2)_n (-q^(2n+3);q^2)_inf",
            ed_od_plain,
        ),
        reduction(
            "RED4",
            "od^ed",
            Plain,
            "modified od^ed = plain od^ed = (-q^2;q^2)_inf + sum q^(2n+1) (-q;q^2)_n (-q^(2n+2);q^2)_inf",
            od_ed_plain,
        ),
        Spec {
            id: "X-R2",
            group: Group::Auxiliary,
            description: "Lambert series for sums of two squares".into(),
            anchor: "2 sum_(n>=0) q^n/(1+q^(2n)) = 1 + (1/2) sum_(n>=1) r_2(n) q^n = (1 + theta^2)/2",
            families: Vec::new(),
            expressions: vec![
                Expression::single(ExprTag::Oracle, lattice_half),
                Expression::single(ExprTag::Construction, lambert_r2),
                Expression::single(ExprTag::Closed, theta_half),
            ],
        }
        .entry(500),
        Spec {
            id: "X-IH",
            group: Group::Auxiliary,
            description: "series swap before the half-step change of variable".into(),
            anchor: "sum (-1)^n q^(2n)/(q;q^2)_(n+1) = sum q^n/(-q^2;q^2)_(n+1)",
            families: Vec::new(),
            expressions: vec![
                Expression::single(ExprTag::Construction, x_ih_left),
                Expression::single(ExprTag::Closed, x_ih_right),
            ],
        }
        .entry(100),
    ];
    out.push(IdentityEntry {
        id: "L-LIM".into(),
        group: Group::Auxiliary,
        description: "leading coefficient in a of (a;q)_n, n = 0..20".into(),
        anchor: "[a^n] (a;q)_n = (-1)^n q^(n(n-1)/2)".into(),
        min_order: 1,
        default_order: 200,
        families: Vec::new(),
        components: 21,
        expressions: vec![
            Expression::new(ExprTag::Construction, |i, t| Ok(top_coefficient_in_a(i as u64, t))),
            Expression::new(ExprTag::Closed, |i, t| Ok(top_coefficient_closed(i as u64, t))),
        ],
    });

    out.extend([
        named(
            "P-HEINE-T1.1",
            "Heine, base q^2",
            HEINE,
            Heine::new(2, m(-1, 0), m(1, 1), m(-1, 1), m(1, 2)),
        ),
        named(
            "P-HLIM-T1.5",
            "Heine limit, base q^2",
            HEINE_LIMIT,
            HeineLimit::new(2, m(1, 2), m(-1, 2), m(-2, 1)),
        ),
        named(
            "P-HLIM-T2.1",
            "Heine limit, base q^2",
            HEINE_LIMIT,
            HeineLimit::new(2, m(1, 2), m(-1, 2), m(-1, 1)),
        ),
        named(
            "P-IHEINE-X",
            "iterated Heine, base q",
            ITERATED,
            IteratedHeine::new(1, Monomial::zero(), m(1, 1), m(-1, 2), m(1, 1)),
        ),
        named("P-ASV-T1.3", "ASV sum, base q^2", ASV, Asv::new(2, m(-2, 2), m(-2, 3))),
        named("P-ASV-T1.4", "ASV sum, base q^2", ASV, Asv::new(2, m(-2, 1), m(-2, 2))),
        named("P-ASV-XY", "ASV sum with x = y", ASV, Asv::new(1, m(-1, 1), m(-1, 1))),
        named(
            "P-PTC-T1.6",
            "partial theta corollary",
            PTC,
            PartialThetaCorollary::new(m(1, 0), m(-1, 0), m(2, -1)),
        ),
        named(
            "P-PTC-T1.7",
            "partial theta corollary",
            PTC,
            PartialThetaCorollary::new(m(1, 1), m(-1, 1), m(2, 0)),
        ),
        named(
            "P-PTC-T2.2",
            "partial theta corollary",
            PTC,
            PartialThetaCorollary::new(m(1, 0), m(-1, 0), m(1, -1)),
        ),
        named(
            "P-PTC-T2.3",
            "partial theta corollary",
            PTC,
            PartialThetaCorollary::new(m(1, -1), m(1, -2), m(-1, -1)),
        ),
        named(
            "P-PT-B0",
            "partial theta transformation with b = 0",
            PT,
            PartialTheta::new(m(1, 1), Monomial::zero(), m(-1, 2), m(2, 1)),
        ),
        randomized("P-HEINE-RAND", "Heine", HEINE, 101, Heine::random),
        randomized("P-HLIM-RAND", "Heine limit", HEINE_LIMIT, 102, HeineLimit::random),
        randomized("P-IHEINE-RAND", "iterated Heine", ITERATED, 103, IteratedHeine::random),
        randomized("P-ASV-RAND", "ASV sum", ASV, 104, Asv::random),
        randomized("P-PT-RAND", "partial theta transformation", PT, 105, PartialTheta::random),
        randomized("P-PTC-RAND", "partial theta corollary", PTC, 106, PartialThetaCorollary::random),
    ]);
    out
}
